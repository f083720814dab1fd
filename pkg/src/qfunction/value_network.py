"""
Réseau de Valeur Q̃(·|φ)
=======================

Perceptron multicouche [13 → 64 → 64 → 1] à activations tanh et sortie
linéaire, gradients exacts par rétropropagation, pas d'Adam avec retour
en arrière sur la perte quadratique (q − Q̃)², sauvegarde texte pour les
démarrages à chaud.

Usage:
    from src.qfunction.value_network import ValueNetwork

    net = ValueNetwork(feature_dim=13, rng=np.random.default_rng(0))
    value = net.evaluate(features)
    net.train(features, target=3.2)
    net.save('data/phi.txt')
"""

import math
import re
from pathlib import Path
from typing import List, Optional, Sequence, Tuple, Union

import numpy as np

from src.utils.error_handler import TrainingDivergedError
from src.utils.logger import get_logger


Gradients = List[Tuple[np.ndarray, np.ndarray]]

# Demi-pas successifs avant abandon de la mise à jour
MAX_BACKTRACKS = 20

_HEADER_PATTERN = re.compile(r'feature_dim=(\d+)\s+layers=([\d,]+)')


class ValueNetwork:
    """
    Approximateur de la fonction de valeur

    Les paramètres φ sont les couples (W_l, b_l), W_l de forme
    (sortie, entrée). L'optimiseur est Adam (moments par paramètre).
    """

    def __init__(
        self,
        feature_dim: int = 13,
        hidden_sizes: Sequence[int] = (64, 64),
        learning_rate: float = 1e-3,
        rng: Optional[np.random.Generator] = None,
        beta1: float = 0.9,
        beta2: float = 0.999,
        eps: float = 1e-8
    ):
        """
        Initialise φ par Glorot uniforme ±√(6/(fan_in + fan_out)), biais nuls

        Args:
            feature_dim: Dimension des caractéristiques
            hidden_sizes: Tailles des couches cachées
            learning_rate: Pas d'Adam
            rng: Générateur pour l'initialisation
            beta1, beta2, eps: Constantes d'Adam
        """
        self.logger = get_logger(__name__)
        self.layer_sizes = [int(feature_dim), *[int(s) for s in hidden_sizes], 1]
        self.learning_rate = learning_rate
        self.beta1 = beta1
        self.beta2 = beta2
        self.eps = eps

        rng = rng if rng is not None else np.random.default_rng(0)
        self.weights: List[np.ndarray] = []
        self.biases: List[np.ndarray] = []
        for fan_in, fan_out in zip(self.layer_sizes[:-1], self.layer_sizes[1:]):
            limit = math.sqrt(6.0 / (fan_in + fan_out))
            self.weights.append(rng.uniform(-limit, limit, size=(fan_out, fan_in)))
            self.biases.append(np.zeros(fan_out))
        self._reset_optimizer()

    def _reset_optimizer(self):
        self.step_count = 0
        self.backtrack_failures = 0
        self._m = [(np.zeros_like(W), np.zeros_like(b)) for W, b in zip(self.weights, self.biases)]
        self._v = [(np.zeros_like(W), np.zeros_like(b)) for W, b in zip(self.weights, self.biases)]

    @classmethod
    def zeros(cls, feature_dim: int = 13, hidden_sizes: Sequence[int] = (64, 64), **kwargs) -> 'ValueNetwork':
        """Réseau à poids nuls (sortie identiquement 0)"""
        net = cls(feature_dim, hidden_sizes, **kwargs)
        net.weights = [np.zeros_like(W) for W in net.weights]
        net._reset_optimizer()
        return net

    @property
    def feature_dim(self) -> int:
        return self.layer_sizes[0]

    # ------------------------------------------------------------------
    # Passe avant / arrière
    # ------------------------------------------------------------------

    def _forward(self, x: np.ndarray) -> Tuple[List[np.ndarray], np.ndarray]:
        """Passe avant sur un lot (B, d) ; garde les activations pour la passe arrière"""
        activations = [x]
        a = x
        last = len(self.weights) - 1
        for index, (W, b) in enumerate(zip(self.weights, self.biases)):
            z = a @ W.T + b
            a = z if index == last else np.tanh(z)
            activations.append(a)
        return activations, a[:, 0]

    def _check_input(self, features: np.ndarray) -> np.ndarray:
        x = np.atleast_2d(np.asarray(features, dtype=float))
        if x.shape[1] != self.feature_dim:
            raise ValueError(f"Dimension attendue {self.feature_dim}, reçue {x.shape[1]}")
        return x

    def evaluate_batch(self, features: np.ndarray) -> np.ndarray:
        """
        Q̃ pour un lot de vecteurs (B, d)

        Raises:
            TrainingDivergedError: Sortie non finie
        """
        _, output = self._forward(self._check_input(features))
        if not np.all(np.isfinite(output)):
            raise TrainingDivergedError("Sortie non finie du réseau de valeur")
        return output

    def evaluate(self, features: np.ndarray) -> float:
        """Q̃(features | φ)"""
        return float(self.evaluate_batch(features)[0])

    def loss(self, features: np.ndarray, target: float) -> float:
        """(q − Q̃)²"""
        return (float(target) - self.evaluate(features)) ** 2

    def gradients(self, features: np.ndarray, target: float) -> Gradients:
        """
        Gradient exact de (q − Q̃)² par rapport à chaque (W_l, b_l)

        Returns:
            Liste de couples (dW_l, db_l)
        """
        if not math.isfinite(target):
            raise TrainingDivergedError(f"Cible non finie: {target}")
        activations, output = self._forward(self._check_input(features))
        if not np.all(np.isfinite(output)):
            raise TrainingDivergedError("Sortie non finie du réseau de valeur")

        delta = (-2.0 * (target - output))[:, None]   # ∂L/∂z de la couche de sortie
        grads: Gradients = []
        for index in range(len(self.weights) - 1, -1, -1):
            a_prev = activations[index]
            grads.append((delta.T @ a_prev, delta.sum(axis=0)))
            if index > 0:
                delta = (delta @ self.weights[index]) * (1.0 - activations[index] ** 2)
        grads.reverse()

        for dW, db in grads:
            if not (np.all(np.isfinite(dW)) and np.all(np.isfinite(db))):
                raise TrainingDivergedError("Gradient non fini")
        return grads

    def train(self, features: np.ndarray, target: float) -> float:
        """
        Un pas d'Adam sur (q − Q̃)² pour un échantillon, avec retour en arrière

        Si le pas complet augmente la perte sur l'échantillon, il est divisé
        par deux jusqu'à MAX_BACKTRACKS fois ; à défaut φ reste inchangé.
        Un gradient nul (cible déjà atteinte) laisse φ inchangé.

        Returns:
            Perte avant la mise à jour
        """
        grads = self.gradients(features, target)
        loss_before = self.loss(features, target)
        if all(not np.any(dW) and not np.any(db) for dW, db in grads):
            return loss_before

        self.step_count += 1
        t = self.step_count
        steps = []
        for index, (dW, db) in enumerate(grads):
            (mW, mb), (vW, vb) = self._m[index], self._v[index]
            mW[:] = self.beta1 * mW + (1 - self.beta1) * dW
            mb[:] = self.beta1 * mb + (1 - self.beta1) * db
            vW[:] = self.beta2 * vW + (1 - self.beta2) * dW ** 2
            vb[:] = self.beta2 * vb + (1 - self.beta2) * db ** 2

            mW_hat = mW / (1 - self.beta1 ** t)
            mb_hat = mb / (1 - self.beta1 ** t)
            vW_hat = vW / (1 - self.beta2 ** t)
            vb_hat = vb / (1 - self.beta2 ** t)
            steps.append((
                self.learning_rate * mW_hat / (np.sqrt(vW_hat) + self.eps),
                self.learning_rate * mb_hat / (np.sqrt(vb_hat) + self.eps),
            ))

        weights = [W.copy() for W in self.weights]
        biases = [b.copy() for b in self.biases]
        scale = 1.0
        for _ in range(MAX_BACKTRACKS + 1):
            self.weights = [W - scale * sW for W, (sW, _) in zip(weights, steps)]
            self.biases = [b - scale * sb for b, (_, sb) in zip(biases, steps)]
            if not all(np.all(np.isfinite(W)) and np.all(np.isfinite(b))
                       for W, b in zip(self.weights, self.biases)):
                raise TrainingDivergedError("Paramètres non finis après la mise à jour")
            if self.loss(features, target) <= loss_before:
                return loss_before
            scale *= 0.5

        self.weights, self.biases = weights, biases
        self.backtrack_failures += 1
        return loss_before

    # ------------------------------------------------------------------
    # Paramètres et persistance
    # ------------------------------------------------------------------

    def flat_parameters(self) -> np.ndarray:
        """φ aplati : W_0, b_0, W_1, b_1, …"""
        return np.concatenate([
            part.ravel() for W, b in zip(self.weights, self.biases) for part in (W, b)
        ])

    def set_flat_parameters(self, flat: np.ndarray):
        flat = np.asarray(flat, dtype=float)
        expected = sum(W.size + b.size for W, b in zip(self.weights, self.biases))
        if flat.size != expected:
            raise ValueError(f"Vecteur de {flat.size} paramètres, {expected} attendus")
        offset = 0
        for index, (W, b) in enumerate(zip(self.weights, self.biases)):
            self.weights[index] = flat[offset:offset + W.size].reshape(W.shape).copy()
            offset += W.size
            self.biases[index] = flat[offset:offset + b.size].copy()
            offset += b.size
        self._reset_optimizer()

    def copy(self) -> 'ValueNetwork':
        clone = ValueNetwork.zeros(self.feature_dim, self.layer_sizes[1:-1], learning_rate=self.learning_rate)
        clone.set_flat_parameters(self.flat_parameters())
        return clone

    def save(self, path: Union[str, Path]) -> Path:
        """
        Écrit φ : une ligne d'en-tête puis un paramètre par ligne (17 chiffres)

        L'état d'Adam n'est pas sauvegardé.
        """
        path = Path(path)
        path.parent.mkdir(parents=True, exist_ok=True)
        header = f"feature_dim={self.feature_dim} layers={','.join(str(s) for s in self.layer_sizes)}"
        np.savetxt(path, self.flat_parameters(), fmt='%.17g', header=header)
        self.logger.info(
            "Paramètres du réseau de valeur sauvegardés",
            extra={'context': {'path': str(path), 'layers': self.layer_sizes}}
        )
        return path

    @classmethod
    def load(cls, path: Union[str, Path], learning_rate: float = 1e-3) -> 'ValueNetwork':
        """Relit un fichier écrit par save()"""
        path = Path(path)
        with path.open('r', encoding='utf-8') as handle:
            header = handle.readline()
        match = _HEADER_PATTERN.search(header)
        if match is None:
            raise ValueError(f"En-tête invalide dans {path}: {header.strip()}")
        layers = [int(s) for s in match.group(2).split(',')]
        if layers[0] != int(match.group(1)) or layers[-1] != 1:
            raise ValueError(f"Architecture incohérente dans {path}: {layers}")

        net = cls.zeros(layers[0], layers[1:-1], learning_rate=learning_rate)
        net.set_flat_parameters(np.atleast_1d(np.loadtxt(path, comments='#')))
        return net

    def __repr__(self):
        return f"<ValueNetwork(layers={self.layer_sizes}, steps={self.step_count})>"
