"""
Prédicteur de Mouvement de l'UE
===============================

Historique glissant des positions de l'UE et modèle gaussien de la
position future, utilisé pour centrer la grille de positions candidates.

Usage:
    from src.predictor.movement_predictor import MovementHistory

    history = MovementHistory(window=20, dt_slot=0.1)
    history.update((0.0, 0.0), omega=0.0, timestamp=0.0)
    history.update((0.1, 0.0), omega=0.0, timestamp=0.1)
    prediction = history.predict(horizon=1)   # μ = (0.2, 0)
"""

from collections import deque
from dataclasses import dataclass
from typing import Deque, Sequence, Tuple

import numpy as np

from src.utils.error_handler import HistoryOrderError


@dataclass(frozen=True, eq=False)
class GaussianPrediction:
    """
    Position future N(μ, Λ)

    Attributes:
        mean: μ, position 2D prédite (m)
        covariance: Λ, covariance 2×2 (m²)
    """
    mean: np.ndarray
    covariance: np.ndarray


class MovementHistory:
    """
    Fenêtre glissante des W derniers échantillons (y, ω, t)

    La vitesse est estimée par la dernière différence finie et la
    covariance par celle des incréments de position sur la fenêtre.
    """

    def __init__(self, window: int = 20, dt_slot: float = 0.1, prior_variance: float = 4.0):
        """
        Initialise l'historique

        Args:
            window: Taille W de la fenêtre
            dt_slot: Durée du créneau ΔT (s)
            prior_variance: Variance a priori (m²)
        """
        if window < 2:
            raise ValueError(f"window doit être >= 2: {window}")
        if dt_slot <= 0:
            raise ValueError(f"dt_slot doit être > 0: {dt_slot}")
        self.window = window
        self.dt_slot = dt_slot
        self.prior_variance = prior_variance
        self._samples: Deque[Tuple[np.ndarray, float, float]] = deque(maxlen=window)

    def __len__(self) -> int:
        return len(self._samples)

    @property
    def latest_position(self) -> np.ndarray:
        if not self._samples:
            raise IndexError("Historique vide")
        return self._samples[-1][0].copy()

    @property
    def latest_omega(self) -> float:
        if not self._samples:
            raise IndexError("Historique vide")
        return self._samples[-1][1]

    def update(self, position: Sequence[float], omega: float, timestamp: float) -> 'MovementHistory':
        """
        Ajoute un échantillon, l'échantillon le plus ancien sort au-delà de W

        Raises:
            HistoryOrderError: Horodatage non strictement croissant
        """
        if self._samples and timestamp <= self._samples[-1][2]:
            raise HistoryOrderError(
                f"Échantillon hors ordre: t={timestamp} <= dernier t={self._samples[-1][2]}"
            )
        self._samples.append((np.asarray(position, dtype=float)[:2].copy(), float(omega), float(timestamp)))
        return self

    def velocity(self) -> np.ndarray:
        """Vitesse estimée par la dernière différence finie (m/s)"""
        if len(self._samples) < 2:
            return np.zeros(2)
        (y_prev, _, t_prev), (y_last, _, t_last) = self._samples[-2], self._samples[-1]
        return (y_last - y_prev) / (t_last - t_prev)

    def predict(self, horizon: int = 1) -> GaussianPrediction:
        """
        Prédiction à k créneaux

        μ = y(t) + v_e·k·ΔT ; Λ = covariance des incréments × k. Avec moins
        de deux échantillons : μ = y(t), Λ = variance a priori × I.

        Args:
            horizon: k >= 1

        Returns:
            Prédiction gaussienne
        """
        if horizon < 1:
            raise ValueError(f"horizon doit être >= 1: {horizon}")
        if not self._samples:
            raise IndexError("Historique vide")

        current = self._samples[-1][0]
        if len(self._samples) < 2:
            return GaussianPrediction(current.copy(), self.prior_variance * np.eye(2))

        mean = current + self.velocity() * horizon * self.dt_slot
        positions = np.array([sample[0] for sample in self._samples])
        increments = np.diff(positions, axis=0)
        if len(increments) < 2:
            covariance = np.zeros((2, 2))
        else:
            covariance = np.cov(increments, rowvar=False, ddof=1)
            covariance = 0.5 * (covariance + covariance.T)
        return GaussianPrediction(mean, covariance * horizon)

    def clear(self):
        self._samples.clear()

    def __repr__(self):
        return f"<MovementHistory(size={len(self)}/{self.window})>"
