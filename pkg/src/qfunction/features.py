"""
Encodage des Caractéristiques de Q̃
==================================

Vecteur de 13 caractéristiques bornées décrivant (h, x, y, ω, μ) :

    idx  caractéristique                        normalisation        bornes
    0    gain Σ|h_n|² (dB, plancher −200)       / 100                [-2, 1]
    1    LOS IR→UE de la liaison courante       0/1                  [0, 1]
    2    masquage corporel vers le candidat     0/1                  [0, 1]
    3-5  décalage x − (y, hauteur UE)           / 50 m               [-3, 3]
    6-7  position UE y                          / demi-étendue       [-1, 1]
    8-9  (cos ω, sin ω)                         -                    [-1, 1]
    10-11 dérive prédite μ − y                  / 10 m               [-3, 3]
    12   distance candidat → BS                 / 200 m              [0, 3]

Usage:
    from src.qfunction.features import FeatureEncoder

    encoder = FeatureEncoder(bounds=(-47.5, 47.5, -47.5, 47.5), bs_position=(60, -60, 25))
    phi = encoder.encode(h, x, y, omega, mu, los_ir_ue=True)
"""

import math
from typing import Sequence, Tuple

import numpy as np

from src.world.mobility import angular_distance


FEATURE_DIM = 13
GAIN_FLOOR_DB = -200.0
GAIN_SCALE_DB = 100.0
OFFSET_SCALE_M = 50.0
DRIFT_SCALE_M = 10.0
BS_DISTANCE_SCALE_M = 200.0

FEATURE_LOWER = np.array([-2.0, 0.0, 0.0, -3.0, -3.0, -3.0, -1.0, -1.0, -1.0, -1.0, -3.0, -3.0, 0.0])
FEATURE_UPPER = np.array([1.0, 1.0, 1.0, 3.0, 3.0, 3.0, 1.0, 1.0, 1.0, 1.0, 3.0, 3.0, 3.0])


class FeatureEncoder:
    """
    Encodeur déterministe des arguments de Q̃

    Deux appels avec les mêmes entrées donnent des vecteurs identiques bit
    à bit. Chaque composante est écrêtée dans ses bornes documentées.
    """

    def __init__(
        self,
        bounds: Tuple[float, float, float, float],
        bs_position: Sequence[float],
        ue_height: float = 1.5,
        shadow_half_width: float = math.radians(60.0)
    ):
        """
        Args:
            bounds: (x_min, x_max, y_min, y_max) de la scène
            bs_position: Position de la BS (m)
            ue_height: Hauteur du terminal (m)
            shadow_half_width: Demi-ouverture de l'ombre corporelle (rad)
        """
        x_min, x_max, y_min, y_max = bounds
        self.center = np.array([(x_min + x_max) / 2.0, (y_min + y_max) / 2.0])
        self.half_extent = np.array([(x_max - x_min) / 2.0, (y_max - y_min) / 2.0])
        self.bs_position = np.asarray(bs_position, dtype=float)
        self.ue_height = ue_height
        self.shadow_half_width = shadow_half_width

    @property
    def dim(self) -> int:
        return FEATURE_DIM

    @staticmethod
    def gain_db(h: np.ndarray) -> float:
        """Σ|h_n|² en dB, plancher à −200 dB"""
        gain = float(np.sum(np.abs(np.asarray(h)) ** 2))
        if gain <= 0.0:
            return GAIN_FLOOR_DB
        return max(10.0 * math.log10(gain), GAIN_FLOOR_DB)

    def shadowed(self, x: np.ndarray, y: np.ndarray, omega: float) -> bool:
        """Masquage corporel du candidat x vu depuis y (même règle que le monde)"""
        dx, dy = x[0] - y[0], x[1] - y[1]
        if math.hypot(dx, dy) <= 1e-9:
            return False
        return angular_distance(math.atan2(dy, dx), omega + math.pi) < self.shadow_half_width

    def encode(
        self,
        h: np.ndarray,
        x: Sequence[float],
        y: Sequence[float],
        omega: float,
        mu: Sequence[float],
        *,
        los_ir_ue: bool = False
    ) -> np.ndarray:
        """
        Vecteur de caractéristiques d'un candidat

        Args:
            h: Canal IR→UE mesuré (N,)
            x: Position candidate 3D (m)
            y: Position UE 2D (m)
            omega: Azimut du terminal (rad)
            mu: Position UE prédite 2D (m)
            los_ir_ue: Visibilité IR→UE de la liaison courante

        Returns:
            Vecteur (13,) borné
        """
        x = np.asarray(x, dtype=float)
        y = np.asarray(y, dtype=float)[:2]
        mu = np.asarray(mu, dtype=float)[:2]

        features = np.empty(FEATURE_DIM)
        features[0] = self.gain_db(h) / GAIN_SCALE_DB
        features[1] = 1.0 if los_ir_ue else 0.0
        features[2] = 1.0 if self.shadowed(x, y, omega) else 0.0
        features[3:6] = (x - np.array([y[0], y[1], self.ue_height])) / OFFSET_SCALE_M
        features[6:8] = (y - self.center) / self.half_extent
        features[8] = math.cos(omega)
        features[9] = math.sin(omega)
        features[10:12] = (mu - y) / DRIFT_SCALE_M
        features[12] = float(np.linalg.norm(x - self.bs_position)) / BS_DISTANCE_SCALE_M
        return np.clip(features, FEATURE_LOWER, FEATURE_UPPER)

    def encode_candidates(
        self,
        h: np.ndarray,
        candidates: np.ndarray,
        y: Sequence[float],
        omega: float,
        mu: Sequence[float],
        *,
        los_ir_ue: bool = False
    ) -> np.ndarray:
        """Matrice (K, 13), une ligne par candidat"""
        return np.array([
            self.encode(h, candidate, y, omega, mu, los_ir_ue=los_ir_ue)
            for candidate in np.atleast_2d(candidates)
        ])

    def __repr__(self):
        return f"<FeatureEncoder(dim={FEATURE_DIM})>"
