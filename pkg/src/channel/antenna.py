"""
Réseaux d'Antennes Planaires
============================

Géométrie d'un réseau planaire uniforme (UPA) et vecteur directionnel.

Usage:
    from src.channel.antenna import ArrayGeometry, steering_vector

    ir_array = ArrayGeometry(rows=4, cols=4, boresight=(0.0, 0.0, -1.0))
    a = steering_vector(ir_array, direction)
"""

from dataclasses import dataclass
from typing import Sequence, Tuple

import numpy as np


@dataclass(frozen=True)
class ArrayGeometry:
    """
    Réseau planaire uniforme

    Attributes:
        rows, cols: Dimensions de la grille d'éléments
        spacing: Espacement entre éléments (longueurs d'onde)
        boresight: Axe de visée unitaire, normal au plan du réseau
    """
    rows: int
    cols: int
    spacing: float = 0.5
    boresight: Tuple[float, float, float] = (0.0, 0.0, 1.0)

    def __post_init__(self):
        if self.rows < 1 or self.cols < 1:
            raise ValueError(f"Dimensions de réseau invalides: {self.rows}×{self.cols}")
        if self.spacing <= 0:
            raise ValueError(f"Espacement invalide: {self.spacing}")
        norm = float(np.linalg.norm(self.boresight))
        if norm == 0.0:
            raise ValueError("Axe de visée nul")
        object.__setattr__(self, 'boresight', tuple(float(v) / norm for v in self.boresight))

    @property
    def size(self) -> int:
        return self.rows * self.cols

    def plane_axes(self) -> Tuple[np.ndarray, np.ndarray]:
        """
        Base orthonormée (e_row, e_col) du plan du réseau

        e_col = normalise(aide × b) avec aide = z, ou x si b est parallèle
        à z ; e_row = b × e_col.
        """
        b = np.asarray(self.boresight)
        helper = np.array([0.0, 0.0, 1.0])
        if abs(abs(b @ helper) - 1.0) < 1e-12:
            helper = np.array([1.0, 0.0, 0.0])
        e_col = np.cross(helper, b)
        e_col /= np.linalg.norm(e_col)
        e_row = np.cross(b, e_col)
        return e_row, e_col

    def __repr__(self):
        return f"<ArrayGeometry({self.rows}×{self.cols}, spacing={self.spacing}λ)>"


def steering_vector(geometry: ArrayGeometry, direction: Sequence[float]) -> np.ndarray:
    """
    Réponse du réseau dans une direction donnée

    Élément (p, q), indexé p·cols + q : exp(j·2π·s·(p·u + q·v)) où u, v
    sont les cosinus directeurs de `direction` dans le plan du réseau.

    Args:
        geometry: Réseau
        direction: Vecteur unitaire 3D

    Returns:
        Vecteur complexe de taille rows·cols, entrées de module 1
    """
    d = np.asarray(direction, dtype=float)
    if abs(float(np.linalg.norm(d)) - 1.0) > 1e-9:
        raise ValueError(f"direction doit être unitaire (norme {np.linalg.norm(d):.6f})")

    e_row, e_col = geometry.plane_axes()
    u = float(d @ e_row)
    v = float(d @ e_col)
    p = np.arange(geometry.rows)[:, None]
    q = np.arange(geometry.cols)[None, :]
    phase = 2.0 * np.pi * geometry.spacing * (p * u + q * v)
    return np.exp(1j * phase).reshape(-1)
