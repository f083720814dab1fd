"""
Réflecteur Intelligent - Coefficient de Réflexion et Récolte d'Énergie
======================================================================

Coefficient Θ = diag(a·e^{jθ₁}, …, a·e^{jθ_N}), phases optimales en forme
close (alignement des arguments de h_n·r_n) et puissance RF récoltée sur
la part non réfléchie du signal incident.

Usage:
    from src.reflector.reflection import optimal_phases, harvested_power

    theta = optimal_phases(h, r, amplitude=0.8)
    p_e = harvested_power(theta, r, kappa=0.6)
"""

import math
from dataclasses import dataclass

import numpy as np


TWO_PI = 2.0 * math.pi


@dataclass(frozen=True, eq=False)
class ReflectionCoefficient:
    """
    Coefficient de réflexion du réseau

    Attributes:
        amplitude: a ∈ [0, 1)
        phases: θ_n ∈ [0, 2π), une par élément
    """
    amplitude: float
    phases: np.ndarray

    def __post_init__(self):
        if not 0.0 <= self.amplitude < 1.0:
            raise ValueError(f"amplitude doit être dans [0, 1): {self.amplitude}")
        phases = np.mod(np.asarray(self.phases, dtype=float), TWO_PI)
        # mod peut rendre 2π pour de petites valeurs négatives
        phases[phases >= TWO_PI] = 0.0
        object.__setattr__(self, 'phases', phases)

    @property
    def size(self) -> int:
        return int(self.phases.shape[0])

    def diagonal(self) -> np.ndarray:
        """Éléments diagonaux a·e^{jθ_n}"""
        return self.amplitude * np.exp(1j * self.phases)

    def matrix(self) -> np.ndarray:
        return np.diag(self.diagonal())

    def __repr__(self):
        return f"<ReflectionCoefficient(a={self.amplitude}, N={self.size})>"


def optimal_phases(h: np.ndarray, r: np.ndarray, amplitude: float) -> ReflectionCoefficient:
    """
    Phases maximisant |h·Θ·r|

    θ_n = −Arg(h_n·r_n) ramené dans [0, 2π) ; un terme nul reçoit θ_n = 0.
    Tous les termes h_n·r_n·e^{jθ_n} deviennent réels positifs, d'où
    |h·Θ·r| = a·Σ|h_n·r_n|.

    Args:
        h: Canal IR→UE (N,)
        r: Signal incident (N,)
        amplitude: a ∈ [0, 1)

    Returns:
        Coefficient de réflexion optimal
    """
    h = np.asarray(h, dtype=complex).reshape(-1)
    r = np.asarray(r, dtype=complex).reshape(-1)
    if h.shape != r.shape:
        raise ValueError(f"Dimensions incompatibles: h {h.shape} / r {r.shape}")

    products = h * r
    phases = np.where(products != 0, -np.angle(products), 0.0)
    return ReflectionCoefficient(amplitude=amplitude, phases=phases)


def harvested_power(coefficient: ReflectionCoefficient, r: np.ndarray, kappa: float) -> float:
    """
    Puissance récoltée p_e = κ·‖(I − Θ)·r‖²

    Args:
        coefficient: Coefficient de réflexion Θ
        r: Signal incident (N,)
        kappa: Rendement de conversion κ ∈ (0, 1)

    Returns:
        Puissance récoltée (W)
    """
    if not 0.0 < kappa < 1.0:
        raise ValueError(f"kappa doit être dans (0, 1): {kappa}")
    r = np.asarray(r, dtype=complex).reshape(-1)
    unreflected = (1.0 - coefficient.diagonal()) * r
    return float(kappa * np.sum(np.abs(unreflected) ** 2))
