"""
Budget Énergétique du UAV-IR
============================

Puissance nette par créneau (vol stationnaire avec réflexion, ou
déplacement), décharge de la batterie et condition d'arrêt du service.

Usage:
    from src.energy.energy_budget import EnergyBudget, net_power, consume, exhausted

    budget = EnergyBudget.fresh(initial_energy=432000.0, hover_power=120.0,
                                move_power=150.0, reflect_power=0.005, residual=7.5)
    p = net_power(v_r=0.0, p_e=0.004, budget=budget)
    budget = consume(budget, p, dt_slot=0.1)
"""

from dataclasses import dataclass, replace
from typing import List


@dataclass(frozen=True)
class EnergyBudget:
    """
    Énergie embarquée et constantes de puissance

    Attributes:
        energy: Énergie restante E (J)
        initial_energy: Énergie initiale E₀ (J)
        hover_power: p_h (W)
        move_power: p_m (W)
        reflect_power: p_r (W)
        residual: Seuil résiduel ε (J)
        cap_harvest: Créditer min(p_e, p_r) au lieu de p_e
    """
    energy: float
    initial_energy: float
    hover_power: float
    move_power: float
    reflect_power: float
    residual: float
    cap_harvest: bool = False

    @classmethod
    def fresh(
        cls,
        initial_energy: float,
        hover_power: float,
        move_power: float,
        reflect_power: float,
        residual: float,
        cap_harvest: bool = False
    ) -> 'EnergyBudget':
        """Batterie pleine (E = E₀)"""
        return cls(
            energy=initial_energy,
            initial_energy=initial_energy,
            hover_power=hover_power,
            move_power=move_power,
            reflect_power=reflect_power,
            residual=residual,
            cap_harvest=cap_harvest,
        )

    def validate(self, dt_slot: float) -> List[str]:
        """
        Vérifie les invariants du budget

        Returns:
            Liste des violations (vide si valide)
        """
        errors = []
        if not self.move_power > self.hover_power > self.reflect_power > 0:
            errors.append(
                f"p_m > p_h > p_r > 0 non respecté: p_m={self.move_power}, "
                f"p_h={self.hover_power}, p_r={self.reflect_power}"
            )
        if not 0 <= self.residual < self.move_power * dt_slot:
            errors.append(
                f"ε doit être dans [0, p_m·ΔT) = [0, {self.move_power * dt_slot}): {self.residual}"
            )
        if self.initial_energy <= 0:
            errors.append(f"E₀ doit être > 0: {self.initial_energy}")
        return errors

    def __repr__(self):
        return f"<EnergyBudget(E={self.energy:.3f} J / E₀={self.initial_energy:.1f} J)>"


def net_power(v_r: float, p_e: float, budget: EnergyBudget) -> float:
    """
    Puissance nette consommée pendant un créneau

    Vol stationnaire (v_r = 0) : p_h + p_r − p_e ; déplacement : p_m.

    Args:
        v_r: Vitesse du drone (m/s)
        p_e: Puissance récoltée (W)
        budget: Constantes de puissance

    Returns:
        Puissance nette (W)
    """
    if v_r < 0 or p_e < 0:
        raise ValueError(f"v_r et p_e doivent être >= 0: v_r={v_r}, p_e={p_e}")
    if v_r > 0:
        return budget.move_power
    credit = min(p_e, budget.reflect_power) if budget.cap_harvest else p_e
    return budget.hover_power + budget.reflect_power - credit


def consume(budget: EnergyBudget, power_w: float, dt_slot: float) -> EnergyBudget:
    """E' = E − p·ΔT, sans écrêtage"""
    if dt_slot <= 0:
        raise ValueError(f"dt_slot doit être > 0: {dt_slot}")
    return replace(budget, energy=budget.energy - power_w * dt_slot)


def exhausted(budget: EnergyBudget) -> bool:
    """Vrai si E < ε"""
    return budget.energy < budget.residual
