"""
Episode Metrics - Journal par Créneau et Agrégats
=================================================

Enregistre chaque créneau d'un épisode et calcule les agrégats (débit
moyen par créneau, fraction LOS, puissance récoltée moyenne, bits livrés,
durée). Les agrégats sont recalculables exactement depuis le journal.

Usage:
    from src.reporting.episode_metrics import EpisodeMetrics

    metrics = EpisodeMetrics(dt_slot=0.1)
    metrics.record_slot(SlotRecord(...))
    stats = metrics.get_stats()
"""

import math
from dataclasses import asdict, astuple, dataclass, fields
from typing import Any, Dict, List

import pandas as pd

from src.utils.logger import get_logger


COMMUNICATION = 'communication'
MOBILITY = 'mobility'


@dataclass(frozen=True)
class SlotRecord:
    """
    Une ligne du journal

    Les créneaux de mobilité n'ont pas de mesure : eta_db = NaN, débit et
    récompense nuls.
    """
    slot: int
    time_s: float
    stage: str
    x: float
    y: float
    z: float
    ue_x: float
    ue_y: float
    omega: float
    eta_db: float
    rate_bps: float
    reward_bits: float
    p_e_w: float
    power_w: float
    energy_j: float
    los_bs_ir: bool
    los_ir_ue: bool
    body_shadowed: bool
    speed_mps: float


COLUMNS = [f.name for f in fields(SlotRecord)]
BOOL_COLUMNS = ['los_bs_ir', 'los_ir_ue', 'body_shadowed']

AGGREGATE_KEYS = [
    'episode_slots',
    'hover_slots',
    'mobility_slots',
    'mean_rate_bps',
    'los_fraction',
    'mean_harvest_w',
    'total_bits',
    'energy_consumed_j',
    'final_energy_j',
]


def aggregate_records(records: List[SlotRecord], dt_slot: float, initial_energy: float) -> Dict[str, float]:
    """
    Agrégats d'un journal

    Débit moyen, fraction LOS et puissance récoltée portent sur les
    créneaux de communication (vol stationnaire) uniquement.
    """
    hover = [r for r in records if r.stage == COMMUNICATION]
    hover_count = len(hover)
    total_bits = math.fsum(r.reward_bits for r in records)
    final_energy = records[-1].energy_j if records else initial_energy
    return {
        'episode_slots': len(records),
        'hover_slots': hover_count,
        'mobility_slots': len(records) - hover_count,
        'mean_rate_bps': math.fsum(r.rate_bps for r in hover) / hover_count if hover_count else 0.0,
        'los_fraction': sum(1 for r in hover if r.los_ir_ue) / hover_count if hover_count else 0.0,
        'mean_harvest_w': math.fsum(r.p_e_w for r in hover) / hover_count if hover_count else 0.0,
        'total_bits': total_bits,
        'energy_consumed_j': math.fsum(r.power_w * dt_slot for r in records),
        'final_energy_j': final_energy,
    }


class EpisodeMetrics:
    """
    Suivi des performances d'un épisode

    Fonctionnalités :
    - Journal par créneau (SlotRecord)
    - Agrégats recalculés à la demande
    - Export DataFrame pour les rapports
    """

    def __init__(self, dt_slot: float, initial_energy: float = 0.0):
        """
        Args:
            dt_slot: ΔT (s)
            initial_energy: E₀ (J), pour un journal vide
        """
        self.logger = get_logger(__name__)
        self.dt_slot = dt_slot
        self.initial_energy = initial_energy
        self.records: List[SlotRecord] = []

    def __len__(self) -> int:
        return len(self.records)

    def record_slot(self, record: SlotRecord):
        """Ajoute un créneau au journal"""
        self.records.append(record)

    def get_stats(self) -> Dict[str, Any]:
        """
        Agrégats de l'épisode

        Returns:
            Dict (clés AGGREGATE_KEYS)
        """
        return aggregate_records(self.records, self.dt_slot, self.initial_energy)

    def to_frame(self) -> pd.DataFrame:
        """Journal sous forme de DataFrame, colonnes dans l'ordre de SlotRecord"""
        frame = pd.DataFrame([astuple(r) for r in self.records], columns=COLUMNS)
        for column in BOOL_COLUMNS:
            frame[column] = frame[column].astype(bool)
        return frame

    def to_dicts(self) -> List[Dict[str, Any]]:
        return [asdict(r) for r in self.records]

    def display_stats(self, title: str = "ÉPISODE"):
        """Affiche les agrégats de façon lisible"""
        stats = self.get_stats()

        print("\n" + "=" * 60)
        print(f"  {title}")
        print("=" * 60)

        print("\n⏱️  CRÉNEAUX:")
        print(f"  Total:              {stats['episode_slots']}")
        print(f"  Communication:      {stats['hover_slots']}")
        print(f"  Mobilité:           {stats['mobility_slots']}")

        print("\n📡 LIAISON:")
        print(f"  Débit moyen:        {stats['mean_rate_bps'] / 1e6:.3f} Mbit/s")
        print(f"  Fraction LOS:       {stats['los_fraction'] * 100:.1f}%")
        print(f"  Bits livrés:        {stats['total_bits']:.4e}")

        print("\n🔋 ÉNERGIE:")
        print(f"  Récolte moyenne:    {stats['mean_harvest_w'] * 1e3:.4f} mW")
        print(f"  Consommée:          {stats['energy_consumed_j']:.1f} J")
        print(f"  Restante:           {stats['final_energy_j']:.3f} J")

        print("\n" + "=" * 60)

    def reset_stats(self):
        """Vide le journal"""
        self.records = []
        self.logger.debug("Journal d'épisode réinitialisé")

    def __repr__(self):
        return f"<EpisodeMetrics(slots={len(self.records)})>"
