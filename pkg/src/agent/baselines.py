"""
Politiques de Référence
=======================

- Glouton (sans apprentissage) : à chaque blocage, le drone rejoint la
  verticale de la dernière position connue de l'UE.
- IR statique : réflecteur fixe posé sur un toit au coin du carrefour ;
  il ne bouge jamais et ne consomme pas l'énergie du drone.

Usage:
    from src.agent.baselines import GreedyPolicy, greedy_policy

    target = greedy_policy(ue_position=(10.0, 5.0), altitude=40.0)   # (10, 5, 40)
"""

from typing import Optional, Sequence

import numpy as np

from src.agent.uav_agent import AgentStage, SlotObservation
from src.utils.logger import get_logger
from src.world.geometry import WorldGeometry


def greedy_policy(ue_position: Sequence[float], altitude: float) -> np.ndarray:
    """Point à la verticale de la dernière position de l'UE"""
    return np.array([float(ue_position[0]), float(ue_position[1]), float(altitude)])


def static_policy(static_position: Sequence[float]) -> np.ndarray:
    """Position constante du réflecteur statique"""
    return np.asarray(static_position, dtype=float).copy()


class GreedyPolicy:
    """Suit l'UE à chaque blocage (η < τ), sans apprentissage"""

    def __init__(self, altitude: float):
        self.logger = get_logger(__name__)
        self.altitude = altitude
        self.stage = AgentStage.COMMUNICATION
        self.moves = 0

    def reset_episode(self, geometry: Optional[WorldGeometry] = None):
        self.stage = AgentStage.COMMUNICATION

    def on_communication_slot(self, obs: SlotObservation) -> Optional[np.ndarray]:
        self.stage = AgentStage.COMMUNICATION
        if obs.threshold_met or obs.terminal:
            return None
        target = greedy_policy(obs.ue_position, self.altitude)
        if np.linalg.norm(target - obs.position) <= 1e-9:
            return None
        self.moves += 1
        self.stage = AgentStage.MOBILITY
        return target

    def __repr__(self):
        return f"<GreedyPolicy(altitude={self.altitude}, moves={self.moves})>"


class StaticPolicy:
    """Réflecteur fixe : aucune décision de déplacement"""

    def __init__(self, position: Sequence[float]):
        self.position = static_policy(position)
        self.stage = AgentStage.COMMUNICATION

    def reset_episode(self, geometry: Optional[WorldGeometry] = None):
        self.stage = AgentStage.COMMUNICATION

    def on_communication_slot(self, obs: SlotObservation) -> Optional[np.ndarray]:
        return None

    def __repr__(self):
        return f"<StaticPolicy(position={self.position.tolist()})>"
