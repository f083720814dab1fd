"""
Agent de Déploiement du UAV-IR
==============================

Machine à deux étapes (communication / mobilité), récompense par créneau,
sélection ε-gloutonne de la position suivante sur une grille de candidats
centrée sur la position prédite de l'UE, et mises à jour en ligne de la
fonction de valeur.

Usage:
    from src.agent.uav_agent import UavAgent, SlotObservation

    agent = UavAgent(value_fn, encoder, geometry, params, rng)
    target = agent.on_communication_slot(observation)
    if target is not None:
        uav = replace(uav, target=target)
"""

import logging
import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Optional, Protocol

import numpy as np

from src.predictor.movement_predictor import MovementHistory
from src.qfunction.features import FeatureEncoder
from src.utils.logger import get_logger
from src.world.geometry import WorldGeometry
from src.world.mobility import mobility_slots


class AgentStage(Enum):
    """Étapes alternées d'un épisode"""
    COMMUNICATION = "communication"
    MOBILITY = "mobility"


class ValueFunction(Protocol):
    """Interface commune de ValueNetwork et TabularQ"""

    def evaluate(self, features: np.ndarray) -> float: ...

    def evaluate_batch(self, features: np.ndarray) -> np.ndarray: ...

    def train(self, features: np.ndarray, target: float) -> float: ...


def reward(v_r: float, rate: float, dt_slot: float) -> float:
    """
    Données livrées pendant le créneau : 1_{v_r=0}·c·ΔT (bits)

    Args:
        v_r: Vitesse du drone (m/s)
        rate: Débit c (bit/s)
        dt_slot: ΔT (s)
    """
    if rate < 0:
        raise ValueError(f"rate doit être >= 0: {rate}")
    return rate * dt_slot if v_r == 0 else 0.0


@dataclass(frozen=True, eq=False)
class SlotObservation:
    """
    Mesures d'un créneau de communication

    Attributes:
        h: Canal IR→UE mesuré
        position: Position courante du drone x(t)
        ue_position: Position 2D de l'UE y(t)
        omega: Azimut du terminal ω(t)
        los_ir_ue: Visibilité IR→UE (géométrique et sans masquage corporel)
        threshold_met: η ≥ τ
        reward: Récompense r(t) (bits), débit décodé·ΔT
        terminal: L'énergie après ce créneau passe sous ε
        history: Historique de mouvement de l'UE
    """
    h: np.ndarray
    position: np.ndarray
    ue_position: np.ndarray
    omega: float
    los_ir_ue: bool
    threshold_met: bool
    reward: float
    terminal: bool
    history: MovementHistory


@dataclass(frozen=True)
class AgentParams:
    """Hyperparamètres utiles à la boucle de décision"""
    gamma: float = 0.1
    epsilon_start: float = 0.3
    epsilon_floor: float = 0.01
    epsilon_decay: float = 0.99
    grid_size: int = 9
    grid_spacing: float = 2.0
    q_target_mode: str = 'algorithm'
    altitude: float = 40.0
    v_max: float = 20.0
    dt_slot: float = 0.1
    reward_scale: float = 1e7
    learning: bool = True


@dataclass
class PendingTransition:
    """Décision de déplacement en attente de sa cible résolue à l'arrivée"""
    features: np.ndarray
    destination: np.ndarray


@dataclass
class AgentState:
    """État interne de l'agent"""
    stage: AgentStage = AgentStage.COMMUNICATION
    epsilon: float = 0.3
    pending: Optional[PendingTransition] = None
    decisions: int = 0
    moves: int = 0
    updates: int = 0
    last_loss: float = field(default=0.0)


class UavAgent:
    """
    Décideur du UAV-IR

    À chaque créneau de communication :
    - η ≥ τ : le drone reste, cible q = r(t) ;
    - η < τ : choix de x̃ parmi les candidats, passage en mobilité, cible
      q = r(t) + γ·max_x Q̃ sur la position choisie (mode 'algorithm') ;
    - à la première communication après une arrivée, la transition en
      attente reçoit q = r(t+K) + γ·max_x Q̃(état à t+K) ;
    - si l'énergie passe sous ε, q = r(t) sans amorçage.

    Les valeurs apprises sont en unités de b·ΔT bits.
    """

    def __init__(
        self,
        value_fn: ValueFunction,
        encoder: FeatureEncoder,
        geometry: WorldGeometry,
        params: AgentParams,
        rng: np.random.Generator
    ):
        """
        Args:
            value_fn: Fonction de valeur (réseau ou table)
            encoder: Encodeur de caractéristiques
            geometry: Scène (bornes, obstacles)
            params: Hyperparamètres
            rng: Flux aléatoire 'agent'
        """
        self.logger = get_logger(__name__)
        self.value_fn = value_fn
        self.encoder = encoder
        self.geometry = geometry
        self.params = params
        self.rng = rng
        self.state = AgentState(epsilon=params.epsilon_start)

    @property
    def stage(self) -> AgentStage:
        return self.state.stage

    @property
    def epsilon(self) -> float:
        return self.state.epsilon

    def reset_episode(self, geometry: Optional[WorldGeometry] = None):
        """
        Nouvel épisode : φ et ε conservés, transition en attente abandonnée

        Args:
            geometry: Scène du nouvel épisode (les arbres dépendent de la graine)
        """
        if geometry is not None:
            self.geometry = geometry
        self.state.stage = AgentStage.COMMUNICATION
        self.state.pending = None

    def begin_mobility(self):
        self.state.stage = AgentStage.MOBILITY

    # ------------------------------------------------------------------
    # Candidats et sélection
    # ------------------------------------------------------------------

    def candidate_set(self, mu: np.ndarray) -> np.ndarray:
        """
        Grille G×G à l'altitude du scénario centrée sur μ

        Les points sont ramenés dans la scène ; ceux situés dans un obstacle
        sont exclus. Repli : le point à la verticale de μ.

        Returns:
            Tableau (K, 3) de positions distinctes
        """
        p = self.params
        offsets = (np.arange(p.grid_size) - (p.grid_size - 1) / 2.0) * p.grid_spacing
        points = []
        seen = set()
        for dx in offsets:
            for dy in offsets:
                xy = self.geometry.clamp_xy((mu[0] + dx, mu[1] + dy))
                point = np.array([xy[0], xy[1], p.altitude])
                key = tuple(np.round(point, 9))
                if key in seen or self.geometry.inside_obstacle(point):
                    continue
                seen.add(key)
                points.append(point)
        if not points:
            xy = self.geometry.clamp_xy(mu)
            points.append(np.array([xy[0], xy[1], p.altitude]))
        return np.array(points)

    def prediction_horizon(self, position: np.ndarray, history: MovementHistory) -> int:
        """k = max(1, K) pour rejoindre la verticale de la prédiction à un créneau"""
        mu_one = history.predict(1).mean
        above = np.array([mu_one[0], mu_one[1], self.params.altitude])
        return max(1, mobility_slots(position, above, self.params.v_max, self.params.dt_slot))

    def _tie_break(self, candidates: np.ndarray, tied: np.ndarray, position: np.ndarray) -> int:
        """Plus petite distance de trajet, puis ordre lexicographique (x, y, z)"""
        subset = candidates[tied]
        distances = np.round(np.linalg.norm(subset - position, axis=1), 9)
        order = np.lexsort((subset[:, 2], subset[:, 1], subset[:, 0], distances))
        return int(np.flatnonzero(tied)[order[0]])

    def select_action(
        self,
        h: np.ndarray,
        y: np.ndarray,
        omega: float,
        mu: np.ndarray,
        candidates: np.ndarray,
        position: np.ndarray,
        *,
        los_ir_ue: bool = False
    ) -> np.ndarray:
        """
        Choix ε-glouton parmi les candidats

        Avec probabilité 1 − ε : argmax de Q̃, égalités départagées par la
        distance de trajet depuis `position` puis l'ordre lexicographique ;
        sinon un candidat uniforme. ε décroît géométriquement jusqu'au plancher.

        Returns:
            Position 3D retenue
        """
        if len(candidates) == 0:
            raise ValueError("Ensemble de candidats vide")

        epsilon = self.state.epsilon
        self.state.epsilon = max(self.params.epsilon_floor, epsilon * self.params.epsilon_decay)
        self.state.decisions += 1

        if epsilon > 0.0 and self.rng.random() < epsilon:
            return candidates[int(self.rng.integers(0, len(candidates)))].copy()

        features = self.encoder.encode_candidates(h, candidates, y, omega, mu, los_ir_ue=los_ir_ue)
        values = self.value_fn.evaluate_batch(features)
        tied = np.isclose(values, values.max(), rtol=0.0, atol=1e-12)
        return candidates[self._tie_break(candidates, tied, position)].copy()

    def max_value(self, h: np.ndarray, y: np.ndarray, omega: float, mu: np.ndarray,
                  candidates: np.ndarray, *, los_ir_ue: bool = False) -> float:
        features = self.encoder.encode_candidates(h, candidates, y, omega, mu, los_ir_ue=los_ir_ue)
        return float(np.max(self.value_fn.evaluate_batch(features)))

    # ------------------------------------------------------------------
    # Boucle de décision
    # ------------------------------------------------------------------

    def _train(self, features: np.ndarray, target: float):
        if not self.params.learning:
            return
        self.state.last_loss = self.value_fn.train(features, target)
        self.state.updates += 1

    def on_communication_slot(self, obs: SlotObservation) -> Optional[np.ndarray]:
        """
        Traite un créneau de communication (drone en vol stationnaire)

        Args:
            obs: Mesures du créneau

        Returns:
            Nouvelle cible de mobilité, ou None si le drone reste sur place
        """
        p = self.params
        self.state.stage = AgentStage.COMMUNICATION
        scaled_reward = obs.reward / p.reward_scale
        y = np.asarray(obs.ue_position, dtype=float)[:2]

        horizon = self.prediction_horizon(obs.position, obs.history)
        mu = obs.history.predict(horizon).mean
        # la grille n'est construite que si un max ou un choix est nécessaire
        candidates = None

        # transition en attente : résolue avec l'état observé à l'arrivée
        if self.state.pending is not None:
            target = scaled_reward
            if not obs.terminal:
                candidates = self.candidate_set(mu)
                target += p.gamma * self.max_value(obs.h, y, obs.omega, mu, candidates, los_ir_ue=obs.los_ir_ue)
            self._train(self.state.pending.features, target)
            self.state.pending = None

        if obs.terminal or obs.threshold_met:
            here = self.encoder.encode(obs.h, obs.position, y, obs.omega, mu, los_ir_ue=obs.los_ir_ue)
            self._train(here, scaled_reward)
            return None

        if candidates is None:
            candidates = self.candidate_set(mu)
        destination = self.select_action(
            obs.h, y, obs.omega, mu, candidates, obs.position, los_ir_ue=obs.los_ir_ue
        )
        chosen = self.encoder.encode(obs.h, destination, y, obs.omega, mu, los_ir_ue=obs.los_ir_ue)
        if p.q_target_mode == 'algorithm':
            bootstrap = self.max_value(obs.h, y, obs.omega, mu, candidates, los_ir_ue=obs.los_ir_ue)
            self._train(chosen, scaled_reward + p.gamma * bootstrap)

        if np.linalg.norm(destination - obs.position) <= 1e-9:
            # déjà à la meilleure position : pas d'étape de mobilité
            return None

        self.state.pending = PendingTransition(features=chosen, destination=destination)
        self.state.moves += 1
        self.begin_mobility()
        if self.logger.isEnabledFor(logging.DEBUG):
            self.logger.debug(
                "Blocage, déplacement décidé",
                extra={'context': {
                    'from': [round(float(v), 3) for v in obs.position],
                    'to': [round(float(v), 3) for v in destination],
                    'epsilon': round(self.state.epsilon, 5),
                    'horizon': horizon,
                }}
            )
        return destination

    def __repr__(self):
        return (
            f"<UavAgent(stage={self.stage.value}, ε={self.state.epsilon:.4f}, "
            f"moves={self.state.moves}, updates={self.state.updates})>"
        )


def exploration_after(decisions: int, start: float, decay: float, floor: float) -> float:
    """ε après `decisions` décisions"""
    return max(floor, start * math.pow(decay, decisions))
