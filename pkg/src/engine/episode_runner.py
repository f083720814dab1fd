"""
Episode Runner - Boucle Principale d'un Épisode
===============================================

Orchestre un épisode créneau par créneau :
- mobilité : si le drone n'est pas à sa cible, il avance (p_m, aucune donnée) ;
- communication : réalisation du canal, phases optimales, SNR, débit décodé,
  récolte d'énergie, puis décision de la politique ;
- énergie : E ← E − p(t)·ΔT, arrêt au premier créneau où E < ε.

Pour la politique RL, le protocole par défaut enchaîne des épisodes
d'entraînement (φ et ε conservés) avant l'épisode évalué.

Usage:
    from src.engine.episode_runner import run_episode

    result = run_episode(cfg, 'rl')
    result.metrics.display_stats()
"""

import math
from dataclasses import dataclass, replace
from pathlib import Path
from typing import Any, Dict, List, Optional, Union

import numpy as np

from src.agent.baselines import GreedyPolicy, StaticPolicy
from src.agent.uav_agent import AgentParams, SlotObservation, UavAgent, ValueFunction, reward
from src.channel.channel_model import ChannelModel, capacity, snr
from src.channel.path_loss import linear_to_db
from src.energy.energy_budget import consume, exhausted, net_power
from src.engine.scenario_config import POLICIES, ScenarioConfig
from src.predictor.movement_predictor import MovementHistory
from src.qfunction.features import FEATURE_DIM, FeatureEncoder
from src.qfunction.tabular import TabularQ
from src.qfunction.value_network import ValueNetwork
from src.reflector.reflection import harvested_power, optimal_phases
from src.reporting.episode_metrics import COMMUNICATION, MOBILITY, EpisodeMetrics, SlotRecord
from src.utils.error_handler import ConfigError
from src.utils.logger import get_logger
from src.utils.rng import SeedStreams
from src.world.mobility import UavState, WorldState, initial_ue_state, step_uav, step_ue


logger = get_logger(__name__)


@dataclass(eq=False)
class EpisodeResult:
    """
    Résultat d'un épisode évalué

    Attributes:
        metrics: Journal et agrégats
        config_hash: Hash de la configuration
        seed: Graine de l'épisode
        policy: 'rl', 'greedy' ou 'static'
        agent: Agent RL (φ appris), None pour les références
        training_curve: Une ligne par épisode d'entraînement
    """
    metrics: EpisodeMetrics
    config_hash: str
    seed: int
    policy: str
    agent: Optional[UavAgent] = None
    training_curve: Optional[List[Dict[str, Any]]] = None

    @property
    def provenance(self) -> Dict[str, Any]:
        return {'config_hash': self.config_hash, 'seed': self.seed, 'policy': self.policy}


# ----------------------------------------------------------------------
# Construction
# ----------------------------------------------------------------------

def training_seed(seed: int, episode: int) -> int:
    """Graine du n-ième épisode d'entraînement, indépendante des graines évaluées"""
    return int(np.random.SeedSequence([int(seed), 1, int(episode)]).generate_state(1)[0])


def static_horizon(cfg: ScenarioConfig) -> int:
    """
    Durée de l'épisode de l'IR statique

    Il ne consomme pas l'énergie du drone : on lui donne l'endurance en vol
    stationnaire ⌊(E₀ − ε)/((p_h + p_r)·ΔT)⌋ + 1, bornée par max_slots.
    """
    e = cfg.energy
    hover_slots = math.floor(
        (e.initial_energy_j - cfg.residual_energy_j) / ((e.hover_power_w + e.reflect_power_w) * cfg.slot_s)
    ) + 1
    return max(1, min(hover_slots, cfg.run.max_slots))


def agent_params(cfg: ScenarioConfig) -> AgentParams:
    a = cfg.agent
    return AgentParams(
        gamma=a.gamma,
        epsilon_start=a.epsilon_start,
        epsilon_floor=a.epsilon_floor,
        epsilon_decay=a.epsilon_decay,
        grid_size=a.grid_size,
        grid_spacing=a.grid_spacing_m,
        q_target_mode=a.q_target_mode,
        altitude=cfg.mobility.uav_altitude_m,
        v_max=cfg.mobility.uav_max_speed_mps,
        dt_slot=cfg.slot_s,
        reward_scale=cfg.radio.bandwidth_hz * cfg.slot_s,
    )


def feature_encoder(cfg: ScenarioConfig) -> FeatureEncoder:
    return FeatureEncoder(
        bounds=tuple(cfg.geometry.bounds),
        bs_position=cfg.geometry.bs_position,
        ue_height=cfg.geometry.ue_height_m,
        shadow_half_width=math.radians(cfg.radio.body_shadow_half_width_deg),
    )


def build_value_function(
    cfg: ScenarioConfig,
    rng: np.random.Generator,
    warm_start: Optional[Union[str, Path]] = None
) -> ValueFunction:
    """
    Réseau de valeur ou table selon agent.value_function

    Raises:
        ConfigError: Démarrage à chaud demandé avec une table, ou architecture incompatible
    """
    a = cfg.agent
    if a.value_function == 'tabular':
        if warm_start is not None:
            raise ConfigError(["agent.value_function: démarrage à chaud réservé au réseau"])
        return TabularQ(beta=a.tabular_beta, gamma=a.gamma)

    if warm_start is not None:
        net = ValueNetwork.load(warm_start, learning_rate=a.learning_rate)
        expected = [FEATURE_DIM, *a.hidden_sizes, 1]
        if net.layer_sizes != expected:
            raise ConfigError([f"agent.hidden_sizes: {warm_start} contient {net.layer_sizes}, {expected} attendu"])
        return net
    return ValueNetwork(FEATURE_DIM, a.hidden_sizes, a.learning_rate, rng=rng)


def build_agent(
    cfg: ScenarioConfig,
    rng: np.random.Generator,
    warm_start: Optional[Union[str, Path]] = None
) -> UavAgent:
    """
    Agent RL ; sa géométrie est remplacée à chaque épisode

    Un φ relu depuis warm_start est déjà entraîné : l'exploration démarre
    alors au plancher agent.epsilon_floor.
    """
    value_fn = build_value_function(cfg, rng, warm_start)
    geometry = cfg.build_geometry(SeedStreams(cfg.run.seed).get('layout'))
    agent = UavAgent(value_fn, feature_encoder(cfg), geometry, agent_params(cfg), rng)
    if warm_start is not None:
        agent.state.epsilon = cfg.agent.epsilon_floor
    return agent


# ----------------------------------------------------------------------
# Boucle d'épisode
# ----------------------------------------------------------------------

def simulate_episode(
    cfg: ScenarioConfig,
    policy_name: str,
    policy,
    seed: int,
    max_slots: Optional[int] = None
) -> EpisodeMetrics:
    """
    Déroule un épisode complet pour une politique déjà construite

    Args:
        cfg: Scénario validé
        policy_name: 'rl', 'greedy' ou 'static'
        policy: Objet exposant reset_episode() et on_communication_slot()
        seed: Graine des flux layout / ue / channel
        max_slots: Plafond de créneaux (défaut run.max_slots)

    Returns:
        Métriques de l'épisode
    """
    streams = SeedStreams(seed)
    geometry = cfg.build_geometry(streams.get('layout'))
    ue_rng = streams.get('ue')
    channel_rng = streams.get('channel')

    channel = ChannelModel(cfg.radio_params())
    noise = cfg.noise_model()
    budget = cfg.energy_budget()
    walker = cfg.walker_params()
    dt = cfg.slot_s
    tau = cfg.snr_threshold
    amplitude = cfg.radio.amplitude
    kappa = cfg.radio.kappa
    v_max = cfg.mobility.uav_max_speed_mps

    is_static = policy_name == 'static'
    if is_static:
        cfg.validate_static_ir(geometry)
        start = np.asarray(cfg.geometry.static_ir_position, dtype=float)
        slot_cap = static_horizon(cfg)
    else:
        start = cfg.initial_uav_position()
        slot_cap = cfg.run.max_slots if max_slots is None else max_slots
    geometry.check_position(start, 'uav')

    policy.reset_episode(geometry)
    ue = initial_ue_state(geometry, walker, ue_rng)
    uav = UavState(position=start.copy(), target=start.copy())
    history = MovementHistory(cfg.agent.history_window, dt, cfg.agent.prior_variance_m2)
    metrics = EpisodeMetrics(dt, budget.initial_energy)

    logger.info(
        "Début d'épisode",
        extra={'context': {'policy': policy_name, 'seed': seed, 'slot_cap': slot_cap}}
    )

    for t in range(slot_cap):
        if t > 0:
            ue = step_ue(ue, dt, ue_rng, geometry, walker)
        history.update(ue.xy, ue.omega, t * dt)

        if not uav.at_target:
            # étape de mobilité : pas de transmission
            uav = step_uav(uav, dt, v_max)
            world = WorldState(geometry, ue, uav)
            bs_ir = channel.bs_ir_link(world)
            ir_ue = channel.ir_ue_link(world)
            power = 0.0 if is_static else net_power(uav.speed, 0.0, budget)
            stage, eta_db, rate, bits, p_e = MOBILITY, float('nan'), 0.0, 0.0, 0.0
            terminal_hint = False
        else:
            if uav.speed != 0.0:
                uav = replace(uav, speed=0.0)
            world = WorldState(geometry, ue, uav)
            realization = channel.realize(world, channel_rng)
            bs_ir, ir_ue = realization.bs_ir, realization.ir_ue

            coefficient = optimal_phases(realization.h, realization.r, amplitude)
            eta = snr(realization.h, coefficient, realization.r, noise)
            decoded = capacity(eta, noise) if eta >= tau else 0.0
            bits = reward(0.0, decoded, dt)
            p_e = harvested_power(coefficient, realization.r, kappa)
            power = 0.0 if is_static else net_power(0.0, p_e, budget)
            stage, eta_db, rate = COMMUNICATION, linear_to_db(eta), decoded

            if is_static:
                terminal_hint = t == slot_cap - 1
            else:
                terminal_hint = budget.energy - power * dt < budget.residual

            target = policy.on_communication_slot(SlotObservation(
                h=realization.h,
                position=uav.position,
                ue_position=ue.xy,
                omega=ue.omega,
                los_ir_ue=realization.los_ir_ue,
                threshold_met=eta >= tau,
                reward=bits,
                terminal=terminal_hint,
                history=history,
            ))
            if target is not None:
                uav = replace(uav, target=np.asarray(target, dtype=float))

        if not is_static:
            budget = consume(budget, power, dt)

        metrics.record_slot(SlotRecord(
            slot=t,
            time_s=t * dt,
            stage=stage,
            x=float(uav.position[0]),
            y=float(uav.position[1]),
            z=float(uav.position[2]),
            ue_x=float(ue.position[0]),
            ue_y=float(ue.position[1]),
            omega=float(ue.omega),
            eta_db=float(eta_db),
            rate_bps=float(rate),
            reward_bits=float(bits),
            p_e_w=float(p_e),
            power_w=float(power),
            energy_j=float(budget.energy),
            los_bs_ir=bool(bs_ir.geometric_los),
            los_ir_ue=bool(ir_ue.clear),
            body_shadowed=bool(ir_ue.body_shadowed),
            speed_mps=float(uav.speed),
        ))

        if not is_static and exhausted(budget):
            break
    else:
        if not is_static:
            logger.warning(
                "Plafond de créneaux atteint avant épuisement de l'énergie",
                extra={'context': {'slot_cap': slot_cap, 'energy_j': budget.energy}}
            )

    stats = metrics.get_stats()
    logger.info(
        "Fin d'épisode",
        extra={'context': {
            'policy': policy_name,
            'seed': seed,
            'slots': stats['episode_slots'],
            'mean_rate_bps': stats['mean_rate_bps'],
            'los_fraction': stats['los_fraction'],
        }}
    )
    return metrics


def run_training(
    cfg: ScenarioConfig,
    agent: UavAgent,
    episodes: int,
    max_slots: Optional[int] = None
) -> List[Dict[str, Any]]:
    """
    Épisodes d'entraînement : φ et ε passent d'un épisode à l'autre

    Returns:
        Courbe d'apprentissage (une ligne par épisode)
    """
    cap = max_slots if max_slots is not None else (cfg.run.warmup_max_slots or cfg.run.max_slots)
    curve = []
    for episode in range(episodes):
        seed = training_seed(cfg.run.seed, episode)
        stats = simulate_episode(cfg, 'rl', agent, seed, max_slots=cap).get_stats()
        curve.append({
            'episode': episode,
            'seed': seed,
            'slots': stats['episode_slots'],
            'total_bits': stats['total_bits'],
            'mean_rate_bps': stats['mean_rate_bps'],
            'los_fraction': stats['los_fraction'],
            'epsilon': agent.epsilon,
            'loss': agent.state.last_loss,
        })
        logger.info("Épisode d'entraînement terminé", extra={'context': curve[-1]})
    return curve


def build_policy(cfg: ScenarioConfig, policy: str, warm_start: Optional[Union[str, Path]] = None):
    """
    Instancie la politique demandée

    Raises:
        ConfigError: Politique inconnue
    """
    if policy not in POLICIES:
        raise ConfigError([f"policy: {policy} ∉ {POLICIES}"])
    if policy == 'greedy':
        return GreedyPolicy(cfg.mobility.uav_altitude_m)
    if policy == 'static':
        return StaticPolicy(cfg.geometry.static_ir_position)
    return build_agent(cfg, SeedStreams(cfg.run.seed).get('agent'), warm_start)


def run_episode(
    cfg: ScenarioConfig,
    policy: str,
    warm_start: Optional[Union[str, Path]] = None
) -> EpisodeResult:
    """
    Exécute un épisode évalué, déterministe pour (cfg, policy, seed)

    En mode 'warmup' sans démarrage à chaud, l'agent RL s'entraîne d'abord
    sur run.warmup_episodes épisodes de graines dérivées. En mode 'online'
    il apprend uniquement pendant l'épisode évalué.

    Args:
        cfg: Scénario
        policy: 'rl', 'greedy' ou 'static'
        warm_start: Fichier φ écrit par ValueNetwork.save()

    Raises:
        ConfigError: Scénario invalide (chemins des champs listés)
    """
    cfg.ensure_valid()
    controller = build_policy(cfg, policy, warm_start)

    curve = None
    agent = controller if isinstance(controller, UavAgent) else None
    if agent is not None and cfg.run.training_mode == 'warmup' and warm_start is None:
        curve = run_training(cfg, agent, cfg.run.warmup_episodes)

    metrics = simulate_episode(cfg, policy, controller, cfg.run.seed)
    return EpisodeResult(
        metrics=metrics,
        config_hash=cfg.config_hash(),
        seed=cfg.run.seed,
        policy=policy,
        agent=agent,
        training_curve=curve,
    )


def train(
    cfg: ScenarioConfig,
    episodes: Optional[int] = None,
    warm_start: Optional[Union[str, Path]] = None
):
    """
    Protocole d'entraînement seul (sous-commande `train`)

    Returns:
        (agent, courbe d'apprentissage)
    """
    cfg.ensure_valid()
    agent = build_agent(cfg, SeedStreams(cfg.run.seed).get('agent'), warm_start)
    count = cfg.run.warmup_episodes if episodes is None else episodes
    return agent, run_training(cfg, agent, count)
