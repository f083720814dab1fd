"""
Tests du Module Agent
=====================

Récompense, sélection ε-gloutonne, boucle de décision et cibles
d'apprentissage de l'agent ; politiques de référence glouton et statique.
"""

import numpy as np
import pytest

from src.agent.baselines import GreedyPolicy, StaticPolicy, greedy_policy
from src.agent.uav_agent import (
    AgentParams,
    AgentStage,
    SlotObservation,
    UavAgent,
    exploration_after,
    reward,
)
from src.predictor.movement_predictor import MovementHistory
from src.qfunction.features import FeatureEncoder
from src.qfunction.tabular import TabularQ
from src.qfunction.value_network import ValueNetwork
from src.world.geometry import WorldGeometry, crossing_buildings, crossing_streets


H = np.full(16, 1e-4 + 0j)


def print_header(text):
    """Affiche un header"""
    print("\n" + "=" * 60)
    print(f"  {text}")
    print("=" * 60)


def print_success(text):
    """Affiche un succès"""
    print(f"✅ {text}")


def open_geometry(obstacles=()):
    return WorldGeometry(
        obstacles=tuple(obstacles),
        streets=tuple(crossing_streets(7.5, 47.5)),
        bounds=(-47.5, 47.5, -47.5, 47.5),
        bs_position=(60.0, -60.0, 25.0),
        bs_boresight=(-1.0, 1.0, 0.0),
    )


def make_agent(value_fn, geometry=None, seed=0, **overrides):
    values = dict(gamma=0.0, epsilon_start=0.0, epsilon_floor=0.0, reward_scale=1.0)
    values.update(overrides)
    geometry = geometry or open_geometry()
    encoder = FeatureEncoder(bounds=geometry.bounds, bs_position=geometry.bs_position)
    return UavAgent(value_fn, encoder, geometry, AgentParams(**values), np.random.default_rng(seed))


def stationary_history(xy=(0.0, 0.0), samples=5, start=0.0):
    history = MovementHistory(window=20, dt_slot=0.1)
    for k in range(samples):
        history.update(xy, 0.0, start + 0.1 * k)
    return history


def observation(position, history, reward_bits, threshold_met=False, terminal=False, los=False, ue=(0.0, 0.0)):
    return SlotObservation(
        h=H,
        position=np.array(position, dtype=float),
        ue_position=np.array(ue, dtype=float),
        omega=0.0,
        los_ir_ue=los,
        threshold_met=threshold_met,
        reward=reward_bits,
        terminal=terminal,
        history=history,
    )


def test_reward_examples():
    """Test 1 : Récompense par créneau"""
    print_header("Test 1 : reward")

    assert reward(0.0, 5e8, 0.1) == pytest.approx(5e7)
    assert reward(5.0, 5e8, 0.1) == 0.0
    assert reward(0.0, 0.0, 0.1) == 0.0
    with pytest.raises(ValueError):
        reward(0.0, -1.0, 0.1)

    print_success("c·ΔT en vol stationnaire, 0 sinon")


def test_candidate_set():
    """Test 2 : Grille de candidats"""
    print_header("Test 2 : candidate_set")

    agent = make_agent(ValueNetwork.zeros())
    grid = agent.candidate_set(np.array([0.0, 0.0]))
    assert grid.shape == (81, 3)
    assert np.all(grid[:, 2] == 40.0)

    corner = agent.candidate_set(np.array([47.0, 47.0]))
    assert len(corner) < 81
    assert np.all(np.abs(corner[:, :2]) <= 47.5)

    low = make_agent(ValueNetwork.zeros(), open_geometry(crossing_buildings()), altitude=10.0)
    grid = low.candidate_set(np.array([10.0, 10.0]))
    assert not any(low.geometry.inside_obstacle(point) for point in grid)
    assert len(grid) < 81

    print_success("81 points à 40 m, écrêtage et exclusion des bâtiments")


def test_tie_break_nearest():
    """Test 3 : Égalité totale → candidat le plus proche"""
    print_header("Test 3 : Départage")

    agent = make_agent(ValueNetwork.zeros())
    mu = np.zeros(2)
    candidates = agent.candidate_set(mu)
    chosen = agent.select_action(H, mu, 0.0, mu, candidates, np.array([4.2, 0.1, 40.0]))
    assert np.array_equal(chosen, [4.0, 0.0, 40.0])

    print_success("(4, 0, 40) retenu")


def test_greedy_choice():
    """Test 4 : Un candidat de valeur +1"""
    print_header("Test 4 : argmax")

    table = TabularQ(beta=1.0, gamma=0.0)
    agent = make_agent(table)
    mu = np.zeros(2)
    candidates = agent.candidate_set(mu)
    favourite = candidates[17]
    table.train(agent.encoder.encode(H, favourite, mu, 0.0, mu), 1.0)

    chosen = agent.select_action(H, mu, 0.0, mu, candidates, np.array([0.0, 0.0, 40.0]))
    assert np.array_equal(chosen, favourite)

    print_success("Candidat favori sélectionné avec ε = 0")


def test_uniform_exploration():
    """Test 5 : ε = 1, choix uniforme"""
    print_header("Test 5 : Exploration uniforme")

    agent = make_agent(ValueNetwork.zeros(), seed=42, grid_size=3,
                       epsilon_start=1.0, epsilon_floor=1.0, epsilon_decay=1.0)
    mu = np.zeros(2)
    candidates = agent.candidate_set(mu)
    counts = np.zeros(len(candidates))
    draws = 10_000
    for _ in range(draws):
        chosen = agent.select_action(H, mu, 0.0, mu, candidates, np.zeros(3))
        counts[np.flatnonzero(np.all(candidates == chosen, axis=1))[0]] += 1

    expected = draws / len(candidates)
    chi2 = float(np.sum((counts - expected) ** 2 / expected))
    # quantile 0.999 du χ² à 8 degrés de liberté
    assert chi2 < 26.12

    print(f"\n🎲 χ² = {chi2:.2f} (9 candidats)")
    print_success("Distribution uniforme")


def test_epsilon_decay():
    """Test 6 : Décroissance de ε"""
    print_header("Test 6 : ε")

    agent = make_agent(ValueNetwork.zeros(), epsilon_start=0.3, epsilon_floor=0.01, epsilon_decay=0.5)
    mu = np.zeros(2)
    candidates = agent.candidate_set(mu)
    for decisions in range(1, 10):
        agent.select_action(H, mu, 0.0, mu, candidates, np.zeros(3))
        assert agent.epsilon == pytest.approx(exploration_after(decisions, 0.3, 0.5, 0.01))
    assert agent.epsilon == 0.01

    print_success("ε = max(plancher, ε₀·decay^n)")


def test_hover_on_los():
    """Test 7 : η ≥ τ, le drone reste"""
    print_header("Test 7 : Vol stationnaire")

    table = TabularQ(beta=1.0, gamma=0.0)
    agent = make_agent(table)
    obs = observation((0.0, 0.0, 40.0), stationary_history(), 5e6, threshold_met=True, los=True)

    assert agent.on_communication_slot(obs) is None
    assert agent.stage == AgentStage.COMMUNICATION
    assert list(table.table.values()) == [5e6]

    print_success("Aucune cible, Q(ici) = r(t)")


def test_blocked_slot_moves(mocker):
    """Test 8 : η < τ, déplacement décidé"""
    print_header("Test 8 : Blocage")

    table = TabularQ(beta=1.0, gamma=0.0)
    agent = make_agent(table)
    spy = mocker.spy(table, 'train')
    obs = observation((10.0, 10.0, 40.0), stationary_history(), 0.0)

    target = agent.on_communication_slot(obs)
    assert np.array_equal(target, [8.0, 8.0, 40.0])
    assert agent.stage == AgentStage.MOBILITY
    assert agent.state.pending is not None
    assert spy.call_args_list[0].args[1] == 0.0

    print_success("Cible (8, 8, 40), transition en attente")


def test_scripted_episode_targets(mocker):
    """Test 9 : Épisode de 3 créneaux tracé à la main (β = 1, γ = 0)"""
    print_header("Test 9 : Cibles = r(t)")

    table = TabularQ(beta=1.0, gamma=0.0)
    agent = make_agent(table)
    spy = mocker.spy(table, 'train')

    first = agent.on_communication_slot(observation((10.0, 10.0, 40.0), stationary_history(), 3.0))
    assert first is not None
    second = agent.on_communication_slot(
        observation(first, stationary_history(samples=8), 5.0, threshold_met=True)
    )
    assert second is None
    third = agent.on_communication_slot(
        observation(first, stationary_history(samples=9), 2.0, terminal=True)
    )
    assert third is None

    targets = [call.args[1] for call in spy.call_args_list]
    assert targets == [3.0, 5.0, 5.0, 2.0]

    print_success("Décision, arrivée, vol stationnaire, créneau terminal")


def test_pending_bootstrap(mocker):
    """Test 10 : Transition résolue à l'arrivée avec γ > 0"""
    print_header("Test 10 : r(t+K) + γ·max Q̃")

    table = TabularQ(beta=1.0, gamma=0.5)
    agent = make_agent(table, gamma=0.5)
    spy = mocker.spy(table, 'train')

    destination = agent.on_communication_slot(observation((10.0, 10.0, 40.0), stationary_history(), 3.0))
    agent.on_communication_slot(observation(destination, stationary_history(samples=8), 5.0, threshold_met=True))

    targets = [call.args[1] for call in spy.call_args_list]
    assert targets == [3.0, 6.5, 5.0]

    print_success("Cibles 3 → 5 + 0.5·3 → 5")


def test_next_stage_mode(mocker):
    """Test 11 : Cible uniquement à l'étape suivante"""
    print_header("Test 11 : q_target_mode = next_stage")

    table = TabularQ(beta=1.0, gamma=0.5)
    agent = make_agent(table, gamma=0.5, q_target_mode='next_stage')
    spy = mocker.spy(table, 'train')

    destination = agent.on_communication_slot(observation((10.0, 10.0, 40.0), stationary_history(), 3.0))
    assert spy.call_count == 0
    agent.on_communication_slot(observation(destination, stationary_history(samples=8), 5.0, threshold_met=True))

    targets = [call.args[1] for call in spy.call_args_list]
    assert targets == [5.0, 5.0]

    print_success("Aucune cible au moment de la décision")


def test_terminal_drops_bootstrap(mocker):
    """Test 12 : Énergie épuisée à l'arrivée"""
    print_header("Test 12 : Transition terminale")

    table = TabularQ(beta=1.0, gamma=0.5)
    agent = make_agent(table, gamma=0.5)
    spy = mocker.spy(table, 'train')

    destination = agent.on_communication_slot(observation((10.0, 10.0, 40.0), stationary_history(), 3.0))
    agent.on_communication_slot(observation(destination, stationary_history(samples=8), 4.0, terminal=True))

    targets = [call.args[1] for call in spy.call_args_list]
    assert targets == [3.0, 4.0, 4.0]

    agent.reset_episode()
    assert agent.state.pending is None and agent.stage == AgentStage.COMMUNICATION

    print_success("q = r(t) sans amorçage")


def test_frozen_agent_does_not_learn():
    """Test 13 : Agent figé"""
    print_header("Test 13 : learning = False")

    table = TabularQ(beta=1.0, gamma=0.0)
    agent = make_agent(table, learning=False)
    agent.on_communication_slot(observation((0.0, 0.0, 40.0), stationary_history(), 5.0, threshold_met=True))
    assert len(table) == 0 and agent.state.updates == 0

    print_success("Aucune mise à jour")


def test_greedy_policy():
    """Test 14 : Politique gloutonne"""
    print_header("Test 14 : Glouton")

    assert np.array_equal(greedy_policy((10.0, 5.0), 40.0), [10.0, 5.0, 40.0])

    policy = GreedyPolicy(altitude=40.0)
    history = stationary_history((10.0, 5.0))
    first = policy.on_communication_slot(observation((0.0, 0.0, 40.0), history, 0.0, ue=(10.0, 5.0)))
    assert np.array_equal(first, [10.0, 5.0, 40.0])
    assert policy.stage == AgentStage.MOBILITY
    # même UE, déjà à la verticale : pas d'oscillation
    assert policy.on_communication_slot(observation(first, history, 0.0, ue=(10.0, 5.0))) is None

    moved = policy.on_communication_slot(observation(first, history, 0.0, ue=(12.5, 5.0)))
    assert np.array_equal(moved, [12.5, 5.0, 40.0])
    assert policy.on_communication_slot(
        observation(moved, history, 1.0, threshold_met=True, ue=(20.0, 5.0))
    ) is None
    assert policy.moves == 2

    print_success("Suit la dernière position de l'UE")


def test_static_policy():
    """Test 15 : Réflecteur statique"""
    print_header("Test 15 : Statique")

    policy = StaticPolicy((8.0, -8.0, 16.0))
    history = stationary_history()
    for k in range(10):
        assert policy.on_communication_slot(observation((8.0, -8.0, 16.0), history, 0.0)) is None
    assert np.array_equal(policy.position, [8.0, -8.0, 16.0])

    print_success("Jamais de déplacement")
