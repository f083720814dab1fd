"""
Tests du Module World
=====================

Géométrie (tests de visibilité, obstacles), marche de l'UE, cinématique du
drone et nombre de créneaux de mobilité.
"""

import math

import numpy as np
import pytest

from src.utils.error_handler import ScenarioGeometryError
from src.world.geometry import (
    Obstacle,
    StreetArea,
    WorldGeometry,
    crossing_buildings,
    crossing_streets,
    place_roadside_trees,
    segment_blockage,
    segment_clear,
)
from src.world.mobility import (
    UavState,
    UeState,
    WalkerParams,
    body_blocked,
    initial_ue_state,
    mobility_slots,
    normalize_angle,
    sample_waypoint,
    step_uav,
    step_ue,
)


def print_header(text):
    """Affiche un header"""
    print("\n" + "=" * 60)
    print(f"  {text}")
    print("=" * 60)


def print_success(text):
    """Affiche un succès"""
    print(f"✅ {text}")


def crossing_geometry(trees=()):
    return WorldGeometry(
        obstacles=tuple(crossing_buildings()) + tuple(trees),
        streets=tuple(crossing_streets(7.5, 47.5)),
        bounds=(-47.5, 47.5, -47.5, 47.5),
        bs_position=(60.0, -60.0, 25.0),
        bs_boresight=(-1.0, 1.0, 0.0),
    )


def ue_at(xy, omega=0.0, waypoint=None):
    waypoint = xy if waypoint is None else waypoint
    return UeState(
        position=np.array([xy[0], xy[1], 1.5]),
        omega=omega,
        velocity=np.zeros(2),
        waypoint=np.array(waypoint, dtype=float),
    )


def test_segment_clear_examples():
    """Test 1 : Visibilité à travers / au-dessus d'un bâtiment"""
    print_header("Test 1 : segment_clear")

    building = [Obstacle.building((0, 0, 0), (40, 40, 16))]
    assert segment_clear((-10, 20, 10), (50, 20, 10), building) is False
    assert segment_clear((-10, 20, 20), (50, 20, 20), building) is True
    assert segment_clear((0, 0, 5), (0, 0, 50), []) is True

    print_success("Bloqué à 10 m, dégagé à 20 m, dégagé sans obstacle")


def test_segment_degenerate_and_tree():
    """Test 2 : Segment dégénéré et couronne d'arbre"""
    print_header("Test 2 : Dégénéré / Arbre")

    tree = [Obstacle.tree((0, 0, 6), 2.0)]
    assert segment_clear((1, 1, 1), (1, 1, 1), tree) is True
    assert segment_blockage((-5, 0, 6), (5, 0, 6), tree) == (False, True)
    assert segment_clear((-5, 0, 9), (5, 0, 9), tree) is True

    print_success("p = q dégagé, couronne bloquante, passage au-dessus dégagé")


def test_segment_clear_symmetry():
    """Test 3 : Symétrie sur 1000 paires aléatoires"""
    print_header("Test 3 : Symétrie")

    rng = np.random.default_rng(7)
    trees = place_roadside_trees(rng, 12, 7.5, 47.5)
    obstacles = crossing_buildings() + trees
    for _ in range(1000):
        p = rng.uniform([-47.5, -47.5, 0], [47.5, 47.5, 30])
        q = rng.uniform([-47.5, -47.5, 0], [47.5, 47.5, 30])
        assert segment_clear(p, q, obstacles) == segment_clear(q, p, obstacles)

    print_success("segment_clear(p, q) = segment_clear(q, p)")


def test_obstacle_invariants():
    """Test 4 : Invariants des obstacles et de la scène"""
    print_header("Test 4 : Obstacles")

    with pytest.raises(ValueError):
        Obstacle.building((0, 0, 0), (0, 10, 10))
    with pytest.raises(ValueError):
        Obstacle.tree((0, 0, 6), 0.0)
    with pytest.raises(ScenarioGeometryError):
        WorldGeometry(
            obstacles=(Obstacle.building((40, 40, 0), (60, 60, 16)),),
            streets=(),
            bounds=(-47.5, 47.5, -47.5, 47.5),
            bs_position=(60.0, -60.0, 25.0),
            bs_boresight=(-1.0, 1.0, 0.0),
        )

    print_success("Boîte plate, rayon nul et obstacle hors zone rejetés")


def test_roadside_trees():
    """Test 5 : Arbres sur les bords de rue"""
    print_header("Test 5 : Plantation des arbres")

    rng = np.random.default_rng(3)
    trees = place_roadside_trees(rng, 12, 7.5, 47.5)
    geometry = crossing_geometry(trees)

    assert len(trees) == 12
    for tree in trees:
        x, y, z = tree.crown_center
        assert z == 6.0
        assert not any(b.footprint_contains((x, y)) for b in geometry.buildings)
        assert min(abs(x), abs(y)) == pytest.approx(6.5)

    print(f"\n🌳 {len(trees)} arbres à 6.5 m de l'axe")
    print_success("Arbres hors des emprises de bâtiments")


def test_body_blocked_examples():
    """Test 6 : Masquage corporel"""
    print_header("Test 6 : body_blocked")

    ue = ue_at((0.0, 0.0), omega=0.0)
    assert body_blocked(ue, (10.0, 0.0, 1.5)) is False
    assert body_blocked(ue, (-10.0, 0.0, 1.5)) is True
    # l.élévation ne protège pas : un drone haut derrière le piéton reste masqué
    assert body_blocked(ue, (-1.0, 0.0, 40.0)) is True
    assert body_blocked(ue, (1.0, 0.0, 40.0)) is False
    # verticale exacte : pas d.azimut
    assert body_blocked(ue, (0.0, 0.0, 40.0)) is False

    print_success("Est dégagé, ouest masqué à toute élévation")


def test_body_blocked_sweep():
    """Test 7 : Balayage de 360 azimuts contre un oracle direct"""
    print_header("Test 7 : Balayage azimutal")

    omega = math.pi / 2
    ue = ue_at((2.0, -3.0), omega=omega)
    half_width = math.radians(60.0)
    for k in range(360):
        azimuth = math.radians(k + 0.5)
        target = (2.0 + 10 * math.cos(azimuth), -3.0 + 10 * math.sin(azimuth), 1.5)
        diff = abs((azimuth - (omega + math.pi) + math.pi) % (2 * math.pi) - math.pi)
        assert body_blocked(ue, target) == (diff < half_width)

    print_success("360 azimuts conformes à l'oracle")


def test_step_ue_linear_motion():
    """Test 8 : Marche rectiligne"""
    print_header("Test 8 : step_ue linéaire")

    geometry = crossing_geometry()
    ue = ue_at((0.0, 0.0), waypoint=(5.0, 0.0))
    moved = step_ue(ue, 0.1, np.random.default_rng(0), geometry, WalkerParams())

    assert moved.position[0] == pytest.approx(0.1)
    assert moved.position[1] == pytest.approx(0.0)
    assert np.allclose(moved.velocity, [1.0, 0.0])
    assert 0.0 <= moved.omega < 2 * math.pi

    print_success("y = (0.1, 0) après 0.1 s à 1 m/s")


def test_step_ue_at_waypoint():
    """Test 9 : Arrivée à destination"""
    print_header("Test 9 : Nouvelle destination")

    geometry = crossing_geometry()
    ue = ue_at((3.0, 0.0), waypoint=(3.0, 0.0))
    moved = step_ue(ue, 0.1, np.random.default_rng(1), geometry, WalkerParams())

    assert np.array_equal(moved.position[:2], [3.0, 0.0])
    assert not np.array_equal(moved.waypoint, [3.0, 0.0])
    assert geometry.is_walkable(moved.waypoint)

    print_success("Position inchangée, destination redessinée")


def test_step_ue_stays_walkable():
    """Test 10 : 10⁴ pas sans entrer dans un bâtiment"""
    print_header("Test 10 : Marchabilité")

    rng = np.random.default_rng(11)
    geometry = crossing_geometry(place_roadside_trees(rng, 12, 7.5, 47.5))
    params = WalkerParams()
    ue = initial_ue_state(geometry, params, rng)
    for _ in range(10_000):
        ue = step_ue(ue, 0.1, rng, geometry, params)
        assert not any(b.footprint_contains(ue.xy) for b in geometry.buildings)
        assert float(np.linalg.norm(ue.velocity)) <= params.speed + 1e-12

    print_success("Trajectoire toujours dans les rues")


def test_step_ue_determinism():
    """Test 11 : Même graine, même trajectoire"""
    print_header("Test 11 : Déterminisme de la marche")

    geometry = crossing_geometry()
    params = WalkerParams()

    def trajectory(seed):
        rng = np.random.default_rng(seed)
        ue = initial_ue_state(geometry, params, rng)
        points = []
        for _ in range(500):
            ue = step_ue(ue, 0.1, rng, geometry, params)
            points.append(ue.position.copy())
        return np.array(points)

    assert np.array_equal(trajectory(5), trajectory(5))
    assert not np.array_equal(trajectory(5), trajectory(6))

    print_success("Trajectoires identiques bit à bit")


def test_stationary_walker():
    """Test 12 : UE immobile"""
    print_header("Test 12 : Vitesse nulle")

    geometry = crossing_geometry()
    params = WalkerParams(speed=0.0)
    ue = ue_at((1.0, 2.0), waypoint=(10.0, 2.0))
    for _ in range(20):
        ue = step_ue(ue, 0.1, np.random.default_rng(0), geometry, params)
    assert np.array_equal(ue.position[:2], [1.0, 2.0])

    print_success("Position constante")


def test_sample_waypoint_malformed():
    """Test 13 : Scène sans zone marchable"""
    print_header("Test 13 : Échec du tirage de destination")

    geometry = WorldGeometry(
        obstacles=(),
        streets=(StreetArea((100.0, 100.0), (110.0, 110.0)),),
        bounds=(-10.0, 10.0, -10.0, 10.0),
        bs_position=(60.0, -60.0, 25.0),
        bs_boresight=(-1.0, 1.0, 0.0),
    )
    with pytest.raises(ScenarioGeometryError):
        sample_waypoint(geometry, (0.0, 0.0), np.random.default_rng(0))

    print_success("ScenarioGeometryError après 1000 essais")


def test_step_uav_examples():
    """Test 14 : Cinématique du drone"""
    print_header("Test 14 : step_uav")

    uav = UavState(position=np.array([0.0, 0.0, 40.0]), target=np.array([2.0, 0.0, 40.0]))
    arrived = step_uav(uav, 0.1, 20.0)
    assert np.array_equal(arrived.position, [2.0, 0.0, 40.0])
    assert arrived.speed == pytest.approx(20.0)

    hover = step_uav(arrived, 0.1, 20.0)
    assert hover.speed == 0.0 and hover.hovering

    far = UavState(position=np.array([0.0, 0.0, 40.0]), target=np.array([4.0, 0.0, 40.0]))
    slots = 0
    while not far.at_target:
        previous = far.position
        far = step_uav(far, 0.1, 20.0)
        assert float(np.linalg.norm(far.position - previous)) <= 20.0 * 0.1 + 1e-12
        assert far.position[2] == 40.0
        slots += 1
    assert slots == 2 == mobility_slots((0, 0, 40), (4, 0, 40), 20.0, 0.1)

    print_success("Arrivée exacte, vol stationnaire, 4 m en 2 créneaux")


def test_mobility_slots():
    """Test 15 : Nombre de créneaux de mobilité"""
    print_header("Test 15 : mobility_slots")

    assert mobility_slots((0, 0, 40), (4, 0, 40), 20.0, 0.1) == 2
    assert mobility_slots((0, 0, 40), (4.1, 0, 40), 20.0, 0.1) == 3
    assert mobility_slots((1, 2, 40), (1, 2, 40), 20.0, 0.1) == 0

    rng = np.random.default_rng(2)
    for _ in range(1000):
        a, b = rng.uniform(-50, 50, 3), rng.uniform(-50, 50, 3)
        k = mobility_slots(a, b, 20.0, 0.1)
        distance = float(np.linalg.norm(a - b))
        assert k * 2.0 + 1e-9 >= distance > (k - 1) * 2.0 - 1e-9

    print_success("K·v·ΔT >= d > (K − 1)·v·ΔT")


def test_normalize_angle():
    """Test 16 : Normalisation des angles"""
    print_header("Test 16 : normalize_angle")

    for angle in (-7.0, -1e-18, 0.0, 2 * math.pi, 13.0):
        wrapped = normalize_angle(angle)
        assert 0.0 <= wrapped < 2 * math.pi

    print_success("Angles dans [0, 2π)")


def test_body_blocked_ignores_elevation():
    """Test 17 : Masquage identique à toute altitude"""
    print_header("Test 17 : Élévation sans effet")

    rng = np.random.default_rng(17)
    for _ in range(500):
        ue = ue_at(rng.uniform(-40.0, 40.0, size=2), omega=float(rng.uniform(0.0, 2 * math.pi)))
        offset = rng.uniform(-15.0, 15.0, size=2)
        low = (ue.position[0] + offset[0], ue.position[1] + offset[1], 1.5)
        high = (low[0], low[1], float(rng.uniform(20.0, 120.0)))
        assert body_blocked(ue, low) == body_blocked(ue, high)

    print_success("Seul l'azimut compte")


def test_swing_around_fixed_bearing():
    """Test 18 : Balancement autour de ω₀ indépendant de la marche"""
    print_header("Test 18 : ω(t) = ω₀ + A·sin(2πt/T)")

    geometry = crossing_geometry()
    params = WalkerParams(device_bearing=math.radians(30.0))
    ue = initial_ue_state(geometry, params, np.random.default_rng(3))
    assert ue.bearing == pytest.approx(math.radians(30.0))

    rng = np.random.default_rng(4)
    for step in range(1, 400):
        ue = step_ue(ue, 0.1, rng, geometry, params)
        expected = math.radians(30.0) + params.swing_amplitude * math.sin(2 * math.pi * step * 0.1 / 4.0)
        assert abs((ue.omega - expected + math.pi) % (2 * math.pi) - math.pi) < 1e-9
        assert ue.bearing == pytest.approx(math.radians(30.0))

    bearings = {
        round(initial_ue_state(geometry, WalkerParams(), np.random.default_rng(seed)).bearing, 9)
        for seed in range(20)
    }
    assert len(bearings) == 20
    assert all(0.0 <= b < 2 * math.pi for b in bearings)

    print_success("ω₀ fixe sur l'épisode, tiré par graine sinon")
