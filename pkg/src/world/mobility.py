"""
Mobilité - Piéton (UE) et Drone (UAV-IR)
========================================

États immuables de l'UE et de l'UAV, masquage corporel, marche aléatoire
à destination (MDP) avec balancement du téléphone, cinématique du drone
à vitesse constante sans dépassement de la cible.

Usage:
    from src.world.mobility import UavState, step_uav, mobility_slots

    uav = UavState(position=np.array([0.0, 0.0, 40.0]), target=np.array([2.0, 0.0, 40.0]))
    uav = step_uav(uav, dt_slot=0.1, v_max=20.0)
"""

import math
from dataclasses import dataclass, replace
from typing import Optional, Sequence

import numpy as np

from src.utils.error_handler import ScenarioGeometryError
from src.world.geometry import WorldGeometry


TWO_PI = 2.0 * math.pi
MAX_WAYPOINT_RETRIES = 1000

# Tolérance d'arrivée (m), partagée par step_uav et mobility_slots
_ARRIVAL_TOLERANCE = 1e-9


@dataclass(frozen=True, eq=False)
class UeState:
    """
    État du terminal porté par un piéton

    Attributes:
        position: Position 3D du terminal (m)
        omega: Azimut du terminal autour du corps, dans [0, 2π) (rad)
        velocity: Vitesse de marche 2D (m/s)
        waypoint: Destination courante 2D (m)
        bearing: Orientation moyenne ω₀ du terminal (rad), centre du balancement
        clock: Temps écoulé depuis le début de l'épisode (s)
    """
    position: np.ndarray
    omega: float
    velocity: np.ndarray
    waypoint: np.ndarray
    bearing: float = 0.0
    clock: float = 0.0

    @property
    def xy(self) -> np.ndarray:
        return self.position[:2]


@dataclass(frozen=True, eq=False)
class UavState:
    """
    État du drone porteur du réflecteur

    Attributes:
        position: Position 3D (m), altitude constante
        target: Objectif de mobilité courant (m)
        speed: Vitesse v_r du dernier créneau (m/s), 0 en vol stationnaire
    """
    position: np.ndarray
    target: np.ndarray
    speed: float = 0.0

    @property
    def hovering(self) -> bool:
        return self.speed == 0.0

    @property
    def at_target(self) -> bool:
        return float(np.linalg.norm(self.target - self.position)) <= _ARRIVAL_TOLERANCE


@dataclass(frozen=True)
class WalkerParams:
    """
    Paramètres du modèle de marche et du balancement du terminal

    device_bearing fixe ω₀ ; None le tire uniformément à chaque épisode.
    """
    speed: float = 1.0
    swing_amplitude: float = math.radians(45.0)
    swing_period: float = 4.0
    device_bearing: Optional[float] = None


@dataclass(frozen=True, eq=False)
class WorldState:
    """Vérité géométrique d'un créneau : scène statique, UE et UAV"""
    geometry: WorldGeometry
    ue: UeState
    uav: UavState

    @property
    def bs_position(self) -> np.ndarray:
        return np.asarray(self.geometry.bs_position, dtype=float)


def normalize_angle(angle: float) -> float:
    """Ramène un angle dans [0, 2π)"""
    wrapped = math.fmod(angle, TWO_PI)
    if wrapped < 0.0:
        wrapped += TWO_PI
    # fmod peut rendre 2π après addition d'un -0.0 arrondi
    return 0.0 if wrapped >= TWO_PI else wrapped


def angular_distance(a: float, b: float) -> float:
    """Distance angulaire dans [0, π]"""
    diff = normalize_angle(a - b)
    return min(diff, TWO_PI - diff)


def body_blocked(
    ue: UeState,
    target: Sequence[float],
    half_width: float = math.radians(60.0)
) -> bool:
    """
    Vrai si l'azimut UE → cible tombe dans l'ombre du corps

    Le secteur d'ombre est centré sur ω + π. Seul l'azimut compte :
    l'élévation de la cible ne change rien. Une cible à la verticale
    exacte du terminal n'a pas d'azimut et n'est pas masquée.

    Args:
        ue: État du terminal
        target: Point 3D visé (m)
        half_width: Demi-ouverture du secteur d'ombre (rad)

    Returns:
        True si la liaison est masquée par le corps
    """
    d = np.asarray(target, dtype=float) - ue.position
    if math.hypot(d[0], d[1]) <= _ARRIVAL_TOLERANCE:
        return False
    azimuth = math.atan2(d[1], d[0])
    return angular_distance(azimuth, ue.omega + math.pi) < half_width


def sample_waypoint(
    geometry: WorldGeometry,
    start_xy: Sequence[float],
    rng: np.random.Generator
) -> np.ndarray:
    """
    Tire une destination uniforme dans la zone marchable

    La destination doit être atteignable en ligne droite depuis start_xy
    sans traverser de bâtiment.

    Raises:
        ScenarioGeometryError: Aucune destination valide après 1000 essais
    """
    x_min, x_max, y_min, y_max = geometry.bounds
    for _ in range(MAX_WAYPOINT_RETRIES):
        candidate = np.array([rng.uniform(x_min, x_max), rng.uniform(y_min, y_max)])
        if (geometry.is_walkable(candidate, margin=geometry.walk_margin)
                and geometry.walk_path_clear(start_xy, candidate)):
            return candidate
    raise ScenarioGeometryError(
        f"Aucune destination marchable après {MAX_WAYPOINT_RETRIES} essais "
        f"depuis {list(np.round(start_xy, 3))}"
    )


def swing_angle(bearing: float, clock: float, params: WalkerParams) -> float:
    """ω(t) = ω₀ + A·sin(2πt/T), normalisé"""
    phase = TWO_PI * clock / params.swing_period
    return normalize_angle(bearing + params.swing_amplitude * math.sin(phase))


def initial_ue_state(
    geometry: WorldGeometry,
    params: WalkerParams,
    rng: np.random.Generator
) -> UeState:
    """
    Position de départ, première destination et orientation ω₀

    ω₀ ne dépend pas du cap de marche : il est tiré uniformément dans
    [0, 2π) sur le flux de l'UE, sauf si params.device_bearing le fixe.
    """
    origin_draw = sample_waypoint(geometry, (0.0, 0.0), rng)
    waypoint = sample_waypoint(geometry, origin_draw, rng)
    delta = waypoint - origin_draw
    distance = float(np.linalg.norm(delta))
    velocity = params.speed * delta / distance if distance > 0 else np.zeros(2)
    draw = rng.uniform(0.0, TWO_PI)
    bearing = normalize_angle(draw if params.device_bearing is None else params.device_bearing)
    return UeState(
        position=np.array([origin_draw[0], origin_draw[1], geometry.ue_height]),
        omega=swing_angle(bearing, 0.0, params),
        velocity=velocity,
        waypoint=waypoint,
        bearing=bearing,
        clock=0.0,
    )


def step_ue(
    ue: UeState,
    dt_slot: float,
    rng: np.random.Generator,
    geometry: WorldGeometry,
    params: WalkerParams
) -> UeState:
    """
    Avance le piéton d'un créneau

    Marche en ligne droite à vitesse constante vers la destination. Si la
    destination est à moins d'un pas, le piéton s'y arrête et une nouvelle
    destination est tirée. Le terminal se balance autour de ω₀, que le
    piéton marche ou non.

    Args:
        ue: État courant
        dt_slot: Durée du créneau ΔT (s)
        rng: Flux aléatoire de l'UE
        geometry: Scène (zone marchable)
        params: Vitesse et balancement

    Returns:
        Nouvel état de l'UE
    """
    if dt_slot <= 0:
        raise ValueError(f"dt_slot doit être > 0: {dt_slot}")

    xy = ue.xy
    delta = ue.waypoint - xy
    distance = float(np.linalg.norm(delta))
    step_length = params.speed * dt_slot

    if params.speed == 0.0:
        new_xy, velocity, waypoint = xy.copy(), np.zeros(2), ue.waypoint
    elif distance <= step_length:
        new_xy = ue.waypoint.copy()
        velocity = delta / dt_slot
        waypoint = sample_waypoint(geometry, new_xy, rng)
    else:
        velocity = params.speed * delta / distance
        new_xy = xy + velocity * dt_slot
        waypoint = ue.waypoint

    clock = ue.clock + dt_slot
    return UeState(
        position=np.array([new_xy[0], new_xy[1], ue.position[2]]),
        omega=swing_angle(ue.bearing, clock, params),
        velocity=velocity,
        waypoint=waypoint,
        bearing=ue.bearing,
        clock=clock,
    )


def step_uav(uav: UavState, dt_slot: float, v_max: float) -> UavState:
    """
    Avance le drone d'un créneau vers sa cible

    Vitesse v_max en transit, arrivée exacte sans dépassement, et
    v_r = ‖x(t−1) − x(t)‖ / ΔT.

    Args:
        uav: État courant
        dt_slot: Durée du créneau ΔT (s)
        v_max: Vitesse maximale v_r^max (m/s)

    Returns:
        Nouvel état du drone
    """
    if dt_slot <= 0:
        raise ValueError(f"dt_slot doit être > 0: {dt_slot}")

    delta = uav.target - uav.position
    distance = float(np.linalg.norm(delta))
    if distance <= _ARRIVAL_TOLERANCE:
        return replace(uav, position=uav.target.copy(), speed=0.0)

    step_length = v_max * dt_slot
    if distance <= step_length + _ARRIVAL_TOLERANCE:
        return replace(uav, position=uav.target.copy(), speed=distance / dt_slot)

    position = uav.position + delta * (step_length / distance)
    return replace(uav, position=position, speed=v_max)


def mobility_slots(
    start: Sequence[float],
    end: Sequence[float],
    v_max: float,
    dt_slot: float
) -> int:
    """
    Nombre de créneaux K nécessaires pour relier start à end

    K = ceil(‖end − start‖ / (v_max·ΔT)), 0 si les points coïncident.
    """
    distance = float(np.linalg.norm(np.asarray(end, dtype=float) - np.asarray(start, dtype=float)))
    if distance <= _ARRIVAL_TOLERANCE:
        return 0
    step_length = v_max * dt_slot
    return max(1, math.ceil((distance - _ARRIVAL_TOLERANCE) / step_length))
