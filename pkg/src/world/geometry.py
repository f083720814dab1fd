"""
Géométrie Urbaine - Obstacles et Tests de Visibilité
====================================================

Bâtiments (boîtes alignées sur les axes) et arbres (tronc vertical +
couronne sphérique), tests de visibilité directe (LOS) par lancer de
segment, et construction de la scène carrefour par défaut.

Usage:
    from src.world.geometry import Obstacle, segment_clear

    building = Obstacle.building((0, 0, 0), (40, 40, 16))
    segment_clear((-10, 20, 10), (50, 20, 10), [building])   # False
"""

from dataclasses import dataclass, field
from typing import List, Optional, Sequence, Tuple

import numpy as np

from src.utils.error_handler import ScenarioGeometryError
from src.utils.logger import get_logger


logger = get_logger(__name__)

# Longueur minimale d'intersection pour compter un blocage (m relatifs au segment)
_HIT_TOLERANCE = 1e-9

BUILDING = 'building'
TREE = 'tree'


@dataclass(frozen=True)
class Obstacle:
    """
    Obstacle statique de la scène

    Un bâtiment est décrit par ses coins (box_min, box_max) ; un arbre par
    le centre de sa couronne, le rayon de couronne et le rayon du tronc.
    Seule la couronne bloque les liaisons radio.
    """
    kind: str
    box_min: Optional[Tuple[float, float, float]] = None
    box_max: Optional[Tuple[float, float, float]] = None
    crown_center: Optional[Tuple[float, float, float]] = None
    crown_radius: float = 0.0
    trunk_radius: float = 0.0

    def __post_init__(self):
        if self.kind == BUILDING:
            if self.box_min is None or self.box_max is None:
                raise ValueError("Un bâtiment exige box_min et box_max")
            if not all(lo < hi for lo, hi in zip(self.box_min, self.box_max)):
                raise ValueError(
                    f"box_min doit être < box_max composante par composante: "
                    f"{self.box_min} / {self.box_max}"
                )
        elif self.kind == TREE:
            if self.crown_center is None:
                raise ValueError("Un arbre exige crown_center")
            if self.crown_radius <= 0:
                raise ValueError(f"Rayon de couronne invalide: {self.crown_radius}")
            if self.trunk_radius < 0:
                raise ValueError(f"Rayon de tronc invalide: {self.trunk_radius}")
        else:
            raise ValueError(f"Type d'obstacle inconnu: {self.kind}")

    @classmethod
    def building(cls, box_min: Sequence[float], box_max: Sequence[float]) -> 'Obstacle':
        """Crée un bâtiment à partir de ses deux coins (m)"""
        return cls(
            kind=BUILDING,
            box_min=tuple(float(v) for v in box_min),
            box_max=tuple(float(v) for v in box_max),
        )

    @classmethod
    def tree(
        cls,
        crown_center: Sequence[float],
        crown_radius: float,
        trunk_radius: float = 0.3
    ) -> 'Obstacle':
        """Crée un arbre à partir du centre et du rayon de sa couronne (m)"""
        return cls(
            kind=TREE,
            crown_center=tuple(float(v) for v in crown_center),
            crown_radius=float(crown_radius),
            trunk_radius=float(trunk_radius),
        )

    @property
    def is_building(self) -> bool:
        return self.kind == BUILDING

    def contains(self, point: Sequence[float]) -> bool:
        """Vrai si le point est strictement à l'intérieur de l'obstacle"""
        p = np.asarray(point, dtype=float)
        if self.is_building:
            return bool(np.all(p > np.asarray(self.box_min)) and np.all(p < np.asarray(self.box_max)))
        return float(np.linalg.norm(p - np.asarray(self.crown_center))) < self.crown_radius

    def footprint_contains(self, xy: Sequence[float]) -> bool:
        """Vrai si le point 2D est strictement dans l'emprise au sol d'un bâtiment"""
        if not self.is_building:
            return False
        return (self.box_min[0] < xy[0] < self.box_max[0]
                and self.box_min[1] < xy[1] < self.box_max[1])


def _segment_hits_box(p: np.ndarray, d: np.ndarray, box_min, box_max) -> bool:
    """Méthode des slabs sur le segment ouvert p + t·d, t ∈ (0, 1)"""
    t_enter, t_exit = 0.0, 1.0
    for axis in range(3):
        lo, hi = box_min[axis], box_max[axis]
        if abs(d[axis]) < 1e-15:
            if p[axis] < lo or p[axis] > hi:
                return False
            continue
        t1 = (lo - p[axis]) / d[axis]
        t2 = (hi - p[axis]) / d[axis]
        if t1 > t2:
            t1, t2 = t2, t1
        t_enter = max(t_enter, t1)
        t_exit = min(t_exit, t2)
        if t_exit - t_enter <= _HIT_TOLERANCE:
            return False
    return t_exit - t_enter > _HIT_TOLERANCE


def _segment_hits_sphere(p: np.ndarray, d: np.ndarray, center, radius: float) -> bool:
    """Distance minimale centre-segment strictement inférieure au rayon"""
    c = np.asarray(center, dtype=float)
    length_sq = float(d @ d)
    t = float(np.clip((c - p) @ d / length_sq, 0.0, 1.0))
    closest = p + t * d
    return float(np.linalg.norm(c - closest)) < radius - _HIT_TOLERANCE


def segment_blockage(
    p: Sequence[float],
    q: Sequence[float],
    obstacles: Sequence[Obstacle]
) -> Tuple[bool, bool]:
    """
    Teste le segment pq contre bâtiments et couronnes d'arbres

    Args:
        p, q: Extrémités 3D (m)
        obstacles: Obstacles de la scène

    Returns:
        (bloqué par un bâtiment, bloqué par un arbre)
    """
    p = np.asarray(p, dtype=float)
    q = np.asarray(q, dtype=float)
    d = q - p
    if float(d @ d) == 0.0:
        logger.debug("Segment dégénéré (p = q), considéré dégagé")
        return False, False

    by_building = False
    by_tree = False
    for obstacle in obstacles:
        if obstacle.is_building:
            if not by_building and _segment_hits_box(p, d, obstacle.box_min, obstacle.box_max):
                by_building = True
        elif not by_tree and _segment_hits_sphere(p, d, obstacle.crown_center, obstacle.crown_radius):
            by_tree = True
        if by_building and by_tree:
            break
    return by_building, by_tree


def segment_clear(
    p: Sequence[float],
    q: Sequence[float],
    obstacles: Sequence[Obstacle]
) -> bool:
    """
    Vrai si le segment ouvert pq ne traverse aucun bâtiment ni aucune couronne

    Symétrique en (p, q) et déterministe. Un segment dégénéré (p = q) est
    considéré dégagé.
    """
    by_building, by_tree = segment_blockage(p, q, obstacles)
    return not (by_building or by_tree)


@dataclass(frozen=True)
class StreetArea:
    """Rectangle de rue marchable (m), coins 2D"""
    xy_min: Tuple[float, float]
    xy_max: Tuple[float, float]

    def contains(self, xy: Sequence[float], margin: float = 0.0) -> bool:
        return (self.xy_min[0] + margin <= xy[0] <= self.xy_max[0] - margin
                and self.xy_min[1] + margin <= xy[1] <= self.xy_max[1] - margin)


@dataclass(frozen=True)
class WorldGeometry:
    """
    Vérité géométrique statique d'un scénario

    Attributes:
        obstacles: Bâtiments et arbres
        streets: Rectangles marchables
        bounds: (x_min, x_max, y_min, y_max) de la scène
        bs_position: Position de la station de base (m)
        bs_boresight: Axe de visée unitaire du panneau de la BS
        ue_height: Hauteur du terminal au-dessus du sol (m)
        walk_margin: Marge au bord des rues pour les destinations (m)
    """
    obstacles: Tuple[Obstacle, ...]
    streets: Tuple[StreetArea, ...]
    bounds: Tuple[float, float, float, float]
    bs_position: Tuple[float, float, float]
    bs_boresight: Tuple[float, float, float]
    ue_height: float = 1.5
    walk_margin: float = 0.5
    buildings: Tuple[Obstacle, ...] = field(init=False)

    def __post_init__(self):
        object.__setattr__(self, 'buildings', tuple(o for o in self.obstacles if o.is_building))
        x_min, x_max, y_min, y_max = self.bounds
        for obstacle in self.obstacles:
            if obstacle.is_building:
                lo, hi = obstacle.box_min, obstacle.box_max
            else:
                c, r = obstacle.crown_center, obstacle.crown_radius
                lo, hi = (c[0] - r, c[1] - r), (c[0] + r, c[1] + r)
            if lo[0] < x_min or hi[0] > x_max or lo[1] < y_min or hi[1] > y_max:
                raise ScenarioGeometryError(f"Obstacle hors de la zone du scénario: {obstacle}")

    def in_bounds(self, xy: Sequence[float]) -> bool:
        x_min, x_max, y_min, y_max = self.bounds
        return x_min <= xy[0] <= x_max and y_min <= xy[1] <= y_max

    def is_walkable(self, xy: Sequence[float], margin: float = 0.0) -> bool:
        """Point 2D dans une rue et hors de toute emprise de bâtiment"""
        if not any(street.contains(xy, margin) for street in self.streets):
            return False
        return not any(b.footprint_contains(xy) for b in self.buildings)

    def walk_path_clear(self, start_xy: Sequence[float], end_xy: Sequence[float]) -> bool:
        """Le trajet piéton rectiligne ne traverse aucune emprise de bâtiment"""
        z = self.ue_height
        p = (start_xy[0], start_xy[1], z)
        q = (end_xy[0], end_xy[1], z)
        by_building, _ = segment_blockage(p, q, self.buildings)
        return not by_building

    def inside_obstacle(self, point: Sequence[float]) -> bool:
        return any(o.contains(point) for o in self.obstacles)

    def clamp_xy(self, xy: Sequence[float]) -> np.ndarray:
        x_min, x_max, y_min, y_max = self.bounds
        return np.array([np.clip(xy[0], x_min, x_max), np.clip(xy[1], y_min, y_max)])

    def check_position(self, point: Sequence[float], label: str = 'position') -> bool:
        """Avertit si une position candidate est dans un obstacle"""
        if self.inside_obstacle(point):
            logger.warning(
                f"{label} à l'intérieur d'un obstacle",
                extra={'context': {'point': [float(v) for v in point]}}
            )
            return False
        return True


def crossing_buildings(
    street_half_width: float = 7.5,
    building_size: float = 40.0,
    building_height: float = 16.0
) -> List[Obstacle]:
    """Quatre bâtiments aux coins d'un carrefour centré à l'origine"""
    near = street_half_width
    far = street_half_width + building_size
    buildings = []
    for sx in (-1.0, 1.0):
        for sy in (-1.0, 1.0):
            xs = sorted((sx * near, sx * far))
            ys = sorted((sy * near, sy * far))
            buildings.append(Obstacle.building(
                (xs[0], ys[0], 0.0), (xs[1], ys[1], building_height)
            ))
    return buildings


def crossing_streets(street_half_width: float, extent: float) -> List[StreetArea]:
    """Deux rues orthogonales (axe x et axe y) qui se croisent à l'origine"""
    return [
        StreetArea((-extent, -street_half_width), (extent, street_half_width)),
        StreetArea((-street_half_width, -extent), (street_half_width, extent)),
    ]


def place_roadside_trees(
    rng: np.random.Generator,
    count: int,
    street_half_width: float,
    extent: float,
    crown_radius: float = 2.0,
    crown_height: float = 6.0,
    trunk_radius: float = 0.3,
    edge_inset: float = 1.0
) -> List[Obstacle]:
    """
    Plante `count` arbres au hasard le long des bords de rue

    Chaque arbre est tiré sur l'un des 8 bords (4 branches × 2 côtés), à une
    distance de l'axe de street_half_width − edge_inset, hors du carrefour.
    """
    trees = []
    offset = street_half_width - edge_inset
    along_min = street_half_width + crown_radius
    along_max = extent - crown_radius
    for _ in range(count):
        edge = int(rng.integers(0, 8))
        along = float(rng.uniform(along_min, along_max))
        arm_sign = 1.0 if edge % 2 == 0 else -1.0
        side_sign = 1.0 if (edge // 2) % 2 == 0 else -1.0
        if edge < 4:
            # branches de la rue nord-sud
            center = (side_sign * offset, arm_sign * along, crown_height)
        else:
            center = (arm_sign * along, side_sign * offset, crown_height)
        trees.append(Obstacle.tree(center, crown_radius, trunk_radius))
    return trees


def unit(vector: Sequence[float]) -> np.ndarray:
    """Normalise un vecteur 3D"""
    v = np.asarray(vector, dtype=float)
    norm = float(np.linalg.norm(v))
    if norm == 0.0:
        raise ValueError("Impossible de normaliser un vecteur nul")
    return v / norm
