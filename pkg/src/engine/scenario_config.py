"""
Scenario Config - Configuration d'un Scénario de Simulation
===========================================================

Paramètres physiques et algorithmiques d'un scénario, regroupés en
sections typées (geometry, radio, timing, energy, mobility, agent, run).
Les fichiers YAML sont fusionnés sur les valeurs par défaut ; toute clé
inconnue est une erreur.

Usage:
    from src.engine.scenario_config import ScenarioConfig

    cfg = ScenarioConfig.load('config/scenarios/reference.yaml')
    cfg.ensure_valid()
    print(cfg.config_hash(), cfg.slot_s)
"""

import hashlib
import json
import math
from dataclasses import asdict, dataclass, field, fields, replace
from pathlib import Path
from typing import Any, Dict, List, Optional, Union, get_args, get_origin, get_type_hints

import numpy as np
import yaml

from src.channel.antenna import ArrayGeometry
from src.channel.channel_model import NoiseModel, RadioParams
from src.channel.path_loss import dbm_to_watts, wavelength_m, watts_to_dbm
from src.energy.energy_budget import EnergyBudget
from src.utils.error_handler import ConfigError
from src.utils.logger import get_logger
from src.world.geometry import (
    Obstacle,
    StreetArea,
    WorldGeometry,
    crossing_buildings,
    crossing_streets,
    place_roadside_trees,
    segment_blockage,
    unit,
)
from src.world.mobility import WalkerParams


logger = get_logger(__name__)

POLICIES = ('rl', 'greedy', 'static')
Q_TARGET_MODES = ('algorithm', 'next_stage')
VALUE_FUNCTIONS = ('network', 'tabular')
TRAINING_MODES = ('warmup', 'online')


def coherence_time(wavelength: float, ue_speed: float, max_coherence: float = 0.01) -> float:
    """
    Temps de cohérence Δt = λ_f / v_e

    Args:
        wavelength: λ_f (m)
        ue_speed: v_e (m/s) ; 0 pour un UE immobile
        max_coherence: Δt retenu pour un UE immobile (s)

    Returns:
        Δt (s)
    """
    if ue_speed < 0:
        raise ValueError(f"ue_speed doit être >= 0: {ue_speed}")
    if ue_speed == 0:
        return max_coherence
    return wavelength / ue_speed


@dataclass(frozen=True)
class GeometryConfig:
    """Scène urbaine : carrefour, bâtiments, arbres, BS, IR statique"""
    bounds: List[float] = field(default_factory=lambda: [-47.5, 47.5, -47.5, 47.5])
    street_half_width_m: float = 7.5
    building_size_m: float = 40.0
    building_height_m: float = 16.0
    buildings: Optional[List[Dict[str, List[float]]]] = None
    streets: Optional[List[Dict[str, List[float]]]] = None
    trees: Optional[List[Dict[str, Any]]] = None
    tree_count: int = 12
    tree_crown_radius_m: float = 2.0
    tree_crown_height_m: float = 6.0
    tree_trunk_radius_m: float = 0.3
    tree_edge_inset_m: float = 1.0
    bs_position: List[float] = field(default_factory=lambda: [60.0, -60.0, 25.0])
    bs_aim_point: List[float] = field(default_factory=lambda: [0.0, 0.0, 25.0])
    static_ir_position: List[float] = field(default_factory=lambda: [8.0, -8.0, 16.0])
    ue_height_m: float = 1.5
    walk_margin_m: float = 0.5


@dataclass(frozen=True)
class RadioConfig:
    """Constantes radio (bilan de liaison, réseaux, bruit, masquages)"""
    carrier_ghz: float = 30.0
    bandwidth_hz: float = 1e8
    tx_power_dbm: float = 40.0
    snr_threshold_db: float = 5.0
    amplitude: float = 0.8
    kappa: float = 0.6
    bs_antennas: int = 64
    ir_elements: int = 16
    bs_rows: int = 8
    bs_cols: int = 8
    ir_rows: int = 4
    ir_cols: int = 4
    element_spacing_wl: float = 0.5
    noise_psd_dbm_hz: float = -174.0
    noise_figure_db: float = 9.0
    scatter_paths: int = 3
    scatter_offset_db: float = 15.0
    body_loss_db: float = 30.0
    body_shadow_half_width_deg: float = 60.0
    bs_antenna_gain_dbi: float = 25.0
    ir_element_gain_dbi: float = 15.0
    ue_antenna_gain_dbi: float = 0.0
    tree_attenuation_db: Optional[float] = None


@dataclass(frozen=True)
class TimingConfig:
    """Créneaux : ΔT = k·Δt"""
    coherence_slots_k: int = 10
    coherence_time_s: Optional[float] = 0.01
    max_coherence_s: float = 0.01


@dataclass(frozen=True)
class EnergyConfig:
    """Batterie et puissances du drone"""
    initial_energy_j: float = 432000.0
    hover_power_w: float = 120.0
    move_power_w: float = 150.0
    reflect_power_w: float = 0.005
    residual_j: Optional[float] = None
    cap_harvest_at_reflector_power: bool = False


@dataclass(frozen=True)
class MobilityConfig:
    """Marche de l'UE et cinématique du drone"""
    ue_speed_mps: float = 1.0
    swing_amplitude_deg: float = 45.0
    swing_period_s: float = 4.0
    device_bearing_deg: Optional[float] = None
    uav_altitude_m: float = 40.0
    uav_max_speed_mps: float = 20.0
    uav_initial_position: Optional[List[float]] = None


@dataclass(frozen=True)
class AgentConfig:
    """Hyperparamètres de l'agent de déploiement"""
    gamma: float = 0.1
    value_function: str = 'network'
    learning_rate: float = 1e-3
    hidden_sizes: List[int] = field(default_factory=lambda: [64, 64])
    tabular_beta: float = 0.5
    epsilon_start: float = 0.3
    epsilon_floor: float = 0.01
    epsilon_decay: float = 0.99
    grid_size: int = 9
    grid_spacing_m: float = 2.0
    q_target_mode: str = 'algorithm'
    history_window: int = 20
    prior_variance_m2: float = 4.0


@dataclass(frozen=True)
class RunConfig:
    """Protocole d'exécution d'un épisode"""
    seed: int = 0
    max_slots: int = 100000
    training_mode: str = 'warmup'
    warmup_episodes: int = 30
    warmup_max_slots: Optional[int] = None


_SECTIONS = {
    'geometry': GeometryConfig,
    'radio': RadioConfig,
    'timing': TimingConfig,
    'energy': EnergyConfig,
    'mobility': MobilityConfig,
    'agent': AgentConfig,
    'run': RunConfig,
}


_NUMBER_EXPECTED = "nombre attendu"


def _coerce_scalar(kind: type, value: Any) -> Any:
    """
    Convertit une valeur YAML vers float / int / bool / str

    PyYAML lit « 1e8 » comme une chaîne : les chaînes numériques sont
    acceptées pour les champs numériques.

    Raises:
        ValueError: Valeur incompatible (message = erreur du champ)
    """
    if kind is bool:
        if isinstance(value, bool):
            return value
        raise ValueError("booléen attendu")
    if kind is str:
        if isinstance(value, str):
            return value
        raise ValueError("chaîne attendue")
    if isinstance(value, bool):
        raise ValueError(_NUMBER_EXPECTED)
    if isinstance(value, str):
        try:
            value = float(value.strip())
        except ValueError:
            raise ValueError(_NUMBER_EXPECTED) from None
    if not isinstance(value, (int, float)):
        raise ValueError(_NUMBER_EXPECTED)
    if kind is int:
        if isinstance(value, float) and not value.is_integer():
            raise ValueError("entier attendu")
        return int(value)
    return float(value)


def _coerce(annotation: Any, value: Any) -> Any:
    """Applique l'annotation d'un champ de section à une valeur lue"""
    origin = get_origin(annotation)
    if origin is Union:
        if value is None:
            return None
        inner = [arg for arg in get_args(annotation) if arg is not type(None)]
        return _coerce(inner[0], value)
    if origin in (list, List):
        if not isinstance(value, (list, tuple)):
            raise ValueError("liste attendue")
        (item,) = get_args(annotation) or (Any,)
        return [_coerce(item, v) for v in value]
    if annotation in (float, int, bool, str):
        return _coerce_scalar(annotation, value)
    return value


def _build_section(name: str, values: Dict[str, Any], errors: List[str]):
    """Instancie une section typée ; les erreurs de type vont dans `errors`"""
    section = _SECTIONS[name]
    hints = get_type_hints(section)
    coerced = {}
    for key, value in values.items():
        try:
            coerced[key] = _coerce(hints[key], value)
        except ValueError as error:
            errors.append(f"{name}.{key}: {error}")
    return section(**coerced)


@dataclass(frozen=True)
class ScenarioConfig:
    """
    Configuration complète d'un scénario

    Les valeurs par défaut forment le préréglage de référence (config/scenarios/reference.yaml) :
    f_c = 30 GHz, P_tx = 40 dBm, b = 0.1 GHz, N = 16, M = 64,
    v_r^max = 20 m/s, v_e = 1 m/s, a = 0.8, κ = 0.6, ΔT = 0.1 s,
    τ = 5 dB, γ = 0.1.
    """
    geometry: GeometryConfig = field(default_factory=GeometryConfig)
    radio: RadioConfig = field(default_factory=RadioConfig)
    timing: TimingConfig = field(default_factory=TimingConfig)
    energy: EnergyConfig = field(default_factory=EnergyConfig)
    mobility: MobilityConfig = field(default_factory=MobilityConfig)
    agent: AgentConfig = field(default_factory=AgentConfig)
    run: RunConfig = field(default_factory=RunConfig)

    # ------------------------------------------------------------------
    # Chargement / export
    # ------------------------------------------------------------------

    @classmethod
    def from_dict(cls, data: Optional[Dict[str, Any]]) -> 'ScenarioConfig':
        """
        Fusionne un dict (issu du YAML) sur les valeurs par défaut

        Raises:
            ConfigError: Clé inconnue, valeur de mauvais type (chemin complet)
                ou section mal formée
        """
        data = data or {}
        if not isinstance(data, dict):
            raise ConfigError([f"<racine>: mapping attendu, reçu {type(data).__name__}"])

        errors = []
        sections = {}
        for name, values in data.items():
            if name not in _SECTIONS:
                errors.append(f"{name}: clé inconnue")
                continue
            if values is None:
                continue
            if not isinstance(values, dict):
                errors.append(f"{name}: mapping attendu")
                continue
            known = {f.name for f in fields(_SECTIONS[name])}
            unknown = sorted(set(values) - known)
            errors.extend(f"{name}.{key}: clé inconnue" for key in unknown)
            if not unknown:
                sections[name] = _build_section(name, values, errors)
        if errors:
            raise ConfigError(errors)
        return cls(**sections)

    @classmethod
    def load(cls, path: Union[str, Path]) -> 'ScenarioConfig':
        """Charge un fichier YAML de scénario"""
        path = Path(path)
        with path.open('r', encoding='utf-8') as handle:
            data = yaml.safe_load(handle)
        cfg = cls.from_dict(data)
        logger.info(
            "Scénario chargé",
            extra={'context': {'path': str(path), 'config_hash': cfg.config_hash()}}
        )
        return cfg

    def to_dict(self) -> Dict[str, Any]:
        return asdict(self)

    def dump(self, path: Union[str, Path]) -> Path:
        """Écrit la configuration complète en YAML"""
        path = Path(path)
        path.parent.mkdir(parents=True, exist_ok=True)
        with path.open('w', encoding='utf-8') as handle:
            yaml.safe_dump(self.to_dict(), handle, sort_keys=True, allow_unicode=True)
        return path

    def config_hash(self) -> str:
        """16 premiers caractères hexadécimaux du SHA-256 du JSON canonique"""
        canonical = json.dumps(self.to_dict(), sort_keys=True, separators=(',', ':'))
        return hashlib.sha256(canonical.encode('utf-8')).hexdigest()[:16]

    # ------------------------------------------------------------------
    # Variantes (balayages)
    # ------------------------------------------------------------------

    def with_altitude(self, altitude_m: float) -> 'ScenarioConfig':
        return replace(self, mobility=replace(self.mobility, uav_altitude_m=float(altitude_m)))

    def with_tx_power_w(self, power_w: float) -> 'ScenarioConfig':
        return replace(self, radio=replace(self.radio, tx_power_dbm=watts_to_dbm(float(power_w))))

    def with_seed(self, seed: int) -> 'ScenarioConfig':
        return replace(self, run=replace(self.run, seed=int(seed)))

    # ------------------------------------------------------------------
    # Grandeurs dérivées
    # ------------------------------------------------------------------

    @property
    def wavelength_m(self) -> float:
        return wavelength_m(self.radio.carrier_ghz)

    @property
    def coherence_time_s(self) -> float:
        if self.timing.coherence_time_s is not None:
            return self.timing.coherence_time_s
        return coherence_time(self.wavelength_m, self.mobility.ue_speed_mps, self.timing.max_coherence_s)

    @property
    def slot_s(self) -> float:
        """ΔT = k·Δt (s)"""
        return self.timing.coherence_slots_k * self.coherence_time_s

    @property
    def tx_power_w(self) -> float:
        return dbm_to_watts(self.radio.tx_power_dbm)

    @property
    def snr_threshold(self) -> float:
        """τ en linéaire"""
        return 10.0 ** (self.radio.snr_threshold_db / 10.0)

    @property
    def residual_energy_j(self) -> float:
        """ε, par défaut p_m·ΔT/2"""
        if self.energy.residual_j is not None:
            return self.energy.residual_j
        return self.energy.move_power_w * self.slot_s / 2.0

    def noise_model(self) -> NoiseModel:
        return NoiseModel.from_dbm(self.radio.noise_psd_dbm_hz, self.radio.noise_figure_db, self.radio.bandwidth_hz)

    def energy_budget(self) -> EnergyBudget:
        e = self.energy
        return EnergyBudget.fresh(
            initial_energy=e.initial_energy_j,
            hover_power=e.hover_power_w,
            move_power=e.move_power_w,
            reflect_power=e.reflect_power_w,
            residual=self.residual_energy_j,
            cap_harvest=e.cap_harvest_at_reflector_power,
        )

    def walker_params(self) -> WalkerParams:
        m = self.mobility
        return WalkerParams(
            speed=m.ue_speed_mps,
            swing_amplitude=math.radians(m.swing_amplitude_deg),
            swing_period=m.swing_period_s,
            device_bearing=None if m.device_bearing_deg is None else math.radians(m.device_bearing_deg),
        )

    def bs_boresight(self) -> np.ndarray:
        g = self.geometry
        return unit(np.asarray(g.bs_aim_point, dtype=float) - np.asarray(g.bs_position, dtype=float))

    def radio_params(self) -> RadioParams:
        r = self.radio
        return RadioParams(
            carrier_ghz=r.carrier_ghz,
            tx_power_w=self.tx_power_w,
            bs_array=ArrayGeometry(r.bs_rows, r.bs_cols, r.element_spacing_wl, tuple(self.bs_boresight())),
            ir_array=ArrayGeometry(r.ir_rows, r.ir_cols, r.element_spacing_wl, (0.0, 0.0, -1.0)),
            scatter_paths=r.scatter_paths,
            scatter_offset_db=r.scatter_offset_db,
            body_loss_db=r.body_loss_db,
            body_shadow_half_width=math.radians(r.body_shadow_half_width_deg),
            bs_antenna_gain_dbi=r.bs_antenna_gain_dbi,
            ir_element_gain_dbi=r.ir_element_gain_dbi,
            ue_antenna_gain_dbi=r.ue_antenna_gain_dbi,
            tree_attenuation_db=r.tree_attenuation_db,
        )

    def initial_uav_position(self) -> np.ndarray:
        """x₀ : au-dessus du carrefour à l'altitude du scénario, sauf surcharge"""
        m = self.mobility
        if m.uav_initial_position is not None:
            x, y = m.uav_initial_position[:2]
            return np.array([float(x), float(y), m.uav_altitude_m])
        x_min, x_max, y_min, y_max = self.geometry.bounds
        return np.array([(x_min + x_max) / 2.0, (y_min + y_max) / 2.0, m.uav_altitude_m])

    def build_geometry(self, rng: np.random.Generator) -> WorldGeometry:
        """
        Construit la scène ; les arbres non listés sont plantés avec `rng`

        Args:
            rng: Flux aléatoire 'layout'
        """
        g = self.geometry
        extent = max(abs(v) for v in g.bounds)
        if g.buildings is None:
            buildings = crossing_buildings(g.street_half_width_m, g.building_size_m, g.building_height_m)
        else:
            buildings = [Obstacle.building(b['min'], b['max']) for b in g.buildings]
        if g.streets is None:
            streets = crossing_streets(g.street_half_width_m, extent)
        else:
            streets = [StreetArea(tuple(s['min']), tuple(s['max'])) for s in g.streets]
        if g.trees is None:
            trees = place_roadside_trees(
                rng,
                g.tree_count,
                g.street_half_width_m,
                extent,
                crown_radius=g.tree_crown_radius_m,
                crown_height=g.tree_crown_height_m,
                trunk_radius=g.tree_trunk_radius_m,
                edge_inset=g.tree_edge_inset_m,
            )
        else:
            trees = [
                Obstacle.tree(t['center'], t.get('crown_radius', g.tree_crown_radius_m),
                              t.get('trunk_radius', g.tree_trunk_radius_m))
                for t in g.trees
            ]
        return WorldGeometry(
            obstacles=tuple(buildings + trees),
            streets=tuple(streets),
            bounds=tuple(float(v) for v in g.bounds),
            bs_position=tuple(float(v) for v in g.bs_position),
            bs_boresight=tuple(float(v) for v in self.bs_boresight()),
            ue_height=g.ue_height_m,
            walk_margin=g.walk_margin_m,
        )

    # ------------------------------------------------------------------
    # Validation
    # ------------------------------------------------------------------

    def validate(self) -> List[str]:
        """
        Vérifie les invariants du scénario

        Returns:
            Liste des violations, chacune préfixée par le chemin du champ
        """
        errors = []
        g, r, t, m, a, run = self.geometry, self.radio, self.timing, self.mobility, self.agent, self.run

        # --- geometry ---
        if len(g.bounds) != 4 or not (g.bounds[0] < g.bounds[1] and g.bounds[2] < g.bounds[3]):
            errors.append(f"geometry.bounds: [x_min, x_max, y_min, y_max] croissants attendus: {g.bounds}")
        if g.street_half_width_m <= 0:
            errors.append("geometry.street_half_width_m: doit être > 0")
        if g.tree_count < 0:
            errors.append("geometry.tree_count: doit être >= 0")
        if g.tree_crown_radius_m <= 0:
            errors.append("geometry.tree_crown_radius_m: doit être > 0")
        for name in ('bs_position', 'bs_aim_point', 'static_ir_position'):
            if len(getattr(g, name)) != 3:
                errors.append(f"geometry.{name}: point 3D attendu")
        if g.bs_position == g.bs_aim_point:
            errors.append("geometry.bs_aim_point: doit différer de bs_position")

        # --- radio ---
        if r.carrier_ghz <= 0:
            errors.append("radio.carrier_ghz: doit être > 0")
        if r.bandwidth_hz <= 0:
            errors.append("radio.bandwidth_hz: doit être > 0")
        if not 0.0 <= r.amplitude < 1.0:
            errors.append(f"radio.amplitude: doit être dans [0, 1): {r.amplitude}")
        if not 0.0 < r.kappa < 1.0:
            errors.append(f"radio.kappa: doit être dans (0, 1): {r.kappa}")
        if r.bs_rows * r.bs_cols != r.bs_antennas:
            errors.append(f"radio.bs_antennas: bs_rows·bs_cols = {r.bs_rows * r.bs_cols} ≠ M = {r.bs_antennas}")
        if r.ir_rows * r.ir_cols != r.ir_elements:
            errors.append(f"radio.ir_elements: ir_rows·ir_cols = {r.ir_rows * r.ir_cols} ≠ N = {r.ir_elements}")
        if min(r.bs_rows, r.bs_cols, r.ir_rows, r.ir_cols) < 1:
            errors.append("radio: dimensions de réseau >= 1 attendues")
        if r.element_spacing_wl <= 0:
            errors.append("radio.element_spacing_wl: doit être > 0")
        if r.scatter_paths < 0:
            errors.append("radio.scatter_paths: doit être >= 0")
        if r.body_loss_db < 0:
            errors.append("radio.body_loss_db: doit être >= 0")
        if not 0.0 < r.body_shadow_half_width_deg <= 180.0:
            errors.append("radio.body_shadow_half_width_deg: doit être dans (0, 180]")
        if r.tree_attenuation_db is not None and r.tree_attenuation_db < 0:
            errors.append("radio.tree_attenuation_db: doit être >= 0")

        # --- timing ---
        if not isinstance(t.coherence_slots_k, int) or t.coherence_slots_k < 1:
            errors.append(f"timing.coherence_slots_k: entier >= 1 attendu: {t.coherence_slots_k}")
        if t.max_coherence_s <= 0:
            errors.append("timing.max_coherence_s: doit être > 0")
        if t.coherence_time_s is not None:
            if t.coherence_time_s <= 0:
                errors.append("timing.coherence_time_s: doit être > 0")
            elif m.ue_speed_mps > 0:
                channel_dt = coherence_time(self.wavelength_m, m.ue_speed_mps, t.max_coherence_s)
                if t.coherence_time_s > 1.05 * channel_dt:
                    errors.append(
                        f"timing.coherence_time_s: {t.coherence_time_s} s dépasse λ_f/v_e = {channel_dt:.6g} s"
                    )

        # --- energy ---
        if t.coherence_slots_k >= 1 and t.max_coherence_s > 0 and self.coherence_time_s > 0:
            errors.extend(f"energy: {e}" for e in self.energy_budget().validate(self.slot_s))

        # --- mobility ---
        if m.ue_speed_mps < 0:
            errors.append("mobility.ue_speed_mps: doit être >= 0")
        if m.swing_period_s <= 0:
            errors.append("mobility.swing_period_s: doit être > 0")
        if m.uav_altitude_m <= 0:
            errors.append("mobility.uav_altitude_m: doit être > 0")
        if m.uav_max_speed_mps <= 0:
            errors.append("mobility.uav_max_speed_mps: doit être > 0")

        # --- agent ---
        if not 0.0 <= a.gamma <= 1.0:
            errors.append(f"agent.gamma: doit être dans [0, 1]: {a.gamma}")
        if a.value_function not in VALUE_FUNCTIONS:
            errors.append(f"agent.value_function: {a.value_function} ∉ {VALUE_FUNCTIONS}")
        if a.learning_rate <= 0:
            errors.append("agent.learning_rate: doit être > 0")
        if not 0.0 < a.tabular_beta <= 1.0:
            errors.append(f"agent.tabular_beta: doit être dans (0, 1]: {a.tabular_beta}")
        if not 0.0 <= a.epsilon_floor <= a.epsilon_start <= 1.0:
            errors.append("agent.epsilon_start / epsilon_floor: 0 <= floor <= start <= 1 attendu")
        if not 0.0 < a.epsilon_decay <= 1.0:
            errors.append("agent.epsilon_decay: doit être dans (0, 1]")
        if a.grid_size < 1:
            errors.append("agent.grid_size: doit être >= 1")
        if a.grid_spacing_m <= 0:
            errors.append("agent.grid_spacing_m: doit être > 0")
        if a.q_target_mode not in Q_TARGET_MODES:
            errors.append(f"agent.q_target_mode: {a.q_target_mode} ∉ {Q_TARGET_MODES}")
        if a.history_window < 2:
            errors.append("agent.history_window: doit être >= 2")
        if any(size < 1 for size in a.hidden_sizes):
            errors.append("agent.hidden_sizes: tailles >= 1 attendues")

        # --- run ---
        if run.max_slots < 1:
            errors.append("run.max_slots: doit être >= 1")
        if run.training_mode not in TRAINING_MODES:
            errors.append(f"run.training_mode: {run.training_mode} ∉ {TRAINING_MODES}")
        if run.warmup_episodes < 0:
            errors.append("run.warmup_episodes: doit être >= 0")

        return errors

    def ensure_valid(self) -> 'ScenarioConfig':
        """
        Raises:
            ConfigError: Au moins un invariant violé
        """
        errors = self.validate()
        if errors:
            raise ConfigError(errors)
        return self

    def validate_static_ir(self, geometry: WorldGeometry) -> bool:
        """Vérifie la visibilité BS → IR statique (bâtiments seulement)"""
        blocked, _ = segment_blockage(geometry.bs_position, self.geometry.static_ir_position, geometry.buildings)
        if blocked:
            logger.warning(
                "IR statique sans visibilité vers la BS",
                extra={'context': {'static_ir_position': self.geometry.static_ir_position}}
            )
        return not blocked

    def display(self) -> Dict[str, Any]:
        """Résumé lisible, dans le style de Config.display_config()"""
        return {
            'Config Hash': self.config_hash(),
            'Seed': self.run.seed,
            'Altitude (m)': self.mobility.uav_altitude_m,
            'P_tx (W)': round(self.tx_power_w, 6),
            'f_c (GHz)': self.radio.carrier_ghz,
            'b (Hz)': self.radio.bandwidth_hz,
            'τ (dB)': self.radio.snr_threshold_db,
            'ΔT (s)': self.slot_s,
            'E₀ (J)': self.energy.initial_energy_j,
            'ε (J)': self.residual_energy_j,
            'γ': self.agent.gamma,
            'Q target': self.agent.q_target_mode,
            'Training': self.run.training_mode,
        }

