"""
Modèle de Canal - Liaisons BS→IR et IR→UE
=========================================

Canal géométrique par créneau de communication : un trajet direct (LOS),
présent seulement si la ligne de vue est dégagée, et L trajets diffusés
d'angles aléatoires. Formation de faisceau MRT à la BS, SNR et capacité.

Usage:
    from src.channel.channel_model import ChannelModel, NoiseModel, RadioParams, snr

    model = ChannelModel(RadioParams())
    realization = model.realize(world, rng)
    eta = snr(realization.h, theta, realization.r, NoiseModel.from_dbm(-174, 9, 1e8))
"""

import math
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from src.channel.antenna import ArrayGeometry, steering_vector
from src.channel.path_loss import db_to_linear, dbm_to_watts, path_loss_db
from src.reflector.reflection import ReflectionCoefficient
from src.utils.logger import get_logger
from src.world.geometry import segment_blockage, unit
from src.world.mobility import WorldState, body_blocked


logger = get_logger(__name__)


@dataclass(frozen=True)
class NoiseModel:
    """
    Bruit thermique du récepteur

    Attributes:
        psd_w_per_hz: Densité spectrale n₀ (W/Hz)
        bandwidth_hz: Bande b (Hz)
    """
    psd_w_per_hz: float
    bandwidth_hz: float

    def __post_init__(self):
        if self.psd_w_per_hz <= 0 or self.bandwidth_hz <= 0:
            raise ValueError(
                f"n₀ et b doivent être > 0: n₀={self.psd_w_per_hz}, b={self.bandwidth_hz}"
            )

    @classmethod
    def from_dbm(cls, psd_dbm_hz: float, noise_figure_db: float, bandwidth_hz: float) -> 'NoiseModel':
        """n₀ = densité thermique (dBm/Hz) + facteur de bruit (dB)"""
        return cls(dbm_to_watts(psd_dbm_hz + noise_figure_db), bandwidth_hz)

    @property
    def power_w(self) -> float:
        return self.psd_w_per_hz * self.bandwidth_hz


@dataclass(frozen=True)
class RadioParams:
    """Constantes radio d'un scénario"""
    carrier_ghz: float = 30.0
    tx_power_w: float = 10.0
    bs_array: ArrayGeometry = field(default_factory=lambda: ArrayGeometry(8, 8, 0.5, (-1.0, 1.0, 0.0)))
    ir_array: ArrayGeometry = field(default_factory=lambda: ArrayGeometry(4, 4, 0.5, (0.0, 0.0, -1.0)))
    scatter_paths: int = 3
    scatter_offset_db: float = 15.0
    body_loss_db: float = 30.0
    body_shadow_half_width: float = math.radians(60.0)
    bs_antenna_gain_dbi: float = 25.0
    ir_element_gain_dbi: float = 15.0
    ue_antenna_gain_dbi: float = 0.0
    tree_attenuation_db: Optional[float] = None


@dataclass(frozen=True)
class LinkState:
    """État de visibilité d'une liaison"""
    building_blocked: bool = False
    tree_blocked: bool = False
    body_shadowed: bool = False

    @property
    def geometric_los(self) -> bool:
        return not (self.building_blocked or self.tree_blocked)

    @property
    def clear(self) -> bool:
        """Visibilité géométrique sans masquage corporel"""
        return self.geometric_los and not self.body_shadowed


@dataclass(frozen=True, eq=False)
class ChannelRealization:
    """
    Réalisation du canal pour un bloc de cohérence

    Attributes:
        H: Canal BS→IR (N×M)
        h: Canal IR→UE (N,)
        w: Vecteur de formation de faisceau (M,), ‖w‖² = P_tx
        r: Signal incident r = H·w (N,)
        bs_ir: Visibilité BS→IR
        ir_ue: Visibilité IR→UE
    """
    H: np.ndarray
    h: np.ndarray
    w: np.ndarray
    r: np.ndarray
    bs_ir: LinkState
    ir_ue: LinkState

    @property
    def los_bs_ir(self) -> bool:
        return self.bs_ir.geometric_los

    @property
    def los_ir_ue(self) -> bool:
        return self.ir_ue.clear


def beamformer(H: np.ndarray, tx_power_w: float) -> np.ndarray:
    """
    Transmission à rapport maximal (MRT)

    w = √P_tx·v₁, v₁ vecteur singulier droit dominant de H. Un canal nul
    donne w = √P_tx·e₁.
    """
    H = np.asarray(H, dtype=complex)
    if not np.any(H):
        logger.warning(
            "Canal BS→IR nul, faisceau arbitraire e₁",
            extra={'context': {'shape': list(H.shape)}}
        )
        w = np.zeros(H.shape[1], dtype=complex)
        w[0] = math.sqrt(tx_power_w)
        return w
    _, _, vh = np.linalg.svd(H)
    v1 = vh[0].conj()
    return math.sqrt(tx_power_w) * v1 / np.linalg.norm(v1)


def snr(
    h: np.ndarray,
    coefficient: ReflectionCoefficient,
    r: np.ndarray,
    noise: NoiseModel
) -> float:
    """η = |h·Θ·r|² / (b·n₀)"""
    h = np.asarray(h, dtype=complex).reshape(-1)
    r = np.asarray(r, dtype=complex).reshape(-1)
    if not h.shape == r.shape == coefficient.phases.shape:
        raise ValueError(
            f"Dimensions incompatibles: h {h.shape}, Θ {coefficient.phases.shape}, r {r.shape}"
        )
    received = h @ (coefficient.diagonal() * r)
    return float(abs(received) ** 2 / noise.power_w)


def capacity(eta: float, noise: NoiseModel) -> float:
    """c = b·log₂(1 + η) (bit/s)"""
    if eta < 0:
        raise ValueError(f"η doit être >= 0: {eta}")
    return noise.bandwidth_hz * math.log2(1.0 + eta)


class ChannelModel:
    """
    Générateur de canaux géométriques LOS + diffusés

    Les tirages aléatoires suivent toujours le même ordre (phase LOS puis,
    pour chaque trajet diffusé, directions et phase), que la ligne de vue
    soit dégagée ou non.
    """

    def __init__(self, params: RadioParams):
        """
        Initialise le modèle

        Args:
            params: Constantes radio
        """
        self.params = params
        self.logger = get_logger(__name__)

    def bs_ir_link(self, world: WorldState) -> LinkState:
        building, tree = segment_blockage(
            world.bs_position, world.uav.position, world.geometry.obstacles
        )
        return LinkState(building_blocked=building, tree_blocked=tree)

    def ir_ue_link(self, world: WorldState) -> LinkState:
        building, tree = segment_blockage(
            world.uav.position, world.ue.position, world.geometry.obstacles
        )
        shadowed = body_blocked(
            world.ue,
            world.uav.position,
            self.params.body_shadow_half_width,
        )
        return LinkState(building_blocked=building, tree_blocked=tree, body_shadowed=shadowed)

    def _los_gain_db(self, distance: float, link: LinkState, antenna_gain_db: float) -> Optional[float]:
        """Gain du trajet direct (dB), None si le trajet est coupé"""
        if link.building_blocked:
            return None
        gain = antenna_gain_db - path_loss_db(distance, self.params.carrier_ghz, los=True)
        if link.tree_blocked:
            if self.params.tree_attenuation_db is None:
                return None
            gain -= self.params.tree_attenuation_db
        if link.body_shadowed:
            gain -= self.params.body_loss_db
        return gain

    def _scatter_gain_db(self, distance: float, antenna_gain_db: float) -> float:
        loss = path_loss_db(distance, self.params.carrier_ghz, los=False) + self.params.scatter_offset_db
        return antenna_gain_db - loss

    @staticmethod
    def _random_direction(rng: np.random.Generator) -> np.ndarray:
        v = rng.standard_normal(3)
        return v / np.linalg.norm(v)

    @staticmethod
    def _complex_gain(gain_db: float, phase: float) -> complex:
        return math.sqrt(db_to_linear(gain_db)) * complex(math.cos(phase), math.sin(phase))

    def realize_bs_ir(self, world: WorldState, rng: np.random.Generator) -> np.ndarray:
        """
        Canal BS→IR H = Σ α_l·a_IR(φ_l)·a_BS(ψ_l)ᴴ

        Args:
            world: État géométrique (UAV en vol stationnaire)
            rng: Flux aléatoire du canal

        Returns:
            Matrice complexe N×M
        """
        p = self.params
        bs = world.bs_position
        ir = world.uav.position
        distance = float(np.linalg.norm(ir - bs))
        antenna_gain = p.bs_antenna_gain_dbi + p.ir_element_gain_dbi
        H = np.zeros((p.ir_array.size, p.bs_array.size), dtype=complex)

        los_phase = rng.uniform(0.0, 2.0 * math.pi)
        gain_db = self._los_gain_db(distance, self.bs_ir_link(world), antenna_gain)
        if gain_db is not None:
            alpha = self._complex_gain(gain_db, los_phase)
            H += alpha * np.outer(
                steering_vector(p.ir_array, unit(bs - ir)),
                steering_vector(p.bs_array, unit(ir - bs)).conj(),
            )

        scatter_gain = self._scatter_gain_db(distance, antenna_gain)
        for _ in range(p.scatter_paths):
            arrival = self._random_direction(rng)
            departure = self._random_direction(rng)
            alpha = self._complex_gain(scatter_gain, rng.uniform(0.0, 2.0 * math.pi))
            H += alpha * np.outer(
                steering_vector(p.ir_array, arrival),
                steering_vector(p.bs_array, departure).conj(),
            )
        return H

    def realize_ir_ue(self, world: WorldState, rng: np.random.Generator) -> np.ndarray:
        """
        Canal IR→UE h, terminal à une antenne

        Le trajet direct est atténué de L_body si le corps masque l'IR et
        supprimé si un obstacle coupe la ligne de vue.

        Returns:
            Vecteur complexe (N,)
        """
        p = self.params
        ir = world.uav.position
        ue = world.ue.position
        distance = float(np.linalg.norm(ue - ir))
        antenna_gain = p.ir_element_gain_dbi + p.ue_antenna_gain_dbi
        h = np.zeros(p.ir_array.size, dtype=complex)

        los_phase = rng.uniform(0.0, 2.0 * math.pi)
        gain_db = self._los_gain_db(distance, self.ir_ue_link(world), antenna_gain)
        if gain_db is not None:
            h += self._complex_gain(gain_db, los_phase) * steering_vector(p.ir_array, unit(ue - ir))

        scatter_gain = self._scatter_gain_db(distance, antenna_gain)
        for _ in range(p.scatter_paths):
            departure = self._random_direction(rng)
            beta = self._complex_gain(scatter_gain, rng.uniform(0.0, 2.0 * math.pi))
            h += beta * steering_vector(p.ir_array, departure)
        return h

    def realize(self, world: WorldState, rng: np.random.Generator) -> ChannelRealization:
        """Réalise H, h, w et r pour un créneau de communication"""
        H = self.realize_bs_ir(world, rng)
        h = self.realize_ir_ue(world, rng)
        w = beamformer(H, self.params.tx_power_w)
        return ChannelRealization(
            H=H,
            h=h,
            w=w,
            r=H @ w,
            bs_ir=self.bs_ir_link(world),
            ir_ue=self.ir_ue_link(world),
        )

    def __repr__(self):
        return (
            f"<ChannelModel(f_c={self.params.carrier_ghz} GHz, "
            f"P_tx={self.params.tx_power_w} W, L={self.params.scatter_paths})>"
        )

