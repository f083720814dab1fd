"""
Modèle d'Affaiblissement - UMi Street Canyon (close-in)
=======================================================

Affaiblissement de parcours LOS / NLOS en dB et conversions dB ↔ linéaire.

Usage:
    from src.channel.path_loss import path_loss_db

    loss = path_loss_db(100.0, 30.0, los=True)   # 103.94 dB
"""

import math

import numpy as np

from src.utils.logger import get_logger


logger = get_logger(__name__)

# Plancher de validité du modèle (m)
MIN_DISTANCE_M = 1.0

PL_CONSTANT_DB = 32.4
LOS_EXPONENT = 21.0
NLOS_EXPONENT = 31.9
FREQUENCY_EXPONENT = 20.0


def path_loss_db(distance_m: float, carrier_ghz: float, los: bool) -> float:
    """
    Affaiblissement de parcours close-in

    LOS  : 32.4 + 21·log10(d) + 20·log10(f_c)
    NLOS : 32.4 + 31.9·log10(d) + 20·log10(f_c)

    Args:
        distance_m: Distance 3D (m), ramenée à 1 m si inférieure
        carrier_ghz: Fréquence porteuse (GHz)
        los: Liaison en visibilité directe ?

    Returns:
        Affaiblissement en dB
    """
    if carrier_ghz <= 0:
        raise ValueError(f"carrier_ghz doit être > 0: {carrier_ghz}")
    if distance_m < MIN_DISTANCE_M:
        logger.warning(
            "Distance sous le plancher du modèle, ramenée à 1 m",
            extra={'context': {'distance_m': float(distance_m)}}
        )
        distance_m = MIN_DISTANCE_M

    exponent = LOS_EXPONENT if los else NLOS_EXPONENT
    return PL_CONSTANT_DB + exponent * math.log10(distance_m) + FREQUENCY_EXPONENT * math.log10(carrier_ghz)


def db_to_linear(value_db: float) -> float:
    return 10.0 ** (value_db / 10.0)


def linear_to_db(value: float, floor_db: float = -np.inf) -> float:
    """Conversion linéaire → dB, avec plancher pour les valeurs nulles"""
    if value <= 0.0:
        return floor_db
    return max(10.0 * math.log10(value), floor_db)


def dbm_to_watts(value_dbm: float) -> float:
    return 10.0 ** ((value_dbm - 30.0) / 10.0)


def watts_to_dbm(value_w: float) -> float:
    return 10.0 * math.log10(value_w) + 30.0


def wavelength_m(carrier_ghz: float) -> float:
    """Longueur d'onde λ_f = c / f_c (m)"""
    return 299_792_458.0 / (carrier_ghz * 1e9)
