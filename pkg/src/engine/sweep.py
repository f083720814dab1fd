"""
Sweep - Balayages de Paramètres
===============================

Produit cartésien (valeur de l'axe × politique × graine). Chaque épisode
possède tout son état ; ils peuvent tourner en parallèle dans un pool de
processus. Les lignes sont toujours ordonnées par (valeur, politique,
graine), quel que soit l'ordre de fin des épisodes.

Usage:
    from src.engine.sweep import run_sweep, display_table

    result = run_sweep(cfg, 'altitude', [20, 40, 60], ['rl', 'static'], seeds=range(20))
    display_table(result.table)
"""

from concurrent.futures import ProcessPoolExecutor, as_completed
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence, Union

import pandas as pd
from tabulate import tabulate
from tqdm import tqdm

from src.engine.episode_runner import run_episode
from src.engine.scenario_config import POLICIES, ScenarioConfig
from src.utils.error_handler import ConfigError, SweepError
from src.utils.logger import get_logger


logger = get_logger(__name__)

SWEEP_AXES = ('altitude', 'tx_power')

# agrégats d'épisode moyennés sur les graines
SUMMARY_METRICS = {
    'rate': 'mean_rate_bps',
    'los': 'los_fraction',
    'harvest': 'mean_harvest_w',
}


@dataclass(eq=False)
class SweepResult:
    """
    Attributes:
        runs: Une ligne par épisode (axe, valeur, politique, graine, agrégats)
        table: Une ligne par (valeur, politique) : moyenne et écart-type
        config_hash: Hash de la configuration de base
    """
    runs: pd.DataFrame
    table: pd.DataFrame
    config_hash: str
    axis: str
    seeds: List[int]

    @property
    def provenance(self) -> Dict[str, Any]:
        return {
            'config_hash': self.config_hash,
            'axis': self.axis,
            'seeds': ' '.join(str(s) for s in self.seeds),
        }


def normalize_axis(axis: str) -> str:
    """Accepte 'tx-power' (CLI) comme 'tx_power'"""
    return axis.replace('-', '_')


def apply_axis(cfg: ScenarioConfig, axis: str, value: float) -> ScenarioConfig:
    """Configuration dérivée pour une valeur de l'axe (altitude en m, puissance en W)"""
    if axis == 'altitude':
        return cfg.with_altitude(value)
    if axis == 'tx_power':
        return cfg.with_tx_power_w(value)
    raise ConfigError([f"axis: {axis} ∉ {SWEEP_AXES}"])


def _run_entry(
    cfg: ScenarioConfig,
    axis: str,
    value: float,
    policy: str,
    seed: int,
    warm_start: Optional[str]
) -> Dict[str, Any]:
    """Un épisode du balayage ; fonction de module pour être sérialisable par le pool"""
    entry_cfg = apply_axis(cfg, axis, value).with_seed(seed)
    result = run_episode(entry_cfg, policy, warm_start if policy == 'rl' else None)
    return {'axis': axis, 'value': float(value), 'policy': policy, 'seed': int(seed), **result.metrics.get_stats()}


def summarize(runs: pd.DataFrame) -> pd.DataFrame:
    """
    Moyenne et écart-type d'échantillon (ddof = 1, 0 pour une seule graine)

    Returns:
        Colonnes : axis, value, policy, seeds, <m>_mean, <m>_std pour rate, los, harvest
    """
    grouped = runs.groupby(['axis', 'value', 'policy'], sort=False)
    rows = []
    for (axis, value, policy), group in grouped:
        row = {'axis': axis, 'value': value, 'policy': policy, 'seeds': len(group)}
        for name, column in SUMMARY_METRICS.items():
            values = group[column]
            row[f'{name}_mean'] = float(values.mean())
            row[f'{name}_std'] = float(values.std(ddof=1)) if len(values) > 1 else 0.0
        rows.append(row)
    return pd.DataFrame(rows)


def run_sweep(
    cfg: ScenarioConfig,
    axis: str,
    values: Sequence[float],
    policies: Sequence[str],
    seeds: Sequence[int],
    max_workers: int = 1,
    warm_start: Optional[Union[str, Path]] = None,
    progress: bool = True
) -> SweepResult:
    """
    Exécute le balayage complet

    Args:
        cfg: Configuration de base
        axis: 'altitude' ou 'tx_power' ('tx-power' accepté)
        values: Valeurs de l'axe (m ou W)
        policies: Sous-ensemble de POLICIES
        seeds: Graines
        max_workers: Processus parallèles (1 = séquentiel)
        warm_start: φ initial des épisodes RL
        progress: Barre de progression tqdm

    Raises:
        ConfigError: Axe, politique ou listes invalides (vides ou avec doublons)
        SweepError: Un épisode a échoué (tuple fautif identifié)
    """
    axis = normalize_axis(axis)
    errors = []
    if axis not in SWEEP_AXES:
        errors.append(f"axis: {axis} ∉ {SWEEP_AXES}")
    if not values:
        errors.append("values: liste vide")
    if not policies:
        errors.append("policies: liste vide")
    if not seeds:
        errors.append("seeds: liste vide")
    errors.extend(f"policies: {p} ∉ {POLICIES}" for p in policies if p not in POLICIES)
    for name, items in (("values", [float(v) for v in values]), ("policies", list(policies)),
                        ("seeds", [int(s) for s in seeds])):
        repeated = sorted({item for item in items if items.count(item) > 1}, key=str)
        if repeated:
            errors.append(f"{name}: doublons {repeated}")
    if errors:
        raise ConfigError(errors)
    cfg.ensure_valid()

    warm = str(warm_start) if warm_start is not None else None
    entries = [(float(v), p, int(s)) for v in values for p in policies for s in seeds]
    logger.info(
        "Début du balayage",
        extra={'context': {'axis': axis, 'entries': len(entries), 'workers': max_workers}}
    )

    rows: Dict[tuple, Dict[str, Any]] = {}
    bar = tqdm(total=len(entries), desc=f"sweep {axis}", disable=not progress)
    try:
        if max_workers <= 1:
            for value, policy, seed in entries:
                try:
                    rows[(value, policy, seed)] = _run_entry(cfg, axis, value, policy, seed, warm)
                except Exception as e:
                    raise SweepError({'axis': axis, 'value': value, 'policy': policy, 'seed': seed}, e) from e
                bar.update(1)
        else:
            with ProcessPoolExecutor(max_workers=max_workers) as executor:
                future_to_entry = {
                    executor.submit(_run_entry, cfg, axis, value, policy, seed, warm): (value, policy, seed)
                    for value, policy, seed in entries
                }
                for future in as_completed(future_to_entry):
                    value, policy, seed = future_to_entry[future]
                    try:
                        rows[(value, policy, seed)] = future.result()
                    except Exception as e:
                        executor.shutdown(wait=False, cancel_futures=True)
                        raise SweepError({'axis': axis, 'value': value, 'policy': policy, 'seed': seed}, e) from e
                    bar.update(1)
    finally:
        bar.close()

    # ordre (valeur de l'axe, rang de la politique demandée, graine)
    rank = {p: i for i, p in enumerate(policies)}
    ordered = sorted(rows, key=lambda key: (key[0], rank[key[1]], key[2]))
    runs = pd.DataFrame([rows[key] for key in ordered])
    table = summarize(runs)

    logger.info("Balayage terminé", extra={'context': {'axis': axis, 'rows': len(table)}})
    return SweepResult(runs=runs, table=table, config_hash=cfg.config_hash(), axis=axis, seeds=[int(s) for s in seeds])


def display_table(table: pd.DataFrame):
    """Affiche la table de balayage (débit en Mbit/s, récolte en mW)"""
    headers = ['axis', 'value', 'policy', 'seeds', 'rate (Mbit/s)', 'LOS', 'p_e (mW)']
    body = [
        [
            row['axis'],
            row['value'],
            row['policy'],
            row['seeds'],
            f"{row['rate_mean'] / 1e6:.3f} ± {row['rate_std'] / 1e6:.3f}",
            f"{row['los_mean']:.3f} ± {row['los_std']:.3f}",
            f"{row['harvest_mean'] * 1e3:.4f} ± {row['harvest_std'] * 1e3:.4f}",
        ]
        for _, row in table.iterrows()
    ]
    print(tabulate(body, headers=headers, tablefmt='orgtbl'))
