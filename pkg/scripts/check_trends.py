"""
Vérification des Tendances Qualitatives
=======================================

Rejoue les balayages sur desk_scale.yaml (par défaut) et contrôle les
tendances attendues :
- à 40 m : fraction LOS static < 0.2, greedy > static + 0.3, rl >= greedy + 0.05,
  débits rl > greedy > static avec rl >= 1.5 × static ;
- altitude : débit rl à 100 m <= 0.7 × débit rl à 20 m, écart rl/static plus
  faible à 100 m qu'à 20 m ;
- puissance {1, 5, 10, 20} W : débits non décroissants, pente rl > pente static,
  débit nul quand η max < τ ;
- récolte : p_e croissante en P_tx, p_e >= p_r en haut du balayage, dans
  [1e-5, 1e-2] W.

Usage:
    python scripts/check_trends.py --scenario config/scenarios/desk_scale.yaml --seeds 0-19 --workers 4
"""

import argparse
import sys
import time
from pathlib import Path
from typing import List, Tuple

from tabulate import tabulate

sys.path.insert(0, str(Path(__file__).resolve().parent.parent))

from config.config import Config  # noqa: E402
from main import parse_seeds  # noqa: E402
from src.engine.episode_runner import run_episode  # noqa: E402
from src.engine.scenario_config import ScenarioConfig  # noqa: E402
from src.engine.sweep import display_table, run_sweep  # noqa: E402


Check = Tuple[str, bool, str]

# Préréglage court : 20 graines × 3 politiques en moins de 10 minutes
TRENDS_SCENARIO = Path(__file__).resolve().parent.parent / 'config' / 'scenarios' / 'desk_scale.yaml'
TIME_BUDGET_S = 600.0


def _row(table, value, policy):
    match = table[(table['value'] == float(value)) & (table['policy'] == policy)]
    return match.iloc[0]


def check_reference_altitude(cfg, seeds, workers) -> List[Check]:
    started = time.perf_counter()
    table = run_sweep(cfg, 'altitude', [40.0], ['rl', 'greedy', 'static'], seeds, max_workers=workers).table
    elapsed = time.perf_counter() - started
    display_table(table)
    rl, greedy, static = (_row(table, 40.0, p) for p in ('rl', 'greedy', 'static'))
    return [
        ("LOS static < 0.2", static['los_mean'] < 0.2, f"{static['los_mean']:.3f}"),
        ("LOS greedy > static + 0.3", greedy['los_mean'] > static['los_mean'] + 0.3,
         f"{greedy['los_mean']:.3f} vs {static['los_mean']:.3f}"),
        ("LOS rl >= greedy + 0.05", rl['los_mean'] >= greedy['los_mean'] + 0.05,
         f"{rl['los_mean']:.3f} vs {greedy['los_mean']:.3f}"),
        ("débit rl > greedy > static",
         rl['rate_mean'] > greedy['rate_mean'] > static['rate_mean'],
         f"{rl['rate_mean']:.4g} / {greedy['rate_mean']:.4g} / {static['rate_mean']:.4g}"),
        ("débit rl >= 1.5 × static", rl['rate_mean'] >= 1.5 * static['rate_mean'],
         f"{rl['rate_mean']:.4g} vs {static['rate_mean']:.4g}"),
        ("durée du balayage à 40 m", elapsed <= TIME_BUDGET_S, f"{elapsed:.0f} s pour {len(seeds)} graines"),
    ]


def check_altitude_trend(cfg, seeds, workers) -> List[Check]:
    table = run_sweep(cfg, 'altitude', [20.0, 100.0], ['rl', 'static'], seeds, max_workers=workers).table
    display_table(table)
    rl_low, rl_high = _row(table, 20.0, 'rl'), _row(table, 100.0, 'rl')
    static_low, static_high = _row(table, 20.0, 'static'), _row(table, 100.0, 'static')
    gap_low = rl_low['rate_mean'] - static_low['rate_mean']
    gap_high = rl_high['rate_mean'] - static_high['rate_mean']
    return [
        ("débit rl(100 m) <= 0.7 × rl(20 m)", rl_high['rate_mean'] <= 0.7 * rl_low['rate_mean'],
         f"{rl_high['rate_mean']:.4g} vs {rl_low['rate_mean']:.4g}"),
        ("écart rl/static réduit à 100 m", gap_high < gap_low, f"{gap_high:.4g} vs {gap_low:.4g}"),
    ]


def check_power_trend(cfg, seeds, workers) -> List[Check]:
    powers = [1.0, 5.0, 10.0, 20.0]
    table = run_sweep(cfg, 'tx_power', powers, ['rl', 'greedy', 'static'], seeds, max_workers=workers).table
    display_table(table)
    checks = []
    for policy in ('rl', 'greedy', 'static'):
        rates = [_row(table, p, policy)['rate_mean'] for p in powers]
        checks.append((f"débit {policy} non décroissant en P_tx",
                       all(a <= b for a, b in zip(rates, rates[1:])),
                       ' ≤ '.join(f"{r:.3g}" for r in rates)))
    rl_slope = _row(table, 20.0, 'rl')['rate_mean'] - _row(table, 1.0, 'rl')['rate_mean']
    static_slope = _row(table, 20.0, 'static')['rate_mean'] - _row(table, 1.0, 'static')['rate_mean']
    checks.append(("pente rl > pente static", rl_slope > static_slope, f"{rl_slope:.4g} vs {static_slope:.4g}"))

    harvest = [_row(table, p, 'rl')['harvest_mean'] for p in powers]
    top = harvest[-1]
    checks.append(("p_e croissante en P_tx", all(a < b for a, b in zip(harvest, harvest[1:])),
                   ' < '.join(f"{h:.3g}" for h in harvest)))
    checks.append(("p_e >= p_r à 20 W", top >= cfg.energy.reflect_power_w, f"{top:.4g} W"))
    checks.append(("p_e dans [1e-5, 1e-2] W", 1e-5 <= top <= 1e-2, f"{top:.4g} W"))

    # P_tx si faible qu'aucun créneau n'atteint τ : débit exactement nul
    silent = run_episode(cfg.with_tx_power_w(1e-9).with_seed(seeds[0]), 'greedy').metrics.get_stats()
    checks.append(("débit nul quand η max < τ", silent['total_bits'] == 0.0, f"{silent['total_bits']:.4g} bits"))
    return checks


def main() -> int:
    parser = argparse.ArgumentParser(description="Contrôle des tendances du simulateur")
    parser.add_argument('--scenario', type=Path, default=TRENDS_SCENARIO)
    parser.add_argument('--seeds', default='0-19')
    parser.add_argument('--workers', type=int, default=Config.SWEEP_WORKERS)
    args = parser.parse_args()

    cfg = ScenarioConfig.load(args.scenario).ensure_valid()
    seeds = parse_seeds(args.seeds)

    checks = []
    checks += check_reference_altitude(cfg, seeds, args.workers)
    checks += check_altitude_trend(cfg, seeds, args.workers)
    checks += check_power_trend(cfg, seeds, args.workers)

    print("\n" + "=" * 60)
    print("  TENDANCES")
    print("=" * 60)
    print(tabulate(
        [[name, "✅" if ok else "❌", detail] for name, ok, detail in checks],
        headers=['critère', 'ok', 'valeurs'],
        tablefmt='orgtbl'
    ))
    failed = sum(1 for _, ok, _ in checks if not ok)
    print(f"\n{len(checks) - failed}/{len(checks)} critères respectés")
    return 0 if failed == 0 else 1


if __name__ == "__main__":
    sys.exit(main())
