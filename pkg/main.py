"""
Simulateur UAV-IR - Point d'Entrée
==================================

Sous-commandes :
    run     un épisode évalué (rl | greedy | static)
    sweep   balayage altitude ou puissance d'émission
    train   échauffement seul : courbe d'apprentissage + sauvegarde de φ

Codes de sortie : 0 succès, 2 configuration invalide, 3 erreur d'exécution.

Usage:
    python main.py run --policy rl --seed 3 --out data/run.csv
    python main.py sweep --axis altitude --values 20,40,60,80,100 --policies rl,greedy,static --seeds 0-19
    python main.py train --episodes 30 --save data/phi.txt --out data/curve.csv
"""

import argparse
import sys
from pathlib import Path
from typing import List, Optional

import pandas as pd

from config.config import Config
from src.engine.episode_runner import run_episode, train
from src.engine.scenario_config import POLICIES, ScenarioConfig
from src.engine.sweep import SWEEP_AXES, display_table, run_sweep
from src.reporting.report_writer import FORMATS, emit
from src.utils.error_handler import ConfigError, ErrorHandler
from src.utils.logger import get_logger, log_function_call


logger = get_logger(__name__)


def parse_floats(text: str) -> List[float]:
    """'20,40,60' → [20.0, 40.0, 60.0]"""
    return [float(item) for item in text.split(',') if item.strip()]


def parse_seeds(text: str) -> List[int]:
    """'0-19' ou '1,4,7' → liste de graines"""
    seeds = []
    for item in text.split(','):
        item = item.strip()
        if not item:
            continue
        if '-' in item[1:]:
            low, high = item.split('-', 1)
            seeds.extend(range(int(low), int(high) + 1))
        else:
            seeds.append(int(item))
    return seeds


def parse_policies(text: str) -> List[str]:
    return [item.strip() for item in text.split(',') if item.strip()]


def load_scenario(args: argparse.Namespace) -> ScenarioConfig:
    cfg = ScenarioConfig.load(args.scenario)
    if getattr(args, 'seed', None) is not None:
        cfg = cfg.with_seed(args.seed)
    return cfg


def output_path(args: argparse.Namespace, stem: str) -> Path:
    """--out, ou OUTPUT_DIR/<stem>.<format> par défaut"""
    if args.out is not None:
        return args.out
    return Config.OUTPUT_DIR / f"{stem}.{args.format}"


def show_config(cfg: ScenarioConfig):
    print("\n" + "=" * 60)
    print("  SCÉNARIO")
    print("=" * 60)
    for key, value in cfg.display().items():
        print(f"  {key:18} {value}")
    print("=" * 60)


@log_function_call
def command_run(args: argparse.Namespace) -> int:
    cfg = load_scenario(args)
    if args.show_config:
        show_config(cfg)
    result = run_episode(cfg, args.policy, args.warm_start)
    result.metrics.display_stats(title=f"ÉPISODE {args.policy.upper()} (seed {result.seed})")
    out = output_path(args, f"run_{args.policy}_seed{result.seed}")
    emit(result.metrics.to_frame(), out, args.format, result.provenance, result.metrics.get_stats())
    print(f"\n💾 Journal écrit: {out}")
    return 0


@log_function_call
def command_sweep(args: argparse.Namespace) -> int:
    cfg = load_scenario(args)
    if args.show_config:
        show_config(cfg)
    result = run_sweep(
        cfg,
        args.axis,
        parse_floats(args.values),
        parse_policies(args.policies),
        parse_seeds(args.seeds),
        max_workers=args.workers,
        warm_start=args.warm_start,
    )
    display_table(result.table)
    out = output_path(args, f"sweep_{result.axis}")
    emit(result.table, out, args.format, result.provenance)
    print(f"\n💾 Table écrite: {out}")
    if args.runs_out:
        emit(result.runs, args.runs_out, args.format, result.provenance)
    return 0


@log_function_call
def command_train(args: argparse.Namespace) -> int:
    cfg = load_scenario(args)
    if cfg.agent.value_function != 'network':
        raise ConfigError(["agent.value_function: la sous-commande train sauvegarde un réseau"])
    agent, curve = train(cfg, args.episodes, args.warm_start)
    frame = pd.DataFrame(curve)
    provenance = {'config_hash': cfg.config_hash(), 'seed': cfg.run.seed, 'policy': 'rl'}
    emit(frame, output_path(args, "train_curve"), args.format, provenance)
    if args.save:
        agent.value_fn.save(args.save)
    print(f"\n✅ Entraînement terminé: {len(curve)} épisodes, ε = {agent.epsilon:.4f}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(description="Simulateur de déploiement d'un réflecteur porté par drone")
    subparsers = parser.add_subparsers(dest='command', required=True)

    def common(sub: argparse.ArgumentParser):
        sub.add_argument('--scenario', type=Path, default=Config.DEFAULT_SCENARIO)
        sub.add_argument('--out', type=Path, default=None, help=f"défaut: {Config.OUTPUT_DIR}/<nom>.<format>")
        sub.add_argument('--format', choices=FORMATS, default='csv')
        sub.add_argument('--warm-start', type=Path, default=None)
        sub.add_argument('--show-config', action='store_true')

    run = subparsers.add_parser('run', help="Un épisode évalué")
    common(run)
    run.add_argument('--policy', choices=POLICIES, default='rl')
    run.add_argument('--seed', type=int, default=None)
    run.set_defaults(handler=command_run)

    sweep = subparsers.add_parser('sweep', help="Balayage de paramètres")
    common(sweep)
    sweep.add_argument('--axis', choices=[a.replace('_', '-') for a in SWEEP_AXES] + list(SWEEP_AXES), required=True)
    sweep.add_argument('--values', required=True, help="ex: 20,40,60 (m) ou 1,5,10,20 (W)")
    sweep.add_argument('--policies', default=','.join(POLICIES))
    sweep.add_argument('--seeds', default='0-19', help="ex: 0-19 ou 1,2,3")
    sweep.add_argument('--workers', type=int, default=Config.SWEEP_WORKERS)
    sweep.add_argument('--runs-out', type=Path, default=None, help="Une ligne par épisode")
    sweep.set_defaults(handler=command_sweep)

    training = subparsers.add_parser('train', help="Échauffement seul et sauvegarde de φ")
    common(training)
    training.add_argument('--seed', type=int, default=None)
    training.add_argument('--episodes', type=int, default=None)
    training.add_argument('--save', type=Path, default=None)
    training.set_defaults(handler=command_train)

    return parser


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    handler = ErrorHandler()
    try:
        return args.handler(args)
    except Exception as e:
        return handler.handle_error(e, context={'command': args.command})


if __name__ == "__main__":
    sys.exit(main())
