#!/usr/bin/env python3
"""
Script de vérification de l'installation
=========================================

Vérifie que les dépendances du simulateur sont installées, que la
structure du projet est en place et que les scénarios YAML se chargent.

Usage:
    python verify_installation.py
"""

import importlib
import sys
from pathlib import Path


BASE_DIR = Path(__file__).resolve().parent


def print_header(text):
    """Affiche un en-tête formaté"""
    print("\n" + "=" * 60)
    print(f"  {text}")
    print("=" * 60)


def print_success(text):
    """Affiche un message de succès"""
    print(f"✅ {text}")


def print_error(text):
    """Affiche un message d'erreur"""
    print(f"❌ {text}")


def print_warning(text):
    """Affiche un avertissement"""
    print(f"⚠️  {text}")


def check_python_version():
    """Vérifie la version de Python"""
    print_header("Vérification de Python")

    version = sys.version_info
    print(f"Version Python: {version.major}.{version.minor}.{version.micro}")

    if version >= (3, 10):
        print_success("Version Python compatible (3.10+)")
        return True
    print_error("Python 3.10+ requis")
    return False


def check_directory_structure():
    """Vérifie la structure des dossiers"""
    print_header("Vérification de la structure des dossiers")

    required_dirs = [
        "config/scenarios",
        "src/world",
        "src/channel",
        "src/reflector",
        "src/energy",
        "src/predictor",
        "src/qfunction",
        "src/agent",
        "src/engine",
        "src/reporting",
        "src/utils",
        "tests",
    ]

    all_good = True
    for dir_path in required_dirs:
        if (BASE_DIR / dir_path).is_dir():
            print_success(f"Dossier '{dir_path}' présent")
        else:
            print_error(f"Dossier '{dir_path}' manquant")
            all_good = False

    if not (BASE_DIR / ".env").exists():
        print_warning("Fichier .env non trouvé. Copier .env.template vers .env")

    return all_good


def check_dependencies():
    """Vérifie les dépendances Python"""
    print_header("Vérification des dépendances Python")

    all_good = True
    for module_name in ("numpy", "pandas", "yaml", "dotenv", "colorama", "tabulate", "tqdm", "pytest"):
        try:
            importlib.import_module(module_name)
            print_success(f"Module '{module_name}' installé")
        except ImportError:
            print_error(f"Module '{module_name}' manquant")
            all_good = False

    return all_good


def check_scenarios():
    """Charge et valide chaque scénario fourni"""
    print_header("Vérification des scénarios")

    sys.path.insert(0, str(BASE_DIR))
    try:
        from src.engine.scenario_config import ScenarioConfig
    except ImportError as e:
        print_error(f"Import impossible: {e}")
        return False

    all_good = True
    for path in sorted((BASE_DIR / "config" / "scenarios").glob("*.yaml")):
        try:
            cfg = ScenarioConfig.load(path)
            print_success(f"{path.name} (hash {cfg.config_hash()})")
        except Exception as e:
            print_error(f"{path.name}: {e}")
            all_good = False

    return all_good


def print_summary(checks):
    """Affiche le résumé des vérifications"""
    print_header("RÉSUMÉ")

    passed = sum(checks.values())
    print(f"\nVérifications passées: {passed}/{len(checks)}")

    if passed == len(checks):
        print_success("✨ Installation complète et fonctionnelle!")
        print("\n📋 Prochaines étapes:")
        print("  1. python main.py run --policy static")
        print("  2. python main.py sweep --axis tx-power --values 1,10,20 --seeds 0-4")
        print("  3. pytest")
        return True

    print_error("Certaines vérifications ont échoué")
    for check_name, result in checks.items():
        if not result:
            print(f"  - Corriger: {check_name}")
    return False


def main():
    """Fonction principale"""
    print("\n" + "🛸 SIMULATEUR UAV-IR - VÉRIFICATION D'INSTALLATION".center(60))

    checks = {
        "Version Python": check_python_version(),
        "Structure des dossiers": check_directory_structure(),
        "Dépendances Python": check_dependencies(),
        "Scénarios": check_scenarios(),
    }

    sys.exit(0 if print_summary(checks) else 1)


if __name__ == "__main__":
    main()
