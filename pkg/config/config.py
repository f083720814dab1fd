"""
Module de Configuration
=======================

Charge et gère les variables d'environnement du simulateur.

Les paramètres physiques d'un scénario (géométrie, radio, énergie, agent)
ne vivent PAS ici : ils sont dans les fichiers YAML de config/scenarios/
et sont chargés par src.engine.scenario_config. Ce module ne gère que
le comportement du processus (logs, dossiers de sortie, parallélisme).

Usage:
    from config.config import Config

    log_level = Config.LOG_LEVEL
    scenario = Config.DEFAULT_SCENARIO
"""

import os
from pathlib import Path
from dotenv import load_dotenv


# Charger le fichier .env
BASE_DIR = Path(__file__).resolve().parent.parent
ENV_FILE = BASE_DIR / '.env'

load_dotenv(ENV_FILE)


class Config:
    """
    Classe de configuration centralisant toutes les variables d'environnement
    """

    # === LOGGING CONFIGURATION ===
    LOG_LEVEL = os.getenv('LOG_LEVEL', 'INFO')
    LOG_TO_FILE = os.getenv('LOG_TO_FILE', 'false').lower() == 'true'
    LOG_DIR = Path(os.getenv('LOG_DIR', './logs'))

    # === SORTIES ===
    OUTPUT_DIR = Path(os.getenv('OUTPUT_DIR', './data'))

    # === SCENARIO ===
    DEFAULT_SCENARIO = Path(os.getenv(
        'DEFAULT_SCENARIO',
        str(BASE_DIR / 'config' / 'scenarios' / 'reference.yaml')
    ))

    # === PERFORMANCE SETTINGS ===
    SWEEP_WORKERS = int(os.getenv('SWEEP_WORKERS', 1))

    @classmethod
    def validate_config(cls):
        """
        Valide la configuration et retourne les erreurs potentielles

        Returns:
            tuple: (is_valid, list_of_errors)
        """
        errors = []

        if cls.LOG_LEVEL.upper() not in ('DEBUG', 'INFO', 'WARNING', 'ERROR', 'CRITICAL'):
            errors.append(f"LOG_LEVEL invalide: {cls.LOG_LEVEL}")

        if cls.SWEEP_WORKERS < 1:
            errors.append("SWEEP_WORKERS doit être >= 1")

        if not cls.DEFAULT_SCENARIO.suffix.lower() in ('.yaml', '.yml'):
            errors.append("DEFAULT_SCENARIO doit pointer vers un fichier YAML")

        return len(errors) == 0, errors

    @classmethod
    def display_config(cls):
        """Retourne la configuration actuelle sous forme lisible"""
        return {
            'Log Level': cls.LOG_LEVEL,
            'Log To File': cls.LOG_TO_FILE,
            'Log Dir': str(cls.LOG_DIR),
            'Output Dir': str(cls.OUTPUT_DIR),
            'Default Scenario': str(cls.DEFAULT_SCENARIO),
            'Sweep Workers': cls.SWEEP_WORKERS,
        }


# Validation automatique au chargement
if __name__ != "__main__":
    is_valid, errors = Config.validate_config()
    if not is_valid:
        import warnings
        for error in errors:
            warnings.warn(f"Configuration Warning: {error}")
