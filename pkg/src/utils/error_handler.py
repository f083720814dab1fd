"""
Error Handler - Gestionnaire d'Erreurs Global
==============================================

Hiérarchie d'exceptions du simulateur et classification des erreurs en
codes de sortie pour la CLI.

Usage:
    from src.utils.error_handler import ErrorHandler, ConfigError

    handler = ErrorHandler()
    try:
        run()
    except Exception as e:
        exit_code = handler.handle_error(e, context={'command': 'run'})
"""

from typing import Any, Dict, List, Optional
from enum import Enum
import traceback

from src.utils.logger import get_logger


class SimulationError(Exception):
    """Erreur de base du simulateur"""


class ConfigError(SimulationError):
    """
    Configuration de scénario invalide

    Attributes:
        errors: Liste de messages, chacun préfixé par le chemin du champ
    """

    def __init__(self, errors: List[str]):
        self.errors = list(errors)
        super().__init__("Configuration invalide: " + "; ".join(self.errors))


class ScenarioGeometryError(SimulationError):
    """Géométrie de scénario mal formée (ex: aucune zone marchable)"""


class HistoryOrderError(SimulationError):
    """Échantillon de mouvement hors ordre chronologique"""


class TrainingDivergedError(SimulationError):
    """Sortie, cible ou gradient non fini dans la fonction de valeur"""


class SweepError(SimulationError):
    """
    Échec d'un épisode pendant un balayage

    Attributes:
        failing: Tuple identifiant l'épisode (axe, valeur, politique, graine)
    """

    def __init__(self, failing: Dict[str, Any], cause: Exception):
        self.failing = dict(failing)
        self.cause = cause
        super().__init__(f"Balayage interrompu sur {self.failing}: {cause}")


class ErrorType(Enum):
    """Types d'erreurs"""
    CONFIG = "config"          # Scénario / environnement invalide
    GEOMETRY = "geometry"      # Scénario géométriquement incohérent
    TRAINING = "training"      # Divergence de la fonction de valeur
    IO = "io"                  # Lecture / écriture de fichiers
    RUNTIME = "runtime"        # Toute autre erreur


class ErrorHandler:
    """
    Gestionnaire centralisé des erreurs

    Fonctionnalités :
    - Classification des exceptions
    - Code de sortie par type (0 succès, 2 config, 3 exécution)
    - Logging détaillé avec contexte
    - Statistiques par type
    """

    EXIT_CODES = {
        ErrorType.CONFIG: 2,
        ErrorType.GEOMETRY: 3,
        ErrorType.TRAINING: 3,
        ErrorType.IO: 3,
        ErrorType.RUNTIME: 3,
    }

    def __init__(self):
        """Initialise le gestionnaire d'erreurs"""
        self.logger = get_logger(__name__)

        self.error_counts = {error_type: 0 for error_type in ErrorType}
        self.total_errors = 0

    def classify_error(self, error: Exception) -> ErrorType:
        """
        Classifie une erreur selon son type

        Args:
            error: Exception à classifier

        Returns:
            Type d'erreur
        """
        if isinstance(error, SweepError):
            return self.classify_error(error.cause)
        if isinstance(error, ConfigError):
            return ErrorType.CONFIG
        if isinstance(error, ScenarioGeometryError):
            return ErrorType.GEOMETRY
        if isinstance(error, TrainingDivergedError):
            return ErrorType.TRAINING
        if isinstance(error, OSError):
            return ErrorType.IO
        return ErrorType.RUNTIME

    def handle_error(
        self,
        error: Exception,
        context: Optional[Dict[str, Any]] = None
    ) -> int:
        """
        Loggue une erreur et retourne le code de sortie associé

        Args:
            error: Exception
            context: Contexte additionnel

        Returns:
            Code de sortie de la CLI
        """
        error_type = self.classify_error(error)

        self.error_counts[error_type] += 1
        self.total_errors += 1

        details = {
            'error_type': error_type.value,
            'error_message': str(error),
            'error_class': type(error).__name__,
            **(context or {})
        }
        if isinstance(error, ConfigError):
            details['fields'] = error.errors
        if isinstance(error, SweepError):
            details['failing'] = error.failing
        if error_type is ErrorType.RUNTIME:
            details['traceback'] = ''.join(traceback.format_exception(error))

        self.logger.error(
            f"Erreur {error_type.value}: {error}",
            extra={'context': details}
        )

        return self.EXIT_CODES[error_type]

    def get_stats(self) -> Dict[str, Any]:
        """
        Récupère les statistiques d'erreurs

        Returns:
            Dict avec les stats
        """
        return {
            'total_errors': self.total_errors,
            'errors_by_type': {
                error_type.value: count
                for error_type, count in self.error_counts.items()
                if count > 0
            }
        }

    def reset_stats(self):
        """Réinitialise les statistiques"""
        self.error_counts = {error_type: 0 for error_type in ErrorType}
        self.total_errors = 0
