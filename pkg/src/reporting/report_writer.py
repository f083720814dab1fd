"""
Report Writer - Export CSV / JSON
=================================

Écrit les journaux d'épisode et les tables de balayage. Ordre des colonnes
stable, flottants à 17 chiffres significatifs, booléens en entiers, et une
première ligne de provenance (hash de configuration, graine, politique).

Usage:
    from src.reporting.report_writer import emit, read_report

    emit(metrics.to_frame(), 'output/run.csv', 'csv', {'config_hash': h, 'seed': 0, 'policy': 'rl'})
    provenance, frame = read_report('output/run.csv')
"""

import json
from pathlib import Path
from typing import Any, Dict, Optional, Tuple, Union

import numpy as np
import pandas as pd

from src.utils.logger import get_logger


logger = get_logger(__name__)

FORMATS = ('csv', 'json')
FLOAT_FORMAT = '%.17g'
PROVENANCE_PREFIX = '# '


def provenance_line(provenance: Dict[str, Any]) -> str:
    """Ligne de provenance : `# config_hash=..., seed=..., policy=...`"""
    return PROVENANCE_PREFIX + ', '.join(f"{key}={value}" for key, value in provenance.items())


def parse_provenance(line: str) -> Dict[str, str]:
    """Inverse de provenance_line (valeurs laissées en texte)"""
    if not line.startswith(PROVENANCE_PREFIX):
        return {}
    pairs = (item.split('=', 1) for item in line[len(PROVENANCE_PREFIX):].strip().split(', ') if '=' in item)
    return {key: value for key, value in pairs}


def _csv_ready(frame: pd.DataFrame) -> pd.DataFrame:
    out = frame.copy()
    for column in out.columns:
        if out[column].dtype == bool:
            out[column] = out[column].astype(int)
    return out


def _json_value(value: Any) -> Any:
    if isinstance(value, (np.bool_, bool)):
        return bool(value)
    if isinstance(value, np.integer):
        return int(value)
    if isinstance(value, (np.floating, float)):
        return float(value)
    return value


def _json_rows(frame: pd.DataFrame):
    return [
        {column: _json_value(value) for column, value in zip(frame.columns, row)}
        for row in frame.itertuples(index=False, name=None)
    ]


def emit(
    frame: pd.DataFrame,
    path: Union[str, Path],
    fmt: str,
    provenance: Dict[str, Any],
    aggregates: Optional[Dict[str, Any]] = None
) -> Path:
    """
    Écrit une table (journal par créneau ou table de balayage)

    Args:
        frame: Données, colonnes dans l'ordre d'écriture
        path: Fichier de sortie
        fmt: 'csv' ou 'json'
        provenance: Clés de provenance (config_hash, seed, ...)
        aggregates: Agrégats joints au JSON (ignorés en CSV, recalculables)

    Returns:
        Chemin écrit

    Raises:
        ValueError: Format inconnu
        OSError: Écriture impossible (message avec le chemin)
    """
    if fmt not in FORMATS:
        raise ValueError(f"Format inconnu: {fmt} (attendu: {', '.join(FORMATS)})")

    path = Path(path)
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        if fmt == 'csv':
            with path.open('w', encoding='utf-8', newline='') as handle:
                handle.write(provenance_line(provenance) + '\n')
                _csv_ready(frame).to_csv(handle, index=False, float_format=FLOAT_FORMAT, lineterminator='\n')
        else:
            document = {
                'provenance': {key: _json_value(value) for key, value in provenance.items()},
                'columns': list(frame.columns),
                'rows': _json_rows(frame),
            }
            if aggregates is not None:
                document['aggregates'] = {key: _json_value(value) for key, value in aggregates.items()}
            with path.open('w', encoding='utf-8') as handle:
                json.dump(document, handle, indent=2, ensure_ascii=False)
                handle.write('\n')
    except OSError as e:
        raise OSError(f"Écriture impossible: {path}: {e}") from e

    logger.info(
        "Rapport écrit",
        extra={'context': {'path': str(path), 'format': fmt, 'rows': len(frame)}}
    )
    return path


def read_report(path: Union[str, Path]) -> Tuple[Dict[str, Any], pd.DataFrame]:
    """
    Relit un fichier écrit par emit()

    Returns:
        (provenance, DataFrame) ; en CSV les valeurs de provenance restent du texte
    """
    path = Path(path)
    if path.suffix == '.json':
        with path.open('r', encoding='utf-8') as handle:
            document = json.load(handle)
        frame = pd.DataFrame(document['rows'], columns=document['columns'])
        return document['provenance'], frame

    with path.open('r', encoding='utf-8') as handle:
        first = handle.readline().rstrip('\n')
    frame = pd.read_csv(path, comment='#', float_precision='round_trip')
    return parse_provenance(first), frame


def frames_match(left: pd.DataFrame, right: pd.DataFrame) -> bool:
    """Égalité numérique exacte colonne par colonne (NaN == NaN)"""
    if list(left.columns) != list(right.columns) or len(left) != len(right):
        return False
    for column in left.columns:
        a, b = left[column].to_numpy(), right[column].to_numpy()
        if a.dtype.kind in 'fcbiu' and b.dtype.kind in 'fcbiu':
            a, b = a.astype(float), b.astype(float)
            same = (a == b) | (np.isnan(a) & np.isnan(b))
            if not bool(np.all(same)):
                return False
        elif not all(str(x) == str(y) for x, y in zip(a, b)):
            return False
    return True
