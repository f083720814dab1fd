"""
Tests du Module Reporting
=========================

Journal par créneau, agrégats et export CSV / JSON.
"""

import math

import pandas as pd
import pytest

from src.engine.episode_runner import run_episode
from src.engine.scenario_config import ScenarioConfig
from src.reporting.episode_metrics import (
    COLUMNS,
    COMMUNICATION,
    MOBILITY,
    EpisodeMetrics,
    SlotRecord,
    aggregate_records,
)
from src.reporting.report_writer import (
    emit,
    frames_match,
    parse_provenance,
    provenance_line,
    read_report,
)


PROVENANCE = {'config_hash': 'abcdef0123456789', 'seed': 4, 'policy': 'greedy'}


def print_header(text):
    """Affiche un header"""
    print("\n" + "=" * 60)
    print(f"  {text}")
    print("=" * 60)


def print_success(text):
    """Affiche un succès"""
    print(f"✅ {text}")


def record(slot, stage=COMMUNICATION, rate=1e8, p_e=0.004, power=119.0, energy=100.0, los=True):
    hover = stage == COMMUNICATION
    return SlotRecord(
        slot=slot,
        time_s=slot * 0.1,
        stage=stage,
        x=1.0 / 3.0,
        y=-2.5,
        z=40.0,
        ue_x=0.1 * slot,
        ue_y=0.0,
        omega=math.pi / 7,
        eta_db=12.345678901234567 if hover else float('nan'),
        rate_bps=rate if hover else 0.0,
        reward_bits=rate * 0.1 if hover else 0.0,
        p_e_w=p_e if hover else 0.0,
        power_w=power,
        energy_j=energy,
        los_bs_ir=True,
        los_ir_ue=los,
        body_shadowed=not los,
        speed_mps=0.0 if hover else 20.0,
    )


def sample_metrics():
    metrics = EpisodeMetrics(dt_slot=0.1, initial_energy=120.0)
    metrics.record_slot(record(0, rate=2e8, los=True, energy=108.0))
    metrics.record_slot(record(1, stage=MOBILITY, power=150.0, energy=93.0))
    metrics.record_slot(record(2, rate=0.0, p_e=0.001, los=False, energy=81.0))
    return metrics


def test_aggregates():
    """Test 1 : Agrégats d'un journal"""
    print_header("Test 1 : get_stats")

    stats = sample_metrics().get_stats()
    assert stats['episode_slots'] == 3
    assert stats['hover_slots'] == 2
    assert stats['mobility_slots'] == 1
    assert stats['mean_rate_bps'] == pytest.approx(1e8)
    assert stats['los_fraction'] == 0.5
    assert stats['mean_harvest_w'] == pytest.approx(0.0025)
    assert stats['total_bits'] == pytest.approx(2e7)
    assert stats['energy_consumed_j'] == pytest.approx(11.9 + 15.0 + 11.9)
    assert stats['final_energy_j'] == 81.0

    empty = aggregate_records([], 0.1, 120.0)
    assert empty['episode_slots'] == 0 and empty['mean_rate_bps'] == 0.0
    assert empty['final_energy_j'] == 120.0

    print_success("Moyennes sur les créneaux de communication")


def test_frame_layout():
    """Test 2 : Colonnes du journal"""
    print_header("Test 2 : to_frame")

    frame = sample_metrics().to_frame()
    assert list(frame.columns) == COLUMNS
    assert frame['los_ir_ue'].dtype == bool
    assert math.isnan(frame['eta_db'].iloc[1])

    metrics = sample_metrics()
    metrics.reset_stats()
    assert len(metrics) == 0

    print_success("Ordre stable, booléens typés")


def test_header_only_csv(tmp_path):
    """Test 3 : Journal vide"""
    print_header("Test 3 : CSV sans ligne")

    path = emit(EpisodeMetrics(0.1).to_frame(), tmp_path / 'empty.csv', 'csv', PROVENANCE)
    lines = path.read_text(encoding='utf-8').splitlines()

    assert lines[0] == provenance_line(PROVENANCE)
    assert lines[1] == ','.join(COLUMNS)
    assert len(lines) == 2

    print_success("Provenance + en-tête seulement")


def test_csv_round_trip(tmp_path):
    """Test 4 : Écriture puis relecture CSV"""
    print_header("Test 4 : CSV aller-retour")

    metrics = sample_metrics()
    path = emit(metrics.to_frame(), tmp_path / 'run.csv', 'csv', PROVENANCE)
    provenance, frame = read_report(path)

    assert provenance == {'config_hash': 'abcdef0123456789', 'seed': '4', 'policy': 'greedy'}
    assert frames_match(frame, metrics.to_frame())
    assert frame['x'].iloc[0] == 1.0 / 3.0
    assert list(frame['los_ir_ue']) == [1, 1, 0]

    print_success("Valeurs relues bit à bit")


def test_json_report(tmp_path):
    """Test 5 : Export JSON avec agrégats"""
    print_header("Test 5 : JSON")

    metrics = sample_metrics()
    path = emit(metrics.to_frame(), tmp_path / 'run.json', 'json', PROVENANCE, metrics.get_stats())
    provenance, frame = read_report(path)

    assert provenance == PROVENANCE
    assert list(frame.columns) == COLUMNS
    assert frame['rate_bps'].iloc[0] == 2e8
    assert frame['eta_db'].isna().iloc[1]

    with pytest.raises(ValueError):
        emit(metrics.to_frame(), tmp_path / 'run.xml', 'xml', PROVENANCE)

    print_success("Provenance typée, NaN conservé")


def test_aggregates_recomputed_from_file(tmp_path):
    """Test 6 : Agrégats recalculés depuis le fichier"""
    print_header("Test 6 : Relecture des agrégats")

    cfg = ScenarioConfig.from_dict({'energy': {'initial_energy_j': 120.0}})
    metrics = run_episode(cfg, 'greedy').metrics
    _, frame = read_report(emit(metrics.to_frame(), tmp_path / 'run.csv', 'csv', PROVENANCE))

    rebuilt = [
        SlotRecord(**{**row, 'los_bs_ir': bool(row['los_bs_ir']), 'los_ir_ue': bool(row['los_ir_ue']),
                      'body_shadowed': bool(row['body_shadowed'])})
        for row in frame.to_dict('records')
    ]
    assert aggregate_records(rebuilt, cfg.slot_s, 120.0) == metrics.get_stats()

    print_success("Agrégats identiques")


def test_identical_bytes(tmp_path):
    """Test 7 : Deux exécutions, mêmes octets"""
    print_header("Test 7 : Octets identiques")

    cfg = ScenarioConfig.from_dict({'energy': {'initial_energy_j': 120.0}, 'run': {'seed': 5}})
    first = emit(run_episode(cfg, 'greedy').metrics.to_frame(), tmp_path / 'a.csv', 'csv', PROVENANCE)
    second = emit(run_episode(cfg, 'greedy').metrics.to_frame(), tmp_path / 'b.csv', 'csv', PROVENANCE)
    assert first.read_bytes() == second.read_bytes()

    print_success("Fichiers identiques")


def test_provenance_parsing():
    """Test 8 : Ligne de provenance"""
    print_header("Test 8 : parse_provenance")

    line = provenance_line({'config_hash': 'ff', 'axis': 'altitude', 'seeds': '0 1 2'})
    assert line == '# config_hash=ff, axis=altitude, seeds=0 1 2'
    assert parse_provenance(line) == {'config_hash': 'ff', 'axis': 'altitude', 'seeds': '0 1 2'}
    assert parse_provenance('slot,time_s') == {}

    print_success("Format `# clé=valeur, ...`")


def test_frames_match():
    """Test 9 : Comparaison de tables"""
    print_header("Test 9 : frames_match")

    left = pd.DataFrame({'a': [1.0, float('nan')], 'b': ['x', 'y']})
    assert frames_match(left, left.copy())
    assert not frames_match(left, pd.DataFrame({'a': [1.0, 2.0], 'b': ['x', 'y']}))
    assert not frames_match(left, left[['b', 'a']])

    print_success("NaN égal à NaN, ordre des colonnes vérifié")


def test_display_stats(capsys):
    """Test 10 : Affichage des agrégats"""
    print_header("Test 10 : display_stats")

    sample_metrics().display_stats("ÉPISODE TEST")
    output = capsys.readouterr().out
    assert "ÉPISODE TEST" in output
    assert "100.000 Mbit/s" in output
    assert "50.0%" in output

    print_success("Sections créneaux, liaison et énergie")
