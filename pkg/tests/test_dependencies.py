"""
Tests des Dépendances
=====================

Vérifie que toutes les bibliothèques de requirements.txt sont installées.
"""

import importlib

import pytest


def print_header(text):
    """Affiche un en-tête formaté"""
    print("\n" + "=" * 60)
    print(f"  {text}")
    print("=" * 60)


def print_success(text):
    """Affiche un message de succès"""
    print(f"✅ {text}")


@pytest.mark.parametrize("module_name", ['numpy', 'pandas', 'yaml', 'dotenv', 'colorama', 'tabulate', 'tqdm'])
def test_runtime_libraries(module_name):
    """Test 1 : Bibliothèques d'exécution"""
    print_header(f"Test 1 : {module_name}")

    module = importlib.import_module(module_name)
    version = getattr(module, '__version__', 'n/a')

    print_success(f"{module_name} {version}")


@pytest.mark.parametrize("module_name", ['pytest', 'pytest_cov', 'pytest_mock'])
def test_testing_libraries(module_name):
    """Test 2 : Bibliothèques de test"""
    print_header(f"Test 2 : {module_name}")

    importlib.import_module(module_name)

    print_success(f"{module_name} importé")


def test_numpy_features():
    """Test 3 : Fonctions numpy utilisées par le simulateur"""
    print_header("Test 3 : numpy")

    import numpy as np

    streams = np.random.SeedSequence(0).spawn(2)
    assert len(streams) == 2
    assert np.random.default_rng(streams[0]).standard_normal(2).shape == (2,)
    assert np.linalg.norm(np.array([3.0 + 4.0j])) == 5.0

    print_success("SeedSequence, Generator, algèbre complexe")
