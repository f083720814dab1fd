"""
Tests du Module RNG
===================

Flux aléatoires nommés et indépendants.
"""

import numpy as np
import pytest

from src.utils.rng import STREAM_NAMES, SeedStreams


def print_header(text):
    """Affiche un header"""
    print("\n" + "=" * 60)
    print(f"  {text}")
    print("=" * 60)


def print_success(text):
    """Affiche un succès"""
    print(f"✅ {text}")


def test_same_seed_same_draws():
    """Test 1 : Reproductibilité"""
    print_header("Test 1 : Même graine")

    first, second = SeedStreams(11), SeedStreams(11)
    for name in STREAM_NAMES:
        assert np.array_equal(first.get(name).random(8), second.get(name).random(8))
    assert not np.array_equal(SeedStreams(12).get('ue').random(8), SeedStreams(11).get('ue').random(8))

    print_success("Tirages identiques par flux")


def test_streams_are_independent():
    """Test 2 : Indépendance des flux"""
    print_header("Test 2 : Indépendance")

    quiet, busy = SeedStreams(3), SeedStreams(3)
    busy.get('agent').random(1000)
    busy.get('channel').standard_normal(500)
    assert np.array_equal(quiet.get('ue').random(16), busy.get('ue').random(16))
    assert np.array_equal(quiet.get('layout').random(16), busy.get('layout').random(16))

    print_success("Tirer dans un flux ne décale pas les autres")


def test_unknown_stream():
    """Test 3 : Flux inconnu"""
    print_header("Test 3 : KeyError")

    streams = SeedStreams(0)
    with pytest.raises(KeyError):
        streams.get('weather')
    assert repr(streams) == "<SeedStreams(seed=0)>"

    print_success("KeyError levée")
