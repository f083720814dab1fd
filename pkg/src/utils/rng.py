"""
Graines et flux aléatoires reproductibles
=========================================

Chaque préoccupation du simulateur (disposition des arbres, marche de l'UE,
canal, exploration de l'agent) tire ses nombres d'un flux numpy indépendant
dérivé de la graine de l'épisode. Ajouter des tirages dans un flux ne décale
jamais les autres.

Usage:
    from src.utils.rng import SeedStreams

    streams = SeedStreams(seed=7)
    channel_rng = streams.get('channel')
"""

from typing import Dict

import numpy as np


STREAM_NAMES = ('layout', 'ue', 'channel', 'agent')


class SeedStreams:
    """Flux nommés dérivés d'une graine unique via SeedSequence"""

    def __init__(self, seed: int):
        self.seed = int(seed)
        children = np.random.SeedSequence(self.seed).spawn(len(STREAM_NAMES))
        self._streams: Dict[str, np.random.Generator] = {
            name: np.random.default_rng(child)
            for name, child in zip(STREAM_NAMES, children)
        }

    def get(self, name: str) -> np.random.Generator:
        """Retourne le générateur du flux `name`"""
        if name not in self._streams:
            raise KeyError(f"Flux aléatoire inconnu: {name}")
        return self._streams[name]

    def __repr__(self):
        return f"<SeedStreams(seed={self.seed})>"
