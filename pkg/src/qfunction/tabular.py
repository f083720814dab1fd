"""
Q-fonction Tabulaire
====================

Stockage exact par cellule pour les espaces d'états finis des scénarios de
test. Même interface que ValueNetwork (evaluate / evaluate_batch / train),
plus la mise à jour de Q-learning appliquée telle quelle.

Usage:
    from src.qfunction.tabular import TabularQ

    table = TabularQ(beta=0.5, gamma=0.1)
    table.q_update('s0', 'a0', reward=10.0, next_state='s1', next_actions=['a0', 'a1'])
"""

from typing import Dict, Hashable, Iterable, Optional, Tuple

import numpy as np


class TabularQ:
    """
    Table Q(s, a), clés inconnues initialisées à 0

    Pour l'agent, une clé est le vecteur de caractéristiques arrondi ;
    train(features, q) applique Q ← (1 − β)·Q + β·q.
    """

    def __init__(self, beta: float = 1.0, gamma: float = 0.1, decimals: int = 6):
        """
        Args:
            beta: Taux d'apprentissage β ∈ (0, 1]
            gamma: Facteur d'actualisation γ ∈ [0, 1]
            decimals: Arrondi des caractéristiques pour former les clés
        """
        if not 0.0 < beta <= 1.0:
            raise ValueError(f"beta doit être dans (0, 1]: {beta}")
        if not 0.0 <= gamma <= 1.0:
            raise ValueError(f"gamma doit être dans [0, 1]: {gamma}")
        self.beta = beta
        self.gamma = gamma
        self.decimals = decimals
        self.table: Dict[Hashable, float] = {}

    def __len__(self) -> int:
        return len(self.table)

    # --- interface par état-action explicite ---

    def value(self, state: Hashable, action: Hashable) -> float:
        return self.table.get((state, action), 0.0)

    def max_value(self, state: Hashable, actions: Iterable[Hashable]) -> float:
        values = [self.value(state, action) for action in actions]
        return max(values) if values else 0.0

    def q_update(
        self,
        state: Hashable,
        action: Hashable,
        reward: float,
        next_state: Hashable,
        next_actions: Iterable[Hashable],
        beta: Optional[float] = None
    ) -> float:
        """
        Q(s, a) ← (1 − β)·Q(s, a) + β·(r + γ·max_a' Q(s', a'))

        Args:
            beta: β de ce pas (par défaut self.beta)

        Returns:
            Nouvelle valeur Q(s, a)
        """
        beta = self.beta if beta is None else beta
        if not 0.0 < beta <= 1.0:
            raise ValueError(f"beta doit être dans (0, 1]: {beta}")
        target = reward + self.gamma * self.max_value(next_state, next_actions)
        updated = (1.0 - beta) * self.value(state, action) + beta * target
        self.table[(state, action)] = updated
        return updated

    # --- interface commune avec ValueNetwork ---

    def key(self, features: np.ndarray) -> Tuple[float, ...]:
        return tuple(np.round(np.asarray(features, dtype=float), self.decimals).tolist())

    def evaluate(self, features: np.ndarray) -> float:
        return self.table.get(self.key(features), 0.0)

    def evaluate_batch(self, features: np.ndarray) -> np.ndarray:
        return np.array([self.evaluate(row) for row in np.atleast_2d(features)])

    def train(self, features: np.ndarray, target: float) -> float:
        """
        Q ← (1 − β)·Q + β·q sur la cellule des caractéristiques

        Returns:
            Perte (q − Q)² avant la mise à jour
        """
        key = self.key(features)
        current = self.table.get(key, 0.0)
        self.table[key] = (1.0 - self.beta) * current + self.beta * float(target)
        return (float(target) - current) ** 2

    def __repr__(self):
        return f"<TabularQ(cells={len(self)}, β={self.beta}, γ={self.gamma})>"
