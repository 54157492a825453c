"""
Somma compensata (variante di Neumaier dell'algoritmo di Kahan).
Usata da tutte le serie alternanti del progetto.
"""
import math
from typing import Iterable

import numpy as np


class CompensatedSum:
    """
    Accumulatore con compensazione dell'errore di arrotondamento.

    Tiene traccia anche del massimo |termine| sommato, che serve a stimare
    la cancellazione di una serie alternante.
    """

    def __init__(self, start: float = 0.0):
        self._sum = float(start)
        self._compensation = 0.0
        self.max_abs_term = abs(float(start))
        self.count = 0

    def add(self, term: float) -> "CompensatedSum":
        term = float(term)
        total = self._sum + term
        if abs(self._sum) >= abs(term):
            self._compensation += (self._sum - total) + term
        else:
            self._compensation += (term - total) + self._sum
        self._sum = total
        self.max_abs_term = max(self.max_abs_term, abs(term))
        self.count += 1
        return self

    def extend(self, terms: Iterable[float]) -> "CompensatedSum":
        for term in terms:
            self.add(term)
        return self

    @property
    def value(self) -> float:
        return self._sum + self._compensation

    def cancellation_ratio(self) -> float:
        """Rapporto max|termine| / |somma| (inf se la somma è nulla)."""
        total = abs(self.value)
        if total == 0.0:
            return math.inf if self.max_abs_term > 0 else 1.0
        return self.max_abs_term / total

    def __float__(self) -> float:
        return self.value


def compensated_sum(terms: Iterable[float]) -> float:
    """Somma compensata di una sequenza di termini."""
    return CompensatedSum().extend(terms).value


class CompensatedArraySum:
    """Versione elemento per elemento di CompensatedSum per array numpy."""

    def __init__(self, size: int):
        self._sum = np.zeros(size)
        self._compensation = np.zeros(size)
        self.max_abs_term = 0.0

    def add(self, term: np.ndarray) -> "CompensatedArraySum":
        term = np.asarray(term, dtype=float)
        total = self._sum + term
        larger = np.abs(self._sum) >= np.abs(term)
        self._compensation += np.where(
            larger, (self._sum - total) + term, (term - total) + self._sum
        )
        self._sum = total
        if term.size:
            self.max_abs_term = max(self.max_abs_term, float(np.max(np.abs(term))))
        return self

    @property
    def value(self) -> np.ndarray:
        return self._sum + self._compensation
