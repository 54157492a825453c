"""
Tipi di base degli operatori: funzioni campionate su griglia uniforme,
costanti di normalizzazione M(α)/B(α) e specifica dell'operatore.
"""
import logging
import math
from dataclasses import dataclass, field, replace
from enum import Enum
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from errors import DomainError, PreconditionError
from special.series import PrabhakarParams

logger = logging.getLogger(__name__)


class Smoothness(str, Enum):
    L1 = "L1"
    H1 = "H1"
    AC = "AC"


def _frozen_array(values: Sequence[float], name: str) -> np.ndarray:
    array = np.array(values, dtype=float)
    if array.ndim != 1:
        raise DomainError(f"{name} deve essere monodimensionale")
    if not np.all(np.isfinite(array)):
        raise DomainError(f"{name} contiene campioni non finiti")
    array.setflags(write=False)
    return array


@dataclass(frozen=True, eq=False)
class GridFunction:
    """
    Funzione campionata in a + i·h, i = 0..N, con derivata opzionale.

    Attributes:
        a: Istante iniziale
        h: Passo (> 0)
        values: Campioni f(a + i·h)
        deriv_values: Campioni f'(a + i·h) oppure None
        smoothness: Classe di regolarità dichiarata
        metadata: Annotazioni (es. derivata sintetizzata)
    """

    a: float
    h: float
    values: np.ndarray
    deriv_values: Optional[np.ndarray] = None
    smoothness: Smoothness = Smoothness.AC
    metadata: Dict[str, object] = field(default_factory=dict)

    def __post_init__(self):
        if not (math.isfinite(self.a) and math.isfinite(self.h) and self.h > 0):
            raise DomainError(f"griglia non valida: a={self.a}, h={self.h}")
        object.__setattr__(self, "values", _frozen_array(self.values, "values"))
        if len(self.values) < 2:
            raise DomainError("servono almeno due campioni (N >= 1)")
        if self.deriv_values is not None:
            deriv = _frozen_array(self.deriv_values, "deriv_values")
            if len(deriv) != len(self.values):
                raise DomainError(
                    f"deriv_values ha lunghezza {len(deriv)}, attesa {len(self.values)}"
                )
            object.__setattr__(self, "deriv_values", deriv)
        object.__setattr__(self, "smoothness", Smoothness(self.smoothness))

    @property
    def n(self) -> int:
        """Numero di intervalli N."""
        return len(self.values) - 1

    @property
    def times(self) -> np.ndarray:
        return self.a + self.h * np.arange(len(self.values))

    @property
    def horizon(self) -> float:
        return self.a + self.h * self.n

    def with_values(self, values: Sequence[float], **metadata) -> "GridFunction":
        """Nuova funzione sulla stessa griglia (senza derivata)."""
        return GridFunction(
            self.a, self.h, values, None, Smoothness.L1, {**self.metadata, **metadata}
        )

    def derivative(self, synthesize: bool = True) -> Tuple[np.ndarray, bool]:
        """
        Campioni di f'.

        Args:
            synthesize: Se True sintetizza f' con differenze centrali quando manca

        Returns:
            Coppia (campioni, sintetizzata)

        Raises:
            PreconditionError: Se la derivata manca e non può essere sintetizzata
        """
        if self.deriv_values is not None:
            return self.deriv_values, False
        if not synthesize or self.smoothness == Smoothness.L1:
            raise PreconditionError(
                "derivata richiesta ma assente (serve deriv_values o sintesi con tag AC/H1)"
            )
        edge_order = 2 if len(self.values) >= 3 else 1
        logger.debug(f"Sintesi di f' con differenze finite (N={self.n})")
        return np.gradient(self.values, self.h, edge_order=edge_order), True

    def derivative_function(self, synthesize: bool = True) -> "GridFunction":
        deriv, synthesized = self.derivative(synthesize)
        return GridFunction(
            self.a, self.h, deriv, None, Smoothness.L1,
            {**self.metadata, "derivative_synthesized": synthesized},
        )


class NormalizationKind(str, Enum):
    CONSTANT_ONE = "CONSTANT_ONE"
    TABLE = "TABLE"


@dataclass(frozen=True)
class NormalizationFn:
    """M(α) o B(α): costante 1 oppure tabella con interpolazione lineare."""

    kind: NormalizationKind = NormalizationKind.CONSTANT_ONE
    table: Optional[Tuple[Tuple[float, float], ...]] = None

    def __post_init__(self):
        kind = NormalizationKind(self.kind)
        object.__setattr__(self, "kind", kind)
        if kind == NormalizationKind.CONSTANT_ONE:
            return
        if not self.table or len(self.table) < 2:
            raise DomainError("una normalizzazione tabellare richiede almeno due punti")
        table = tuple(sorted((float(a), float(v)) for a, v in self.table))
        alphas = [a for a, _ in table]
        if len(set(alphas)) != len(alphas):
            raise DomainError("ascisse duplicate nella tabella di normalizzazione")
        object.__setattr__(self, "table", table)
        for endpoint in (0.0, 1.0):
            value = self._interpolate(endpoint)
            if abs(value - 1.0) > 1e-12:
                raise DomainError(
                    f"la normalizzazione deve valere 1 in alpha={endpoint:g} (trovato {value})"
                )

    @classmethod
    def from_pairs(cls, pairs: List[Tuple[float, float]]) -> "NormalizationFn":
        return cls(NormalizationKind.TABLE, tuple(pairs))

    def _interpolate(self, alpha: float) -> float:
        alphas = np.array([a for a, _ in self.table])
        values = np.array([v for _, v in self.table])
        if alpha < alphas[0] - 1e-15 or alpha > alphas[-1] + 1e-15:
            raise DomainError(f"alpha={alpha} fuori dalla tabella di normalizzazione")
        return float(np.interp(alpha, alphas, values))

    def __call__(self, alpha: float) -> float:
        if self.kind == NormalizationKind.CONSTANT_ONE:
            return 1.0
        return self._interpolate(alpha)


class OperatorKind(str, Enum):
    RL_INTEGRAL = "RL_INTEGRAL"
    CAPUTO_DERIV = "CAPUTO_DERIV"
    CF_DERIV = "CF_DERIV"
    ABC_DERIV = "ABC_DERIV"
    PRABHAKAR_INTEGRAL = "PRABHAKAR_INTEGRAL"


@dataclass(frozen=True)
class OperatorSpec:
    """Quale operatore applicare, con ordine, parametri e normalizzazione."""

    kind: OperatorKind
    order: float
    prabhakar: Optional[PrabhakarParams] = None
    a: float = 0.0
    norm: NormalizationFn = field(default_factory=NormalizationFn)

    def __post_init__(self):
        kind = OperatorKind(self.kind)
        object.__setattr__(self, "kind", kind)
        if not math.isfinite(self.order):
            raise DomainError(f"ordine non finito: {self.order}")
        if kind == OperatorKind.RL_INTEGRAL:
            if self.order <= 0:
                raise DomainError(f"l'integrale RL richiede ordine > 0 (ricevuto {self.order})")
        elif kind != OperatorKind.PRABHAKAR_INTEGRAL and not (0.0 < self.order < 1.0):
            raise DomainError(f"{kind.value} richiede ordine in (0, 1) (ricevuto {self.order})")
        if (kind == OperatorKind.PRABHAKAR_INTEGRAL) != (self.prabhakar is not None):
            raise DomainError("i parametri di Prabhakar vanno forniti solo per PRABHAKAR_INTEGRAL")
        if self.prabhakar is not None:
            self.prabhakar.require_valid()

    @property
    def alpha(self) -> float:
        return self.order

    def normalization(self) -> float:
        return self.norm(self.order)

    def with_order(self, order: float) -> "OperatorSpec":
        return replace(self, order=order)
