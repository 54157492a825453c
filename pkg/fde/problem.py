"""
Tipi del risolutore di equazioni D^α y = F(t, y): problema, secondo membro,
traiettoria e iterazione di punto fisso per i passi impliciti.
"""
import logging
import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Callable, Dict, Optional, Tuple

import numpy as np
import pandas as pd

import config
from errors import DomainError, ParseError, SolverError
from operators.grid import OperatorKind, OperatorSpec

logger = logging.getLogger(__name__)

ScalarFn = Callable[[float, float], float]


class SolverPath(str, Enum):
    ODE_FORM = "ODE_FORM"
    INTEGRAL_FORM = "INTEGRAL_FORM"
    CAPUTO_FORM = "CAPUTO_FORM"
    ADAMS = "ADAMS"


@dataclass(frozen=True)
class RightHandSide:
    """
    Funzionale F(t, y) con derivate parziali opzionali.

    Attributes:
        name: Etichetta (compare nei metadati e nel CSV)
        fn: F(t, y)
        dfdt: ∂F/∂t, richiesta dalla forma ODE di CF
        dfdy: ∂F/∂y, richiesta dalla forma ODE di CF
        smooth: Dichiarazione di regolarità (necessaria alla forma di Caputo)
    """

    name: str
    fn: ScalarFn
    dfdt: Optional[ScalarFn] = None
    dfdy: Optional[ScalarFn] = None
    smooth: bool = True

    def __call__(self, t: float, y: float) -> float:
        return float(self.fn(t, y))

    @property
    def differentiable(self) -> bool:
        return self.dfdt is not None and self.dfdy is not None


def builtin_rhs(name: str, lam: float = -1.0, c: float = 1.0) -> RightHandSide:
    """
    Secondi membri predefiniti.

    Args:
        name: "decay" (λy), "const" (c), "forced" (λy + sin t), "ramp" (t), "zero"
        lam: Tasso λ per decay/forced
        c: Costante per const
    """
    table: Dict[str, RightHandSide] = {
        "decay": RightHandSide("decay", lambda t, y: lam * y, lambda t, y: 0.0, lambda t, y: lam),
        "const": RightHandSide("const", lambda t, y: c, lambda t, y: 0.0, lambda t, y: 0.0),
        "forced": RightHandSide(
            "forced",
            lambda t, y: lam * y + math.sin(t),
            lambda t, y: math.cos(t),
            lambda t, y: lam,
        ),
        "ramp": RightHandSide("ramp", lambda t, y: t, lambda t, y: 1.0, lambda t, y: 0.0),
        "zero": RightHandSide("zero", lambda t, y: 0.0, lambda t, y: 0.0, lambda t, y: 0.0),
    }
    if name not in table:
        raise ParseError(f"secondo membro sconosciuto '{name}' (validi: {', '.join(table)})")
    return table[name]


_FDE_KINDS = (OperatorKind.CF_DERIV, OperatorKind.ABC_DERIV, OperatorKind.CAPUTO_DERIV)


@dataclass(frozen=True)
class FDEProblem:
    """Problema D^α y = F(t, y), y(0⁺) = y0 su [0, T] con passo h."""

    op: OperatorSpec
    rhs: RightHandSide
    y0: float
    T: float
    h: float

    def __post_init__(self):
        if self.op.kind not in _FDE_KINDS:
            raise DomainError(f"operatore {self.op.kind.value} non risolvibile come FDE")
        if abs(self.op.a) > 0.0:
            raise DomainError(f"le FDE partono da t=0 (a={self.op.a})")
        if not all(math.isfinite(v) for v in (self.y0, self.T, self.h)):
            raise DomainError("y0, T e h devono essere finiti")
        if not (self.T > 0 and 0 < self.h <= self.T):
            raise DomainError(f"serve T > 0 e 0 < h <= T (T={self.T}, h={self.h})")
        steps = self.T / self.h
        if abs(steps - round(steps)) > 1e-9 * max(1.0, steps):
            raise DomainError(f"T/h = {steps} non è intero")

    @property
    def alpha(self) -> float:
        return self.op.order

    @property
    def n(self) -> int:
        return int(round(self.T / self.h))

    @property
    def times(self) -> np.ndarray:
        return self.h * np.arange(self.n + 1)

    @property
    def normalization(self) -> float:
        return self.op.normalization()

    def jump_coefficients(self) -> Tuple[float, float]:
        """(c1, c2) = ((1-α)/M, α/M) della forma integrale (M = B per ABC)."""
        norm = self.normalization
        return (1.0 - self.alpha) / norm, self.alpha / norm


@dataclass(frozen=True, eq=False)
class Trajectory:
    """Soluzione campionata, residui per passo e diagnostica."""

    times: np.ndarray
    values: np.ndarray
    residuals: np.ndarray
    path: SolverPath
    diagnostics: Dict[str, float] = field(default_factory=dict)

    def __post_init__(self):
        arrays = [np.array(a, dtype=float) for a in (self.times, self.values, self.residuals)]
        if len({len(a) for a in arrays}) != 1:
            raise DomainError("times, values e residuals devono avere la stessa lunghezza")
        if not np.all(np.isfinite(arrays[2])):
            raise DomainError("residui non finiti nella traiettoria")
        for name, array in zip(("times", "values", "residuals"), arrays):
            array.setflags(write=False)
            object.__setattr__(self, name, array)
        object.__setattr__(self, "path", SolverPath(self.path))

    def to_frame(self) -> pd.DataFrame:
        return pd.DataFrame({"t": self.times, "y": self.values, "residual": self.residuals})

    def max_error(self, exact: Callable[[np.ndarray], np.ndarray]) -> float:
        """max |y - exact(t)| sui nodi."""
        return float(np.max(np.abs(self.values - exact(self.times))))


@dataclass
class FixedPointSolver:
    """
    Iterazione y ← g(y) con passaggio al rilassamento quando la contrazione è lenta.

    Attributes:
        tol: Tolleranza sul residuo |g(y) - y| relativa a max(1, |y|)
        max_iter: Iterazioni massime
        relaxation: Fattore di rilassamento ω in y ← y + ω(g(y) - y)
    """

    tol: float = config.FIXED_POINT_TOL
    max_iter: int = config.FIXED_POINT_MAX_ITER
    relaxation: float = config.FIXED_POINT_RELAXATION

    def solve(self, g: Callable[[float], float], start: float) -> Tuple[float, float, int, bool]:
        """
        Returns:
            (soluzione, residuo finale, iterazioni, rilassata)

        Raises:
            SolverError: Se non converge entro max_iter iterazioni
        """
        y = float(start)
        factor = 1.0
        damped = False
        previous = math.inf
        residual = math.inf

        for iteration in range(1, self.max_iter + 1):
            update = g(y) - y
            residual = abs(update)
            if not math.isfinite(residual):
                raise SolverError(f"punto fisso divergente (y={y})", residual)
            if residual <= self.tol * max(1.0, abs(y)):
                return y + factor * update, residual, iteration, damped
            if not damped and residual > 0.5 * previous:
                factor = self.relaxation
                damped = True
                logger.debug(f"Punto fisso lento (rapporto {residual / previous:.2f}): rilassamento {factor}")
            previous = residual
            y += factor * update

        raise SolverError(
            f"punto fisso non convergente in {self.max_iter} iterazioni", residual
        )
