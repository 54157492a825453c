"""
Parametri di Prabhakar e somma della serie
    E^γ_{α,β}(z) = Σ_k (γ)_k / Γ(αk + β) · z^k / k!
con regola di troncamento basata sul rapporto fra termini consecutivi.
"""
import math
import logging
from dataclasses import dataclass, replace
from typing import Iterator, Optional, Tuple

import config
from errors import ConvergenceError, DomainError
from special.gamma import reciprocal_gamma
from special.summation import CompensatedSum

logger = logging.getLogger(__name__)


def order_coefficient(alpha: float) -> float:
    """
    Coefficiente ω(α) = -α/(1-α) dei nuclei CF e ABC.

    Args:
        alpha: Ordine in (0, 1)

    Returns:
        ω(α) (negativo)
    """
    if not (0.0 < alpha < 1.0):
        raise DomainError(f"l'ordine deve stare in (0, 1), ricevuto alpha={alpha}")
    return -alpha / (1.0 - alpha)


@dataclass(frozen=True)
class PrabhakarParams:
    """Quaterna (α, β, γ, ω) che parametrizza funzione, nucleo e integrale di Prabhakar."""

    alpha: float
    beta: float
    gamma: float = 1.0
    omega: float = 0.0
    experimental: bool = False

    def invalid_reason(self) -> Optional[str]:
        fields = (self.alpha, self.beta, self.gamma, self.omega)
        if not all(math.isfinite(float(v)) for v in fields):
            return f"parametri non finiti: {fields}"
        if self.alpha <= 0:
            return f"alpha deve essere > 0 (alpha={self.alpha})"
        if self.beta <= 0:
            return f"beta deve essere > 0 (beta={self.beta})"
        if self.gamma <= 0 and not self.experimental:
            return f"gamma <= 0 richiede il flag experimental (gamma={self.gamma})"
        return None

    @property
    def valid(self) -> bool:
        return self.invalid_reason() is None

    def require_valid(self) -> "PrabhakarParams":
        reason = self.invalid_reason()
        if reason:
            raise DomainError(f"PrabhakarParams non validi: {reason}")
        return self

    def with_beta(self, beta: float) -> "PrabhakarParams":
        return replace(self, beta=beta)

    def as_tuple(self) -> Tuple[float, float, float, float]:
        return (self.alpha, self.beta, self.gamma, self.omega)

    @classmethod
    def from_cf_order(cls, alpha: float) -> "PrabhakarParams":
        """Nucleo esponenziale del operatore CF: (1, 1, 1, -α/(1-α))."""
        return cls(1.0, 1.0, 1.0, order_coefficient(alpha))

    @classmethod
    def from_abc_order(cls, alpha: float) -> "PrabhakarParams":
        """Nucleo Mittag-Leffler del operatore ABC: (α, 1, 1, -α/(1-α))."""
        return cls(alpha, 1.0, 1.0, order_coefficient(alpha))


@dataclass(frozen=True)
class SeriesSum:
    """Risultato di una somma di serie con diagnostica."""

    value: float
    terms: int
    last_term: float
    max_term: float

    @property
    def cancellation(self) -> float:
        if self.value == 0.0:
            return math.inf if self.max_term > 0 else 1.0
        return self.max_term / abs(self.value)


@dataclass(frozen=True)
class SeriesTruncation:
    """Ordine di troncamento K e maggiorazione della coda k > K."""

    K: int
    bound: float


def series_terms(p: PrabhakarParams, z: float) -> Iterator[float]:
    """Termini t_k = (γ)_k z^k / (k! Γ(αk+β)), k = 0, 1, 2, ..."""
    coeff = 1.0
    k = 0
    while True:
        yield coeff * reciprocal_gamma(p.alpha * k + p.beta)
        coeff *= (p.gamma + k) * z / (k + 1)
        k += 1


def sum_series(
    p: PrabhakarParams,
    z: float,
    rel_tol: float = config.SERIES_REL_TOL,
    cap: int = config.SERIES_HARD_CAP,
) -> SeriesSum:
    """
    Somma compensata della serie di Prabhakar in z.

    Si arresta quando la coda, stimata con il rapporto (decrescente) fra
    termini consecutivi, scende sotto rel_tol·|somma|.

    Raises:
        ConvergenceError: Se servono più di cap termini
    """
    acc = CompensatedSum()
    prev_abs = None
    prev_ratio = None

    for k, term in enumerate(series_terms(p, z)):
        if k > cap:
            raise ConvergenceError(
                f"serie di Prabhakar non convergente entro {cap} termini "
                f"(p={p.as_tuple()}, z={z})"
            )
        acc.add(term)
        magnitude = abs(term)

        if prev_abs is not None:
            if prev_abs == 0.0:
                ratio = 0.0 if magnitude == 0.0 else math.inf
            else:
                ratio = magnitude / prev_abs
            monotone = prev_ratio is None or ratio <= prev_ratio * (1.0 + 1e-12)
            if ratio == 0.0 or (ratio < 1.0 and monotone):
                tail = magnitude * ratio / (1.0 - ratio)
                if tail <= rel_tol * abs(acc.value):
                    return SeriesSum(acc.value, k, term, acc.max_abs_term)
            prev_ratio = ratio
        prev_abs = magnitude

    raise AssertionError("unreachable")


def series_truncation(p: PrabhakarParams, z_max: float, tol: float) -> SeriesTruncation:
    """
    Più piccolo K tale che la coda k > K della serie in |z| = z_max sia < tol.

    Args:
        p: Parametri di Prabhakar (ω non usato)
        z_max: Modulo massimo dell'argomento
        tol: Tolleranza assoluta (> 0)

    Returns:
        SeriesTruncation con K e la maggiorazione della coda

    Raises:
        ConvergenceError: Se K supera config.SERIES_HARD_CAP
    """
    if not (tol > 0 and math.isfinite(tol)):
        raise DomainError(f"tol deve essere > 0, ricevuto {tol}")
    p.require_valid()
    z = abs(float(z_max))
    if z == 0.0:
        return SeriesTruncation(0, 0.0)

    cap = config.SERIES_HARD_CAP
    magnitudes = []
    terms = series_terms(p, z)
    for K in range(cap + 1):
        while len(magnitudes) < K + 4:
            magnitudes.append(abs(next(terms)))
        head, nxt, after = magnitudes[K + 1], magnitudes[K + 2], magnitudes[K + 3]
        if head == 0.0:
            return SeriesTruncation(K, 0.0)
        rho = nxt / head
        rho_next = after / nxt if nxt > 0 else 0.0
        if rho < 1.0 and rho_next <= rho * (1.0 + 1e-12):
            bound = head / (1.0 - rho)
            if bound < tol:
                logger.debug(f"Troncamento: p={p.as_tuple()}, z_max={z}, K={K}, coda<{bound:.2e}")
                return SeriesTruncation(K, bound)

    raise ConvergenceError(
        f"troncamento oltre il cap di {cap} termini (p={p.as_tuple()}, z_max={z}, tol={tol})"
    )
