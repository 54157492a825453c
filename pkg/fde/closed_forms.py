"""
Soluzioni esatte delle FDE lineari, usate come oracoli dai test e da `solve --exact`.
"""
import logging
from typing import Callable, Optional

import numpy as np

from errors import DomainError
from operators.grid import NormalizationFn, OperatorKind
from special.gamma import gamma_fn
from special.mittag_leffler import mittag_leffler

logger = logging.getLogger(__name__)

Curve = Callable[[np.ndarray], np.ndarray]


def _check(alpha: float) -> None:
    if not (0.0 < alpha < 1.0):
        raise DomainError(f"l'ordine deve stare in (0, 1), ricevuto alpha={alpha}")


def cf_linear(alpha: float, norm: NormalizationFn, lam: float, y0: float) -> Curve:
    """y = y0·M/(M-(1-α)λ)·exp(αλt/(M-(1-α)λ)) per CF y = λ y."""
    _check(alpha)
    denominator = norm(alpha) - (1.0 - alpha) * lam
    if denominator == 0.0:
        raise DomainError("M - (1-α)λ = 0: equazione CF degenere")
    amplitude = y0 * norm(alpha) / denominator
    rate = alpha * lam / denominator
    return lambda t: amplitude * np.exp(rate * np.asarray(t, dtype=float))


def abc_linear(alpha: float, norm: NormalizationFn, lam: float, y0: float) -> Curve:
    """y = y0·B/(B-(1-α)λ)·E_α(αλt^α/(B-(1-α)λ)) per ABC y = λ y."""
    _check(alpha)
    denominator = norm(alpha) - (1.0 - alpha) * lam
    if denominator == 0.0:
        raise DomainError("B - (1-α)λ = 0: equazione ABC degenere")
    amplitude = y0 * norm(alpha) / denominator
    rate = alpha * lam / denominator
    return lambda t: amplitude * np.array(
        [mittag_leffler(alpha, rate * v ** alpha) for v in np.atleast_1d(t)]
    )


def caputo_linear(alpha: float, lam: float, y0: float) -> Curve:
    """y = y0·E_α(λ t^α)."""
    _check(alpha)
    return lambda t: y0 * np.array([mittag_leffler(alpha, lam * v ** alpha) for v in np.atleast_1d(t)])


def constant_forcing(kind: OperatorKind, alpha: float, norm: NormalizationFn, c: float, y0: float) -> Curve:
    """
    Soluzioni per F ≡ c (per t > 0):
        CF:     y0 + (1-α)c/M + αc t/M
        ABC:    y0 + (1-α)c/B + α/B·c t^α/Γ(α+1)
        Caputo: y0 + c t^α/Γ(α+1)
    """
    _check(alpha)
    kind = OperatorKind(kind)
    if kind == OperatorKind.CAPUTO_DERIV:
        return lambda t: y0 + c * np.asarray(t, dtype=float) ** alpha / gamma_fn(alpha + 1.0)
    m = norm(alpha)
    jump = y0 + (1.0 - alpha) * c / m
    if kind == OperatorKind.CF_DERIV:
        return lambda t: jump + alpha * c * np.asarray(t, dtype=float) / m
    if kind == OperatorKind.ABC_DERIV:
        return lambda t: jump + alpha / m * c * np.asarray(t, dtype=float) ** alpha / gamma_fn(alpha + 1.0)
    raise DomainError(f"nessuna forma chiusa per {kind.value}")


def closed_form(
    kind: OperatorKind,
    alpha: float,
    norm: NormalizationFn,
    rhs_name: str,
    y0: float,
    lam: float = -1.0,
    c: float = 1.0,
) -> Optional[Curve]:
    """
    Forma chiusa per i secondi membri lineari predefiniti, None se non disponibile.

    Args:
        rhs_name: "decay", "const" o "zero" (gli altri non hanno forma chiusa)
    """
    kind = OperatorKind(kind)
    if rhs_name == "zero":
        return constant_forcing(kind, alpha, norm, 0.0, y0)
    if rhs_name == "const":
        return constant_forcing(kind, alpha, norm, c, y0)
    if rhs_name == "decay":
        if kind == OperatorKind.CF_DERIV:
            return cf_linear(alpha, norm, lam, y0)
        if kind == OperatorKind.ABC_DERIV:
            return abc_linear(alpha, norm, lam, y0)
        return caputo_linear(alpha, lam, y0)
    logger.debug(f"Nessuna forma chiusa per rhs '{rhs_name}'")
    return None
