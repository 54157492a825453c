"""
Derivate frazionarie regolarizzate su griglia: Caputo, Caputo-Fabrizio (CF),
Atangana-Baleanu-Caputo (ABC), con i cammini a serie di RL per CF e ABC.
"""
import logging
from typing import Optional

import numpy as np

import config
from errors import ConvergenceError, DomainError
from operators.grid import GridFunction, NormalizationFn, OperatorKind, OperatorSpec
from operators.integrals import (
    SeriesResult,
    fractional_integral_values,
    prabhakar_integral,
    prabhakar_integral_series,
    rl_integral,
    series_order,
)
from operators.quadrature import (
    exponential_weights,
    gauss_legendre_weights,
    mittag_leffler_first_cell,
)
from special.mittag_leffler import mittag_leffler
from special.prabhakar import prabhakar_antiderivative
from special.series import PrabhakarParams, order_coefficient, series_truncation
from special.summation import CompensatedArraySum

logger = logging.getLogger(__name__)

_DEFAULT_NORM = NormalizationFn()


def _check_order(alpha: float) -> float:
    alpha = float(alpha)
    if not (0.0 < alpha < 1.0):
        raise DomainError(f"l'ordine deve stare in (0, 1), ricevuto alpha={alpha}")
    return alpha


def _derivative_samples(f: GridFunction, synthesize: bool):
    deriv, synthesized = f.derivative(synthesize)
    if synthesized:
        logger.info("Derivata sintetizzata con differenze finite: accuratezza O(h²)")
    return deriv, synthesized


def caputo_derivative(f: GridFunction, alpha: float, synthesize: bool = True) -> GridFunction:
    """
    Derivata di Caputo ^C D^α f = J^{1-α} f'.

    Args:
        f: Funzione con tag AC (o H1) e derivata disponibile o sintetizzabile
        alpha: Ordine in (0, 1)
        synthesize: Consente la sintesi di f' per differenze finite
    """
    alpha = _check_order(alpha)
    deriv, synthesized = _derivative_samples(f, synthesize)
    values = fractional_integral_values(deriv, 1.0 - alpha, f.h)
    return f.with_values(values, operator="caputo", derivative_synthesized=synthesized)


def cf_derivative(
    f: GridFunction,
    alpha: float,
    norm: NormalizationFn = _DEFAULT_NORM,
    synthesize: bool = True,
) -> GridFunction:
    """
    Derivata di Caputo-Fabrizio: M(α)/(1-α)·∫ exp(-α(t-τ)/(1-α)) f'(τ) dτ.

    Pesi esponenziali in forma chiusa, indipendenti dal cammino di Prabhakar.
    """
    alpha = _check_order(alpha)
    deriv, synthesized = _derivative_samples(f, synthesize)
    scale = norm(alpha) / (1.0 - alpha)
    weights = exponential_weights(order_coefficient(alpha), f.h, f.n)
    values = scale * weights.apply(deriv)
    return f.with_values(values, operator="cf", derivative_synthesized=synthesized)


def abc_kernel_weights(alpha: float, h: float, n: int):
    """Pesi del nucleo E_α(ω u^α): serie esatta sulla prima cella, Gauss-Legendre altrove."""
    omega = order_coefficient(alpha)
    first_cell = mittag_leffler_first_cell(alpha, omega, h)
    return gauss_legendre_weights(
        lambda u: mittag_leffler(alpha, omega * u ** alpha), first_cell, h, n
    )


def abc_derivative(
    f: GridFunction,
    alpha: float,
    norm: NormalizationFn = _DEFAULT_NORM,
    synthesize: bool = True,
) -> GridFunction:
    """
    Derivata di Atangana-Baleanu nel senso di Caputo:
    B(α)/(1-α)·∫ E_α(-α(t-τ)^α/(1-α)) f'(τ) dτ.
    """
    alpha = _check_order(alpha)
    deriv, synthesized = _derivative_samples(f, synthesize)
    scale = norm(alpha) / (1.0 - alpha)
    weights = abc_kernel_weights(alpha, f.h, f.n)
    values = scale * weights.apply(deriv)
    return f.with_values(values, operator="abc", derivative_synthesized=synthesized)


def interpolant_derivative(
    f: GridFunction,
    alpha: float,
    kind: OperatorKind,
    norm: NormalizationFn = _DEFAULT_NORM,
) -> GridFunction:
    """
    Derivata CF o ABC dell'interpolante lineare a tratti di f, esatta sui nodi.

    Su ogni cella f' è la pendenza (f_{j+1} - f_j)/h e il nucleo si integra con la sua
    primitiva: (e^{ωu} - 1)/ω per CF, u·E_{α,2}(ω u^α) per ABC. È lo stesso interpolante
    su cui lavorano cf_series e abc_series.
    """
    alpha = _check_order(alpha)
    lags = f.h * np.arange(f.n + 1)
    if kind == OperatorKind.CF_DERIV:
        omega = order_coefficient(alpha)
        primitive = np.expm1(omega * lags) / omega
    elif kind == OperatorKind.ABC_DERIV:
        params = PrabhakarParams.from_abc_order(alpha)
        primitive = np.array([prabhakar_antiderivative(params, u) for u in lags])
    else:
        raise DomainError(f"interpolante disponibile solo per CF e ABC, ricevuto {kind.value}")

    slopes = np.diff(f.values) / f.h
    cells = np.diff(primitive)
    values = np.zeros(f.n + 1)
    values[1:] = np.convolve(slopes, cells)[: f.n]
    scale = norm(alpha) / (1.0 - alpha)
    return f.with_values(scale * values, operator=kind.value, path="interpolant")


def _check_series_order(alpha: float, K: int) -> None:
    if alpha > config.ALPHA_SERIES_CAP:
        raise DomainError(
            f"alpha={alpha} oltre il limite {config.ALPHA_SERIES_CAP} per le serie: "
            f"|ω|={alpha / (1.0 - alpha):.1f} rende la serie alternante inutilizzabile"
        )
    if int(K) != K or K < 0:
        raise DomainError(f"K deve essere un intero >= 0, ricevuto {K}")
    if K > config.SERIES_HARD_CAP:
        raise ConvergenceError(f"K={K} oltre il cap di {config.SERIES_HARD_CAP} termini")


def _series_path(
    f: GridFunction, alpha: float, step: float, prefactor: np.ndarray, scale: float, K: int, label: str
) -> SeriesResult:
    omega = order_coefficient(alpha)
    acc = CompensatedArraySum(len(f.values))
    acc.add(prefactor)
    coeff = scale
    last = 0.0
    for k in range(int(K) + 1):
        term = coeff * fractional_integral_values(f.values, step * k, f.h)
        acc.add(term)
        last = float(np.max(np.abs(term)))
        coeff *= omega

    result = acc.value
    peak = max(float(np.max(np.abs(result))), 1e-300)
    if acc.max_abs_term * 1e-16 > 1e-8 * peak:
        logger.warning(
            f"{label}: cancellazione severa (termine massimo {acc.max_abs_term:.2e}, "
            f"risultato {peak:.2e}); considerare un orizzonte più breve"
        )
    grid = f.with_values(result, operator=label, path="series", K=int(K))
    return SeriesResult(grid, int(K), last, acc.max_abs_term)


def cf_series(
    f: GridFunction, alpha: float, norm: NormalizationFn = _DEFAULT_NORM, K: int = 0
) -> SeriesResult:
    """
    Espansione CF in integrali ripetuti ordinari:
    -M f(a⁺)/(1-α)·e^{ω(t-a)} + M/(1-α)·Σ_{k=0}^{K} ω^k J^k f,   ω = -α/(1-α).
    """
    alpha = _check_order(alpha)
    _check_series_order(alpha, K)
    scale = norm(alpha) / (1.0 - alpha)
    lags = f.times - f.a
    prefactor = -scale * f.values[0] * np.exp(order_coefficient(alpha) * lags)
    return _series_path(f, alpha, 1.0, prefactor, scale, K, "cf")


def abc_series(
    f: GridFunction, alpha: float, norm: NormalizationFn = _DEFAULT_NORM, K: int = 0
) -> SeriesResult:
    """
    Espansione ABC in integrali di RL di ordine αk:
    -B f(a⁺)/(1-α)·E_α(ω(t-a)^α) + B/(1-α)·Σ_{k=0}^{K} ω^k J^{αk} f.
    """
    alpha = _check_order(alpha)
    _check_series_order(alpha, K)
    scale = norm(alpha) / (1.0 - alpha)
    omega = order_coefficient(alpha)
    lags = f.times - f.a
    prefactor = -scale * f.values[0] * np.array(
        [mittag_leffler(alpha, omega * lag ** alpha) for lag in lags]
    )
    return _series_path(f, alpha, alpha, prefactor, scale, K, "abc")


def derivative_series_order(
    f: GridFunction,
    alpha: float,
    kind: OperatorKind,
    tol: float,
    norm: NormalizationFn = _DEFAULT_NORM,
) -> int:
    """
    K per cf_series/abc_series: |ω^k J^{σk} f| <= ||f||·(|ω|T^σ)^k/Γ(σk+1), quindi la coda
    è quella di E_{σ,1} in z = |ω|T^σ (σ = 1 per CF, σ = α per ABC).
    """
    alpha = _check_order(alpha)
    step = 1.0 if kind == OperatorKind.CF_DERIV else alpha
    scale = norm(alpha) / (1.0 - alpha) * float(np.max(np.abs(f.values)))
    if scale == 0.0:
        return 0
    z_max = abs(order_coefficient(alpha)) * (f.horizon - f.a) ** step
    return series_truncation(PrabhakarParams(step, 1.0), z_max, tol / scale).K


def apply_operator(spec: OperatorSpec, f: GridFunction, K: Optional[int] = None, series: bool = False):
    """
    Applica l'operatore descritto da spec a f.

    Args:
        spec: Specifica dell'operatore
        f: Funzione campionata (griglia che parte da spec.a)
        K: Ordine della serie (None = dalla regola di troncamento a tol 1e-12)
        series: Se True usa il cammino a serie (Prabhakar, CF, ABC)

    Returns:
        GridFunction (cammino diretto) o SeriesResult (cammino a serie)
    """
    if abs(spec.a - f.a) > 1e-12 * max(1.0, abs(spec.a)):
        raise DomainError(f"la griglia parte da {f.a}, l'operatore da a={spec.a}")
    kind = spec.kind

    if kind == OperatorKind.RL_INTEGRAL:
        return rl_integral(f, spec.order)
    if kind == OperatorKind.CAPUTO_DERIV:
        return caputo_derivative(f, spec.order)
    if kind == OperatorKind.PRABHAKAR_INTEGRAL:
        if not series:
            return prabhakar_integral(f, spec.prabhakar, spec.a)
        order = series_order(f, spec.prabhakar, 1e-12) if K is None else K
        return prabhakar_integral_series(f, spec.prabhakar, spec.a, order)
    if kind == OperatorKind.CF_DERIV:
        if not series:
            return cf_derivative(f, spec.order, spec.norm)
        order = derivative_series_order(f, spec.order, kind, 1e-12, spec.norm) if K is None else K
        return cf_series(f, spec.order, spec.norm, order)
    if kind == OperatorKind.ABC_DERIV:
        if not series:
            return abc_derivative(f, spec.order, spec.norm)
        order = derivative_series_order(f, spec.order, kind, 1e-12, spec.norm) if K is None else K
        return abc_series(f, spec.order, spec.norm, order)
    raise DomainError(f"operatore non supportato: {kind}")
