"""
Controlli incrociati fra cammini di calcolo indipendenti.

    1: integrale di Prabhakar diretto  vs  serie di integrali RL
    2: derivata CF                     vs  M/(1-α)·Prabhakar(1, 1, 1, ω) su f'
    3: derivata ABC                    vs  B/(1-α)·Prabhakar(α, 1, 1, ω) su f'
    4: derivata CF dell'interpolante   vs  serie di integrali ripetuti
    5: derivata ABC dell'interpolante  vs  serie di integrali RL di ordine αk
    6: FDE CF (forma integrale e ODE)  vs  forma chiusa (verificata con Laplace)
    7: FDE ABC (integrale e Caputo)    vs  forma chiusa (verificata con Laplace)
"""
import logging
from dataclasses import dataclass, field
from typing import Callable, Dict, List, Sequence

import numpy as np
import pandas as pd
from tqdm import tqdm

from errors import ParseError
from fde.closed_forms import abc_linear, cf_linear
from fde.laplace import laplace_invert, linear_solution_query
from fde.problem import FDEProblem, builtin_rhs
from fde.solvers import solve_abc_caputo_form, solve_abc_integral, solve_cf_integral, solve_cf_ode
from operators.derivatives import (
    abc_derivative,
    abc_series,
    cf_derivative,
    cf_series,
    derivative_series_order,
    interpolant_derivative,
)
from operators.grid import NormalizationFn, OperatorKind, OperatorSpec
from operators.integrals import prabhakar_integral, prabhakar_integral_series, series_order
from operators.quadrature import interpolation_error_bound
from operators.samplers import builtin_function
from special.series import PrabhakarParams

logger = logging.getLogger(__name__)

DEFAULT_FUNCTIONS = ("const1", "t", "t2", "sin")
SERIES_FUNCTIONS = ("const1", "t", "t2", "sin", "exp-decay")


@dataclass
class CheckResult:
    """Esito di un controllo: discrepanza massima contro soglia."""

    theorem: int
    description: str
    discrepancy: float
    tolerance: float
    details: Dict[str, float] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return bool(self.discrepancy <= self.tolerance)

    @property
    def verdict(self) -> str:
        return "PASS" if self.passed else "FAIL"

    def to_frame(self) -> pd.DataFrame:
        row = {
            "theorem": self.theorem,
            "check": self.description,
            "discrepancy": self.discrepancy,
            "tolerance": self.tolerance,
            "verdict": self.verdict,
        }
        row.update(self.details)
        return pd.DataFrame([row])


def _progress(items: Sequence, label: str):
    return tqdm(items, desc=label, leave=False, disable=not logger.isEnabledFor(logging.INFO))


def _relative(a: np.ndarray, b: np.ndarray) -> float:
    """max|a - b| relativo a max(1, max|a|)."""
    return float(np.max(np.abs(a - b))) / max(1.0, float(np.max(np.abs(a))))


def _finish(result: CheckResult) -> CheckResult:
    log = logger.info if result.passed else logger.warning
    log(
        f"Teorema {result.theorem}: discrepanza {result.discrepancy:.3e} "
        f"(soglia {result.tolerance:.1e}) -> {result.verdict}"
    )
    return result


def theorem1(
    functions: Sequence[str] = DEFAULT_FUNCTIONS,
    p: PrabhakarParams = PrabhakarParams(0.5, 1.0, 1.0, -1.0),
    T: float = 5.0,
    h: float = 5e-3,
    tol: float = 1e-12,
    threshold: float = 1e-8,
) -> CheckResult:
    worst, details = 0.0, {}
    for name in _progress(functions, "Teorema 1"):
        f = builtin_function(name)(0.0, T, h)
        direct = prabhakar_integral(f, p)
        series = prabhakar_integral_series(f, p, K=series_order(f, p, tol))
        gap = _relative(direct.values, series.values)
        details[f"{name}_K"] = series.K
        details[name] = gap
        worst = max(worst, gap)
    return _finish(CheckResult(1, "prabhakar diretto vs serie RL", worst, threshold, details))


def _kernel_realization(
    theorem: int,
    kind: OperatorKind,
    alphas: Sequence[float],
    functions: Sequence[str],
    T: float,
    h: float,
    threshold: float,
    norm: NormalizationFn,
) -> CheckResult:
    worst, details = 0.0, {}
    for alpha in _progress(alphas, f"Teorema {theorem}"):
        if kind == OperatorKind.CF_DERIV:
            params, operator = PrabhakarParams.from_cf_order(alpha), cf_derivative
        else:
            params, operator = PrabhakarParams.from_abc_order(alpha), abc_derivative
        scale = norm(alpha) / (1.0 - alpha)
        for name in functions:
            f = builtin_function(name)(0.0, T, h)
            direct = operator(f, alpha, norm).values
            realized = scale * prabhakar_integral(f.derivative_function(), params).values
            gap = _relative(direct, realized)
            details[f"{name}@{alpha:g}"] = gap
            worst = max(worst, gap)
    label = "CF" if kind == OperatorKind.CF_DERIV else "ABC"
    return _finish(CheckResult(theorem, f"derivata {label} vs integrale di Prabhakar di f'", worst, threshold, details))


def theorem2(
    alphas: Sequence[float] = (0.1, 0.5, 0.9),
    functions: Sequence[str] = ("t2",),
    T: float = 5.0,
    h: float = 1e-2,
    threshold: float = 1e-10,
    norm: NormalizationFn = NormalizationFn(),
) -> CheckResult:
    return _kernel_realization(2, OperatorKind.CF_DERIV, alphas, functions, T, h, threshold, norm)


def theorem3(
    alphas: Sequence[float] = (0.3, 0.5, 0.7),
    functions: Sequence[str] = ("t2",),
    T: float = 5.0,
    h: float = 1e-2,
    threshold: float = 1e-8,
    norm: NormalizationFn = NormalizationFn(),
) -> CheckResult:
    return _kernel_realization(3, OperatorKind.ABC_DERIV, alphas, functions, T, h, threshold, norm)


def _series_expansion(
    theorem: int,
    kind: OperatorKind,
    alpha: float,
    functions: Sequence[str],
    T: float,
    h: float,
    tol: float,
    threshold: float,
    norm: NormalizationFn,
) -> CheckResult:
    direct_op, series_op = (
        (cf_derivative, cf_series) if kind == OperatorKind.CF_DERIV else (abc_derivative, abc_series)
    )
    scale = norm(alpha) / (1.0 - alpha)
    worst, details = 0.0, {}
    for name in _progress(functions, f"Teorema {theorem}"):
        f = builtin_function(name)(0.0, T, h)
        K = derivative_series_order(f, alpha, kind, tol, norm)
        series = series_op(f, alpha, norm, K).values
        # stesso interpolante lineare di f: lo scarto è solo troncamento e arrotondamento
        exact = interpolant_derivative(f, alpha, kind, norm).values
        gap = float(np.max(np.abs(exact - series)))
        details[name] = gap
        details[f"{name}_K"] = K
        # scarto O(h²) verso il cammino diretto su f' campionata, solo diagnostico
        direct_gap = float(np.max(np.abs(direct_op(f, alpha, norm).values - series)))
        # nucleo monotono: ∫|K'| <= 1, quindi l'errore su f pesa al più 2 volte
        bound = scale * (
            2.0 * interpolation_error_bound(f.values) + (T - f.a) * interpolation_error_bound(f.deriv_values)
        )
        if direct_gap > 2.0 * bound + threshold:
            logger.warning(f"{name}: cammino diretto a {direct_gap:.2e}, oltre la stima O(h²) {bound:.2e}")
        details[f"{name}_direct"] = direct_gap
        worst = max(worst, gap)
    label = "CF" if kind == OperatorKind.CF_DERIV else "ABC"
    return _finish(CheckResult(theorem, f"derivata {label} vs serie sullo stesso interpolante", worst, threshold, details))


def theorem4(
    alpha: float = 0.5,
    functions: Sequence[str] = SERIES_FUNCTIONS,
    T: float = 5.0,
    h: float = 5e-3,
    tol: float = 1e-10,
    threshold: float = 1e-7,
    norm: NormalizationFn = NormalizationFn(),
) -> CheckResult:
    return _series_expansion(4, OperatorKind.CF_DERIV, alpha, functions, T, h, tol, threshold, norm)


def theorem5(
    alpha: float = 0.5,
    functions: Sequence[str] = SERIES_FUNCTIONS,
    T: float = 5.0,
    h: float = 5e-3,
    tol: float = 1e-10,
    threshold: float = 1e-7,
    norm: NormalizationFn = NormalizationFn(),
) -> CheckResult:
    return _series_expansion(5, OperatorKind.ABC_DERIV, alpha, functions, T, h, tol, threshold, norm)


def _laplace_gap(kind: OperatorKind, alpha: float, norm: NormalizationFn, lam: float, y0: float,
                 exact: Callable[[np.ndarray], np.ndarray], sample_times: Sequence[float]) -> float:
    gaps = []
    for t in sample_times:
        inverted = laplace_invert(linear_solution_query(kind, alpha, norm, lam, y0, t))
        reference = float(exact(np.array([t]))[0])
        gaps.append(abs(inverted - reference) / max(1e-300, abs(reference)))
    return max(gaps)


def _fde_check(
    theorem: int,
    kind: OperatorKind,
    solvers: Dict[str, Callable],
    exact_factory: Callable,
    alpha: float,
    lam: float,
    y0: float,
    T: float,
    h: float,
    threshold: float,
    norm: NormalizationFn,
) -> CheckResult:
    op = OperatorSpec(kind, alpha, norm=norm)
    problem = FDEProblem(op, builtin_rhs("decay", lam=lam), y0, T, h)
    exact = exact_factory(alpha, norm, lam, y0)

    details = {"laplace": _laplace_gap(kind, alpha, norm, lam, y0, exact, (0.5, 1.0, 2.0, min(T, 5.0)))}
    worst = 0.0
    for name, solver in _progress(list(solvers.items()), f"Teorema {theorem}"):
        trajectory = solver(problem)
        error = trajectory.max_error(exact)
        details[name] = error
        details[f"{name}_jump"] = trajectory.diagnostics["initial_jump"]
        worst = max(worst, error)
    if details["laplace"] > 1e-8:
        logger.warning(f"Forma chiusa e inversione di Laplace discordano: {details['laplace']:.2e}")
        worst = max(worst, details["laplace"] * threshold / 1e-8)
    label = "CF" if kind == OperatorKind.CF_DERIV else "ABC"
    return _finish(CheckResult(theorem, f"FDE {label} vs forma chiusa", worst, threshold, details))


def theorem6(
    alpha: float = 0.5,
    lam: float = -1.0,
    y0: float = 1.0,
    T: float = 5.0,
    h: float = 1e-3,
    threshold: float = 1e-5,
    norm: NormalizationFn = NormalizationFn(),
) -> CheckResult:
    solvers = {"integral": solve_cf_integral, "ode": solve_cf_ode}
    return _fde_check(6, OperatorKind.CF_DERIV, solvers, cf_linear, alpha, lam, y0, T, h, threshold, norm)


def theorem7(
    alpha: float = 0.5,
    lam: float = -1.0,
    y0: float = 1.0,
    T: float = 5.0,
    h: float = 1e-3,
    threshold: float = 1e-5,
    norm: NormalizationFn = NormalizationFn(),
) -> CheckResult:
    solvers = {"integral": solve_abc_integral, "caputo-form": solve_abc_caputo_form}
    return _fde_check(7, OperatorKind.ABC_DERIV, solvers, abc_linear, alpha, lam, y0, T, h, threshold, norm)


THEOREMS: Dict[int, Callable[..., CheckResult]] = {
    1: theorem1,
    2: theorem2,
    3: theorem3,
    4: theorem4,
    5: theorem5,
    6: theorem6,
    7: theorem7,
}


def run_check(theorem: int, **overrides) -> CheckResult:
    """
    Esegue il controllo `theorem` con i default, sovrascritti dai parametri non None.

    Raises:
        ParseError: Se il teorema non esiste
    """
    try:
        check = THEOREMS[int(theorem)]
    except (KeyError, ValueError):
        raise ParseError(f"teorema sconosciuto '{theorem}' (validi: 1-7)") from None
    arguments = {key: value for key, value in overrides.items() if value is not None}
    return check(**arguments)


def run_all(theorems: Sequence[int] = tuple(THEOREMS)) -> List[CheckResult]:
    return [run_check(n) for n in theorems]
