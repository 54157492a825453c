"""
Risolutori delle FDE con operatori CF, ABC e Caputo.

    CF, forma integrale:   y = y0 + (1-α)/M·F(t,y) + α/M·∫_0^t F
    CF, forma ODE:         y' = ((1-α)/M·F_t + α/M·F) / (1 - (1-α)/M·F_y), dopo il salto in 0⁺
    ABC, forma integrale:  y = y0 + (1-α)/B·F(t,y) + α/B·J^α F
    ABC, forma di Caputo:  u = y - (1-α)/B·F soddisfa ^C D^α u = α/B·F + (1-α)/B·F(0⁺)·t^{-α}/Γ(1-α), schema L1
    Caputo:                Adams-Bashforth-Moulton frazionario (PECE)
"""
import logging
from typing import Dict, Optional, Union

import numpy as np
from tqdm import tqdm

from errors import DomainError, PreconditionError, SolverError
from fde.problem import FDEProblem, FixedPointSolver, SolverPath, Trajectory
from operators.derivatives import abc_derivative, caputo_derivative, cf_derivative
from operators.grid import GridFunction, OperatorKind, Smoothness
from operators.quadrature import (
    ConvolutionWeights,
    L1Weights,
    l1_weights,
    power_weights,
    rectangle_weights,
    starting_exponents,
    starting_weights,
)
from special.gamma import gamma_fn
from special.mittag_leffler import mittag_leffler
from special.series import order_coefficient
from special.summation import CompensatedSum

logger = logging.getLogger(__name__)

_PROGRESS_MIN_STEPS = 2000


def _require(prob: FDEProblem, kind: OperatorKind) -> None:
    if prob.op.kind != kind:
        raise DomainError(f"atteso un problema {kind.value}, ricevuto {prob.op.kind.value}")


def _steps(prob: FDEProblem, label: str):
    steps = range(1, prob.n + 1)
    if prob.n >= _PROGRESS_MIN_STEPS and logger.isEnabledFor(logging.INFO):
        return tqdm(steps, desc=label, leave=False)
    return steps


class _Stats:
    """Contatori di iterazioni per la diagnostica della traiettoria."""

    def __init__(self):
        self.max_iterations = 0
        self.damped_steps = 0

    def record(self, iterations: int, damped: bool) -> None:
        self.max_iterations = max(self.max_iterations, iterations)
        self.damped_steps += int(damped)

    def diagnostics(self, prob: FDEProblem, y_start: float) -> Dict[str, float]:
        if self.damped_steps:
            logger.warning(f"{self.damped_steps} passi risolti con punto fisso rilassato")
        return {
            "initial_jump": y_start - prob.y0,
            "max_iterations": self.max_iterations,
            "damped_steps": self.damped_steps,
        }


def _initial_jump(prob: FDEProblem, solver: FixedPointSolver, stats: _Stats):
    """Valore di avvio y(0⁺) = y0 + (1-α)/M·F(0, y(0⁺))."""
    c1, _ = prob.jump_coefficients()
    y, residual, iterations, damped = solver.solve(
        lambda y: prob.y0 + c1 * prob.rhs(0.0, y), prob.y0
    )
    stats.record(iterations, damped)
    if abs(y - prob.y0) > 0.0:
        logger.info(f"Salto iniziale: y(0⁺) = {y:.12g} invece di y0 = {prob.y0:.12g}")
    return y, residual


def solve_cf_integral(prob: FDEProblem, solver: Optional[FixedPointSolver] = None) -> Trajectory:
    """
    Forma integrale ordinaria dell'equazione CF con memoria a trapezi compensata.

    Args:
        prob: Problema con operatore CF_DERIV
        solver: Iterazione di punto fisso per i passi impliciti

    Returns:
        Trajectory con percorso INTEGRAL_FORM
    """
    _require(prob, OperatorKind.CF_DERIV)
    solver = solver or FixedPointSolver()
    stats = _Stats()
    c1, c2 = prob.jump_coefficients()
    h, times = prob.h, prob.times

    y = np.zeros(prob.n + 1)
    residuals = np.zeros(prob.n + 1)
    y[0], residuals[0] = _initial_jump(prob, solver, stats)
    f_prev = prob.rhs(0.0, y[0])
    memory = CompensatedSum()
    implicit = c1 + 0.5 * h * c2

    for n in _steps(prob, "CF integrale"):
        t = times[n]
        known = prob.y0 + c2 * (memory.value + 0.5 * h * f_prev)
        y[n], residuals[n], iterations, damped = solver.solve(
            lambda v: known + implicit * prob.rhs(t, v), y[n - 1]
        )
        stats.record(iterations, damped)
        f_now = prob.rhs(t, y[n])
        memory.add(0.5 * h * (f_prev + f_now))
        f_prev = f_now

    return Trajectory(times, y, residuals, SolverPath.INTEGRAL_FORM, stats.diagnostics(prob, y[0]))


def solve_cf_ode(prob: FDEProblem, solver: Optional[FixedPointSolver] = None) -> Trajectory:
    """
    Forma ODE: il termine δ(t) diventa il salto in 0⁺, poi Runge-Kutta 4 classico.

    Raises:
        PreconditionError: Se F non fornisce ∂F/∂t e ∂F/∂y
        SolverError: Se 1 - (1-α)/M·F_y si annulla
    """
    _require(prob, OperatorKind.CF_DERIV)
    if not prob.rhs.differentiable:
        raise PreconditionError(f"la forma ODE richiede ∂F/∂t e ∂F/∂y (rhs '{prob.rhs.name}')")
    solver = solver or FixedPointSolver()
    stats = _Stats()
    c1, c2 = prob.jump_coefficients()
    rhs = prob.rhs

    def slope(t: float, v: float) -> float:
        denominator = 1.0 - c1 * rhs.dfdy(t, v)
        if abs(denominator) < 1e-12:
            raise SolverError(f"forma ODE singolare in t={t}: 1 - (1-α)/M·F_y = 0", denominator)
        return (c1 * rhs.dfdt(t, v) + c2 * rhs(t, v)) / denominator

    h, times = prob.h, prob.times
    y = np.zeros(prob.n + 1)
    residuals = np.zeros(prob.n + 1)
    y[0], residuals[0] = _initial_jump(prob, solver, stats)

    for n in _steps(prob, "CF ODE"):
        t, v = times[n - 1], y[n - 1]
        k1 = slope(t, v)
        k2 = slope(t + 0.5 * h, v + 0.5 * h * k1)
        k3 = slope(t + 0.5 * h, v + 0.5 * h * k2)
        k4 = slope(t + h, v + h * k3)
        y[n] = v + h * (k1 + 2.0 * k2 + 2.0 * k3 + k4) / 6.0
        # stima locale: scarto fra pendenze estreme e medie
        residuals[n] = h * abs(k1 - k2 - k3 + k4) / 6.0

    return Trajectory(times, y, residuals, SolverPath.ODE_FORM, stats.diagnostics(prob, y[0]))


class _CorrectedMemory:
    """
    Regola di convoluzione (J^α a trapezi prodotto o Caputo L1) più correzioni di avvio.

    In t_n: regola ≈ memoria(v_0..v_{n-1}) + diagonale(n)·v_n.
    """

    def __init__(self, weights: Union[ConvolutionWeights, L1Weights], sigma: float, n: int):
        self.weights = weights
        self.table = starting_weights(weights, sigma, starting_exponents(abs(sigma)), n)

    def _active(self, n: int) -> int:
        return min(n + 1, self.table.shape[1])

    def diagonal(self, n: int) -> float:
        extra = self.table[n, n] if n < self._active(n) else 0.0
        return self.weights.diagonal + float(extra)

    def memory(self, values: np.ndarray, n: int) -> float:
        history = self.weights.memory(values, n)
        for j in range(min(self._active(n), n)):
            history += float(self.table[n, j] * values[j])
        return history


def solve_abc_integral(prob: FDEProblem, solver: Optional[FixedPointSolver] = None) -> Trajectory:
    """
    Forma integrale con il solo integrale di Riemann-Liouville:
    y = y0 + (1-α)/B·F(t,y) + α/B·J^α F.
    """
    _require(prob, OperatorKind.ABC_DERIV)
    solver = solver or FixedPointSolver()
    stats = _Stats()
    c1, c2 = prob.jump_coefficients()
    times = prob.times
    quad = _CorrectedMemory(power_weights(prob.alpha, prob.h, prob.n), prob.alpha, prob.n)

    y = np.zeros(prob.n + 1)
    f = np.zeros(prob.n + 1)
    residuals = np.zeros(prob.n + 1)
    y[0], residuals[0] = _initial_jump(prob, solver, stats)
    f[0] = prob.rhs(0.0, y[0])

    for n in _steps(prob, "ABC integrale"):
        t = times[n]
        known = prob.y0 + c2 * quad.memory(f, n)
        implicit = c1 + c2 * quad.diagonal(n)
        y[n], residuals[n], iterations, damped = solver.solve(
            lambda v: known + implicit * prob.rhs(t, v), y[n - 1]
        )
        stats.record(iterations, damped)
        f[n] = prob.rhs(t, y[n])

    return Trajectory(times, y, residuals, SolverPath.INTEGRAL_FORM, stats.diagnostics(prob, y[0]))


def solve_abc_caputo_form(prob: FDEProblem, solver: Optional[FixedPointSolver] = None) -> Trajectory:
    """
    Forma di Caputo dell'equazione ABC risolta nella variabile u = y - (1-α)/B·F.

    J^α del termine sorgente (1-α)/B·F(0⁺)·t^{-α}/Γ(1-α) vale la costante (1-α)/B·F(0⁺),
    quindi w = u per t > 0, w(0) = u(0) + sorgente, soddisfa ^C D^α w = α/B·F.
    La derivata è discretizzata con lo schema L1 corretto sui primi nodi (nessuna
    quadratura di J^α in comune con la forma integrale); y si ricava da
    y - (1-α)/B·F(t, y) = w con il punto fisso.
    """
    _require(prob, OperatorKind.ABC_DERIV)
    if not prob.rhs.smooth:
        raise PreconditionError(f"la forma di Caputo richiede F regolare (rhs '{prob.rhs.name}')")
    solver = solver or FixedPointSolver()
    stats = _Stats()
    c1, c2 = prob.jump_coefficients()
    alpha, times = prob.alpha, prob.times
    caputo = _CorrectedMemory(l1_weights(alpha, prob.h, prob.n), -alpha, prob.n)

    f0 = prob.rhs(0.0, prob.y0)
    u_start = prob.y0 - c1 * f0
    source = c1 * f0

    y = np.zeros(prob.n + 1)
    w = np.zeros(prob.n + 1)
    residuals = np.zeros(prob.n + 1)
    w[0] = u_start + source
    y[0], residuals[0], iterations, damped = solver.solve(lambda v: w[0] + c1 * prob.rhs(0.0, v), prob.y0)
    stats.record(iterations, damped)

    for n in _steps(prob, "ABC Caputo"):
        t = times[n]
        known = caputo.memory(w, n)
        diag = caputo.diagonal(n)
        # diag·w_n + known = α/B·F(t_n, y_n),  w_n = y_n - (1-α)/B·F(t_n, y_n)
        y[n], residuals[n], iterations, damped = solver.solve(
            lambda v: -known / diag + (c1 + c2 / diag) * prob.rhs(t, v), y[n - 1]
        )
        stats.record(iterations, damped)
        w[n] = y[n] - c1 * prob.rhs(t, y[n])

    diagnostics = stats.diagnostics(prob, y[0])
    diagnostics["source_image"] = source
    return Trajectory(times, y, residuals, SolverPath.CAPUTO_FORM, diagnostics)


def solve_caputo_adams(prob: FDEProblem) -> Trajectory:
    """
    Adams-Bashforth-Moulton frazionario per ^C D^α y = F(t, y), y(0) = y0.

    Predittore: rettangoli prodotto b_k = h^α/Γ(α+1)·((k+1)^α - k^α).
    Correttore: trapezi prodotto, una sola correzione (PECE).
    """
    _require(prob, OperatorKind.CAPUTO_DERIV)
    alpha, h, times = prob.alpha, prob.h, prob.times
    predictor = rectangle_weights(alpha, h, prob.n)
    corrector = power_weights(alpha, h, prob.n)

    y = np.zeros(prob.n + 1)
    f = np.zeros(prob.n + 1)
    residuals = np.zeros(prob.n + 1)
    y[0] = prob.y0
    f[0] = prob.rhs(0.0, y[0])

    for n in _steps(prob, "Caputo ABM"):
        t = times[n]
        y_pred = prob.y0 + float(np.dot(predictor[n - 1::-1], f[:n]))
        history = prob.y0 + corrector.memory(f, n)
        y[n] = history + corrector.diagonal * prob.rhs(t, y_pred)
        f[n] = prob.rhs(t, y[n])
        residuals[n] = abs(y[n] - y_pred)

    diagnostics = {"initial_jump": 0.0, "max_iterations": 1, "damped_steps": 0}
    return Trajectory(times, y, residuals, SolverPath.ADAMS, diagnostics)


_DEFAULT_PATHS = {
    OperatorKind.CF_DERIV: "integral",
    OperatorKind.ABC_DERIV: "integral",
    OperatorKind.CAPUTO_DERIV: "adams",
}

_PATHS = {
    (OperatorKind.CF_DERIV, "integral"): solve_cf_integral,
    (OperatorKind.CF_DERIV, "ode"): solve_cf_ode,
    (OperatorKind.ABC_DERIV, "integral"): solve_abc_integral,
    (OperatorKind.ABC_DERIV, "caputo-form"): solve_abc_caputo_form,
    (OperatorKind.CAPUTO_DERIV, "adams"): solve_caputo_adams,
}


def solve(prob: FDEProblem, path: Optional[str] = None) -> Trajectory:
    """
    Risolve con il percorso richiesto (default: integrale per CF/ABC, Adams per Caputo).

    Raises:
        DomainError: Se il percorso non esiste per l'operatore del problema
    """
    path = path or _DEFAULT_PATHS[prob.op.kind]
    try:
        method = _PATHS[(prob.op.kind, path)]
    except KeyError:
        valid = [p for k, p in _PATHS if k == prob.op.kind]
        raise DomainError(
            f"percorso '{path}' non disponibile per {prob.op.kind.value} (validi: {', '.join(valid)})"
        ) from None
    logger.info(f"Risoluzione {prob.op.kind.value} con percorso {path}, N={prob.n}")
    return method(prob)


def jump_kernel(prob: FDEProblem, times: np.ndarray) -> np.ndarray:
    """Nucleo dell'operatore valutato nei ritardi t: risposta a un salto unitario in 0."""
    alpha = prob.alpha
    if prob.op.kind == OperatorKind.CF_DERIV:
        return np.exp(order_coefficient(alpha) * times)
    if prob.op.kind == OperatorKind.ABC_DERIV:
        omega = order_coefficient(alpha)
        return np.array([mittag_leffler(alpha, omega * t ** alpha) for t in times])
    out = np.zeros_like(times)
    positive = times > 0
    out[positive] = times[positive] ** (-alpha) / gamma_fn(1.0 - alpha)
    return out


def operator_residual(prob: FDEProblem, trajectory: Trajectory, t_skip: Optional[float] = None) -> float:
    """
    max |D^α y - F(t, y)| per t >= t_skip, con l'operatore applicato alla traiettoria.

    Il salto y(0⁺) - y0 contribuisce con M/(1-α)·salto·nucleo(t); per Caputo
    il nucleo del salto è t^{-α}/Γ(1-α).
    """
    if t_skip is None:
        t_skip = min(prob.T, max(10.0 * prob.h, 0.1))
    curve = GridFunction(0.0, prob.h, trajectory.values, None, Smoothness.AC)
    kind, alpha, norm = prob.op.kind, prob.alpha, prob.op.norm
    if kind == OperatorKind.CF_DERIV:
        applied = cf_derivative(curve, alpha, norm).values
        scale = norm(alpha) / (1.0 - alpha)
    elif kind == OperatorKind.ABC_DERIV:
        applied = abc_derivative(curve, alpha, norm).values
        scale = norm(alpha) / (1.0 - alpha)
    else:
        applied = caputo_derivative(curve, alpha).values
        scale = 1.0

    jump = trajectory.values[0] - prob.y0
    total = applied + scale * jump * jump_kernel(prob, trajectory.times)
    forcing = np.array([prob.rhs(t, v) for t, v in zip(trajectory.times, trajectory.values)])
    mask = trajectory.times >= t_skip
    return float(np.max(np.abs(total - forcing)[mask]))
