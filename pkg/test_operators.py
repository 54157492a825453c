"""
Test degli operatori su griglia: integrali RL e di Prabhakar, derivate Caputo/CF/ABC e cammini a serie.

Uso:
    pytest test_operators.py
"""
import math

import numpy as np
import pytest

from errors import ConvergenceError, DomainError, ParseError, PreconditionError
from operators.derivatives import (
    abc_derivative,
    abc_series,
    apply_operator,
    caputo_derivative,
    cf_derivative,
    cf_series,
    derivative_series_order,
    interpolant_derivative,
)
from operators.grid import (
    GridFunction,
    NormalizationFn,
    OperatorKind,
    OperatorSpec,
    Smoothness,
)
from operators.integrals import (
    SeriesResult,
    prabhakar_integral,
    prabhakar_integral_series,
    rl_integral,
    series_order,
)
from operators.quadrature import (
    exponential_weights,
    interpolation_error_bound,
    l1_weights,
    power_weights,
    starting_exponents,
    starting_weights,
)
from operators.samplers import BUILTINS, builtin_function
from special.gamma import gamma_fn
from special.prabhakar import prabhakar_function
from special.series import PrabhakarParams


@pytest.fixture
def linear():
    return builtin_function("t")(0.0, 2.0, 0.01)


# === GRIGLIA ===

def test_grid_function_is_read_only(linear):
    assert linear.n == 200
    assert linear.horizon == pytest.approx(2.0)
    with pytest.raises(ValueError):
        linear.values[0] = 1.0


@pytest.mark.parametrize("values", [[1.0], [0.0, math.inf]])
def test_grid_function_rejects_bad_samples(values):
    with pytest.raises(DomainError):
        GridFunction(0.0, 0.1, values)


def test_grid_function_derivative_length():
    with pytest.raises(DomainError):
        GridFunction(0.0, 0.1, [0.0, 1.0, 2.0], [1.0, 1.0])


def test_derivative_synthesis(linear):
    bare = GridFunction(0.0, 0.01, linear.values, None, Smoothness.AC)
    deriv, synthesized = bare.derivative()
    assert synthesized
    np.testing.assert_allclose(deriv, 1.0, atol=1e-10)
    with pytest.raises(PreconditionError):
        bare.derivative(synthesize=False)
    with pytest.raises(PreconditionError):
        GridFunction(0.0, 0.01, linear.values, None, Smoothness.L1).derivative()


def test_normalization_table():
    norm = NormalizationFn.from_pairs([(0.0, 1.0), (0.5, 1.2), (1.0, 1.0)])
    assert norm(0.25) == pytest.approx(1.1)
    assert NormalizationFn()(0.3) == 1.0
    with pytest.raises(DomainError):
        NormalizationFn.from_pairs([(0.0, 1.0), (1.0, 2.0)])


def test_operator_spec_validation():
    with pytest.raises(DomainError):
        OperatorSpec(OperatorKind.CF_DERIV, 1.2)
    with pytest.raises(DomainError):
        OperatorSpec(OperatorKind.PRABHAKAR_INTEGRAL, 1.0)
    with pytest.raises(DomainError):
        OperatorSpec(OperatorKind.RL_INTEGRAL, -0.5)
    spec = OperatorSpec(OperatorKind.ABC_DERIV, 0.4)
    assert spec.with_order(0.6).alpha == 0.6


# === FUNZIONI PREDEFINITE ===

@pytest.mark.parametrize("name, f, df", [
    ("const1", lambda t: np.ones_like(t), lambda t: np.zeros_like(t)),
    ("t2", lambda t: t * t, lambda t: 2.0 * t),
    ("sin", np.sin, np.cos),
])
def test_builtin_samples(name, f, df):
    g = builtin_function(name)(0.0, 1.0, 0.1)
    np.testing.assert_allclose(g.values, f(g.times))
    np.testing.assert_allclose(g.deriv_values, df(g.times))
    assert g.smoothness == Smoothness.AC
    assert g.metadata["function"] == name


def test_builtin_unknown_name_lists_valid_ones():
    with pytest.raises(ParseError) as info:
        builtin_function("cosh")
    for name in BUILTINS:
        assert name in str(info.value)


def test_builtin_rejects_misaligned_grid():
    with pytest.raises(DomainError):
        builtin_function("t")(0.0, 1.0, 0.3)


# === PESI DI QUADRATURA ===

def test_power_weights_exact_on_constants():
    sigma, h, n = 0.4, 0.05, 40
    t = h * np.arange(n + 1)
    integral = power_weights(sigma, h, n).apply(np.ones(n + 1))
    np.testing.assert_allclose(integral, t ** sigma / gamma_fn(sigma + 1.0), rtol=1e-11, atol=1e-14)


def test_exponential_weights_exact_on_linear():
    lam, h, n = -0.8, 0.02, 100
    t = h * np.arange(n + 1)
    # ∫_0^t e^{λ(t-τ)} dτ
    integral = exponential_weights(lam, h, n).apply(np.ones(n + 1))
    np.testing.assert_allclose(integral, np.expm1(lam * t) / lam, rtol=1e-10, atol=1e-14)


def test_starting_weights_exact_on_fractional_power():
    alpha, h, n = 0.5, 0.01, 30
    weights = power_weights(alpha, h, n)
    exponents = starting_exponents(alpha)
    assert exponents == (0.0, 0.5, 1.0, 1.5)
    table = starting_weights(weights, alpha, exponents, n)
    t = h * np.arange(n + 1)
    samples = t ** alpha
    corrected = weights.apply(samples) + np.array(
        [float(np.dot(table[i], samples[: table.shape[1]])) for i in range(n + 1)]
    )
    exact = gamma_fn(alpha + 1.0) / gamma_fn(2.0 * alpha + 1.0) * t ** (2.0 * alpha)
    np.testing.assert_allclose(corrected, exact, atol=1e-11)


def test_l1_weights_exact_on_linear():
    alpha, h, n = 0.4, 0.02, 50
    t = h * np.arange(n + 1)
    derivative = l1_weights(alpha, h, n).apply(t)
    np.testing.assert_allclose(derivative, t ** (1.0 - alpha) / gamma_fn(2.0 - alpha), atol=1e-12)


def test_l1_memory_matches_apply():
    alpha, h, n = 0.6, 0.05, 20
    weights = l1_weights(alpha, h, n)
    samples = np.sin(h * np.arange(n + 1))
    full = weights.apply(samples)
    for i in (1, 2, 7, n):
        assert weights.memory(samples, i) + weights.diagonal * samples[i] == pytest.approx(full[i], abs=1e-12)


def test_l1_starting_weights_exact_on_fractional_power():
    # D^α t^α = Γ(α+1)
    alpha, h, n = 0.5, 0.01, 30
    weights = l1_weights(alpha, h, n)
    table = starting_weights(weights, -alpha, starting_exponents(alpha), n)
    t = h * np.arange(n + 1)
    samples = t ** alpha
    corrected = weights.apply(samples) + table @ samples[: table.shape[1]]
    exact = np.full(n + 1, gamma_fn(alpha + 1.0))
    exact[0] = 0.0
    np.testing.assert_allclose(corrected[1:], exact[1:], atol=1e-10)


def test_l1_weights_reject_bad_order():
    with pytest.raises(DomainError):
        l1_weights(1.0, 0.1, 10)


def test_interpolation_error_bound():
    assert interpolation_error_bound(np.linspace(0.0, 1.0, 11)) == pytest.approx(0.0, abs=1e-16)
    assert interpolation_error_bound([0.0, 1.0, 0.0]) == pytest.approx(0.25)


# === INTEGRALI ===

def test_rl_integral_monomial(linear):
    sigma = 0.7
    result = rl_integral(linear, sigma)
    exact = linear.times ** (1.0 + sigma) / gamma_fn(2.0 + sigma)
    np.testing.assert_allclose(result.values, exact, atol=1e-10)
    assert result.values[0] == 0.0


def test_rl_integral_rejects_non_positive_order(linear):
    with pytest.raises(DomainError):
        rl_integral(linear, 0.0)


def test_prabhakar_integral_without_memory_is_rl(linear):
    # ω = 0: il nucleo si riduce a t^{β-1}/Γ(β)
    p = PrabhakarParams(0.5, 1.5, 1.0, 0.0)
    np.testing.assert_allclose(
        prabhakar_integral(linear, p).values, rl_integral(linear, 1.5).values, atol=1e-10
    )


def test_prabhakar_integral_exponential_kernel(linear):
    # nucleo e^{ωu}: ∫_0^t e^{ω(t-τ)} τ dτ = (e^{ωt} - 1 - ωt)/ω²
    p = PrabhakarParams(1.0, 1.0, 1.0, -1.0)
    t = linear.times
    exact = np.expm1(-t) + t
    np.testing.assert_allclose(prabhakar_integral(linear, p).values, exact, atol=1e-10)


@pytest.mark.parametrize("name", ["const1", "t", "t2", "sin"])
def test_prabhakar_direct_matches_series(name):
    f = builtin_function(name)(0.0, 2.0, 0.01)
    p = PrabhakarParams(0.5, 1.0, 1.0, -1.0)
    direct = prabhakar_integral(f, p).values
    series = prabhakar_integral_series(f, p, K=series_order(f, p, 1e-12))
    scale = max(1.0, float(np.max(np.abs(direct))))
    assert float(np.max(np.abs(direct - series.values))) / scale <= 1e-8
    assert series.K > 0


def test_prabhakar_series_origin_mismatch(linear):
    with pytest.raises(DomainError):
        prabhakar_integral_series(linear, PrabhakarParams(0.5, 1.0, 1.0, -1.0), a=1.0, K=3)


def test_prabhakar_series_cap(linear):
    with pytest.raises(ConvergenceError):
        prabhakar_integral_series(linear, PrabhakarParams(0.5, 1.0, 1.0, -1.0), K=401)


# === DERIVATE ===

def test_caputo_derivative_of_linear(linear):
    alpha = 0.3
    result = caputo_derivative(linear, alpha)
    exact = linear.times ** (1.0 - alpha) / gamma_fn(2.0 - alpha)
    np.testing.assert_allclose(result.values, exact, atol=1e-10)


def test_cf_derivative_of_linear(linear):
    alpha = 0.5
    # M/(1-α)·∫ e^{ω(t-τ)} dτ = M/α·(1 - e^{ωt})
    exact = (1.0 - np.exp(-linear.times)) / alpha
    np.testing.assert_allclose(cf_derivative(linear, alpha).values, exact, atol=1e-10)


def test_cf_derivative_normalization(linear):
    norm = NormalizationFn.from_pairs([(0.0, 1.0), (0.5, 2.0), (1.0, 1.0)])
    np.testing.assert_allclose(
        cf_derivative(linear, 0.5, norm).values, 2.0 * cf_derivative(linear, 0.5).values, rtol=1e-14
    )


def test_cf_derivative_of_constant_is_zero():
    f = builtin_function("const1")(0.0, 1.0, 0.1)
    np.testing.assert_array_equal(cf_derivative(f, 0.5).values, 0.0)


def test_abc_derivative_of_linear(linear):
    alpha = 0.5
    omega = -alpha / (1.0 - alpha)
    # B/(1-α)·∫_0^t E_α(ωu^α) du = B/(1-α)·t·E_{α,2}(ωt^α)
    p = PrabhakarParams(alpha, 2.0, 1.0)
    exact = [
        t * prabhakar_function(p, omega * t ** alpha) / (1.0 - alpha) if t > 0 else 0.0
        for t in linear.times
    ]
    np.testing.assert_allclose(abc_derivative(linear, alpha).values, exact, atol=1e-10)


def test_derivative_rejects_bad_order(linear):
    with pytest.raises(DomainError):
        cf_derivative(linear, 1.0)
    with pytest.raises(DomainError):
        abc_derivative(linear, 0.0)


# === PROPRIETÀ DEGLI OPERATORI ===

_LINEAR_OPERATORS = {
    "rl": lambda f: rl_integral(f, 0.4),
    "caputo": lambda f: caputo_derivative(f, 0.4),
    "cf": lambda f: cf_derivative(f, 0.5),
    "abc": lambda f: abc_derivative(f, 0.5),
    "prabhakar": lambda f: prabhakar_integral(f, PrabhakarParams(0.5, 1.0, 1.0, -1.0)),
    "cf-interpolant": lambda f: interpolant_derivative(f, 0.5, OperatorKind.CF_DERIV),
}


@pytest.mark.parametrize("name", sorted(_LINEAR_OPERATORS))
def test_operators_are_linear(name):
    op = _LINEAR_OPERATORS[name]
    f = builtin_function("t2")(0.0, 2.0, 0.01)
    g = builtin_function("sin")(0.0, 2.0, 0.01)
    combined = GridFunction(
        0.0, 0.01, 2.0 * f.values + 3.0 * g.values, 2.0 * f.deriv_values + 3.0 * g.deriv_values
    )
    expected = 2.0 * op(f).values + 3.0 * op(g).values
    np.testing.assert_allclose(op(combined).values, expected, rtol=1e-12, atol=1e-12)


def _semigroup_gap(h):
    f = builtin_function("t2")(0.0, 2.0, h)
    inner = rl_integral(f, 0.3)
    gap = float(np.max(np.abs(rl_integral(inner, 0.4).values - rl_integral(f, 0.7).values)))
    return gap, f, inner


def test_rl_semigroup():
    gap, f, inner = _semigroup_gap(0.01)
    T = f.horizon
    inner_error = interpolation_error_bound(f.values) * T ** 0.3 / gamma_fn(1.3)
    bound = (
        (interpolation_error_bound(inner.values) + inner_error) * T ** 0.4 / gamma_fn(1.4)
        + interpolation_error_bound(f.values) * T ** 0.7 / gamma_fn(1.7)
    )
    assert gap <= 2.0 * bound
    exact = 2.0 * f.times ** 2.7 / gamma_fn(3.7)
    np.testing.assert_allclose(rl_integral(f, 0.7).values, exact, atol=2.0 * bound)


def test_rl_semigroup_gap_shrinks_with_h():
    assert _semigroup_gap(0.01)[0] < _semigroup_gap(0.02)[0]


@pytest.mark.parametrize("k", [1, 2, 3])
@pytest.mark.parametrize("name", ["exp-decay", "sin"])
def test_shift_identity(name, k):
    # J^{k+1} f' = J^k f - f(a)·t^k/k!
    f = builtin_function(name)(0.0, 2.0, 0.01)
    df = f.derivative_function()
    T = f.horizon
    lhs = rl_integral(df, k + 1.0).values
    rhs = rl_integral(f, float(k)).values - f.values[0] * f.times ** k / math.factorial(k)
    bound = (
        interpolation_error_bound(f.values) * T ** k / math.factorial(k)
        + interpolation_error_bound(df.values) * T ** (k + 1) / math.factorial(k + 1)
    )
    assert float(np.max(np.abs(lhs - rhs))) <= 2.0 * bound + 1e-13


# === INTERPOLANTE ===

def test_interpolant_derivative_exact_for_linear(linear):
    np.testing.assert_allclose(
        interpolant_derivative(linear, 0.5, OperatorKind.CF_DERIV).values,
        cf_derivative(linear, 0.5).values,
        atol=1e-10,
    )
    np.testing.assert_allclose(
        interpolant_derivative(linear, 0.5, OperatorKind.ABC_DERIV).values,
        abc_derivative(linear, 0.5).values,
        atol=1e-9,
    )


@pytest.mark.parametrize("kind", [OperatorKind.CF_DERIV, OperatorKind.ABC_DERIV])
@pytest.mark.parametrize("name", ["sin", "exp-decay"])
def test_interpolant_derivative_equals_series(kind, name):
    f = builtin_function(name)(0.0, 2.0, 0.01)
    K = derivative_series_order(f, 0.5, kind, 1e-12)
    series = cf_series(f, 0.5, K=K) if kind == OperatorKind.CF_DERIV else abc_series(f, 0.5, K=K)
    result = interpolant_derivative(f, 0.5, kind)
    assert result.metadata["path"] == "interpolant"
    assert float(np.max(np.abs(result.values - series.values))) <= 1e-9


def test_interpolant_derivative_rejects_integrals(linear):
    with pytest.raises(DomainError):
        interpolant_derivative(linear, 0.5, OperatorKind.RL_INTEGRAL)


# === CAMMINI A SERIE ===

@pytest.mark.parametrize("name", ["t", "sin", "exp-decay"])
def test_cf_series_matches_direct(name):
    f = builtin_function(name)(0.0, 2.0, 0.01)
    K = derivative_series_order(f, 0.5, OperatorKind.CF_DERIV, 1e-10)
    result = cf_series(f, 0.5, K=K)
    assert isinstance(result, SeriesResult)
    np.testing.assert_allclose(
        result.values, interpolant_derivative(f, 0.5, OperatorKind.CF_DERIV).values, atol=1e-9
    )
    # f e f' interpolati separatamente: scarto O(h²) con nucleo monotono (∫|K'| <= 1)
    scale = 1.0 / (1.0 - 0.5)
    bound = scale * (
        2.0 * interpolation_error_bound(f.values) + f.horizon * interpolation_error_bound(f.deriv_values)
    )
    gap = float(np.max(np.abs(result.values - cf_derivative(f, 0.5).values)))
    assert gap <= 2.0 * bound + 1e-10


def test_cf_series_exact_for_linear():
    f = builtin_function("t")(0.0, 2.0, 0.01)
    K = derivative_series_order(f, 0.5, OperatorKind.CF_DERIV, 1e-12)
    np.testing.assert_allclose(cf_series(f, 0.5, K=K).values, cf_derivative(f, 0.5).values, atol=1e-10)


def test_abc_series_matches_direct_for_linear():
    f = builtin_function("t")(0.0, 5.0, 0.01)
    K = derivative_series_order(f, 0.5, OperatorKind.ABC_DERIV, 1e-10)
    series = abc_series(f, 0.5, K=K)
    assert float(np.max(np.abs(series.values - abc_derivative(f, 0.5).values))) <= 1e-7


def test_series_alpha_cap(linear):
    with pytest.raises(DomainError, match="0.95"):
        cf_series(linear, 0.97, K=10)


def test_series_order_limits(linear):
    with pytest.raises(DomainError):
        abc_series(linear, 0.5, K=-1)
    with pytest.raises(ConvergenceError):
        abc_series(linear, 0.5, K=1000)


def test_apply_operator_dispatch(linear):
    spec = OperatorSpec(OperatorKind.PRABHAKAR_INTEGRAL, 1.0, PrabhakarParams(0.5, 1.0, 1.0, -1.0))
    assert isinstance(apply_operator(spec, linear, series=True), SeriesResult)
    assert isinstance(apply_operator(spec, linear), GridFunction)
    rl = apply_operator(OperatorSpec(OperatorKind.RL_INTEGRAL, 0.5), linear)
    np.testing.assert_allclose(rl.values, rl_integral(linear, 0.5).values)


def test_apply_operator_origin_mismatch(linear):
    with pytest.raises(DomainError):
        apply_operator(OperatorSpec(OperatorKind.CF_DERIV, 0.5, a=1.0), linear)
