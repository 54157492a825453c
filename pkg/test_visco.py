"""
Test dei moduli di rilassamento (Scott-Blair, CF, ABC) e della tabella di confronto.

Uso:
    pytest test_visco.py
"""
import math

import numpy as np
import pytest
from scipy.special import erfcx

from errors import DomainError, RangeError
from fde.laplace import LaplaceQuery, laplace_invert
from operators.grid import GridFunction
from visco.figure1 import COLUMNS, figure1_dataset, figure1_grid
from visco.relaxation import (
    MaterialParams,
    RelaxationModel,
    boltzmann_stress,
    maxwell_equivalent,
    relaxation_abc,
    relaxation_abc_asymptotes,
    relaxation_abc_tail,
    relaxation_cf,
    relaxation_curve,
    relaxation_laplace,
    relaxation_modulus,
    relaxation_scott_blair,
)

SB = RelaxationModel.SCOTT_BLAIR
CF = RelaxationModel.CF_MAXWELL
ABC = RelaxationModel.ABC_FRACTIONAL_MAXWELL
HALF = MaterialParams(eta=1.0, alpha=0.5)


# === MODULI ===

def test_moduli_at_unit_time():
    assert relaxation_scott_blair(HALF, 1.0) == pytest.approx(1.0 / math.sqrt(math.pi), rel=1e-14)
    assert relaxation_cf(HALF, 1.0) == pytest.approx(2.0 * math.exp(-1.0), rel=1e-14)
    assert relaxation_abc(HALF, 1.0) == pytest.approx(2.0 * erfcx(1.0), rel=1e-12)


def test_glass_modulus_at_origin():
    assert HALF.glass_modulus == 2.0
    assert relaxation_cf(HALF, 0.0) == 2.0
    assert relaxation_abc(HALF, 0.0) == pytest.approx(2.0, rel=1e-15)


def test_viscosity_scales_moduli():
    thick = MaterialParams(eta=3.0, alpha=0.5)
    for model in RelaxationModel:
        assert relaxation_modulus(model, thick, 2.0) == pytest.approx(3.0 * relaxation_modulus(model, HALF, 2.0))


@pytest.mark.parametrize("t", [10.0, 100.0])
def test_ordering_at_long_times(t):
    # coda esponenziale < legge di potenza < coda di Mittag-Leffler (2x SB per α = 0.5)
    g_sb = relaxation_scott_blair(HALF, t)
    g_cf = relaxation_cf(HALF, t)
    g_abc = relaxation_abc(HALF, t)
    assert g_cf < g_sb < g_abc


def test_ordering_at_unit_time():
    assert relaxation_scott_blair(HALF, 1.0) < relaxation_cf(HALF, 1.0) < relaxation_abc(HALF, 1.0)


def test_modulus_accepts_model_names():
    assert relaxation_modulus("CF_MAXWELL", HALF, 1.0) == relaxation_cf(HALF, 1.0)


# === TRASFORMATE ===

@pytest.mark.parametrize("alpha", [0.3, 0.5, 0.7])
@pytest.mark.parametrize("model", list(RelaxationModel))
@pytest.mark.parametrize("t", [0.1, 1.0, 5.0])
def test_moduli_match_laplace_inversion(model, t, alpha):
    params = MaterialParams(eta=1.0, alpha=alpha)
    inverted = laplace_invert(LaplaceQuery(relaxation_laplace(model, params), 0.0, t))
    assert inverted == pytest.approx(relaxation_modulus(model, params, t), rel=1e-8, abs=1e-12)


def test_maxwell_equivalent():
    equivalent = maxwell_equivalent(MaterialParams(eta=2.0, alpha=0.25))
    assert equivalent.glass_modulus == pytest.approx(2.0 / 0.75)
    assert equivalent.relaxation_time == pytest.approx(3.0)
    # G_CF(t) = G0·exp(-t/τ)
    t = 1.7
    g0, tau = equivalent.glass_modulus, equivalent.relaxation_time
    assert relaxation_cf(MaterialParams(eta=2.0, alpha=0.25), t) == pytest.approx(g0 * math.exp(-t / tau))


# === ASINTOTI ===

def test_abc_power_law_tail():
    ratios = []
    for t in (50.0, 100.0):
        _, long = relaxation_abc_asymptotes(HALF, t)
        ratios.append(relaxation_abc(HALF, t) / long)
    assert all(abs(r - 1.0) < 0.05 for r in ratios)
    # la coda migliora allontanandosi dall'origine
    assert abs(ratios[1] - 1.0) < abs(ratios[0] - 1.0)


def test_abc_short_time_stretched_exponential():
    t = 1e-4
    short, _ = relaxation_abc_asymptotes(HALF, t)
    assert relaxation_abc(HALF, t) == pytest.approx(short, rel=1e-4)


def test_asymptotes_require_positive_time():
    with pytest.raises(DomainError):
        relaxation_abc_asymptotes(HALF, 0.0)


# === CURVE ===

def test_relaxation_curves_are_monotone():
    times = np.logspace(-2, 2, 50)
    for model in RelaxationModel:
        curve = relaxation_curve(model, HALF, times)
        assert curve.monotone
        assert len(curve.values) == 50


def test_curve_rejects_bad_grid():
    with pytest.raises(DomainError):
        relaxation_curve(CF, HALF, [1.0, 0.5])
    with pytest.raises(DomainError):
        relaxation_curve(CF, HALF, [0.0, 1.0])


def test_boltzmann_ramp_strain():
    # ε = t, ε' = 1: σ(t) = ∫_0^t G_CF = 2(1 - e^{-t})
    h = 0.01
    times = np.arange(201) * h
    strain = GridFunction(0.0, h, times, np.ones_like(times))
    stress = boltzmann_stress(CF, HALF, strain)
    np.testing.assert_allclose(stress, 2.0 * (1.0 - np.exp(-times)), atol=1e-4)


def test_boltzmann_abc_constant_rate_positive():
    h = 0.01
    times = np.arange(101) * h
    stress = boltzmann_stress(ABC, HALF, GridFunction(0.0, h, times, np.ones_like(times)))
    assert stress[0] == 0.0
    assert np.all(np.diff(stress) > 0)


def test_boltzmann_rejects_scott_blair():
    strain = GridFunction(0.0, 0.1, np.linspace(0.0, 1.0, 11))
    with pytest.raises(DomainError):
        boltzmann_stress(SB, HALF, strain)


# === ERRORI ===

@pytest.mark.parametrize("eta, alpha", [(0.0, 0.5), (-1.0, 0.5), (1.0, 0.0), (1.0, 1.0), (float("inf"), 0.5)])
def test_material_params_validation(eta, alpha):
    with pytest.raises(DomainError):
        MaterialParams(eta=eta, alpha=alpha)


def test_scott_blair_singular_at_origin():
    with pytest.raises(DomainError):
        relaxation_scott_blair(HALF, 0.0)


def test_abc_out_of_validated_range():
    with pytest.raises(RangeError) as info:
        relaxation_abc(MaterialParams(eta=1.0, alpha=0.7), 1000.0)
    assert info.value.bound == (-50.0, 5.0)


def test_abc_tail_inside_validated_range():
    for t in (0.01, 1.0, 10.0):
        assert relaxation_abc_tail(HALF, t) == relaxation_abc(HALF, t)


def test_abc_tail_beyond_validated_range():
    params = MaterialParams(eta=1.0, alpha=0.7)
    t = 1000.0
    tail = relaxation_abc_tail(params, t)
    inverted = laplace_invert(LaplaceQuery(relaxation_laplace(ABC, params), 0.0, t))
    assert tail == pytest.approx(inverted, rel=1e-6)
    _, long = relaxation_abc_asymptotes(params, t)
    assert tail == pytest.approx(long, rel=5e-3)


# === FIGURA 1 ===

def test_figure1_single_point():
    frame = figure1_dataset(grid=[1.0])
    assert list(frame.columns) == COLUMNS
    row = frame.iloc[0]
    assert row["G_SB"] == pytest.approx(1.0 / math.sqrt(math.pi))
    assert row["G_CF_over_M"] == pytest.approx(2.0 * math.exp(-1.0))
    assert row["G_ABC_over_B"] == pytest.approx(2.0 * erfcx(1.0), rel=1e-12)


def test_figure1_default_grid():
    frame = figure1_dataset()
    assert len(frame) == 400
    assert frame["t"].iloc[0] == pytest.approx(1e-2)
    assert frame["t"].iloc[-1] == pytest.approx(1e2)
    for column in COLUMNS[1:]:
        assert np.all(np.diff(frame[column].to_numpy()) < 0)
    tail = frame[frame["t"] >= 10.0]
    assert np.all(tail["G_CF_over_M"] < tail["G_SB"])


def test_figure1_long_tail_at_higher_order():
    # con alpha = 0.7 l'argomento di E_α esce da [-50, 5] verso t = 100
    frame = figure1_dataset(alpha=0.7)
    assert len(frame) == 400
    for column in COLUMNS[1:]:
        assert np.all(np.diff(frame[column].to_numpy()) < 0)
    params = MaterialParams(eta=1.0, alpha=0.7)
    _, long = relaxation_abc_asymptotes(params, 100.0)
    last = frame["G_ABC_over_B"].iloc[-1] * params.norm(0.7)
    assert last == pytest.approx(long, rel=2e-2)


def test_figure1_grid_validation():
    assert len(figure1_grid(5, 1.0, 10.0)) == 5
    with pytest.raises(DomainError):
        figure1_grid(1)
    with pytest.raises(DomainError):
        figure1_grid(10, 0.0, 1.0)
