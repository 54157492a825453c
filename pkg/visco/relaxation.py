"""
Moduli di rilassamento della legge di Scott-Blair con operatori di Caputo, CF e ABC.

    G_SB(t)  = η t^{-α}/Γ(1-α)
    G_CF(t)  = ηM/(1-α)·exp(-αt/(1-α))
    G_ABC(t) = ηB/(1-α)·E_α(-αt^α/(1-α))
"""
import logging
import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Callable, Sequence, Tuple

import numpy as np
from scipy.integrate import trapezoid

import config
from errors import DomainError, RangeError
from operators.grid import GridFunction, NormalizationFn
from special.gamma import gamma_fn
from special.mittag_leffler import asymptotic_expansion, mittag_leffler
from special.series import order_coefficient

logger = logging.getLogger(__name__)


class RelaxationModel(str, Enum):
    SCOTT_BLAIR = "SCOTT_BLAIR"
    CF_MAXWELL = "CF_MAXWELL"
    ABC_FRACTIONAL_MAXWELL = "ABC_FRACTIONAL_MAXWELL"


@dataclass(frozen=True)
class MaterialParams:
    """Viscosità η > 0, ordine α ∈ (0, 1) e normalizzazione M/B."""

    eta: float
    alpha: float
    norm: NormalizationFn = field(default_factory=NormalizationFn)

    def __post_init__(self):
        if not (self.eta > 0 and math.isfinite(self.eta)):
            raise DomainError(f"la viscosità deve essere > 0, ricevuto eta={self.eta}")
        if not (0.0 < self.alpha < 1.0):
            raise DomainError(f"l'ordine deve stare in (0, 1), ricevuto alpha={self.alpha}")

    @property
    def glass_modulus(self) -> float:
        """ηM(α)/(1-α): valore in t = 0 dei moduli CF e ABC."""
        return self.eta * self.norm(self.alpha) / (1.0 - self.alpha)


def relaxation_scott_blair(p: MaterialParams, t: float) -> float:
    if not t > 0:
        raise DomainError(f"G_SB è singolare in t=0: serve t > 0 (t={t})")
    return p.eta * t ** (-p.alpha) / gamma_fn(1.0 - p.alpha)


def relaxation_cf(p: MaterialParams, t: float) -> float:
    """Maxwell ordinario con modulo di vetro ηM/(1-α) e tempo (1-α)/α."""
    if t < 0:
        raise DomainError(f"G_CF richiede t >= 0 (t={t})")
    return p.glass_modulus * math.exp(order_coefficient(p.alpha) * t)


def relaxation_abc(p: MaterialParams, t: float) -> float:
    """
    Maxwell frazionario di ordine α.

    Raises:
        RangeError: Se -αt^α/(1-α) esce dall'intervallo validato di E_α
    """
    if t < 0:
        raise DomainError(f"G_ABC richiede t >= 0 (t={t})")
    return p.glass_modulus * mittag_leffler(p.alpha, order_coefficient(p.alpha) * t ** p.alpha)


def relaxation_abc_tail(p: MaterialParams, t: float) -> float:
    """
    G_ABC anche per tempi lunghi: quando -αt^α/(1-α) scende sotto ML_Z_MIN usa
    l'espansione asintotica completa di E_α con troncamento al termine minimo.

    Raises:
        RangeError: Se la stima d'errore dell'espansione supera ASYMPTOTIC_REL_TOL
    """
    z = order_coefficient(p.alpha) * t ** p.alpha
    if z >= config.ML_Z_MIN:
        return relaxation_abc(p, t)
    value, error = asymptotic_expansion(p.alpha, -z)
    if error > config.ASYMPTOTIC_REL_TOL * abs(value):
        raise RangeError(f"coda asintotica di G_ABC non accurata in t={t}", (config.ML_Z_MIN, config.ML_Z_MAX))
    logger.debug(f"G_ABC(t={t}): z={z:.4g} oltre l'intervallo, coda asintotica")
    return p.glass_modulus * value


_MODULI = {
    RelaxationModel.SCOTT_BLAIR: relaxation_scott_blair,
    RelaxationModel.CF_MAXWELL: relaxation_cf,
    RelaxationModel.ABC_FRACTIONAL_MAXWELL: relaxation_abc,
}


def relaxation_modulus(model: RelaxationModel, p: MaterialParams, t: float) -> float:
    return _MODULI[RelaxationModel(model)](p, t)


def relaxation_laplace(model: RelaxationModel, p: MaterialParams) -> Callable[[np.ndarray], np.ndarray]:
    """
    G̃(s) dei tre modelli:
        SB:  η s^{α-1}
        CF:  ηM/(1-α)·(s + α/(1-α))^{-1}
        ABC: ηB/(1-α)·s^{α-1}/(s^α + α/(1-α))
    """
    model = RelaxationModel(model)
    alpha, rate = p.alpha, -order_coefficient(p.alpha)
    if model == RelaxationModel.SCOTT_BLAIR:
        return lambda s: p.eta * s ** (alpha - 1.0)
    if model == RelaxationModel.CF_MAXWELL:
        return lambda s: p.glass_modulus / (s + rate)
    return lambda s: p.glass_modulus * s ** (alpha - 1.0) / (s ** alpha + rate)


@dataclass(frozen=True)
class MaxwellEquivalent:
    glass_modulus: float
    relaxation_time: float


def maxwell_equivalent(p: MaterialParams) -> MaxwellEquivalent:
    """Costanti del Maxwell ordinario equivalente a G_CF: ηM/(1-α) e (1-α)/α."""
    return MaxwellEquivalent(p.glass_modulus, (1.0 - p.alpha) / p.alpha)


def relaxation_abc_asymptotes(p: MaterialParams, t: float) -> Tuple[float, float]:
    """
    Approssimazioni di G_ABC per tempi brevi e lunghi.

    Returns:
        (esponenziale stirato G0·exp(-αt^α/((1-α)Γ(1+α))),
         legge di potenza G0·(1-α)/(α Γ(1-α) t^α))
    """
    if not t > 0:
        raise DomainError(f"gli asintoti richiedono t > 0 (t={t})")
    g0, alpha = p.glass_modulus, p.alpha
    short = g0 * math.exp(-alpha * t ** alpha / ((1.0 - alpha) * gamma_fn(1.0 + alpha)))
    long = g0 * (1.0 - alpha) / (alpha * gamma_fn(1.0 - alpha) * t ** alpha)
    return short, long


@dataclass(frozen=True, eq=False)
class RelaxationCurve:
    model: RelaxationModel
    params: MaterialParams
    times: np.ndarray
    values: np.ndarray

    def __post_init__(self):
        times = np.array(self.times, dtype=float)
        if times.ndim != 1 or len(times) == 0:
            raise DomainError("la griglia dei tempi deve essere un vettore non vuoto")
        if np.any(times <= 0) or np.any(np.diff(times) <= 0):
            raise DomainError("i tempi devono essere positivi e strettamente crescenti")
        values = np.array(self.values, dtype=float)
        times.setflags(write=False)
        values.setflags(write=False)
        object.__setattr__(self, "times", times)
        object.__setattr__(self, "values", values)
        object.__setattr__(self, "model", RelaxationModel(self.model))

    @property
    def monotone(self) -> bool:
        return bool(np.all(np.diff(self.values) < 0))


def relaxation_curve(
    model: RelaxationModel, p: MaterialParams, times: Sequence[float], long_tail: bool = False
) -> RelaxationCurve:
    """
    Campiona il modulo richiesto su una griglia positiva e crescente.

    Con long_tail=True G_ABC oltre l'intervallo validato viene dalla coda asintotica.
    """
    times = np.asarray(times, dtype=float)
    if np.any(times <= 0) or np.any(np.diff(times) <= 0):
        raise DomainError("i tempi devono essere positivi e strettamente crescenti")
    model = RelaxationModel(model)
    modulus = _MODULI[model]
    if long_tail and model == RelaxationModel.ABC_FRACTIONAL_MAXWELL:
        modulus = relaxation_abc_tail
    values = np.array([modulus(p, t) for t in times])
    logger.debug(f"Curva {model.value}: {len(times)} punti, alpha={p.alpha}")
    return RelaxationCurve(model, p, times, values)


def boltzmann_stress(model: RelaxationModel, p: MaterialParams, strain: GridFunction) -> np.ndarray:
    """
    Sovrapposizione di Boltzmann σ(t) = ∫_0^t G(t-τ) ε'(τ) dτ sui nodi della griglia.

    Solo per CF e ABC (nucleo limitato in 0); ε' viene dai campioni esatti o sintetizzati.
    """
    model = RelaxationModel(model)
    if model == RelaxationModel.SCOTT_BLAIR:
        raise DomainError("G_SB è singolare in 0: la sovrapposizione per trapezi non si applica")
    rate, _ = strain.derivative()
    lags = strain.times - strain.a
    kernel = np.array([relaxation_modulus(model, p, u) for u in lags])
    stress = np.zeros(len(lags))
    for n in range(1, len(lags)):
        stress[n] = trapezoid(kernel[n::-1] * rate[: n + 1], dx=strain.h)
    return stress
