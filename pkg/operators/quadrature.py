"""
Quadratura a trapezi prodotto per convoluzioni di Volterra su griglia uniforme.

Per un nucleo K e l'interpolante lineare a tratti di f:
    ∫_{t_0}^{t_n} K(t_n - τ) f(τ) dτ = first[n]·f_0 + Σ_{j=1}^{n} conv[n-j]·f_j
dove, sulla cella di ritardo m (u ∈ [(m-1)h, mh]),
    A(m) = ∫ K(u)(u - (m-1)h) du,   B(m) = ∫ K(u)(mh - u) du
    first[n] = A(n)/h,  conv[0] = B(1)/h,  conv[m] = (A(m) + B(m+1))/h.
"""
import math
import logging
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Sequence, Tuple, Union

import numpy as np

import config
from errors import ConvergenceError, DomainError
from special.gamma import log_gamma, gamma_fn
from special.summation import CompensatedSum

logger = logging.getLogger(__name__)


def _readonly(array: np.ndarray) -> np.ndarray:
    array.setflags(write=False)
    return array


@dataclass(frozen=True, eq=False)
class ConvolutionWeights:
    """Pesi di convoluzione per N intervalli di passo h."""

    first: np.ndarray
    conv: np.ndarray
    h: float

    @property
    def n(self) -> int:
        return len(self.conv) - 1

    @property
    def diagonal(self) -> float:
        """Peso del campione corrente f_n."""
        return float(self.conv[0])

    def apply(self, values: Sequence[float]) -> np.ndarray:
        """Integrale su tutta la griglia; l'uscita vale 0 in t_0."""
        values = np.asarray(values, dtype=float)
        size = len(values)
        if size - 1 > self.n:
            raise DomainError(f"pesi calcolati per {self.n} intervalli, richiesti {size - 1}")
        out = np.zeros(size)
        if size > 1:
            out[1:] = self.first[1:size] * values[0] + np.convolve(self.conv[:size], values[1:])[: size - 1]
        return out

    def memory(self, values: np.ndarray, n: int) -> float:
        """Contributo di f_0..f_{n-1} all'integrale in t_n (esclude f_n)."""
        history = float(self.first[n] * values[0])
        if n > 1:
            history += float(np.dot(self.conv[n - 1:0:-1], values[1:n]))
        return history


def weights_from_moments(cell_a: np.ndarray, cell_b: np.ndarray, h: float) -> ConvolutionWeights:
    """
    Args:
        cell_a: A(m) per m = 0..N (indice 0 ignorato)
        cell_b: B(m) per m = 0..N (indice 0 ignorato)
        h: Passo
    """
    size = len(cell_a)
    first = np.zeros(size)
    conv = np.zeros(size)
    first[1:] = cell_a[1:] / h
    conv[0] = cell_b[1] / h
    conv[1:size - 1] = (cell_a[1:size - 1] + cell_b[2:size]) / h
    # conv[N] non interviene: il ritardo N tocca solo il nodo 0, pesato da first[N]
    return ConvolutionWeights(_readonly(first), _readonly(conv), h)


def weights_from_antiderivatives(k1: np.ndarray, k2: np.ndarray, h: float) -> ConvolutionWeights:
    """
    Pesi a partire dalle primitive K1 = ∫_0^u K e K2 = ∫_0^u K1 campionate in u = m·h.
    Integrazione esatta del nucleo su ogni cella, anche se singolare in u = 0.
    """
    k1 = np.asarray(k1, dtype=float)
    k2 = np.asarray(k2, dtype=float)
    cell_a = np.zeros_like(k1)
    cell_b = np.zeros_like(k1)
    increments = k2[1:] - k2[:-1]
    cell_a[1:] = h * k1[1:] - increments
    cell_b[1:] = increments - h * k1[:-1]
    return weights_from_moments(cell_a, cell_b, h)


def _power_antiderivative(u: np.ndarray, exponent: float) -> np.ndarray:
    """u^e / Γ(e+1) calcolato in scala logaritmica (nullo in u = 0)."""
    out = np.zeros_like(u)
    positive = u > 0
    out[positive] = np.exp(exponent * np.log(u[positive]) - log_gamma(exponent + 1.0))
    return out


@lru_cache(maxsize=256)
def power_weights(sigma: float, h: float, n: int) -> ConvolutionWeights:
    """
    Pesi del nucleo di Riemann-Liouville u^{σ-1}/Γ(σ).

    Coincidono con i pesi di trapezi prodotto (correttore di Adams-Moulton frazionario).
    """
    if sigma <= 0:
        raise DomainError(f"l'ordine dell'integrale deve essere > 0, ricevuto sigma={sigma}")
    u = h * np.arange(n + 1)
    return weights_from_antiderivatives(
        _power_antiderivative(u, sigma), _power_antiderivative(u, sigma + 1.0), h
    )


def rectangle_weights(sigma: float, h: float, n: int) -> np.ndarray:
    """
    Pesi del predittore (rettangoli prodotto): b_k = h^σ/Γ(σ+1)·((k+1)^σ - k^σ).
    """
    k = np.arange(n + 1, dtype=float)
    return (h ** sigma / gamma_fn(sigma + 1.0)) * ((k + 1.0) ** sigma - k ** sigma)


@dataclass(frozen=True, eq=False)
class L1Weights:
    """
    Schema L1 per la derivata di Caputo di ordine α ∈ (0, 1):
        D w(t_n) ≈ h^{-α}/Γ(2-α)·Σ_{j=0}^{n-1} b_j (w_{n-j} - w_{n-j-1}),  b_j = (j+1)^{1-α} - j^{1-α}
    """

    b: np.ndarray
    scale: float
    h: float

    @property
    def n(self) -> int:
        return len(self.b) - 1

    @property
    def diagonal(self) -> float:
        """Peso del campione corrente w_n (b_0 = 1)."""
        return self.scale

    def apply(self, values: Sequence[float]) -> np.ndarray:
        """Derivata su tutta la griglia; l'uscita vale 0 in t_0."""
        values = np.asarray(values, dtype=float)
        size = len(values)
        if size - 1 > self.n:
            raise DomainError(f"pesi calcolati per {self.n} intervalli, richiesti {size - 1}")
        out = np.zeros(size)
        if size > 1:
            out[1:] = self.scale * np.convolve(self.b[: size - 1], np.diff(values))[: size - 1]
        return out

    def memory(self, values: np.ndarray, n: int) -> float:
        """Contributo di w_0..w_{n-1} alla derivata in t_n (esclude w_n)."""
        history = -float(values[n - 1])
        if n > 1:
            history += float(np.dot(self.b[1:n], np.diff(values[:n])[::-1]))
        return self.scale * history


@lru_cache(maxsize=64)
def l1_weights(alpha: float, h: float, n: int) -> L1Weights:
    if not (0.0 < alpha < 1.0):
        raise DomainError(f"lo schema L1 richiede alpha in (0, 1), ricevuto {alpha}")
    k = np.arange(n + 1, dtype=float)
    b = _readonly((k + 1.0) ** (1.0 - alpha) - k ** (1.0 - alpha))
    return L1Weights(b, h ** (-alpha) / gamma_fn(2.0 - alpha), h)


def _exponential_cell_integrals(lam: float, h: float) -> Tuple[float, float]:
    """∫_0^h v e^{λv} dv e ∫_0^h (h-v) e^{λv} dv."""
    x = lam * h
    if abs(x) < 0.5:
        first, second = CompensatedSum(), CompensatedSum()
        power, factorial = 1.0, 1.0
        for k in range(40):
            first.add(power / (factorial * (k + 2)))
            second.add(power / (factorial * (k + 1) * (k + 2)))
            power *= x
            factorial *= k + 1
        return h * h * first.value, h * h * second.value
    em1 = math.expm1(x)
    return (x * math.exp(x) - em1) / (lam * lam), (em1 - x) / (lam * lam)


def exponential_weights(lam: float, h: float, n: int) -> ConvolutionWeights:
    """Pesi in forma chiusa per il nucleo K(u) = e^{λu}."""
    i_a, i_b = _exponential_cell_integrals(lam, h)
    m = np.arange(n + 1, dtype=float)
    decay = np.exp(lam * h * (m - 1.0))
    cell_a = decay * i_a
    cell_b = decay * i_b
    return weights_from_moments(cell_a, cell_b, h)


def gauss_legendre_weights(
    kernel: Callable[[float], float],
    first_cell: Tuple[float, float],
    h: float,
    n: int,
    nodes: int = config.GAUSS_NODES,
) -> ConvolutionWeights:
    """
    Pesi per un nucleo regolare su (0, ∞), con Gauss-Legendre sulle celle m >= 2.

    Args:
        kernel: K(u) scalare
        first_cell: Momenti (A(1), B(1)) calcolati analiticamente sulla cella singolare
        h: Passo
        n: Numero di intervalli
        nodes: Nodi di Gauss-Legendre per cella
    """
    x, w = np.polynomial.legendre.leggauss(nodes)
    v = 0.5 * h * (x + 1.0)
    w = 0.5 * h * w
    cell_a = np.zeros(n + 1)
    cell_b = np.zeros(n + 1)
    cell_a[1], cell_b[1] = first_cell
    for m in range(2, n + 1):
        samples = np.array([kernel((m - 1) * h + vi) for vi in v])
        cell_a[m] = float(np.dot(w, samples * v))
        cell_b[m] = float(np.dot(w, samples * (h - v)))
    return weights_from_moments(cell_a, cell_b, h)


def mittag_leffler_first_cell(alpha: float, omega: float, h: float) -> Tuple[float, float]:
    """
    Momenti esatti di K(u) = E_α(ω u^α) sulla prima cella [0, h], per serie termine a termine.
    """
    cell_a, cell_b = CompensatedSum(), CompensatedSum()
    for k in range(config.SERIES_HARD_CAP + 1):
        e = alpha * k
        common = omega ** k * math.exp((e + 2.0) * math.log(h) - log_gamma(e + 1.0))
        term_a = common / (e + 2.0)
        cell_a.add(term_a)
        cell_b.add(term_a / (e + 1.0))
        if k > 0 and abs(term_a) <= 1e-18 * abs(cell_a.value):
            return cell_a.value, cell_b.value
    raise ConvergenceError(f"momenti della prima cella non convergenti (alpha={alpha}, h={h})")


def starting_exponents(alpha: float, limit: int = config.MAX_STARTING_EXPONENTS) -> Tuple[float, ...]:
    """
    Esponenti {0, 1} ∪ {kα < 2 non interi} (al più `limit` frazionari), in ordine crescente.
    """
    fractional = []
    k = 1
    while k * alpha < 2.0 and len(fractional) < limit:
        nu = k * alpha
        if abs(nu - round(nu)) > 1e-9:
            fractional.append(nu)
        k += 1
    return tuple(sorted({0.0, 1.0, *fractional}))


def starting_weights(
    weights: Union[ConvolutionWeights, L1Weights], sigma: float, exponents: Sequence[float], n: int
) -> np.ndarray:
    """
    Pesi di correzione sui primi nodi che rendono la regola esatta per t^ν, ν negli esponenti.

    σ > 0 per J^σ (pesi di convoluzione), σ = -α per la derivata di Caputo (pesi L1).

    Returns:
        Matrice (n+1, s): riga i = pesi sui nodi 0..s-1 da aggiungere in t_i
    """
    h = weights.h
    s = len(exponents)
    t = h * np.arange(n + 1)
    defects = []
    for nu in exponents:
        samples = t ** nu
        exact = np.zeros(n + 1)
        # la derivata di Caputo annulla le costanti
        if not (sigma < 0 and nu == 0.0):
            exact[1:] = math.exp(log_gamma(nu + 1.0) - log_gamma(nu + sigma + 1.0)) * t[1:] ** (nu + sigma)
        defects.append(exact - weights.apply(samples))

    table = np.zeros((n + 1, s))
    for i in range(1, n + 1):
        size = min(i + 1, s)
        exps = exponents[:size]
        nodes = np.arange(size, dtype=float)
        matrix = np.array([nodes ** nu for nu in exps])
        rhs = np.array([defects[r][i] / h ** nu for r, nu in enumerate(exps)])
        table[i, :size] = np.linalg.solve(matrix, rhs)
    return _readonly(table)


def interpolation_error_bound(values: Sequence[float]) -> float:
    """Stima di ||f - f_I||_∞ dalle differenze seconde: max|Δ²f|/8."""
    values = np.asarray(values, dtype=float)
    if len(values) < 3:
        return 0.0
    return float(np.max(np.abs(np.diff(values, 2)))) / 8.0
