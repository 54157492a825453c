"""
Funzioni di prova predefinite, campionate con derivata esatta e tag AC.
"""
from dataclasses import dataclass
from typing import Callable, Dict

import numpy as np

from errors import DomainError, ParseError
from operators.grid import GridFunction, Smoothness

ArrayFn = Callable[[np.ndarray], np.ndarray]


@dataclass(frozen=True)
class BuiltinFunction:
    """Coppia (f, f') con nome, usata da apply/crosscheck."""

    name: str
    fn: ArrayFn
    deriv: ArrayFn
    description: str

    def sample(self, a: float, T: float, h: float) -> GridFunction:
        """
        Campiona f su [a, T] con passo h.

        Args:
            a: Istante iniziale
            T: Orizzonte (> a)
            h: Passo; T - a deve esserne multiplo (entro 1e-9 relativo)
        """
        if not (h > 0 and T > a):
            raise DomainError(f"griglia non valida: a={a}, T={T}, h={h}")
        steps = (T - a) / h
        n = int(round(steps))
        if n < 1 or abs(steps - n) > 1e-9 * max(1.0, steps):
            raise DomainError(f"(T - a)/h = {steps} non è un intero >= 1")
        times = a + h * np.arange(n + 1)
        return GridFunction(
            a, h, self.fn(times), self.deriv(times), Smoothness.AC, {"function": self.name}
        )

    def __call__(self, a: float, T: float, h: float) -> GridFunction:
        return self.sample(a, T, h)


BUILTINS: Dict[str, BuiltinFunction] = {
    "const1": BuiltinFunction("const1", np.ones_like, np.zeros_like, "f ≡ 1"),
    "t": BuiltinFunction("t", lambda t: np.array(t, dtype=float), np.ones_like, "f = t"),
    "t2": BuiltinFunction("t2", lambda t: t * t, lambda t: 2.0 * t, "f = t²"),
    "sin": BuiltinFunction("sin", np.sin, np.cos, "f = sin t"),
    "exp-decay": BuiltinFunction(
        "exp-decay", lambda t: np.exp(-t), lambda t: -np.exp(-t), "f = e^{-t}"
    ),
}


def builtin_function(name: str) -> BuiltinFunction:
    """
    Restituisce il campionatore della funzione predefinita `name`.

    Raises:
        ParseError: Se il nome non è tra quelli disponibili
    """
    try:
        return BUILTINS[name]
    except KeyError:
        raise ParseError(
            f"funzione sconosciuta '{name}' (valide: {', '.join(BUILTINS)})"
        ) from None
