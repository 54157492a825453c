"""
Gerarchia delle eccezioni di PrabhakarLab.
Ogni eccezione porta il codice di uscita usato dalla CLI.
"""
from typing import Optional, Tuple


class WorkbenchError(Exception):
    """Errore base del workbench (anche: cross-check fallito)."""

    exit_code = 1


class ParseError(WorkbenchError, ValueError):
    """Parametro, chiave o nome non riconosciuto."""

    exit_code = 2


class DomainError(WorkbenchError, ValueError):
    """Input fuori dal dominio dell'operazione (poli, ordini non validi, ...)."""

    exit_code = 3


class RangeError(DomainError):
    """Argomento fuori dall'intervallo validato dell'evaluatore."""

    def __init__(self, message: str, bound: Tuple[float, float]):
        super().__init__(f"{message} (intervallo validato: [{bound[0]}, {bound[1]}])")
        self.bound = bound


class PreconditionError(DomainError):
    """Dati mancanti richiesti dall'operazione (derivate, jacobiani)."""


class ConvergenceError(WorkbenchError, ArithmeticError):
    """Serie o iterazione che non converge entro il cap."""

    exit_code = 4


class SolverError(ConvergenceError):
    """Punto fisso per passo non convergente."""

    def __init__(self, message: str, residual: Optional[float] = None):
        if residual is not None:
            message = f"{message} (ultimo residuo: {residual:.3e})"
        super().__init__(message)
        self.residual = residual


class InversionError(ConvergenceError):
    """Campioni non finiti sul contorno di inversione di Laplace."""
