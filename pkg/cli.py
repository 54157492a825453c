"""
CLI principale per PrabhakarLab.
Comandi: eval, apply, solve, crosscheck, figure1. Ogni comando emette CSV.
"""
import sys
import math
import logging
from dataclasses import asdict
from typing import Any, Callable, Dict, Literal, Optional

import click
import pandas as pd
from pydantic import BaseModel, Field

import config
from checks.theorems import run_check
from errors import ParseError, WorkbenchError
from fde.closed_forms import closed_form
from fde.laplace import laplace_invert, linear_solution_query
from fde.problem import FDEProblem, builtin_rhs
from fde.solvers import solve
from operators.derivatives import apply_operator
from operators.grid import OperatorKind, OperatorSpec
from operators.samplers import builtin_function
from special.gamma import gamma_fn, log_gamma, pochhammer
from special.mittag_leffler import mittag_leffler
from special.prabhakar import prabhakar_function, prabhakar_kernel
from special.series import PrabhakarParams, series_truncation
from storage.csv_writer import CsvWriter
from visco.figure1 import figure1_dataset, figure1_grid
from visco.relaxation import (
    MaterialParams,
    relaxation_abc,
    relaxation_cf,
    relaxation_scott_blair,
)

# Setup logging: stdout è riservato al CSV
_handlers = [logging.StreamHandler(sys.stderr)]
if config.LOG_FILE:
    _handlers.append(logging.FileHandler(config.LOG_FILE))
logging.basicConfig(
    level=config.LOG_LEVEL.upper(),
    format="%(asctime)s - %(name)s - %(levelname)s - %(message)s",
    handlers=_handlers,
)

logger = logging.getLogger(__name__)

Subcommand = Literal["eval", "apply", "solve", "crosscheck", "figure1"]

REQUIRED_KEYS = {
    "eval": ("fn",),
    "apply": ("op", "f"),
    "solve": ("op", "rhs"),
    "crosscheck": ("theorem",),
    "figure1": (),
}


class RunConfig(BaseModel):
    """Configurazione di un'esecuzione: sottocomando, parametri, destinazione."""

    subcommand: Subcommand
    parameters: Dict[str, Any] = Field(default_factory=dict)
    output_path: Optional[str] = None
    precision: int = Field(default=config.CSV_PRECISION, ge=1, le=17)

    def check(self) -> "RunConfig":
        """
        Verifica chiavi obbligatorie e finitezza dei numeri.

        Raises:
            ParseError: Se manca una chiave o un valore numerico non è finito
        """
        missing = [k for k in REQUIRED_KEYS[self.subcommand] if self.parameters.get(k) is None]
        if missing:
            raise ParseError(f"{self.subcommand}: parametri obbligatori mancanti: {', '.join(missing)}")
        for key, value in self.parameters.items():
            if isinstance(value, float) and not math.isfinite(value):
                raise ParseError(f"--{key} deve essere un numero finito (ricevuto {value})")
        return self

    def get(self, key: str, default: Any = None) -> Any:
        value = self.parameters.get(key)
        return default if value is None else value


# === EVAL ===

def _prabhakar_params(cfg: RunConfig, omega: float = 0.0) -> PrabhakarParams:
    return PrabhakarParams(
        cfg.get("alpha", 0.5), cfg.get("beta", 1.0), cfg.get("gamma", 1.0), cfg.get("omega", omega)
    )


def _material(cfg: RunConfig) -> MaterialParams:
    return MaterialParams(cfg.get("eta", 1.0), cfg.get("alpha", 0.5))


def _value(value: float) -> pd.DataFrame:
    return pd.DataFrame({"value": [float(value)]})


def _laplace_pair(cfg: RunConfig) -> pd.DataFrame:
    kind = _fde_kind(cfg.get("op", "cf"))
    alpha, lam, y0, t = cfg.get("alpha", 0.5), cfg.get("lam", -1.0), cfg.get("y0", 1.0), cfg.get("t", 1.0)
    spec = OperatorSpec(kind, alpha)
    inverted = laplace_invert(linear_solution_query(kind, alpha, spec.norm, lam, y0, t))
    exact = closed_form(kind, alpha, spec.norm, "decay", y0, lam=lam)([t])
    return pd.DataFrame({"t": [t], "laplace": [inverted], "closed_form": [float(exact[0])]})


EVALUATORS: Dict[str, Callable[[RunConfig], pd.DataFrame]] = {
    "gamma": lambda c: _value(gamma_fn(c.get("x", 1.0))),
    "log-gamma": lambda c: _value(log_gamma(c.get("x", 1.0))),
    "pochhammer": lambda c: _value(pochhammer(c.get("gamma", 1.0), c.get("K", 0))),
    "mittag-leffler": lambda c: _value(
        mittag_leffler(c.get("alpha", 0.5), c.get("z", 0.0), c.get("method", "auto"))
    ),
    "prabhakar": lambda c: _value(prabhakar_function(_prabhakar_params(c), c.get("z", 0.0), c.get("method", "auto"))),
    "prabhakar-kernel": lambda c: _value(prabhakar_kernel(_prabhakar_params(c), c.get("t", 1.0))),
    "series-truncation": lambda c: pd.DataFrame(
        [asdict(series_truncation(_prabhakar_params(c), c.get("z", 1.0), c.get("tol", 1e-12)))]
    ),
    "laplace-pair": _laplace_pair,
    "relax-sb": lambda c: _value(relaxation_scott_blair(_material(c), c.get("t", 1.0))),
    "relax-cf": lambda c: _value(relaxation_cf(_material(c), c.get("t", 1.0))),
    "relax-abc": lambda c: _value(relaxation_abc(_material(c), c.get("t", 1.0))),
}


def evaluate_function(cfg: RunConfig) -> pd.DataFrame:
    name = cfg.get("fn")
    if name not in EVALUATORS:
        raise ParseError(f"funzione sconosciuta '{name}' (valide: {', '.join(EVALUATORS)})")
    return EVALUATORS[name](cfg)


# === APPLY ===

_OPERATORS = {
    "rl": (OperatorKind.RL_INTEGRAL, False),
    "caputo": (OperatorKind.CAPUTO_DERIV, False),
    "cf": (OperatorKind.CF_DERIV, False),
    "abc": (OperatorKind.ABC_DERIV, False),
    "prabhakar": (OperatorKind.PRABHAKAR_INTEGRAL, False),
    "prabhakar-series": (OperatorKind.PRABHAKAR_INTEGRAL, True),
    "cf-series": (OperatorKind.CF_DERIV, True),
    "abc-series": (OperatorKind.ABC_DERIV, True),
}


def apply_builtin(cfg: RunConfig) -> pd.DataFrame:
    name = cfg.get("op")
    if name not in _OPERATORS:
        raise ParseError(f"operatore sconosciuto '{name}' (validi: {', '.join(_OPERATORS)})")
    kind, series = _OPERATORS[name]
    prabhakar = _prabhakar_params(cfg) if kind == OperatorKind.PRABHAKAR_INTEGRAL else None
    order = prabhakar.beta if prabhakar else cfg.get("alpha", 0.5)
    spec = OperatorSpec(kind, order, prabhakar)

    f = builtin_function(cfg.get("f"))(0.0, cfg.get("T", 5.0), cfg.get("h", 1e-2))
    result = apply_operator(spec, f, cfg.get("K"), series)
    if series:
        logger.info(f"Cammino a serie: K={result.K}, ultimo termine {result.last_term:.2e}")
    return pd.DataFrame({"t": f.times, "value": result.values})


# === SOLVE ===

_FDE_OPERATORS = {
    "cf": OperatorKind.CF_DERIV,
    "abc": OperatorKind.ABC_DERIV,
    "caputo": OperatorKind.CAPUTO_DERIV,
}


def _fde_kind(name: str) -> OperatorKind:
    if name not in _FDE_OPERATORS:
        raise ParseError(f"operatore FDE sconosciuto '{name}' (validi: {', '.join(_FDE_OPERATORS)})")
    return _FDE_OPERATORS[name]


def solve_builtin(cfg: RunConfig) -> pd.DataFrame:
    kind = _fde_kind(cfg.get("op"))
    lam, c, y0 = cfg.get("lam", -1.0), cfg.get("c", 1.0), cfg.get("y0", 1.0)
    rhs = builtin_rhs(cfg.get("rhs"), lam=lam, c=c)
    problem = FDEProblem(OperatorSpec(kind, cfg.get("alpha", 0.5)), rhs, y0, cfg.get("T", 5.0), cfg.get("h", 1e-2))
    trajectory = solve(problem, cfg.get("path"))

    frame = trajectory.to_frame()
    exact = closed_form(kind, problem.alpha, problem.op.norm, rhs.name, y0, lam=lam, c=c)
    if exact is not None:
        frame["exact"] = exact(trajectory.times)
    for key, value in trajectory.diagnostics.items():
        logger.info(f"Diagnostica {key}: {value}")
    return frame


# === CROSSCHECK ===

def _check_overrides(cfg: RunConfig) -> Dict[str, Any]:
    theorem = cfg.get("theorem")
    functions = [cfg.get("f")] if cfg.get("f") else None
    common = {"T": cfg.get("T"), "h": cfg.get("h")}
    if theorem == 1:
        p = _prabhakar_params(cfg, omega=-1.0) if any(
            cfg.get(k) is not None for k in ("alpha", "beta", "gamma", "omega")
        ) else None
        return {**common, "functions": functions, "p": p, "tol": cfg.get("tol")}
    if theorem in (2, 3):
        alphas = [cfg.get("alpha")] if cfg.get("alpha") is not None else None
        return {**common, "functions": functions, "alphas": alphas}
    if theorem in (4, 5):
        return {**common, "functions": functions, "alpha": cfg.get("alpha"), "tol": cfg.get("tol")}
    return {**common, "alpha": cfg.get("alpha"), "lam": cfg.get("lam"), "y0": cfg.get("y0")}


def crosscheck(cfg: RunConfig) -> pd.DataFrame:
    result = run_check(cfg.get("theorem"), **_check_overrides(cfg))
    frame = result.to_frame()
    frame.attrs["failure"] = None if result.passed else (
        f"teorema {result.theorem}: discrepanza {result.discrepancy:.3e} oltre la soglia {result.tolerance:.1e}"
    )
    return frame


# === FIGURE 1 ===

def figure1_table(cfg: RunConfig) -> pd.DataFrame:
    grid = figure1_grid(cfg.get("points", config.FIGURE1_POINTS))
    return figure1_dataset(cfg.get("alpha", config.FIGURE1_ALPHA), cfg.get("eta", config.FIGURE1_ETA), grid)


HANDLERS: Dict[str, Callable[[RunConfig], pd.DataFrame]] = {
    "eval": evaluate_function,
    "apply": apply_builtin,
    "solve": solve_builtin,
    "crosscheck": crosscheck,
    "figure1": figure1_table,
}


def report_error(error: WorkbenchError) -> int:
    """Riga d'errore unica e analizzabile su stderr; restituisce il codice d'uscita."""
    message = " ".join(str(error).split())
    click.echo(
        f"ERRORE exit={error.exit_code} tipo={type(error).__name__} messaggio={message}", err=True
    )
    return error.exit_code


def run(cfg: RunConfig) -> int:
    """
    Esegue il sottocomando e scrive il CSV su output_path o stdout.

    Returns:
        Codice d'uscita: 0 successo, 1 controllo fallito, 2 parsing, 3 dominio, 4 convergenza
    """
    try:
        cfg.check()
        logger.info(f"Esecuzione {cfg.subcommand} con {cfg.parameters}")
        frame = HANDLERS[cfg.subcommand](cfg)
        CsvWriter(cfg.precision).write(frame, cfg.output_path)
        failure = frame.attrs.get("failure")
        if failure:
            raise WorkbenchError(failure)
        return 0
    except WorkbenchError as e:
        return report_error(e)
    except ArithmeticError as e:
        logger.debug("Errore aritmetico non previsto", exc_info=True)
        return report_error(WorkbenchError(f"errore aritmetico ({type(e).__name__}): {e}"))


def _invoke(subcommand: str, out: Optional[str], precision: int, **parameters) -> None:
    cfg = RunConfig(subcommand=subcommand, parameters=parameters, output_path=out, precision=precision)
    sys.exit(run(cfg))


def output_options(command):
    """Opzioni comuni --out e --precision."""
    command = click.option(
        "--precision",
        type=click.IntRange(1, 17),
        default=config.CSV_PRECISION,
        help=f"Cifre significative nel CSV (default: {config.CSV_PRECISION})",
    )(command)
    command = click.option(
        "--out", "-o", type=click.Path(dir_okay=False), help="File CSV di destinazione (default: stdout)"
    )(command)
    return command


def order_options(command):
    """Parametri di ordine e di Prabhakar."""
    for name, text in reversed(
        [("alpha", "Ordine α"), ("beta", "Parametro β"), ("gamma", "Parametro γ"), ("omega", "Parametro ω")]
    ):
        command = click.option(f"--{name}", type=float, help=text)(command)
    return command


def grid_options(command):
    """Orizzonte e passo (T e h)."""
    command = click.option("--h", "h", type=float, help="Passo della griglia")(command)
    command = click.option("--T", "T", type=float, help="Orizzonte")(command)
    return command


@click.group()
@click.version_option(version="1.0.0", prog_name="PrabhakarLab")
def cli():
    """
    PrabhakarLab - Workbench di calcolo frazionario.

    Valuta funzioni speciali, applica operatori frazionari, risolve FDE,
    esegue i controlli incrociati e produce i dati dei moduli di rilassamento.
    Ogni comando emette CSV su stdout (o su --out).
    """
    pass


@cli.command("eval")
@click.option("--fn", required=True, type=click.Choice(list(EVALUATORS)), help="Funzione da valutare")
@order_options
@click.option("--x", "x", type=float, help="Argomento di Γ e log Γ")
@click.option("--z", "z", type=float, help="Argomento di E_α e E^γ_{α,β}")
@click.option("--t", "t", type=float, help="Tempo (nuclei, moduli, laplace-pair)")
@click.option("--K", "K", type=int, help="Indice della Pochhammer")
@click.option("--eta", type=float, help="Viscosità")
@click.option("--tol", type=float, help="Tolleranza per series-truncation")
@click.option("--lam", type=float, help="Tasso λ per laplace-pair")
@click.option("--y0", type=float, help="Valore iniziale per laplace-pair")
@click.option("--op", type=click.Choice(list(_FDE_OPERATORS)), help="Operatore per laplace-pair")
@click.option("--method", type=click.Choice(["auto", "series", "asymptotic", "contour"]), help="Strategia di valutazione")
@output_options
def eval_command(out, precision, **parameters):
    """
    Valuta una funzione speciale o un modulo di rilassamento.

    Esempio:
        python cli.py eval --fn mittag-leffler --alpha 0.5 --z -1
    """
    _invoke("eval", out, precision, **parameters)


@cli.command("apply")
@click.option("--op", required=True, type=click.Choice(list(_OPERATORS)), help="Operatore")
@click.option("--f", "f", required=True, help="Funzione predefinita (const1, t, t2, sin, exp-decay)")
@order_options
@grid_options
@click.option("--K", "K", type=int, help="Ordine della serie (default: regola di troncamento)")
@output_options
def apply_command(out, precision, **parameters):
    """
    Applica un operatore a una funzione predefinita su [0, T].

    Esempio:
        python cli.py apply --op prabhakar --f t2 --alpha 0.5 --beta 1 --omega -1 --T 5 --h 0.005
    """
    _invoke("apply", out, precision, **parameters)


@cli.command("solve")
@click.option("--op", required=True, type=click.Choice(list(_FDE_OPERATORS)), help="Operatore dell'equazione")
@click.option("--rhs", required=True, type=click.Choice(["decay", "const", "forced", "ramp", "zero"]), help="Secondo membro")
@click.option("--path", type=click.Choice(["integral", "ode", "caputo-form", "adams"]), help="Percorso di risoluzione")
@click.option("--alpha", type=float, help="Ordine α")
@click.option("--y0", type=float, help="Valore iniziale (default: 1)")
@click.option("--lam", type=float, help="Tasso λ di decay/forced (default: -1)")
@click.option("--c", "c", type=float, help="Costante di const (default: 1)")
@grid_options
@output_options
def solve_command(out, precision, **parameters):
    """
    Risolve D^α y = F(t, y) e confronta con la forma chiusa quando esiste.

    Esempio:
        python cli.py solve --op cf --rhs decay --alpha 0.5 --T 5 --h 0.001
    """
    _invoke("solve", out, precision, **parameters)


@cli.command("crosscheck")
@click.option("--theorem", required=True, type=click.IntRange(1, 7), help="Teorema da verificare (1-7)")
@click.option("--f", "f", help="Funzione predefinita (default: insieme di test)")
@order_options
@grid_options
@click.option("--tol", type=float, help="Tolleranza di troncamento delle serie")
@click.option("--lam", type=float, help="Tasso λ (teoremi 6-7)")
@click.option("--y0", type=float, help="Valore iniziale (teoremi 6-7)")
@output_options
def crosscheck_command(out, precision, **parameters):
    """
    Confronta due cammini di calcolo indipendenti; exit 1 se la discrepanza supera la soglia.

    Esempio:
        python cli.py crosscheck --theorem 1 --f t2 --alpha 0.5 --beta 1 --gamma 1 --omega -1 --T 5
    """
    _invoke("crosscheck", out, precision, **parameters)


@cli.command("figure1")
@click.option("--alpha", type=float, help=f"Ordine α (default: {config.FIGURE1_ALPHA})")
@click.option("--eta", type=float, help=f"Viscosità η (default: {config.FIGURE1_ETA})")
@click.option("--points", type=click.IntRange(2, None), help=f"Punti della griglia (default: {config.FIGURE1_POINTS})")
@output_options
def figure1_command(out, precision, **parameters):
    """
    Dati dei moduli di rilassamento G_SB, G_CF/M, G_ABC/B su griglia logaritmica.

    Esempio:
        python cli.py figure1 --out figure1.csv
    """
    _invoke("figure1", out, precision, **parameters)


if __name__ == "__main__":
    cli()
