"""
API REST FastAPI per PrabhakarLab.
Espone valutazione delle funzioni speciali, dati della Figura 1 e controlli incrociati.

Avvio:
    uvicorn api:app --host 127.0.0.1 --port 8000 --reload

Documentazione automatica:
    http://localhost:8000/docs
"""
import logging
import math
from datetime import datetime, timezone
from typing import Any, Dict, List, Literal, Optional

from fastapi import FastAPI, HTTPException
from fastapi.middleware.cors import CORSMiddleware
from pydantic import BaseModel, Field

import config
from cli import EVALUATORS, RunConfig, crosscheck, evaluate_function, figure1_table
from errors import ConvergenceError, DomainError, ParseError, WorkbenchError

# Il logging è configurato da cli all'import (stderr + LOG_FILE opzionale)
logger = logging.getLogger(__name__)

VERSION = "1.0.0"

# FastAPI app
app = FastAPI(
    title="PrabhakarLab API",
    description="API REST per funzioni di Prabhakar, operatori frazionari e moduli di rilassamento",
    version=VERSION,
    docs_url="/docs",
    redoc_url=None,
)

app.add_middleware(
    CORSMiddleware,
    allow_origins=config.API_CORS_ORIGINS,
    allow_credentials=False,
    allow_methods=["GET", "POST"],
    allow_headers=["*"],
)


# === MODELS (Request/Response) ===


class EvalRequest(BaseModel):
    """Richiesta di valutazione di una funzione speciale o di un modulo."""

    fn: str = Field(..., description=f"Funzione: {', '.join(EVALUATORS)}")
    alpha: Optional[float] = Field(None, description="Ordine α", gt=0)
    beta: Optional[float] = Field(None, description="Parametro β", gt=0)
    gamma: Optional[float] = Field(None, description="Parametro γ")
    omega: Optional[float] = Field(None, description="Parametro ω")
    x: Optional[float] = Field(None, description="Argomento di Γ")
    z: Optional[float] = Field(None, description="Argomento di E_α / E^γ_{α,β}")
    t: Optional[float] = Field(None, description="Tempo")
    K: Optional[int] = Field(None, description="Indice della Pochhammer", ge=0)
    eta: Optional[float] = Field(None, description="Viscosità", gt=0)
    tol: Optional[float] = Field(None, description="Tolleranza di troncamento", gt=0)
    lam: Optional[float] = Field(None, description="Tasso λ (laplace-pair)")
    y0: Optional[float] = Field(None, description="Valore iniziale (laplace-pair)")
    op: Optional[Literal["cf", "abc", "caputo"]] = Field(None, description="Operatore (laplace-pair)")
    method: Optional[Literal["auto", "series", "asymptotic", "contour"]] = Field(
        None, description="Strategia di valutazione"
    )


class TableResponse(BaseModel):
    """Tabella di risultati (stesse colonne del CSV della CLI)."""

    columns: List[str]
    rows: List[Dict[str, Any]]


class Figure1Request(BaseModel):
    """Parametri della Figura 1."""

    alpha: float = Field(config.FIGURE1_ALPHA, description="Ordine α", gt=0, lt=1)
    eta: float = Field(config.FIGURE1_ETA, description="Viscosità η", gt=0)
    points: int = Field(config.FIGURE1_POINTS, description="Punti della griglia", ge=2, le=5000)


class CrosscheckRequest(BaseModel):
    """Parametri di un controllo incrociato (None = default del teorema)."""

    theorem: int = Field(..., description="Teorema (1-7)", ge=1, le=7)
    f: Optional[str] = Field(None, description="Funzione predefinita")
    alpha: Optional[float] = Field(None, gt=0, lt=1)
    beta: Optional[float] = Field(None, gt=0)
    gamma: Optional[float] = None
    omega: Optional[float] = None
    T: Optional[float] = Field(None, gt=0, le=20)
    h: Optional[float] = Field(None, gt=0)
    tol: Optional[float] = Field(None, gt=0)
    lam: Optional[float] = None
    y0: Optional[float] = None


class CrosscheckResponse(BaseModel):
    """Esito di un controllo incrociato."""

    theorem: int
    check: str
    discrepancy: float
    tolerance: float
    verdict: str
    details: Dict[str, Any]


class HealthResponse(BaseModel):
    """Risposta health check."""

    status: str
    version: str
    config_valid: bool
    timestamp: str


def _http_error(error: WorkbenchError) -> HTTPException:
    """DomainError/ParseError → 400, ConvergenceError → 422, altro → 500."""
    if isinstance(error, (DomainError, ParseError)):
        status = 400
    elif isinstance(error, ConvergenceError):
        status = 422
    else:
        status = 500
    logger.warning(f"Richiesta fallita ({status}): {type(error).__name__}: {error}")
    return HTTPException(status_code=status, detail=f"{type(error).__name__}: {error}")


def _json_value(value: Any) -> Any:
    if isinstance(value, float) and not math.isfinite(value):
        return str(value)
    return value


def _table(frame) -> TableResponse:
    rows = [
        {key: _json_value(value) for key, value in row.items()}
        for row in frame.to_dict(orient="records")
    ]
    return TableResponse(columns=list(frame.columns), rows=rows)


# === ENDPOINTS ===


@app.get("/", tags=["General"])
async def root():
    """Root endpoint - Info API."""
    return {
        "name": "PrabhakarLab API",
        "version": VERSION,
        "docs": "/docs",
        "health": "/health",
    }


@app.get("/health", response_model=HealthResponse, tags=["General"])
async def health_check():
    """Health check - verifica la configurazione."""
    try:
        config_ok = config.validate_config()
    except ValueError as e:
        logger.error(f"Configurazione non valida: {e}")
        config_ok = False

    return HealthResponse(
        status="healthy" if config_ok else "degraded",
        version=VERSION,
        config_valid=config_ok,
        timestamp=datetime.now(timezone.utc).isoformat(),
    )


@app.post("/api/eval", response_model=TableResponse, tags=["Funzioni speciali"])
def eval_function(request: EvalRequest):
    """Valuta una funzione (stesse chiavi di `cli.py eval`)."""
    cfg = RunConfig(subcommand="eval", parameters=request.model_dump())
    try:
        return _table(evaluate_function(cfg.check()))
    except WorkbenchError as e:
        raise _http_error(e)


@app.post("/api/figure1", response_model=TableResponse, tags=["Viscoelasticità"])
def figure1(request: Figure1Request):
    """Moduli G_SB, G_CF/M e G_ABC/B su griglia logaritmica."""
    cfg = RunConfig(subcommand="figure1", parameters=request.model_dump())
    try:
        return _table(figure1_table(cfg.check()))
    except WorkbenchError as e:
        raise _http_error(e)


@app.post("/api/crosscheck", response_model=CrosscheckResponse, tags=["Controlli"])
def crosscheck_endpoint(request: CrosscheckRequest):
    """
    Esegue un controllo incrociato.

    Un FAIL non è un errore HTTP: il verdetto è nel corpo della risposta.
    """
    cfg = RunConfig(subcommand="crosscheck", parameters=request.model_dump())
    try:
        frame = crosscheck(cfg.check())
    except WorkbenchError as e:
        raise _http_error(e)

    row = {key: _json_value(value) for key, value in frame.to_dict(orient="records")[0].items()}
    fixed = ("theorem", "check", "discrepancy", "tolerance", "verdict")
    return CrosscheckResponse(
        **{key: row[key] for key in fixed},
        details={key: value for key, value in row.items() if key not in fixed},
    )


# === STARTUP/SHUTDOWN ===


@app.on_event("startup")
async def startup_event():
    """Eseguito all'avvio del server."""
    logger.info("=" * 60)
    logger.info("PrabhakarLab API - Avvio")
    logger.info("=" * 60)
    logger.info(f"CORS: {', '.join(config.API_CORS_ORIGINS)}")
    logger.info(f"Documentazione: http://{config.API_HOST}:{config.API_PORT}/docs")


@app.on_event("shutdown")
async def shutdown_event():
    """Eseguito allo shutdown del server."""
    logger.info("PrabhakarLab API - Shutdown")


if __name__ == "__main__":
    import uvicorn

    uvicorn.run(
        "api:app",
        host=config.API_HOST,
        port=config.API_PORT,
        reload=True,
        log_level=config.LOG_LEVEL.lower(),
    )
