"""
Dati del confronto fra i moduli di rilassamento: G_SB, G_CF/M e G_ABC/B.
"""
import logging
from typing import Optional, Sequence

import numpy as np
import pandas as pd

import config
from errors import DomainError
from visco.relaxation import (
    MaterialParams,
    RelaxationModel,
    relaxation_curve,
)

logger = logging.getLogger(__name__)

COLUMNS = ["t", "G_SB", "G_CF_over_M", "G_ABC_over_B"]


def figure1_grid(
    points: int = config.FIGURE1_POINTS,
    t_min: float = config.FIGURE1_T_MIN,
    t_max: float = config.FIGURE1_T_MAX,
) -> np.ndarray:
    """Griglia logaritmica di `points` tempi su [t_min, t_max]."""
    if points < 2 or not (0 < t_min < t_max):
        raise DomainError(f"griglia non valida: points={points}, t_min={t_min}, t_max={t_max}")
    return np.logspace(np.log10(t_min), np.log10(t_max), points)


def figure1_dataset(
    alpha: float = config.FIGURE1_ALPHA,
    eta: float = config.FIGURE1_ETA,
    grid: Optional[Sequence[float]] = None,
) -> pd.DataFrame:
    """
    Tabella dei tre moduli normalizzati.

    Args:
        alpha: Ordine
        eta: Viscosità
        grid: Tempi positivi crescenti (default: figure1_grid())

    Returns:
        DataFrame con colonne t, G_SB, G_CF_over_M, G_ABC_over_B
    """
    times = figure1_grid() if grid is None else np.asarray(grid, dtype=float)
    params = MaterialParams(eta, alpha)
    m = params.norm(alpha)

    curves = {
        model: relaxation_curve(model, params, times, long_tail=True)
        for model in RelaxationModel
    }
    frame = pd.DataFrame(
        {
            "t": times,
            "G_SB": curves[RelaxationModel.SCOTT_BLAIR].values,
            "G_CF_over_M": curves[RelaxationModel.CF_MAXWELL].values / m,
            "G_ABC_over_B": curves[RelaxationModel.ABC_FRACTIONAL_MAXWELL].values / m,
        },
        columns=COLUMNS,
    )
    non_monotone = [model.value for model, curve in curves.items() if not curve.monotone]
    if non_monotone:
        logger.warning(f"Curve non monotone sulla griglia: {', '.join(non_monotone)}")
    logger.info(f"Figura 1: {len(frame)} righe, alpha={alpha}, eta={eta}")
    return frame
