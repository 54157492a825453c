"""
Scrittura delle tabelle di risultati in CSV stabile byte per byte.

Formato: intestazione, separatore ',', punto decimale, fine riga '\\n',
`precision` cifre significative, notazione scientifica per |x| >= 1e6 o 0 < |x| < 1e-4.
"""
import io
import logging
import math
import sys
from pathlib import Path
from typing import Optional, TextIO, Union

import pandas as pd

import config

logger = logging.getLogger(__name__)


def format_number(value: float, precision: int = config.CSV_PRECISION) -> str:
    """
    Formatta un numero con `precision` cifre significative.

    Args:
        value: Numero da formattare
        precision: Cifre significative (>= 1)

    Returns:
        Stringa deterministica (nan/inf come 'nan', 'inf', '-inf')
    """
    value = float(value)
    if math.isnan(value):
        return "nan"
    if math.isinf(value):
        return "inf" if value > 0 else "-inf"
    if value == 0.0:
        return "0"
    magnitude = abs(value)
    if magnitude >= config.CSV_SCI_UPPER or magnitude < config.CSV_SCI_LOWER:
        return f"{value:.{precision - 1}e}"
    return f"{value:.{precision}g}"


class CsvWriter:
    """
    Emette DataFrame come CSV su file o su stdout.
    """

    def __init__(self, precision: Optional[int] = None):
        """
        Args:
            precision: Cifre significative (default: config.CSV_PRECISION)
        """
        self.precision = precision or config.CSV_PRECISION
        if not 1 <= self.precision <= 17:
            raise ValueError(f"precisione fuori intervallo [1, 17]: {self.precision}")

    def render(self, frame: pd.DataFrame) -> str:
        buffer = io.StringIO()
        frame.to_csv(
            buffer,
            index=False,
            float_format=lambda x: format_number(x, self.precision),
            lineterminator="\n",
        )
        return buffer.getvalue()

    def write(self, frame: pd.DataFrame, out: Optional[Union[str, Path]] = None, stream: Optional[TextIO] = None) -> str:
        """
        Scrive la tabella.

        Args:
            frame: Tabella da emettere
            out: Path di destinazione; se assente scrive su stream (default stdout)
            stream: Stream alternativo a stdout

        Returns:
            Testo CSV emesso
        """
        text = self.render(frame)
        if out:
            path = Path(out)
            path.parent.mkdir(parents=True, exist_ok=True)
            path.write_text(text, encoding="utf-8", newline="")
            logger.info(f"CSV salvato: {path} ({len(frame)} righe)")
        else:
            (stream or sys.stdout).write(text)
        return text


def write_table(frame: pd.DataFrame, out: Optional[Union[str, Path]] = None, precision: Optional[int] = None) -> str:
    """Scorciatoia per CsvWriter(precision).write(frame, out)."""
    return CsvWriter(precision).write(frame, out)
