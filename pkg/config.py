"""
Configurazione centralizzata per PrabhakarLab.
Carica da .env solo le impostazioni di contorno (logging, API); le costanti
numeriche sono fisse per garantire output deterministico della CLI.
"""
import os
from pathlib import Path
from dotenv import load_dotenv

# Carica variabili d'ambiente da .env
load_dotenv()

# Directory base del progetto
BASE_DIR = Path(__file__).resolve().parent

# === LOGGING SETTINGS ===
LOG_LEVEL = os.getenv("LOG_LEVEL", "WARNING")
LOG_FILE = os.getenv("LOG_FILE", "")  # vuoto = nessun file di log

# === API SETTINGS ===
API_HOST = os.getenv("API_HOST", "127.0.0.1")
API_PORT = int(os.getenv("API_PORT", "8000"))
API_CORS_ORIGINS = [o.strip() for o in os.getenv("API_CORS_ORIGINS", "*").split(",") if o.strip()]

# === SERIES SETTINGS ===
SERIES_HARD_CAP = 400
SERIES_REL_TOL = 1e-16
# rapporto max|termine| / |somma| oltre il quale la serie alternante perde troppe cifre:
# l'errore relativo cresce come 1e-14 per unità di cancellazione
SERIES_CANCELLATION_LIMIT = 1e3
# oltre questo |z| negativo la serie non viene nemmeno tentata
SERIES_SAFE_ABS_Z = 8.0

# === MITTAG-LEFFLER / PRABHAKAR SETTINGS ===
ML_Z_MIN = -50.0
ML_Z_MAX = 5.0
ASYMPTOTIC_REL_TOL = 1e-14
CONTOUR_NODES_INTERNAL = 32

# === QUADRATURE SETTINGS ===
GAUSS_NODES = 8
ALPHA_SERIES_CAP = 0.95
MAX_STARTING_EXPONENTS = 3

# === FDE SOLVER SETTINGS ===
FIXED_POINT_TOL = 1e-12
FIXED_POINT_MAX_ITER = 50
FIXED_POINT_RELAXATION = 0.5
LAPLACE_NODES = 64

# === FIGURE 1 SETTINGS ===
FIGURE1_ALPHA = 0.5
FIGURE1_ETA = 1.0
FIGURE1_POINTS = 400
FIGURE1_T_MIN = 1e-2
FIGURE1_T_MAX = 1e2

# === OUTPUT SETTINGS ===
CSV_PRECISION = 12
CSV_SCI_UPPER = 1e6
CSV_SCI_LOWER = 1e-4


def validate_config():
    """Valida la coerenza delle impostazioni."""
    errors = []

    if LOG_LEVEL.upper() not in ("DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL"):
        errors.append(f"LOG_LEVEL non valido: {LOG_LEVEL}")

    if not (0 < API_PORT < 65536):
        errors.append(f"API_PORT fuori intervallo: {API_PORT}")

    if not ML_Z_MIN < 0 < ML_Z_MAX:
        errors.append("Intervallo Mittag-Leffler deve contenere lo zero")

    if not 0 < FIXED_POINT_RELAXATION <= 1:
        errors.append("FIXED_POINT_RELAXATION deve stare in (0, 1]")

    if errors:
        raise ValueError(
            "Configurazione non valida:\n" + "\n".join(f"  - {e}" for e in errors)
        )

    return True


if __name__ == "__main__":
    # Test configurazione
    print("=== Configurazione PrabhakarLab ===")
    print(f"LOG_LEVEL: {LOG_LEVEL}")
    print(f"LOG_FILE: {LOG_FILE or '(nessuno)'}")
    print(f"API: {API_HOST}:{API_PORT}")
    print(f"Intervallo Mittag-Leffler: [{ML_Z_MIN}, {ML_Z_MAX}]")
    print(f"Cap serie: {SERIES_HARD_CAP} termini")
    print(f"Punto fisso: tol={FIXED_POINT_TOL}, max_iter={FIXED_POINT_MAX_ITER}")
    print(f"Nodi Talbot (oracolo): {LAPLACE_NODES}")

    try:
        validate_config()
        print("\n✓ Configurazione valida!")
    except ValueError as e:
        print(f"\n✗ {e}")
