"""
Esecuzione in serie dei controlli incrociati di PrabhakarLab.

Legge una lista di casi da JSON e lancia `cli.py crosscheck` per ciascuno.

Uso:
    python multi_check.py checks.example.json
    python multi_check.py checks.example.json --out-dir results/
    python multi_check.py checks.example.json --stop-on-fail
"""
import json
import sys
import subprocess
import argparse
from pathlib import Path
import logging

logging.basicConfig(
    level=logging.INFO,
    format="%(asctime)s - %(levelname)s - %(message)s"
)
logger = logging.getLogger(__name__)

# chiavi del JSON accettate come flag di `cli.py crosscheck`
CHECK_KEYS = ("f", "alpha", "beta", "gamma", "omega", "T", "h", "tol", "lam", "y0")


def load_checks(config_file):
    """
    Carica la lista dei casi da file JSON.

    Args:
        config_file: Path al file di configurazione

    Returns:
        Dict con 'checks' (lista di casi, ciascuno con 'theorem')
    """
    config_path = Path(config_file)

    if not config_path.exists():
        logger.error(f"File configurazione non trovato: {config_file}")
        sys.exit(2)

    with open(config_path, 'r', encoding='utf-8') as f:
        config = json.load(f)

    checks = config.get('checks')
    if not checks:
        logger.error("Configurazione deve contenere almeno un caso in 'checks'")
        sys.exit(2)

    for i, case in enumerate(checks, 1):
        if 'theorem' not in case:
            logger.error(f"Caso {i} senza 'theorem'")
            sys.exit(2)
        unknown = set(case) - set(CHECK_KEYS) - {'theorem', 'name'}
        if unknown:
            logger.error(f"Caso {i}: chiavi sconosciute {sorted(unknown)}")
            sys.exit(2)

    return config


def build_command(case, out_path=None):
    """Riga di comando `cli.py crosscheck` per un caso."""
    cmd = [sys.executable, 'cli.py', 'crosscheck', '--theorem', str(case['theorem'])]
    for key in CHECK_KEYS:
        if case.get(key) is not None:
            cmd += [f'--{key}', str(case[key])]
    if out_path:
        cmd += ['--out', str(out_path)]
    return cmd


def run_checks(config, out_dir=None, stop_on_fail=False):
    """
    Esegue tutti i casi.

    Args:
        config: Configurazione caricata
        out_dir: Directory per i CSV (un file per caso); None = stdout
        stop_on_fail: Interrompe al primo caso non superato

    Returns:
        Lista di tuple (nome, exit code)
    """
    checks = config['checks']
    project_root = Path(__file__).parent
    results = []

    print("\n" + "=" * 60)
    print("CONTROLLI INCROCIATI")
    print("=" * 60)
    print(f"Casi da eseguire: {len(checks)}\n")

    for i, case in enumerate(checks, 1):
        name = case.get('name', f"teorema{case['theorem']}_{i:02d}")
        out_path = Path(out_dir) / f"{name}.csv" if out_dir else None
        cmd = build_command(case, out_path)

        print(f"\n[{i}/{len(checks)}] {name}")
        logger.info(f"Comando: {' '.join(cmd[1:])}")

        try:
            result = subprocess.run(cmd, cwd=str(project_root), check=False)
            code = result.returncode
        except OSError as e:
            logger.error(f"Impossibile avviare {name}: {e}")
            code = 1

        results.append((name, code))
        if code == 0:
            print(f"  ✓ PASS: {name}")
        else:
            print(f"  ✗ FAIL: {name} (exit code: {code})")
            if stop_on_fail:
                logger.warning("Interruzione al primo fallimento (--stop-on-fail)")
                break

    return results


def main():
    """Main function."""
    parser = argparse.ArgumentParser(
        description="Esecuzione in serie dei controlli incrociati di PrabhakarLab"
    )
    parser.add_argument(
        "config",
        help="File JSON con la lista dei casi (es: checks.example.json)"
    )
    parser.add_argument(
        "--out-dir",
        help="Directory in cui salvare un CSV per caso"
    )
    parser.add_argument(
        "--stop-on-fail",
        action="store_true",
        help="Interrompe al primo caso non superato"
    )

    args = parser.parse_args()
    config = load_checks(args.config)
    if args.out_dir:
        Path(args.out_dir).mkdir(parents=True, exist_ok=True)

    results = run_checks(config, out_dir=args.out_dir, stop_on_fail=args.stop_on_fail)
    failed = [name for name, code in results if code != 0]

    # Riepilogo finale
    print("\n" + "=" * 60)
    print("RIEPILOGO")
    print("=" * 60)
    print(f"Casi eseguiti: {len(results)}/{len(config['checks'])}")
    print(f"Superati: {len(results) - len(failed)}")
    print(f"Falliti: {len(failed)}")
    for name in failed:
        print(f"  - {name}")
    print("=" * 60 + "\n")

    return 1 if failed else 0


if __name__ == "__main__":
    sys.exit(main())
