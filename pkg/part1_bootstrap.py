#!/usr/bin/env python3
# part1_bootstrap.py — console, logging, configuration, worker pool

import os
import tempfile
import importlib
from concurrent.futures import ProcessPoolExecutor
from datetime import datetime
from typing import Callable, Iterable, List, Optional, Sequence, TypeVar

from rich.console import Console
from rich.progress import Progress, SpinnerColumn, BarColumn, TextColumn, TimeElapsedColumn

APP_NAME = "EtaForms"

T = TypeVar("T")
R = TypeVar("R")


# Debug flag
def _is_debugging() -> bool:
    return os.environ.get("ETAFORMS_DEBUG") == "1"


DEBUG = _is_debugging()

console = Console()
err_console = Console(stderr=True)


# Logging paths
def _safe_log_dir() -> str:
    xdg = os.environ.get("XDG_DATA_HOME") or os.path.expanduser(os.path.join("~", ".local", "share"))
    pd_dir = os.path.join(xdg, APP_NAME)
    try:
        os.makedirs(pd_dir, exist_ok=True)
    except Exception:
        pd_dir = tempfile.gettempdir()
    return pd_dir


LOG_DIR = _safe_log_dir()
LOG_FILE = os.path.join(LOG_DIR, "etaforms.log")

HERE = os.path.dirname(os.path.abspath(__file__))
CATALOG_DIR = os.environ.get("ETAFORMS_CATALOG") or os.path.join(HERE, "catalog")

# Run-time defaults; CLI flags override them
CENSUS_PMAX = 10_000
DENSITY_PMAX = 100_000
IDENTITY_DEPTH = 500
EIGEN_PRIME_BOUND = 100
DENSITY_TOLERANCE = 0.05
DIHEDRAL_THRESHOLD = 0.45
MATCH_TOLERANCE = 0.1

REQUIRED_MODULES = ("rich", "gmpy2", "sympy", "mpmath", "numpy")


def default_threads() -> int:
    raw = os.environ.get("ETAFORMS_THREADS", "").strip()
    if raw:
        try:
            return max(1, int(raw))
        except ValueError:
            log(f"ignoring ETAFORMS_THREADS={raw!r}")
    return os.cpu_count() or 1


def log(msg: str) -> None:
    try:
        line = f"{datetime.now():%Y-%m-%d %H:%M:%S} | {msg}"
        with open(LOG_FILE, "a", encoding="utf-8") as f:
            f.write(line + "\n")
    except Exception:
        pass


def tail_log(n: int = 200) -> str:
    try:
        with open(LOG_FILE, "r", encoding="utf-8") as f:
            lines = f.read().splitlines()
            return "\n".join(lines[-n:])
    except FileNotFoundError:
        return ""
    except Exception:
        return ""


def missing_dependencies(modules: Sequence[str] = REQUIRED_MODULES) -> List[str]:
    missing = []
    for name in modules:
        try:
            importlib.import_module(name)
        except ImportError:
            missing.append(name)
    return missing


def parallel_map(func: Callable[[T], R], items: Iterable[T], threads: int = 1,
                 chunksize: Optional[int] = None) -> List[R]:
    """Ordered map; runs inline for threads <= 1, otherwise on a process pool.

    func must be a module-level callable so it pickles.
    """
    items = list(items)
    if threads <= 1 or len(items) < 2:
        return [func(x) for x in items]
    workers = min(threads, len(items))
    if chunksize is None:
        chunksize = max(1, len(items) // (workers * 4))
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(func, items, chunksize=chunksize))


def make_progress(transient: bool = True) -> Progress:
    """Progress bar on stderr so stdout stays machine-readable."""
    return Progress(
        SpinnerColumn(),
        TextColumn("[bold]{task.description}"),
        BarColumn(),
        TextColumn("{task.completed}/{task.total}"),
        TimeElapsedColumn(),
        console=err_console,
        transient=transient,
    )
