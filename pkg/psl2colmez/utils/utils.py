import logging
import os
from concurrent.futures import ProcessPoolExecutor
from datetime import datetime
from pathlib import Path

import numpy as np


def setup_logging(log_folder: str | None = None, level: str = "INFO") -> None:
    """
    Set up the logging object. Logs go to stderr, and to a log file in
    log_folder when one is given.
    """
    NOW = datetime.now().strftime("%Y-%m-%d_%H:%M")

    handlers: list[logging.Handler] = [logging.StreamHandler()]
    if log_folder is not None:
        if not (log_folder := Path(log_folder)).exists():
            log_folder.mkdir(parents=True)
        LOG_FILE = f"{log_folder}/psl2colmez_{NOW}.log"
        handlers.append(logging.FileHandler(LOG_FILE))

    logging.basicConfig(
        level=getattr(logging, str(level).upper(), logging.INFO),
        format="%(asctime)s [%(levelname)s] \n%(message)s",
        datefmt="%Y-%m-%d %I:%M:%S",
        handlers=handlers,
        force=True,
    )


def worker_count() -> int:
    """
    Worker processes for sweeps, capped by COLMEZ_THREADS (default 1).
    """
    raw = os.environ.get("COLMEZ_THREADS", "1")
    try:
        threads = int(raw)
    except ValueError:
        logging.warning(f"COLMEZ_THREADS={raw!r} is not an integer, using 1")
        return 1
    return max(1, min(threads, os.cpu_count() or 1))


def parallel_map(func, items: list) -> list:
    """
    Map func over items, in worker processes when COLMEZ_THREADS > 1.
    Results keep the order of items.
    """
    workers = min(worker_count(), len(items))
    if workers <= 1:
        return [func(item) for item in items]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(func, items))


def make_rng(seed: int) -> np.random.Generator:
    return np.random.default_rng(seed)
