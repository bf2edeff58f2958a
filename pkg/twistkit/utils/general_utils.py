"""
Helper functions
"""
import logging
import random
import sys
import time
from contextlib import contextmanager
from typing import Optional


def init_log(name: str = "twistkit", stdout_level=logging.WARNING,
             filename: Optional[str] = None) -> logging.Logger:
    logger = logging.getLogger("twistkit")
    logger.setLevel(logging.DEBUG)
    for handler in list(logger.handlers):
        logger.removeHandler(handler)
    formatter = logging.Formatter(f'[{name} - %(asctime)s - %(levelname)s] %(message)s')
    # console handler at the requested level, stderr so reports own stdout
    ch = logging.StreamHandler(sys.stderr)
    ch.setLevel(stdout_level)
    ch.setFormatter(formatter)
    logger.addHandler(ch)
    if filename:
        # file handler that logs debug and higher level messages
        fh = logging.FileHandler(filename)
        fh.setLevel(logging.DEBUG)
        fh.setFormatter(formatter)
        logger.addHandler(fh)
    return logger


@contextmanager
def timer(label: str, logger: logging.Logger = None):
    start = time.time()
    yield
    (logger or logging.getLogger("twistkit")).debug(
        f"[Process {label}] elapsed in {time.time() - start:.3f}s")


def generate_seed(seed: Optional[int] = None) -> random.Random:
    """Seeded generator for sampled checks; seed None draws a fresh one."""
    if seed is None:
        seed = random.randint(1, 100000)
    return random.Random(seed)
