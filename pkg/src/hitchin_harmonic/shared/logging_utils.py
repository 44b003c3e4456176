"""
Colored console logging.
"""

import logging
from typing import Iterable, Optional

import colorlog
from tqdm import tqdm

LOG_FORMAT = '%(asctime)s - %(name)s - %(levelname)s - %(message)s'

LOG_COLORS = {
    'DEBUG': 'cyan',
    'INFO': 'green',
    'WARNING': 'yellow',
    'ERROR': 'red',
    'CRITICAL': 'bold_red',
}


def setup_logging(level: str = 'INFO') -> logging.Logger:
    """Install a colored handler on the root logger (idempotent)."""
    root = logging.getLogger()
    root.setLevel(getattr(logging, str(level).upper(), logging.INFO))

    for handler in list(root.handlers):
        if getattr(handler, '_hitchin', False):
            root.removeHandler(handler)

    handler = colorlog.StreamHandler()
    handler.setFormatter(colorlog.ColoredFormatter('%(log_color)s' + LOG_FORMAT, log_colors=LOG_COLORS))
    handler._hitchin = True
    root.addHandler(handler)
    return root


def progress(iterable: Iterable, enabled: bool, desc: str, total: Optional[int] = None):
    """Wrap an iterable in a tqdm bar when enabled."""
    return tqdm(iterable, desc=desc, total=total, disable=not enabled, leave=False)
