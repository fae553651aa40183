import logging
import os
import sys
from typing import Dict, Iterable, List, Optional

import pandas as pd

from . import config_loader
from .config_loader import get_config

LOG_FORMAT = '%(asctime)s - %(name)s - %(levelname)s - %(message)s'

# 17 significant digits: one before the point, sixteen after.
FLOAT_FORMAT = '%.16e'


def setup_logging() -> None:
    """Configures logging based on the settings in config.yaml."""
    config = get_config()
    log_config = config.get('logging', {})
    log_level_str = str(log_config.get('log_level', 'INFO')).upper()
    log_file = log_config.get('log_file') or ''

    log_level = getattr(logging, log_level_str, logging.INFO)
    log_handlers: List[logging.Handler] = []

    if log_file:
        log_dir = os.path.dirname(log_file)
        try:
            if log_dir and not os.path.exists(log_dir):
                os.makedirs(log_dir)
            file_handler = logging.FileHandler(log_file, encoding='utf-8')
            file_handler.setFormatter(logging.Formatter(LOG_FORMAT))
            log_handlers.append(file_handler)
        except OSError as e:
            print(f"Error setting up file logger for '{log_file}': {e}", file=sys.stderr)

    # Console goes to stderr; stdout carries command output.
    console_handler = logging.StreamHandler(sys.stderr)
    console_handler.setFormatter(logging.Formatter(LOG_FORMAT))
    log_handlers.append(console_handler)

    logging.basicConfig(level=log_level,
                        format=LOG_FORMAT,
                        handlers=log_handlers,
                        force=True)

    logging.debug(f"Logging configured. Level: {log_level_str}, "
                  f"File: '{os.path.abspath(log_file) if log_file else 'None'}'")
    if config_loader.load_problem:
        logging.warning(config_loader.load_problem)


def write_csv(path: str, columns: Dict[str, Iterable],
              metadata: Optional[Dict[str, object]] = None) -> int:
    """Writes a deterministic CSV file.

    Floats use scientific notation with 17 significant digits, lines end in
    '\\n' and the header row comes first. ``metadata`` entries are written
    before the header as ``# key = value`` lines.

    Returns:
        The number of data rows written.
    """
    frame = pd.DataFrame(columns)
    out_dir = os.path.dirname(path)
    if out_dir and not os.path.exists(out_dir):
        os.makedirs(out_dir, exist_ok=True)

    with open(path, 'w', encoding='utf-8', newline='') as handle:
        for key, value in (metadata or {}).items():
            if isinstance(value, float):
                value = FLOAT_FORMAT % value
            handle.write(f"# {key} = {value}\n")
        frame.to_csv(handle, index=False, float_format=FLOAT_FORMAT, lineterminator='\n')

    logging.getLogger(__name__).info(f"Wrote {len(frame)} rows to '{path}'")
    return len(frame)
