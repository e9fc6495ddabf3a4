from .file_util import atomic_write_text, csv_text, format_float, write_csv
from .registry import COMMAND_REGISTRY, CONDITION_REGISTRY, TIMESCALE_REGISTRY

__all__ = [
    # file_util.py
    'atomic_write_text',
    'format_float',
    'csv_text',
    'write_csv',
    # registry.py
    'TIMESCALE_REGISTRY',
    'CONDITION_REGISTRY',
    'COMMAND_REGISTRY',
]
