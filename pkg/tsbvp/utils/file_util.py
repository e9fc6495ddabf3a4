import numpy as np
import os
import tempfile


def atomic_write_text(path, text):
    """Write text to ``path`` atomically (temporary file + rename).

    Args:
        path (str): Destination file.
        text (str): Content.
    """
    folder = os.path.dirname(os.path.abspath(path))
    os.makedirs(folder, exist_ok=True)
    fd, tmp_path = tempfile.mkstemp(dir=folder, prefix='.tmp_', suffix=os.path.basename(path))
    try:
        with os.fdopen(fd, 'w', newline='\n') as f:
            f.write(text)
        os.replace(tmp_path, path)
    except BaseException:
        if os.path.exists(tmp_path):
            os.remove(tmp_path)
        raise


def format_float(x):
    """Fixed 17-significant-digit formatting used by every CSV writer."""
    return f'{float(x):.17g}'


def csv_text(header, columns):
    """Format equally long columns as CSV with deterministic number formatting.

    Args:
        header (list[str]): Column names.
        columns (list[array_like]): One sequence per column. Floats are
            written with 17 significant digits, bools as 0/1 and strings
            verbatim.
    """
    assert len(header) == len(columns), 'header and columns do not match.'
    lengths = {len(c) for c in columns}
    assert len(lengths) <= 1, f'columns have different lengths: {sorted(lengths)}'

    lines = [','.join(header)]
    for row in zip(*columns):
        lines.append(','.join(_format_cell(v) for v in row))
    return '\n'.join(lines) + '\n'


def write_csv(path, header, columns):
    """Write CSV columns to ``path`` atomically; see ``csv_text``."""
    atomic_write_text(path, csv_text(header, columns))


def _format_cell(value):
    if isinstance(value, (bool, np.bool_)):
        return '1' if value else '0'
    if isinstance(value, str):
        return value
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    return format_float(value)

