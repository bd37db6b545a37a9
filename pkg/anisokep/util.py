import os
import json
import tempfile

import numpy

__all__ = ['RandomState', 'format_float', 'format_floats', 'write_atomic',
           'write_json', 'write_csv']


def RandomState(seed):
    """Deterministic numpy RandomState; ``None`` maps to seed 0."""
    return numpy.random.RandomState(0 if seed is None else seed)


def format_float(value):
    """Nine significant digits; integers and non-floats pass through."""
    return float('%.9g' % value)


def format_floats(data):
    """Recursively round floats (and numpy scalars/arrays) for output."""
    if isinstance(data, dict):
        return dict((k, format_floats(v)) for k, v in data.items())
    if isinstance(data, (list, tuple)):
        return [format_floats(v) for v in data]
    if isinstance(data, numpy.ndarray):
        return format_floats(data.tolist())
    if isinstance(data, (bool, numpy.bool_)):
        return bool(data)
    if isinstance(data, (int, numpy.integer)):
        return int(data)
    if isinstance(data, (float, numpy.floating)):
        value = float(data)
        if not numpy.isfinite(value):
            return None
        return format_float(value)
    return data


def write_atomic(filename, text):
    """Write text to filename through a temporary file and a rename."""
    directory = os.path.dirname(os.path.abspath(filename))
    if not os.path.isdir(directory):
        os.makedirs(directory)
    fd, tmp = tempfile.mkstemp(dir=directory, prefix='.tmp-')
    try:
        with os.fdopen(fd, 'w') as f:
            f.write(text)
        os.replace(tmp, filename)
    except Exception:
        if os.path.exists(tmp):
            os.remove(tmp)
        raise


def write_json(filename, data):
    write_atomic(filename, json.dumps(format_floats(data), indent=2,
                                      sort_keys=True) + '\n')


def write_csv(filename, header, rows):
    """Write rows of numbers as CSV with '%.9g' formatting."""
    lines = [','.join(header)]
    for row in rows:
        lines.append(','.join('%.9g' % v for v in row))
    write_atomic(filename, '\n'.join(lines) + '\n')
