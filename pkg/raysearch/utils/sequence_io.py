"""
Utilities for loading turn sequences from CSV and JSON files.

CSV files have a header line naming the columns. A w-sequence has the
columns ``i``, ``h`` and ``a``, a cyclic sequence the columns ``i`` and
``s``. JSON files contain an object with the keys ``h`` and ``a`` or the key
``s``, and optionally ``w``.
"""
import json
from pathlib import Path

import numpy as np

from raysearch.model import DomainError
from raysearch.sequences import CyclicSequence, WSequence


def load_sequence(path, w=None):
    """Load a w-sequence or a cyclic sequence from a file.

    The format is determined by the file extension (``.json`` or ``.csv``).

    Args:
        path: The path of the file
        w: The number of paths (required for CSV files, overrides the value
            given in JSON files)

    Returns:
        A :class:`WSequence` or a :class:`CyclicSequence`

    Raises:
        DomainError: if the file is malformed, does not describe a sequence
            or ``w`` is missing
    """
    path = Path(path)
    if path.suffix.lower() == ".json":
        with path.open() as file:
            try:
                data = json.load(file)
            except json.JSONDecodeError as error:
                raise DomainError("%s is not valid JSON: %s" % (path, error))
        if not isinstance(data, dict):
            raise DomainError("%s does not contain a JSON object" % path)
        if w is not None:
            data["w"] = w
        if "w" not in data:
            raise DomainError("The number of paths w is not given")
        return _from_columns(data, _integer(data["w"]))

    if w is None:
        raise DomainError("The number of paths w is required for CSV input")
    try:
        table = np.atleast_1d(
            np.genfromtxt(path, delimiter=",", names=True, dtype=float)
        )
    except ValueError as error:
        raise DomainError("%s is not a valid CSV table: %s" % (path, error))
    if table.dtype.names is None:
        raise DomainError("%s has no header line" % path)
    columns = {name: table[name] for name in table.dtype.names}
    for name, values in columns.items():
        # Cells that are not numbers are read as NaN
        if not np.all(np.isfinite(values)):
            raise DomainError(
                "Column %r of %s contains values that are not finite numbers"
                % (name, path)
            )
    if "i" in columns:
        order = np.argsort(columns["i"], kind="stable")
        columns = {name: values[order] for name, values in columns.items()}
    return _from_columns(columns, w)


def _from_columns(columns, w):
    if "h" in columns and "a" in columns:
        return WSequence(
            heights=tuple(_real(h) for h in _column(columns, "h")),
            labels=tuple(_integer(a) for a in _column(columns, "a")),
            w=w,
        )
    if "s" in columns:
        values = tuple(_real(s) for s in _column(columns, "s"))
        return CyclicSequence(values, w)
    raise DomainError("Expected the columns h and a, or the column s")


def _column(columns, name):
    values = columns[name]
    if not isinstance(values, (list, tuple, np.ndarray)):
        raise DomainError("Column %r must be a list of numbers" % name)
    return values


def _real(value):
    try:
        return float(value)
    except (TypeError, ValueError):
        raise DomainError("%r is not a number" % (value,))


def _integer(value):
    number = _real(value)
    if not number.is_integer():
        raise DomainError("%r is not an integer" % (value,))
    return int(number)
