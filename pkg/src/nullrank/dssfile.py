"""Plain-text serialization of descriptor realizations (format ``DSS v1``).

Layout, line by line::

    DSS v1
    timing <continuous|discrete>
    dims <n> <m> <p>
    A
    <n rows, entries separated by single spaces>
    E
    ...
    B
    ...
    C
    ...
    D
    ...

Entries are written in Python's shortest round-tripping decimal form, so
a write/read cycle reproduces every float bit-exactly.  Matrices with a
zero dimension contribute their name line and no row lines.  Files are
UTF-8 with LF line endings.
"""

from __future__ import annotations

import numpy as np

from .core import DescriptorSystem, _TIMINGS
from .errors import ShapeError

__all__ = ["dumps_system", "loads_system", "read_system", "write_system"]

_HEADER = "DSS v1"
_NAMES = ("A", "E", "B", "C", "D")


def dumps_system(sys: DescriptorSystem) -> str:
    """Serialize a realization to the text format as a single string."""
    lines = [_HEADER, f"timing {sys.timing}", f"dims {sys.n} {sys.m} {sys.p}"]
    for name in _NAMES:
        mat = getattr(sys, name)
        lines.append(name)
        if mat.shape[0] > 0 and mat.shape[1] > 0:
            for row in mat:
                lines.append(" ".join(repr(float(x)) for x in row))
    return "\n".join(lines) + "\n"


def loads_system(text: str) -> DescriptorSystem:
    """Parse the text format; inverse of :func:`dumps_system`.

    Raises
    ------
    ValueError
        On any malformed header, dimension line, matrix name, or row.
    """
    lines = text.splitlines()
    pos = 0

    def take(what):
        nonlocal pos
        if pos >= len(lines):
            raise ValueError(f"unexpected end of file, expected {what}")
        line = lines[pos]
        pos += 1
        return line

    if take("header").strip() != _HEADER:
        raise ValueError(f"not a {_HEADER} file")
    timing_line = take("timing line").split()
    if len(timing_line) != 2 or timing_line[0] != "timing" or timing_line[1] not in _TIMINGS:
        raise ValueError("malformed timing line")
    timing = timing_line[1]
    dims_line = take("dims line").split()
    if len(dims_line) != 4 or dims_line[0] != "dims":
        raise ValueError("malformed dims line")
    try:
        n, m, p = (int(tok) for tok in dims_line[1:])
    except ValueError:
        raise ValueError("dims are not integers") from None
    if min(n, m, p) < 0:
        raise ValueError("dims must be non-negative")

    shapes = {"A": (n, n), "E": (n, n), "B": (n, m), "C": (p, n), "D": (p, m)}
    mats = {}
    for name in _NAMES:
        if take(f"matrix name {name}").strip() != name:
            raise ValueError(f"expected matrix block {name} at line {pos}")
        rows, cols = shapes[name]
        if rows == 0 or cols == 0:
            mats[name] = np.zeros((rows, cols))
            continue
        data = np.empty((rows, cols))
        for i in range(rows):
            entries = take(f"row {i} of {name}").split()
            if len(entries) != cols:
                raise ValueError(
                    f"row {i} of {name} has {len(entries)} entries, expected {cols}"
                )
            try:
                data[i] = [float(tok) for tok in entries]
            except ValueError:
                raise ValueError(f"non-numeric entry in row {i} of {name}") from None
        mats[name] = data
    if any(line.strip() for line in lines[pos:]):
        raise ValueError("trailing content after matrix blocks")
    try:
        return DescriptorSystem(
            mats["A"], mats["E"], mats["B"], mats["C"], mats["D"], timing
        )
    except ShapeError as exc:  # e.g. non-finite entries
        raise ValueError(str(exc)) from None


def write_system(sys: DescriptorSystem, path) -> None:
    """Write a realization to ``path`` in the text format."""
    with open(path, "w", encoding="utf-8", newline="\n") as handle:
        handle.write(dumps_system(sys))


def read_system(path) -> DescriptorSystem:
    """Read a realization previously stored with :func:`write_system`."""
    with open(path, "r", encoding="utf-8") as handle:
        return loads_system(handle.read())
