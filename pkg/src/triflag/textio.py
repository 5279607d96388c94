"""Plain-text matrices: a header line `p n`, then one row of n integers per line.

A file may hold several blocks separated by blank lines (a triple is three
blocks).  Flags are written as their canonical rows, so V_i is the span of the
first i rows and writing what was read reproduces the text byte for byte.
"""

from __future__ import annotations

from pathlib import Path

import numpy as np

from .exactlin import FullFlag, Subspace, as_field

__all__ = ["ParseError", "format_rows", "format_flag", "format_subspace", "parse_blocks",
           "read_blocks", "read_flag", "read_subspace"]


class ParseError(ValueError):
    pass


def format_rows(rows: np.ndarray, p: int, ambient: int) -> str:
    lines = [f"{p} {ambient}"]
    lines += [" ".join(str(int(x)) for x in row) for row in np.asarray(rows).reshape(-1, ambient)]
    return "\n".join(lines) + "\n"


def format_flag(flag: FullFlag) -> str:
    return format_rows(flag.rows, flag.p, flag.ambient)


def format_subspace(space: Subspace) -> str:
    return format_rows(space.basis, space.p, space.ambient)


def parse_blocks(text: str) -> list[tuple[int, np.ndarray]]:
    """[(p, rows)] for every block; errors name the offending line."""
    blocks, header, rows = [], None, []

    def close():
        if header is not None:
            p, n = header
            blocks.append((p, np.array(rows, dtype=np.int64).reshape(len(rows), n)))

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            close()
            header, rows = None, []
            continue
        try:
            vals = [int(x) for x in line.split()]
        except ValueError:
            raise ParseError(f"line {lineno}: non-integer entry in {raw!r}") from None
        if header is None:
            if len(vals) != 2:
                raise ParseError(f"line {lineno}: header must be 'p n'")
            p, n = vals
            try:
                as_field(p)
            except ValueError as exc:
                raise ParseError(f"line {lineno}: {exc}") from None
            if n <= 0:
                raise ParseError(f"line {lineno}: dimension must be positive")
            header = (p, n)
            continue
        if len(vals) != header[1]:
            raise ParseError(f"line {lineno}: row has {len(vals)} entries, expected {header[1]}")
        if min(vals) < 0 or max(vals) >= header[0]:
            raise ParseError(f"line {lineno}: entries must lie in 0..{header[0] - 1}")
        rows.append(vals)
    close()
    if not blocks:
        raise ParseError("no matrix block found")
    return blocks


def read_blocks(path: str | Path) -> list[tuple[int, np.ndarray]]:
    return parse_blocks(Path(path).read_text(encoding="utf8"))


def _as_flag(p: int, rows: np.ndarray) -> FullFlag:
    if rows.shape[0] == 0:
        raise ParseError("a flag needs at least one row")
    if Subspace.span(rows, p).dim != rows.shape[0]:
        raise ParseError("flag rows are linearly dependent")
    return FullFlag.from_rows(rows, p)


def read_flag(text: str) -> FullFlag:
    (p, rows), *rest = parse_blocks(text)
    if rest:
        raise ParseError("expected a single block")
    return _as_flag(p, rows)


def read_subspace(text: str) -> Subspace:
    (p, rows), *rest = parse_blocks(text)
    if rest:
        raise ParseError("expected a single block")
    return Subspace.span(rows, p, rows.shape[1])
