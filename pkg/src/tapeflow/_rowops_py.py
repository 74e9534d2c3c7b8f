"""Pure-Python tableau row kernels (fallback for the compiled module).

The compiled variant in _rowops.pyx implements exactly the same three
functions; solver behavior must not depend on which one is loaded.
"""

from __future__ import annotations

KERNEL = "python"


def normalize_row(row: list, col: int) -> None:
    piv = row[col]
    if piv == 1:
        return
    for j in range(len(row)):
        if row[j]:
            row[j] = row[j] / piv


def eliminate(rows: list, skip: int, piv_row: list, col: int) -> None:
    n = len(piv_row)
    for i in range(len(rows)):
        if i == skip:
            continue
        row = rows[i]
        f = row[col]
        if not f:
            continue
        for j in range(n):
            p = piv_row[j]
            if p:
                row[j] = row[j] - f * p


def col_sums(rows: list, row_ids: list, ncols: int) -> list:
    out = [0] * ncols
    for i in row_ids:
        row = rows[i]
        for j in range(ncols):
            v = row[j]
            if v:
                out[j] = out[j] + v
    return out
