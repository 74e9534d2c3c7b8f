# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled tableau row kernels.

Same contract as _rowops_py; the entries are exact rational objects
(gmpy2.mpq or Fraction), so the win over pure Python is loop overhead
only.  Keep the arithmetic identical to the fallback: results must be
bit-for-bit the same either way.
"""

KERNEL = "cython"


def normalize_row(list row, Py_ssize_t col):
    cdef Py_ssize_t j, n = len(row)
    piv = row[col]
    if piv == 1:
        return
    for j in range(n):
        v = row[j]
        if v:
            row[j] = v / piv


def eliminate(list rows, Py_ssize_t skip, list piv_row, Py_ssize_t col):
    cdef Py_ssize_t i, j, m = len(rows), n = len(piv_row)
    cdef list row
    for i in range(m):
        if i == skip:
            continue
        row = <list>rows[i]
        f = row[col]
        if not f:
            continue
        for j in range(n):
            p = piv_row[j]
            if p:
                row[j] = row[j] - f * p


def col_sums(list rows, list row_ids, Py_ssize_t ncols):
    cdef Py_ssize_t j, i
    cdef list out = [0] * ncols
    cdef list row
    for i in row_ids:
        row = <list>rows[i]
        for j in range(ncols):
            v = row[j]
            if v:
                out[j] = out[j] + v
    return out
