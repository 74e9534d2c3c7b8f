"""Feasibility of  U x = b,  x >= 0  by presolve + phase-1 simplex.

All arithmetic is exact rational, so "feasible" and "infeasible" are
decisions, not tolerances.  Presolve repeatedly applies cheap sound
rules (constant rows, forced zeros, two-term aliasing); whatever
survives goes to a dense phase-1 simplex with Bland's anti-cycling
rule.  Feasible results return a full verifying assignment.

The tableau inner loops go through a row kernel that exists twice: a
compiled Cython module and a pure-Python fallback with identical
semantics, selected at import (TAPEFLOW_PURE=1 forces the fallback).
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from typing import Optional

from .linsys import LinearSystem
from .rational import ONE, ZERO, Q
from .oracle import CapacityError

if os.environ.get("TAPEFLOW_PURE"):
    from . import _rowops_py as _rowops
else:
    try:
        from . import _rowops  # type: ignore[attr-defined]
    except ImportError:  # compiled kernel unavailable
        from . import _rowops_py as _rowops

KERNEL = _rowops.KERNEL

DEFAULT_VAR_CEILING = 200_000


@dataclass(frozen=True)
class FeasibilityResult:
    status: str  # feasible | infeasible
    assignment: Optional[dict[str, object]] = None

    @property
    def feasible(self) -> bool:
        return self.status == "feasible"


class _Infeasible(Exception):
    pass


def solve_feasibility(system: LinearSystem, var_ceiling: int = DEFAULT_VAR_CEILING) -> FeasibilityResult:
    if system.n_vars > var_ceiling:
        raise CapacityError(f"system has {system.n_vars} variables, ceiling is {var_ceiling}")
    try:
        fixed, alias, rows, rhs = _presolve(system)
        basic = _phase_one(rows, rhs)
    except _Infeasible:
        return FeasibilityResult("infeasible")
    values: dict[int, object] = dict(fixed)
    values.update(basic)

    def value_of(v: int):
        seen = []
        while v in alias and v not in values:
            seen.append(v)
            k, v2 = alias[v]
            v = v2
        base = values.get(v, ZERO)
        for s in reversed(seen):
            k, _ = alias[s]
            base = k * base
            values[s] = base
        return values.get(v, ZERO) if not seen else values[seen[0]]

    assignment = {}
    for i, name in enumerate(system.names):
        if i in values:
            assignment[name] = values[i]
        elif i in alias:
            assignment[name] = value_of(i)
        else:
            assignment[name] = ZERO
    return FeasibilityResult("feasible", assignment)


def _presolve(system: LinearSystem):
    """Sound shrinking rules, run to a fixed point.

    Returns (fixed values, alias map var -> (k, rep) meaning var = k*rep
    with k > 0, surviving rows, surviving rhs).
    """
    rows: list[dict[int, object]] = [dict(r) for r in system.rows]
    rhs: list = list(system.rhs)
    alive = [True] * len(rows)
    fixed: dict[int, object] = {}
    alias: dict[int, tuple[object, int]] = {}
    rows_of: dict[int, set[int]] = {}
    for ri, row in enumerate(rows):
        for v in row:
            rows_of.setdefault(v, set()).add(ri)

    def resolve(v: int):
        """Follow alias/fixed chains: returns ('fixed', value) or (k, rep)."""
        k = ONE
        while True:
            if v in fixed:
                return ("fixed", k * fixed[v])
            if v in alias:
                k2, v2 = alias[v]
                k = k * k2
                v = v2
                continue
            return (k, v)

    from collections import deque

    queue = deque(range(len(rows)))
    queued = set(queue)

    def enqueue(ri: int):
        if alive[ri] and ri not in queued:
            queue.append(ri)
            queued.add(ri)

    def touch_var(v: int):
        for ri in rows_of.get(v, ()):  # rows referencing v need rewriting
            enqueue(ri)

    def fix(v: int, val):
        if val < ZERO:
            raise _Infeasible
        if v in fixed:
            if fixed[v] != val:
                raise _Infeasible
            return
        fixed[v] = val
        touch_var(v)

    while queue:
        ri = queue.popleft()
        queued.discard(ri)
        if not alive[ri]:
            continue
        row = rows[ri]
        b = rhs[ri]
        new: dict[int, object] = {}
        for v, c in row.items():
            r = resolve(v)
            if r[0] == "fixed":
                b = b - c * r[1]
            else:
                k, rep = r
                acc = new.get(rep, ZERO) + c * k
                if acc == ZERO:
                    new.pop(rep, None)
                else:
                    new[rep] = acc
        # refresh the index for this row
        for v in row:
            if v not in new:
                s = rows_of.get(v)
                if s is not None:
                    s.discard(ri)
        for v in new:
            rows_of.setdefault(v, set()).add(ri)
        rows[ri] = new
        rhs[ri] = b

        if not new:
            if b != ZERO:
                raise _Infeasible
            alive[ri] = False
            continue
        if len(new) == 1:
            (v, c), = new.items()
            alive[ri] = False
            fix(v, b / c)
            continue
        pos = all(c > ZERO for c in new.values())
        neg = all(c < ZERO for c in new.values())
        if b == ZERO and (pos or neg):
            alive[ri] = False
            for v in list(new):
                fix(v, ZERO)
            continue
        if (pos and b < ZERO) or (neg and b > ZERO):
            raise _Infeasible
        if len(new) == 2 and b == ZERO:
            (v1, c1), (v2, c2) = sorted(new.items())
            # opposite signs here (same-sign was handled above): v2 = k*v1
            k = -c1 / c2
            alive[ri] = False
            alias[v2] = (k, v1)
            rows_of.pop(v2, None)
            touch_var(v2)
            continue

    live_rows = [rows[i] for i in range(len(rows)) if alive[i]]
    live_rhs = [rhs[i] for i in range(len(rows)) if alive[i]]
    return fixed, alias, live_rows, live_rhs


def _phase_one(rows: list[dict[int, object]], rhs: list) -> dict[int, object]:
    """Dense phase-1 simplex with Bland's rule.

    Raises _Infeasible when the artificial optimum is positive; returns
    {var: value} for the surviving variables otherwise.
    """
    if not rows:
        return {}
    cols = sorted({v for row in rows for v in row})
    col_of = {v: j for j, v in enumerate(cols)}
    n = len(cols)
    m = len(rows)
    tab: list[list] = []
    for row, b in zip(rows, rhs):
        dense = [ZERO] * (n + 1)
        for v, c in row.items():
            dense[col_of[v]] = c
        dense[n] = b
        if b < ZERO:
            dense = [-c for c in dense]
        tab.append(dense)

    basis: list[int] = [n + i for i in range(m)]  # >= n means artificial
    art_rows = list(range(m))

    while True:
        art_rows = [i for i in art_rows if basis[i] >= n]
        if all(tab[i][n] == ZERO for i in art_rows):
            break  # artificial objective at zero: feasible
        sums = _rowops.col_sums(tab, art_rows, n)
        enter = -1
        for j in range(n):
            if sums[j] > ZERO:  # reduced cost negative
                enter = j
                break
        if enter < 0:
            raise _Infeasible  # optimum positive
        leave = -1
        best = None
        for i in range(m):
            a = tab[i][enter]
            if a > ZERO:
                ratio = tab[i][n] / a
                if best is None or ratio < best or (ratio == best and basis[i] < basis[leave]):
                    best = ratio
                    leave = i
        if leave < 0:  # cannot happen: phase-1 objective is bounded
            raise AssertionError("phase-1 ratio test found no pivot")
        piv_row = tab[leave]
        _rowops.normalize_row(piv_row, enter)
        _rowops.eliminate(tab, leave, piv_row, enter)
        basis[leave] = enter

    values: dict[int, object] = {}
    for i in range(m):
        if basis[i] < n:
            values[cols[basis[i]]] = tab[i][n]
    for v in cols:
        values.setdefault(v, ZERO)
    return values
