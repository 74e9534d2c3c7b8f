"""Computation-step algebra.

A computation step packages one transition firing together with the
tape cell it touches and its ordinal position in a run:

    (q, s, q_next, s_next, m, cell, ordinal)

Chains of steps may describe genuine runs or "tape-arbitrary" chains
that only respect control flow (state handoff, ordinal, head motion)
while reading whatever symbols they please.  Classifying a chain as
tape consistent or tape inconsistent is the heart of this package:
consistent chains are exactly the genuine runs.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .machine import MOVE_OFFSET, MachineSpec, tape_symbol


@dataclass(frozen=True, order=True)
class Step:
    q: str
    s: str
    q_next: str
    s_next: str
    m: str
    cell: int
    ordinal: int

    def is_halt_marker(self) -> bool:
        return self.q == self.q_next and self.s == self.s_next and self.m == "S"

    def __str__(self) -> str:
        return f"({self.q},{self.s},{self.q_next},{self.s_next},{self.m},{self.cell},{self.ordinal})"


def halt_marker(state: str, symbol: str, cell: int, ordinal: int) -> Step:
    """The do-nothing terminal step (q,s,q,s,S,cell,ordinal).

    It is exempt from membership in the transition relation; it marks
    "the machine has stopped here" when a run is shorter than the chain
    length under discussion.
    """
    return Step(state, symbol, state, symbol, "S", cell, ordinal)


def is_sequential_pair(t1: Step, t2: Step) -> bool:
    """Can t2 immediately follow t1 in time?"""
    return (
        t2.q == t1.q_next
        and t2.ordinal == t1.ordinal + 1
        and t2.cell == t1.cell + MOVE_OFFSET[t1.m]
    )


def is_tape_consistent_pair(t1: Step, t2: Step) -> bool:
    """Does a later read of the same cell see what t1 wrote there?

    t2 need not immediately follow t1; the predicate only compares the
    written and read symbols.
    """
    return t2.s == t1.s_next


class MalformedSequenceError(ValueError):
    """The chain violates a structural precondition (not a tape issue)."""


def check_chain(machine: MachineSpec, x: str, seq: tuple[Step, ...]) -> None:
    """Raise MalformedSequenceError unless seq starts on x and chains."""
    if not seq:
        raise MalformedSequenceError("empty sequence")
    head = seq[0]
    if head.q != machine.start or head.cell != 1 or head.ordinal != 1:
        raise MalformedSequenceError(f"first step does not start on the input: {head}")
    for i, t in enumerate(seq):
        if t.ordinal != i + 1:
            raise MalformedSequenceError(f"ordinal of element {i + 1} is {t.ordinal}")
    for t1, t2 in zip(seq, seq[1:]):
        if not is_sequential_pair(t1, t2):
            raise MalformedSequenceError(f"non-sequential pair {t1} -> {t2}")


def subseq_at_cell(seq: tuple[Step, ...], cell: int) -> tuple[Step, ...]:
    """The ordered subsequence of steps touching the given cell."""
    return tuple(t for t in seq if t.cell == cell)


def tape_first(seq: tuple[Step, ...], cell: int) -> Optional[int]:
    """Ordinal of the first step at the cell, or None if unvisited."""
    ordinals = [t.ordinal for t in seq if t.cell == cell]
    return min(ordinals) if ordinals else None


def tape_prev(seq: tuple[Step, ...], cell: int, ordinal: int) -> Optional[int]:
    """Latest ordinal < ordinal among steps at the cell, or None."""
    ordinals = [t.ordinal for t in seq if t.cell == cell and t.ordinal < ordinal]
    return max(ordinals) if ordinals else None


@dataclass(frozen=True)
class Classification:
    consistent: bool
    # smallest violation by (ordinal, cell); None when consistent
    witness: Optional[tuple[int, int]] = None  # (cell, ordinal)


def classify_sequence(machine: MachineSpec, x: str, seq: tuple[Step, ...]) -> Classification:
    """Classify a chain as tape consistent or tape inconsistent.

    A chain is consistent when, for every visited cell, the first read
    there sees the initial tape (input symbols on cells 1..|x|, blank
    elsewhere) and every later read sees the previous write.  The
    witness is the lexicographically smallest violating (ordinal, cell)
    position, reported as (cell, ordinal).
    """
    check_chain(machine, x, seq)
    violations: list[tuple[int, int]] = []  # (ordinal, cell)
    last_seen: dict[int, Step] = {}
    for t in seq:
        prev = last_seen.get(t.cell)
        if prev is None:
            if t.s != tape_symbol(x, t.cell, machine.blank):
                violations.append((t.ordinal, t.cell))
        else:
            if not is_tape_consistent_pair(prev, t):
                violations.append((t.ordinal, t.cell))
        last_seen[t.cell] = t
    if not violations:
        return Classification(consistent=True)
    ordinal, cell = min(violations)
    return Classification(consistent=False, witness=(cell, ordinal))


def footprint(seq: tuple[Step, ...]) -> tuple[int, int]:
    """(leftmost, rightmost) cell touched by the chain."""
    cells = [t.cell for t in seq]
    return min(cells), max(cells)


def tape_range(mu: int) -> tuple[int, int]:
    """Cells reachable within mu steps: [2 - mu .. mu]."""
    return 2 - mu, mu


def format_sequence(seq: tuple[Step, ...]) -> str:
    return " ".join(str(t) for t in seq)
