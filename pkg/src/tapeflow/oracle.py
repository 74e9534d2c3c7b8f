"""Ground truth by direct search.

The oracle explores the machine's configuration graph directly: breadth
first for verdicts (so the shortest accepting run length is exact) and
depth first for exhaustive enumeration of bounded runs and of
tape-arbitrary step chains.  Everything here is deliberately naive; the
rest of the package is measured against it.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional

from .machine import MOVE_OFFSET, Configuration, MachineSpec, initial_configuration, step, tape_symbol
from .steps import Step, classify_sequence, footprint, halt_marker


class CapacityError(RuntimeError):
    """An enumeration or search exceeded its configured budget."""


@dataclass(frozen=True)
class OracleResult:
    verdict: str  # accept | reject | undecided_at_cap
    shortest_accepting_length: Optional[int] = None  # transitions
    path: Optional[tuple[Configuration, ...]] = None

    def decisive(self) -> bool:
        return self.verdict in ("accept", "reject")


def decide(machine: MachineSpec, x: str, step_cap: int, node_budget: int = 200_000) -> OracleResult:
    """BFS the configuration graph up to step_cap transitions.

    accept: some accepting configuration is reachable (shortest depth
    reported, with one witness path).  reject: every branch halts in a
    non-accepting state within the cap and no reachable cycle exists.
    undecided_at_cap: anything else (depth or node budget exhausted, or
    a cycle proves some branch never halts).
    """
    if step_cap < 1:
        raise ValueError("step_cap must be >= 1")
    init = initial_configuration(machine, x)
    if init.state in machine.accepting:
        return OracleResult("accept", 0, (init,))

    parent: dict[Configuration, Optional[Configuration]] = {init: None}
    frontier = [init]
    edges: dict[Configuration, tuple[Configuration, ...]] = {}
    truncated = False
    revisit = False
    depth = 0
    while frontier and depth < step_cap:
        depth += 1
        nxt = []
        for conf in frontier:
            succs = step(machine, conf)
            edges[conf] = succs
            for child in succs:
                if child in parent:
                    revisit = True
                    continue
                parent[child] = conf
                if child.state in machine.accepting:
                    chain = [child]
                    cur: Optional[Configuration] = conf
                    while cur is not None:
                        chain.append(cur)
                        cur = parent[cur]
                    chain.reverse()
                    return OracleResult("accept", depth, tuple(chain))
                nxt.append(child)
                if len(parent) > node_budget:
                    truncated = True
        frontier = nxt
        if truncated:
            break
    if frontier or truncated:
        return OracleResult("undecided_at_cap")
    # Frontier exhausted without acceptance.  A revisited configuration
    # may close a cycle (an infinite run), in which case the machine
    # does not reject in the strong sense; check reachability of a cycle.
    if revisit and _has_cycle(edges):
        return OracleResult("undecided_at_cap")
    return OracleResult("reject")


def _has_cycle(edges: dict[Configuration, tuple[Configuration, ...]]) -> bool:
    WHITE, GRAY, BLACK = 0, 1, 2
    color: dict[Configuration, int] = {}
    for root in edges:
        if color.get(root, WHITE) != WHITE:
            continue
        stack: list[tuple[Configuration, int]] = [(root, 0)]
        color[root] = GRAY
        while stack:
            node, i = stack.pop()
            succs = edges.get(node, ())
            if i < len(succs):
                stack.append((node, i + 1))
                child = succs[i]
                c = color.get(child, WHITE)
                if c == GRAY:
                    return True
                if c == WHITE:
                    color[child] = GRAY
                    stack.append((child, 0))
            else:
                color[node] = BLACK
    return False


def run_paths(
    machine: MachineSpec, x: str, length: int, budget: int = 500_000
) -> list[tuple[Configuration, ...]]:
    """All genuine partial runs with exactly `length` transitions."""
    out: list[tuple[Configuration, ...]] = []
    seen = 0

    def extend(prefix: list[Configuration]):
        nonlocal seen
        seen += 1
        if seen > budget:
            raise CapacityError(f"run enumeration exceeded budget {budget}")
        if len(prefix) == length + 1:
            out.append(tuple(prefix))
            return
        for child in step(machine, prefix[-1]):
            prefix.append(child)
            extend(prefix)
            prefix.pop()

    extend([initial_configuration(machine, x)])
    return out


def steps_of_run(machine: MachineSpec, run: tuple[Configuration, ...]) -> tuple[Step, ...]:
    """Replay a run (list of configurations) into its step chain."""
    out = []
    for i, (a, b) in enumerate(zip(run, run[1:])):
        read = a.symbol_at(a.head, machine.blank)
        written = b.symbol_at(a.head, machine.blank)
        out.append(Step(a.state, read, b.state, written, _move_of(a, b), a.head, i + 1))
    return tuple(out)


def run_with_marker(machine: MachineSpec, run: tuple[Configuration, ...]) -> tuple[Step, ...]:
    """Step chain of a run with the halt marker appended at the end."""
    base = steps_of_run(machine, run)
    last = run[-1]
    read = last.symbol_at(last.head, machine.blank)
    return base + (halt_marker(last.state, read, last.head, len(run)),)


def _move_of(a: Configuration, b: Configuration) -> str:
    diff = b.head - a.head
    for m, off in MOVE_OFFSET.items():
        if off == diff:
            return m
    raise ValueError("configurations are not one transition apart")


def replay_sequence(
    machine: MachineSpec, x: str, seq: tuple[Step, ...]
) -> Optional[tuple[Configuration, ...]]:
    """Replay a step chain against the real tape.

    Returns the run (configurations) when the chain is a genuine
    computation: every step's read matches the actual tape and its
    transition is applicable.  Returns None otherwise.
    """
    conf = initial_configuration(machine, x)
    run = [conf]
    for t in seq:
        if conf.state != t.q or conf.head != t.cell:
            return None
        if conf.symbol_at(conf.head, machine.blank) != t.s:
            return None
        if (t.q, t.s, t.q_next, t.s_next, t.m) not in machine.transitions_at(t.q, t.s):
            return None
        tape = dict(conf.tape)
        if t.s_next == machine.blank:
            tape.pop(conf.head, None)
        else:
            tape[conf.head] = t.s_next
        conf = Configuration(
            state=t.q_next, tape=tuple(sorted(tape.items())), head=conf.head + MOVE_OFFSET[t.m]
        )
        run.append(conf)
    return tuple(run)


def arbitrary_chains(
    machine: MachineSpec, x: str, mu: int, budget: int = 500_000
) -> list[tuple[Step, ...]]:
    """All mu-length tape-arbitrary chains starting on x.

    The first step reads the true first input symbol; later steps read
    any symbol the successor state has a transition for.  This is the
    brute-force mirror of the deduplicated step graph.
    """
    first_read = tape_symbol(x, 1, machine.blank)
    out: list[tuple[Step, ...]] = []
    seen = 0

    def extend(chain: list[Step]):
        nonlocal seen
        seen += 1
        if seen > budget:
            raise CapacityError(f"chain enumeration exceeded budget {budget}")
        if len(chain) == mu:
            out.append(tuple(chain))
            return
        last = chain[-1]
        cell = last.cell + MOVE_OFFSET[last.m]
        ordinal = last.ordinal + 1
        for s in machine.read_symbols(last.q_next):
            for q, sym, q2, s2, m in machine.transitions_at(last.q_next, s):
                chain.append(Step(q, sym, q2, s2, m, cell, ordinal))
                extend(chain)
                chain.pop()

    for q, s, q2, s2, m in machine.transitions_at(machine.start, first_read):
        extend([Step(q, s, q2, s2, m, 1, 1)])
    return out


def enumerate_sequences(
    machine: MachineSpec,
    x: str,
    mu: int,
    selected: Iterable[str],
    kind: str = "arbitrary",
    budget: int = 500_000,
) -> list[tuple[Step, ...]]:
    """mu-length tape-arbitrary chains ending in a selected state,
    filtered by classification kind (arbitrary | consistent | inconsistent)."""
    if kind not in ("arbitrary", "consistent", "inconsistent"):
        raise ValueError(f"bad kind {kind!r}")
    selected = frozenset(selected)
    chains = [c for c in arbitrary_chains(machine, x, mu, budget) if c[-1].q_next in selected]
    if kind == "arbitrary":
        return chains
    keep_consistent = kind == "consistent"
    return [
        c for c in chains if classify_sequence(machine, x, c).consistent == keep_consistent
    ]


def consistent_exists_with_footprint(
    machine: MachineSpec,
    x: str,
    mu: int,
    selected: Iterable[str],
    seg: tuple[int, int],
    budget: int = 500_000,
) -> bool:
    """Is there a consistent mu-chain ending in `selected` whose
    footprint fits inside the cell window seg?"""
    lo, hi = seg
    for c in enumerate_sequences(machine, x, mu, selected, "consistent", budget):
        left, right = footprint(c)
        if lo <= left and right <= hi:
            return True
    return False
