"""Deduplicated DAG of all bounded tape-arbitrary step chains.

One node per distinct reachable step tuple; an edge (u, v) exactly when
v can immediately follow u in time.  The exponential tree of chains is
never materialized: two chains sharing a step tuple share its node, so
the graph stays polynomial in the bound while its root-to-leaf paths
are exactly the chains.
"""

from __future__ import annotations

from dataclasses import dataclass

from .machine import MOVE_OFFSET, MachineSpec, tape_symbol
from .steps import Step


@dataclass(frozen=True)
class StepGraph:
    machine: MachineSpec
    x: str
    mu: int
    nodes: frozenset[Step]
    roots: tuple[Step, ...]
    succs: dict[Step, tuple[Step, ...]]
    preds: dict[Step, tuple[Step, ...]]

    def edge_count(self) -> int:
        return sum(len(v) for v in self.succs.values())

    def edges(self):
        for u in sorted(self.nodes):
            for v in self.succs.get(u, ()):
                yield u, v


def _root_steps(machine: MachineSpec, x: str) -> list[Step]:
    s1 = tape_symbol(x, 1, machine.blank)
    return [Step(q, s, q2, s2, m, 1, 1) for q, s, q2, s2, m in machine.transitions_at(machine.start, s1)]


def _successor_steps(machine: MachineSpec, u: Step) -> list[Step]:
    cell = u.cell + MOVE_OFFSET[u.m]
    ordinal = u.ordinal + 1
    out = []
    for s in machine.read_symbols(u.q_next):
        for q, sym, q2, s2, m in machine.transitions_at(u.q_next, s):
            out.append(Step(q, sym, q2, s2, m, cell, ordinal))
    return out


def build_step_graph(machine: MachineSpec, x: str, mu: int) -> StepGraph:
    """Worklist construction keyed on step tuples.

    Nodes at ordinal mu are leaves even when the machine could go on;
    a node with no successors at an earlier ordinal marks a halt.
    """
    if mu < 1:
        raise ValueError("mu must be >= 1")
    roots = _root_steps(machine, x)
    nodes: set[Step] = set(roots)
    succs: dict[Step, tuple[Step, ...]] = {}
    work = list(roots)
    while work:
        u = work.pop()
        if u in succs:
            continue
        if u.ordinal >= mu:
            succs[u] = ()
            continue
        children = _successor_steps(machine, u)
        succs[u] = tuple(sorted(children))
        for v in children:
            if v not in nodes:
                nodes.add(v)
                work.append(v)
    return _finish(machine, x, mu, nodes, roots, succs)


def build_step_graph_dfs(machine: MachineSpec, x: str, mu: int) -> StepGraph:
    """Recursive tree-walk construction with a visited set.

    Semantically the literal traversal of the chain tree where a node
    whose step tuple was seen before is not expanded again.  Kept as an
    independent implementation; it must produce the same graph as the
    worklist builder.
    """
    if mu < 1:
        raise ValueError("mu must be >= 1")
    roots = _root_steps(machine, x)
    visited: set[Step] = set()
    succs: dict[Step, tuple[Step, ...]] = {}

    def visit(u: Step):
        if u in visited:
            return
        visited.add(u)
        if u.ordinal >= mu:
            succs[u] = ()
            return
        children = _successor_steps(machine, u)
        succs[u] = tuple(sorted(children))
        for v in children:
            visit(v)

    for r in roots:
        visit(r)
    return _finish(machine, x, mu, visited, roots, succs)


def _finish(machine, x, mu, nodes, roots, succs) -> StepGraph:
    preds: dict[Step, list[Step]] = {}
    for u, children in succs.items():
        for v in children:
            preds.setdefault(v, []).append(u)
    return StepGraph(
        machine=machine,
        x=x,
        mu=mu,
        nodes=frozenset(nodes),
        roots=tuple(sorted(roots)),
        succs=succs,
        preds={v: tuple(sorted(ps)) for v, ps in preds.items()},
    )


def all_paths_count(graph: StepGraph) -> int:
    """Number of root-to-leaf paths (DP over ordinals, exact big int)."""
    counts: dict[Step, int] = {}
    for u in sorted(graph.nodes, key=lambda t: (-t.ordinal, t)):
        children = graph.succs.get(u, ())
        counts[u] = sum(counts[v] for v in children) if children else 1
    return sum(counts[r] for r in graph.roots)


def iter_chains(graph: StepGraph, budget: int = 500_000):
    """Yield every root-to-leaf chain (desk scale only)."""
    seen = 0

    def walk(prefix: list[Step]):
        nonlocal seen
        seen += 1
        if seen > budget:
            raise RuntimeError(f"chain walk exceeded budget {budget}")
        children = graph.succs.get(prefix[-1], ())
        if not children:
            yield tuple(prefix)
            return
        for v in children:
            prefix.append(v)
            yield from walk(prefix)
            prefix.pop()

    for r in graph.roots:
        yield from walk([r])


def node_bound(machine: MachineSpec, mu: int) -> int:
    """Structural ceiling on the node count: |delta| * (2 mu - 1) * mu."""
    return len(machine.delta) * (2 * mu - 1) * mu


def to_dot(graph: StepGraph) -> str:
    """Deterministic DOT rendering, one record per step."""
    ordered = sorted(graph.nodes)
    ids = {u: f"n{i}" for i, u in enumerate(ordered)}
    lines = ["digraph stepgraph {"]
    for u in ordered:
        lines.append(f'  {ids[u]} [shape=record, label="{u}"];')
    for u in ordered:
        for v in graph.succs.get(u, ()):
            lines.append(f"  {ids[u]} -> {ids[v]};")
    lines.append("}")
    return "\n".join(lines) + "\n"
