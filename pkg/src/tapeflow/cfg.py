"""Control-flow view of the step graph.

Each step node is read as a tiny program statement: it uses (reads) one
tape cell, then defines (writes) the same cell.  A synthetic source
node defines every cell of the reachable tape range with the initial
tape content; a synthetic sink node carries a wildcard usage matched by
any definition that survives to the end.  Standard reaching-definitions
over this graph yields the def-use pairs the flow LP is built from.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .machine import MachineSpec, tape_symbol
from .steps import Step, tape_range


@dataclass(frozen=True, order=True)
class Marker:
    kind: str

    def __str__(self) -> str:
        return self.kind


SOURCE = Marker("source")
SINK = Marker("sink")

Node = object  # Step | Marker


def node_key(u) -> tuple:
    if u is SOURCE:
        return (0,)
    if u is SINK:
        return (2,)
    return (1, u)


@dataclass(frozen=True)
class Cfg:
    machine: MachineSpec
    x: str
    mu: int
    selected: frozenset[str]
    window: tuple[int, int]  # cells the graph was restricted to
    nodes: frozenset
    succs: dict
    preds: dict

    def step_nodes(self) -> list[Step]:
        return sorted(u for u in self.nodes if isinstance(u, Step))

    def edges(self):
        for u in sorted(self.nodes, key=node_key):
            for v in self.succs.get(u, ()):
                yield u, v

    def edge_count(self) -> int:
        return sum(len(v) for v in self.succs.values())

    def has_paths(self) -> bool:
        """False means the source cannot reach the sink at all."""
        return bool(self.succs.get(SOURCE))


def build_cfg(
    graph,
    selected,
    window: Optional[tuple[int, int]] = None,
) -> Cfg:
    """Wire source and sink onto a step graph and prune.

    selected: sink in-edges come only from bound-level nodes whose next
    state is in this set.  window: optional cell interval; step nodes
    touching cells outside it are dropped before pruning.  The result
    keeps exactly the nodes and edges lying on some source-to-sink path.
    """
    machine, x, mu = graph.machine, graph.x, graph.mu
    selected = frozenset(selected)
    lo, hi = window if window is not None else tape_range(mu)

    keep = {u for u in graph.nodes if lo <= u.cell <= hi}
    succs: dict = {u: tuple(v for v in graph.succs.get(u, ()) if v in keep) for u in keep}
    succs[SOURCE] = tuple(sorted(r for r in graph.roots if r in keep))
    bottom = sorted(u for u in keep if u.ordinal == mu and u.q_next in selected)
    for u in bottom:
        succs[u] = succs.get(u, ()) + (SINK,)
    succs[SINK] = ()

    # restrict to nodes on some source-to-sink path
    fwd = _reachable(succs, SOURCE)
    preds_all: dict = {}
    for u, children in succs.items():
        for v in children:
            preds_all.setdefault(v, []).append(u)
    bwd = _reachable({u: tuple(preds_all.get(u, ())) for u in succs}, SINK)
    alive = fwd & bwd

    if SOURCE not in alive or SINK not in alive:
        alive = {SOURCE, SINK}
    pruned_succs = {
        u: tuple(v for v in succs.get(u, ()) if v in alive) for u in sorted(alive, key=node_key)
    }
    pruned_preds: dict = {u: () for u in alive}
    for u, children in pruned_succs.items():
        for v in children:
            pruned_preds[v] = pruned_preds.get(v, ()) + (u,)
    return Cfg(
        machine=machine,
        x=x,
        mu=mu,
        selected=selected,
        window=(lo, hi),
        nodes=frozenset(alive),
        succs=pruned_succs,
        preds={u: tuple(sorted(ps, key=node_key)) for u, ps in pruned_preds.items()},
    )


def _reachable(succs: dict, root) -> set:
    seen = {root}
    work = [root]
    while work:
        u = work.pop()
        for v in succs.get(u, ()):
            if v not in seen:
                seen.add(v)
                work.append(v)
    return seen


def node_semantics(cfg: Cfg, u) -> tuple[Optional[tuple[int, str]], list[tuple[int, str]]]:
    """(use, defs) of a node: use is (cell, symbol) or None, defs is a
    list of (cell, symbol).  The sink's wildcard usage is reported as
    use None here and handled specially by the analysis."""
    if u is SOURCE:
        lo, hi = tape_range(cfg.mu)
        return None, [(c, tape_symbol(cfg.x, c, cfg.machine.blank)) for c in range(lo, hi + 1)]
    if u is SINK:
        return None, []
    return (u.cell, u.s), [(u.cell, u.s_next)]


def _mk_pair(cell: int, def_node, use_node) -> tuple:
    # def-use pairs are plain (def_node, use_node, cell) triples
    return (def_node, use_node, cell)


def reaching_definitions(cfg: Cfg) -> set[tuple]:
    """Forward may-analysis; returns (def_node, use_node, cell) triples.

    A definition of a cell kills every other definition of that cell.
    The sink collects one pair per definition (of any cell) reaching it.
    """
    order = _topo_order(cfg)
    def_sites: dict = {}  # node -> tuple of cells it defines
    for u in order:
        _, defs = node_semantics(cfg, u)
        def_sites[u] = tuple(c for c, _ in defs)

    ins: dict = {u: set() for u in order}
    for u in order:  # one pass suffices on a DAG in topological order
        inset = ins[u]
        cells_defined = set(def_sites[u])
        outset = {(n, c) for (n, c) in inset if c not in cells_defined}
        outset |= {(u, c) for c in def_sites[u]}
        for v in cfg.succs.get(u, ()):
            ins[v] |= outset

    pairs: set[tuple] = set()
    for u in order:
        if u is SOURCE:
            continue
        if u is SINK:
            for d, c in ins[u]:
                pairs.add(_mk_pair(c, d, SINK))
            continue
        use, _ = node_semantics(cfg, u)
        cell = use[0]
        for d, c in ins[u]:
            if c == cell:
                pairs.add(_mk_pair(c, d, u))
    return pairs


def _topo_order(cfg: Cfg) -> list:
    # ordinal already stratifies step nodes; markers go first/last
    def level(u):
        if u is SOURCE:
            return -1
        if u is SINK:
            return cfg.mu + 1
        return u.ordinal

    return sorted(cfg.nodes, key=lambda u: (level(u), node_key(u)))


def written_symbol(cfg: Cfg, def_node, cell: int) -> str:
    if def_node is SOURCE:
        return tape_symbol(cfg.x, cell, cfg.machine.blank)
    return def_node.s_next


def consistent_pairs(cfg: Cfg, pairs: set[tuple]) -> set[tuple]:
    """Keep pairs whose written symbol equals the read symbol; pairs
    into the sink are kept unconditionally (wildcard usage)."""
    kept = set()
    for def_node, use_node, cell in pairs:
        if use_node is SINK or written_symbol(cfg, def_node, cell) == use_node.s:
            kept.add((def_node, use_node, cell))
    return kept


def enumerate_paths(cfg: Cfg, budget: int = 10_000):
    """All source-to-sink paths; raises RuntimeError beyond budget."""
    out = []

    def walk(prefix: list):
        if len(out) > budget:
            raise RuntimeError(f"path enumeration exceeded budget {budget}")
        u = prefix[-1]
        if u is SINK:
            out.append(tuple(prefix))
            return
        for v in cfg.succs.get(u, ()):
            prefix.append(v)
            walk(prefix)
            prefix.pop()

    walk([SOURCE])
    return out


def pathwise_pairs(cfg: Cfg, budget: int = 10_000) -> set[tuple]:
    """Independent oracle for reaching_definitions: per path, scan for
    each use the last writer of its cell, union over all paths."""
    pairs: set[tuple] = set()
    lo, hi = tape_range(cfg.mu)
    for path in enumerate_paths(cfg, budget):
        last: dict[int, object] = {c: SOURCE for c in range(lo, hi + 1)}
        for u in path[1:]:
            if u is SINK:
                for c, d in last.items():
                    pairs.add(_mk_pair(c, d, SINK))
                continue
            pairs.add(_mk_pair(u.cell, last[u.cell], u))
            last[u.cell] = u
    return pairs


def node_ids(cfg: Cfg) -> dict:
    """Stable node naming for dumps: source, sink, n0..nk by step order."""
    ids = {SOURCE: "source", SINK: "sink"}
    for i, u in enumerate(cfg.step_nodes()):
        ids[u] = f"n{i}"
    return ids


def to_dot(cfg: Cfg) -> str:
    ids = node_ids(cfg)
    lines = ["digraph cfg {"]
    for u in sorted(cfg.nodes, key=node_key):
        if u is SOURCE:
            label = "source: initial tape defs"
        elif u is SINK:
            label = "sink: wildcard use"
        else:
            label = f"{u}\\nuse ({u.cell},{u.s}) def ({u.cell},{u.s_next})"
        lines.append(f'  {ids[u]} [shape=record, label="{label}"];')
    for u, v in cfg.edges():
        lines.append(f"  {ids[u]} -> {ids[v]};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def dump_pairs(cfg: Cfg, pairs: set[tuple]) -> str:
    """Sorted `(def) ~ (use) @ cell` lines."""
    ids = node_ids(cfg)

    def fmt(n):
        return str(n) if isinstance(n, Step) else ids[n]

    lines = []
    for def_node, use_node, cell in sorted(pairs, key=lambda p: (p[2], node_key(p[0]), node_key(p[1]))):
        lines.append(f"{fmt(def_node)} ~ {fmt(use_node)} @ {cell}")
    return "\n".join(lines) + "\n"
