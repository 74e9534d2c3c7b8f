"""Commodities: one flow problem per surviving def-use link.

A consistent def-use pair (u, v) at cell z becomes a commodity whose
graph is the subgraph of u-to-v paths avoiding "hiding" interior nodes
(nodes that redefine z strictly between the definition and the use).
The per-cell link graph then connects commodity endpoints: its edges
are exactly the consistent pairs writing that cell, so its paths are
chains of compatible reads and writes.
"""

from __future__ import annotations

from dataclasses import dataclass

from .cfg import SINK, SOURCE, Cfg, node_key
from .steps import Step


@dataclass(frozen=True)
class Commodity:
    index: int
    cell: int
    source: object  # def node
    target: object  # use node
    nodes: frozenset
    succs: dict

    def usable(self) -> bool:
        return bool(self.nodes)

    def edges(self):
        for u in sorted(self.nodes, key=node_key):
            for v in self.succs.get(u, ()):
                yield u, v

    def edge_count(self) -> int:
        return sum(len(v) for v in self.succs.values())


def _hides(node, cell: int) -> bool:
    # only step nodes can hide; source/sink never sit strictly inside
    return isinstance(node, Step) and node.cell == cell


def build_commodity(cfg: Cfg, pair: tuple, index: int = 0) -> Commodity:
    """Label propagation: forward from the def, backward from the use,
    both refusing to pass through hiding nodes; keep the intersection."""
    def_node, use_node, cell = pair

    fwd = {def_node}
    work = [def_node]
    while work:
        u = work.pop()
        for v in cfg.succs.get(u, ()):
            if v in fwd or (_hides(v, cell) and v is not use_node):
                continue
            fwd.add(v)
            work.append(v)

    bwd = {use_node}
    work = [use_node]
    while work:
        u = work.pop()
        for v in cfg.preds.get(u, ()):
            if v in bwd or (_hides(v, cell) and v is not def_node):
                continue
            bwd.add(v)
            work.append(v)

    nodes = fwd & bwd
    if def_node not in nodes or use_node not in nodes or len(nodes) < 2:
        return Commodity(index, cell, def_node, use_node, frozenset(), {})
    succs = {
        u: tuple(v for v in cfg.succs.get(u, ()) if v in nodes) for u in sorted(nodes, key=node_key)
    }
    return Commodity(index, cell, def_node, use_node, frozenset(nodes), succs)


def build_commodities(cfg: Cfg, pairs: set[tuple], window: tuple[int, int]) -> list[Commodity]:
    """Commodities for the pairs whose written cell lies in the window,
    indexed deterministically."""
    lo, hi = window
    chosen = sorted(
        (p for p in pairs if lo <= p[2] <= hi),
        key=lambda p: (p[2], node_key(p[0]), node_key(p[1])),
    )
    return [build_commodity(cfg, p, i) for i, p in enumerate(chosen)]


@dataclass(frozen=True)
class CellLinkGraph:
    """Per-cell graph over commodity endpoints; edges are the pairs."""

    cell: int
    nodes: tuple
    edges: tuple  # (def_node, use_node) in commodity order

    def out_edges(self, u):
        return tuple(e for e in self.edges if e[0] is u or e[0] == u)

    def in_edges(self, u):
        return tuple(e for e in self.edges if e[1] is u or e[1] == u)


def build_link_graphs(commodities: list[Commodity], window: tuple[int, int]) -> list[CellLinkGraph]:
    lo, hi = window
    out = []
    for cell in range(lo, hi + 1):
        cell_comms = [k for k in commodities if k.cell == cell]
        nodes: list = []
        for k in cell_comms:
            for n in (k.source, k.target):
                if n not in nodes:
                    nodes.append(n)
        edges = tuple((k.source, k.target) for k in cell_comms)
        out.append(CellLinkGraph(cell=cell, nodes=tuple(sorted(nodes, key=node_key)), edges=edges))
    return out


def to_dot(cfg: Cfg, commodity: Commodity) -> str:
    """Diagnostic DOT export of one commodity subgraph."""
    from .cfg import node_ids

    ids = node_ids(cfg)
    lines = [f"digraph commodity_{commodity.index} {{"]
    for u in sorted(commodity.nodes, key=node_key):
        mark = ""
        if u is commodity.source or u == commodity.source:
            mark = " (def)"
        if u is commodity.target or u == commodity.target:
            mark = " (use)"
        lines.append(f'  {ids[u]} [label="{u}{mark}"];')
    for u, v in commodity.edges():
        lines.append(f"  {ids[u]} -> {ids[v]};")
    lines.append("}")
    return "\n".join(lines) + "\n"
