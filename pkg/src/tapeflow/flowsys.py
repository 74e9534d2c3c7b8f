"""Assembly of the feasibility system.

Variable families over one windowed CFG (z ranges over window cells,
i over commodities, u over CFG nodes, e over edges):

    fk{i}[u], hk{i}[e]   flow through commodity i's subgraph
    fc{z}[u], hc{z}[e]   flow on the per-cell link graph
    fs{z}[u]             per-cell commodity throughput at u
    fg[u],  hg[e]        one unit of global source-to-sink flow

Equations, in emission order: commodity flow conservation, link-graph
flow conservation, throughput definitions, global flow conservation,
throughput/global coupling, unit source and sink flow, and zeroing of
dangling link-graph nodes.

The throughput definition has two profiles.  "balanced" counts a
commodity at u when u is its def endpoint or strictly inside it (for
the outgoing sum) and when u is its use endpoint or strictly inside it
(for the incoming sum); both sums define the same fs variable, so a
node's incoming and outgoing consistent-link flow must both match the
global flow through it.  A unit flow along any consistent chain then
satisfies everything by construction.  "literal" counts every
membership once in a single sum, which double-counts chain endpoints;
it is kept for comparison runs.
"""

from __future__ import annotations

from .cfg import SINK, SOURCE, Cfg, node_ids
from .commodities import CellLinkGraph, Commodity
from .linsys import LinearSystem
from .rational import ONE, ZERO
from .steps import Step

PROFILES = ("balanced", "literal")


def _edge_name(prefix: str, ids, u, v) -> str:
    return f"{prefix}[{ids[u]}>{ids[v]}]"


def build_flow_system(
    cfg: Cfg,
    commodities: list[Commodity],
    link_graphs: list[CellLinkGraph],
    window: tuple[int, int],
    profile: str = "balanced",
) -> LinearSystem:
    if profile not in PROFILES:
        raise ValueError(f"unknown profile {profile!r}")
    ids = node_ids(cfg)
    sysm = LinearSystem()

    # deterministic node order: source, steps ascending, sink
    def ordered_nodes(node_set):
        from .cfg import node_key

        return sorted(node_set, key=node_key)

    # 1) commodity flow conservation
    for k in commodities:
        if not k.usable():
            continue
        fk = lambda u, k=k: f"fk{k.index}[{ids[u]}]"
        hk = lambda u, v, k=k: f"hk{k.index}[{ids[u]}>{ids[v]}]"
        in_edges: dict = {u: [] for u in k.nodes}
        for u, v in k.edges():
            in_edges[v].append(u)
        for v in ordered_nodes(k.nodes):
            if v == k.source:
                continue
            terms = [(ONE, fk(v))] + [(-ONE, hk(u, v)) for u in in_edges[v]]
            sysm.add_named_eq(terms, ZERO, f"k{k.index}_in_{ids[v]}")
        for u in ordered_nodes(k.nodes):
            if u == k.target:
                continue
            terms = [(ONE, fk(u))] + [(-ONE, hk(u, v)) for v in k.succs.get(u, ())]
            sysm.add_named_eq(terms, ZERO, f"k{k.index}_out_{ids[u]}")

    # 2) link-graph flow conservation
    for lg in link_graphs:
        z = lg.cell
        fc = lambda u, z=z: f"fc{z}[{ids[u]}]"
        hc = lambda u, v, z=z: f"hc{z}[{ids[u]}>{ids[v]}]"
        for v in lg.nodes:
            if v is SOURCE:
                continue
            terms = [(ONE, fc(v))] + [(-ONE, hc(a, b)) for a, b in lg.edges if b == v]
            sysm.add_named_eq(terms, ZERO, f"c{z}_in_{ids[v]}")
        for u in lg.nodes:
            if u is SINK:
                continue
            terms = [(ONE, fc(u))] + [(-ONE, hc(a, b)) for a, b in lg.edges if a == u]
            sysm.add_named_eq(terms, ZERO, f"c{z}_out_{ids[u]}")

    # membership tables for 3) and 5)
    lo, hi = window
    by_cell: dict[int, list[Commodity]] = {z: [] for z in range(lo, hi + 1)}
    memb: dict[tuple, tuple[list, list]] = {}  # (node, cell) -> (outgoing, incoming)
    for k in commodities:
        if not k.usable():
            continue
        by_cell[k.cell].append(k)
        for u in k.nodes:
            outm, inm = memb.setdefault((u, k.cell), ([], []))
            if u != k.target:
                outm.append(k)
            if u != k.source:
                inm.append(k)

    def memberships(u, z):
        return memb.get((u, z), ([], []))

    # 3) throughput definitions
    all_nodes = ordered_nodes(cfg.nodes)
    for z in range(lo, hi + 1):
        for u in all_nodes:
            fs = f"fs{z}[{ids[u]}]"
            outm, inm = memberships(u, z)
            if profile == "literal":
                members = [k for k in by_cell[z] if u in k.nodes]
                terms = [(ONE, fs)] + [(-ONE, f"fk{k.index}[{ids[u]}]") for k in members]
                sysm.add_named_eq(terms, ZERO, f"s{z}_def_{ids[u]}")
                continue
            out_idx = [k.index for k in outm]
            in_idx = [k.index for k in inm]
            emitted = False
            if u is not SINK:
                terms = [(ONE, fs)] + [(-ONE, f"fk{i}[{ids[u]}]") for i in out_idx]
                sysm.add_named_eq(terms, ZERO, f"s{z}_out_{ids[u]}")
                emitted = True
            if u is not SOURCE and (u is SINK or in_idx != out_idx):
                terms = [(ONE, fs)] + [(-ONE, f"fk{i}[{ids[u]}]") for i in in_idx]
                sysm.add_named_eq(terms, ZERO, f"s{z}_in_{ids[u]}")
                emitted = True
            if not emitted:  # unreachable, kept for safety
                sysm.add_named_eq([(ONE, fs)], ZERO, f"s{z}_zero_{ids[u]}")

    # 4) global flow conservation
    fg = lambda u: f"fg[{ids[u]}]"
    hg = lambda u, v: f"hg[{ids[u]}>{ids[v]}]"
    in_edges_g: dict = {u: [] for u in cfg.nodes}
    for u, v in cfg.edges():
        in_edges_g[v].append(u)
    for v in all_nodes:
        if v is SOURCE:
            continue
        terms = [(ONE, fg(v))] + [(-ONE, hg(u, v)) for u in in_edges_g[v]]
        sysm.add_named_eq(terms, ZERO, f"g_in_{ids[v]}")
    for u in all_nodes:
        if u is SINK:
            continue
        terms = [(ONE, fg(u))] + [(-ONE, hg(u, v)) for v in cfg.succs.get(u, ())]
        sysm.add_named_eq(terms, ZERO, f"g_out_{ids[u]}")

    # 5) coupling: member nodes carry their global flow per cell
    for z in range(lo, hi + 1):
        for u in all_nodes:
            outm, inm = memberships(u, z)
            if outm or inm:
                sysm.add_named_eq(
                    [(ONE, f"fs{z}[{ids[u]}]"), (-ONE, fg(u))], ZERO, f"s{z}_couple_{ids[u]}"
                )

    # 6) one unit of flow end to end
    sysm.add_named_eq([(ONE, fg(SOURCE))], ONE, "g_source_unit")
    sysm.add_named_eq([(ONE, fg(SINK))], ONE, "g_sink_unit")

    # 7) is vacuous: the per-cell flow variable it would pin to zero is
    # only declared on link-graph nodes, and such nodes always have a
    # nonempty cell membership.

    # 8) dangling link-graph nodes carry no per-cell flow
    for lg in link_graphs:
        z = lg.cell
        outs = {a for a, _ in lg.edges}
        ins = {b for _, b in lg.edges}
        for u in lg.nodes:
            if u is SOURCE or u is SINK:
                continue
            if u not in outs or u not in ins:
                sysm.add_named_eq([(ONE, f"fc{z}[{ids[u]}]")], ZERO, f"c{z}_dangle_{ids[u]}")

    return sysm


def structural_variable_count(
    cfg: Cfg, commodities: list[Commodity], link_graphs: list[CellLinkGraph], window: tuple[int, int]
) -> int:
    """Independent size cross-check for the assembled system."""
    lo, hi = window
    n_nodes = len(cfg.nodes)
    n_edges = cfg.edge_count()
    total = n_nodes + n_edges  # fg + hg
    total += n_nodes * (hi - lo + 1)  # fs
    for k in commodities:
        if k.usable():
            total += len(k.nodes) + k.edge_count()
    for lg in link_graphs:
        total += len(lg.nodes) + len(lg.edges)
    return total


def path_certificate(
    system: LinearSystem,
    cfg: Cfg,
    commodities: list[Commodity],
    link_graphs: list[CellLinkGraph],
    window: tuple[int, int],
    path: tuple,
) -> dict[str, object]:
    """Unit-flow certificate along one consistent source-to-sink path.

    path: full node path (SOURCE, step..., SINK).  Sets global flow 1
    on the path, routes each cell's consecutive def-use links along the
    corresponding path segments, and zeroes everything else.  For a
    tape-consistent path this satisfies the whole system; tests and the
    difftest harness rely on that as the constructive direction.
    """
    ids = node_ids(cfg)
    asg = {name: ZERO for name in system.names}

    def put(name, value):
        if name in asg:
            asg[name] = value
        elif value != ZERO:
            raise KeyError(f"certificate writes undeclared variable {name}")

    pos = {u: i for i, u in enumerate(path)}
    for u in path:
        put(f"fg[{ids[u]}]", ONE)
    for u, v in zip(path, path[1:]):
        put(f"hg[{ids[u]}>{ids[v]}]", ONE)

    comm_at = {(k.source, k.target, k.cell): k for k in commodities if k.usable()}
    lo, hi = window
    for z in range(lo, hi + 1):
        touchers = [u for u in path if isinstance(u, Step) and u.cell == z]
        chain = [SOURCE] + touchers + [SINK]
        for a, b in zip(chain, chain[1:]):
            k = comm_at.get((a, b, z))
            if k is None:
                raise KeyError(f"no commodity for link ({a}, {b}) at cell {z}")
            put(f"hc{z}[{ids[a]}>{ids[b]}]", ONE)
            for u in path[pos[a] : pos[b] + 1]:
                put(f"fk{k.index}[{ids[u]}]", ONE)
            for u, v in zip(path[pos[a] : pos[b]], path[pos[a] + 1 : pos[b] + 1]):
                put(f"hk{k.index}[{ids[u]}>{ids[v]}]", ONE)
        for u in chain:
            put(f"fc{z}[{ids[u]}]", ONE)
        for u in path:
            put(f"fs{z}[{ids[u]}]", ONE)
    return asg
