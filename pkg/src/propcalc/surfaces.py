"""Ribbon graphs and oriented arc surfaces of canonical forms.

Compactifying the open legs of a canonical graph adds one vertex per
external port; gluing an interval to each of those makes the boundary
circles.  Cyclic orders: internal vertices extend their slot order
(coproduct: in, out1, out2; product: in1, in2, out), boundary vertices
put the two interval endpoints first.  Attaching a disk to every ribbon
loop gives a closed oriented surface; removing the disks glued to the
boundary circles leaves the arc surface, whose directed weighted 1-cells
recover the element.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction

from .errors import GraphError, InternalError
from .generators import to_edge_weights
from .surjections import WeightedSurjection, expand_graph


class RibbonGraph:
    """Half-edge fatgraph with directed weighted edges and boundary tags."""

    def __init__(self):
        self.rotation = {}   # vertex -> list of half ids, cyclic
        self.alpha = {}      # half -> opposite half
        self.at = {}         # half -> vertex
        self.edges = {}      # edge id -> dict(tail, head, weight, kind)
        self.tags = {}       # vertex -> ("in", i) | ("out", j) | None
        self._next_half = 0
        self._next_edge = 0

    def add_vertex(self, name, tag=None):
        self.rotation[name] = []
        self.tags[name] = tag
        return name

    def add_edge(self, u, v, weight=Fraction(0), kind="arc"):
        """Directed edge u -> v; halves are appended to the rotations."""
        h1, h2 = self._next_half, self._next_half + 1
        self._next_half += 2
        e = self._next_edge
        self._next_edge += 1
        self.alpha[h1] = h2
        self.alpha[h2] = h1
        self.at[h1] = u
        self.at[h2] = v
        self.rotation[u].append(h1)
        self.rotation[v].append(h2)
        self.edges[e] = {"tail": h1, "head": h2, "weight": weight, "kind": kind}
        return e

    def edge_of_half(self, h):
        for e, data in self.edges.items():
            if h in (data["tail"], data["head"]):
                return e
        raise InternalError(f"orphan half {h}")

    def sigma(self, h):
        rot = self.rotation[self.at[h]]
        return rot[(rot.index(h) + 1) % len(rot)]

    def copy(self):
        out = RibbonGraph()
        out.rotation = {v: list(r) for v, r in self.rotation.items()}
        out.alpha = dict(self.alpha)
        out.at = dict(self.at)
        out.edges = {e: dict(d) for e, d in self.edges.items()}
        out.tags = dict(self.tags)
        out._next_half = self._next_half
        out._next_edge = self._next_edge
        return out

    def check(self):
        for v, rot in self.rotation.items():
            for h in rot:
                if self.at[h] != v:
                    raise InternalError("rotation and at disagree")
        for h, h2 in self.alpha.items():
            if self.alpha[h2] != h:
                raise InternalError("alpha is not an involution")


def ribbon_loops(rg: RibbonGraph):
    """Orbits of h -> sigma(alpha(h)); each directed edge side lies in one.

    This is the footnote's traversal: arriving at a vertex, leave along
    the edge that follows the arrival in its cyclic order.
    """
    seen = set()
    loops = []
    for h0 in sorted(rg.alpha):
        if h0 in seen:
            continue
        loop = []
        h = h0
        while True:
            loop.append(h)
            seen.add(h)
            h = rg.sigma(rg.alpha[h])
            if h == h0:
                break
        loops.append(loop)
    return loops


def connected_components(rg: RibbonGraph):
    parent = {v: v for v in rg.rotation}

    def find(v):
        while parent[v] != v:
            parent[v] = parent[parent[v]]
            v = parent[v]
        return v

    for data in rg.edges.values():
        a, b = find(rg.at[data["tail"]]), find(rg.at[data["head"]])
        if a != b:
            parent[a] = b
    groups = {}
    for v in rg.rotation:
        groups.setdefault(find(v), set()).add(v)
    return list(groups.values())


# ---------------------------------------------------------------------------
# construction

def to_ribbon(x: WeightedSurjection) -> RibbonGraph:
    """Ribbon graph of the canonical graph, before collapsing.

    Boundary circles are loops at the n+m new vertices, placed first in
    each rotation; all other rotations extend the slot order.
    """
    if x.m < 1:
        raise GraphError("the surface realization needs at least one output")
    g = expand_graph(x)
    weights = to_edge_weights(g).weights
    rg = RibbonGraph()
    for i in range(x.n):
        rg.add_vertex(("in", i), tag=("in", i))
    for j in range(x.m):
        rg.add_vertex(("out", j), tag=("out", j))
    for v in range(len(g.vertices)):
        rg.add_vertex(("v", v))
    # boundary circles first in the rotations
    for i in range(x.n):
        rg.add_edge(("in", i), ("in", i), kind="circle")
    for j in range(x.m):
        rg.add_edge(("out", j), ("out", j), kind="circle")

    def node(ep):
        if ep[0] == "in":
            return ("in", ep[1])
        if ep[0] == "out":
            return ("out", ep[1])
        return ("v", ep[1])

    # graph vertices list their halves in slot order: inputs then outputs,
    # which matches (in, out1, out2) for the coproduct and (in1, in2, out)
    # for the product; edges are inserted in a traversal that realizes it
    order = {}
    for v, vert in enumerate(g.vertices):
        order[("v", v)] = ([("vi", v, k) for k in range(vert.arity[0])]
                           + [("vo", v, k) for k in range(vert.arity[1])])
    slot_half = {}
    for src, dst in sorted(g.edges):
        e = rg.add_edge(node(src), node(dst), weight=weights[(src, dst)],
                        kind="strand")
        slot_half[src] = rg.edges[e]["tail"]
        slot_half[dst] = rg.edges[e]["head"]
    # rebuild internal rotations in slot order
    for v, slots in order.items():
        rg.rotation[v] = [slot_half[s] for s in slots]
    rg.check()
    return rg


def collapsible_edges(rg: RibbonGraph):
    """Edges with exactly one endpoint on a boundary circle and no sibling
    of the same direction at the interior endpoint."""
    out = []
    for e, data in sorted(rg.edges.items()):
        if data["kind"] == "circle":
            continue
        u, w = rg.at[data["tail"]], rg.at[data["head"]]
        boundary_u = rg.tags[u] is not None
        boundary_w = rg.tags[w] is not None
        if boundary_u == boundary_w:
            continue
        interior = w if boundary_u else u
        incoming = rg.at[data["head"]] == interior
        siblings = 0
        for e2, d2 in rg.edges.items():
            if e2 == e:
                continue
            if incoming and rg.at[d2["head"]] == interior:
                siblings += 1
            if not incoming and rg.at[d2["tail"]] == interior:
                siblings += 1
        if siblings == 0:
            out.append(e)
    return out


def contract_edge(rg: RibbonGraph, e) -> RibbonGraph:
    """Standard ribbon contraction: splice the interior rotation into the
    boundary vertex's rotation in place of the contracted half."""
    rg = rg.copy()
    data = rg.edges.pop(e)
    h_tail, h_head = data["tail"], data["head"]
    u, w = rg.at[h_tail], rg.at[h_head]
    if rg.tags[u] is not None:
        keep, gone, h_keep, h_gone = u, w, h_tail, h_head
    else:
        keep, gone, h_keep, h_gone = w, u, h_head, h_tail
    rot_gone = rg.rotation[gone]
    i = rot_gone.index(h_gone)
    spliced = rot_gone[i + 1:] + rot_gone[:i]
    rot_keep = rg.rotation[keep]
    j = rot_keep.index(h_keep)
    rg.rotation[keep] = rot_keep[:j] + spliced + rot_keep[j + 1:]
    for h in spliced:
        rg.at[h] = keep
    del rg.rotation[gone], rg.tags[gone]
    del rg.alpha[h_tail], rg.alpha[h_head]
    del rg.at[h_tail], rg.at[h_head]
    return rg


def collapse_edges(rg: RibbonGraph) -> RibbonGraph:
    """Contract collapsible edges until none remain; idempotent."""
    while True:
        todo = collapsible_edges(rg)
        if not todo:
            return rg
        rg = contract_edge(rg, todo[0])


# ---------------------------------------------------------------------------
# invariants

@dataclass(frozen=True)
class SurfaceSummary:
    vertices: int
    edges: int
    faces: int
    components: int
    euler: int           # V - E + F of the closed surface
    genus: int           # summed over components
    boundary: int        # one circle per external port
    chi_surface: int     # euler - boundary
    arcs: tuple          # (input, output, weight) per strand, position order

    def check(self):
        if self.chi_surface != 2 * self.components - 2 * self.genus - self.boundary:
            raise InternalError("Euler characteristic inconsistency")

    def to_json(self):
        doc = {
            "vertices": self.vertices, "edges": self.edges, "faces": self.faces,
            "components": self.components, "euler": self.euler,
            "genus": self.genus, "boundary": self.boundary,
            "chi_surface": self.chi_surface,
            "arcs": [[i, j, str(w)] for i, j, w in self.arcs],
        }
        return json.dumps(doc, indent=2)


def arc_edges_in_position_order(rg: RibbonGraph):
    """Arc edge ids of a collapsed graph, by canonical strand position
    (incoming circles in order, their rotations after the interval ends)."""
    in_vertices = sorted(((t[1], v) for v, t in rg.tags.items()
                          if t is not None and t[0] == "in"))
    out = []
    for _, v in in_vertices:
        for h in rg.rotation[v][2:]:
            out.append(rg.edge_of_half(h))
    return out


def _loops_per_component(rg, loops, components):
    comp_of_vertex = {}
    for idx, comp in enumerate(components):
        for v in comp:
            comp_of_vertex[v] = idx
    counts = [0] * len(components)
    for loop in loops:
        counts[comp_of_vertex[rg.at[loop[0]]]] += 1
    return counts


def summarize_ribbon(rg: RibbonGraph, boundary: int) -> SurfaceSummary:
    loops = ribbon_loops(rg)
    components = connected_components(rg)
    V = len(rg.rotation)
    E = len(rg.edges)
    F = len(loops)
    genus = 0
    loop_counts = _loops_per_component(rg, loops, components)
    for idx, comp in enumerate(components):
        v_c = len(comp)
        e_c = sum(1 for d in rg.edges.values() if rg.at[d["tail"]] in comp)
        chi_c = v_c - e_c + loop_counts[idx]
        if chi_c % 2 or chi_c > 2:
            raise InternalError(f"closed component with chi = {chi_c}")
        genus += (2 - chi_c) // 2
    arcs = []
    for e in arc_edges_in_position_order(rg):
        data = rg.edges[e]
        tin = rg.tags[rg.at[data["tail"]]]
        tout = rg.tags[rg.at[data["head"]]]
        if tin is None or tout is None or tin[0] != "in" or tout[0] != "out":
            raise InternalError("strand not between boundary circles")
        arcs.append((tin[1] + 1, tout[1] + 1, data["weight"]))
    summary = SurfaceSummary(
        vertices=V, edges=E, faces=F, components=len(components),
        euler=V - E + F, genus=genus, boundary=boundary,
        chi_surface=V - E + F - boundary, arcs=tuple(arcs))
    summary.check()
    return summary


def surface_summary(x: WeightedSurjection) -> SurfaceSummary:
    """Invariants of the arc surface of a canonical form."""
    rg = collapse_edges(to_ribbon(x))
    # each boundary circle must bound its own disk face
    for v, tag in rg.tags.items():
        if tag is None:
            raise InternalError("uncollapsed interior vertex survived")
        rot = rg.rotation[v]
        h_b = rot[1]
        if rg.sigma(rg.alpha[h_b]) != h_b:
            raise InternalError("boundary circle does not bound a disk")
    return summarize_ribbon(rg, x.n + x.m)


def recover_surjection(rg: RibbonGraph, n, m) -> WeightedSurjection:
    """Read the element back off a collapsed ribbon graph's arcs.

    Zero-weight arcs and involutions exposed by removed arcs are folded
    away, so the result is always a canonical form.
    """
    from .surjections import _canonical_parts
    blocks = []
    weights = []
    for i in range(n):
        v = next(u for u, t in rg.tags.items() if t == ("in", i))
        rot = rg.rotation[v]
        strand_halves = rot[2:]  # interval endpoints sit first
        blk = []
        ws = []
        for h in strand_halves:
            e = rg.edge_of_half(h)
            data = rg.edges[e]
            other = rg.at[data["head"]]
            tag = rg.tags[other]
            blk.append(tag[1] + 1)
            ws.append(data["weight"])
        blocks.append(tuple(blk))
        weights.append(tuple(ws))
    blocks, weights = _canonical_parts(blocks, weights)
    return WeightedSurjection(n, m, blocks, weights)


def remove_arc(rg: RibbonGraph, e) -> RibbonGraph:
    """Delete one edge, keeping the rotation order of the rest."""
    rg = rg.copy()
    data = rg.edges.pop(e)
    for h in (data["tail"], data["head"]):
        rg.rotation[rg.at[h]].remove(h)
        del rg.alpha[h], rg.at[h]
    return rg


# ---------------------------------------------------------------------------
# exports

def ribbon_to_dot(rg: RibbonGraph, name="ribbon") -> str:
    lines = [f"graph {name} {{"]
    names = {v: f"v{idx}" for idx, v in enumerate(sorted(rg.rotation, key=str))}
    for v, ident in names.items():
        tag = rg.tags[v]
        label = f"{tag[0]}{tag[1] + 1}" if tag else "."
        rot = ",".join(str(h) for h in rg.rotation[v])
        lines.append(f'  {ident} [label="{label} ({rot})"];')
    for e, data in sorted(rg.edges.items()):
        u = names[rg.at[data["tail"]]]
        w = names[rg.at[data["head"]]]
        style = "dashed" if data["kind"] == "circle" else "solid"
        lines.append(f'  {u} -- {w} [style={style}, label="{data["weight"]}"];')
    lines.append("}")
    return "\n".join(lines)


def svg_sketch(x: WeightedSurjection) -> str:
    """A rough drawing: input circles on top, outputs below, weighted arcs."""
    rg = collapse_edges(to_ribbon(x))
    summary = summarize_ribbon(rg, x.n + x.m)
    width = 120 * max(x.n, x.m) + 60
    parts = [f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="300">']
    pos = {}
    for i in range(x.n):
        cx = 90 + 120 * i
        pos[("in", i)] = (cx, 60)
        parts.append(f'<circle cx="{cx}" cy="60" r="25" fill="none" stroke="black"/>')
        parts.append(f'<text x="{cx - 5}" y="25">{i + 1}</text>')
    for j in range(x.m):
        cx = 90 + 120 * j
        pos[("out", j)] = (cx, 240)
        parts.append(f'<circle cx="{cx}" cy="240" r="25" fill="none" stroke="black"/>')
        parts.append(f'<text x="{cx - 5}" y="285">{j + 1}</text>')
    seen = {}
    for i, j, w in summary.arcs:
        x1, y1 = pos[("in", i - 1)]
        x2, y2 = pos[("out", j - 1)]
        k = seen.get((i, j), 0)
        seen[(i, j)] = k + 1
        bend = 20 * k - 10
        parts.append(f'<path d="M {x1} {y1 + 25} Q {(x1 + x2) / 2 + bend} 150 '
                     f'{x2} {y2 - 25}" fill="none" stroke="blue"/>')
        parts.append(f'<text x="{(x1 + x2) / 2 + bend}" y="150" font-size="10">{w}</text>')
    parts.append("</svg>")
    return "\n".join(parts)
