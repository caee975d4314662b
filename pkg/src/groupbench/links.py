"""Vertex links of one-vertex piecewise-Euclidean triangle complexes.

All angles are exact non-negative integers in units of pi/12, so a corner
of a regular Euclidean triangle weighs 4 and the nonpositive-curvature
girth bound is 24.  A complex is described by triangles whose boundaries
are cyclic words in loop labels; each corner contributes one weighted edge
to the link of the unique vertex, joining the direction at which the
previous boundary letter arrives to the direction at which the next one
leaves.

The certified datasets are the four-triangle complex presenting
H = <a,b,t,x,y | by = t, ax = y, yb = t, xa = t> and its gluing with a
cylinder seam path from b_out to b_in in the link.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple

#: the CAT(0) link condition: no injective loop shorter than 2*pi
GIRTH_BOUND = 24
REGULAR_CORNER = 4
STRAIGHT = 12


class LinkDataError(ValueError):
    pass


@dataclass(frozen=True)
class TriangleSpec:
    """A triangular 2-cell: boundary letters with orientations and corners.

    Corner i sits between boundary entries i and i+1 (cyclically) and is
    measured in units of pi/12; a Euclidean triangle's corners sum to 12.
    """

    boundary: Tuple[Tuple[str, int], ...]
    corners: Tuple[int, int, int] = (REGULAR_CORNER,) * 3

    def __post_init__(self):
        if len(self.boundary) != 3 or len(self.corners) != 3:
            raise LinkDataError("a triangle has three sides and three corners")
        for label, orient in self.boundary:
            if orient not in (1, -1):
                raise LinkDataError(f"orientation must be +-1, got {orient!r}")
        if any(c < 1 for c in self.corners):
            raise LinkDataError("corner angles must be positive")
        if sum(self.corners) != STRAIGHT:
            raise LinkDataError(
                f"corners {self.corners} do not sum to pi; not Euclidean"
            )


@dataclass(frozen=True)
class LinkGraph:
    vertices: Tuple[str, ...]
    edges: Tuple[Tuple[str, str, int], ...]

    def __post_init__(self):
        known = set(self.vertices)
        for u, v, w in self.edges:
            if u not in known or v not in known:
                raise LinkDataError(f"edge ({u},{v}) has an undeclared endpoint")
            if w <= 0:
                raise LinkDataError(f"edge ({u},{v}) has nonpositive weight {w}")


def _arrive(label: str, orient: int) -> str:
    return f"{label}_in" if orient == 1 else f"{label}_out"


def _depart(label: str, orient: int) -> str:
    return f"{label}_out" if orient == 1 else f"{label}_in"


def build_link(triangles: Sequence[TriangleSpec], labels: Sequence[str]) -> LinkGraph:
    """Link of the base vertex, with one in- and one out-direction per label.

    Every 1-cell is a loop at the unique vertex, so the link vertices are
    exactly the two edge-ends of each declared label; every triangle
    corner becomes one weighted link edge.
    """
    declared = list(dict.fromkeys(labels))
    vertices = tuple(
        f"{label}_{suffix}" for label in declared for suffix in ("out", "in")
    )
    edges: List[Tuple[str, str, int]] = []
    for t in triangles:
        for label, _ in t.boundary:
            if label not in declared:
                raise LinkDataError(f"triangle uses undeclared label {label!r}")
        for i in range(3):
            lab1, or1 = t.boundary[i]
            lab2, or2 = t.boundary[(i + 1) % 3]
            edges.append((_arrive(lab1, or1), _depart(lab2, or2), t.corners[i]))
    return LinkGraph(vertices, tuple(edges))


def add_path(
    link: LinkGraph,
    start: str,
    end: str,
    total: int,
    segments: int,
    name: str = "seam",
) -> LinkGraph:
    """Append a simple path of fresh interior vertices between two directions."""
    if start not in link.vertices or end not in link.vertices:
        raise LinkDataError(f"path endpoints {start!r}, {end!r} must exist")
    if segments < 1:
        raise LinkDataError("segments must be >= 1")
    if total % segments != 0 or total // segments < 1:
        raise LinkDataError(
            f"total {total} does not split into {segments} positive equal segments"
        )
    step = total // segments
    fresh = tuple(f"{name}{i}" for i in range(segments - 1))
    for v in fresh:
        if v in link.vertices:
            raise LinkDataError(f"interior vertex name {v!r} already taken")
    chain = (start,) + fresh + (end,)
    new_edges = tuple(
        (chain[i], chain[i + 1], step) for i in range(segments)
    )
    return LinkGraph(link.vertices + fresh, link.edges + new_edges)


# --- exact girth ----------------------------------------------------------

def _adjacency(link: LinkGraph):
    adj: Dict[str, List[Tuple[str, int, int]]] = {v: [] for v in link.vertices}
    for eid, (u, v, w) in enumerate(link.edges):
        adj[u].append((v, w, eid))
        adj[v].append((u, w, eid))
    return adj


def _dijkstra(adj, source: str, target: str, skip_eid: int):
    dist = {source: 0}
    prev: Dict[str, str] = {}
    heap = [(0, source)]
    while heap:
        d, u = heapq.heappop(heap)
        if u == target:
            break
        if d > dist[u]:
            continue
        for v, w, eid in adj[u]:
            if eid == skip_eid:
                continue
            nd = d + w
            if v not in dist or nd < dist[v]:
                dist[v] = nd
                prev[v] = u
                heapq.heappush(heap, (nd, v))
    if target not in dist:
        return None, None
    path = [target]
    while path[-1] != source:
        path.append(prev[path[-1]])
    path.reverse()
    return dist[target], path


def link_distance(link: LinkGraph, u: str, v: str) -> Optional[int]:
    """Exact weighted distance between two link vertices, None if disconnected."""
    if u not in link.vertices or v not in link.vertices:
        raise LinkDataError(f"unknown vertices {u!r}, {v!r}")
    d, _ = _dijkstra(_adjacency(link), u, v, skip_eid=-1)
    return d


@dataclass(frozen=True)
class Cat0Report:
    """Outcome of the link condition: exact girth against the 2*pi bound."""

    girth_units: Optional[int]
    witness: Optional[Tuple[str, ...]]

    @property
    def ok(self) -> bool:
        return self.girth_units is None or self.girth_units >= GIRTH_BOUND

    def to_record(self) -> dict:
        return {
            "girth_units": self.girth_units,
            "ok": self.ok,
            "witness": list(self.witness) if self.witness is not None else None,
        }


def shortest_injective_loop(link: LinkGraph) -> Cat0Report:
    """Exact girth by per-edge deletion and shortest path between its ends.

    Self-loops are loops on their own; parallel edges pair up through the
    surviving copy.  The witness lists the loop's vertices in order.
    """
    adj = _adjacency(link)
    best: Optional[int] = None
    witness: Optional[Tuple[str, ...]] = None
    for eid, (u, v, w) in enumerate(link.edges):
        if u == v:
            if best is None or w < best:
                best, witness = w, (u,)
            continue
        d, path = _dijkstra(adj, u, v, skip_eid=eid)
        if d is None:
            continue
        if best is None or w + d < best:
            best, witness = w + d, tuple(path)
    return Cat0Report(best, witness)


# --- bundled datasets -------------------------------------------------------

Y_LABELS = ("a", "b", "t", "x", "y")

#: one triangle per defining relation of the five-generator presentation
Y_TRIANGLES = (
    TriangleSpec((("b", 1), ("y", 1), ("t", -1))),   # by = t
    TriangleSpec((("a", 1), ("x", 1), ("y", -1))),   # ax = y
    TriangleSpec((("y", 1), ("b", 1), ("t", -1))),   # yb = t
    TriangleSpec((("x", 1), ("a", 1), ("t", -1))),   # xa = t
)

#: seam path defaults for the glued model: total angle, number of segments
DEFAULT_SEAM = (6, 3)


def build_y_link() -> LinkGraph:
    link = build_link(Y_TRIANGLES, Y_LABELS)
    assert len(link.vertices) == 10 and len(link.edges) == 12
    assert all(w == REGULAR_CORNER for _, _, w in link.edges)
    return link


def build_glued_link(seam_total: int = DEFAULT_SEAM[0], seam_segments: int = DEFAULT_SEAM[1]) -> LinkGraph:
    return add_path(build_y_link(), "b_out", "b_in", seam_total, seam_segments)


def certify_models(
    seam_total: int = DEFAULT_SEAM[0], seam_segments: int = DEFAULT_SEAM[1]
) -> Tuple[Cat0Report, Cat0Report]:
    """Link-condition reports for the one-factor complex and the glued model."""
    y_report = shortest_injective_loop(build_y_link())
    glued_report = shortest_injective_loop(build_glued_link(seam_total, seam_segments))
    return y_report, glued_report


def subdivision_vertex_report(
    triangles: Sequence[TriangleSpec], cylinder_over: Optional[str] = None
) -> dict:
    """Angle-rule check for the vertices created by simplicial subdivision.

    Subdividing flat triangles leaves interior subdivision vertices with
    total angle exactly 2*pi, and gives an edge-interior vertex one arc of
    exactly pi per 2-cell passage over that edge (plus one for a glued
    cylinder); the condition is that every arc is at least pi.
    """
    euclidean = all(sum(t.corners) == STRAIGHT for t in triangles)
    regular = all(t.corners == (REGULAR_CORNER,) * 3 for t in triangles)
    passages: Dict[str, int] = {}
    for t in triangles:
        for label, _ in t.boundary:
            passages[label] = passages.get(label, 0) + 1
    if cylinder_over is not None:
        passages[cylinder_over] = passages.get(cylinder_over, 0) + 1
    edge_arcs = {label: [STRAIGHT] * n for label, n in sorted(passages.items())}
    interior = 2 * STRAIGHT if regular else None
    ok = (
        euclidean
        and (interior is None or interior == 2 * STRAIGHT)
        and all(arc >= STRAIGHT for arcs in edge_arcs.values() for arc in arcs)
    )
    return {
        "euclidean": euclidean,
        "regular": regular,
        "interior_vertex_angle_units": interior,
        "edge_arcs_units": edge_arcs,
        "ok": ok,
    }


# --- file format ------------------------------------------------------------

def complex_from_record(record: dict) -> LinkGraph:
    """Build a link from the JSON complex description.

    Shape: {"edges": [labels], "triangles": [{"boundary": [[label, +-1] x3],
    "corners": [3 ints]}], "paths": [{"from", "to", "total", "segments"}]}.
    """
    labels = record.get("edges", [])
    triangles = [
        TriangleSpec(
            tuple((lab, orient) for lab, orient in t["boundary"]),
            tuple(t.get("corners", (REGULAR_CORNER,) * 3)),
        )
        for t in record.get("triangles", [])
    ]
    link = build_link(triangles, labels)
    for i, p in enumerate(record.get("paths", [])):
        link = add_path(
            link, p["from"], p["to"], p["total"], p["segments"], name=f"seam{i}_"
        )
    return link
