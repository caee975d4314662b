"""Edge and vertex colorings of finite pieces of the Bass-Serre tree.

Edges of the tree are strips; two edges sharing a vertex are declared
equivalent when their strips attach to that copy along parallel b-lines,
and edge colors are the classes of the equivalence generated by these
relations.  Vertices are then partially colored root-down: a vertex takes
its parent edge's color unless the parent vertex already carries it.  The
verified property is that every edge ends up with exactly one endpoint of
its own color.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Dict, List, Optional, Tuple

from .amalgam import TreeEdgeId, TreeVertexId, edge_attachment, edge_endpoint
from .hnn import (
    GENERATOR_LETTERS,
    HNormalForm,
    coset_rep,
    is_parallel,
    normalize,
)


class MalformedSubtreeError(ValueError):
    pass


@dataclass(frozen=True)
class SubtreeEdge:
    edge: TreeEdgeId
    parent: TreeVertexId
    child: TreeVertexId
    parent_attachment: HNormalForm
    child_attachment: HNormalForm


@dataclass
class SampledSubtree:
    root: TreeVertexId
    depths: Dict[TreeVertexId, int]
    edges: List[SubtreeEdge]


ROOT_VERTEX = TreeVertexId(0, ())


def validate_subtree(tree: SampledSubtree) -> None:
    if tree.root not in tree.depths or tree.depths[tree.root] != 0:
        raise MalformedSubtreeError("root missing or not at depth 0")
    parents: Dict[TreeVertexId, SubtreeEdge] = {}
    for se in tree.edges:
        if se.parent not in tree.depths or se.child not in tree.depths:
            raise MalformedSubtreeError(f"edge {se.edge} has an unknown endpoint")
        if tree.depths[se.child] != tree.depths[se.parent] + 1:
            raise MalformedSubtreeError(f"edge {se.edge} does not descend one level")
        if se.child in parents:
            raise MalformedSubtreeError(f"vertex {se.child} has two parent edges")
        parents[se.child] = se
        ends = {edge_endpoint(se.edge, 0), edge_endpoint(se.edge, 1)}
        if ends != {se.parent, se.child}:
            raise MalformedSubtreeError(f"edge {se.edge} does not join its endpoints")
        if se.parent_attachment != edge_attachment(se.edge, se.parent.side):
            raise MalformedSubtreeError(f"edge {se.edge}: bad parent attachment")
        if se.child_attachment != edge_attachment(se.edge, se.child.side):
            raise MalformedSubtreeError(f"edge {se.edge}: bad child attachment")
    for v, d in tree.depths.items():
        if v != tree.root and v not in parents:
            raise MalformedSubtreeError(f"vertex {v} is disconnected from the root")


@dataclass
class ColoringReport:
    edge_colors: Dict[TreeEdgeId, int]
    vertex_colors: Dict[TreeVertexId, Optional[int]]
    violations: List[TreeEdgeId]

    @property
    def ok(self) -> bool:
        return not self.violations


def color_subtree(tree: SampledSubtree) -> ColoringReport:
    """Color edges by generated parallelism classes, then vertices root-down."""
    validate_subtree(tree)

    # union-find over edge indices
    parent = list(range(len(tree.edges)))

    def find(i: int) -> int:
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    def union(i: int, j: int) -> None:
        ri, rj = find(i), find(j)
        if ri != rj:
            parent[rj] = ri

    incident: Dict[TreeVertexId, List[Tuple[int, HNormalForm]]] = {}
    for i, se in enumerate(tree.edges):
        incident.setdefault(se.parent, []).append((i, se.parent_attachment))
        incident.setdefault(se.child, []).append((i, se.child_attachment))
    for _, pairs in incident.items():
        groups: List[Tuple[HNormalForm, int]] = []
        for i, u in pairs:
            for rep_u, j in groups:
                if is_parallel(rep_u, u):
                    union(i, j)
                    break
            else:
                groups.append((u, i))

    edge_colors = {se.edge: find(i) for i, se in enumerate(tree.edges)}

    vertex_colors: Dict[TreeVertexId, Optional[int]] = {tree.root: None}
    for se in sorted(tree.edges, key=lambda s: tree.depths[s.child]):
        color = edge_colors[se.edge]
        vertex_colors[se.child] = None if vertex_colors[se.parent] == color else color

    violations = []
    for se in tree.edges:
        matches = sum(
            1
            for v in (se.parent, se.child)
            if vertex_colors[v] == edge_colors[se.edge]
        )
        if matches != 1:
            violations.append(se.edge)
    return ColoringReport(edge_colors, vertex_colors, violations)


# --- sampling -------------------------------------------------------------

def _rep_pool(rng: random.Random, size: int) -> List[HNormalForm]:
    """Nontrivial transversal representatives spanning >= 2 parallelism classes.

    The first entry has an empty free part (a power of t, parallel to the
    base b-line), the second a nonempty one; the rest are random.
    """
    k = rng.choice([1, 2, 3, -1, -2])
    pool: List[HNormalForm] = [HNormalForm(k, 0, ())]
    seen = set(pool)
    while len(pool) < size:
        word = [
            GENERATOR_LETTERS[rng.randrange(len(GENERATOR_LETTERS))]
            for _ in range(rng.randrange(1, 6))
        ]
        rep = coset_rep(normalize(word)).rep
        if rep.is_identity() or rep in seen:
            continue
        if len(pool) == 1 and not rep.w:
            continue
        seen.add(rep)
        pool.append(rep)
    return pool


def sample_subtree(seed: int, radius: int, max_branch: int = 6) -> SampledSubtree:
    """Grow a finite subtree from the base vertex, breadth first.

    Each explored vertex receives at most max_branch incident edges, drawn
    from a seeded pool of coset representatives that always spans at least
    two parallelism classes (the powers of t are parallel to the base
    b-line; anything with a in its free part is not).
    """
    if radius < 0:
        raise ValueError("radius must be >= 0")
    rng = random.Random(seed)
    depths: Dict[TreeVertexId, int] = {ROOT_VERTEX: 0}
    edges: List[SubtreeEdge] = []
    frontier: List[Tuple[TreeVertexId, Optional[TreeEdgeId]]] = [(ROOT_VERTEX, None)]
    for depth in range(radius):
        nxt: List[Tuple[TreeVertexId, Optional[TreeEdgeId]]] = []
        for vertex, via in frontier:
            candidates: List[TreeEdgeId] = []
            up = TreeEdgeId(vertex.prefix)
            if up != via:
                candidates.append(up)
            for rep in _rep_pool(rng, max_branch):
                if len(candidates) >= max_branch:
                    break
                candidates.append(
                    TreeEdgeId(vertex.prefix + ((vertex.side, rep),))
                )
            for edge in candidates:
                other = edge_endpoint(edge, 1 - vertex.side)
                if other in depths:
                    continue
                depths[other] = depth + 1
                edges.append(
                    SubtreeEdge(
                        edge,
                        vertex,
                        other,
                        edge_attachment(edge, vertex.side),
                        edge_attachment(edge, other.side),
                    )
                )
                nxt.append((other, edge))
        frontier = nxt
    return SampledSubtree(ROOT_VERTEX, depths, edges)
