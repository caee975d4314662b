"""Circuits in the 1-skeleton of the cover of the glued two-factor complex.

A vertex of the cover is a pair (g, side) with g in the amalgam; a step is
either a generator move inside the current side's copy or a rung crossing
between the two copies along the strip that contains the current element.
Circuits are closed walks; their signed strip area is bounded by their
length, which is the linear isoperimetric inequality this module verifies.

Positions are canonically based: the rung at g sits at position g.tail
inside the strip g<b>.  Rebasing every strip by arbitrary offsets leaves
the area of a closed circuit unchanged, which is checked explicitly.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Dict, List, Mapping, Optional, Tuple

from .amalgam import (
    G_IDENTITY,
    GElement,
    TreeEdgeId,
    TreeVertexId,
    _push as _amalgam_push,
    edge_attachment,
    edge_endpoint,
    embed,
    parse_sided_word,
    sided_word_str,
    spell,
)
from .hnn import GENERATOR_LETTERS, HNormalForm, coset_rep, is_parallel, normalize
from .words import Letter, word_str


class CircuitError(Exception):
    pass


class NotClosedError(CircuitError):
    pass


class InvalidStepError(CircuitError):
    pass


@dataclass(frozen=True)
class FactorStep:
    """One generator edge inside the current side's copy."""

    letter: Letter


@dataclass(frozen=True)
class CrossStep:
    """One rung of a strip; +1 goes from side 0 to side 1, -1 back."""

    direction: int


Step = object  # FactorStep | CrossStep

TOWARD_1 = CrossStep(1)
TOWARD_0 = CrossStep(-1)

_GEN_NF: Dict[Letter, HNormalForm] = {x: normalize([x]) for x in GENERATOR_LETTERS}


@dataclass(frozen=True)
class CoverVertex:
    g: GElement
    side: int


@dataclass(frozen=True)
class Circuit:
    start: CoverVertex
    steps: Tuple[Step, ...]

    @property
    def length(self) -> int:
        return len(self.steps)


@dataclass(frozen=True)
class CrossingRecord:
    strip: TreeEdgeId
    index: int
    sign: int
    position: int


@dataclass
class Walk:
    circuit: Circuit
    crossings: List[CrossingRecord]
    copy_lengths: Dict[TreeVertexId, int]
    vertices: Optional[List[CoverVertex]] = None

    @property
    def length(self) -> int:
        return self.circuit.length


class _Trie:
    """Interned syllable prefixes, so walker states are single integers."""

    __slots__ = ("parent", "syl", "index")

    def __init__(self):
        self.parent = [0]
        self.syl: List[Optional[Tuple[int, HNormalForm]]] = [None]
        self.index: Dict = {}

    def child(self, node: int, syllable) -> int:
        key = (node, syllable)
        nid = self.index.get(key)
        if nid is None:
            nid = len(self.parent)
            self.parent.append(node)
            self.syl.append(syllable)
            self.index[key] = nid
        return nid

    def sequence(self, node: int):
        out = []
        while node != 0:
            out.append(self.syl[node])
            node = self.parent[node]
        out.reverse()
        return tuple(out)


def _trie_push(trie: _Trie, node: int, tail: int, side: int, u: HNormalForm):
    if u.p == 0 and not u.w:
        return node, tail + u.q
    shifted = HNormalForm(u.p, u.q + tail, u.w)
    if node != 0 and trie.syl[node][0] == side:
        prev = trie.syl[node][1]
        node = trie.parent[node]
        merged = prev * shifted
    else:
        merged = shifted
    cr = coset_rep(merged)
    if not cr.rep.is_identity():
        node = trie.child(node, (side, cr.rep))
    return node, cr.offset


def walk(circuit: Circuit, return_vertices: bool = False) -> Walk:
    """Traverse the circuit, collecting crossings and per-copy step counts.

    Raises InvalidStepError when a crossing is attempted from the wrong
    side and NotClosedError when the walk does not return to its start.
    """
    trie = _Trie()
    node = 0
    for syl in circuit.start.g.syllables:
        node = trie.child(node, syl)
    tail = circuit.start.g.tail
    side = circuit.start.side
    if side not in (0, 1):
        raise InvalidStepError(f"start side must be 0 or 1, got {side!r}")
    start_state = (node, tail, side)

    raw_crossings: List[Tuple[int, int, int, int]] = []
    copy_counts: Dict[Tuple[int, int], int] = {}
    vertices: Optional[List[CoverVertex]] = None
    g = None
    if return_vertices:
        vertices = [circuit.start]
        g = circuit.start.g

    for pos, step in enumerate(circuit.steps, start=1):
        if isinstance(step, CrossStep):
            if step.direction == 1 and side == 0:
                raw_crossings.append((node, tail, 1, pos))
                side = 1
            elif step.direction == -1 and side == 1:
                raw_crossings.append((node, tail, -1, pos))
                side = 0
            else:
                raise InvalidStepError(
                    f"step {pos}: crossing direction {step.direction} invalid from side {side}"
                )
        elif isinstance(step, FactorStep):
            if step.letter not in _GEN_NF:
                raise InvalidStepError(f"step {pos}: unknown letter {step.letter!r}")
            vnode = (
                trie.parent[node]
                if node != 0 and trie.syl[node][0] == side
                else node
            )
            key = (side, vnode)
            copy_counts[key] = copy_counts.get(key, 0) + 1
            node, tail = _trie_push(trie, node, tail, side, _GEN_NF[step.letter])
            if return_vertices:
                g = g * embed(side, _GEN_NF[step.letter])
        else:
            raise InvalidStepError(f"step {pos}: not a step: {step!r}")
        if return_vertices:
            vertices.append(CoverVertex(g, side))

    if (node, tail, side) != start_state:
        end = GElement(trie.sequence(node), tail)
        raise NotClosedError(
            f"walk ends at ({sided_word_str(spell(end)) or '1'}, side {side}), not at start"
        )

    edge_ids: Dict[int, TreeEdgeId] = {}
    crossings = []
    for n, idx, sign, pos in raw_crossings:
        eid = edge_ids.get(n)
        if eid is None:
            eid = TreeEdgeId(trie.sequence(n))
            edge_ids[n] = eid
        crossings.append(CrossingRecord(eid, idx, sign, pos))
    copy_lengths: Dict[TreeVertexId, int] = {}
    for (s, vnode), count in copy_counts.items():
        copy_lengths[TreeVertexId(s, trie.sequence(vnode))] = count
    return Walk(circuit, crossings, copy_lengths, vertices)


# --- area functionals ----------------------------------------------------

def area_per_strip_of(wk: Walk) -> Dict[TreeEdgeId, int]:
    out: Dict[TreeEdgeId, int] = {}
    for rec in wk.crossings:
        out[rec.strip] = out.get(rec.strip, 0) + rec.sign * rec.index
    return out


def area_per_strip(circuit: Circuit) -> Dict[TreeEdgeId, int]:
    """Signed sum of crossed rung positions, per strip; absent strips are 0."""
    return area_per_strip_of(walk(circuit))


def area(circuit: Circuit) -> int:
    return sum(area_per_strip(circuit).values())


def len_per_copy(circuit: Circuit) -> Dict[TreeVertexId, int]:
    """Number of generator steps taken inside each copy of the factor cover."""
    return walk(circuit).copy_lengths


def rebase_area(circuit: Circuit, offsets: Mapping[TreeEdgeId, int]) -> int:
    """Area recomputed after shifting each strip's rung positions.

    Closed circuits cross every strip equally often in both directions, so
    the result always equals area(circuit).
    """
    wk = walk(circuit)
    return sum(
        rec.sign * (rec.index + offsets.get(rec.strip, 0)) for rec in wk.crossings
    )


def crossing_balance_of(wk: Walk) -> Dict[TreeEdgeId, Tuple[int, int]]:
    """Per strip, the number of positive and negative crossings."""
    out: Dict[TreeEdgeId, List[int]] = {}
    for rec in wk.crossings:
        pair = out.setdefault(rec.strip, [0, 0])
        pair[0 if rec.sign == 1 else 1] += 1
    return {k: (v[0], v[1]) for k, v in out.items()}


@dataclass(frozen=True)
class ParallelClassSum:
    """One parallelism class of strips attached to one copy.

    total is the summed area over the class; bound is the number of
    generator steps the circuit takes inside the copy.  The per-class
    inequality asserts |total| <= bound.
    """

    copy: TreeVertexId
    strips: frozenset
    total: int
    bound: int

    @property
    def ok(self) -> bool:
        return abs(self.total) <= self.bound


def class_sums_of(wk: Walk) -> List[ParallelClassSum]:
    areas = area_per_strip_of(wk)
    by_copy: Dict[TreeVertexId, List[TreeEdgeId]] = {}
    for strip in areas:
        for side in (0, 1):
            by_copy.setdefault(edge_endpoint(strip, side), []).append(strip)
    out: List[ParallelClassSum] = []
    for copy_v, strips in by_copy.items():
        classes: List[Tuple[HNormalForm, List[TreeEdgeId]]] = []
        for strip in strips:
            u = edge_attachment(strip, copy_v.side)
            for rep_u, members in classes:
                if is_parallel(rep_u, u):
                    members.append(strip)
                    break
            else:
                classes.append((u, [strip]))
        bound = wk.copy_lengths.get(copy_v, 0)
        for _, members in classes:
            total = sum(areas[s] for s in members)
            out.append(ParallelClassSum(copy_v, frozenset(members), total, bound))
    return out


def parallel_class_sums(circuit: Circuit) -> List[ParallelClassSum]:
    return class_sums_of(walk(circuit))


@dataclass(frozen=True)
class StripChain:
    """Coefficients of the square filling of a circuit's trace in one strip.

    coeffs maps a square position n to its multiplicity; the window runs
    between the smallest and largest crossed rung positions (interior
    zeros are kept, everything outside is zero).
    """

    strip: TreeEdgeId
    coeffs: Dict[int, int]

    def total(self) -> int:
        return sum(self.coeffs.values())

    def boundary_coefficient(self, n: int) -> int:
        """Coefficient of the rung at position n in the chain's boundary."""
        return self.coeffs.get(n - 1, 0) - self.coeffs.get(n, 0)


def strip_chain_of(wk: Walk, strip: TreeEdgeId) -> StripChain:
    plus = [rec.index for rec in wk.crossings if rec.strip == strip and rec.sign == 1]
    minus = [rec.index for rec in wk.crossings if rec.strip == strip and rec.sign == -1]
    if not plus and not minus:
        return StripChain(strip, {})
    lo = min(plus + minus)
    hi = max(plus + minus)
    coeffs = {}
    for n in range(lo, hi):
        coeffs[n] = sum(1 for f in plus if f >= n + 1) - sum(
            1 for f in minus if f >= n + 1
        )
    return StripChain(strip, coeffs)


def strip_chain(circuit: Circuit, strip: TreeEdgeId) -> StripChain:
    return strip_chain_of(walk(circuit), strip)


def rung_coefficient_of(wk: Walk, strip: TreeEdgeId, n: int) -> int:
    """Signed number of times the circuit crosses the rung at position n."""
    out = 0
    for rec in wk.crossings:
        if rec.strip == strip and rec.index == n:
            out += rec.sign
    return out


@dataclass(frozen=True)
class IsoperimetricReport:
    area: int
    length: int

    @property
    def ok(self) -> bool:
        return abs(self.area) <= self.length


def check_isoperimetric(circuit: Circuit) -> IsoperimetricReport:
    wk = walk(circuit)
    total = sum(area_per_strip_of(wk).values())
    return IsoperimetricReport(total, wk.length)


# --- generators of test circuits -----------------------------------------

def rectangle_circuit(n: int) -> Circuit:
    """Cross the base strip, shift n rungs on side 1, cross back, return.

    Crossings (+, 0) and (-, n); area -n; length 2n + 2.
    """
    steps: List[Step] = [TOWARD_1]
    steps.extend(FactorStep(("b", 1)) for _ in range(n))
    steps.append(TOWARD_0)
    steps.extend(FactorStep(("b", -1)) for _ in range(n))
    return Circuit(CoverVertex(G_IDENTITY, 0), tuple(steps))


def concat_circuits(c1: Circuit, c2: Circuit) -> Circuit:
    if c1.start != c2.start:
        raise CircuitError("circuits must share their basepoint")
    return Circuit(c1.start, c1.steps + c2.steps)


def random_circuit(seed: int, target_len: int) -> Circuit:
    """Seeded random closed walk of roughly target_len steps from the base.

    The random phase picks uniformly among the six generator letters and
    the crossing available on the current side; the walk is then closed by
    spelling out the inverse of the accumulated element, crossing whenever
    the spelling changes side.  Deterministic per seed.
    """
    if target_len < 2:
        raise ValueError("target_len must be >= 2")
    rng = random.Random(seed)
    side = 0
    sylls: List = []
    tail = 0
    steps: List[Step] = []
    for _ in range(target_len):
        c = rng.randrange(7)
        if c == 6:
            steps.append(TOWARD_1 if side == 0 else TOWARD_0)
            side = 1 - side
        else:
            x = GENERATOR_LETTERS[c]
            steps.append(FactorStep(x))
            tail = _amalgam_push(sylls, tail, side, _GEN_NF[x])
    g = GElement(tuple(sylls), tail)
    for sside, x in spell(g.inverse()):
        if sside != side:
            steps.append(TOWARD_1 if side == 0 else TOWARD_0)
            side = sside
        steps.append(FactorStep(x))
    if side != 0:
        steps.append(TOWARD_0)
    return Circuit(CoverVertex(G_IDENTITY, 0), tuple(steps))


# --- file format ----------------------------------------------------------

_CROSS_TOKENS = {"+": TOWARD_1, "-": TOWARD_0, "−": TOWARD_0}


def step_from_token(token: str) -> Step:
    if token in _CROSS_TOKENS:
        return _CROSS_TOKENS[token]
    if len(token) == 1 and token.isalpha():
        return FactorStep((token.lower(), 1 if token.islower() else -1))
    raise ValueError(f"bad step token {token!r}")


def step_token(step: Step) -> str:
    if isinstance(step, CrossStep):
        return "+" if step.direction == 1 else "-"
    return word_str([step.letter])


def circuit_to_record(circuit: Circuit) -> dict:
    return {
        "start": {
            "g": sided_word_str(spell(circuit.start.g)),
            "side": circuit.start.side,
        },
        "steps": [step_token(s) for s in circuit.steps],
    }


def circuit_from_record(record: dict) -> Circuit:
    from .amalgam import from_steps

    start = record.get("start", {})
    g = from_steps(parse_sided_word(start.get("g", "")))
    side = start.get("side", 0)
    steps = tuple(step_from_token(t) for t in record.get("steps", []))
    return Circuit(CoverVertex(g, side), steps)
