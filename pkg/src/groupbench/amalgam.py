"""Normal forms in the amalgam G of two copies of H glued along <b>.

Elements are written as an alternating product of syllables r_1 ... r_k
followed by a power of the shared generator b.  Each syllable is a pair
(side, rep) with side 0 or 1 naming the factor copy and rep a nontrivial
transversal representative of a coset of <b> in H (rep never ends in b or
b^-1, and has q = 0 whenever its free part is empty).  This representation
is unique, so equality of group elements is structural equality.

The same data indexes the Bass-Serre tree of the splitting: a vertex is a
coset g.H_side and an edge is a coset g<b>; both are identified by
syllable-sequence prefixes.  The edge containing g carries the integer
g.tail, the canonical position of g's rung inside its strip.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, List, Sequence, Tuple

from .hnn import HNormalForm, IDENTITY, coset_rep, normalize
from .words import Letter, parse_word, word_str

Syllable = Tuple[int, HNormalForm]
SidedLetter = Tuple[int, Letter]


@dataclass(frozen=True)
class GElement:
    syllables: Tuple[Syllable, ...]
    tail: int

    def __mul__(self, other: "GElement") -> "GElement":
        sylls = list(self.syllables)
        tail = self.tail
        for side, rep in other.syllables:
            tail = _push(sylls, tail, side, rep)
        return GElement(tuple(sylls), tail + other.tail)

    def inverse(self) -> "GElement":
        sylls: List[Syllable] = []
        tail = -self.tail
        for side, rep in reversed(self.syllables):
            tail = _push(sylls, tail, side, rep.inverse())
        return GElement(tuple(sylls), tail)

    def is_identity(self) -> bool:
        return not self.syllables and self.tail == 0

    def to_record(self) -> dict:
        return {
            "syllables": [
                {"side": side, **rep.to_record()} for side, rep in self.syllables
            ],
            "tail": self.tail,
        }


G_IDENTITY = GElement((), 0)


def _push(sylls: List[Syllable], tail: int, side: int, u: HNormalForm) -> int:
    """Right-multiply the working normal form by u in the side factor.

    Returns the new tail exponent; mutates the syllable list in place.
    """
    if side not in (0, 1):
        raise ValueError(f"side must be 0 or 1, got {side!r}")
    if u.p == 0 and not u.w:
        return tail + u.q
    # b^tail commutes with t^p, so b^tail . u folds into u's b-exponent
    shifted = HNormalForm(u.p, u.q + tail, u.w)
    if sylls and sylls[-1][0] == side:
        prev = sylls.pop()[1]
        merged = prev * shifted
    else:
        merged = shifted
    cr = coset_rep(merged)
    if not cr.rep.is_identity():
        sylls.append((side, cr.rep))
    return cr.offset


def from_steps(steps: Iterable[SidedLetter]) -> GElement:
    """Evaluate a sided word, one (side, letter) pair at a time.

    The letter b lands in the shared subgroup, so its side is irrelevant.
    """
    sylls: List[Syllable] = []
    tail = 0
    for side, x in steps:
        tail = _push(sylls, tail, side, normalize([x]))
    return GElement(tuple(sylls), tail)


def embed(side: int, h: HNormalForm) -> GElement:
    """The image of an H element in the side-0 or side-1 factor of G."""
    sylls: List[Syllable] = []
    tail = _push(sylls, 0, side, h)
    return GElement(tuple(sylls), tail)


def spell(g: GElement) -> Tuple[SidedLetter, ...]:
    """Canonical sided spelling; from_steps(spell(g)) == g."""
    out: List[SidedLetter] = []
    for side, rep in g.syllables:
        for x in rep.spelling():
            out.append((side, x))
    tail_side = g.syllables[-1][0] if g.syllables else 0
    sign = 1 if g.tail >= 0 else -1
    out.extend((tail_side, ("b", sign)) for _ in range(abs(g.tail)))
    return tuple(out)


def validate(g: GElement) -> None:
    """Raise ValueError unless g satisfies all normal-form invariants."""
    for i, (side, rep) in enumerate(g.syllables):
        if side not in (0, 1):
            raise ValueError(f"syllable {i}: bad side {side!r}")
        if rep.is_identity():
            raise ValueError(f"syllable {i}: trivial representative")
        if rep.w and rep.w[-1][0] == "b":
            raise ValueError(f"syllable {i}: representative ends in b")
        if not rep.w and rep.q != 0:
            raise ValueError(f"syllable {i}: empty free part with q != 0")
        if i > 0 and g.syllables[i - 1][0] == side:
            raise ValueError(f"syllables {i-1},{i}: sides do not alternate")


# --- sided word text syntax --------------------------------------------

def parse_sided_word(text: str) -> Tuple[SidedLetter, ...]:
    """Parse tokens like ``0:taT 1:b`` into (side, letter) pairs."""
    out: List[SidedLetter] = []
    for token in text.split():
        head, sep, body = token.partition(":")
        if sep != ":" or head not in ("0", "1"):
            raise ValueError(f"bad sided token {token!r}; expected side:letters")
        side = int(head)
        out.extend((side, x) for x in parse_word(body))
    return tuple(out)


def sided_word_str(steps: Sequence[SidedLetter]) -> str:
    """Inverse of parse_sided_word, grouping runs on the same side."""
    tokens: List[str] = []
    run: List[Letter] = []
    run_side = None
    for side, x in steps:
        if side != run_side and run:
            tokens.append(f"{run_side}:{word_str(run)}")
            run = []
        run_side = side
        run.append(x)
    if run:
        tokens.append(f"{run_side}:{word_str(run)}")
    return " ".join(tokens)


# --- Bass-Serre tree coordinates ----------------------------------------

@dataclass(frozen=True)
class TreeVertexId:
    """The coset g.H_side: a copy of the cover of the one-factor complex."""

    side: int
    prefix: Tuple[Syllable, ...]

    def __str__(self) -> str:
        body = sided_word_str(spell(GElement(self.prefix, 0))) or "1"
        return f"V{self.side}[{body}]"


@dataclass(frozen=True)
class TreeEdgeId:
    """The coset g<b>: a strip of the cover, glued along two b-lines."""

    syllables: Tuple[Syllable, ...]

    def __str__(self) -> str:
        body = sided_word_str(spell(GElement(self.syllables, 0))) or "1"
        return f"E[{body}]"


def tree_vertex(g: GElement, side: int) -> TreeVertexId:
    if side not in (0, 1):
        raise ValueError(f"side must be 0 or 1, got {side!r}")
    sylls = g.syllables
    if sylls and sylls[-1][0] == side:
        sylls = sylls[:-1]
    return TreeVertexId(side, sylls)


def tree_edge(g: GElement) -> Tuple[TreeEdgeId, int]:
    return TreeEdgeId(g.syllables), g.tail


def edge_endpoint(edge: TreeEdgeId, side: int) -> TreeVertexId:
    sylls = edge.syllables
    if sylls and sylls[-1][0] == side:
        sylls = sylls[:-1]
    return TreeVertexId(side, sylls)


def edge_attachment(edge: TreeEdgeId, side: int) -> HNormalForm:
    """Coset name of the b-line along which the strip meets its side copy.

    Relative to the copy's own base, the strip's boundary b-line is the
    coset rep<b> of the edge's final syllable when that syllable lives on
    the requested side, and the base coset <b> otherwise.
    """
    sylls = edge.syllables
    if sylls and sylls[-1][0] == side:
        return sylls[-1][1]
    return IDENTITY
