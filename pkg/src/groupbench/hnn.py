"""Exact arithmetic in the HNN extension H = <a,b,t | tbt^-1 = b, tat^-1 = ba>.

Every element of H has a unique normal form t^p b^q w(a,b) where w is a
freely reduced word in a, b that does not begin with b or b^-1.  The group
is a mapping torus of the free group F2 = <a,b> under the automorphism
a -> ba, b -> b; pushing a letter t through a word costs one application
of :func:`groupbench.words.twist`.

The word problem is solved twice on purpose: once through normal-form
arithmetic (:func:`normalize`) and once through Britton pinch reduction
(:func:`britton_is_identity`).  The two share no decision logic, so each
serves as an oracle for the other.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, Iterable, List, Sequence, Tuple

from .words import EMPTY, Letter, Word, free_reduce, invert, twist, word_str

GENERATOR_SYMBOLS = ("a", "b", "t")

#: the six generator letters, in a fixed order used by BFS and fuzzing
GENERATOR_LETTERS: Tuple[Letter, ...] = (
    ("a", 1), ("a", -1), ("b", 1), ("b", -1), ("t", 1), ("t", -1),
)


class BallRadiusError(ValueError):
    """Raised when a Cayley-ball request exceeds the resource guard."""


@dataclass(frozen=True)
class HNormalForm:
    """Normal form t^p b^q w with w reduced and not starting with b or b^-1."""

    p: int
    q: int
    w: Word

    def __post_init__(self):
        if self.w and self.w[0][0] == "b":
            raise ValueError(f"w must not begin with b or b^-1: {word_str(self.w)}")
        # hashed heavily as a dict key during walks; compute once
        object.__setattr__(self, "_hash", hash((self.p, self.q, self.w)))

    def __hash__(self) -> int:
        return self._hash

    def __mul__(self, other: "HNormalForm") -> "HNormalForm":
        # t^p1 b^q1 w1 . t^p2 b^q2 w2 = t^(p1+p2) b^q1 twist(w1, p2) b^q2 w2
        parts = twist(self.w, other.p) + b_run(other.q) + other.w
        return _assemble(self.p + other.p, self.q, parts)

    def inverse(self) -> "HNormalForm":
        # (t^p b^q w)^-1 = t^-p twist(w^-1, -p) b^-q
        parts = twist(invert(self.w), -self.p) + b_run(-self.q)
        return _assemble(-self.p, 0, parts)

    def is_identity(self) -> bool:
        return self.p == 0 and self.q == 0 and not self.w

    def spelling(self) -> Word:
        """A word over {a,b,t} spelling the element, t^p b^q w verbatim."""
        return t_run(self.p) + b_run(self.q) + self.w

    def to_record(self) -> dict:
        return {"p": self.p, "q": self.q, "w": word_str(self.w)}

    def __str__(self) -> str:
        return word_str(self.spelling()) or "1"


IDENTITY = HNormalForm(0, 0, EMPTY)


def b_run(q: int) -> Word:
    sign = 1 if q >= 0 else -1
    return (("b", sign),) * abs(q)


def t_run(p: int) -> Word:
    sign = 1 if p >= 0 else -1
    return (("t", sign),) * abs(p)


def _assemble(p: int, q: int, letters: Sequence[Letter]) -> HNormalForm:
    """Normal form of t^p b^q u for an arbitrary word u over {a,b}."""
    w = free_reduce(letters)
    i = 0
    while i < len(w) and w[i][0] == "b":
        q += w[i][1]
        i += 1
    return HNormalForm(p, q, w[i:])


def normalize(letters: Iterable[Letter]) -> HNormalForm:
    """Normal form of an arbitrary word over {a,b,t} and inverses.

    Letters are consumed left to right by right multiplication: a and b
    letters extend the free part (b merging into the exponent q while the
    free part is empty), while a t letter shifts p and twists the free
    part through the stable letter.
    """
    p, q = 0, 0
    w: List[Letter] = []
    for sym, sign in letters:
        if sym == "t":
            p += sign
            if w:
                twisted = list(twist(tuple(w), sign))
                i = 0
                while i < len(twisted) and twisted[i][0] == "b":
                    q += twisted[i][1]
                    i += 1
                w = twisted[i:]
        elif sym == "b" and not w:
            q += sign
        elif sym in ("a", "b"):
            if w and w[-1][0] == sym and w[-1][1] == -sign:
                w.pop()
            else:
                w.append((sym, sign))
        else:
            raise ValueError(f"unknown generator {sym!r}")
    return HNormalForm(p, q, tuple(w))


def normalize_str(text: str) -> HNormalForm:
    from .words import parse_word

    return normalize(parse_word(text))


# --- Britton reduction -------------------------------------------------
#
# Deliberately self-contained: its own substitution and its own stack, so
# that the decision shares no code path with normalize().

def _britton_sub(segment: List[Letter], direction: int) -> List[Letter]:
    # direction +1 rewrites t^-1 u t, direction -1 rewrites t u t^-1
    out: List[Letter] = []
    for sym, sign in segment:
        if sym == "a":
            if sign == 1:
                pieces = (("b", -direction), ("a", 1))
            else:
                pieces = (("a", -1), ("b", direction))
        else:
            pieces = ((sym, sign),)
        for x in pieces:
            if out and out[-1][0] == x[0] and out[-1][1] == -x[1]:
                out.pop()
            else:
                out.append(x)
    return out


def britton_is_identity(letters: Iterable[Letter]) -> bool:
    """Decide triviality in H by Britton pinch reduction.

    Scans the word once, eliminating every pinch t^-1 u t -> u(b^-1 a) and
    t u t^-1 -> u(ba) as soon as its closing t-letter arrives.  The word
    is trivial iff the fully reduced result is empty; if any t survives,
    Britton's lemma rules the element nontrivial.
    """
    stack: List[Letter] = []
    # positions of surviving t-letters in the stack, innermost last
    t_positions: List[int] = []
    for x in letters:
        if x[0] == "t":
            if t_positions and stack[t_positions[-1]][1] == -x[1]:
                # pinch t^s u t^-s with s = -x[1]; rewrite direction x[1]
                pos = t_positions.pop()
                segment = stack[pos + 1 :]
                del stack[pos:]
                replaced = _britton_sub(segment, direction=x[1])
                for y in replaced:
                    _push_cancel(stack, t_positions, y)
            else:
                t_positions.append(len(stack))
                stack.append(x)
        else:
            _push_cancel(stack, t_positions, x)
    return not stack


def _push_cancel(stack: List[Letter], t_positions: List[int], x: Letter) -> None:
    if stack and stack[-1][0] == x[0] and stack[-1][1] == -x[1]:
        if x[0] == "t":
            t_positions.pop()
        stack.pop()
    else:
        if x[0] == "t":
            t_positions.append(len(stack))
        stack.append(x)


# --- retraction onto <b> and coset geometry ----------------------------

def pi(h: HNormalForm) -> int:
    """The b-exponent of the normal form; a 1-Lipschitz retraction H -> Z."""
    return h.q


def pi_u(u: HNormalForm, h: HNormalForm) -> int:
    """Retraction based at the coset u<b>: pi(u^-1 h)."""
    return pi(u.inverse() * h)


@dataclass(frozen=True)
class CosetRep:
    """Transversal decomposition h = rep . b^offset with rep a coset name.

    rep never ends in b or b^-1 and, when its free part is empty, has
    q = 0; rep is the identity exactly when h lies in <b>.
    """

    rep: HNormalForm
    offset: int


def coset_rep(h: HNormalForm) -> CosetRep:
    if not h.w:
        return CosetRep(HNormalForm(h.p, 0, EMPTY), h.q)
    m = 0
    i = len(h.w)
    while i > 0 and h.w[i - 1][0] == "b":
        m += h.w[i - 1][1]
        i -= 1
    return CosetRep(HNormalForm(h.p, h.q, h.w[:i]), m)


TRANSLATION = "translation"
CONSTANT = "constant"


@dataclass(frozen=True)
class CosetShape:
    """How the retraction behaves on the coset u<b>.

    ``translation`` means pi(u b^n) = c + n for all n, ``constant`` means
    pi(u b^n) = c for all n.
    """

    kind: str
    c: int

    def predict(self, n: int) -> int:
        return self.c + n if self.kind == TRANSLATION else self.c


def coset_shape(u: HNormalForm) -> CosetShape:
    if not u.w:
        return CosetShape(TRANSLATION, u.q)
    return CosetShape(CONSTANT, u.q)


def is_parallel(u: HNormalForm, v: HNormalForm) -> bool:
    """Whether the cosets u<b> and v<b> are parallel: u^-1 v in <t,b>."""
    return not (u.inverse() * v).w


def commutator_power(n: int) -> Tuple[Word, HNormalForm]:
    """The explicit commutator word [t^n, a] together with its normal form.

    For every n >= 1 the word evaluates to b^n, witnessing that all powers
    of b are single commutators.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    word = t_run(n) + (("a", 1),) + t_run(-n) + (("a", -1),)
    return word, normalize(word)


def cayley_ball(radius: int, max_radius: int = 8) -> Dict[HNormalForm, int]:
    """All elements within the given Cayley distance of the identity.

    BFS by right multiplication with the six generator letters.  Guarded
    because the ball grows exponentially; raise ``max_radius`` explicitly
    to go beyond the default.
    """
    if radius < 0:
        raise ValueError("radius must be >= 0")
    if radius > max_radius:
        raise BallRadiusError(
            f"radius {radius} exceeds guard {max_radius}; pass max_radius to override"
        )
    dist = {IDENTITY: 0}
    frontier = [IDENTITY]
    generators = [normalize([x]) for x in GENERATOR_LETTERS]
    for d in range(1, radius + 1):
        nxt = []
        for h in frontier:
            for g in generators:
                n = h * g
                if n not in dist:
                    dist[n] = d
                    nxt.append(n)
        frontier = nxt
    return dist
