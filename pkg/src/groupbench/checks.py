"""Seeded verification campaigns and the consolidated report they produce.

Each check replays one family of verified statements at a configurable
scale and counts violations; a passing run has zero everywhere.  All
randomness flows through a named stable generator (CPython's Mersenne
Twister) seeded per check from the base seed, so a fixed configuration
yields a byte-identical JSON report.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from itertools import product
from typing import Dict, List, Optional

from . import circuits as ci
from . import treecolor as tc
from .amalgam import from_steps
from .hnn import (
    GENERATOR_LETTERS,
    HNormalForm,
    britton_is_identity,
    coset_shape,
    is_parallel,
    normalize,
    pi,
)
from .links import (
    REGULAR_CORNER,
    Y_TRIANGLES,
    build_glued_link,
    build_y_link,
    certify_models,
    link_distance,
    shortest_injective_loop,
    subdivision_vertex_report,
)
from .words import parse_word, word_str


@dataclass
class CheckResult:
    name: str
    tag: str
    cases: int = 0
    violations: int = 0
    witnesses: List[dict] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.violations == 0

    def record_violation(self, witness, limit: int) -> None:
        self.violations += 1
        if len(self.witnesses) < limit:
            self.witnesses.append(witness() if callable(witness) else witness)

    def expect(self, condition: bool, witness, limit: int) -> None:
        """Count a case; on failure, record the witness (built lazily if callable)."""
        self.cases += 1
        if not condition:
            self.record_violation(witness, limit)

    def to_record(self) -> dict:
        return {
            "name": self.name,
            "tag": self.tag,
            "cases": self.cases,
            "violations": self.violations,
            "witnesses": self.witnesses,
        }


def _rng(seed: int, name: str) -> random.Random:
    return random.Random(f"{seed}:{name}")


def _random_word(rng: random.Random, max_len: int, min_len: int = 0):
    n = rng.randrange(min_len, max_len + 1)
    return tuple(GENERATOR_LETTERS[rng.randrange(6)] for _ in range(n))


#: words equal to the identity, used to plant equal pairs
RELATORS = (
    parse_word("tbTB"),
    parse_word("taTAB"),
    parse_word("btbTBB"),
    parse_word("BATAt"),
)


def _planted_equal(rng: random.Random, word):
    out = list(word)
    for _ in range(rng.randrange(1, 4)):
        r = RELATORS[rng.randrange(len(RELATORS))]
        i = rng.randrange(len(out) + 1)
        out[i:i] = r
    return tuple(out)


def check_word_problem(
    seed: int,
    exhaustive_len: int = 5,
    pairs: int = 2000,
    pair_max_len: int = 24,
    witness_limit: int = 5,
) -> CheckResult:
    """Normal-form equality against Britton reduction, two routes, one answer."""
    res = CheckResult("word-problem", "two-route word problem")
    for n in range(exhaustive_len + 1):
        for word in product(GENERATOR_LETTERS, repeat=n):
            res.expect(
                britton_is_identity(word) == normalize(word).is_identity(),
                lambda: {"word": word_str(word)},
                witness_limit,
            )
    rng = _rng(seed, "word-problem")
    for case in range(pairs):
        u = _random_word(rng, pair_max_len)
        if case % 2 == 0:
            v = _planted_equal(rng, u)
        else:
            v = _random_word(rng, pair_max_len)
        same_nf = normalize(u) == normalize(v)
        quotient = britton_is_identity(u + tuple((s, -g) for s, g in reversed(v)))
        res.expect(
            same_nf == quotient,
            lambda: {"pair": [word_str(u), word_str(v)]},
            witness_limit,
        )
    return res


def check_commutator_powers(n_max: int = 512, witness_limit: int = 5) -> CheckResult:
    """[t^n, a] normalizes to exactly the n-th power of b, for every n."""
    from .hnn import commutator_power

    res = CheckResult("commutator-powers", "powers of b are commutators")
    for n in range(1, n_max + 1):
        _, nf = commutator_power(n)
        res.expect(
            nf == HNormalForm(0, n, ()), lambda: {"n": n, "got": nf.to_record()}, witness_limit
        )
    return res


def check_retraction_lipschitz(
    seed: int,
    cases: int = 3000,
    u_cases: int = 50,
    probes_per_u: int = 10,
    max_len: int = 32,
    witness_limit: int = 5,
) -> CheckResult:
    """|pi(h) - pi(hs)| <= 1 over generator steps, and the same based at u."""
    res = CheckResult("retraction-lipschitz", "retraction onto <b> is 1-Lipschitz")
    rng = _rng(seed, "lipschitz")
    gens = [normalize([x]) for x in GENERATOR_LETTERS]
    for _ in range(cases):
        h = normalize(_random_word(rng, max_len))
        for g in gens:
            res.expect(
                abs(pi(h) - pi(h * g)) <= 1,
                lambda: {"h": h.to_record()},
                witness_limit,
            )
    for _ in range(u_cases):
        u = normalize(_random_word(rng, max_len))
        u_inv = u.inverse()
        for _ in range(probes_per_u):
            h = normalize(_random_word(rng, max_len))
            base = pi(u_inv * h)
            for g in gens:
                res.expect(
                    abs(base - pi(u_inv * (h * g))) <= 1,
                    lambda: {"u": u.to_record(), "h": h.to_record()},
                    witness_limit,
                )
    return res


def _is_translation(values: List[int]) -> bool:
    return all(b - a == 1 for a, b in zip(values, values[1:]))


def check_coset_shapes(
    seed: int,
    pairs: int = 400,
    n_span: int = 20,
    max_len: int = 24,
    witness_limit: int = 5,
) -> CheckResult:
    """Translation/constant dichotomy on cosets of <b>, and parallelism.

    For each sampled pair (u, v): the predicted shape matches pi(u b^n)
    for every n in the span; parallelism is symmetric, invariant under
    right b-shifts, and equivalent to the based retraction restricting to
    a translation on the other coset.
    """
    res = CheckResult("coset-dichotomy", "cosets of <b>: translation or constant")
    rng = _rng(seed, "cosets")
    span = range(-n_span, n_span + 1)
    for _ in range(pairs):
        u = normalize(_random_word(rng, max_len))
        v = normalize(_random_word(rng, max_len))
        shape = coset_shape(u)
        got = [pi(u * HNormalForm(0, n, ())) for n in span]
        res.expect(
            got == [shape.predict(n) for n in span],
            lambda: {"u": u.to_record(), "kind": shape.kind},
            witness_limit,
        )
        par = is_parallel(u, v)
        res.expect(
            par == is_parallel(v, u),
            lambda: {"u": u.to_record(), "v": v.to_record()},
            witness_limit,
        )
        shift = HNormalForm(0, rng.randrange(-5, 6), ())
        res.expect(
            par == is_parallel(u * shift, v) == is_parallel(u, v * shift),
            lambda: {"u": u.to_record(), "v": v.to_record()},
            witness_limit,
        )
        z = u.inverse() * v
        restriction = [pi(z * HNormalForm(0, n, ())) for n in span]
        res.expect(
            par == _is_translation(restriction),
            lambda: {"u": u.to_record(), "v": v.to_record()},
            witness_limit,
        )
    return res


def _fig_vector_circuit() -> ci.Circuit:
    """Circuit crossing the base strip at +1, -3, +8, -4."""
    steps: List[object] = [ci.FactorStep(("b", 1)), ci.TOWARD_1]
    steps += [ci.FactorStep(("b", 1))] * 2 + [ci.TOWARD_0]
    steps += [ci.FactorStep(("b", 1))] * 5 + [ci.TOWARD_1]
    steps += [ci.FactorStep(("b", -1))] * 4 + [ci.TOWARD_0]
    steps += [ci.FactorStep(("b", -1))] * 4
    return ci.Circuit(ci.CoverVertex(from_steps(()), 0), tuple(steps))


def check_area_definition(witness_limit: int = 5) -> CheckResult:
    """Frozen area vectors: the four-crossing example, rectangles, backtracks."""
    res = CheckResult("area-definition", "signed strip area of a circuit")
    c = _fig_vector_circuit()
    per = ci.area_per_strip(c)
    res.expect(list(per.values()) == [2], {"got": str(per)}, witness_limit)
    res.expect(ci.area(c) == 2, {"got": ci.area(c)}, witness_limit)
    r3 = ci.rectangle_circuit(3)
    res.expect(ci.area(r3) == -3, {"got": ci.area(r3)}, witness_limit)
    back = ci.Circuit(c.start, (ci.TOWARD_1, ci.TOWARD_0))
    res.expect(ci.area(back) == 0, {"got": ci.area(back)}, witness_limit)
    return res


def check_area_rebase(
    seed: int,
    circuits: int = 80,
    rebasings: int = 15,
    max_len: int = 80,
    witness_limit: int = 5,
) -> CheckResult:
    """Rebasing strips never changes area; crossings balance per strip."""
    res = CheckResult("area-rebase", "area is independent of strip basings")
    rng = _rng(seed, "rebase")
    for _ in range(circuits):
        c = ci.random_circuit(rng.randrange(2**63), rng.randrange(2, max_len + 1))
        wk = ci.walk(c)
        base = sum(ci.area_per_strip_of(wk).values())
        for plus, minus in ci.crossing_balance_of(wk).values():
            res.expect(
                plus == minus,
                lambda: {"circuit": ci.circuit_to_record(c)},
                witness_limit,
            )
        strips = list(ci.area_per_strip_of(wk))
        for _ in range(rebasings):
            offsets = {s: rng.randrange(-100, 101) for s in strips}
            rebased = sum(
                rec.sign * (rec.index + offsets.get(rec.strip, 0))
                for rec in wk.crossings
            )
            res.expect(
                rebased == base,
                lambda: {"circuit": ci.circuit_to_record(c)},
                witness_limit,
            )
        # exercise the public entry point on one sample
        offsets = {s: rng.randrange(-100, 101) for s in strips}
        res.expect(
            ci.rebase_area(c, offsets) == base,
            lambda: {"circuit": ci.circuit_to_record(c)},
            witness_limit,
        )
    return res


def run_area_suite(
    seed: int,
    circuits: int = 400,
    max_len: int = 120,
    rect_max: int = 32,
    witness_limit: int = 5,
) -> List[CheckResult]:
    """One circuit corpus feeding the class bound, the global bound, and chains."""
    iso = CheckResult("isoperimetric", "area bounded by length")
    cls = CheckResult("area-class-bounds", "per-copy parallel class bound")
    chn = CheckResult("strip-chains", "square chains match area and boundary")
    rng = _rng(seed, "area-suite")

    def inspect(c: ci.Circuit, expect_equality: Optional[int] = None) -> None:
        wk = ci.walk(c)
        total = sum(ci.area_per_strip_of(wk).values())
        iso.expect(
            abs(total) <= wk.length,
            lambda: {"circuit": ci.circuit_to_record(c), "area": total, "len": wk.length},
            witness_limit,
        )
        sums = ci.class_sums_of(wk)
        for entry in sums:
            cls.expect(
                entry.ok,
                lambda entry=entry: {
                    "circuit": ci.circuit_to_record(c),
                    "copy": str(entry.copy),
                    "total": entry.total,
                    "bound": entry.bound,
                },
                witness_limit,
            )
        if expect_equality is not None:
            cls.expect(
                any(
                    abs(e.total) == e.bound == expect_equality for e in sums
                ),
                lambda: {"circuit": ci.circuit_to_record(c), "n": expect_equality},
                witness_limit,
            )
        areas = ci.area_per_strip_of(wk)
        for strip, area_s in areas.items():
            chain = ci.strip_chain_of(wk, strip)
            chn.expect(
                chain.total() == area_s,
                lambda strip=strip: {"circuit": ci.circuit_to_record(c), "strip": str(strip)},
                witness_limit,
            )
            indices = [r.index for r in wk.crossings if r.strip == strip]
            lo, hi = min(indices) - 1, max(indices) + 1
            chn.expect(
                all(
                    chain.boundary_coefficient(n)
                    == ci.rung_coefficient_of(wk, strip, n)
                    for n in range(lo, hi + 1)
                ),
                lambda strip=strip: {"circuit": ci.circuit_to_record(c), "strip": str(strip)},
                witness_limit,
            )

    for _ in range(circuits):
        inspect(ci.random_circuit(rng.randrange(2**63), rng.randrange(2, max_len + 1)))
    for n in range(1, rect_max + 1):
        inspect(ci.rectangle_circuit(n), expect_equality=n)
    return [iso, cls, chn]


def check_tree_coloring(
    seed: int,
    samples: int = 2,
    radius: int = 3,
    max_branch: int = 6,
    witness_limit: int = 5,
) -> CheckResult:
    """Every explored edge has exactly one endpoint of its own color."""
    res = CheckResult("tree-coloring", "one same-colored endpoint per edge")
    rng = _rng(seed, "coloring")
    for i in range(samples):
        r = 2 + (i % max(1, radius - 1))
        tree = tc.sample_subtree(rng.randrange(2**63), r, max_branch)
        report = tc.color_subtree(tree)
        res.cases += len(tree.edges)
        for edge in report.violations:
            res.record_violation(
                {"sample": i, "radius": r, "edge": str(edge)}, witness_limit
            )
        res.expect(
            len(set(report.edge_colors.values())) >= 2 if tree.edges else True,
            {"sample": i, "radius": r, "detail": "fewer than two classes sampled"},
            witness_limit,
        )
    return res


def check_link_girths(witness_limit: int = 5) -> CheckResult:
    """Exact link census and girths for the bundled complexes.

    The bare complex certifies at girth exactly 2*pi.  The seam from b_out
    to b_in sits at distance pi inside the bare link, so a seam of total
    angle T yields girth min(2*pi, T + pi): the bundled pi/2 seam comes
    out at 3*pi/2 and fails the bound, while any seam of total at least
    pi certifies.  All values are pinned exactly.
    """
    res = CheckResult("link-girth", "link condition for the triangle models")
    y = build_y_link()
    res.expect(len(y.vertices) == 10, {"got": len(y.vertices)}, witness_limit)
    res.expect(len(y.edges) == 12, {"got": len(y.edges)}, witness_limit)
    res.expect(
        all(w == REGULAR_CORNER for _, _, w in y.edges),
        {"detail": "non-regular corner weight"},
        witness_limit,
    )
    y_report, seam_half_pi = certify_models()
    res.expect(y_report.girth_units == 24, {"got": y_report.girth_units}, witness_limit)
    res.expect(y_report.ok, {"detail": "bare model failed the bound"}, witness_limit)
    res.expect(
        link_distance(y, "b_out", "b_in") == 12,
        {"got": link_distance(y, "b_out", "b_in")},
        witness_limit,
    )
    res.expect(
        seam_half_pi.girth_units == 18 and not seam_half_pi.ok,
        {"got": seam_half_pi.to_record()},
        witness_limit,
    )
    for total, segments in ((12, 3), (16, 4), (24, 2)):
        rep = shortest_injective_loop(build_glued_link(total, segments))
        res.expect(
            rep.girth_units == 24 and rep.ok,
            {"seam_total": total, "got": rep.to_record()},
            witness_limit,
        )
    res.expect(
        subdivision_vertex_report(Y_TRIANGLES)["ok"],
        {"detail": "subdivision rule failed, bare"},
        witness_limit,
    )
    res.expect(
        subdivision_vertex_report(Y_TRIANGLES, cylinder_over="b")["ok"],
        {"detail": "subdivision rule failed, glued"},
        witness_limit,
    )
    return res


# --- consolidated runner ----------------------------------------------------

SCALES: Dict[str, dict] = {
    "quick": dict(
        exhaustive_len=5,
        wp_pairs=2000,
        wp_pair_len=24,
        commutator_max=128,
        lip_cases=2000,
        lip_u=40,
        lip_probes=8,
        coset_pairs=400,
        coset_n=20,
        rebase_circuits=60,
        rebase_count=15,
        rebase_len=80,
        iso_circuits=300,
        iso_len=120,
        rect_max=32,
        color_samples=2,
        color_radius=3,
    ),
    "full": dict(
        exhaustive_len=8,
        wp_pairs=100_000,
        wp_pair_len=64,
        commutator_max=512,
        lip_cases=100_000,
        lip_u=1000,
        lip_probes=20,
        coset_pairs=10_000,
        coset_n=50,
        rebase_circuits=1000,
        rebase_count=100,
        rebase_len=200,
        iso_circuits=10_000,
        iso_len=400,
        rect_max=128,
        color_samples=6,
        color_radius=4,
    ),
}


@dataclass(frozen=True)
class RunConfig:
    seed: int = 1
    scale: str = "quick"
    witness_limit: int = 5

    def sizes(self) -> dict:
        if self.scale not in SCALES:
            raise ValueError(f"unknown scale {self.scale!r}")
        return SCALES[self.scale]


@dataclass
class Report:
    config: RunConfig
    checks: List[CheckResult]

    @property
    def ok(self) -> bool:
        return all(c.ok for c in self.checks)

    def to_record(self) -> dict:
        return {
            "config": {
                "seed": self.config.seed,
                "scale": self.config.scale,
                "witness_limit": self.config.witness_limit,
            },
            "checks": [c.to_record() for c in self.checks],
            "ok": self.ok,
        }


def verify_all(config: RunConfig) -> Report:
    s = config.sizes()
    seed, wl = config.seed, config.witness_limit
    checks = [
        check_word_problem(
            seed, s["exhaustive_len"], s["wp_pairs"], s["wp_pair_len"], wl
        ),
        check_commutator_powers(s["commutator_max"], wl),
        check_retraction_lipschitz(
            seed, s["lip_cases"], s["lip_u"], s["lip_probes"], witness_limit=wl
        ),
        check_coset_shapes(seed, s["coset_pairs"], s["coset_n"], witness_limit=wl),
        check_area_definition(wl),
        check_area_rebase(
            seed, s["rebase_circuits"], s["rebase_count"], s["rebase_len"], wl
        ),
        *run_area_suite(seed, s["iso_circuits"], s["iso_len"], s["rect_max"], wl),
        check_tree_coloring(
            seed, s["color_samples"], s["color_radius"], witness_limit=wl
        ),
        check_link_girths(wl),
    ]
    return Report(config, checks)
