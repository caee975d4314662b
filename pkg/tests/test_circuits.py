import json
import random

import pytest
from hypothesis import given, settings, strategies as st

from groupbench.amalgam import G_IDENTITY, embed
from groupbench.circuits import (
    Circuit,
    CoverVertex,
    FactorStep,
    InvalidStepError,
    NotClosedError,
    TOWARD_0,
    TOWARD_1,
    area,
    area_per_strip,
    area_per_strip_of,
    check_isoperimetric,
    circuit_from_record,
    circuit_to_record,
    class_sums_of,
    concat_circuits,
    crossing_balance_of,
    len_per_copy,
    parallel_class_sums,
    random_circuit,
    rebase_area,
    rectangle_circuit,
    rung_coefficient_of,
    step_from_token,
    step_token,
    strip_chain,
    strip_chain_of,
    walk,
)
from groupbench.hnn import normalize_str

BASE = CoverVertex(G_IDENTITY, 0)


def b_steps(n):
    sign = 1 if n >= 0 else -1
    return [FactorStep(("b", sign))] * abs(n)


def fig_vector_circuit():
    """Crossings +1, -3, +8, -4 on the base strip."""
    steps = b_steps(1) + [TOWARD_1] + b_steps(2) + [TOWARD_0] + b_steps(5) \
        + [TOWARD_1] + b_steps(-4) + [TOWARD_0] + b_steps(-4)
    return Circuit(BASE, tuple(steps))


def test_walk_backtrack():
    c = Circuit(BASE, (TOWARD_1, TOWARD_0))
    wk = walk(c, return_vertices=True)
    assert len(wk.vertices) == 3
    assert wk.vertices[0] == wk.vertices[2] == BASE
    assert [(r.sign, r.index) for r in wk.crossings] == [(1, 0), (-1, 0)]
    assert [r.position for r in wk.crossings] == [1, 2]


def test_walk_factor_only():
    c = Circuit(BASE, (FactorStep(("a", 1)), FactorStep(("a", -1))))
    wk = walk(c)
    assert wk.crossings == []
    assert list(wk.copy_lengths.values()) == [2]


def test_walk_rectangle():
    wk = walk(rectangle_circuit(3))
    assert [(r.sign, r.index) for r in wk.crossings] == [(1, 0), (-1, 3)]
    assert wk.crossings[0].strip == wk.crossings[1].strip


def test_walk_not_closed():
    with pytest.raises(NotClosedError):
        walk(Circuit(BASE, (FactorStep(("a", 1)),)))
    with pytest.raises(NotClosedError):
        walk(Circuit(BASE, (TOWARD_1,)))


def test_walk_invalid_cross():
    with pytest.raises(InvalidStepError):
        walk(Circuit(BASE, (TOWARD_0, TOWARD_1)))
    side1 = CoverVertex(G_IDENTITY, 1)
    with pytest.raises(InvalidStepError):
        walk(Circuit(side1, (TOWARD_1, TOWARD_0)))


def test_walk_rejects_unknown_letter():
    with pytest.raises(InvalidStepError):
        walk(Circuit(BASE, (FactorStep(("x", 1)),)))


def test_empty_circuit_is_trivially_closed():
    wk = walk(Circuit(BASE, ()))
    assert wk.length == 0 and wk.crossings == []


def test_area_fig_vector():
    c = fig_vector_circuit()
    per = area_per_strip(c)
    assert list(per.values()) == [2]
    assert area(c) == 2


def test_area_rectangle_and_backtrack():
    assert area(rectangle_circuit(3)) == -3
    assert area(Circuit(BASE, (TOWARD_1, TOWARD_0))) == 0


def test_area_of_circuit_then_reverse_is_zero():
    c = rectangle_circuit(4)
    rev = Circuit(BASE, tuple(reversed([
        FactorStep((s.letter[0], -s.letter[1])) if isinstance(s, FactorStep)
        else (TOWARD_0 if s.direction == 1 else TOWARD_1)
        for s in c.steps
    ])))
    assert area(concat_circuits(c, rev)) == 0


def test_len_per_copy_rectangle():
    lpc = len_per_copy(rectangle_circuit(3))
    assert sorted((v.side, n) for v, n in lpc.items()) == [(0, 3), (1, 3)]
    assert sum(lpc.values()) <= rectangle_circuit(3).length


def test_rebase_examples():
    r3 = rectangle_circuit(3)
    strip = walk(r3).crossings[0].strip
    assert rebase_area(r3, {}) == -3
    assert rebase_area(r3, {strip: 100}) == -3


@given(st.integers(0, 2**32), st.integers(2, 120))
@settings(max_examples=40, deadline=None)
def test_rebase_invariance_random(seed, length):
    c = random_circuit(seed, length)
    wk = walk(c)
    rng = random.Random(seed)
    offsets = {s: rng.randrange(-100, 100) for s in area_per_strip_of(wk)}
    assert rebase_area(c, offsets) == sum(area_per_strip_of(wk).values())
    for plus, minus in crossing_balance_of(wk).values():
        assert plus == minus


def test_parallel_class_sums_rectangle_equality():
    sums = parallel_class_sums(rectangle_circuit(3))
    assert all(e.ok for e in sums)
    assert len([e for e in sums if abs(e.total) == e.bound == 3]) == 2


def test_parallel_class_sums_no_factor_steps():
    c = Circuit(BASE, (TOWARD_1, TOWARD_0))
    for e in parallel_class_sums(c):
        assert e.total == 0 and e.bound == 0


def test_strip_chain_rectangle():
    r3 = rectangle_circuit(3)
    strip = walk(r3).crossings[0].strip
    ch = strip_chain(r3, strip)
    assert ch.coeffs == {0: -1, 1: -1, 2: -1}
    assert ch.total() == -3


def test_strip_chain_empty_when_not_crossed():
    c = Circuit(BASE, (FactorStep(("a", 1)), FactorStep(("a", -1))))
    from groupbench.amalgam import tree_edge

    strip, _ = tree_edge(G_IDENTITY)
    assert strip_chain(c, strip).coeffs == {}


def test_strip_chain_fig_vector():
    c = fig_vector_circuit()
    wk = walk(c)
    strip = wk.crossings[0].strip
    ch = strip_chain_of(wk, strip)
    assert ch.total() == 2
    for n in range(-1, 10):
        assert ch.boundary_coefficient(n) == rung_coefficient_of(wk, strip, n)


@given(st.integers(0, 2**32), st.integers(2, 150))
@settings(max_examples=40, deadline=None)
def test_random_circuit_properties(seed, length):
    c = random_circuit(seed, length)
    assert c == random_circuit(seed, length)
    wk = walk(c)
    assert abs(sum(area_per_strip_of(wk).values())) <= wk.length
    for entry in class_sums_of(wk):
        assert entry.ok
    for strip, total in area_per_strip_of(wk).items():
        assert strip_chain_of(wk, strip).total() == total


def test_random_circuit_rejects_short():
    with pytest.raises(ValueError):
        random_circuit(1, 0)


def test_isoperimetric_rectangle_family():
    for n in (1, 2, 5, 16):
        rep = check_isoperimetric(rectangle_circuit(n))
        assert rep.area == -n and rep.length == 2 * n + 2 and rep.ok


def test_area_additive_under_concatenation():
    c1 = random_circuit(7, 30)
    c2 = random_circuit(8, 30)
    assert area(concat_circuits(c1, c2)) == area(c1) + area(c2)


def test_concat_requires_same_basepoint():
    c1 = random_circuit(7, 10)
    other = Circuit(CoverVertex(G_IDENTITY, 1), ())
    with pytest.raises(Exception):
        concat_circuits(c1, other)


def test_step_tokens():
    for tok in ("a", "A", "b", "T", "+", "-"):
        assert step_token(step_from_token(tok)) == tok
    assert step_from_token("−") == TOWARD_0
    with pytest.raises(ValueError):
        step_from_token("++")


def test_circuit_record_round_trip():
    c = fig_vector_circuit()
    rec = circuit_to_record(c)
    assert circuit_from_record(json.loads(json.dumps(rec))) == c
    moved = Circuit(CoverVertex(embed(0, normalize_str("ta")), 1), (TOWARD_0, TOWARD_1))
    rec2 = circuit_to_record(moved)
    assert circuit_from_record(rec2) == moved


def test_walk_from_translated_start_matches_area():
    # area is invariant when the same steps run from a translated basepoint
    c = rectangle_circuit(5)
    h = embed(0, normalize_str("tA"))
    moved = Circuit(CoverVertex(h, 0), c.steps)
    assert area(moved) == area(c)
