import pytest
from hypothesis import given, settings, strategies as st

from groupbench.amalgam import (
    G_IDENTITY,
    GElement,
    edge_attachment,
    edge_endpoint,
    embed,
    from_steps,
    parse_sided_word,
    sided_word_str,
    spell,
    tree_edge,
    tree_vertex,
    validate,
)
from groupbench.hnn import (
    GENERATOR_LETTERS,
    HNormalForm,
    IDENTITY,
    britton_is_identity,
    normalize,
    normalize_str,
)
from groupbench.words import invert, parse_word

sided_letters = st.tuples(st.integers(0, 1), st.sampled_from(GENERATOR_LETTERS))
sided_words = st.lists(sided_letters, max_size=16).map(tuple)
g_elements = sided_words.map(from_steps)


def side0(text):
    return tuple((0, x) for x in parse_word(text))


def test_b_is_side_independent():
    assert from_steps([(0, ("b", 1))]) == from_steps([(1, ("b", 1))])
    assert from_steps([(0, ("b", 1))]) == GElement((), 1)


def test_alternating_example():
    g = from_steps([(0, ("a", 1)), (1, ("a", 1))])
    assert [side for side, _ in g.syllables] == [0, 1]
    assert g.tail == 0
    validate(g)


def test_factor_commutator_collapses_to_tail():
    assert from_steps(side0("taTA")) == GElement((), 1)


def test_seam_merge_example():
    # b^3 . a (side 1): the representative keeps the b-power in front
    g = GElement((), 3) * embed(1, normalize_str("a"))
    assert g == GElement(((1, HNormalForm(0, 3, (("a", 1),))),), 0)


@given(g_elements)
def test_validate_and_round_trip(g):
    validate(g)
    assert from_steps(spell(g)) == g


@given(g_elements, g_elements)
@settings(max_examples=80)
def test_group_laws(g, h):
    assert g * G_IDENTITY == g
    assert G_IDENTITY * g == g
    prod = g * h
    validate(prod)
    assert (g * g.inverse()).is_identity()
    assert prod * h.inverse() == g


@given(sided_words, sided_words)
@settings(max_examples=80)
def test_mul_matches_concatenation(u, v):
    assert from_steps(u) * from_steps(v) == from_steps(u + v)


@given(st.lists(st.sampled_from(GENERATOR_LETTERS), max_size=12).map(tuple),
       st.lists(st.sampled_from(GENERATOR_LETTERS), max_size=12).map(tuple))
def test_one_sided_equality_matches_britton(u, v):
    same = from_steps(tuple((0, x) for x in u)) == from_steps(tuple((0, x) for x in v))
    assert same == britton_is_identity(u + invert(v))


def test_embedding_is_injective_on_sides():
    a0 = embed(0, normalize_str("a"))
    a1 = embed(1, normalize_str("a"))
    assert a0 != a1
    assert a0.syllables[0][1] == a1.syllables[0][1]


def test_spell_examples():
    assert spell(G_IDENTITY) == ()
    assert spell(GElement((), 3)) == ((0, ("b", 1)),) * 3


def test_sided_text_round_trip():
    s = "0:taT 1:bA 0:t"
    assert sided_word_str(parse_sided_word(s)) == s
    with pytest.raises(ValueError):
        parse_sided_word("2:a")
    with pytest.raises(ValueError):
        parse_sided_word("a")


def test_tree_vertex_examples():
    assert tree_vertex(G_IDENTITY, 0) == tree_vertex(GElement((), 5), 0)
    a0 = embed(0, normalize_str("a"))
    assert tree_vertex(a0, 0).prefix == ()
    assert tree_vertex(a0, 1).prefix == a0.syllables
    assert tree_vertex(a0, 0) != tree_vertex(a0, 1)


def test_tree_edge_examples():
    root_edge, idx = tree_edge(G_IDENTITY)
    assert root_edge.syllables == () and idx == 0
    same_edge, idx7 = tree_edge(GElement((), 7))
    assert same_edge == root_edge and idx7 == 7
    t_edge, t_idx = tree_edge(embed(0, normalize_str("t")))
    assert t_edge != root_edge and t_idx == 0


@given(g_elements, st.integers(0, 1), sided_words)
@settings(max_examples=80)
def test_tree_vertex_constant_on_coset(g, side, hword)    :
    h = embed(side, normalize([x for _, x in hword]))
    assert tree_vertex(g, side) == tree_vertex(g * h, side)


@given(g_elements, st.integers(-10, 10))
def test_tree_edge_shifts_with_b(g, n):
    e, idx = tree_edge(g)
    e2, idx2 = tree_edge(g * GElement((), n))
    assert e2 == e and idx2 == idx + n


@given(g_elements)
def test_edge_endpoints_are_the_two_sides(g):
    e, _ = tree_edge(g)
    v0 = edge_endpoint(e, 0)
    v1 = edge_endpoint(e, 1)
    assert v0.side == 0 and v1.side == 1 and v0 != v1
    assert v0 == tree_vertex(g, 0)
    assert v1 == tree_vertex(g, 1)


def test_edge_attachments():
    e, _ = tree_edge(embed(0, normalize_str("t")))
    assert edge_attachment(e, 0) == normalize_str("t")
    assert edge_attachment(e, 1) == IDENTITY
