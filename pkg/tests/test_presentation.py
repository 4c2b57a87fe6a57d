import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import MANIFOLD_FIXTURES, load_fixture
from lenscert.intlinalg import abelianization
from lenscert.presentation import (
    GroupPresentation,
    Word,
    cell_structure,
    exponent_matrix,
    format_presentation,
    format_word,
    fundamental_group,
    parse_word,
    word_power,
)
from lenscert.triangulation import parse_triangulation, validate
from oracles import chain_complex_h1, random_gluing_table

MINIMAL_ONE_TET = """
t=1
0:0 -> 0:1 perm=1203
0:2 -> 0:3 perm=0231
"""


# ----------------------------------------------------------------------
# words


def test_free_reduction():
    w = Word(((0, 1), (0, -1), (1, 1)))
    assert w.reduced() == Word(((1, 1),))
    nested = Word(((0, 1), (1, 1), (1, -1), (0, -1), (2, 1)))
    assert nested.reduced() == Word(((2, 1),))


@settings(max_examples=200, deadline=None)
@given(
    st.lists(
        st.tuples(st.integers(0, 4), st.sampled_from((1, -1))), max_size=30
    )
)
def test_reduction_idempotent(letters):
    w = Word(tuple(letters))
    assert w.reduced().reduced() == w.reduced()


@settings(max_examples=100, deadline=None)
@given(
    st.lists(st.tuples(st.integers(0, 3), st.sampled_from((1, -1))), max_size=15)
)
def test_word_inverse_cancels(letters):
    w = Word(tuple(letters))
    assert (w * w.inverse()).reduced() == Word()


def test_word_format_roundtrip():
    labels = ("a", "b")
    w = parse_word("a b^-1 a a", labels)
    assert format_word(w, labels) == "a b^-1 a a"
    assert parse_word("a^3", labels) == Word(((0, 1),) * 3)
    assert parse_word("b^-2", labels) == Word(((1, -1),) * 2)


# ----------------------------------------------------------------------
# cell structure


def test_one_tet_has_two_face_classes():
    cs = cell_structure(parse_triangulation(MINIMAL_ONE_TET))
    assert len(cs.face_classes) == 2


@pytest.mark.parametrize("name", MANIFOLD_FIXTURES)
def test_face_class_count(name):
    tri = load_fixture(name)
    cs = cell_structure(tri)
    assert len(cs.face_classes) == 2 * tri.t


@pytest.mark.parametrize("name", MANIFOLD_FIXTURES)
def test_cell_counts_match_validation(name):
    tri = load_fixture(name)
    cs = cell_structure(tri)
    report = validate(tri)
    assert cs.n_vertices == report.v
    assert cs.n_edges == report.e


def test_one_vertex_fixture_edge_classes():
    tri = load_fixture("t3_torus.tri")
    cs = cell_structure(tri)
    assert cs.n_vertices == 1
    assert cs.n_edges == tri.t + 1


def test_two_vertex_fixture():
    cs = cell_structure(load_fixture("lens_5_2.tri"))
    assert cs.n_vertices == 2


# ----------------------------------------------------------------------
# fundamental group


@pytest.mark.parametrize("name", MANIFOLD_FIXTURES)
def test_presentation_shape(name):
    tri = load_fixture(name)
    report = validate(tri)
    pres = fundamental_group(tri)
    assert pres.g == report.e - (report.v - 1)
    assert len(pres.relators) == 2 * tri.t
    assert all(len(w) <= 3 for w in pres.relators)
    assert all(w.is_reduced() for w in pres.relators)


def test_one_vertex_counts():
    # 1-vertex: exactly e = t+1 generators survive (empty tree)
    for name in ("t3_torus.tri", "onevertex_t2.tri", "prism_q8.tri", "prism_q12.tri"):
        tri = load_fixture(name)
        report = validate(tri)
        if report.v != 1:
            continue
        pres = fundamental_group(tri)
        assert pres.g == tri.t + 1
        assert len(pres.relators) == 2 * tri.t


@pytest.mark.parametrize("name", MANIFOLD_FIXTURES)
def test_abelianization_matches_fixture_metadata(name, fixture_metadata):
    tri = load_fixture(name)
    group = abelianization(fundamental_group(tri))
    expected = fixture_metadata[name]["h1"]
    assert group.free_rank == expected["free_rank"]
    assert list(group.torsion) == expected["torsion"]


# restricted to fixtures whose boundary matrices keep the minors oracle cheap
SMALL_FIXTURES = [
    "lens_2_1.tri",
    "lens_3_1.tri",
    "lens_4_1.tri",
    "lens_5_2.tri",
    "t3_torus.tri",
    "prism_q8.tri",
    "prism_q12.tri",
    "onevertex_t2.tri",
]


@pytest.mark.parametrize("name", SMALL_FIXTURES)
def test_abelianization_matches_chain_complex_oracle(name):
    tri = load_fixture(name)
    group = abelianization(fundamental_group(tri))
    free, torsion = chain_complex_h1(tri)
    assert group.free_rank == free
    assert sorted(group.torsion) == torsion


def test_lens_space_homology_is_cyclic_of_order_p():
    for name, p in (("lens_3_1.tri", 3), ("lens_4_1.tri", 4), ("lens_7_2.tri", 7)):
        group = abelianization(fundamental_group(load_fixture(name)))
        assert group.free_rank == 0
        assert group.torsion == (p,)


def test_relator_lengths_on_random_legal_tables():
    rng = random.Random(424242)
    checked = 0
    for _ in range(40):
        tri = random_gluing_table(rng.randint(1, 5), rng)
        try:
            pres = fundamental_group(tri)
        except Exception:
            continue  # reversed edges make the orientation convention void
        checked += 1
        assert all(len(w) <= 3 for w in pres.relators)
        assert len(pres.relators) == 2 * tri.t
        assert pres.g <= cell_structure(tri).n_edges
    assert checked >= 10


# ----------------------------------------------------------------------
# exponent matrix


def test_exponent_matrix_triangle_group():
    x, y = Word(((0, 1),)), Word(((1, 1),))
    pres = GroupPresentation(
        2,
        (word_power(x, 3), word_power(y, 3), word_power(x * y, 3)),
        labels=("x", "y"),
    )
    assert exponent_matrix(pres).entries == ((3, 0), (0, 3), (3, 3))


def test_exponent_matrix_figure8():
    labels = ("a", "b")
    relator = parse_word("a b a^-1 b^-1 a b a b^-1 a^-1 b^-1", labels)
    pres = GroupPresentation(2, (relator,), labels)
    assert exponent_matrix(pres).entries == ((1, -1),)


def test_exponent_matrix_no_relators():
    pres = GroupPresentation(3, ())
    matrix = exponent_matrix(pres)
    assert matrix.rows == 0 and matrix.cols == 3


def test_presentation_size():
    labels = ("x", "y")
    pres = GroupPresentation(2, (parse_word("x x", labels),), labels)
    assert pres.size() == 4  # two generators plus a length-2 relator


def test_format_presentation_block():
    pres = GroupPresentation(2, (Word(((0, 1), (1, -1))),), labels=("a", "b"))
    assert format_presentation(pres) == ["gens 2 a b", "rels 1", "a b^-1"]
