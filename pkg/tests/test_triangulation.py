import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import MANIFOLD_FIXTURES, load_fixture
from lenscert.triangulation import (
    DisconnectedError,
    Permutation4,
    TriangulationError,
    format_triangulation,
    orientation_check,
    parse_triangulation,
    validate,
)
from oracles import (
    exhaustive_orientation,
    link_euler_characteristics,
    random_gluing_table,
    relabel_triangulation,
)

MINIMAL_ONE_TET = """
# two self-gluings of a single tetrahedron
t=1
0:0 -> 0:1 perm=1203
0:2 -> 0:3 perm=0231
"""


def test_parse_minimal_one_tet():
    tri = parse_triangulation(MINIMAL_ONE_TET)
    assert tri.t == 1
    assert len(tri.pairings()) == 2


def test_parse_records_both_directions():
    tri = parse_triangulation(MINIMAL_ONE_TET)
    tet2, face2, perm = tri.gluings[0][0]
    assert (tet2, face2) == (0, 1)
    back = tri.gluings[0][1]
    assert back == (0, 0, perm.inverse())


def test_involution_violation_rejected():
    text = """
t=2
0:1 -> 0:2 perm=0213
0:2 -> 1:3 perm=0132
0:0 -> 1:0 perm=2013
0:3 -> 1:1 perm=1230
"""
    with pytest.raises(TriangulationError):
        parse_triangulation(text)


def test_face_glued_to_itself_rejected():
    with pytest.raises(TriangulationError, match="itself"):
        parse_triangulation("t=1\n0:0 -> 0:0 perm=0123\n")


def test_index_out_of_range_rejected():
    with pytest.raises(TriangulationError):
        parse_triangulation("t=1\n0:0 -> 1:1 perm=1023\n")


def test_unpaired_face_rejected():
    with pytest.raises(TriangulationError, match="unpaired"):
        parse_triangulation("t=1\n0:0 -> 0:1 perm=1023\n")


def test_syntax_error_reports_line():
    with pytest.raises(TriangulationError, match="line 3"):
        parse_triangulation("# c\nt=1\nnot a gluing\n")


def test_perm_must_send_face_to_face():
    with pytest.raises(TriangulationError):
        parse_triangulation("t=1\n0:0 -> 0:1 perm=2103\n")


@pytest.mark.parametrize("name", MANIFOLD_FIXTURES)
def test_fixtures_parse_with_recorded_t(name, fixture_metadata):
    tri = load_fixture(name)
    assert tri.t == fixture_metadata[name]["t"]


@pytest.mark.parametrize("name", MANIFOLD_FIXTURES)
def test_fixture_roundtrip(name):
    tri = load_fixture(name)
    assert parse_triangulation(format_triangulation(tri)) == tri


def test_permutation_parity():
    assert not Permutation4((0, 1, 2, 3)).is_odd()
    assert Permutation4((1, 0, 2, 3)).is_odd()
    assert not Permutation4((1, 2, 0, 3)).is_odd()
    assert not Permutation4((3, 2, 1, 0)).is_odd()
    assert Permutation4((0, 1, 3, 2)).is_odd()


# ----------------------------------------------------------------------
# validation


@pytest.mark.parametrize("name", MANIFOLD_FIXTURES)
def test_fixture_validation_passes(name, fixture_metadata):
    report = validate(load_fixture(name))
    assert report.passed
    assert report.euler == 0
    assert all(chi == 2 for chi in report.vertex_link_eulers)
    assert report.v == fixture_metadata[name]["v"]
    assert report.e == fixture_metadata[name]["e"]


def test_bad_link_fixture_fails():
    tri = load_fixture("badlink_torus.tri")
    report = validate(tri)
    assert not report.passed
    assert 0 in report.vertex_link_eulers


def test_bad_link_euler_matches_corner_oracle():
    tri = load_fixture("badlink_torus.tri")
    report = validate(tri)
    oracle = sorted(link_euler_characteristics(tri).values())
    assert sorted(report.vertex_link_eulers) == oracle


@pytest.mark.parametrize("name", MANIFOLD_FIXTURES)
def test_link_eulers_match_corner_oracle(name):
    tri = load_fixture(name)
    report = validate(tri)
    oracle = sorted(link_euler_characteristics(tri).values())
    assert sorted(report.vertex_link_eulers) == oracle


def test_one_vertex_fixture_edge_count():
    # chi = 0 with v = 1 and f = 2t forces e = t + 1
    for name in ("t3_torus.tri", "onevertex_t2.tri", "prism_q8.tri", "prism_q12.tri"):
        report = validate(load_fixture(name))
        if report.v == 1:
            assert report.e == report.t + 1


def test_random_tables_euler_zero_only_when_links_pass():
    rng = random.Random(20240817)
    for _ in range(60):
        tri = random_gluing_table(rng.randint(1, 4), rng, connected=False)
        report = validate(tri)
        if report.passed:
            assert report.euler == 0


# ----------------------------------------------------------------------
# orientation


@pytest.mark.parametrize("name", MANIFOLD_FIXTURES)
def test_orientation_matches_fixture_metadata(name, fixture_metadata):
    result = orientation_check(load_fixture(name))
    assert result.orientable == fixture_metadata[name]["orientable"]


@pytest.mark.parametrize("name", MANIFOLD_FIXTURES)
def test_orientation_matches_exhaustive_oracle(name):
    tri = load_fixture(name)
    result = orientation_check(tri)
    oracle = exhaustive_orientation(tri)
    assert result.orientable == (oracle is not None)
    if result.orientable:
        assert result.assignment is not None
        # the returned assignment itself satisfies the parity condition
        for fp in tri.pairings():
            same = result.assignment[fp.source[0]] * result.assignment[fp.target[0]] == 1
            assert same == fp.perm.is_odd()
    else:
        fp = result.witness
        assert fp is not None and not (fp in tri.pairings() and False)


def test_orientation_random_tables_against_oracle():
    rng = random.Random(987123)
    for _ in range(200):
        t = rng.randint(1, 12)
        tri = random_gluing_table(t, rng)
        assert orientation_check(tri).orientable == (exhaustive_orientation(tri) is not None)


def test_orientation_invariant_under_relabeling():
    rng = random.Random(55)
    for name in MANIFOLD_FIXTURES:
        tri = load_fixture(name)
        verdict = orientation_check(tri).orientable
        for _ in range(3):
            perm = list(range(tri.t))
            rng.shuffle(perm)
            assert orientation_check(relabel_triangulation(tri, perm)).orientable == verdict


def test_orientation_errors_on_disconnected():
    # two disjoint copies of the minimal one-tet table
    text = """
t=2
0:0 -> 0:1 perm=1203
0:2 -> 0:3 perm=0231
1:0 -> 1:1 perm=1203
1:2 -> 1:3 perm=0231
"""
    tri = parse_triangulation(text)
    with pytest.raises(DisconnectedError):
        orientation_check(tri)


def test_witness_is_a_violating_pairing():
    tri = load_fixture("s2xs1_twisted.tri")
    result = orientation_check(tri)
    assert not result.orientable
    assert result.witness is not None
    # the witness must break every consistent assignment: flipping it alone
    # cannot be fixed, since the oracle finds nothing
    assert exhaustive_orientation(tri) is None


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 6), st.randoms(use_true_random=False))
def test_involution_property_random_tables(t, rnd):
    tri = random_gluing_table(t, rnd, connected=False)
    for tet in range(tri.t):
        for face in range(4):
            tet2, face2, perm = tri.gluings[tet][face]
            back = tri.gluings[tet2][face2]
            assert back[0] == tet and back[1] == face
            assert back[2] == perm.inverse()
