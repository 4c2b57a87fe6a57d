import pytest

from lenscert.galois import FieldSpec, euler_phi, is_quadratic_residue
from lenscert.presentation import Word, word_power
from lenscert.projmat import ProjMatrix, evaluate_word, projective_order
from lenscert.trianglerep import (
    EUCLIDEAN,
    HYPERBOLIC,
    SPHERICAL,
    bound_report,
    build_hyperbolic_rep,
    build_nonhyperbolic_cert,
    classify,
    cosine_norm,
    cyclotomic_eval,
    field_degree_report,
    hyperbolic_triples,
    reduced_cosines,
    solve_r,
    triangle_presentation,
)
from oracles import cyclotomic_closed_form, float_cosine_norm


# ----------------------------------------------------------------------
# classification


def test_classify_237():
    t = classify(2, 3, 7)
    assert t.curvature == HYPERBOLIC
    assert t.ell == 84
    assert t.d == 1


def test_classify_333():
    t = classify(3, 3, 3)
    assert t.curvature == EUCLIDEAN
    assert t.d == 3


def test_classify_235():
    assert classify(2, 3, 5).curvature == SPHERICAL


def test_classify_sorts():
    assert classify(7, 2, 3).triple == (2, 3, 7)


def test_classify_rejects_small():
    with pytest.raises(ValueError):
        classify(1, 3, 7)


def test_triangle_presentation_shape():
    pres = triangle_presentation(classify(2, 3, 7))
    assert pres.g == 2
    assert [len(w) for w in pres.relators] == [2, 3, 14]


# ----------------------------------------------------------------------
# reduced cosines and the quadratic


def test_cosine_images_small_orders():
    zeta, c1, c2, c3 = reduced_cosines(337, 84, (2, 3, 7))
    assert c1 == FieldSpec(337).zero()  # 2cos(pi/2) = 0
    assert c2 == FieldSpec(337).one()  # 2cos(pi/3) = 1
    assert c3 != FieldSpec(337).element(2)


def test_cosine_images_never_two_unless_power_of_two():
    # C_k = 2 would make 2c - 2 = 0, whose norm is 1 for n not a power of 2
    for triple in [(2, 3, 7), (3, 4, 5), (2, 5, 9), (5, 6, 7)]:
        t = classify(*triple)
        from lenscert.galois import smallest_prime_in_progression

        p = smallest_prime_in_progression(t.ell)
        _, c1, c2, c3 = reduced_cosines(p, t.ell, t.triple)
        two = FieldSpec(p).element(2)
        for n, c in zip(t.triple, (c1, c2, c3)):
            if n & (n - 1) != 0:
                assert c != two


def test_solve_r_replay():
    p = 337
    spec = FieldSpec(p)
    _, c1, c2, c3 = reduced_cosines(p, 84, (2, 3, 7))
    out_spec, r = solve_r(spec, c1, c2, c3)
    lifted = [x.lift(out_spec) for x in (c1, c2, c3)]
    check = r * r + r * (lifted[0] - lifted[1]) + (
        out_spec.element(2) - lifted[0] * lifted[1] - lifted[2]
    )
    assert check.is_zero()


def test_solve_r_degenerate_zero():
    # C1 = C2 and C3 = 2 - C1^2 forces r = 0
    spec = FieldSpec(337)
    c1 = spec.element(5)
    c3 = spec.element(2) - c1 * c1
    out_spec, r = solve_r(spec, c1, c1, c3)
    assert out_spec == spec
    assert r.is_zero()


def test_solve_r_residue_verdict_recorded():
    p = 337
    spec = FieldSpec(p)
    _, c1, c2, c3 = reduced_cosines(p, 84, (2, 3, 7))
    lin = c1 - c2
    disc = lin * lin - spec.element(4) * (spec.element(2) - c1 * c2 - c3)
    out_spec, _ = solve_r(spec, c1, c2, c3)
    assert (out_spec.degree == 1) == is_quadratic_residue(disc.a, p)


# ----------------------------------------------------------------------
# hyperbolic builds


def test_build_237():
    rep = build_hyperbolic_rep(classify(2, 3, 7))
    assert rep.p == 337
    assert rep.spec.order in (337, 337**2)
    # independent order check by naive matrix powering
    for matrix, n in ((rep.x_image, 2), (rep.y_image, 3), (rep.x_image.mul(rep.y_image), 7)):
        power = matrix
        count = 1
        while not power.is_identity():
            power = power.mul(matrix)
            count += 1
        assert count == n
    assert rep.x_image.mul(rep.y_image) != rep.y_image.mul(rep.x_image)


def test_build_345():
    t = classify(3, 4, 5)
    assert t.ell == 120
    rep = build_hyperbolic_rep(t)
    assert rep.p == 241  # smallest prime = 1 mod 120
    orders = tuple(
        projective_order(m, 1000)
        for m in (rep.x_image, rep.y_image, rep.x_image.mul(rep.y_image))
    )
    assert orders == (3, 4, 5)


def test_build_deterministic():
    a = build_hyperbolic_rep(classify(2, 3, 7))
    b = build_hyperbolic_rep(classify(2, 3, 7))
    assert a == b


def test_build_with_alternate_root_of_unity():
    """Any exact-order-ell root gives a valid (conjugate) build."""
    t = classify(2, 3, 7)
    rep = build_hyperbolic_rep(t)
    p, ell = rep.p, t.ell
    base = rep.zeta
    alt = base**5  # gcd(5,84)=1, so another valid generator choice
    cs = []
    for n in t.triple:
        zk = alt ** (ell // (2 * n))
        cs.append(zk + zk.inverse())
    spec, r = solve_r(FieldSpec(p), *cs)
    c1, c2 = cs[0].lift(spec), cs[1].lift(spec)
    x = ProjMatrix(c1, spec.one(), -spec.one(), spec.zero())
    t_r = ProjMatrix(spec.one(), r, spec.zero(), spec.one())
    y = t_r.mul(ProjMatrix(c2, spec.one(), -spec.one(), spec.zero())).mul(t_r.inverse())
    xy = x.mul(y)
    assert (
        projective_order(x, 200),
        projective_order(y, 200),
        projective_order(xy, 200),
    ) == t.triple
    assert xy != y.mul(x)


def test_build_rejects_wrong_curvature():
    with pytest.raises(ValueError):
        build_hyperbolic_rep(classify(2, 3, 5))
    with pytest.raises(ValueError):
        build_hyperbolic_rep(classify(2, 4, 6))  # hyperbolic but gcd 2


def test_trace_of_xy_is_plus_minus_c3():
    for triple in [(2, 3, 7), (3, 4, 5), (2, 4, 5)]:
        rep = build_hyperbolic_rep(classify(*triple))
        trace = rep.x_image.mul(rep.y_image).trace()
        assert trace in (rep.c3, -rep.c3)


def test_small_sweep_builds_and_verifies():
    for t in hyperbolic_triples(8):
        if t.d != 1:
            continue
        rep = build_hyperbolic_rep(t)
        xy = rep.x_image.mul(rep.y_image)
        assert (
            projective_order(rep.x_image, 2 * t.ell),
            projective_order(rep.y_image, 2 * t.ell),
            projective_order(xy, 2 * t.ell),
        ) == t.triple


# ----------------------------------------------------------------------
# non-hyperbolic certificates


def test_dihedral_2_2_15():
    data = build_nonhyperbolic_cert(classify(2, 2, 15))
    assert data.kind == "rep"
    assert data.spec.p == 3 and data.spec.degree == 2  # F_9 adjoining i
    xy = data.x_image.mul(data.y_image)
    assert projective_order(xy, 100) == 3
    relator = word_power(Word(((0, 1), (1, 1))), 15)
    assert evaluate_word([data.x_image, data.y_image], relator).is_identity()
    assert xy != data.y_image.mul(data.x_image)


def test_spherical_235_lands_in_psl25():
    data = build_nonhyperbolic_cert(classify(2, 3, 5))
    assert data.kind == "rep"
    assert data.spec.order == 5
    orders = (
        projective_order(data.x_image, 100),
        projective_order(data.y_image, 100),
        projective_order(data.x_image.mul(data.y_image), 100),
    )
    assert orders == (2, 3, 5)


def test_euclidean_244_abelian():
    data = build_nonhyperbolic_cert(classify(2, 4, 4))
    assert data.kind == "abelian"
    assert data.d == 2


def test_field_small_for_all_nonhyperbolic():
    triples = [(2, 3, 3), (2, 3, 4), (2, 3, 5), (2, 3, 6)]
    triples += [(2, 2, m) for m in range(3, 100, 2)]
    for triple in triples:
        data = build_nonhyperbolic_cert(classify(*triple))
        assert data.kind == "rep"
        assert data.spec.order <= triple[2] ** 2


def test_236_relators_die_on_reused_images():
    data = build_nonhyperbolic_cert(classify(2, 3, 6))
    images = [data.x_image, data.y_image]
    for relator in triangle_presentation(classify(2, 3, 6)).relators:
        assert evaluate_word(images, relator).is_identity()
    assert data.x_image.mul(data.y_image) != data.y_image.mul(data.x_image)


def test_hyperbolic_gcd_goes_abelian():
    data = build_nonhyperbolic_cert(classify(2, 4, 6))
    assert data.kind == "abelian" and data.d == 2


# ----------------------------------------------------------------------
# cosine norms


@pytest.mark.parametrize(
    "n,variant,expected",
    [
        (4, "plain", 4),
        (6, "plain", 9),
        (5, "minus_two", 1),
        (8, "minus_two", 4),
        (9, "plain", 1),
        (18, "plain", 9),
        (7, "plain", 1),
        (16, "plain", 4),
        (4, "minus_two", 4),
        (12, "plain", 1),
    ],
)
def test_cosine_norm_closed_forms(n, variant, expected):
    assert cosine_norm(n, variant) == expected


def test_cosine_norm_rejects_small_n():
    with pytest.raises(ValueError):
        cosine_norm(2)


def test_cosine_norm_against_float_products():
    for n in range(3, 201):
        assert abs(cosine_norm(n, "plain") - float_cosine_norm(n, 0.0)) < 1e-6
        assert abs(cosine_norm(n, "minus_two") - float_cosine_norm(n, 2.0)) < 1e-6


# ----------------------------------------------------------------------
# cyclotomic evaluation


@pytest.mark.parametrize(
    "k,at,expected",
    [(1, -1, -2), (6, 1, 1), (9, 1, 3), (2, -1, 0), (1, 1, 0), (4, -1, 2), (12, -1, 1)],
)
def test_cyclotomic_quoted_values(k, at, expected):
    assert cyclotomic_eval(k, at) == expected


def test_cyclotomic_matches_closed_forms_to_500():
    for k in range(1, 501):
        assert cyclotomic_eval(k, 1) == cyclotomic_closed_form(k, 1)
        assert cyclotomic_eval(k, -1) == cyclotomic_closed_form(k, -1)


def test_cyclotomic_polynomial_product():
    # prod over d | k of Phi_d(x) = x^k - 1, spot check at x = 2
    for k in (12, 30, 105):
        product = 1
        for d in range(1, k + 1):
            if k % d == 0:
                from lenscert.trianglerep import _cyclotomic_poly

                coeffs = _cyclotomic_poly(d)
                product *= sum(c * 2**i for i, c in enumerate(coeffs))
        assert product == 2**k - 1


# ----------------------------------------------------------------------
# field degree scan


def test_degree_report_237():
    report = field_degree_report(classify(2, 3, 7))
    assert report.trace_degree == 12  # phi(84)/2
    assert report.candidate_degrees == (12, 24)
    assert report.witness_l is not None
    assert report.verdict == "degree_phi"


def test_degree_report_requires_hyperbolic():
    with pytest.raises(ValueError):
        field_degree_report(classify(2, 3, 6))


def test_phi_inequality_with_documented_exception():
    """phi(n) < n <= phi(n)^2 for n > 2 fails exactly at n = 6
    (phi(6)^2 = 4 < 6); every relevant modulus here has ell >= 12."""
    assert euler_phi(6) ** 2 == 4 < 6
    for n in range(3, 10001):
        assert euler_phi(n) < n
        if n != 6:
            assert n <= euler_phi(n) ** 2
    # no hyperbolic triple has ell = 6, so the bound chain never hits the gap
    ells = {t.ell for t in hyperbolic_triples(19)}
    assert 6 not in ells
    assert all(ell <= euler_phi(ell) ** 2 for ell in ells)


# ----------------------------------------------------------------------
# bound report


def test_bound_report_237_t10():
    t = classify(2, 3, 7)
    rep = build_hyperbolic_rep(t)
    report = bound_report(t, t=10, rep=rep)
    assert report.ell_bound == 2**20 * 3**120
    assert report.ell_within_bound
    assert report.degree_bound == 2**9 * 3**60
    assert report.degree_within_bound
    assert report.field_size in (337, 337**2)
    assert report.field_within_ell10
    assert 0 <= report.field_ratio_ell10 < 1
    assert report.linnik_ratio == 337 / 84**5.18


def test_bound_report_without_optionals():
    report = bound_report(classify(2, 3, 7))
    assert report.t is None and report.field_size is None
    assert report.ell == 84 and report.d == 1
