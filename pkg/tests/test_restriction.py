import math
from fractions import Fraction

import numpy as np
import pytest

from ffharm import (
    EmptyVariety,
    ExponentPair,
    FieldCtx,
    RadialProfile,
    SearchConfig,
    UnsupportedDimension,
    build_variety,
    compare_sign_modes,
    enumerate_sphere,
    lift_radial,
    lp_norm_counting,
    lr_norm_sigma,
    profile_lp_norm,
    radial_matrix,
    region_conjecture,
    region_lewko,
    rnorm_exact_22,
    rnorm_search,
    sphere_sizes,
    suf1_diagnostic,
    suf2_check,
    witness_lower_bound,
    zero_sphere_intersection,
)

F = Fraction


# ---------------------------------------------------------------------------
# exponent pairs


def test_exponent_pair_parsing_and_conjugate():
    pair = ExponentPair.parse("3/2", "2")
    assert pair.p == F(3, 2) and pair.r == F(2)
    assert pair.p_conjugate == F(3)
    assert ExponentPair(F(1), F(2)).p_conjugate == math.inf
    assert ExponentPair(math.inf, F(2)).p_conjugate == F(1)
    assert ExponentPair.parse("inf", "2").inverse_point() == (F(0), F(1, 2))


def test_exponent_pair_rejects_bad_values():
    with pytest.raises(ValueError):
        ExponentPair(F(1, 2), F(2))
    with pytest.raises(ValueError):
        ExponentPair.parse("1.5", "2")
    with pytest.raises(ValueError):
        ExponentPair(2.0, F(2))  # floats other than inf are ambiguous


# ---------------------------------------------------------------------------
# lifting and norms


def test_lift_radial_delta_is_sphere_indicator():
    ctx = FieldCtx(3, 2)
    f = lift_radial(RadialProfile.delta(ctx, 1))
    sphere = enumerate_sphere(ctx, 1)
    assert int((f.values != 0).sum()) == 4
    assert np.array_equal(np.nonzero(f.values)[0], sphere.flat)


def test_lift_radial_constant_and_zero():
    ctx = FieldCtx(5, 2)
    assert (lift_radial(RadialProfile.constant(ctx, 1.0)).values == 1).all()
    assert (lift_radial(RadialProfile(ctx, np.zeros(5))).values == 0).all()


def test_lp_norm_examples():
    ctx = FieldCtx(3, 2)
    f = lift_radial(RadialProfile.delta(ctx, 1))
    assert abs(lp_norm_counting(f, F(2)) - 2.0) < 1e-12
    ones = lift_radial(RadialProfile.constant(ctx, 1.0))
    assert abs(lp_norm_counting(ones, F(1)) - ctx.size) < 1e-12
    assert abs(lp_norm_counting(ones, math.inf) - 1.0) < 1e-12


def test_profile_norm_matches_lift_norm():
    ctx = FieldCtx(5, 3)
    rng = np.random.default_rng(0)
    prof = RadialProfile(ctx, rng.standard_normal(5) + 1j * rng.standard_normal(5))
    for p in (F(1), F(3, 2), F(2), F(7, 3), math.inf):
        assert abs(
            profile_lp_norm(prof, p) - lp_norm_counting(lift_radial(prof), p)
        ) < 1e-9 * max(1.0, profile_lp_norm(prof, p))
    # a profile scaled to the unit weighted-p ball lifts to a unit-norm function
    p = F(3, 2)
    unit = RadialProfile(ctx, prof.coeffs / profile_lp_norm(prof, p))
    assert abs(lp_norm_counting(lift_radial(unit), p) - 1.0) < 1e-12


def test_lr_norm_sigma_examples():
    ctx = FieldCtx(5, 3)
    v = build_variety(ctx, "paraboloid")
    const = np.full(v.cardinality, 3.0 - 4.0j)
    for r in (F(1), F(2), F(7, 2), math.inf):
        assert abs(lr_norm_sigma(const, v, r) - 5.0) < 1e-12
    # transform of the constant function is a point mass at the origin
    g = np.zeros(v.cardinality, dtype=complex)
    g[0] = ctx.size  # origin is row 0
    r = F(2)
    expected = ctx.size * v.cardinality ** (-1 / float(r))
    assert abs(lr_norm_sigma(g, v, r) - expected) < 1e-9
    assert abs(lr_norm_sigma(g, v, math.inf) - ctx.size) < 1e-12


def test_lr_norm_monotone_in_r():
    ctx = FieldCtx(7, 3)
    v = build_variety(ctx, "plane")
    rng = np.random.default_rng(1)
    g = rng.standard_normal(v.cardinality) + 1j * rng.standard_normal(v.cardinality)
    rs = [F(1), F(3, 2), F(2), F(3), F(6), math.inf]
    vals = [lr_norm_sigma(g, v, r) for r in rs]
    for lo, hi in zip(vals, vals[1:]):
        assert lo <= hi + 1e-12


def test_lr_norm_requires_nonempty_variety():
    ctx = FieldCtx(3, 2)
    with pytest.warns(UserWarning):
        v = build_variety(ctx, "poly:1")
    with pytest.raises(EmptyVariety):
        lr_norm_sigma(np.zeros(0), v, F(2))


# ---------------------------------------------------------------------------
# radial matrix


def test_radial_matrix_zero_row_and_columns():
    ctx = FieldCtx(3, 2)
    v = build_variety(ctx, "plane")  # contains the origin
    A = radial_matrix(v)
    assert A.shape == (v.cardinality, 3)
    sizes = sphere_sizes(ctx)
    assert np.abs(A[0] - sizes).max() < 1e-9
    # columns are the closed-form transforms on V
    from ffharm import sphere_ft_closed

    for j in range(3):
        col = np.array([sphere_ft_closed(ctx, j, x) for x in v.points])
        assert np.abs(A[:, j] - col).max() < 1e-9


def test_radial_matrix_entry_example():
    ctx = FieldCtx(3, 2)
    v = build_variety(ctx, "plane")  # x1 + x2 = 0 contains (1, 2)? need (1,1)
    # use a custom variety that contains (1,1): x1 - x2 = 0
    v = build_variety(ctx, "poly:x1-x2")
    row = int(np.nonzero(v.flat == ctx.flat_index((1, 1)))[0][0])
    A = radial_matrix(v)
    assert abs(A[row, 1] - (-2)) < 1e-9


def test_restriction_of_lift_equals_matrix_product():
    from ffharm import ft_fast

    ctx = FieldCtx(5, 2)
    v = build_variety(ctx, "paraboloid")
    rng = np.random.default_rng(3)
    prof = RadialProfile(ctx, rng.standard_normal(5) + 1j * rng.standard_normal(5))
    full = ft_fast(lift_radial(prof)).values[v.flat]
    via_matrix = radial_matrix(v) @ prof.coeffs
    assert np.abs(full - via_matrix).max() < 1e-9


# ---------------------------------------------------------------------------
# exact 2->2 norm


def test_exact22_single_point_variety():
    ctx = FieldCtx(3, 2)
    v = build_variety(ctx, "sphere:0")  # just the origin for q = 3
    sizes = sphere_sizes(ctx).astype(float)
    A = radial_matrix(v)
    expected = math.sqrt(float((np.abs(A[0]) ** 2 / sizes).sum()))
    assert abs(rnorm_exact_22(v) - expected) < 1e-9


@pytest.mark.parametrize("q", [3, 5, 7])
@pytest.mark.parametrize("d", [2, 3])
@pytest.mark.parametrize("name", ["paraboloid", "plane", "sphere:1"])
def test_exact22_matches_dense_factorization(q, d, name):
    ctx = FieldCtx(q, d)
    v = build_variety(ctx, name)
    A = radial_matrix(v)
    weighted = A / math.sqrt(v.cardinality) / np.sqrt(sphere_sizes(ctx))[None, :]
    top = float(np.linalg.svd(weighted, compute_uv=False)[0])
    assert abs(rnorm_exact_22(v) - top) < 1e-8


# ---------------------------------------------------------------------------
# search


@pytest.mark.parametrize("q", [3, 5, 7])
@pytest.mark.parametrize("d", [2, 3])
@pytest.mark.parametrize("name", ["paraboloid", "plane", "sphere:1"])
def test_search_reproduces_exact22(q, d, name):
    ctx = FieldCtx(q, d)
    v = build_variety(ctx, name)
    exact = rnorm_exact_22(v)
    rep = rnorm_search(v, ExponentPair(F(2), F(2)), SearchConfig(sign_mode="signed"))
    assert rep.estimate <= exact + 1e-6
    assert rep.estimate >= exact - 1e-6


def test_search_dominates_its_own_starts():
    ctx = FieldCtx(5, 3)
    v = build_variety(ctx, "paraboloid")
    pair = ExponentPair(F(1), F(2))
    rep = rnorm_search(v, pair)
    # constant profile is one of the starts
    const_ratio = lr_norm_sigma(
        radial_matrix(v) @ np.ones(5), v, pair.r
    ) / profile_lp_norm(RadialProfile.constant(ctx), pair.p)
    assert rep.estimate >= const_ratio - 1e-9
    assert rep.estimate >= witness_lower_bound(v, pair) - 1e-6


def test_search_regression_baseline():
    # frozen from the first correct run: the constant profile is optimal here
    ctx = FieldCtx(5, 3)
    v = build_variety(ctx, "paraboloid")
    rep = rnorm_search(v, ExponentPair(F(3, 2), F(2)), SearchConfig(seed=0))
    assert abs(rep.estimate - 1.0) < 1e-9
    assert rep.method == "MultiStart"


def test_search_deterministic_given_seed():
    ctx = FieldCtx(5, 3)
    v = build_variety(ctx, "plane")
    pair = ExponentPair(F(3, 2), F(2))
    a = rnorm_search(v, pair, SearchConfig(seed=11))
    b = rnorm_search(v, pair, SearchConfig(seed=11))
    assert a.estimate == b.estimate
    assert a.iterations == b.iterations


def test_search_rejects_bad_config():
    ctx = FieldCtx(3, 2)
    v = build_variety(ctx, "plane")
    with pytest.raises(ValueError):
        rnorm_search(v, ExponentPair(math.inf, F(2)))
    with pytest.raises(ValueError):
        rnorm_search(v, ExponentPair(F(2), F(2)), SearchConfig(starts=0))
    with pytest.raises(ValueError):
        rnorm_search(v, ExponentPair(F(2), F(2)), SearchConfig(sign_mode="both"))


def test_compare_sign_modes_returns_flag():
    ctx = FieldCtx(3, 3)
    v = build_variety(ctx, "paraboloid")
    signed, nonneg, flag = compare_sign_modes(v, ExponentPair(F(2), F(2)))
    assert signed.sign_mode == "signed"
    assert nonneg.sign_mode == "nonneg"
    assert signed.estimate >= nonneg.estimate - 1e-9
    assert flag == (signed.estimate > nonneg.estimate + 1e-6)


def test_homogeneity_of_ratio():
    ctx = FieldCtx(5, 3)
    v = build_variety(ctx, "paraboloid")
    A = radial_matrix(v)
    pair = ExponentPair(F(3, 2), F(2))
    rng = np.random.default_rng(5)
    M = rng.standard_normal(5) + 1j * rng.standard_normal(5)
    prof = RadialProfile(ctx, M)

    def ratio(prof):
        return lr_norm_sigma(A @ prof.coeffs, v, pair.r) / profile_lp_norm(prof, pair.p)

    base = ratio(prof)
    for scale in (2.0, -3.5, 1.0j, 0.25 - 0.7j):
        scaled = RadialProfile(ctx, scale * M)
        assert abs(ratio(scaled) - base) <= 1e-9 * base


# ---------------------------------------------------------------------------
# witnesses


def test_constant_witness_value():
    ctx = FieldCtx(7, 3)
    v = build_variety(ctx, "paraboloid")
    pair = ExponentPair(F(2), F(2))
    # constant witness: q^{d - d/p} |V|^{-1/r} = 7^{3/2} * 49^{-1/2} = sqrt(7)
    expected = 7 ** (3 - 3 / 2) * 49 ** (-1 / 2)
    assert abs(expected - math.sqrt(7)) < 1e-12
    assert witness_lower_bound(v, pair) >= expected - 1e-9


def test_witness_on_critical_line_is_one():
    # d/p + (d-1)/r = d with |V| = q^{d-1} makes the constant witness exactly 1
    ctx = FieldCtx(5, 3)
    v = build_variety(ctx, "paraboloid")
    pair = ExponentPair(F(3, 2), F(2))
    d, q = 3, 5
    const = q ** (d - d / float(pair.p)) * v.cardinality ** (-1 / float(pair.r))
    assert abs(const - 1.0) < 1e-12
    assert witness_lower_bound(v, pair) >= 1.0 - 1e-9


def test_witness_growth_outside_necessary_region():
    # pair (2,2) in d = 3 violates d/p + (d-1)/r >= d; witness grows ~ sqrt(q)
    pair = ExponentPair(F(2), F(2))
    exponent = 3 - 3 / 2 - 2 / 2  # = 1/2
    vals = {}
    for q in (3, 13):
        v = build_variety(FieldCtx(q, 3), "paraboloid")
        vals[q] = witness_lower_bound(v, pair)
    assert vals[13] / vals[3] >= (13 / 3) ** exponent / 2


# ---------------------------------------------------------------------------
# region membership and rational gates


def test_region_conjecture_examples():
    assert region_conjecture(3, (F(2, 3), F(1, 2))) is True  # vertex
    assert region_conjecture(3, (F(1, 2), F(1, 2))) is False
    assert region_conjecture(3, (F(1), F(1))) is True  # vertex


def test_region_conjecture_matches_inequalities():
    # hull form vs inequality form: 1/p >= (d+1)/2d and d/p + (d-1)/r >= d
    for d in (2, 3, 4, 5):
        for ip_num in range(0, 13):
            for ir_num in range(0, 13):
                pt = (F(ip_num, 12), F(ir_num, 12))
                expected = pt[0] >= F(d + 1, 2 * d) and d * pt[0] + (d - 1) * pt[1] >= d
                assert region_conjecture(d, pt) == expected


def test_region_lewko_examples():
    assert region_lewko(4, (F(11, 16), F(1))) is True  # vertex
    assert region_lewko(3, (F(13, 18), F(1, 2))) is True  # vertex
    for d in (3, 4, 5, 8):
        assert region_lewko(d, (F(0), F(0))) is False
    assert region_lewko(3, (F(3, 4), F(3, 8))) is True  # d=3 endpoint
    assert region_lewko(4, (F(3, 4), F(6, 16))) is True  # (3/4, (d+2)/4d)


def test_region_lewko_rejects_small_d():
    with pytest.raises(UnsupportedDimension):
        region_lewko(2, (F(1), F(1)))


def test_lewko_region_inside_conjecture_region():
    # the proven region is contained in the necessary one
    for d in (3, 4, 5):
        for ip_num in range(0, 9):
            for ir_num in range(0, 9):
                pt = (F(ip_num, 8), F(ir_num, 8))
                if region_lewko(d, pt):
                    assert region_conjecture(d, pt)


def test_suf2_examples():
    value, ok = suf2_check(3, ExponentPair(F(3, 2), F(2)))
    assert value == 0 and ok
    value, ok = suf2_check(4, ExponentPair(F(3, 2), F(9, 4)))
    assert value == 0 and ok
    value, ok = suf2_check(3, ExponentPair(F(2), F(2)))
    assert value == 1 and not ok


# ---------------------------------------------------------------------------
# Holder-step profile properties


@pytest.mark.parametrize("q,d,p", [(5, 3, F(3, 2)), (7, 3, F(2)), (5, 4, F(8, 5))])
def test_profile_sum_and_m0_bounds(q, d, p):
    # nonneg profiles normalized to sum of M_j^p = q^{1-d} exactly
    rng = np.random.default_rng(q * 10 + d)
    pf = float(p)
    pc = float(p / (p - 1))
    for _ in range(25):
        M = rng.random(q)
        M *= (q ** (1 - d) / (M**pf).sum()) ** (1 / pf)
        assert abs((M**pf).sum() - q ** (1 - d)) < 1e-12
        for r in (1.0, 2.0, 2.25):
            lhs = M.sum() ** r
            rhs = q ** (r / pc) * q ** (r * (1 - d) / pf)
            assert lhs <= rhs * (1 + 1e-9)
        assert M[0] <= q ** ((1 - d) / pf) * (1 + 1e-12)


# ---------------------------------------------------------------------------
# off-origin diagnostic


def test_suf1_zero_profile():
    ctx = FieldCtx(5, 4)
    v = build_variety(ctx, "plane")
    L, R, Mterm = suf1_diagnostic(v, RadialProfile(ctx, np.zeros(5)), F(2))
    assert L == R == Mterm == 0.0


def test_suf1_triangle_bound():
    ctx = FieldCtx(5, 4)
    v = build_variety(ctx, "plane")
    rng = np.random.default_rng(8)
    for r in (F(1), F(2), F(5, 2)):
        prof = RadialProfile(ctx, rng.random(5))
        L, R, Mterm = suf1_diagnostic(v, prof, r)
        assert L <= 2 ** float(r) * (R + Mterm) + 1e-9


def test_suf1_zero_radius_term_bound():
    # profile = e_0 on the plane in d = 4: the zero-radius part is controlled
    # by the (sharp) transform bounds together with the intersection count
    ctx = FieldCtx(5, 4)
    v = build_variety(ctx, "plane")
    q, d, r = 5, 4, 2.0
    prof = RadialProfile.delta(ctx, 0)
    prof = RadialProfile(ctx, prof.coeffs / profile_lp_norm(prof, F(8, 5)))
    L, R, Mterm = suf1_diagnostic(v, prof, F(2))
    inter = zero_sphere_intersection(v)
    M0 = abs(prof.coeffs[0])
    bound = (
        q ** (r * d / 2) * M0**r * inter.count / q ** (d - 1)
        + q ** (r * (d - 2) / 2) * M0**r * v.cardinality / q ** (d - 1)
    )
    assert R <= bound + 1e-9
    assert Mterm == 0.0
    assert abs(L - R) < 1e-12


def test_suf1_normalization_flag():
    ctx = FieldCtx(5, 3)
    v = build_variety(ctx, "paraboloid")
    rng = np.random.default_rng(2)
    prof = RadialProfile(ctx, 7.0 * rng.random(5))
    p = F(3, 2)
    direct = suf1_diagnostic(v, prof, F(2), normalize_p=p)
    manual = RadialProfile(ctx, prof.coeffs / profile_lp_norm(prof, p))
    expected = suf1_diagnostic(v, manual, F(2))
    assert np.allclose(direct, expected, rtol=1e-12, atol=0)
