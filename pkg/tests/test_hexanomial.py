import pytest

from apnlab.gf2n import build_field
from apnlab.decomposition import pq1_set
from apnlab.hexanomial import (
    HexParams,
    bruteforce_good_C,
    build_g,
    characterize_good_C,
    count_formula,
    enumerate_good_C,
    gamma_image,
    gamma_image_size,
    has_root_in_pq1,
    hex_report,
    p_eval,
    uniformity_matches,
)
from apnlab.vbf import differential_uniformity

TABLE3 = {
    (1, 1): 0,
    (2, 1): 4, (2, 2): 0,
    (3, 1): 18, (3, 2): 18, (3, 3): 0,
    (4, 1): 80, (4, 2): 96, (4, 3): 80, (4, 4): 0,
    (5, 1): 330, (5, 2): 330, (5, 3): 330, (5, 4): 330, (5, 5): 0,
    (6, 1): 1344, (6, 2): 1560, (6, 3): 1792, (6, 4): 1612, (6, 5): 1344, (6, 6): 0,
    (7, 1): 5418, (7, 2): 5418, (7, 3): 5418, (7, 4): 5418, (7, 5): 5418,
    (7, 6): 5418, (7, 7): 0,
}


# ---------------------------------------------------------------------------
# quadrinomial evaluation and the root oracle
# ---------------------------------------------------------------------------

def test_p_eval_constant_term():
    ctx = build_field(6)
    for c in (0, 1, 9, 42):
        assert p_eval(ctx, 2, c, 0) == 1


@pytest.mark.parametrize("n", [4, 6])
def test_p_eval_vanishes_at_one_iff_subfield_coefficient(n):
    ctx = build_field(n)
    for c in ctx.elements():
        assert (p_eval(ctx, 1, c, 1) == 0) == ctx.in_subfield(c)


def test_p_eval_conjugation():
    # raising to the q-th power conjugates the coefficient and the point
    ctx = build_field(6)
    q = ctx.q
    for c in (3, 17, 40):
        cq = ctx.pow(c, q)
        for u in pq1_set(ctx):
            lhs = ctx.pow(p_eval(ctx, 2, c, u), q) if p_eval(ctx, 2, c, u) else 0
            rhs = p_eval(ctx, 2, cq, ctx.pow(u, q))
            assert lhs == rhs


@pytest.mark.parametrize("n", [4, 6])
def test_roots_for_subfield_coefficients_and_k_equal_m(n):
    ctx = build_field(n)
    for c in ctx.subfield():
        assert has_root_in_pq1(ctx, 1, c)
    for c in ctx.elements():
        assert has_root_in_pq1(ctx, ctx.m, c)


def test_root_count_frozen_smallest_even_case():
    # m = 2, k = 1: twelve of the sixteen coefficients admit a circle root
    ctx = build_field(4)
    bad = [c for c in ctx.elements() if has_root_in_pq1(ctx, 1, c)]
    assert len(bad) == 12


@pytest.mark.parametrize("n", [4, 6])
def test_bruteforce_list_matches_per_element_oracle(n):
    ctx = build_field(n)
    for k in range(1, n):
        want = [c for c in ctx.elements() if not has_root_in_pq1(ctx, k, c)]
        assert bruteforce_good_C(ctx, k) == want


# ---------------------------------------------------------------------------
# the power-map image on the subfield
# ---------------------------------------------------------------------------

def test_gamma_image_size_frozen_cases():
    assert gamma_image_size(5, 1) == 21   # 32 - 33/3
    assert gamma_image_size(4, 2) == 10   # 16 - 15*2/5
    assert gamma_image_size(2, 2) == 2    # 4 - 5*2/5


@pytest.mark.parametrize("m", [1, 2, 3, 4, 5, 6])
def test_gamma_image_enumeration_matches_formula(m):
    ctx = build_field(2 * m)
    for k in range(1, m + 1):
        assert len(gamma_image(ctx, m, k)) == gamma_image_size(m, k)


def test_gamma_image_direct_context_route():
    # an even m can also be computed in a degree-m field directly
    for m, k in ((4, 1), (4, 2), (6, 3)):
        small = build_field(m)
        big = build_field(2 * m)
        assert len(gamma_image(small, m, k)) == len(gamma_image(big, m, k))


def test_gamma_image_context_mismatch():
    with pytest.raises(ValueError):
        gamma_image(build_field(6), 4, 1)


# ---------------------------------------------------------------------------
# characterization, enumeration, count
# ---------------------------------------------------------------------------

@pytest.mark.parametrize("m", [1, 2, 3, 4])
def test_characterization_equals_root_oracle(m):
    ctx = build_field(2 * m)
    for k in range(1, 2 * m):
        for c in ctx.elements():
            assert characterize_good_C(ctx, k, c) == (not has_root_in_pq1(ctx, k, c))


@pytest.mark.parametrize("m", [5, 6])
def test_characterization_equals_root_oracle_larger(m):
    # same equivalence, with the vectorized sweep as the oracle side
    ctx = build_field(2 * m)
    for k in range(1, 2 * m):
        good = set(bruteforce_good_C(ctx, k))
        for c in ctx.elements():
            assert characterize_good_C(ctx, k, c) == (c in good), (m, k, c)


def test_characterization_polarity_pin():
    # the (m, k) = (2, 1) case that pins the membership polarity: exactly
    # the four coefficients without a circle root are declared good
    ctx = build_field(4)
    good = [c for c in ctx.elements() if characterize_good_C(ctx, 1, c)]
    assert good == [c for c in ctx.elements() if not has_root_in_pq1(ctx, 1, c)]
    assert len(good) == 4


def test_characterization_rejects_subfield_and_k_equal_m():
    ctx = build_field(8)
    for c in ctx.subfield():
        assert not characterize_good_C(ctx, 1, c)
    for c in (0, 1, 77, 200):
        assert not characterize_good_C(ctx, ctx.m, c)


@pytest.mark.parametrize("m", [1, 2, 3, 4])
def test_enumeration_equals_bruteforce(m):
    ctx = build_field(2 * m)
    for k in range(1, 2 * m):
        assert enumerate_good_C(ctx, k) == bruteforce_good_C(ctx, k)


def test_count_formula_reproduces_published_table():
    for (m, k), want in TABLE3.items():
        assert count_formula(m, k) == want


def test_good_coefficients_exist_iff_k_differs_from_m():
    # the existence criterion behind the count: nonzero exactly off the
    # diagonal, for every k below 2m
    for m in range(1, 11):
        for k in range(1, 2 * m):
            assert (count_formula(m, k) > 0) == (k != m), (m, k)


def test_count_formula_validation():
    with pytest.raises(ValueError):
        count_formula(3, 6)
    with pytest.raises(ValueError):
        count_formula(3, 0)
    with pytest.raises(ValueError):
        count_formula(0, 1)


def test_three_way_agreement_m7_row():
    # beyond the published triangle the three routes still agree
    ctx = build_field(14)
    for k in range(1, 8):
        report = hex_report(ctx, k)
        assert report.consistent(), (7, k)
        assert report.n_formula == TABLE3[(7, k)]


# ---------------------------------------------------------------------------
# the hexanomial itself
# ---------------------------------------------------------------------------

def test_build_g_rejects_subfield_a():
    ctx = build_field(4)
    with pytest.raises(ValueError):
        HexParams(ctx, 1, 2, A=1)


def test_default_a_is_generator():
    ctx = build_field(4)
    params = HexParams(ctx, 1, 2)
    assert params.coefficient_a() == ctx.generator
    assert not ctx.in_subfield(params.coefficient_a())


def test_build_g_matches_term_sum():
    ctx = build_field(6)
    k, c = 1, 37
    a = ctx.generator
    f = build_g(HexParams(ctx, k, c, a))
    q, kk = ctx.q, 1 << k
    cq = ctx.pow(c, q)
    for x in ctx.elements():
        if x == 0:
            assert f(0) == 0
            continue
        want = (ctx.pow(x, kk + 1) ^ ctx.pow(x, q + 1)
                ^ ctx.mul(c, ctx.pow(x, kk * q + 1))
                ^ ctx.mul(cq, ctx.pow(x, kk + q))
                ^ ctx.mul(a, ctx.pow(x, kk * (q + 1)))
                ^ ctx.pow(x, (kk + 1) * q))
        assert f(x) == want


def test_good_coefficients_give_apn_m2():
    ctx = build_field(4)
    for c in enumerate_good_C(ctx, 1):
        delta, expected, ok = uniformity_matches(ctx, 1, c)
        assert ok and delta == 2 == expected


def test_good_coefficient_uniformity_m4_k2():
    ctx = build_field(8)
    good = enumerate_good_C(ctx, 2)
    delta, expected, ok = uniformity_matches(ctx, 2, good[0])
    assert ok and delta == 4 == expected


def test_bad_coefficient_measures_without_claims():
    ctx = build_field(6)
    bad = next(c for c in ctx.elements() if has_root_in_pq1(ctx, 1, c))
    delta = differential_uniformity(build_g(HexParams(ctx, 1, bad)))
    assert delta >= 2  # no published claim either way; just measure


def test_enumeration_work_is_quadratic_in_subfield_size():
    # operation count, not wall clock: per trace-1 part the constructive
    # route touches the power-map image once plus at most q - 1 surviving
    # inverses, so the total stays within 2 q^2 primitive operations
    from apnlab.decomposition import t1_set

    for m in (3, 4, 5, 6):
        ctx = build_field(2 * m)
        q = ctx.q
        for k in (1, m - 1 if m > 1 else 1):
            if k == m:
                continue
            image = gamma_image(ctx, m, k)
            operations = 0
            emitted = 0
            for h in t1_set(ctx):
                if ctx.frobenius(h, k) ^ h == 1:
                    continue
                operations += len(image) + (q - 1)  # forbidden set + scan of K*
                emitted += q - 1
            assert operations <= 2 * q * q
            assert len(enumerate_good_C(ctx, k)) <= emitted


def test_hex_report_payload():
    ctx = build_field(4)
    report = hex_report(ctx, 1)
    assert report.consistent()
    payload = report.to_json()
    assert payload["m"] == 2 and payload["k"] == 1
    assert payload["count_formula"] == payload["count_enumerated"] == 4
    assert payload["count_bruteforce"] == 4
    assert len(payload["coefficients"]) == 4
    assert all(isinstance(c, str) for c in payload["coefficients"])
