import math

import pytest

from apnlab.decomposition import t1_set
from apnlab.gf2n import build_any_field, build_field
from apnlab.trinomial import (
    TrinomialParams,
    beta_closed_form,
    build_f,
    is_apn_predicted,
    predicted_bent_count,
    predicted_walsh_values,
)
from apnlab.vbf import hyperplane_beta, is_apn


def test_params_validation():
    ctx = build_field(6)
    with pytest.raises(ValueError):
        TrinomialParams(ctx, 0)
    with pytest.raises(ValueError):
        TrinomialParams(ctx, 6)
    with pytest.raises(ValueError):
        TrinomialParams(build_any_field(5), 1)


@pytest.mark.parametrize("n,k", [(4, 1), (6, 1), (6, 2), (8, 3), (10, 7)])
def test_build_matches_definition(n, k):
    ctx = build_field(n)
    f = build_f(TrinomialParams(ctx, k))
    e = (1 << k) + 1
    assert f(0) == 0
    for x in ctx.elements():
        tr = ctx.trace_rel(x)
        want = (ctx.pow(x, e) if x else 0) ^ (ctx.pow(tr, e) if tr else 0)
        assert f(x) == want


def test_subfield_inputs_reduce_to_power_map():
    ctx = build_field(8)
    for k in (1, 2, 3):
        f = build_f(TrinomialParams(ctx, k))
        for x in ctx.subfield():
            assert f(x) == (ctx.pow(x, (1 << k) + 1) if x else 0)


def test_scaling_identity():
    # f(x g) = x^(2^k+1) f(g) for subfield scalars, any k
    ctx = build_field(8)
    for k in (1, 2, 5):
        f = build_f(TrinomialParams(ctx, k))
        e = (1 << k) + 1
        for a in ctx.subfield():
            for g in list(t1_set(ctx)) + [1]:
                lhs = f(ctx.mul(a, g))
                rhs = ctx.mul(ctx.pow(a, e) if a else 0, f(g))
                assert lhs == rhs


def test_nonvanishing_on_trace_one_part():
    # for APN parameters f never vanishes on T1 or at 1
    for n, k in ((4, 1), (8, 3)):
        ctx = build_field(n)
        f = build_f(TrinomialParams(ctx, k))
        assert f(1) != 0
        assert all(f(g) != 0 for g in t1_set(ctx))


def test_apn_prediction_frozen_cases():
    assert is_apn_predicted(2, 1) is True
    assert is_apn_predicted(3, 1) is False   # odd m
    assert is_apn_predicted(4, 2) is False   # gcd(2, 8) > 1
    assert is_apn_predicted(6, 5) is True


@pytest.mark.parametrize("n", [4, 6])
def test_apn_prediction_matches_measurement(n):
    ctx = build_field(n)
    for k in range(1, n):
        f = build_f(TrinomialParams(ctx, k))
        assert is_apn(f) == is_apn_predicted(ctx.m, k)


def test_beta_closed_form_subfield_branch():
    ctx = build_field(8)
    params = TrinomialParams(ctx, 1)
    for a in ctx.subfield():
        if a:
            assert beta_closed_form(params, a) == ctx.pow(a, -3)


def test_beta_closed_form_k1_simplification():
    # for k = 1 the label collapses to g / (a^3 tr(g^3)^2)
    ctx = build_field(8)
    params = TrinomialParams(ctx, 1)
    for g in t1_set(ctx):
        for a in (1, ctx.subfield()[2]):
            s = ctx.trace_rel(ctx.pow(g, 3))
            want = ctx.div(g, ctx.mul(ctx.pow(a, 3), ctx.mul(s, s)))
            assert beta_closed_form(params, ctx.mul(a, g)) == want


def test_beta_closed_form_equals_empirical_extraction():
    ctx = build_field(4)
    for k in (1, 3):
        params = TrinomialParams(ctx, k)
        f = build_f(params)
        for a in ctx.nonzero_elements():
            assert beta_closed_form(params, a) == hyperplane_beta(f, a)


def test_beta_closed_form_rejects_bad_parameters():
    with pytest.raises(ValueError):
        beta_closed_form(TrinomialParams(build_field(6), 1), 3)  # odd m
    with pytest.raises(ValueError):
        beta_closed_form(TrinomialParams(build_field(8), 2), 3)  # gcd > 1
    with pytest.raises(ValueError):
        beta_closed_form(TrinomialParams(build_field(8), 1), 0)


def test_predicted_counts():
    assert predicted_bent_count(2) == 10
    assert predicted_bent_count(4) == 170
    assert predicted_walsh_values(2) == {0, 4, -4, 8, -8}
    assert predicted_walsh_values(6) == {0, 64, -64, 128, -128}


def test_bent_set_is_complement_of_labels():
    # pinned by exhaustive computation: the non-bent directions are the
    # hyperplane labels themselves (a set closed under squaring, so the
    # predicted count is unaffected)
    from apnlab.vbf import bent_components, hyperplane_spectrum

    for n, k in ((4, 1), (4, 3)):
        ctx = build_field(n)
        f = build_f(TrinomialParams(ctx, k))
        labels = hyperplane_spectrum(f).labels()
        bent = bent_components(f)
        assert bent == sorted(set(ctx.nonzero_elements()) - labels)
        # the labels are closed under the field squaring map
        assert {ctx.mul(b, b) for b in labels} == labels
