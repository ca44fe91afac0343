"""The trinomial family X^(2^k+1) + tr(X)^(2^k+1) on GF(2^n), n = 2m.

APN exactly when m is even and gcd(k, n) = 1.  For those parameters the
derivative images are hyperplanes with a closed-form label, the component
spectrum takes values {0, +-2^m, +-2^(m+1)}, and the bent components are
everything outside the inverses of the hyperplane labels.  The family
satisfies the subfield scaling property for every k, APN or not.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .decomposition import decompose_trace
from .gf2n import Elem, FieldCtx
from .vbf import VBF, monomial_sum


@dataclass(frozen=True)
class TrinomialParams:
    ctx: FieldCtx
    k: int

    def __post_init__(self):
        if self.ctx.m is None:
            raise ValueError("the family needs an even degree n = 2m")
        if not 1 <= self.k < self.ctx.n:
            raise ValueError(f"k must satisfy 1 <= k < {self.ctx.n}")


def build_f(params: TrinomialParams) -> VBF:
    """LUT of X^(2^k+1) + tr(X)^(2^k+1).

    Expanding the trace power cancels the X^(2^k+1) term, leaving the
    three monomials below; both forms are computed and must agree.
    """
    ctx, k = params.ctx, params.k
    q = ctx.q
    e = (1 << k) + 1

    x = np.arange(ctx.order, dtype=np.int64)
    tr = (x ^ ctx.pow_vec(x, q).astype(np.int64)).astype(np.int64)
    direct = ctx.pow_vec(x, e).astype(np.uint32)
    direct ^= ctx.pow_vec(tr, e).astype(np.uint32)

    expanded = monomial_sum(ctx, [(1, e * q), (1, (1 << k) * q + 1), (1, (1 << k) + q)])
    if not np.array_equal(direct, expanded.lut):
        raise AssertionError("trinomial forms disagree; field tables corrupt")
    return expanded


def is_apn_predicted(m: int, k: int) -> bool:
    """m even and gcd(k, 2m) = 1."""
    return m % 2 == 0 and math.gcd(k, 2 * m) == 1


def beta_closed_form(params: TrinomialParams, A: Elem) -> Elem:
    """Closed-form hyperplane label of the derivative along A = a*g.

    Only meaningful for APN parameters: the derivation divides by
    tr(g^3) and tr(g^(2^k+1)), which are nonzero exactly when m is even
    and gcd(k, n) = 1.  Refuses other parameters rather than returning
    garbage.
    """
    ctx, k = params.ctx, params.k
    if not is_apn_predicted(ctx.m, k):
        raise ValueError("closed-form labels need APN parameters "
                         "(m even, gcd(k, n) = 1)")
    if A == 0:
        raise ValueError("direction must be nonzero")
    e = (1 << k) + 1
    a, g = decompose_trace(ctx, A)
    if g == 1:
        return ctx.pow(a, -e)
    s = ctx.trace_rel(ctx.pow(g, 3))
    t = ctx.trace_rel(ctx.pow(g, e))
    beta_g = ctx.mul(ctx.div(t, ctx.pow(s, e)), g ^ 1 ^ ctx.div(s, t))
    return ctx.mul(ctx.pow(a, -e), beta_g)


def predicted_bent_count(m: int) -> int:
    """2 (q^2 - 1) / 3 bent components, q = 2^m."""
    q = 1 << m
    return 2 * (q * q - 1) // 3


def predicted_walsh_values(m: int) -> set[int]:
    return {0, 1 << m, -(1 << m), 1 << (m + 1), -(1 << (m + 1))}
