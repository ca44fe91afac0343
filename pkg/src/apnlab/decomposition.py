"""Two decompositions of GF(2^n)* and the subsets that drive the counts.

With q = 2^m, K = GF(2^m) and F = GF(2^n), every nonzero X factors
uniquely as X = x*g with x in K* and g in T1 ∪ {1}, where T1 is the set
of elements of relative trace one (trace decomposition), and as X = x*u
with u in the cyclic subgroup P of order q + 1 (polar decomposition; the
representative is pinned by taking x as the square root in K of the norm
X^(q+1), which is well defined since squaring is a bijection).

phi: X -> X^(q-1) and psi: X -> X / tr(X) restrict to mutually inverse
bijections between T1 and P \\ {1}.  The subsets Z_{k,eps} of T1 and the
quotient sets built from them obey exact gcd cardinality laws; those laws
and the closed forms for gcd(2^d +- 1, 2^e + 1) are what make the
hexanomial coefficient count purely arithmetic.

All returned sets are sorted by integer encoding so output is diffable.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .gf2n import Elem, FieldCtx, elem_to_hex


def t1_set(ctx: FieldCtx) -> list[Elem]:
    """Elements of relative trace 1, ascending; cardinality 2^m."""
    m = ctx.m
    if m is None:
        raise ValueError("trace decomposition needs an even degree")
    x = np.arange(ctx.order, dtype=np.int64)
    tr = x ^ ctx.pow_vec(x, 1 << m).astype(np.int64)
    return [int(v) for v in np.nonzero(tr == 1)[0]]


def pq1_set(ctx: FieldCtx) -> list[Elem]:
    """The cyclic subgroup {X^(q-1)} of order q + 1, ascending."""
    q = ctx.q
    step = q - 1
    elems = {int(ctx.exp[(i * step) % (ctx.order - 1)]) for i in range(q + 1)}
    return sorted(elems)


def phi(ctx: FieldCtx, X: Elem) -> Elem:
    """X^(q-1); bijects T1 onto the unit circle minus 1."""
    if X == 0:
        raise ValueError("phi is undefined at zero")
    return ctx.pow(X, ctx.q - 1)


def psi(ctx: FieldCtx, X: Elem) -> Elem:
    """X / tr(X); defined off the subfield, lands in T1."""
    t = ctx.trace_rel(X)
    if t == 0:
        raise ValueError("psi needs nonzero relative trace")
    return ctx.mul(X, ctx.inv(t))


def phi_inv(ctx: FieldCtx, u: Elem) -> Elem:
    """Inverse of phi restricted to the unit circle minus 1."""
    q = ctx.q
    if u == 0 or u == 1 or ctx.pow(u, q + 1) != 1:
        raise ValueError("phi_inv needs an element of the unit circle other than 1")
    return ctx.pow(psi(ctx, u), q // 2)


def psi_inv(ctx: FieldCtx, g: Elem) -> Elem:
    """Inverse of psi restricted to T1: g^((q-1)q/2)."""
    q = ctx.q
    if ctx.trace_rel(g) != 1:
        raise ValueError("psi_inv needs an element of trace 1")
    return ctx.pow(g, (q - 1) * q // 2)


def decompose_trace(ctx: FieldCtx, X: Elem) -> tuple[Elem, Elem]:
    """Unique factorization X = x*g with x in K* and g in T1 ∪ {1}."""
    if X == 0:
        raise ValueError("zero has no trace decomposition")
    t = ctx.trace_rel(X)
    if t == 0:
        return X, 1
    return t, ctx.mul(X, ctx.inv(t))


def decompose_polar(ctx: FieldCtx, X: Elem) -> tuple[Elem, Elem]:
    """Factorization X = x*u with x in K* the square root of the norm and
    u on the unit circle."""
    if X == 0:
        raise ValueError("zero has no polar decomposition")
    q = ctx.q
    norm = ctx.pow(X, q + 1)
    x = ctx.pow(norm, q // 2)
    return x, ctx.mul(X, ctx.inv(x))


@dataclass(frozen=True)
class ZSet:
    """Elements g of T1 with g^(2^k) + g = eps, sorted ascending."""
    k: int
    eps: int
    elements: tuple[Elem, ...]

    def __len__(self):
        return len(self.elements)


def z_set(ctx: FieldCtx, k: int, eps: int) -> ZSet:
    _check_k(ctx, k)
    if eps not in (0, 1):
        raise ValueError("eps must be 0 or 1")
    elems = tuple(g for g in t1_set(ctx) if ctx.frobenius(g, k) ^ g == eps)
    return ZSet(k=k, eps=eps, elements=elems)


def c0_set(ctx: FieldCtx, k: int) -> list[Elem]:
    """{ (g^(2^k+1) + g) / (g^(2^k) + g) : g in T1, g^(2^k) != g }, sorted."""
    _check_k(ctx, k)
    e = (1 << k) + 1
    out = set()
    for g in t1_set(ctx):
        den = ctx.frobenius(g, k) ^ g
        if den == 0:
            continue
        out.add(ctx.div(ctx.pow(g, e) ^ g, den))
    return sorted(out)


def d1_set(ctx: FieldCtx, k: int) -> list[Elem]:
    """{ (g^(2^k+1) + 1) / (g^(2^k) + g + 1) : g in T1, g^(2^k) + g != 1 }, sorted."""
    _check_k(ctx, k)
    e = (1 << k) + 1
    out = set()
    for g in t1_set(ctx):
        den = ctx.frobenius(g, k) ^ g ^ 1
        if den == 0:
            continue
        out.add(ctx.div(ctx.pow(g, e) ^ 1, den))
    return sorted(out)


def _check_k(ctx: FieldCtx, k: int) -> None:
    # k is never reduced mod n: the subsets genuinely depend on k itself
    if not 1 <= k < ctx.n:
        raise ValueError(f"k must satisfy 1 <= k < {ctx.n}, got {k}")


def two_adic_val(k: int) -> int:
    """Exponent of the largest power of 2 dividing k."""
    if k <= 0:
        raise ValueError("positive integers only")
    return (k & -k).bit_length() - 1


def gcd_pow2(sign_d: int, d: int, sign_e: int, e: int) -> int:
    """gcd(2^d + sign_d, 2^e + sign_e) by closed form, no big-int gcd.

    For the mixed and plus/plus cases the quotients of Mersenne-type
    numbers below are exact; the minus/minus case is the classical
    2^gcd(d,e) - 1.
    """
    if d < 1 or e < 1:
        raise ValueError("exponents must be positive")
    if sign_d not in (-1, 1) or sign_e not in (-1, 1):
        raise ValueError("signs must be +1 or -1")
    if sign_d == -1 and sign_e == -1:
        return (1 << math.gcd(d, e)) - 1
    if sign_d == -1:  # gcd(2^d - 1, 2^e + 1)
        return ((1 << math.gcd(2 * e, d)) - 1) // ((1 << math.gcd(e, d)) - 1)
    if sign_e == -1:  # gcd(2^d + 1, 2^e - 1), symmetric to the previous case
        return gcd_pow2(-1, e, 1, d)
    num = ((1 << math.gcd(e, d)) - 1) * ((1 << math.gcd(2 * e, 2 * d)) - 1)
    den = ((1 << math.gcd(2 * e, d)) - 1) * ((1 << math.gcd(e, 2 * d)) - 1)
    return num // den


def set_to_json(ctx: FieldCtx, elements) -> dict:
    """JSON payload for any element set: hex elements plus field identity."""
    return {
        "n": ctx.n,
        "modulus": elem_to_hex(ctx.modulus),
        "elements": [elem_to_hex(int(x)) for x in sorted(elements)],
    }


# ---------------------------------------------------------------------------
# identity suite (exhaustive over T1 for one k); the CLI `lemmas` command
# and the acceptance tests both run this
# ---------------------------------------------------------------------------

def identity_suite(ctx: FieldCtx, k: int) -> dict[str, bool]:
    """Exhaustive checks of the trace identities and subset laws for one k.

    Returns an ordered mapping check-name -> bool; admissible k is
    1 <= k < n.
    """
    _check_k(ctx, k)
    m = ctx.m
    if m is None:
        raise ValueError("identity suite needs an even degree")
    q = ctx.q
    n = ctx.n
    e = (1 << k) + 1
    t1 = t1_set(ctx)
    results: dict[str, bool] = {}

    # tr(g^(2^k+1)) = g^(2^k) + g + 1 on T1
    results["trace_of_power"] = all(
        ctx.trace_rel(ctx.pow(g, e)) == (ctx.frobenius(g, k) ^ g ^ 1) for g in t1)

    # g^(2^k+1) = tr(g^(2^k+1)) g + tr(g^3) + 1 on T1
    results["power_affine_form"] = all(
        ctx.pow(g, e) == (ctx.mul(ctx.trace_rel(ctx.pow(g, e)), g)
                          ^ ctx.trace_rel(ctx.pow(g, 3)) ^ 1)
        for g in t1)

    # closed gcd forms agree with integer gcd, and one of the pair is 1
    ok = True
    for d in range(1, 17):
        for f in range(1, 17):
            gm = gcd_pow2(-1, d, 1, f)
            gp = gcd_pow2(1, d, 1, f)
            ok &= gm == math.gcd((1 << d) - 1, (1 << f) + 1)
            ok &= gp == math.gcd((1 << d) + 1, (1 << f) + 1)
            ok &= (gm > 1) == (two_adic_val(d) > two_adic_val(f))
            ok &= (gp > 1) == (two_adic_val(d) == two_adic_val(f))
            ok &= 1 in (gm, gp)
    results["gcd_closed_forms"] = ok

    # trace into GF(2^d), d = gcd(m, k), detects gcd(2^k+1, q+1) = 1
    d = math.gcd(m, k)
    want = 1 if math.gcd(e, q + 1) == 1 else 0
    results["subfield_trace_of_power"] = all(
        ctx.trace_abs(ctx.pow(g, e), d) == want for g in t1)

    # absolute trace of g^(2^k+1) is the parity of m + k
    parity = (m + k) & 1
    results["absolute_trace_parity"] = all(
        ctx.trace_abs(ctx.pow(g, e), 1) == parity for g in t1)

    # images of Z_{k,eps} under phi are root-of-unity subgroups of the
    # stated orders, with the matching cardinalities
    pq1 = pq1_set(ctx)
    ok = True
    for eps, gc in ((0, math.gcd((1 << k) - 1, q + 1)),
                    (1, math.gcd((1 << k) + 1, q + 1))):
        z = z_set(ctx, k, eps)
        ok &= len(z) == gc - 1
        image = {phi(ctx, g) for g in z.elements} | {1}
        subgroup = {u for u in pq1 if ctx.pow(u, gc) == 1}
        ok &= image == subgroup
    results["unity_root_subsets"] = ok

    # for gcd(k, n) = 1 the trace of g^(2^k+1) vanishes exactly on the two
    # cube roots of unity outside GF(2), and only when m is odd
    if math.gcd(k, n) == 1:
        vanish = {g for g in t1 if ctx.trace_rel(ctx.pow(g, e)) == 0}
        if m % 2 == 1:
            cubes = {g for g in ctx.nonzero_elements()
                     if ctx.pow(g, 3) == 1 and g != 1}
            expected = cubes
        else:
            expected = set()
        results["vanishing_trace_locus"] = vanish == expected

    # quotient sets: subsets of T1, exact cardinality, fullness criteria
    gm = math.gcd((1 << k) - 1, q + 1)
    gp = math.gcd((1 << k) + 1, q + 1)
    c0 = c0_set(ctx, k)
    d1 = d1_set(ctx, k)
    t1s = set(t1)
    ok = set(c0) <= t1s and set(d1) <= t1s
    ok &= len(c0) == (q + 1) // gm - 1
    ok &= (set(c0) == t1s) == (gm == 1)
    ok &= (set(d1) == t1s) == (gp == 1)
    results["quotient_sets"] = ok

    return results
