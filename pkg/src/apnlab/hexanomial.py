"""Budaghyan-Carlet hexanomials and their admissible coefficients.

The hexanomial g built from (C, k, A) is differentially 2^gcd(k,m)
uniform whenever the quadrinomial X^(2^k+1) + C X^(2^k) + C^q X + 1 has
no root on the unit circle of order q + 1.  This module provides three
independent routes to the set of such C:

  * has_root_in_pq1 / bruteforce_good_C: direct evaluation over the circle;
  * characterize_good_C / enumerate_good_C: the trace-decomposition test
    through the image of x -> x^(2^k+1) + x on the subfield, costing
    O(q^2) field operations for the whole list;
  * count_formula: the purely arithmetic count N(m, k).

The characterization verdict is pinned to agree with the brute-force
oracle (no root <=> good); the test suite asserts that equivalence
exhaustively.  Good C exist exactly when k != m.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .decomposition import decompose_trace, pq1_set, t1_set
from .gf2n import Elem, FieldCtx, elem_to_hex
from .vbf import VBF, differential_uniformity, monomial_sum


def p_eval(ctx: FieldCtx, k: int, C: Elem, X: Elem) -> Elem:
    """X^(2^k+1) + C X^(2^k) + C^q X + 1."""
    _check_k(ctx, k)
    q = ctx.q
    cq = ctx.pow(C, q) if C else 0
    xk = ctx.pow(X, 1 << k) if X else 0
    xk1 = ctx.mul(xk, X)
    return xk1 ^ ctx.mul(C, xk) ^ ctx.mul(cq, X) ^ 1


def has_root_in_pq1(ctx: FieldCtx, k: int, C: Elem) -> bool:
    """Brute-force oracle: does the quadrinomial vanish on the circle?"""
    return any(p_eval(ctx, k, C, u) == 0 for u in pq1_set(ctx))


def bruteforce_good_C(ctx: FieldCtx, k: int) -> list[Elem]:
    """All C without a circle root, by sweeping every (C, u) pair."""
    _check_k(ctx, k)
    q = ctx.q
    c = np.arange(ctx.order, dtype=np.int64)
    cq = ctx.pow_vec(c, q).astype(np.int64)
    bad = np.zeros(ctx.order, dtype=bool)
    for u in pq1_set(ctx):
        uk = ctx.pow(u, 1 << k)
        const = ctx.mul(uk, u) ^ 1
        vals = ctx.mul_vec(c, uk) ^ ctx.mul_vec(cq, u) ^ const
        bad |= vals == 0
    return [int(v) for v in np.nonzero(~bad)[0]]


def gamma_image(ctx: FieldCtx, m: int, k: int) -> list[Elem]:
    """Image of x -> x^(2^k+1) + x over GF(2^m), sorted.

    Accepts either a degree-m context (the map runs over the whole field)
    or a degree-2m context (it runs over the embedded subfield); odd m is
    only reachable through the latter.
    """
    if k < 1:
        raise ValueError("k must be positive")
    if ctx.n == 2 * m:
        domain = ctx.subfield()
    elif ctx.n == m:
        domain = ctx.elements()
    else:
        raise ValueError(f"context degree {ctx.n} matches neither m nor 2m")
    e = (1 << k) + 1
    return sorted({ctx.pow(x, e) ^ x if x else 0 for x in domain})


def gamma_image_size(m: int, k: int) -> int:
    """Closed-form image size; both branch divisions are exact."""
    if m < 1 or k < 1:
        raise ValueError("m and k must be positive")
    d = math.gcd(k, m)
    q = 1 << m
    half = 1 << (d - 1)
    if (m // d) % 2 == 1:
        return q - (q + 1) * half // ((1 << d) + 1)
    return q - (q - 1) * half // ((1 << d) + 1)


@lru_cache(maxsize=None)
def _gamma_image_set(ctx: FieldCtx, k: int) -> frozenset[Elem]:
    return frozenset(gamma_image(ctx, ctx.m, k))


def characterize_good_C(ctx: FieldCtx, k: int, C: Elem) -> bool:
    """Closed-form test that the quadrinomial has NO circle root.

    Bad cases: k = m (every C fails), C in the subfield (root at 1), and
    trace-1 parts h with h^(2^k) + h = 1 (the scaled power map becomes a
    permutation, so some circle point always hits).  Otherwise C is good
    exactly when (h^2 + h + 1/b) / T^(2^(n-k)+1) avoids the image of
    x -> x^(2^k+1) + x, where C^q + 1 = b h and T = h^(2^k) + h + 1.
    """
    _check_k(ctx, k)
    m = ctx.m
    if k == m:
        return False
    if ctx.in_subfield(C):
        return False
    B = ctx.pow(C, ctx.q) ^ 1
    if ctx.in_subfield(B):
        # B in K <=> C in K, already excluded
        raise RuntimeError("trace decomposition broke an internal invariant")
    b, h = decompose_trace(ctx, B)
    t = ctx.frobenius(h, k) ^ h
    if t == 1:
        return False
    a_h = ctx.pow(t ^ 1, (1 << (ctx.n - k)) + 1)
    # congruent exponent form, kept as a tables sanity check
    if a_h != ctx.pow(t ^ 1, ((1 << (ctx.n - k)) * ((1 << k) + 1)) % (ctx.order - 1)):
        raise AssertionError("exponent reduction mismatch")
    b_h = ctx.mul(h, h) ^ h
    val = ctx.div(b_h ^ ctx.inv(b), a_h)
    return val not in _gamma_image_set(ctx, k)


def enumerate_good_C(ctx: FieldCtx, k: int) -> list[Elem]:
    """Constructive listing of all good C, sorted and duplicate free.

    For each trace-1 part h outside the degenerate set, the inverses 1/b
    that fail are exactly an affine image of the power-map image; every
    surviving b yields C = b (h + 1) + 1, inverting C^q + 1 = b h.  Each
    (b, h) pair produces a distinct C, but the result is deduplicated
    defensively anyway.
    """
    _check_k(ctx, k)
    m = ctx.m
    if k == m:
        return []
    gamma = np.array(gamma_image(ctx, m, k), dtype=np.int64)
    kstar = np.array([x for x in ctx.subfield() if x], dtype=np.int64)
    binv_to_b = {int(x): ctx.inv(int(x)) for x in kstar}
    out: set[Elem] = set()
    for h in t1_set(ctx):
        t = ctx.frobenius(h, k) ^ h
        if t == 1:
            continue
        a_h = ctx.pow(t ^ 1, (1 << (ctx.n - k)) + 1)
        b_h = ctx.mul(h, h) ^ h
        forbidden = np.zeros(ctx.order, dtype=bool)
        forbidden[ctx.mul_vec(a_h, gamma) ^ np.int64(b_h)] = True
        forbidden[0] = True
        for binv in kstar[~forbidden[kstar]]:
            b = binv_to_b[int(binv)]
            out.add(ctx.mul(b, h ^ 1) ^ 1)
    return sorted(out)


def count_formula(m: int, k: int) -> int:
    """The arithmetic coefficient count N(m, k) for 1 <= k < 2m.

    When gcd(k, m) = 1 the count collapses to (q-2)(q+1)/3 for odd m and
    q(q-1)/3 for even m; that special form is asserted against the
    general one.
    """
    if m < 1 or not 1 <= k < 2 * m:
        raise ValueError("need m >= 1 and 1 <= k < 2m")
    q = 1 << m
    gp = math.gcd((1 << k) + 1, q + 1)
    gm = math.gcd((1 << k) - 1, q + 1)
    n_mk = (q - gp + 1) * (q - gamma_image_size(m, k) - 1) + (q + 1) // gm - gp
    if math.gcd(k, m) == 1:
        special = (q - 2) * (q + 1) // 3 if m % 2 else q * (q - 1) // 3
        if n_mk != special:
            raise AssertionError(f"count forms disagree at (m={m}, k={k})")
    return n_mk


@dataclass(frozen=True)
class HexParams:
    ctx: FieldCtx
    k: int
    C: Elem
    A: Elem | None = None

    def __post_init__(self):
        _check_k(self.ctx, self.k)
        if self.A is not None and self.ctx.in_subfield(self.A):
            raise ValueError("A must lie outside the subfield")

    def coefficient_a(self) -> Elem:
        if self.A is not None:
            return self.A
        # the generator has full order > q - 1, so it is never in K
        return self.ctx.generator


def build_g(params: HexParams) -> VBF:
    """LUT of the six-term polynomial
    X(X^(2^k) + X^q + C X^(2^k q)) + X^(2^k)(C^q X^q + A X^(2^k q)) + X^((2^k+1)q)."""
    ctx, k, C = params.ctx, params.k, params.C
    a = params.coefficient_a()
    q = ctx.q
    kk = 1 << k
    cq = ctx.pow(C, q) if C else 0
    return monomial_sum(ctx, [
        (1, kk + 1),
        (1, q + 1),
        (C, kk * q + 1),
        (cq, kk + q),
        (a, kk * (q + 1)),
        (1, (kk + 1) * q),
    ])


@dataclass(frozen=True)
class HexReport:
    """Per (m, k) record of the three independent counts and the list."""
    m: int
    k: int
    n_formula: int
    n_enumerated: int
    n_bruteforce: int
    coefficients: tuple[Elem, ...]

    def consistent(self) -> bool:
        return (self.n_formula == self.n_enumerated == self.n_bruteforce
                == len(self.coefficients))

    def to_json(self) -> dict:
        return {
            "m": self.m,
            "k": self.k,
            "count_formula": self.n_formula,
            "count_enumerated": self.n_enumerated,
            "count_bruteforce": self.n_bruteforce,
            "coefficients": [elem_to_hex(c) for c in self.coefficients],
        }


def hex_report(ctx: FieldCtx, k: int) -> HexReport:
    """Run all three routes for one (m, k) and bundle the results."""
    enumerated = enumerate_good_C(ctx, k)
    brute = bruteforce_good_C(ctx, k)
    return HexReport(
        m=ctx.m,
        k=k,
        n_formula=count_formula(ctx.m, k),
        n_enumerated=len(enumerated),
        n_bruteforce=len(brute),
        coefficients=tuple(enumerated),
    )


def uniformity_matches(ctx: FieldCtx, k: int, C: Elem,
                       threads: int | None = None) -> tuple[int, int, bool]:
    """(measured delta, expected 2^gcd(k,m), equal) for one good C."""
    delta = differential_uniformity(build_g(HexParams(ctx, k, C)), threads=threads)
    expected = 1 << math.gcd(k, ctx.m)
    return delta, expected, delta == expected


def _check_k(ctx: FieldCtx, k: int) -> None:
    if ctx.m is None:
        raise ValueError("hexanomials need an even degree n = 2m")
    if not 1 <= k < ctx.n:
        raise ValueError(f"k must satisfy 1 <= k < {ctx.n}, got {k}")
