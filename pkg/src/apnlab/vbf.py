"""Lookup-table analysis of vectorial Boolean functions on GF(2^n).

Derivatives and exhaustive differential uniformity, component spectra via
a fast transform (with the naive character sum kept as walsh_at, which
doubles as the cross-check oracle), hyperplane extraction for crooked
functions, bent components, the subfield scaling property, and the Gold
and Kim reference functions.

Sweeps over the derivative direction partition cleanly; the optional
threads argument fans the range out over a thread pool and merges with
order-independent reductions, so results never depend on the worker
count.  Difference tables are never materialized in full: the kernels
stream one row of counters at a time.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from . import kernels
from .gf2n import Elem, FieldCtx, elem_from_hex, elem_to_hex, field_from_modulus


class NotCrookedError(Exception):
    """A derivative is not 2-to-1 or its image is not a hyperplane."""


class VBF:
    """A function F -> F as a lookup table indexed by element encoding."""

    __slots__ = ("ctx", "lut")

    def __init__(self, ctx: FieldCtx, lut):
        lut = np.array(lut, dtype=np.uint32, copy=True, order="C")
        if lut.shape != (ctx.order,):
            raise ValueError(f"lookup table must have length {ctx.order}")
        if lut.max(initial=0) >= ctx.order:
            raise ValueError("lookup table entry out of field range")
        lut.flags.writeable = False
        self.ctx = ctx
        self.lut = lut

    def __call__(self, x: Elem) -> Elem:
        return int(self.lut[x])

    def __eq__(self, other):
        return (isinstance(other, VBF)
                and self.ctx.n == other.ctx.n
                and self.ctx.modulus == other.ctx.modulus
                and np.array_equal(self.lut, other.lut))

    def __hash__(self):
        return hash((self.ctx.n, self.ctx.modulus, self.lut.tobytes()))


def monomial_sum(ctx: FieldCtx, terms: list[tuple[Elem, int]]) -> VBF:
    """LUT of sum(coeff * X^exponent); exponents must be positive."""
    x = np.arange(ctx.order, dtype=np.int64)
    lut = np.zeros(ctx.order, dtype=np.uint32)
    for coeff, e in terms:
        if coeff == 0:
            continue
        lut ^= ctx.mul_vec(coeff, ctx.pow_vec(x, e)).astype(np.uint32)
    return VBF(ctx, lut)


def _ranges(start: int, stop: int, threads: int | None):
    if not threads or threads <= 1 or stop - start <= 1:
        return [(start, stop)]
    threads = min(threads, stop - start)
    width = (stop - start + threads - 1) // threads
    return [(lo, min(lo + width, stop)) for lo in range(start, stop, width)]


def _fan_out(fn, start: int, stop: int, threads: int | None):
    parts = _ranges(start, stop, threads)
    if len(parts) == 1:
        return [fn(*parts[0])]
    with ThreadPoolExecutor(max_workers=len(parts)) as pool:
        return list(pool.map(lambda r: fn(*r), parts))


# ---------------------------------------------------------------------------
# derivatives and differential properties
# ---------------------------------------------------------------------------

def derivative(f: VBF, A: Elem) -> VBF:
    """Normalized derivative X -> f(X) + f(X+A) + f(A) + f(0); fixes 0."""
    if A == 0:
        raise ValueError("derivative direction must be nonzero")
    idx = np.arange(f.ctx.order, dtype=np.intp)
    lut = f.lut ^ f.lut[idx ^ A] ^ np.uint32(f(A) ^ f(0))
    return VBF(f.ctx, lut)


def differential_uniformity(f: VBF, threads: int | None = None) -> int:
    """Exhaustive max over nonzero A, all B of #{X : f(X)+f(X+A) = B}."""
    parts = _fan_out(lambda lo, hi: kernels.delta_max(f.lut, lo, hi),
                     1, f.ctx.order, threads)
    return max(parts)


def is_apn(f: VBF, threads: int | None = None) -> bool:
    """Differential uniformity equals 2 (sweep aborts early once above 2)."""
    parts = _fan_out(lambda lo, hi: kernels.delta_max(f.lut, lo, hi, abort_above=2),
                     1, f.ctx.order, threads)
    return max(parts) == 2


def differential_spectrum(f: VBF) -> dict[int, int]:
    """Multiset {#solutions : A != 0, B} as value -> multiplicity."""
    size = f.ctx.order
    idx = np.arange(size, dtype=np.intp)
    agg = np.zeros(size + 1, dtype=np.int64)
    for a in range(1, size):
        row = np.bincount((f.lut ^ f.lut[idx ^ a]).astype(np.intp), minlength=size)
        agg += np.bincount(row, minlength=size + 1)
    return {int(v): int(c) for v, c in enumerate(agg) if c}


# ---------------------------------------------------------------------------
# component spectra
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class WalshSpectrum:
    """Transform value -> multiplicity over all (A, B) with A nonzero."""
    counts: dict[int, int]

    def values(self) -> set[int]:
        return set(self.counts)

    def total(self) -> int:
        return sum(self.counts.values())

    def power_sum(self) -> int:
        return sum(v * v * c for v, c in self.counts.items())

    def to_csv(self) -> str:
        lines = [f"{v},{c}" for v, c in sorted(self.counts.items())]
        return "\n".join(lines) + "\n"


def walsh_at(f: VBF, A: Elem, B: Elem) -> int:
    """Character sum over X of (-1)^tr1(A f(X) + B X); the naive path."""
    ctx = f.ctx
    x = np.arange(ctx.order, dtype=np.int64)
    v = ctx.mul_vec(A, f.lut.astype(np.int64)) ^ ctx.mul_vec(B, x)
    tr = ctx.tr1_table()[v.astype(np.intp)].astype(np.int64)
    return int(ctx.order - 2 * tr.sum())


def walsh_spectrum(f: VBF, threads: int | None = None) -> WalshSpectrum:
    """Aggregate spectrum via one fast transform per component.

    For fixed A the values over all B are the transform coefficients of
    the sign vector of tr1(A f(X)); B -> dual mask is a bijection, so the
    multiset over B is exactly the transform output multiset.
    """
    ctx = f.ctx
    parts = _fan_out(
        lambda lo, hi: kernels.walsh_value_counts(
            f.lut, ctx._exp2, ctx.log, ctx.tr1_table(), lo, hi),
        1, ctx.order, threads)
    counts = sum(parts)
    size = ctx.order
    return WalshSpectrum({int(v) - size: int(c)
                          for v, c in enumerate(counts) if c})


# ---------------------------------------------------------------------------
# hyperplane spectrum of crooked functions
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class HyperplaneSpectrum:
    """Hyperplane label beta -> multiplicity over derivative directions."""
    betas: dict[Elem, int]

    def labels(self) -> set[Elem]:
        return set(self.betas)

    def total(self) -> int:
        return sum(self.betas.values())

    def to_csv(self) -> str:
        lines = [f"{elem_to_hex(b)},{c}" for b, c in sorted(self.betas.items())]
        return "\n".join(lines) + "\n"


def _gf2_row_basis(values, width: int):
    """Greedy row-echelon basis (ints keyed by leading bit) of a value set.

    Returns None as soon as the rank reaches width, since callers only
    care about proper subspaces.
    """
    basis: dict[int, int] = {}
    for v in values:
        v = int(v)
        while v:
            lead = v.bit_length() - 1
            if lead in basis:
                v ^= basis[lead]
            else:
                basis[lead] = v
                if len(basis) == width:
                    return None
                break
    return basis


def hyperplane_beta(f: VBF, A: Elem) -> Elem:
    """The unique beta with tr1(beta * y) = 0 on the image of the
    derivative along A; NotCrookedError when no such hyperplane exists."""
    ctx = f.ctx
    n = ctx.n
    d = derivative(f, A)
    vals, cnt = np.unique(d.lut, return_counts=True)
    if len(vals) != ctx.order // 2 or cnt.min() != 2:
        raise NotCrookedError(f"derivative along {elem_to_hex(A)} is not 2-to-1")
    basis = _gf2_row_basis(vals, n)
    if basis is None or len(basis) != n - 1:
        raise NotCrookedError(f"derivative image along {elem_to_hex(A)} is not a hyperplane")

    # beta solves tr1(beta * b_i) = 0 for the basis rows; the bilinear form
    # is nondegenerate so the solution space has dimension exactly one
    tr1 = ctx.tr1_table()
    rows = []
    for b in basis.values():
        row = 0
        for j in range(n):
            if tr1[ctx.mul(b, 1 << j)]:
                row |= 1 << j
        rows.append(row)
    echelon = _gf2_row_basis(rows, n)
    if echelon is None or len(echelon) != n - 1:
        raise NotCrookedError("adjoint system is degenerate")
    free = next(c for c in range(n) if c not in echelon)
    beta = 1 << free
    for p in sorted(echelon):
        rest = echelon[p] ^ (1 << p)
        if (beta & rest).bit_count() & 1:
            beta |= 1 << p
    # by linearity beta kills the whole span; the span equals the image
    # because both have 2^(n-1) elements
    return beta


def hyperplane_spectrum(f: VBF) -> HyperplaneSpectrum:
    betas: dict[Elem, int] = {}
    for A in f.ctx.nonzero_elements():
        b = hyperplane_beta(f, A)
        betas[b] = betas.get(b, 0) + 1
    return HyperplaneSpectrum(dict(sorted(betas.items())))


# ---------------------------------------------------------------------------
# bent components and the subfield scaling property
# ---------------------------------------------------------------------------

def bent_components(f: VBF, threads: int | None = None) -> list[Elem]:
    """All A != 0 whose component tr1(A f(X)) has a flat +-2^(n/2)
    spectrum; empty for odd n since bentness needs even dimension."""
    ctx = f.ctx
    if ctx.n % 2 != 0:
        return []
    target = 1 << (ctx.n // 2)
    parts = _fan_out(
        lambda lo, hi: kernels.bent_component_mask(
            f.lut, ctx._exp2, ctx.log, ctx.tr1_table(), target, lo, hi),
        1, ctx.order, threads)
    mask = parts[0]
    for p in parts[1:]:
        mask = mask | p
    return [int(a) for a in np.nonzero(mask)[0]]


def subspace_property(f: VBF, k: int) -> bool:
    """f(a X) = a^(2^k+1) f(X) for every subfield scalar a (zero included)."""
    ctx = f.ctx
    if not 1 <= k < ctx.n:
        raise ValueError(f"k must satisfy 1 <= k < {ctx.n}")
    e = (1 << k) + 1
    x = np.arange(ctx.order, dtype=np.int64)
    for a in ctx.subfield():
        lhs = f.lut[ctx.mul_vec(a, x).astype(np.intp)]
        rhs = ctx.mul_vec(ctx.pow(a, e) if a else 0, f.lut.astype(np.int64))
        if not np.array_equal(lhs, rhs.astype(np.uint32)):
            return False
    return True


# ---------------------------------------------------------------------------
# reference functions
# ---------------------------------------------------------------------------

def gold(ctx: FieldCtx, k: int) -> VBF:
    """X^(2^k+1); APN exactly when gcd(k, n) = 1."""
    if not 1 <= k < ctx.n:
        raise ValueError(f"k must satisfy 1 <= k < {ctx.n}")
    return monomial_sum(ctx, [(1, (1 << k) + 1)])


def kim(ctx: FieldCtx) -> VBF:
    """X^3 + X^10 + A X^24 on GF(2^6).

    APN-ness depends on the coefficient: only some generators work, so A
    is the smallest full-order element for which the result is APN.
    """
    if ctx.n != 6:
        raise ValueError("the Kim function lives on GF(2^6)")
    group = ctx.order - 1
    for A in ctx.nonzero_elements():
        if math.gcd(int(ctx.log[A]), group) != 1:
            continue
        f = monomial_sum(ctx, [(1, 3), (1, 10), (A, 24)])
        if is_apn(f):
            return f
    raise RuntimeError("no generator coefficient yields an APN map")


# ---------------------------------------------------------------------------
# serialization
# ---------------------------------------------------------------------------

def vbf_to_json(f: VBF) -> dict:
    return {
        "n": f.ctx.n,
        "modulus": elem_to_hex(f.ctx.modulus),
        "lut": [elem_to_hex(int(v)) for v in f.lut],
    }


def vbf_from_json(payload: dict) -> VBF:
    n = int(payload["n"])
    ctx = field_from_modulus(n, elem_from_hex(payload["modulus"]))
    lut = [elem_from_hex(v) for v in payload["lut"]]
    return VBF(ctx, lut)
