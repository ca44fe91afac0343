"""Arithmetic in GF(2^n) with its index-2 subfield GF(2^m), n = 2m.

Field elements are plain Python ints in [0, 2^n): bit i is the coefficient
of X^i in the polynomial basis, so 0 and 1 are the additive and
multiplicative identities.  A FieldCtx fixes the modulus (always the
lexicographically smallest irreducible polynomial of the degree, so all
outputs are reproducible bit for bit), a generator (the smallest element
of full multiplicative order) and exp/log tables for O(1) multiplication.

Contexts are immutable after construction and safe to share across
threads; every operation is a pure function of (ctx, inputs).  Elements
serialize as lowercase hex of the integer encoding.

Even degrees are the primary citizens (the subfield structure needs
n = 2m); build_any_field also accepts odd degrees for generic lookup
table analysis that never touches the relative trace.
"""

from __future__ import annotations

import os
from functools import lru_cache

import numpy as np

from . import kernels

Elem = int

DEGREE_CAP_ENV = "APNLAB_MAX_N"
_DEFAULT_DEGREE_CAP = 24


def elem_to_hex(x: Elem) -> str:
    """Serialize an element as lowercase hex (the wire format everywhere)."""
    if x < 0:
        raise ValueError("field elements are non-negative")
    return format(x, "x")


def elem_from_hex(s: str) -> Elem:
    return int(s, 16)


# ---------------------------------------------------------------------------
# GF(2)[X] helpers on integer-encoded polynomials
# ---------------------------------------------------------------------------

def _pmulmod(a: int, b: int, modulus: int, n: int) -> int:
    """Carry-less multiply reduced modulo a degree-n polynomial."""
    hi = 1 << n
    r = 0
    while b:
        if b & 1:
            r ^= a
        b >>= 1
        a <<= 1
        if a & hi:
            a ^= modulus
    return r


def _pdeg(p: int) -> int:
    return p.bit_length() - 1


def _pgcd(a: int, b: int) -> int:
    while b:
        while a and _pdeg(a) >= _pdeg(b):
            a ^= b << (_pdeg(a) - _pdeg(b))
        a, b = b, a
    return a


def _prime_factors(v: int) -> list[int]:
    out = []
    d = 2
    while d * d <= v:
        if v % d == 0:
            out.append(d)
            while v % d == 0:
                v //= d
        d += 1
    if v > 1:
        out.append(v)
    return out


def _x_frob(j: int, modulus: int, n: int) -> int:
    """X^(2^j) mod modulus."""
    t = 2
    for _ in range(j):
        t = _pmulmod(t, t, modulus, n)
    return t


def is_irreducible(p: int, n: int) -> bool:
    """Rabin irreducibility test for a degree-n polynomial over GF(2)."""
    if _pdeg(p) != n:
        return False
    if _x_frob(n, p, n) != 2:
        return False
    for r in _prime_factors(n):
        if _pgcd(_x_frob(n // r, p, n) ^ 2, p) != 1:
            return False
    return True


@lru_cache(maxsize=None)
def _smallest_irreducible(n: int) -> int:
    # the constant term of an irreducible polynomial is 1, so step by 2
    for c in range((1 << n) + 1, 1 << (n + 1), 2):
        if is_irreducible(c, n):
            return c
    raise RuntimeError(f"no irreducible polynomial of degree {n}")


def _fpow(a: int, e: int, modulus: int, n: int) -> int:
    r = 1
    while e:
        if e & 1:
            r = _pmulmod(r, a, modulus, n)
        a = _pmulmod(a, a, modulus, n)
        e >>= 1
    return r


def _smallest_generator(n: int, modulus: int) -> int:
    group = (1 << n) - 1
    checks = [group // p for p in _prime_factors(group)]
    for g in range(2, 1 << n):
        if all(_fpow(g, e, modulus, n) != 1 for e in checks):
            return g
    raise RuntimeError(f"no generator found for degree {n}")


# ---------------------------------------------------------------------------
# field context
# ---------------------------------------------------------------------------

class FieldCtx:
    """GF(2^n) with exp/log tables and, for even n, the subfield GF(2^m).

    Attributes:
        n: extension degree over GF(2).
        m: half degree n // 2, or None when n is odd (odd contexts only
           support operations that need no subfield).
        modulus: integer-encoded irreducible polynomial of degree n.
        generator: fixed generator of the multiplicative group.
        order: 2^n.
        exp: uint32 array of the 2^n - 1 generator powers.
        log: int64 array mapping nonzero elements to exponents.
    """

    __slots__ = ("n", "m", "modulus", "generator", "order", "exp", "log",
                 "_exp2", "_tr1", "_subfield")

    def __init__(self, n: int, modulus: int, generator: int, exp: np.ndarray):
        self.n = n
        self.m = n // 2 if n % 2 == 0 else None
        self.modulus = modulus
        self.generator = generator
        self.order = 1 << n

        exp = np.ascontiguousarray(exp, dtype=np.uint32)
        if exp.shape != (self.order - 1,) or exp[0] != 1:
            raise ValueError("exp table has wrong shape")
        seen = np.zeros(self.order, dtype=bool)
        seen[exp] = True
        if int(seen.sum()) != self.order - 1 or seen[0]:
            raise ValueError(
                f"generator {generator} does not have order 2^{n}-1 "
                f"(modulus {modulus:#x} reducible or generator wrong)")

        log = np.zeros(self.order, dtype=np.int64)
        log[exp] = np.arange(self.order - 1, dtype=np.int64)
        exp2 = np.concatenate([exp, exp])

        for arr in (exp, log, exp2):
            arr.flags.writeable = False
        self.exp = exp
        self.log = log
        self._exp2 = exp2
        # computed up front so the context never mutates after construction
        self._tr1 = self._build_tr1()
        self._subfield = self._build_subfield() if self.m is not None else None

    def __repr__(self):
        return f"FieldCtx(n={self.n}, modulus={self.modulus:#x}, generator={self.generator})"

    @property
    def q(self) -> int:
        """Subfield order 2^m."""
        return 1 << self._require_even()

    def _require_even(self) -> int:
        if self.m is None:
            raise ValueError(f"operation needs an even degree, got n={self.n}")
        return self.m

    def elements(self) -> range:
        return range(self.order)

    def nonzero_elements(self) -> range:
        return range(1, self.order)

    # -- scalar operations --------------------------------------------------

    @staticmethod
    def add(a: Elem, b: Elem) -> Elem:
        return a ^ b

    def mul(self, a: Elem, b: Elem) -> Elem:
        if a == 0 or b == 0:
            return 0
        return int(self._exp2[self.log[a] + self.log[b]])

    def inv(self, a: Elem) -> Elem:
        if a == 0:
            raise ZeroDivisionError("inversion of zero")
        return int(self.exp[(self.order - 1 - self.log[a]) % (self.order - 1)])

    def div(self, a: Elem, b: Elem) -> Elem:
        return self.mul(a, self.inv(b))

    def pow(self, a: Elem, e: int) -> Elem:
        """a^e; for nonzero a the exponent is reduced mod 2^n - 1.

        0^0 and negative powers of 0 are domain errors.
        """
        if a == 0:
            if e == 0:
                raise ValueError("0^0 is not defined here")
            if e < 0:
                raise ZeroDivisionError("negative power of zero")
            return 0
        return int(self.exp[(int(self.log[a]) * e) % (self.order - 1)])

    def frobenius(self, a: Elem, e: int) -> Elem:
        """a^(2^e) for 0 <= e < n."""
        if not 0 <= e < self.n:
            raise ValueError(f"frobenius exponent must satisfy 0 <= e < {self.n}; reduce mod n")
        if a == 0:
            return 0
        return self.pow(a, 1 << e)

    def trace_rel(self, X: Elem) -> Elem:
        """Relative trace X + X^(2^m) onto the subfield."""
        m = self._require_even()
        if X == 0:
            return 0
        return X ^ self.pow(X, 1 << m)

    def trace_abs(self, X: Elem, d: int = 1) -> Elem:
        """Trace X + X^(2^d) + X^(2^2d) + ... into GF(2^d); d must divide n."""
        if d <= 0 or self.n % d != 0:
            raise ValueError(f"{d} does not divide the degree {self.n}")
        acc = 0
        t = X
        for _ in range(self.n // d):
            acc ^= t
            t = self.pow(t, 1 << d) if t else 0
        return acc

    def in_subfield(self, X: Elem) -> bool:
        m = self._require_even()
        if X == 0:
            return True
        return self.pow(X, 1 << m) == X

    def subfield(self) -> tuple[Elem, ...]:
        """All 2^m elements of the subfield, ascending."""
        self._require_even()
        return self._subfield

    def _build_subfield(self) -> tuple[Elem, ...]:
        q = 1 << self.m
        step = self.order - 1 if q == 2 else (self.order - 1) // (q - 1)
        elems = {0, 1} | {int(self.exp[(i * step) % (self.order - 1)])
                          for i in range(q - 1)}
        return tuple(sorted(elems))

    # -- vectorized operations over uint32 arrays ---------------------------

    def mul_vec(self, a, b) -> np.ndarray:
        """Elementwise product; either side may be a scalar or an array."""
        a = np.asarray(a)
        b = np.asarray(b)
        out = self._exp2[self.log[a] + self.log[b]]
        zero = (a == 0) | (b == 0)
        if np.ndim(out) == 0:
            return np.uint32(0) if zero else out
        out[np.broadcast_to(zero, out.shape)] = 0
        return out

    def pow_vec(self, a, e: int) -> np.ndarray:
        """Elementwise a^e for a positive exponent (zeros map to zero)."""
        if e <= 0:
            raise ValueError("pow_vec needs a positive exponent")
        a = np.asarray(a)
        ered = e % (self.order - 1)
        if ered == 0:
            ered = self.order - 1  # a^(2^n - 1) = 1 for nonzero a
        out = self.exp[(self.log[a] * ered) % (self.order - 1)]
        out[a == 0] = 0
        return out

    def tr1_table(self) -> np.ndarray:
        """uint8 table of the absolute trace of every element."""
        return self._tr1

    def _build_tr1(self) -> np.ndarray:
        x = np.arange(self.order, dtype=np.int64)
        acc = x.copy()
        t = x
        for _ in range(self.n - 1):
            t = self.mul_vec(t, t).astype(np.int64)
            acc ^= t
        tab = acc.astype(np.uint8)
        tab.flags.writeable = False
        return tab


# ---------------------------------------------------------------------------
# constructors
# ---------------------------------------------------------------------------

def _degree_cap() -> int:
    return int(os.environ.get(DEGREE_CAP_ENV, str(_DEFAULT_DEGREE_CAP)))


@lru_cache(maxsize=None)
def _build(n: int, modulus: int | None = None) -> FieldCtx:
    if modulus is None:
        modulus = _smallest_irreducible(n)
    elif not is_irreducible(modulus, n):
        raise ValueError(f"{modulus:#x} is not irreducible of degree {n}")
    generator = _smallest_generator(n, modulus)
    exp = kernels.build_exp_table(n, modulus, generator)
    return FieldCtx(n, modulus, generator, exp)


def build_field(n: int) -> FieldCtx:
    """Canonical GF(2^n) for even n (the subfield GF(2^m) is always wanted
    downstream, so odd degrees are rejected here)."""
    if n % 2 != 0:
        raise ValueError(f"degree must be even (n = 2m), got {n}")
    return build_any_field(n)


def build_any_field(n: int) -> FieldCtx:
    """GF(2^n) for any degree >= 2, odd degrees included."""
    cap = _degree_cap()
    if not 2 <= n <= cap:
        raise ValueError(
            f"degree {n} out of range [2, {cap}] "
            f"(raise the cap with {DEGREE_CAP_ENV} at your own risk)")
    return _build(n)


def field_from_modulus(n: int, modulus: int) -> FieldCtx:
    """GF(2^n) over an explicit irreducible modulus (file interop)."""
    cap = _degree_cap()
    if not 2 <= n <= cap:
        raise ValueError(f"degree {n} out of range [2, {cap}]")
    if modulus == _smallest_irreducible(n):
        return _build(n)  # share the canonical context
    return _build(n, modulus)
