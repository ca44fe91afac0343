"""NumPy implementations of the sweep kernels (fallback backend).

Contracts match apnlab._ckernels exactly; results are bit-identical.  The
kernels take plain arrays rather than field contexts so that either
backend stays importable on its own:

  * lut      uint32, length 2^n, lookup table of the function
  * exp2     uint32, length 2(2^n - 1), doubled exp table
  * logt     int64, length 2^n, log table (entry 0 unused)
  * tr1      uint8, length 2^n, absolute traces

Derivative-direction sweeps take [a_start, a_stop) so callers can
partition the range across workers; merges (max of maxima, sums of count
vectors, elementwise or of masks) are order independent.
"""

from __future__ import annotations

import numpy as np

BACKEND = "python"

_WALSH_CHUNK = 64


def _clmulmod(a: int, b: int, modulus: int, n: int) -> int:
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


def build_exp_table(n: int, modulus: int, generator: int) -> np.ndarray:
    """Powers generator^0 .. generator^(2^n - 2) as a uint32 array.

    Multiplication by a fixed element is GF(2)-linear, so the table is
    filled by repeated block doubling: given the first s powers, the next
    s are the image of those under multiplication by generator^s, applied
    as n masked column xors over the whole block at once.
    """
    size = (1 << n) - 1
    exp = np.zeros(size, dtype=np.uint32)
    exp[0] = 1
    filled = 1
    gpow = generator  # generator ** filled
    while filled < size:
        step = min(filled, size - filled)
        cols = [np.uint32(_clmulmod(gpow, 1 << j, modulus, n)) for j in range(n)]
        src = exp[:step]
        block = np.zeros(step, dtype=np.uint32)
        for j in range(n):
            block ^= np.where((src >> np.uint32(j)) & np.uint32(1), cols[j], np.uint32(0))
        exp[filled:filled + step] = block
        if step == filled and filled + step < size:
            gpow = _clmulmod(gpow, gpow, modulus, n)
        filled += step
    return exp


def delta_max(lut, a_start: int = 1, a_stop: int | None = None,
              abort_above: int = 0) -> int:
    """Largest difference-table row entry over directions in [a_start, a_stop).

    With abort_above > 0 the sweep stops at the first row maximum that
    exceeds it; the returned value is then just a witness above the bound,
    not the global maximum.
    """
    lut = np.ascontiguousarray(lut, dtype=np.uint32)
    size = lut.shape[0]
    if a_stop is None:
        a_stop = size
    idx = np.arange(size, dtype=np.intp)
    best = 0
    for a in range(a_start, a_stop):
        row = np.bincount((lut ^ lut[idx ^ a]).astype(np.intp), minlength=size)
        mx = int(row.max())
        if mx > best:
            best = mx
            if abort_above and best > abort_above:
                break
    return best


def _fwht_rows(s: np.ndarray) -> np.ndarray:
    """In-place-style fast Walsh-Hadamard transform along the last axis."""
    rows, size = s.shape
    h = 1
    while h < size:
        s = s.reshape(rows, -1, 2, h)
        s = np.stack((s[:, :, 0, :] + s[:, :, 1, :],
                      s[:, :, 0, :] - s[:, :, 1, :]), axis=2)
        h *= 2
    return s.reshape(rows, size)


def _component_signs(lut, exp2, logt, tr1, a_block) -> np.ndarray:
    """Sign vectors (-1)^tr1(A * lut[X]) for a block of directions A."""
    logf = logt[lut]
    zero = lut == 0
    v = exp2[logt[a_block][:, None] + logf[None, :]]
    v[:, zero] = 0
    return 1 - 2 * tr1[v].astype(np.int32)


def walsh_value_counts(lut, exp2, logt, tr1, a_start: int = 1,
                       a_stop: int | None = None) -> np.ndarray:
    """Histogram of the component transform values over directions in
    [a_start, a_stop) and all linear offsets.

    Returns int64 counts of length 2^(n+1) + 1; index = value + 2^n.
    """
    lut = np.ascontiguousarray(lut, dtype=np.uint32)
    size = lut.shape[0]
    if a_stop is None:
        a_stop = size
    counts = np.zeros(2 * size + 1, dtype=np.int64)
    for lo in range(a_start, a_stop, _WALSH_CHUNK):
        hi = min(lo + _WALSH_CHUNK, a_stop)
        block = np.arange(lo, hi, dtype=np.int64)
        spectra = _fwht_rows(_component_signs(lut, exp2, logt, tr1, block))
        counts += np.bincount((spectra.ravel() + size).astype(np.intp),
                              minlength=2 * size + 1)
    return counts


def bent_component_mask(lut, exp2, logt, tr1, target: int, a_start: int = 1,
                        a_stop: int | None = None) -> np.ndarray:
    """Boolean mask over directions A whose component function has all
    transform values equal to +-target."""
    lut = np.ascontiguousarray(lut, dtype=np.uint32)
    size = lut.shape[0]
    if a_stop is None:
        a_stop = size
    mask = np.zeros(size, dtype=bool)
    for lo in range(a_start, a_stop, _WALSH_CHUNK):
        hi = min(lo + _WALSH_CHUNK, a_stop)
        block = np.arange(lo, hi, dtype=np.int64)
        spectra = _fwht_rows(_component_signs(lut, exp2, logt, tr1, block))
        mask[lo:hi] = (np.abs(spectra) == target).all(axis=1)
    return mask
