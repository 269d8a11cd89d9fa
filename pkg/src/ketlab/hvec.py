"""Finite-dimensional ell2 vectors.

A ket is a fixed-length tuple of complex coefficients indexed 0..dim-1.
The inner product follows the physics convention: antilinear in the first
argument, linear in the second.
"""

from __future__ import annotations

import math

import numpy as np

from .errors import DimMismatch, IndexOutOfRange

__all__ = [
    "HVec",
    "ket",
    "inner",
    "vnorm",
    "vadd",
    "vsub",
    "vscale",
    "vneg",
    "trunc",
]


class HVec:
    """An immutable complex vector with at least one coefficient."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs):
        arr = np.array(coeffs, dtype=complex)
        if arr.ndim != 1 or arr.size < 1:
            raise ValueError("a vector needs a one-dimensional, non-empty coefficient list")
        if not np.isfinite(arr).all():
            raise ValueError("vector coefficients must be finite")
        arr.setflags(write=False)
        self.coeffs = arr

    @property
    def dim(self):
        return int(self.coeffs.size)

    def __repr__(self):
        inside = ", ".join(repr(c) for c in self.coeffs.tolist())
        return "HVec([%s])" % inside

    # arithmetic sugar, delegating to the module functions
    def __add__(self, other):
        return vadd(self, other)

    def __sub__(self, other):
        return vsub(self, other)

    def __neg__(self):
        return vneg(self)

    def __mul__(self, scalar):
        return vscale(scalar, self)

    __rmul__ = __mul__


def _same_dim(x, y, what):
    if x.dim != y.dim:
        raise DimMismatch("%s needs equal dims, got %d and %d" % (what, x.dim, y.dim))


def ket(i, n):
    """Canonical basis vector i of dimension n."""
    i = int(i)
    n = int(n)
    if not 0 <= i < n:
        raise IndexOutOfRange("ket index %d outside 0..%d" % (i, n - 1))
    c = np.zeros(n, dtype=complex)
    c[i] = 1.0
    return HVec(c)


def inner(x, y):
    """Sum of conj(x_k) * y_k; antilinear in x."""
    _same_dim(x, y, "inner")
    return complex(np.vdot(x.coeffs, y.coeffs))


def vnorm(x):
    """Euclidean norm, always a nonnegative float."""
    return math.sqrt(float((x.coeffs.real ** 2 + x.coeffs.imag ** 2).sum()))


def vadd(x, y):
    _same_dim(x, y, "vadd")
    return HVec(x.coeffs + y.coeffs)


def vsub(x, y):
    _same_dim(x, y, "vsub")
    return HVec(x.coeffs - y.coeffs)


def vscale(c, x):
    return HVec(complex(c) * x.coeffs)


def vneg(x):
    return HVec(-x.coeffs)


def trunc(keep, x):
    """Zero every coefficient whose index is not in the set keep.

    keep is any iterable of integer indices inside 0..dim-1; duplicates are
    harmless.
    """
    mask = np.zeros(x.dim, dtype=bool)
    for k in keep:
        k = int(k)
        if not 0 <= k < x.dim:
            raise IndexOutOfRange("trunc index %d outside 0..%d" % (k, x.dim - 1))
        mask[k] = True
    out = np.where(mask, x.coeffs, 0.0 + 0.0j)
    return HVec(out)
