"""Closed subspaces as canonical orthonormal spans, and their orthomodular
lattice.

A Subspace always stores an orthonormal basis of itself (possibly empty),
so containment and equality are cheap residual tests and the invariants can
be checked on any value. Complements ride on the projector's eigenstructure
rather than on ambient-basis completion, which keeps them stable when the
generating set was nearly degenerate.
"""

from __future__ import annotations

import numpy as np

from .errors import DimMismatch, NonSquare, NotOrthonormalBasis
from .hop import HOp, apply, sub as op_sub, zero as op_zero
from .hvec import HVec, inner, ket, vnorm
from .numeric import DEFAULT_TOL, herm_eig, jacobi_svd

__all__ = [
    "Subspace",
    "gram_schmidt0",
    "span",
    "top",
    "bot",
    "sdim",
    "contains",
    "leq",
    "seq",
    "ssup",
    "sinf",
    "ocomplement",
    "sSup",
    "sInf",
    "proj",
    "image",
    "kernel",
    "eigenspace",
    "subspace_times",
]


class Subspace:
    """A closed subspace of C^ambient, stored as an orthonormal basis."""

    __slots__ = ("ambient", "onb")

    def __init__(self, ambient, onb, tol=DEFAULT_TOL):
        ambient = int(ambient)
        if ambient < 1:
            raise ValueError("ambient dimension must be positive")
        onb = tuple(onb)
        if len(onb) > ambient:
            raise NotOrthonormalBasis(
                "%d orthonormal vectors cannot fit in dimension %d" % (len(onb), ambient)
            )
        for i, u in enumerate(onb):
            if u.dim != ambient:
                raise NotOrthonormalBasis("basis vector %d has dim %d, ambient is %d" % (i, u.dim, ambient))
            if abs(vnorm(u) - 1.0) > tol.atol:
                raise NotOrthonormalBasis("basis vector %d has norm %.3g" % (i, vnorm(u)))
            for j in range(i + 1, len(onb)):
                if abs(inner(u, onb[j])) > tol.atol:
                    raise NotOrthonormalBasis("basis vectors %d and %d are not orthogonal" % (i, j))
        self.ambient = ambient
        self.onb = onb

    def __repr__(self):
        return "Subspace(dim %d of C^%d)" % (len(self.onb), self.ambient)


def gram_schmidt0(vs, tol=DEFAULT_TOL):
    """Orthonormalize, dropping dependent or near-zero vectors.

    Modified Gram-Schmidt with one full re-orthogonalization pass; a vector
    is dropped when its residual shrinks below rank_tol relative to
    max(1, its original norm).
    """
    vs = list(vs)
    if not vs:
        return []
    n = vs[0].dim
    out = []
    for v in vs:
        if v.dim != n:
            raise DimMismatch("gram_schmidt0: mixed dims %d and %d" % (n, v.dim))
        orig = vnorm(v)
        w = v.coeffs.astype(complex, copy=True)
        for _ in range(2):
            for u in out:
                w = w - np.vdot(u, w) * u
        nrm = float(np.sqrt((w.real ** 2 + w.imag ** 2).sum()))
        if nrm <= tol.rank_tol * max(1.0, orig):
            continue
        out.append(w / nrm)
    return [HVec(u) for u in out]


def span(vs, ambient, tol=DEFAULT_TOL):
    """The (closed) span of the given vectors inside C^ambient."""
    ambient = int(ambient)
    vs = list(vs)
    for v in vs:
        if v.dim != ambient:
            raise DimMismatch("span: vector dim %d does not match ambient %d" % (v.dim, ambient))
    return Subspace(ambient, gram_schmidt0(vs, tol), tol)


def top(n):
    n = int(n)
    return Subspace(n, [ket(i, n) for i in range(n)])


def bot(n):
    return Subspace(int(n), [])


def sdim(s):
    return len(s.onb)


def _residual(s, v):
    w = v.coeffs.astype(complex, copy=True)
    for u in s.onb:
        w = w - np.vdot(u.coeffs, w) * u.coeffs
    return float(np.sqrt((w.real ** 2 + w.imag ** 2).sum()))


def contains(s, v, tol=DEFAULT_TOL):
    """Membership by projection residual."""
    if v.dim != s.ambient:
        raise DimMismatch("contains: vector dim %d vs ambient %d" % (v.dim, s.ambient))
    return _residual(s, v) <= tol.atol * max(1.0, vnorm(v))


def _same_ambient(s, t, what):
    if s.ambient != t.ambient:
        raise DimMismatch("%s needs equal ambients, got %d and %d" % (what, s.ambient, t.ambient))


def leq(s, t, tol=DEFAULT_TOL):
    _same_ambient(s, t, "leq")
    return all(contains(t, u, tol) for u in s.onb)


def seq(s, t, tol=DEFAULT_TOL):
    return leq(s, t, tol) and leq(t, s, tol)


def ssup(s, t, tol=DEFAULT_TOL):
    """Closed sum: span the two bases together."""
    _same_ambient(s, t, "ssup")
    return span(list(s.onb) + list(t.onb), s.ambient, tol)


def ocomplement(s, tol=DEFAULT_TOL):
    """Orthogonal complement, read off the projector's eigenstructure.

    The projector's spectrum is {0, 1}; the complement is the span of the
    eigenvectors on the 0 side (cut at 1/2)."""
    n = s.ambient
    k = len(s.onb)
    if k == 0:
        return top(n)
    if k == n:
        return bot(n)
    w, v = herm_eig(proj(s).mat, tol)
    cols = [HVec(v[:, j]) for j in range(n) if w[j] < 0.5]
    return span(cols, n, tol)


def sinf(s, t, tol=DEFAULT_TOL):
    """Intersection, via the De Morgan route through complements."""
    _same_ambient(s, t, "sinf")
    return ocomplement(ssup(ocomplement(s, tol), ocomplement(t, tol), tol), tol)


def sSup(spaces, ambient, tol=DEFAULT_TOL):
    acc = bot(ambient)
    for s in spaces:
        acc = ssup(acc, s, tol)
    return acc


def sInf(spaces, ambient, tol=DEFAULT_TOL):
    acc = top(ambient)
    for s in spaces:
        acc = sinf(acc, s, tol)
    return acc


def proj(s):
    """Orthogonal projector onto s: the sum of self-butterflies u u*."""
    n = s.ambient
    if not s.onb:
        return op_zero(n, n)
    basis = np.column_stack([u.coeffs for u in s.onb])
    return HOp(basis @ basis.conj().T)


def image(a, s, tol=DEFAULT_TOL):
    """Forward image A S, a subspace of the codomain."""
    if a.cols != s.ambient:
        raise DimMismatch("image: operator has %d columns, ambient is %d" % (a.cols, s.ambient))
    return span([apply(a, u) for u in s.onb], a.rows, tol)


def kernel(a, tol=DEFAULT_TOL):
    """Null space: A*A eigenvectors whose eigenvalue is below the rank
    cutoff, obtained as right singular directions so exact dependencies
    are not drowned by Gram-formation rounding."""
    _, s, v = jacobi_svd(a.mat, tol)
    w = s * s
    wmax = float(w[-1])
    cutoff = (tol.rank_tol ** 2) * max(1.0, wmax)
    cols = [HVec(v[:, j]) for j in range(a.cols) if w[j] <= cutoff]
    return span(cols, a.cols, tol)


def eigenspace(a_scalar, a, tol=DEFAULT_TOL):
    """Eigenvectors of a square operator at the given scalar."""
    if a.rows != a.cols:
        raise NonSquare("eigenspace needs a square operator, got %dx%d" % (a.rows, a.cols))
    shifted = op_sub(a, HOp(complex(a_scalar) * np.eye(a.rows, dtype=complex)))
    return kernel(shifted, tol)


def subspace_times(s, t, tol=DEFAULT_TOL):
    """Product subspace inside the direct sum C^(n+m); dimensions add."""
    n, m = s.ambient, t.ambient
    vecs = []
    pad_m = np.zeros(m, dtype=complex)
    pad_n = np.zeros(n, dtype=complex)
    for u in s.onb:
        vecs.append(HVec(np.concatenate([u.coeffs, pad_m])))
    for u in t.onb:
        vecs.append(HVec(np.concatenate([pad_n, u.coeffs])))
    return span(vecs, n + m, tol)
