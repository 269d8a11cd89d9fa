"""Bounded operators as dimension-checked complex matrices.

Everything spectral routes through the package's own decompositions: the
operator norm and positivity tests use the Hermitian eigensolver, while
singular values, rank, and pseudo-inverses come from one-sided column
rotations. No external decomposition is called anywhere in this module.
"""

from __future__ import annotations

import math

import numpy as np

from .errors import (
    DimMismatch,
    Inconsistent,
    IndexOutOfRange,
    NonSquare,
    NotInjective,
    NotInvertible,
    NotOrthonormalBasis,
)
from .hvec import HVec, inner, vnorm
from .numeric import DEFAULT_TOL, fro_norm, herm_eig, jacobi_svd

__all__ = [
    "HOp",
    "PartialMap",
    "explicit_op",
    "from_matrix",
    "apply",
    "compose",
    "add",
    "sub",
    "oscale",
    "oneg",
    "identity",
    "zero",
    "adjoint",
    "op_norm",
    "singular_values",
    "numerical_rank",
    "is_selfadjoint",
    "is_isometry",
    "is_unitary",
    "is_partial_isometry",
    "is_proj_op",
    "is_positive",
    "is_rank1",
    "loewner_leq",
    "sandwich",
    "vector_to_op",
    "op_to_vector",
    "butterfly",
    "classical_operator",
    "pm_inverse",
    "left_inverse",
    "is_invertible",
    "is_iso",
    "extend_from_set",
    "riesz_rep",
    "riesz_rep_sesqui",
    "unitary_between",
    "embed_left",
    "embed_right",
    "pair_vec",
    "one_dim_to_scalar",
    "scalar_to_one_dim",
    "vec1_to_scalar",
    "scalar_to_vec1",
]


class HOp:
    """An immutable complex matrix acting C^cols -> C^rows."""

    __slots__ = ("mat",)

    def __init__(self, mat):
        arr = np.array(mat, dtype=complex)
        if arr.ndim != 2 or arr.shape[0] < 1 or arr.shape[1] < 1:
            raise ValueError("an operator needs a rectangular, non-empty entry table")
        if not np.isfinite(arr).all():
            raise ValueError("operator entries must be finite")
        arr.setflags(write=False)
        self.mat = arr

    @property
    def rows(self):
        return int(self.mat.shape[0])

    @property
    def cols(self):
        return int(self.mat.shape[1])

    def __repr__(self):
        return "HOp(%dx%d)" % (self.rows, self.cols)

    def __add__(self, other):
        return add(self, other)

    def __sub__(self, other):
        return sub(self, other)

    def __neg__(self):
        return oneg(self)

    def __matmul__(self, other):
        return compose(self, other)


class PartialMap:
    """A partial function on indices: domain 0..dom-1 into 0..cod-1.

    images[x] is either None (undefined at x) or the image index.
    """

    __slots__ = ("dom", "cod", "images")

    def __init__(self, dom, cod, images):
        dom = int(dom)
        cod = int(cod)
        if dom < 1 or cod < 1:
            raise ValueError("domain and codomain sizes must be positive")
        images = tuple(None if i is None else int(i) for i in images)
        if len(images) != dom:
            raise ValueError("images must list one entry per domain point")
        for i in images:
            if i is not None and not 0 <= i < cod:
                raise IndexOutOfRange("image index %d outside 0..%d" % (i, cod - 1))
        self.dom = dom
        self.cod = cod
        self.images = images

    def __repr__(self):
        return "PartialMap(%d, %d, %r)" % (self.dom, self.cod, list(self.images))


def from_matrix(rows):
    return HOp(rows)


def explicit_op(m, n, entry):
    """Operator whose column a is determined by entry: coefficient b of the
    image of ket(a) is entry(b, a)."""
    m = int(m)
    n = int(n)
    if m < 1 or n < 1:
        raise ValueError("explicit_op needs positive dimensions")
    table = [[complex(entry(b, a)) for a in range(n)] for b in range(m)]
    return HOp(table)


def apply(a, x):
    if a.cols != x.dim:
        raise DimMismatch("apply: operator has %d columns, vector dim %d" % (a.cols, x.dim))
    return HVec(a.mat @ x.coeffs)


def compose(a, b):
    if a.cols != b.rows:
        raise DimMismatch("compose: %d columns vs %d rows" % (a.cols, b.rows))
    return HOp(a.mat @ b.mat)


def _same_shape(a, b, what):
    if a.rows != b.rows or a.cols != b.cols:
        raise DimMismatch(
            "%s needs equal shapes, got %dx%d and %dx%d" % (what, a.rows, a.cols, b.rows, b.cols)
        )


def add(a, b):
    _same_shape(a, b, "add")
    return HOp(a.mat + b.mat)


def sub(a, b):
    _same_shape(a, b, "sub")
    return HOp(a.mat - b.mat)


def oscale(c, a):
    return HOp(complex(c) * a.mat)


def oneg(a):
    return HOp(-a.mat)


def identity(n):
    return HOp(np.eye(int(n), dtype=complex))


def zero(m, n):
    return HOp(np.zeros((int(m), int(n)), dtype=complex))


def adjoint(a):
    return HOp(a.mat.conj().T)


def _require_square(a, what):
    if a.rows != a.cols:
        raise NonSquare("%s needs a square operator, got %dx%d" % (what, a.rows, a.cols))


def singular_values(a, tol=DEFAULT_TOL):
    """Ascending singular values of the operator's matrix.

    Computed by column rotations rather than by diagonalizing the explicit
    Gram matrix: forming A*A squares away half the precision, which is not
    survivable for the rank decisions built on these values.
    """
    _, s, _ = jacobi_svd(a.mat, tol)
    return s


def op_norm(a, tol=DEFAULT_TOL):
    """Largest singular value, as sqrt of the top eigenvalue of A*A."""
    gram = a.mat.conj().T @ a.mat
    w, _ = herm_eig(gram, tol)
    return math.sqrt(max(0.0, float(w[-1])))


def numerical_rank(a, tol=DEFAULT_TOL):
    s = singular_values(a, tol)
    smax = float(s[-1])
    if smax == 0.0:
        return 0
    return int(np.sum(s > tol.rank_tol * smax))


def _mat_close(m, n, tol):
    return fro_norm(m - n) <= tol.atol * max(1.0, fro_norm(m), fro_norm(n))


def is_selfadjoint(a, tol=DEFAULT_TOL):
    _require_square(a, "is_selfadjoint")
    return _mat_close(a.mat, a.mat.conj().T, tol)


def is_isometry(a, tol=DEFAULT_TOL):
    gram = a.mat.conj().T @ a.mat
    return _mat_close(gram, np.eye(a.cols), tol)


def is_unitary(a, tol=DEFAULT_TOL):
    if a.rows != a.cols:
        return False
    cogram = a.mat @ a.mat.conj().T
    return is_isometry(a, tol) and _mat_close(cogram, np.eye(a.rows), tol)


def is_partial_isometry(a, tol=DEFAULT_TOL):
    """Norm-preserving away from the kernel: every singular value that is
    numerically nonzero must sit at 1."""
    s = singular_values(a, tol)
    smax = float(s[-1])
    if smax == 0.0:
        return True
    cutoff = tol.rank_tol * smax
    live = s[s > cutoff]
    return bool(np.all(np.abs(live - 1.0) <= tol.rank_tol))


def is_proj_op(a, tol=DEFAULT_TOL):
    _require_square(a, "is_proj_op")
    if not _mat_close(a.mat, a.mat.conj().T, tol):
        return False
    return _mat_close(a.mat @ a.mat, a.mat, tol)


def is_positive(a, tol=DEFAULT_TOL):
    """Hermitian within atol and spectrum above -psd_tol.

    Complex positivity forces self-adjointness, so a non-Hermitian input
    is answered False rather than symmetrized.
    """
    _require_square(a, "is_positive")
    if not _mat_close(a.mat, a.mat.conj().T, tol):
        return False
    w, _ = herm_eig((a.mat + a.mat.conj().T) / 2.0, tol)
    return float(w[0]) >= -tol.psd_tol


def is_rank1(a, tol=DEFAULT_TOL):
    # the zero operator counts: its range is spanned by a single (zero) vector
    return numerical_rank(a, tol) <= 1


def loewner_leq(a, b, tol=DEFAULT_TOL):
    _require_square(a, "loewner_leq")
    _require_square(b, "loewner_leq")
    if a.rows != b.rows:
        raise DimMismatch("loewner_leq needs equal dims, got %d and %d" % (a.rows, b.rows))
    return is_positive(sub(b, a), tol)


def sandwich(a, b):
    _require_square(b, "sandwich")
    if a.cols != b.rows:
        raise DimMismatch("sandwich: frame has %d columns, middle is %dx%d" % (a.cols, b.rows, b.cols))
    return HOp(a.mat @ b.mat @ a.mat.conj().T)


def vector_to_op(psi):
    """The n x 1 column matrix of psi."""
    return HOp(psi.coeffs.reshape(-1, 1))


def op_to_vector(a):
    if a.cols != 1:
        raise DimMismatch("op_to_vector needs a single-column operator, got %d columns" % a.cols)
    return HVec(a.mat[:, 0])


def butterfly(psi, phi):
    """Outer product psi phi*; maps x to inner(phi, x) * psi."""
    return HOp(np.outer(psi.coeffs, phi.coeffs.conj()))


def classical_operator(pm):
    """Column x is ket(images[x]) where defined, zero where undefined."""
    out = np.zeros((pm.cod, pm.dom), dtype=complex)
    for x, target in enumerate(pm.images):
        if target is not None:
            out[target, x] = 1.0
    return HOp(out)


def pm_inverse(pm):
    """Partial inverse of an injective partial map."""
    back = {}
    for x, target in enumerate(pm.images):
        if target is None:
            continue
        if target in back:
            raise NotInjective("both %d and %d map to %d" % (back[target], x, target))
        back[target] = x
    images = [back.get(y) for y in range(pm.cod)]
    return PartialMap(pm.cod, pm.dom, images)


def _pseudo_inverse(a, tol):
    """Moore-Penrose style inverse: V diag(1/s) U* over the singular
    values above the rank cutoff, zero on the rest."""
    u, s, v = jacobi_svd(a.mat, tol)
    smax = float(s[-1]) if s.size else 0.0
    cutoff = tol.rank_tol * smax
    inv_s = np.where(s > cutoff, 1.0 / np.where(s > cutoff, s, 1.0), 0.0)
    return (v * inv_s) @ u.conj().T


def is_invertible(a, tol=DEFAULT_TOL):
    """Full column rank, so some B with B A = identity exists."""
    return numerical_rank(a, tol) == a.cols


def is_iso(a, tol=DEFAULT_TOL):
    return a.rows == a.cols and is_invertible(a, tol)


def left_inverse(a, tol=DEFAULT_TOL):
    """The canonical left inverse: identity on range(A), zero on its
    orthocomplement. A right inverse too whenever A is square."""
    if not is_invertible(a, tol):
        raise NotInvertible("operator has rank below its column count")
    return HOp(_pseudo_inverse(a, tol))


def extend_from_set(pairs, tol=DEFAULT_TOL):
    """Linear operator sending each s_i to image_i, zero off span{s_i}.

    Raises Inconsistent when the requested images contradict a linear
    dependency among the s_i (checked by residuals after the least-squares
    construction).
    """
    pairs = list(pairs)
    if not pairs:
        raise ValueError("extend_from_set needs at least one pair")
    n = pairs[0][0].dim
    m = pairs[0][1].dim
    for s, t in pairs:
        if s.dim != n or t.dim != m:
            raise DimMismatch("extension pairs must share domain and codomain dims")
    smat = np.column_stack([s.coeffs for s, _ in pairs])
    tmat = np.column_stack([t.coeffs for _, t in pairs])
    b = tmat @ _pseudo_inverse(HOp(smat), tol)
    residual_mat = b @ smat - tmat
    col_norms = np.sqrt((residual_mat.real ** 2 + residual_mat.imag ** 2).sum(axis=0))
    image_scale = max(1.0, max(vnorm(t) for _, t in pairs))
    worst = float(col_norms.max())
    if worst > tol.atol * image_scale:
        raise Inconsistent("images violate a dependency among the inputs (residual %g)" % worst)
    return HOp(b)


def riesz_rep(f, tol=DEFAULT_TOL):
    """The vector t with f(x) = inner(t, x); entrywise the conjugated row."""
    if f.rows != 1:
        raise DimMismatch("riesz_rep needs a functional (1 row), got %d rows" % f.rows)
    return HVec(f.mat[0, :].conj())


def riesz_rep_sesqui(p):
    """Operator A with inner(A e_a, f_b) equal to table entry (a, b).

    Unfolding the antilinear first slot gives A[b, a] = conj(P[a, b]), the
    conjugate transpose arrangement of the table.
    """
    return HOp(p.mat.conj().T)


def _check_onb(vectors, tol, what):
    if not vectors:
        raise NotOrthonormalBasis("%s: empty basis" % what)
    n = vectors[0].dim
    if len(vectors) != n:
        raise NotOrthonormalBasis("%s: %d vectors cannot span dimension %d" % (what, len(vectors), n))
    for i, u in enumerate(vectors):
        if u.dim != n:
            raise NotOrthonormalBasis("%s: mixed dimensions" % what)
        if abs(vnorm(u) - 1.0) > tol.atol:
            raise NotOrthonormalBasis("%s: vector %d has norm %g" % (what, i, vnorm(u)))
        for j in range(i + 1, len(vectors)):
            if abs(inner(u, vectors[j])) > tol.atol:
                raise NotOrthonormalBasis("%s: vectors %d and %d not orthogonal" % (what, i, j))


def unitary_between(e_basis, f_basis, tol=DEFAULT_TOL):
    """The unitary sending basis vector e_i to f_i, as a butterfly sum."""
    e_basis = list(e_basis)
    f_basis = list(f_basis)
    if len(e_basis) != len(f_basis):
        raise NotOrthonormalBasis("bases must have equal length")
    _check_onb(e_basis, tol, "source basis")
    _check_onb(f_basis, tol, "target basis")
    n = e_basis[0].dim
    total = np.zeros((f_basis[0].dim, n), dtype=complex)
    for e_i, f_i in zip(e_basis, f_basis):
        total += np.outer(f_i.coeffs, e_i.coeffs.conj())
    return HOp(total)


def embed_left(n, m):
    """Isometry x -> (x, 0) into the (n+m)-dimensional direct sum."""
    n = int(n)
    m = int(m)
    out = np.zeros((n + m, n), dtype=complex)
    out[:n, :] = np.eye(n)
    return HOp(out)


def embed_right(n, m):
    """Isometry y -> (0, y) into the (n+m)-dimensional direct sum."""
    n = int(n)
    m = int(m)
    out = np.zeros((n + m, m), dtype=complex)
    out[n:, :] = np.eye(m)
    return HOp(out)


def pair_vec(x, y):
    """(x, y) as one vector of dimension x.dim + y.dim."""
    return HVec(np.concatenate([x.coeffs, y.coeffs]))


def one_dim_to_scalar(a):
    if a.rows != 1 or a.cols != 1:
        raise DimMismatch("one_dim_to_scalar needs a 1x1 operator, got %dx%d" % (a.rows, a.cols))
    return complex(a.mat[0, 0])


def scalar_to_one_dim(c):
    return HOp([[complex(c)]])


def vec1_to_scalar(v):
    if v.dim != 1:
        raise DimMismatch("vec1_to_scalar needs dimension 1, got %d" % v.dim)
    return complex(v.coeffs[0])


def scalar_to_vec1(c):
    return HVec([complex(c)])
