"""Scalar comparisons, the tolerance policy, deterministic randomness, and
a self-contained Hermitian eigensolver.

Scalars are Python complex numbers (two 64-bit floats). Matrices at this
layer are plain numpy arrays; the typed wrappers live one level up. The
eigensolver is the only nontrivial numerics in the package and everything
rank- or spectrum-shaped (operator norms, kernels, positivity, complements)
is built on it, so it is written here once and tested against an external
reference implementation in the test suite only.
"""

from __future__ import annotations

import math

import numpy as np

from .errors import NoConvergence, NonSquare, NotHermitian

__all__ = [
    "Tolerance",
    "DEFAULT_TOL",
    "RngStream",
    "complex_leq",
    "approx_eq",
    "herm_eig",
    "fro_norm",
]


class Tolerance:
    """Numerical comparison policy threaded through the package.

    atol      absolute slack for equality, containment and symmetry tests
    rank_tol  relative threshold for rank decisions and basis drops
    psd_tol   eigenvalue slack below zero still accepted as positive
    """

    __slots__ = ("atol", "rank_tol", "psd_tol")

    def __init__(self, atol=1e-9, rank_tol=1e-8, psd_tol=1e-8):
        for label, value in (("atol", atol), ("rank_tol", rank_tol), ("psd_tol", psd_tol)):
            value = float(value)
            if not math.isfinite(value) or value <= 0.0:
                raise ValueError("%s must be finite and positive, got %r" % (label, value))
        self.atol = float(atol)
        self.rank_tol = float(rank_tol)
        self.psd_tol = float(psd_tol)

    def __repr__(self):
        return "Tolerance(atol=%g, rank_tol=%g, psd_tol=%g)" % (
            self.atol,
            self.rank_tol,
            self.psd_tol,
        )


DEFAULT_TOL = Tolerance()


def complex_leq(x, y, tol=DEFAULT_TOL):
    """Partial order on complex scalars.

    x <= y holds when the real parts are ordered and the imaginary parts
    agree (within atol); complex numbers with different imaginary parts are
    incomparable.
    """
    x = complex(x)
    y = complex(y)
    return x.real <= y.real and abs(x.imag - y.imag) <= tol.atol


def approx_eq(x, y, tol=DEFAULT_TOL):
    """|x - y| <= atol * max(1, |x|, |y|)."""
    x = complex(x)
    y = complex(y)
    return abs(x - y) <= tol.atol * max(1.0, abs(x), abs(y))


_MASK64 = (1 << 64) - 1
_GAMMA = 0x9E3779B97F4A7C15
_MIX_A = 0xBF58476D1CE4E5B9
_MIX_B = 0x94D049BB133111EB


def _mix64(z):
    z &= _MASK64
    z = ((z ^ (z >> 30)) * _MIX_A) & _MASK64
    z = ((z ^ (z >> 27)) * _MIX_B) & _MASK64
    return z ^ (z >> 31)


class RngStream:
    """Splittable deterministic generator (splitmix64 update rule).

    State and outputs are 64-bit integers with wrap-around arithmetic, so
    equal seeds give byte-identical sequences on every platform. Floats use
    the top 53 bits of one draw. derive(i) builds child stream i without
    advancing this stream; parallel users should each take a child.
    """

    __slots__ = ("_state",)

    def __init__(self, seed):
        self._state = int(seed) & _MASK64

    @property
    def state(self):
        """Current 64-bit state; RngStream(state) replays what follows."""
        return self._state

    def next_u64(self):
        self._state = (self._state + _GAMMA) & _MASK64
        return _mix64(self._state)

    def next_float(self):
        """Uniform draw in [0, 1)."""
        return (self.next_u64() >> 11) * 2.0 ** -53

    def uniform(self, lo=-1.0, hi=1.0):
        return lo + (hi - lo) * self.next_float()

    def next_below(self, n):
        # modulo bias is below n / 2**64, far under anything observable here
        return self.next_u64() % int(n)

    def derive(self, child_index):
        """Independent child stream; the parent is left untouched."""
        child_state = _mix64((self._state + (int(child_index) + 1) * _GAMMA) & _MASK64)
        return RngStream(child_state)

    def __repr__(self):
        return "RngStream(0x%016x)" % self._state


def fro_norm(mat):
    """Frobenius norm of a numpy array, without np.linalg."""
    arr = np.asarray(mat)
    if arr.size == 0:
        return 0.0
    return math.sqrt(float((arr.real ** 2 + arr.imag ** 2).sum())) if np.iscomplexobj(arr) else math.sqrt(
        float((arr ** 2).sum())
    )


_MAX_SWEEPS = 100

# The solver keeps sweeping past atol down to this relative off-diagonal
# level (or atol, whichever is smaller). Eigenvector error tracks the final
# off-diagonal norm, and the subspace layer compares residuals against atol
# itself, so stopping exactly at atol would leave complements and kernels
# right on the edge of their own equality tests. Jacobi converges
# quadratically, so the extra sweeps are one or two.
_EIG_POLISH = 1e-13

# Relative pivot threshold for the final polish sweeps. Rank and kernel
# decisions compare Gram-matrix eigenvalues against rank_tol^2-level
# cutoffs, so near-zero eigenvalues must come out with small *relative*
# error, not just error small relative to the matrix norm. Sweeping until
# every pivot satisfies |a_pq| <= eps * sqrt(|a_pp a_qq|) delivers that
# for positive semidefinite inputs.
_REL_POLISH = 1e-15
_POLISH_SWEEPS = 30


def _offdiag_norm(a):
    off = a - np.diag(np.diag(a))
    return fro_norm(off)


def _jacobi_rotate(a, v, p, q):
    """One complex Jacobi rotation zeroing the (p, q) pivot in place."""
    r = abs(a[p, q])
    app = a[p, p].real
    aqq = a[q, q].real
    phase = a[p, q] / r
    tau = (app - aqq) / (2.0 * r)
    t = 1.0 / (abs(tau) + math.sqrt(1.0 + tau * tau))
    if tau < 0.0:
        t = -t
    c = 1.0 / math.sqrt(1.0 + t * t)
    s = t * c
    rot = np.array([[c, -s * phase], [s * np.conj(phase), c]])
    cols = a[:, (p, q)] @ rot
    a[:, p] = cols[:, 0]
    a[:, q] = cols[:, 1]
    rows = rot.conj().T @ a[(p, q), :]
    a[p, :] = rows[0]
    a[q, :] = rows[1]
    # the pivot is now zero by construction; pin it and keep the
    # diagonal exactly real
    a[p, q] = 0.0
    a[q, p] = 0.0
    a[p, p] = a[p, p].real
    a[q, q] = a[q, q].real
    vcols = v[:, (p, q)] @ rot
    v[:, p] = vcols[:, 0]
    v[:, q] = vcols[:, 1]


def herm_eig(hmat, tol=DEFAULT_TOL):
    """Eigendecomposition of a Hermitian matrix by cyclic complex Jacobi
    rotations with threshold sweeps.

    Returns (w, v) with w the eigenvalues ascending (real floats) and v a
    unitary matrix whose column k is the eigenvector for w[k], so that
    hmat @ v ~ v @ diag(w).

    Raises NotHermitian when the input fails the symmetry precheck and
    NoConvergence if the sweep cap is exhausted. The input is symmetrized
    to (H + H*)/2 after the precheck so accumulated asymmetry on the order
    of atol cannot bias the rotations.
    """
    a = np.array(hmat, dtype=complex)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise NonSquare("herm_eig needs a square matrix, got shape %r" % (a.shape,))
    n = a.shape[0]
    scale = fro_norm(a)
    if fro_norm(a - a.conj().T) > tol.atol * max(1.0, scale):
        raise NotHermitian("matrix is not Hermitian within atol=%g" % tol.atol)
    a = (a + a.conj().T) / 2.0
    v = np.eye(n, dtype=complex)
    if n == 1:
        return np.array([a[0, 0].real]), v

    target = min(tol.atol, _EIG_POLISH) * max(1.0, scale)
    for sweep in range(_MAX_SWEEPS + 1):
        off = _offdiag_norm(a)
        if off <= target:
            break
        if sweep == _MAX_SWEEPS:
            raise NoConvergence(
                "off-diagonal norm %g above %g after %d sweeps" % (off, target, _MAX_SWEEPS)
            )
        # rotate only pivots above the sweep threshold; everything smaller
        # contributes at most off/n to the next off-diagonal norm, so the
        # sweep still contracts even when no pivot is rotated
        thresh = off / (n * n)
        for p in range(n - 1):
            for q in range(p + 1, n):
                if abs(a[p, q]) > thresh:
                    _jacobi_rotate(a, v, p, q)

    # relative polish: clean every coupling that is still large next to the
    # geometric mean of its two diagonal entries, so tiny eigenvalues are
    # accurate relative to themselves and not merely to the matrix norm
    for _ in range(_POLISH_SWEEPS):
        rotated = False
        for p in range(n - 1):
            for q in range(p + 1, n):
                r = abs(a[p, q])
                if r > _REL_POLISH * math.sqrt(abs(a[p, p].real * a[q, q].real)):
                    _jacobi_rotate(a, v, p, q)
                    rotated = True
        if not rotated:
            break

    w = a.diagonal().real.copy()
    order = np.argsort(w, kind="stable")
    return w[order], v[:, order]


def jacobi_svd(mat, tol=DEFAULT_TOL):
    """Singular value decomposition by one-sided Jacobi column rotations.

    Returns (u, s, v) with s ascending and one entry per column of mat
    (wide matrices therefore report their surplus zero values), v unitary
    (right singular vectors as columns), u the left singular vectors for
    the nonzero part (columns for negligible singular values are zeroed),
    and mat ~ u @ diag(s) @ v†.

    The full Gram matrix is never formed: each rotation looks only at one
    2x2 column Gram, so an exact linear dependency among columns shows up
    as a column of rounding-level norm. That keeps tiny singular values
    accurate enough for rank and kernel cutoffs at the rank_tol^2 level,
    which sqrt-of-eigenvalue noise from an explicit A†A would swamp.
    """
    a = np.array(mat, dtype=complex)
    if a.ndim != 2 or a.size == 0:
        raise NonSquare("jacobi_svd needs a nonempty 2-d matrix, got shape %r" % (a.shape,))
    m, n = a.shape
    v = np.eye(n, dtype=complex)
    # any column whose norm falls below eps relative to the whole matrix
    # carries a singular value indistinguishable from zero; pin it to an
    # exact zero column, otherwise denormal-range junk keeps the relative
    # pivot threshold from ever being met
    col_floor = (np.finfo(float).eps * fro_norm(a)) ** 2
    for sweep in range(_MAX_SWEEPS + 1):
        rotated = False
        for j in range(n):
            if 0.0 < float(np.vdot(a[:, j], a[:, j]).real) <= col_floor:
                a[:, j] = 0.0
        for p in range(n - 1):
            for q in range(p + 1, n):
                gpq = complex(np.vdot(a[:, p], a[:, q]))
                r = abs(gpq)
                if r == 0.0:
                    continue
                gpp = float(np.vdot(a[:, p], a[:, p]).real)
                gqq = float(np.vdot(a[:, q], a[:, q]).real)
                if r <= _REL_POLISH * math.sqrt(gpp * gqq):
                    continue
                phase = gpq / r
                tau = (gpp - gqq) / (2.0 * r)
                t = 1.0 / (abs(tau) + math.sqrt(1.0 + tau * tau))
                if tau < 0.0:
                    t = -t
                c = 1.0 / math.sqrt(1.0 + t * t)
                s = t * c
                rot = np.array([[c, -s * phase], [s * np.conj(phase), c]])
                cols = a[:, (p, q)] @ rot
                a[:, p] = cols[:, 0]
                a[:, q] = cols[:, 1]
                vcols = v[:, (p, q)] @ rot
                v[:, p] = vcols[:, 0]
                v[:, q] = vcols[:, 1]
                rotated = True
        if not rotated:
            break
        if sweep == _MAX_SWEEPS:
            raise NoConvergence("column rotations still active after %d sweeps" % _MAX_SWEEPS)
    norms = np.array([fro_norm(a[:, j]) for j in range(n)])
    order = np.argsort(norms, kind="stable")
    norms = norms[order]
    a = a[:, order]
    v = v[:, order]
    u = np.zeros((m, n), dtype=complex)
    floor = np.finfo(float).tiny
    for j in range(n):
        if norms[j] > floor:
            u[:, j] = a[:, j] / norms[j]
    return u, norms, v
