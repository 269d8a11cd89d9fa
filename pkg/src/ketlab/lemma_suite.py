"""Randomized conformance checks, one per library fact in scope.

Each registered check redraws random instances and measures how far the
implementation strays from the exact statement. Checks never abort the
run: failures are counted, the worst residual is kept, and the seed of
the first failing trial is recorded so it can be replayed in isolation
with RngStream(first_fail_seed).

Check names follow the upstream lemma identifiers (Cauchy_Schwarz_ineq2
and norm_cblinfun_compose fall back to the conventional library names).
"""

import json
import math

import numpy as np

from . import hsub
from .errors import UnknownCheckName
from .hop import (
    HOp,
    add,
    adjoint,
    apply,
    butterfly,
    compose,
    embed_left,
    embed_right,
    explicit_op,
    identity,
    is_isometry,
    is_partial_isometry,
    is_positive,
    is_proj_op,
    is_rank1,
    is_selfadjoint,
    is_unitary,
    loewner_leq,
    one_dim_to_scalar,
    op_norm,
    oscale,
    sub,
    zero,
)
from .hsub import (
    gram_schmidt0,
    image,
    kernel,
    leq,
    ocomplement,
    proj,
    sdim,
    seq,
    sinf,
    span,
    ssup,
    top,
)
from .hvec import HVec, inner, ket, vadd, vnorm, vscale
from .numeric import DEFAULT_TOL, RngStream, complex_leq, fro_norm, herm_eig


class CheckOutcome:
    """One trial's verdict plus the residual that drove it."""

    __slots__ = ("passed", "residual")

    def __init__(self, passed, residual):
        self.passed = bool(passed)
        self.residual = float(residual)


class CheckSpec:
    __slots__ = ("name", "dims", "trials", "body")

    def __init__(self, name, dims, trials, body):
        self.name = name
        self.dims = dims
        self.trials = trials
        self.body = body


class CheckRow:
    __slots__ = ("name", "passed", "failed", "max_residual", "first_fail_seed")

    def __init__(self, name, passed, failed, max_residual, first_fail_seed):
        self.name = name
        self.passed = passed
        self.failed = failed
        self.max_residual = max_residual
        self.first_fail_seed = first_fail_seed


class CheckReport:
    def __init__(self, rows):
        self.rows = list(rows)

    def all_pass(self):
        return all(row.failed == 0 for row in self.rows)

    def to_json(self):
        return {
            "checks": [
                {
                    "name": row.name,
                    "pass": row.passed,
                    "fail": row.failed,
                    "max_residual": row.max_residual,
                    "first_fail_seed": row.first_fail_seed,
                }
                for row in self.rows
            ]
        }

    def json_text(self):
        return json.dumps(self.to_json())


def random_vector(rng, n):
    return HVec([complex(rng.uniform(), rng.uniform()) for _ in range(n)])


def random_operator(rng, m, n):
    return HOp([[complex(rng.uniform(), rng.uniform()) for _ in range(n)] for _ in range(m)])


def random_unitary(rng, n):
    while True:
        cols = gram_schmidt0([random_vector(rng, n) for _ in range(n)])
        if len(cols) == n:
            return HOp(np.column_stack([c.coeffs for c in cols]))


def random_subspace(rng, n):
    k = rng.next_below(n + 1)
    return span([random_vector(rng, n) for _ in range(k)], n)


def random_projector(rng, n):
    return proj(random_subspace(rng, n))


def _nonzero_subspace(rng, n):
    while True:
        s = random_subspace(rng, n)
        if sdim(s) > 0:
            return s


def _tall_isometry(rng, n, extra):
    """An (n+extra) x n operator with orthonormal columns."""
    m = n + extra
    return compose(random_unitary(rng, m), embed_left(n, extra))


def _top_eigvec(a, tol):
    """Unit eigenvector for the largest eigenvalue of adjoint(a) o a."""
    _, v = herm_eig(compose(adjoint(a), a).mat, tol)
    return HVec(v[:, -1])


# --- inner-product checks ---------------------------------------------------


def _chk_cinner_commute(rng, tol, n):
    x, y = random_vector(rng, n), random_vector(rng, n)
    r = abs(inner(x, y) - inner(y, x).conjugate())
    return CheckOutcome(r <= tol.atol, r)


def _chk_cinner_eq_zero_iff(rng, tol, n):
    x = random_vector(rng, n)
    sq = inner(x, x)
    zero_vec = vscale(0.0, x)
    r = max(abs(sq.imag), max(-sq.real, 0.0), abs(inner(zero_vec, zero_vec)))
    ok = r <= tol.atol
    ok = ok and (abs(sq) <= tol.atol) == (vnorm(x) <= math.sqrt(tol.atol))
    return CheckOutcome(ok, r)


def _chk_cauchy_schwarz(rng, tol, n):
    x, y = random_vector(rng, n), random_vector(rng, n)
    r = abs(inner(x, y)) - vnorm(x) * vnorm(y)
    return CheckOutcome(r <= tol.atol, max(r, 0.0))


def _chk_cinner_add_left(rng, tol, n):
    x, y, z = (random_vector(rng, n) for _ in range(3))
    c = complex(rng.uniform(), rng.uniform())
    r = max(
        abs(inner(vadd(x, y), z) - inner(x, z) - inner(y, z)),
        abs(inner(x, vadd(y, z)) - inner(x, y) - inner(x, z)),
        abs(inner(vscale(c, x), y) - c.conjugate() * inner(x, y)),
        abs(inner(x, vscale(c, y)) - c * inner(x, y)),
    )
    return CheckOutcome(r <= tol.atol * max(1.0, vnorm(x) * vnorm(y)), r)


def _chk_parseval(rng, tol, n):
    u = random_unitary(rng, n)
    psi = random_vector(rng, n)
    basis = [HVec(u.mat[:, j]) for j in range(n)]
    total = sum(abs(inner(b, psi)) ** 2 for b in basis)
    r = abs(total - vnorm(psi) ** 2)
    return CheckOutcome(r <= tol.atol * max(1.0, vnorm(psi) ** 2), r)


# --- operator checks --------------------------------------------------------


def _chk_cadjoint_exists(rng, tol, n):
    m = n + rng.next_below(3)
    a = random_operator(rng, m, n)
    x, y = random_vector(rng, n), random_vector(rng, m)
    r = abs(inner(apply(a, x), y) - inner(x, apply(adjoint(a), y)))
    return CheckOutcome(r <= tol.atol * max(1.0, fro_norm(a.mat) * vnorm(x) * vnorm(y)), r)


def _chk_norm_adj(rng, tol, n):
    a = random_operator(rng, n + rng.next_below(3), n)
    r = abs(op_norm(adjoint(a), tol) - op_norm(a, tol))
    return CheckOutcome(r <= tol.atol * max(1.0, op_norm(a, tol)), r)


def _chk_norm_aadja(rng, tol, n):
    a = random_operator(rng, n + rng.next_below(3), n)
    want = op_norm(a, tol) ** 2
    r = abs(op_norm(compose(adjoint(a), a), tol) - want)
    return CheckOutcome(r <= tol.atol * max(1.0, want), r)


def _chk_norm_compose(rng, tol, n):
    k = 1 + rng.next_below(3)
    a = random_operator(rng, n, k)
    b = random_operator(rng, k, n)
    r = op_norm(compose(a, b), tol) - op_norm(a, tol) * op_norm(b, tol)
    return CheckOutcome(r <= tol.atol, max(r, 0.0))


def _chk_norm_cblinfun(rng, tol, n):
    a = random_operator(rng, n + rng.next_below(3), n)
    bound = op_norm(a, tol)
    x = random_vector(rng, n)
    slack = vnorm(apply(a, x)) - bound * vnorm(x)
    peak = _top_eigvec(a, tol)
    gap = bound - vnorm(apply(a, peak))
    ok = slack <= tol.atol and gap <= 1e-7 * max(1.0, bound)
    return CheckOutcome(ok, max(slack, gap, 0.0))


def _chk_unitary_partial_isometry(rng, tol, n):
    u = random_unitary(rng, n)
    p = random_projector(rng, n)
    ok = (
        is_unitary(u, tol)
        and is_isometry(u, tol)
        and is_partial_isometry(u, tol)
        and is_proj_op(p, tol)
        and is_partial_isometry(p, tol)
    )
    return CheckOutcome(ok, 0.0 if ok else 1.0)


def _chk_orthogonal_on_basis(rng, tol, n):
    a = _tall_isometry(rng, n, rng.next_below(3))
    r = 0.0
    for i in range(n):
        for j in range(n):
            want = 1.0 if i == j else 0.0
            r = max(r, abs(inner(apply(a, ket(i, n)), apply(a, ket(j, n))) - want))
    ok = r <= tol.atol and is_isometry(a, tol)
    return CheckOutcome(ok, r)


def _chk_surj_isometry(rng, tol, n):
    u = random_unitary(rng, n)
    square_ok = is_isometry(u, tol) and seq(image(u, top(n), tol), top(n), tol) and is_unitary(u, tol)
    tall = _tall_isometry(rng, n, 1)
    tall_ok = is_isometry(tall, tol) and not seq(image(tall, top(n), tol), top(n + 1), tol) and not is_unitary(tall, tol)
    ok = square_ok and tall_ok
    return CheckOutcome(ok, 0.0 if ok else 1.0)


def _chk_cinner_real_selfadjoint(rng, tol, n):
    a = random_operator(rng, n, n)
    h = add(a, adjoint(a))
    for op in (a, h):
        scale = max(1.0, fro_norm(op.mat))
        all_real = True
        for _ in range(50):
            psi = random_vector(rng, n)
            quad = inner(psi, apply(op, psi))
            if abs(quad.imag) > tol.atol * scale * max(1.0, vnorm(psi) ** 2):
                all_real = False
                break
        if all_real != is_selfadjoint(op, tol):
            return CheckOutcome(False, 1.0)
    return CheckOutcome(True, 0.0)


def _chk_positive_selfadjoint(rng, tol, n):
    b = random_operator(rng, n, n)
    square = compose(adjoint(b), b)
    if not is_positive(square, tol):
        return CheckOutcome(False, 1.0)
    for op in (square, b, add(b, adjoint(b))):
        if is_positive(op, tol) and not is_selfadjoint(op, tol):
            return CheckOutcome(False, 1.0)
    return CheckOutcome(True, 0.0)


def _chk_norm_partial_isometry(rng, tol, n):
    s = _nonzero_subspace(rng, n)
    a = compose(random_unitary(rng, n), proj(s))
    r = abs(op_norm(a, tol) - 1.0)
    q = compose(adjoint(a), a)
    ok = (
        r <= 1e-7
        and is_partial_isometry(a, tol)
        and is_proj_op(q, tol)
        and seq(image(q, top(n), tol), ocomplement(kernel(a, tol), tol), tol)
    )
    return CheckOutcome(ok, r)


def _chk_equal_ket(rng, tol, n):
    m = n + rng.next_below(3)
    a = random_operator(rng, m, n)
    b = explicit_op(m, n, lambda row, col: inner(ket(row, m), apply(a, ket(col, n))))
    r = op_norm(sub(a, b), tol)
    return CheckOutcome(r <= tol.atol * max(1.0, op_norm(a, tol)), r)


def _chk_rank1_iff_butterfly(rng, tol, n):
    m = n + rng.next_below(3)
    x, y = random_vector(rng, m), random_vector(rng, n)
    a = butterfly(x, y)
    if not is_rank1(a, tol):
        return CheckOutcome(False, 1.0)
    v = _top_eigvec(a, tol)
    r = op_norm(sub(a, butterfly(apply(a, v), v)), tol)
    return CheckOutcome(r <= tol.atol * max(1.0, op_norm(a, tol)), r)


def _chk_positive_square(rng, tol, n):
    b = random_operator(rng, n, n)
    h = add(b, adjoint(b))
    nearby = add(h, oscale(tol.psd_tol / 2.0, identity(n)))
    ok = (
        loewner_leq(zero(n, n), compose(adjoint(b), b), tol)
        and loewner_leq(h, h, tol)
        and loewner_leq(h, nearby, tol)
        and loewner_leq(nearby, h, tol)
        and op_norm(sub(nearby, h), tol) <= tol.psd_tol
    )
    return CheckOutcome(ok, 0.0 if ok else 1.0)


def _chk_one_dim_loewner(rng, tol, n):
    x = complex(rng.uniform(), rng.uniform())
    shared = rng.next_below(2) == 0
    y = complex(rng.uniform(), x.imag if shared else rng.uniform())
    a, b = HOp([[x]]), HOp([[y]])
    lhs = loewner_leq(a, b, tol)
    rhs = complex_leq(one_dim_to_scalar(a), one_dim_to_scalar(b), tol)
    return CheckOutcome(lhs == rhs, 0.0 if lhs == rhs else 1.0)


# --- subspace checks --------------------------------------------------------


def _chk_lattice_laws(rng, tol, n):
    x, y, z = (random_subspace(rng, n) for _ in range(3))
    ok = (
        seq(ssup(x, y, tol), ssup(y, x, tol), tol)
        and seq(sinf(x, y, tol), sinf(y, x, tol), tol)
        and seq(ssup(x, ssup(y, z, tol), tol), ssup(ssup(x, y, tol), z, tol), tol)
        and seq(sinf(x, sinf(y, z, tol), tol), sinf(sinf(x, y, tol), z, tol), tol)
        and seq(ssup(x, sinf(x, y, tol), tol), x, tol)
        and seq(sinf(x, ssup(x, y, tol), tol), x, tol)
    )
    return CheckOutcome(ok, 0.0 if ok else 1.0)


def _chk_complement_laws(rng, tol, n):
    s, t = random_subspace(rng, n), random_subspace(rng, n)
    nested = ssup(s, random_subspace(rng, n), tol)
    ok = (
        seq(ocomplement(ocomplement(s, tol), tol), s, tol)
        and leq(s, t, tol) == leq(ocomplement(t, tol), ocomplement(s, tol), tol)
        and leq(ocomplement(nested, tol), ocomplement(s, tol), tol)
    )
    return CheckOutcome(ok, 0.0 if ok else 1.0)


def _chk_orthomodular(rng, tol, n):
    x = random_subspace(rng, n)
    y = ssup(x, random_subspace(rng, n), tol)
    ok = seq(ssup(x, sinf(ocomplement(x, tol), y, tol), tol), y, tol)
    return CheckOutcome(ok, 0.0 if ok else 1.0)


def _chk_de_morgan(rng, tol, n):
    x, y = random_subspace(rng, n), random_subspace(rng, n)
    ok = seq(ocomplement(ssup(x, y, tol), tol), sinf(ocomplement(x, tol), ocomplement(y, tol), tol), tol)
    return CheckOutcome(ok, 0.0 if ok else 1.0)


def _chk_inf_second_route(rng, tol, n):
    s, t = random_subspace(rng, n), random_subspace(rng, n)
    stacked = add(
        compose(embed_left(n, n), sub(identity(n), proj(s))),
        compose(embed_right(n, n), sub(identity(n), proj(t))),
    )
    ok = seq(kernel(stacked, tol), sinf(s, t, tol), tol)
    return CheckOutcome(ok, 0.0 if ok else 1.0)


def _chk_kernel_compl_adj_range(rng, tol, n):
    m = n + rng.next_below(3)
    a = random_operator(rng, m, n)
    ok = seq(kernel(a, tol), ocomplement(image(adjoint(a), top(m), tol), tol), tol)
    return CheckOutcome(ok, 0.0 if ok else 1.0)


def _chk_proj_mono(rng, tol, n):
    s, t = random_subspace(rng, n), random_subspace(rng, n)
    nested = ssup(s, t, tol)
    ok = (
        loewner_leq(proj(s), proj(t), tol) == leq(s, t, tol)
        and loewner_leq(proj(s), proj(nested), tol)
    )
    return CheckOutcome(ok, 0.0 if ok else 1.0)


def _chk_projection_plus(rng, tol, n):
    s = random_subspace(rng, n)
    comp = ocomplement(s, tol)
    m_cut = rng.next_below(sdim(s) + 1)
    n_cut = rng.next_below(sdim(comp) + 1)
    m_part = span(s.onb[:m_cut], n, tol)
    n_part = span(comp.onb[:n_cut], n, tol)
    if not leq(m_part, ocomplement(n_part, tol), tol):
        return CheckOutcome(False, 1.0)
    r = op_norm(sub(proj(ssup(m_part, n_part, tol)), add(proj(m_part), proj(n_part))), tol)
    return CheckOutcome(r <= 1e-8, r)


def _chk_proj_ortho_compl(rng, tol, n):
    s = random_subspace(rng, n)
    r = op_norm(sub(sub(identity(n), proj(s)), proj(ocomplement(s, tol))), tol)
    return CheckOutcome(r <= 1e-8, r)


def _chk_compose_image(rng, tol, n):
    k = 1 + rng.next_below(3)
    m = 1 + rng.next_below(3)
    a = random_operator(rng, m, k)
    b = random_operator(rng, k, n)
    s = random_subspace(rng, n)
    ok = seq(image(compose(a, b), s, tol), image(a, image(b, s, tol), tol), tol)
    return CheckOutcome(ok, 0.0 if ok else 1.0)


def _chk_isometry_inf_distrib(rng, tol, n):
    u = _tall_isometry(rng, n, rng.next_below(3))
    x, y = random_subspace(rng, n), random_subspace(rng, n)
    ok = seq(
        image(u, sinf(x, y, tol), tol),
        sinf(image(u, x, tol), image(u, y, tol), tol),
        tol,
    )
    return CheckOutcome(ok, 0.0 if ok else 1.0)


def _chk_ortho_bases_same_card(rng, tol, n):
    k = 1 + rng.next_below(n)
    vs = [random_vector(rng, n) for _ in range(k)]
    ws = [vscale(complex(2.0, -1.0), v) for v in reversed(vs)]
    if k >= 2:
        ws.append(vadd(vs[0], vs[1]))
    ok = len(gram_schmidt0(vs, tol)) == len(gram_schmidt0(ws, tol))
    return CheckOutcome(ok, 0.0 if ok else 1.0)


def _chk_norm_is_proj(rng, tol, n):
    r = op_norm(proj(random_subspace(rng, n)), tol) - 1.0
    return CheckOutcome(r <= tol.atol, max(r, 0.0))


def _chk_times_ccspan(rng, tol, n):
    m = 1 + rng.next_below(3)
    vs = [random_vector(rng, n) for _ in range(rng.next_below(n + 1))]
    ws = [random_vector(rng, m) for _ in range(rng.next_below(m + 1))]
    s, t = span(vs, n, tol), span(ws, m, tol)
    lifted = [apply(embed_left(n, m), v) for v in vs] + [apply(embed_right(n, m), w) for w in ws]
    ok = seq(span(lifted, n + m, tol), hsub.subspace_times(s, t, tol), tol)
    return CheckOutcome(ok, 0.0 if ok else 1.0)


REGISTRY = (
    CheckSpec("cinner_commute", (1, 12), 200, _chk_cinner_commute),
    CheckSpec("cinner_eq_zero_iff", (1, 12), 200, _chk_cinner_eq_zero_iff),
    CheckSpec("Cauchy_Schwarz_ineq2", (1, 12), 200, _chk_cauchy_schwarz),
    CheckSpec("cinner_add_left", (1, 12), 200, _chk_cinner_add_left),
    CheckSpec("parseval_identity", (1, 10), 200, _chk_parseval),
    CheckSpec("cadjoint_exists", (1, 8), 200, _chk_cadjoint_exists),
    CheckSpec("norm_adj", (1, 8), 200, _chk_norm_adj),
    CheckSpec("norm_AadjA", (1, 8), 200, _chk_norm_aadja),
    CheckSpec("norm_cblinfun_compose", (1, 8), 200, _chk_norm_compose),
    CheckSpec("norm_cblinfun", (1, 8), 200, _chk_norm_cblinfun),
    CheckSpec("unitary_partial_isometry", (1, 8), 200, _chk_unitary_partial_isometry),
    CheckSpec("orthogonal_on_basis_is_isometry", (1, 8), 200, _chk_orthogonal_on_basis),
    CheckSpec("surj_isometry_is_unitary", (1, 8), 200, _chk_surj_isometry),
    CheckSpec("cinner_real_selfadjointI", (1, 8), 100, _chk_cinner_real_selfadjoint),
    CheckSpec("positive_selfadjointI", (1, 8), 200, _chk_positive_selfadjoint),
    CheckSpec("norm_partial_isometry", (1, 8), 200, _chk_norm_partial_isometry),
    CheckSpec("equal_ket", (1, 8), 200, _chk_equal_ket),
    CheckSpec("rank1_iff_butterfly", (1, 8), 200, _chk_rank1_iff_butterfly),
    CheckSpec("positive_cblinfun_squareI", (1, 8), 200, _chk_positive_square),
    CheckSpec("one_dim_loewner_order", (1, 1), 200, _chk_one_dim_loewner),
    CheckSpec("closed_sum_is_sup", (1, 6), 100, _chk_lattice_laws),
    CheckSpec(
        "orthogonal_complement_orthogonal_complement_closure_cspan",
        (1, 6),
        200,
        _chk_complement_laws,
    ),
    CheckSpec("complete_orthomodular_lattice", (1, 6), 200, _chk_orthomodular),
    CheckSpec("compl_sup", (1, 6), 200, _chk_de_morgan),
    CheckSpec("inf_ccsubspace_code", (1, 6), 200, _chk_inf_second_route),
    CheckSpec("kernel_compl_adj_range", (1, 6), 200, _chk_kernel_compl_adj_range),
    CheckSpec("Proj_mono", (1, 6), 200, _chk_proj_mono),
    CheckSpec("projection_plus", (1, 6), 200, _chk_projection_plus),
    CheckSpec("Proj_ortho_compl", (1, 6), 200, _chk_proj_ortho_compl),
    CheckSpec("cblinfun_compose_image", (1, 6), 200, _chk_compose_image),
    CheckSpec("isometry_cblinfun_image_inf_distrib", (1, 6), 200, _chk_isometry_inf_distrib),
    CheckSpec("ortho_bases_same_card", (1, 8), 200, _chk_ortho_bases_same_card),
    CheckSpec("norm_is_Proj", (1, 8), 200, _chk_norm_is_proj),
    CheckSpec("ccsubspace_Times_ccspan", (1, 5), 200, _chk_times_ccspan),
)


def check_names():
    return tuple(spec.name for spec in REGISTRY)


def run_checks(seed, max_dim, trials, filter_names=None, tol=DEFAULT_TOL):
    """Run every registered check (or the filtered subset) trials times.

    Deterministic for fixed arguments: trial t of check c draws from
    RngStream(seed).derive(c).derive(t), so any failure replays alone.
    """
    if trials < 1:
        raise ValueError("trials must be >= 1, got %d" % trials)
    if max_dim < 1:
        raise ValueError("max_dim must be >= 1, got %d" % max_dim)
    wanted = None
    if filter_names is not None:
        wanted = set(filter_names)
        known = set(check_names())
        bad = sorted(wanted - known)
        if bad:
            raise UnknownCheckName("no such check: %s" % ", ".join(bad))
    rows = []
    for index, spec in enumerate(REGISTRY):
        if wanted is not None and spec.name not in wanted:
            continue
        root = RngStream(seed).derive(index)
        passed = failed = 0
        max_residual = 0.0
        first_fail_seed = None
        lo, hi = spec.dims
        hi_eff = max(lo, min(hi, max_dim))
        for trial in range(trials):
            trial_rng = root.derive(trial)
            trial_seed = trial_rng.state
            dim = lo + trial_rng.next_below(hi_eff - lo + 1)
            try:
                outcome = spec.body(trial_rng, tol, dim)
            except Exception:
                outcome = CheckOutcome(False, math.inf)
            if outcome.passed:
                passed += 1
            else:
                failed += 1
                if first_fail_seed is None:
                    first_fail_seed = trial_seed
            max_residual = max(max_residual, outcome.residual)
        rows.append(CheckRow(spec.name, passed, failed, max_residual, first_fail_seed))
    return CheckReport(rows)
