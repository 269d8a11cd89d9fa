"""Evaluator for the expression language.

Values are the five runtime sorts: scalar (python complex), bool,
vector (HVec), operator (HOp), and subspace (Subspace); string literals
exist only long enough to reach the map argument of ``classical``.  All
real work is delegated to the core modules, so this file contains
dispatch and sort checking but no linear algebra of its own.
"""

from .parse import (
    Bin,
    Call,
    Imag,
    Neg,
    Num,
    OpLit,
    Script,
    SpanLit,
    Str,
    Var,
    VecLit,
)
from .. import hop, hsub, hvec
from ..errors import EvalTypeError, RebindIdentifier, UnboundIdentifier
from ..numeric import DEFAULT_TOL, approx_eq, complex_leq, fro_norm


def sort_of(value):
    if isinstance(value, bool):
        return "bool"
    if isinstance(value, (int, float, complex)):
        return "scalar"
    if isinstance(value, hvec.HVec):
        return "vector"
    if isinstance(value, hop.HOp):
        return "operator"
    if isinstance(value, hsub.Subspace):
        return "subspace"
    if isinstance(value, str):
        return "string"
    raise TypeError("not a language value: %r" % (value,))


def _bad_sorts(pos, sorts, message):
    raise EvalTypeError(pos, tuple(sorts), message)


def _want(value, sort, pos, context):
    got = sort_of(value)
    if got != sort:
        _bad_sorts(pos, (got,), "%s needs a %s, got %s" % (context, sort, got))
    return value


def _as_count(value, pos, context):
    """A scalar that is a nonnegative integer, as a python int."""
    _want(value, "scalar", pos, context)
    z = complex(value)
    if z.imag != 0.0 or z.real != int(z.real) or z.real < 0:
        _bad_sorts(pos, ("scalar",), "%s needs a nonnegative integer, got %r" % (context, value))
    return int(z.real)


def _scalar_eq(x, y, tol):
    return approx_eq(complex(x), complex(y), tol)


def _vec_eq(x, y, tol):
    scale = max(1.0, hvec.vnorm(x), hvec.vnorm(y))
    return hvec.vnorm(hvec.vsub(x, y)) <= tol.atol * scale


def _op_eq(a, b, tol):
    scale = max(1.0, fro_norm(a.mat), fro_norm(b.mat))
    return fro_norm(hop.sub(a, b).mat) <= tol.atol * scale


def _parse_mapstring(text, dom, cod, pos):
    """Read "0->1,1->0,2->_" into an images list for PartialMap."""
    images = [None] * dom
    seen = [False] * dom
    chunks = text.split(",") if text.strip() else []
    if len(chunks) != dom:
        _bad_sorts(
            pos,
            ("string",),
            "map string must give one entry per domain point (%d), got %d" % (dom, len(chunks)),
        )
    for chunk in chunks:
        piece = chunk.strip()
        head, sep, tail = piece.partition("->")
        if not sep:
            _bad_sorts(pos, ("string",), "map entry %r is not of the form src->dst" % piece)
        src_text = head.strip()
        dst_text = tail.strip()
        if not src_text.isdigit():
            _bad_sorts(pos, ("string",), "map source %r is not an index" % src_text)
        src = int(src_text)
        if not 0 <= src < dom:
            _bad_sorts(pos, ("string",), "map source %d outside 0..%d" % (src, dom - 1))
        if seen[src]:
            _bad_sorts(pos, ("string",), "map source %d listed twice" % src)
        seen[src] = True
        if dst_text == "_":
            images[src] = None
        elif dst_text.isdigit():
            dst = int(dst_text)
            if not 0 <= dst < cod:
                _bad_sorts(pos, ("string",), "map image %d outside 0..%d" % (dst, cod - 1))
            images[src] = dst
        else:
            _bad_sorts(pos, ("string",), "map image %r is neither an index nor _" % dst_text)
    return images


def _eval_mul(lhs, rhs, pos, tol):
    ls, rs = sort_of(lhs), sort_of(rhs)
    if ls == "scalar" and rs == "scalar":
        return complex(lhs) * complex(rhs)
    if ls == "scalar" and rs == "vector":
        return hvec.vscale(complex(lhs), rhs)
    if ls == "scalar" and rs == "operator":
        return hop.oscale(complex(lhs), rhs)
    if ls == "operator" and rs == "operator":
        return hop.compose(lhs, rhs)
    if ls == "operator" and rs == "vector":
        return hop.apply(lhs, rhs)
    if ls == "operator" and rs == "subspace":
        return hsub.image(lhs, rhs, tol)
    _bad_sorts(pos, (ls, rs), "* is not defined on %s and %s" % (ls, rs))


def _eval_add(op, lhs, rhs, pos, tol):
    ls, rs = sort_of(lhs), sort_of(rhs)
    if ls != rs:
        _bad_sorts(pos, (ls, rs), "%s needs matching sorts, got %s and %s" % (op, ls, rs))
    if ls == "scalar":
        return complex(lhs) + complex(rhs) if op == "+" else complex(lhs) - complex(rhs)
    if ls == "vector":
        return hvec.vadd(lhs, rhs) if op == "+" else hvec.vsub(lhs, rhs)
    if ls == "operator":
        return hop.add(lhs, rhs) if op == "+" else hop.sub(lhs, rhs)
    if ls == "subspace" and op == "+":
        return hsub.ssup(lhs, rhs, tol)
    _bad_sorts(pos, (ls, rs), "%s is not defined on %s" % (op, ls))


def _eval_cmp(op, lhs, rhs, pos, tol):
    ls, rs = sort_of(lhs), sort_of(rhs)
    if ls != rs:
        _bad_sorts(pos, (ls, rs), "%s needs matching sorts, got %s and %s" % (op, ls, rs))
    if op == "<=":
        if ls == "scalar":
            return complex_leq(complex(lhs), complex(rhs))
        if ls == "operator":
            return hop.loewner_leq(lhs, rhs, tol)
        if ls == "subspace":
            return hsub.leq(lhs, rhs, tol)
        _bad_sorts(pos, (ls, rs), "<= is not defined on %s" % ls)
    if ls == "scalar":
        return _scalar_eq(lhs, rhs, tol)
    if ls == "bool":
        return lhs == rhs
    if ls == "vector":
        return _vec_eq(lhs, rhs, tol)
    if ls == "operator":
        return _op_eq(lhs, rhs, tol)
    if ls == "subspace":
        return hsub.seq(lhs, rhs, tol)
    _bad_sorts(pos, (ls, rs), "== is not defined on %s" % ls)


def _eval_neg(value, pos, tol):
    s = sort_of(value)
    if s == "scalar":
        return -complex(value)
    if s == "vector":
        return hvec.vneg(value)
    if s == "operator":
        return hop.oneg(value)
    if s == "subspace":
        return hsub.ocomplement(value, tol)
    _bad_sorts(pos, (s,), "unary - is not defined on %s" % s)


def _arity(name, args, pos, count):
    if len(args) != count:
        _bad_sorts(pos, (), "%s takes %d argument%s, got %d" % (name, count, "" if count == 1 else "s", len(args)))


def _eval_call(node, env, tol):
    name = node.name
    pos = node.pos
    args = [_eval(a, env, tol) for a in node.args]

    if name == "ket":
        _arity(name, args, pos, 2)
        i = _as_count(args[0], node.args[0].pos, "ket index")
        n = _as_count(args[1], node.args[1].pos, "ket dimension")
        return hvec.ket(i, n)
    if name == "id":
        _arity(name, args, pos, 1)
        return hop.identity(_as_count(args[0], node.args[0].pos, "id dimension"))
    if name == "top":
        _arity(name, args, pos, 1)
        return hsub.top(_as_count(args[0], node.args[0].pos, "top dimension"))
    if name == "bot":
        _arity(name, args, pos, 1)
        return hsub.bot(_as_count(args[0], node.args[0].pos, "bot dimension"))
    if name == "zero":
        _arity(name, args, pos, 2)
        m = _as_count(args[0], node.args[0].pos, "zero row count")
        n = _as_count(args[1], node.args[1].pos, "zero column count")
        return hop.zero(m, n)
    if name == "adj":
        _arity(name, args, pos, 1)
        return hop.adjoint(_want(args[0], "operator", node.args[0].pos, "adj"))
    if name == "norm":
        _arity(name, args, pos, 1)
        s = sort_of(args[0])
        if s == "vector":
            return complex(hvec.vnorm(args[0]))
        if s == "operator":
            return complex(hop.op_norm(args[0], tol))
        _bad_sorts(node.args[0].pos, (s,), "norm needs a vector or operator, got %s" % s)
    if name == "inner":
        _arity(name, args, pos, 2)
        x = _want(args[0], "vector", node.args[0].pos, "inner")
        y = _want(args[1], "vector", node.args[1].pos, "inner")
        return hvec.inner(x, y)
    if name == "proj":
        _arity(name, args, pos, 1)
        return hsub.proj(_want(args[0], "subspace", node.args[0].pos, "proj"))
    if name == "kernel":
        _arity(name, args, pos, 1)
        return hsub.kernel(_want(args[0], "operator", node.args[0].pos, "kernel"), tol)
    if name == "eigenspace":
        _arity(name, args, pos, 2)
        _want(args[0], "scalar", node.args[0].pos, "eigenspace")
        a = _want(args[1], "operator", node.args[1].pos, "eigenspace")
        return hsub.eigenspace(complex(args[0]), a, tol)
    if name == "butterfly":
        _arity(name, args, pos, 2)
        x = _want(args[0], "vector", node.args[0].pos, "butterfly")
        y = _want(args[1], "vector", node.args[1].pos, "butterfly")
        return hop.butterfly(x, y)
    if name == "sandwich":
        _arity(name, args, pos, 2)
        a = _want(args[0], "operator", node.args[0].pos, "sandwich")
        b = _want(args[1], "operator", node.args[1].pos, "sandwich")
        return hop.sandwich(a, b)
    if name == "img":
        _arity(name, args, pos, 2)
        a = _want(args[0], "operator", node.args[0].pos, "img")
        s = _want(args[1], "subspace", node.args[1].pos, "img")
        return hsub.image(a, s, tol)
    if name == "applyv":
        _arity(name, args, pos, 2)
        a = _want(args[0], "operator", node.args[0].pos, "applyv")
        x = _want(args[1], "vector", node.args[1].pos, "applyv")
        return hop.apply(a, x)
    if name == "compose":
        _arity(name, args, pos, 2)
        a = _want(args[0], "operator", node.args[0].pos, "compose")
        b = _want(args[1], "operator", node.args[1].pos, "compose")
        return hop.compose(a, b)
    if name == "scale":
        _arity(name, args, pos, 2)
        _want(args[0], "scalar", node.args[0].pos, "scale")
        s = sort_of(args[1])
        if s == "scalar":
            return complex(args[0]) * complex(args[1])
        if s == "vector":
            return hvec.vscale(complex(args[0]), args[1])
        if s == "operator":
            return hop.oscale(complex(args[0]), args[1])
        _bad_sorts(node.args[1].pos, (s,), "scale needs a scalar, vector, or operator, got %s" % s)
    if name == "sup":
        _arity(name, args, pos, 2)
        s = _want(args[0], "subspace", node.args[0].pos, "sup")
        t = _want(args[1], "subspace", node.args[1].pos, "sup")
        return hsub.ssup(s, t, tol)
    if name == "inf":
        _arity(name, args, pos, 2)
        s = _want(args[0], "subspace", node.args[0].pos, "inf")
        t = _want(args[1], "subspace", node.args[1].pos, "inf")
        return hsub.sinf(s, t, tol)
    if name == "ocompl":
        _arity(name, args, pos, 1)
        return hsub.ocomplement(_want(args[0], "subspace", node.args[0].pos, "ocompl"), tol)
    if name == "classical":
        _arity(name, args, pos, 3)
        dom = _as_count(args[0], node.args[0].pos, "classical domain size")
        cod = _as_count(args[1], node.args[1].pos, "classical codomain size")
        _want(args[2], "string", node.args[2].pos, "classical map")
        if dom < 1 or cod < 1:
            _bad_sorts(pos, ("scalar",), "classical needs positive domain and codomain sizes")
        images = _parse_mapstring(args[2], dom, cod, node.args[2].pos)
        return hop.classical_operator(hop.PartialMap(dom, cod, images))
    if name == "trunc":
        if not args:
            _bad_sorts(pos, (), "trunc takes a vector and zero or more indices")
        x = _want(args[0], "vector", node.args[0].pos, "trunc")
        keep = [_as_count(a, node.args[k + 1].pos, "trunc index") for k, a in enumerate(args[1:])]
        return hvec.trunc(keep, x)
    if name == "dim":
        _arity(name, args, pos, 1)
        s = sort_of(args[0])
        if s == "vector":
            return complex(args[0].dim)
        if s == "subspace":
            return complex(hsub.sdim(args[0]))
        _bad_sorts(node.args[0].pos, (s,), "dim needs a vector or subspace, got %s" % s)
    raise AssertionError("unhandled builtin %r" % name)


def _eval(node, env, tol):
    if isinstance(node, Num):
        return complex(node.value)
    if isinstance(node, Imag):
        return complex(0.0, node.value)
    if isinstance(node, Str):
        return node.value
    if isinstance(node, Var):
        try:
            return env[node.name]
        except KeyError:
            raise UnboundIdentifier(node.pos, node.name) from None
    if isinstance(node, Neg):
        return _eval_neg(_eval(node.operand, env, tol), node.pos, tol)
    if isinstance(node, Bin):
        lhs = _eval(node.lhs, env, tol)
        rhs = _eval(node.rhs, env, tol)
        if node.op == "*":
            return _eval_mul(lhs, rhs, node.pos, tol)
        if node.op in ("+", "-"):
            return _eval_add(node.op, lhs, rhs, node.pos, tol)
        return _eval_cmp(node.op, lhs, rhs, node.pos, tol)
    if isinstance(node, Call):
        return _eval_call(node, env, tol)
    if isinstance(node, VecLit):
        coeffs = []
        for item in node.items:
            v = _eval(item, env, tol)
            _want(v, "scalar", item.pos, "vec entry")
            coeffs.append(complex(v))
        return hvec.HVec(coeffs)
    if isinstance(node, OpLit):
        width = len(node.rows[0])
        rows = []
        for row in node.rows:
            if len(row) != width:
                _bad_sorts(node.pos, ("scalar",), "op rows must all have %d entries" % width)
            out = []
            for item in row:
                v = _eval(item, env, tol)
                _want(v, "scalar", item.pos, "op entry")
                out.append(complex(v))
            rows.append(out)
        return hop.from_matrix(rows)
    if isinstance(node, SpanLit):
        vectors = []
        for item in node.items:
            v = _eval(item, env, tol)
            _want(v, "vector", item.pos, "span entry")
            vectors.append(v)
        ambient = vectors[0].dim
        return hsub.span(vectors, ambient, tol)
    raise TypeError("not an expression node: %r" % (node,))


def evaluate(expr, env=None, tol=DEFAULT_TOL):
    """Evaluate one expression in env (a plain name-to-value dict)."""
    return _eval(expr, {} if env is None else env, tol)


def run_script(script, env=None, tol=DEFAULT_TOL):
    """Evaluate a Script node: bindings first, then the body.

    Bindings are added to env (mutating it, so a caller-held dict keeps
    the new names); rebinding an existing name is an error.
    """
    if not isinstance(script, Script):
        raise TypeError("run_script needs a Script node")
    if env is None:
        env = {}
    bind_bindings(script.bindings, env, tol)
    return _eval(script.body, env, tol)


def bind_bindings(bindings, env, tol=DEFAULT_TOL):
    for name, expr, pos in bindings:
        if name in env:
            raise RebindIdentifier(pos, name)
        env[name] = _eval(expr, env, tol)
