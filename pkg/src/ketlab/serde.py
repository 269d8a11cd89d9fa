"""JSON encodings for the value sorts, plus the {"sort", "value"} envelope.

Complex numbers travel as [re, im] pairs of floats. Vectors are
{"dim": n, "coeffs": [[re, im], ...]}, operators are
{"rows": m, "cols": n, "entries": [[re, im], ...]} in row-major order,
partial maps are {"dom": n, "cod": m, "map": [index-or-null, ...]}, and
subspaces are {"ambient": n, "basis": [vector, ...]} where the basis is
re-validated on load. Anything that does not fit raises MalformedJson,
except a bad subspace basis, which surfaces as NotOrthonormalBasis so
callers see the same error the constructor would give.
"""

import math

from .errors import MalformedJson
from .hop import HOp, PartialMap
from .hsub import Subspace
from .hvec import HVec

_SORTS = ("scalar", "bool", "vector", "operator", "subspace", "partial_map")


def _require_dict(doc, what):
    if not isinstance(doc, dict):
        raise MalformedJson("%s must be a JSON object, got %s" % (what, type(doc).__name__))


def _get(doc, key, what):
    if key not in doc:
        raise MalformedJson("%s is missing key '%s'" % (what, key))
    return doc[key]


def _as_count(value, what):
    if isinstance(value, bool) or not isinstance(value, int) or value < 1:
        raise MalformedJson("%s must be a positive integer, got %r" % (what, value))
    return value


def _as_complex(pair, what):
    if (
        not isinstance(pair, (list, tuple))
        or len(pair) != 2
        or any(isinstance(p, bool) or not isinstance(p, (int, float)) for p in pair)
    ):
        raise MalformedJson("%s must be a [re, im] pair, got %r" % (what, pair))
    re, im = float(pair[0]), float(pair[1])
    if not (math.isfinite(re) and math.isfinite(im)):
        raise MalformedJson("%s must be finite" % what)
    return complex(re, im)


def _pair(z):
    return [float(z.real), float(z.imag)]


def vec_to_json(x):
    return {"dim": x.dim, "coeffs": [_pair(c) for c in x.coeffs]}


def vec_from_json(doc):
    _require_dict(doc, "vector")
    dim = _as_count(_get(doc, "dim", "vector"), "vector dim")
    coeffs = _get(doc, "coeffs", "vector")
    if not isinstance(coeffs, list) or len(coeffs) != dim:
        raise MalformedJson("vector coeffs must be a list of exactly %d pairs" % dim)
    return HVec([_as_complex(p, "vector coefficient") for p in coeffs])


def op_to_json(a):
    return {
        "rows": a.rows,
        "cols": a.cols,
        "entries": [_pair(z) for row in a.mat for z in row],
    }


def op_from_json(doc):
    _require_dict(doc, "operator")
    rows = _as_count(_get(doc, "rows", "operator"), "operator rows")
    cols = _as_count(_get(doc, "cols", "operator"), "operator cols")
    entries = _get(doc, "entries", "operator")
    if not isinstance(entries, list) or len(entries) != rows * cols:
        raise MalformedJson("operator entries must hold exactly %d pairs" % (rows * cols))
    flat = [_as_complex(p, "operator entry") for p in entries]
    return HOp([flat[r * cols : (r + 1) * cols] for r in range(rows)])


def pm_to_json(pm):
    return {"dom": pm.dom, "cod": pm.cod, "map": list(pm.images)}


def pm_from_json(doc):
    _require_dict(doc, "partial map")
    dom = _as_count(_get(doc, "dom", "partial map"), "partial map dom")
    cod = _as_count(_get(doc, "cod", "partial map"), "partial map cod")
    images = _get(doc, "map", "partial map")
    if not isinstance(images, list) or len(images) != dom:
        raise MalformedJson("partial map 'map' must list exactly %d entries" % dom)
    for img in images:
        if img is None:
            continue
        if isinstance(img, bool) or not isinstance(img, int) or not 0 <= img < cod:
            raise MalformedJson("partial map image %r is not in 0..%d or null" % (img, cod - 1))
    return PartialMap(dom, cod, tuple(images))


def sub_to_json(s):
    return {"ambient": s.ambient, "basis": [vec_to_json(b) for b in s.onb]}


def sub_from_json(doc):
    _require_dict(doc, "subspace")
    ambient = _as_count(_get(doc, "ambient", "subspace"), "subspace ambient")
    basis = _get(doc, "basis", "subspace")
    if not isinstance(basis, list):
        raise MalformedJson("subspace basis must be a list of vectors")
    return Subspace(ambient, tuple(vec_from_json(b) for b in basis))


def dump_value(value):
    """Wrap a supported value in the {"sort", "value"} envelope."""
    if isinstance(value, bool):
        return {"sort": "bool", "value": value}
    if isinstance(value, (int, float, complex)):
        return {"sort": "scalar", "value": _pair(complex(value))}
    if isinstance(value, HVec):
        return {"sort": "vector", "value": vec_to_json(value)}
    if isinstance(value, HOp):
        return {"sort": "operator", "value": op_to_json(value)}
    if isinstance(value, Subspace):
        return {"sort": "subspace", "value": sub_to_json(value)}
    if isinstance(value, PartialMap):
        return {"sort": "partial_map", "value": pm_to_json(value)}
    raise MalformedJson("cannot serialize %s" % type(value).__name__)


def load_value(doc):
    """Read a value back out of the envelope, validating as we go."""
    _require_dict(doc, "envelope")
    sort = _get(doc, "sort", "envelope")
    payload = _get(doc, "value", "envelope")
    if sort == "scalar":
        return _as_complex(payload, "scalar")
    if sort == "bool":
        if not isinstance(payload, bool):
            raise MalformedJson("bool value must be true or false, got %r" % payload)
        return payload
    if sort == "vector":
        return vec_from_json(payload)
    if sort == "operator":
        return op_from_json(payload)
    if sort == "subspace":
        return sub_from_json(payload)
    if sort == "partial_map":
        return pm_from_json(payload)
    raise MalformedJson("unknown sort %r, expected one of %s" % (sort, ", ".join(_SORTS)))
