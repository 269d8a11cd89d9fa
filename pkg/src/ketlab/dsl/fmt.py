"""Plain-text rendering of runtime values.

Scalars print as ``a+bi`` with a chosen number of significant digits,
dropping whichever part is exactly zero; booleans print ``true`` and
``false``; vectors and operators print bracketed coefficient lists; a
subspace prints as ``span{...}`` over its stored orthonormal basis.
"""

from .interp import sort_of


def _real_text(x, precision):
    if x == 0.0:
        x = 0.0
    return "%.*g" % (precision, x)


def _scalar_text(z, precision):
    z = complex(z)
    re, im = z.real, z.imag
    if re == 0.0:
        re = 0.0
    if im == 0.0:
        return _real_text(re, precision)
    if re == 0.0:
        return _real_text(im, precision) + "i"
    sign = "+" if im > 0 else "-"
    return "%s%s%si" % (_real_text(re, precision), sign, _real_text(abs(im), precision))


def format_value(value, precision=9):
    """Render value for terminal output; precision counts significant digits."""
    precision = int(precision)
    if precision < 1:
        raise ValueError("precision must be at least 1")
    sort = sort_of(value)
    if sort == "bool":
        return "true" if value else "false"
    if sort == "scalar":
        return _scalar_text(value, precision)
    if sort == "vector":
        inside = ", ".join(_scalar_text(c, precision) for c in value.coeffs.tolist())
        return "[%s]" % inside
    if sort == "operator":
        rows = ", ".join(
            "[%s]" % ", ".join(_scalar_text(c, precision) for c in row)
            for row in value.mat.tolist()
        )
        return "[%s]" % rows
    if sort == "subspace":
        vectors = ", ".join(format_value(u, precision) for u in value.onb)
        return "span{%s}" % vectors
    raise TypeError("cannot format a %s" % sort)
