"""Exception types shared across the package.

Core math errors are plain subclasses of KetlabError. The expression
language errors carry 1-based source positions (line, column) so the CLI
can point at the offending lexeme.
"""


class KetlabError(Exception):
    """Base class for every error raised by this package."""


class DimMismatch(KetlabError):
    """Operands have incompatible dimensions or shapes."""


class IndexOutOfRange(KetlabError):
    """A basis or coefficient index is outside 0..dim-1."""


class NonSquare(KetlabError):
    """A square operator was required."""


class NotHermitian(KetlabError):
    """Input to the eigensolver is not Hermitian within tolerance."""


class NoConvergence(KetlabError):
    """The eigensolver hit its sweep limit before converging."""


class NotInjective(KetlabError):
    """Partial map inversion requires injectivity on the defined domain."""


class NotInvertible(KetlabError):
    """Left inversion requires full column rank."""


class Inconsistent(KetlabError):
    """Requested images violate a linear dependency among the inputs."""


class NotOrthonormalBasis(KetlabError):
    """A sequence of vectors failed the orthonormal-basis invariants."""


class UnknownCheckName(KetlabError):
    """A conformance-check filter named a check that is not registered."""


class MalformedJson(KetlabError):
    """A JSON document does not match the expected value format."""


class PositionedError(KetlabError):
    """Base for errors that point at a source position.

    position is a (line, column) pair, both 1-based.
    """

    def __init__(self, position, message):
        self.position = position
        super().__init__("%d:%d: %s" % (position[0], position[1], message))


class LexError(PositionedError):
    """The tokenizer hit a character or literal it cannot read."""


class ParseError(PositionedError):
    """The parser found an unexpected token.

    expected is the set of token descriptions that would have been legal.
    """

    def __init__(self, position, expected, found):
        self.expected = frozenset(expected)
        self.found = found
        wanted = " or ".join("'%s'" % e for e in sorted(self.expected))
        super().__init__(position, "expected %s, found '%s'" % (wanted, found))


class EvalError(PositionedError):
    """Base for runtime errors inside the expression evaluator."""


class UnboundIdentifier(EvalError):
    def __init__(self, position, name):
        self.name = name
        super().__init__(position, "unbound identifier '%s'" % name)


class RebindIdentifier(EvalError):
    def __init__(self, position, name):
        self.name = name
        super().__init__(position, "'%s' is already bound in this session" % name)


class EvalTypeError(EvalError):
    """An operation was applied to value sorts it does not accept."""

    def __init__(self, position, sorts, message):
        self.sorts = tuple(sorts)
        super().__init__(position, message)
