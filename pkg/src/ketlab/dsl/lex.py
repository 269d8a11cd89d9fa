"""Tokenizer for the expression language.

Produces a flat list of tokens, each tagged with the 1-based line and
column of its first character.  Number literals are plain decimals with
an optional fraction part; a trailing ``i`` makes the literal imaginary,
and a bare ``i`` is the imaginary unit itself.  Strings (double-quoted,
no escapes) appear only as the map argument of ``classical``.
"""

from ..errors import LexError

KEYWORDS = frozenset(
    [
        "let",
        "vec",
        "op",
        "span",
        "ket",
        "id",
        "top",
        "bot",
        "zero",
        "adj",
        "norm",
        "inner",
        "proj",
        "kernel",
        "eigenspace",
        "butterfly",
        "sandwich",
        "img",
        "applyv",
        "compose",
        "scale",
        "sup",
        "inf",
        "ocompl",
        "classical",
        "trunc",
        "dim",
    ]
)

_PUNCT = frozenset("()[]{},")
_SYMBOL_STARTS = frozenset("+-*<=;")


class Token:
    """One lexeme with its kind, text, and source position."""

    __slots__ = ("kind", "text", "value", "line", "col")

    def __init__(self, kind, text, value, line, col):
        self.kind = kind
        self.text = text
        self.value = value
        self.line = line
        self.col = col

    @property
    def position(self):
        return (self.line, self.col)

    def __repr__(self):
        return "Token(%r, %r, %d:%d)" % (self.kind, self.text, self.line, self.col)


def _is_ident_start(ch):
    return ch.isalpha() or ch == "_"


def _is_ident_char(ch):
    return ch.isalnum() or ch == "_"


def tokenize(text):
    """Split ``text`` into tokens, raising LexError on anything foreign.

    Token kinds: ``num``, ``imag``, ``str``, ``ident``, ``keyword``,
    ``punct`` (brackets and commas), and ``sym`` (operators, ``=`` and
    ``;``).  The returned list ends with an ``eof`` token whose position
    points just past the input.
    """
    tokens = []
    line = 1
    col = 1
    i = 0
    n = len(text)
    while i < n:
        ch = text[i]
        if ch == "\n":
            line += 1
            col = 1
            i += 1
            continue
        if ch in " \t\r":
            i += 1
            col += 1
            continue
        start_line, start_col = line, col
        if ch.isdigit():
            j = i
            while j < n and text[j].isdigit():
                j += 1
            if j < n and text[j] == "." and j + 1 < n and text[j + 1].isdigit():
                j += 1
                while j < n and text[j].isdigit():
                    j += 1
            lexeme = text[i:j]
            if j < n and text[j] == "i" and not (j + 1 < n and _is_ident_char(text[j + 1])):
                j += 1
                tokens.append(Token("imag", text[i:j], float(lexeme), start_line, start_col))
            else:
                tokens.append(Token("num", lexeme, float(lexeme), start_line, start_col))
            col += j - i
            i = j
            continue
        if _is_ident_start(ch):
            j = i
            while j < n and _is_ident_char(text[j]):
                j += 1
            word = text[i:j]
            if word == "i":
                tokens.append(Token("imag", word, 1.0, start_line, start_col))
            elif word in KEYWORDS:
                tokens.append(Token("keyword", word, word, start_line, start_col))
            else:
                tokens.append(Token("ident", word, word, start_line, start_col))
            col += j - i
            i = j
            continue
        if ch == '"':
            j = i + 1
            while j < n and text[j] not in '"\n':
                j += 1
            if j >= n or text[j] != '"':
                raise LexError((start_line, start_col), "unterminated string literal")
            tokens.append(Token("str", text[i : j + 1], text[i + 1 : j], start_line, start_col))
            col += j + 1 - i
            i = j + 1
            continue
        if ch in _PUNCT:
            tokens.append(Token("punct", ch, ch, start_line, start_col))
            i += 1
            col += 1
            continue
        if ch in _SYMBOL_STARTS:
            if ch == "<":
                if i + 1 < n and text[i + 1] == "=":
                    tokens.append(Token("sym", "<=", "<=", start_line, start_col))
                    i += 2
                    col += 2
                    continue
                raise LexError((start_line, start_col), "bare '<' is not an operator, expected '<='")
            if ch == "=":
                if i + 1 < n and text[i + 1] == "=":
                    tokens.append(Token("sym", "==", "==", start_line, start_col))
                    i += 2
                    col += 2
                    continue
                tokens.append(Token("sym", "=", "=", start_line, start_col))
                i += 1
                col += 1
                continue
            tokens.append(Token("sym", ch, ch, start_line, start_col))
            i += 1
            col += 1
            continue
        raise LexError((start_line, start_col), "unexpected character %r" % ch)
    tokens.append(Token("eof", "", None, line, col))
    return tokens
