"""Recursive-descent parser and printer for the expression language.

Grammar, from the top:

    script  :=  { "let" IDENT "=" expr ";" }  expr
    expr    :=  cmp
    cmp     :=  add [ ("<=" | "==") add ]
    add     :=  mul { ("+" | "-") mul }
    mul     :=  unary { "*" unary }
    unary   :=  "-" unary | atom
    atom    :=  NUMBER | IMAG | STRING | IDENT | call | "(" expr ")"
             |  "vec" "[" expr {"," expr} "]"
             |  "op" "[" row {"," row} "]"          row := "[" expr {"," expr} "]"
             |  "span" "{" expr {"," expr} "}"
    call    :=  KEYWORD "(" [ expr {"," expr} ] ")"

Comparison does not associate: ``a <= b <= c`` is a parse error at the
second operator.  AST nodes compare structurally and ignore positions,
and ``print_expr`` emits fully parenthesized text, so printing and
reparsing any expression gives back an equal tree.
"""

from .lex import KEYWORDS, tokenize
from ..errors import ParseError

CALL_NAMES = frozenset(KEYWORDS - {"let", "vec", "op", "span"})


class Node:
    """Base AST node; equality is structural and skips positions."""

    __slots__ = ("pos",)

    def _key(self):
        raise NotImplementedError

    def __eq__(self, other):
        return type(self) is type(other) and self._key() == other._key()

    def __hash__(self):
        return hash((type(self).__name__, self._key()))

    def __repr__(self):
        return "%s%r" % (type(self).__name__, self._key())


class Num(Node):
    __slots__ = ("value",)

    def __init__(self, value, pos):
        self.value = value
        self.pos = pos

    def _key(self):
        return (self.value,)


class Imag(Node):
    __slots__ = ("value",)

    def __init__(self, value, pos):
        self.value = value
        self.pos = pos

    def _key(self):
        return (self.value,)


class Str(Node):
    __slots__ = ("value",)

    def __init__(self, value, pos):
        self.value = value
        self.pos = pos

    def _key(self):
        return (self.value,)


class Var(Node):
    __slots__ = ("name",)

    def __init__(self, name, pos):
        self.name = name
        self.pos = pos

    def _key(self):
        return (self.name,)


class Call(Node):
    __slots__ = ("name", "args")

    def __init__(self, name, args, pos):
        self.name = name
        self.args = list(args)
        self.pos = pos

    def _key(self):
        return (self.name, tuple(self.args))


class Bin(Node):
    __slots__ = ("op", "lhs", "rhs")

    def __init__(self, op, lhs, rhs, pos):
        self.op = op
        self.lhs = lhs
        self.rhs = rhs
        self.pos = pos

    def _key(self):
        return (self.op, self.lhs, self.rhs)


class Neg(Node):
    __slots__ = ("operand",)

    def __init__(self, operand, pos):
        self.operand = operand
        self.pos = pos

    def _key(self):
        return (self.operand,)


class VecLit(Node):
    __slots__ = ("items",)

    def __init__(self, items, pos):
        self.items = list(items)
        self.pos = pos

    def _key(self):
        return (tuple(self.items),)


class OpLit(Node):
    __slots__ = ("rows",)

    def __init__(self, rows, pos):
        self.rows = [list(r) for r in rows]
        self.pos = pos

    def _key(self):
        return (tuple(tuple(r) for r in self.rows),)


class SpanLit(Node):
    __slots__ = ("items",)

    def __init__(self, items, pos):
        self.items = list(items)
        self.pos = pos

    def _key(self):
        return (tuple(self.items),)


class Script(Node):
    __slots__ = ("bindings", "body")

    def __init__(self, bindings, body, pos):
        self.bindings = list(bindings)
        self.body = body
        self.pos = pos

    def _key(self):
        return (tuple((n, e) for n, e, _ in self.bindings), self.body)


class _Parser:
    def __init__(self, tokens):
        self.tokens = tokens
        self.i = 0

    def peek(self):
        return self.tokens[self.i]

    def advance(self):
        tok = self.tokens[self.i]
        if tok.kind != "eof":
            self.i += 1
        return tok

    def fail(self, expected):
        tok = self.peek()
        found = tok.text if tok.kind != "eof" else "end of input"
        raise ParseError(tok.position, expected, found)

    def expect(self, kind, text=None):
        tok = self.peek()
        if tok.kind != kind or (text is not None and tok.text != text):
            self.fail({text if text is not None else kind})
        return self.advance()

    def at(self, kind, text=None):
        tok = self.peek()
        return tok.kind == kind and (text is None or tok.text == text)

    def script(self):
        first = self.peek()
        bindings = []
        while self.at("keyword", "let"):
            self.advance()
            name_tok = self.peek()
            if name_tok.kind != "ident":
                self.fail({"identifier"})
            self.advance()
            self.expect("sym", "=")
            bound = self.expr()
            self.expect("sym", ";")
            bindings.append((name_tok.text, bound, name_tok.position))
        body = self.expr()
        self.expect("eof")
        return Script(bindings, body, first.position)

    def script_prefix(self):
        """Like script() but the trailing expression is optional.

        Used by the REPL so a line holding only bindings is accepted.
        Returns (bindings, body_or_None).
        """
        bindings = []
        while self.at("keyword", "let"):
            self.advance()
            name_tok = self.peek()
            if name_tok.kind != "ident":
                self.fail({"identifier"})
            self.advance()
            self.expect("sym", "=")
            bound = self.expr()
            if self.at("sym", ";"):
                self.advance()
            elif not self.at("eof"):
                self.fail({";"})
            bindings.append((name_tok.text, bound, name_tok.position))
        if self.at("eof"):
            return bindings, None
        body = self.expr()
        self.expect("eof")
        return bindings, body

    def expr(self):
        return self.cmp()

    def cmp(self):
        lhs = self.add()
        tok = self.peek()
        if tok.kind == "sym" and tok.text in ("<=", "=="):
            self.advance()
            rhs = self.add()
            return Bin(tok.text, lhs, rhs, tok.position)
        return lhs

    def add(self):
        lhs = self.mul()
        while True:
            tok = self.peek()
            if tok.kind == "sym" and tok.text in ("+", "-"):
                self.advance()
                rhs = self.mul()
                lhs = Bin(tok.text, lhs, rhs, tok.position)
            else:
                return lhs

    def mul(self):
        lhs = self.unary()
        while self.at("sym", "*"):
            tok = self.advance()
            rhs = self.unary()
            lhs = Bin("*", lhs, rhs, tok.position)
        return lhs

    def unary(self):
        if self.at("sym", "-"):
            tok = self.advance()
            return Neg(self.unary(), tok.position)
        return self.atom()

    def atom(self):
        tok = self.peek()
        if tok.kind == "num":
            self.advance()
            return Num(tok.value, tok.position)
        if tok.kind == "imag":
            self.advance()
            return Imag(tok.value, tok.position)
        if tok.kind == "str":
            self.advance()
            return Str(tok.value, tok.position)
        if tok.kind == "ident":
            self.advance()
            return Var(tok.text, tok.position)
        if tok.kind == "punct" and tok.text == "(":
            self.advance()
            inner = self.expr()
            self.expect("punct", ")")
            return inner
        if tok.kind == "keyword":
            if tok.text == "vec":
                self.advance()
                self.expect("punct", "[")
                items = self.expr_list("]")
                self.expect("punct", "]")
                return VecLit(items, tok.position)
            if tok.text == "op":
                self.advance()
                self.expect("punct", "[")
                rows = [self.row()]
                while self.at("punct", ","):
                    self.advance()
                    rows.append(self.row())
                self.expect("punct", "]")
                return OpLit(rows, tok.position)
            if tok.text == "span":
                self.advance()
                self.expect("punct", "{")
                items = self.expr_list("}")
                self.expect("punct", "}")
                return SpanLit(items, tok.position)
            if tok.text in CALL_NAMES:
                self.advance()
                self.expect("punct", "(")
                if self.at("punct", ")"):
                    args = []
                else:
                    args = self.expr_list(")")
                self.expect("punct", ")")
                return Call(tok.text, args, tok.position)
            self.fail({"expression"})
        self.fail({"expression"})

    def row(self):
        self.expect("punct", "[")
        items = self.expr_list("]")
        self.expect("punct", "]")
        return items

    def expr_list(self, closer):
        items = [self.expr()]
        while self.at("punct", ","):
            self.advance()
            items.append(self.expr())
        if not self.at("punct", closer):
            self.fail({",", closer})
        return items


def parse_script(text):
    """Parse a whole program: zero or more let bindings, then one expression."""
    return _Parser(tokenize(text)).script()


def parse_repl_line(text):
    """Parse one REPL line; the trailing expression may be absent."""
    return _Parser(tokenize(text)).script_prefix()


def _num_text(value):
    if value == int(value) and abs(value) < 1e15:
        return "%d" % int(value)
    return repr(value)


def print_expr(node):
    """Render an expression with every compound fully parenthesized."""
    if isinstance(node, Num):
        return _num_text(node.value)
    if isinstance(node, Imag):
        return _num_text(node.value) + "i"
    if isinstance(node, Str):
        return '"%s"' % node.value
    if isinstance(node, Var):
        return node.name
    if isinstance(node, Neg):
        return "(-%s)" % print_expr(node.operand)
    if isinstance(node, Bin):
        return "(%s %s %s)" % (print_expr(node.lhs), node.op, print_expr(node.rhs))
    if isinstance(node, Call):
        return "%s(%s)" % (node.name, ", ".join(print_expr(a) for a in node.args))
    if isinstance(node, VecLit):
        return "vec[%s]" % ", ".join(print_expr(a) for a in node.items)
    if isinstance(node, OpLit):
        rows = ", ".join("[%s]" % ", ".join(print_expr(a) for a in row) for row in node.rows)
        return "op[%s]" % rows
    if isinstance(node, SpanLit):
        return "span{%s}" % ", ".join(print_expr(a) for a in node.items)
    raise TypeError("not an expression node: %r" % (node,))


def print_script(script):
    parts = ["let %s = %s;" % (name, print_expr(e)) for name, e, _ in script.bindings]
    parts.append(print_expr(script.body))
    return " ".join(parts)
