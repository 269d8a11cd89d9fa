"""Tests for the expression language: lexing, parsing, evaluation, printing."""

import pytest

from ketlab.dsl import (
    evaluate,
    format_value,
    parse_repl_line,
    parse_script,
    print_expr,
    print_script,
    run_script,
    tokenize,
)
from ketlab.dsl.parse import Bin, Call, Imag, Neg, Num, OpLit, SpanLit, Var, VecLit
from ketlab.errors import (
    DimMismatch,
    EvalTypeError,
    LexError,
    ParseError,
    RebindIdentifier,
    UnboundIdentifier,
)
from ketlab.hop import HOp, adjoint, compose, identity
from ketlab.hsub import seq, top
from ketlab.hvec import HVec, ket, vnorm, vsub
from ketlab.numeric import RngStream


def ev(text):
    return run_script(parse_script(text))


def kinds(text):
    return [(t.kind, t.text) for t in tokenize(text)]


class TestTokenize:
    def test_numbers_and_imaginary(self):
        assert kinds("2+3i") == [("num", "2"), ("sym", "+"), ("imag", "3i"), ("eof", "")]
        toks = tokenize("0.25 7i 3.5i i")
        assert [t.kind for t in toks[:-1]] == ["num", "imag", "imag", "imag"]
        assert [t.value for t in toks[:-1]] == [0.25, 7.0, 3.5, 1.0]

    def test_ident_starting_with_i_is_not_imaginary(self):
        toks = tokenize("i5 inn")
        assert [(t.kind, t.text) for t in toks[:-1]] == [("ident", "i5"), ("ident", "inn")]

    def test_keywords(self):
        toks = tokenize("let ket proj span op vec classical")
        assert all(t.kind == "keyword" for t in toks[:-1])

    def test_symbols(self):
        assert [t.text for t in tokenize("<= == = ; + - *")[:-1]] == ["<=", "==", "=", ";", "+", "-", "*"]

    def test_string_literal(self):
        toks = tokenize('classical(2, 2, "0->1,1->0")')
        strs = [t for t in toks if t.kind == "str"]
        assert len(strs) == 1 and strs[0].value == "0->1,1->0"

    def test_positions_track_lines(self):
        toks = tokenize("let x =\n  ket(0, 2);\nx")
        by_text = {t.text: (t.line, t.col) for t in toks if t.kind != "eof"}
        assert by_text["let"] == (1, 1)
        assert by_text["ket"] == (2, 3)
        assert by_text["x"] == (3, 1)

    def test_unknown_character(self):
        with pytest.raises(LexError) as err:
            tokenize("@")
        assert err.value.position == (1, 1)

    def test_bare_less_than_rejected(self):
        with pytest.raises(LexError) as err:
            tokenize("1 < 2")
        assert err.value.position == (1, 3)

    def test_unterminated_string(self):
        with pytest.raises(LexError):
            tokenize('classical(2, 2, "0->1')


class TestParse:
    def test_precedence(self):
        got = parse_script("1 + 2 * 3").body
        assert got == Bin("+", Num(1.0, None), Bin("*", Num(2.0, None), Num(3.0, None), None), None)

    def test_comparison_is_loosest(self):
        got = parse_script("1 + 1 <= 3").body
        assert got.op == "<=" and got.lhs.op == "+"

    def test_comparison_does_not_chain(self):
        with pytest.raises(ParseError) as err:
            parse_script("1 <= 2 <= 3")
        assert err.value.position == (1, 8)

    def test_unary_minus_nests(self):
        got = parse_script("--2").body
        assert got == Neg(Neg(Num(2.0, None), None), None)

    def test_subtraction_is_left_associative(self):
        got = parse_script("1 - 2 - 3").body
        assert got.lhs.op == "-" and got.rhs == Num(3.0, None)

    def test_literals(self):
        assert parse_script("vec[1, 2i]").body == VecLit([Num(1.0, None), Imag(2.0, None)], None)
        assert parse_script("op[[1],[2]]").body == OpLit([[Num(1.0, None)], [Num(2.0, None)]], None)
        assert parse_script("span{ket(0,2)}").body == SpanLit(
            [Call("ket", [Num(0.0, None), Num(2.0, None)], None)], None
        )

    def test_let_bindings(self):
        script = parse_script("let a = 1; let b = a; b")
        assert [name for name, _, _ in script.bindings] == ["a", "b"]
        assert script.body == Var("b", None)

    def test_missing_argument(self):
        with pytest.raises(ParseError) as err:
            parse_script("ket(")
        assert err.value.position == (1, 5)

    def test_unclosed_vector(self):
        with pytest.raises(ParseError) as err:
            parse_script("vec[1, 2")
        assert err.value.expected == frozenset({",", "]"})

    def test_keyword_is_not_a_variable(self):
        with pytest.raises(ParseError):
            parse_script("let proj = 1; proj")

    def test_trailing_garbage(self):
        with pytest.raises(ParseError):
            parse_script("1 2")

    def test_repl_line_with_only_bindings(self):
        bindings, body = parse_repl_line("let a = 2;")
        assert len(bindings) == 1 and body is None
        bindings, body = parse_repl_line("let a = 2; a * a")
        assert len(bindings) == 1 and body is not None


def _random_expr(rng, depth):
    """A small random AST drawn from the printable fragment."""
    if depth <= 0:
        leaf = rng.next_below(4)
        if leaf == 0:
            return Num(float(rng.next_below(50)) / 2.0, None)
        if leaf == 1:
            return Imag(float(rng.next_below(9)), None)
        if leaf == 2:
            return Var("x%d" % rng.next_below(4), None)
        return Call("ket", [Num(0.0, None), Num(2.0, None)], None)
    shape = rng.next_below(6)
    if shape == 0:
        op = ("+", "-", "*")[rng.next_below(3)]
        return Bin(op, _random_expr(rng, depth - 1), _random_expr(rng, depth - 1), None)
    if shape == 1:
        return Neg(_random_expr(rng, depth - 1), None)
    if shape == 2:
        n = 1 + rng.next_below(3)
        return VecLit([_random_expr(rng, 0) for _ in range(n)], None)
    if shape == 3:
        r, c = 1 + rng.next_below(2), 1 + rng.next_below(3)
        return OpLit([[_random_expr(rng, 0) for _ in range(c)] for _ in range(r)], None)
    if shape == 4:
        name = ("norm", "adj", "inner", "sup", "trunc")[rng.next_below(5)]
        n = 1 + rng.next_below(3)
        return Call(name, [_random_expr(rng, depth - 1) for _ in range(n)], None)
    op = ("<=", "==")[rng.next_below(2)]
    return Bin(op, _random_expr(rng, depth - 1), _random_expr(rng, depth - 1), None)


class TestPrintParseRoundTrip:
    def test_expression_corpus(self):
        rng = RngStream(1311)
        for trial in range(300):
            expr = _random_expr(rng.derive(trial), 3)
            text = print_expr(expr)
            assert parse_script(text).body == expr, text

    def test_script_roundtrip(self):
        script = parse_script("let u = ket(0, 2); let w = 2 * u; norm(w + u)")
        assert parse_script(print_script(script)) == script

    def test_printer_output_is_stable(self):
        text = print_expr(parse_script("-(1 + 2i) * norm(vec[1, 0])").body)
        assert text == "((-(1 + 2i)) * norm(vec[1, 0]))"


class TestEval:
    def test_worked_examples(self):
        assert ev("inner(ket(0,2), ket(0,2))") == 1 + 0j
        got = ev("adj(op[[0,1],[0,0]]) * ket(0,2)")
        assert vnorm(vsub(got, ket(1, 2))) < 1e-12
        assert abs(ev("norm(op[[1,1]])") - 2**0.5) < 1e-12
        assert ev("proj(span{ket(0,2)}) <= proj(top(2))") is True

    def test_star_dispatch_matches_named_forms(self):
        pairs = [
            ("2 * 3i", "scale(2, 3i)"),
            ("op[[0,1],[1,0]] * ket(0,2)", "applyv(op[[0,1],[1,0]], ket(0,2))"),
            ("op[[0,1],[1,0]] * op[[1,0],[0,0]]", "compose(op[[0,1],[1,0]], op[[1,0],[0,0]])"),
            ("op[[0,1],[1,0]] * span{ket(0,2)}", "img(op[[0,1],[1,0]], span{ket(0,2)})"),
        ]
        for sugar, named in pairs:
            left, right = ev(sugar), ev(named)
            assert ev_equal(left, right)

    def test_space_algebra(self):
        assert ev("-top(3) == bot(3)") is True
        assert ev("sup(span{ket(0,3)}, span{ket(1,3)}) == span{ket(0,3), ket(1,3)}") is True
        assert ev("inf(top(3), span{ket(2,3)}) == span{ket(2,3)}") is True
        assert ev("ocompl(bot(4)) == top(4)") is True

    def test_loewner_and_scalar_order(self):
        assert ev("op[[1,0],[0,1]] <= op[[2,0],[0,2]]") is True
        assert ev("op[[2,0],[0,2]] <= op[[1,0],[0,1]]") is False
        assert ev("1 <= 2") is True
        assert ev("2i <= 1") is False

    def test_dim_and_eigenspace(self):
        assert ev("dim(vec[1, 2, 3])") == 3 + 0j
        assert ev("dim(kernel(op[[1,0],[0,0]]))") == 1 + 0j
        assert ev("eigenspace(1, id(3)) == top(3)") is True

    def test_classical_forms(self):
        swap = ev('classical(2, 2, "0->1,1->0")')
        assert isinstance(swap, HOp)
        assert ev_equal(compose(swap, swap), identity(2))
        partial = ev('classical(3, 2, "0->1,1->0,2->_")')
        third = ev("classical(3, 2, \"0->1,1->0,2->_\") * ket(2,3)")
        assert vnorm(third) < 1e-12
        assert partial.rows == 2 and partial.cols == 3

    def test_classical_rejects_malformed_maps(self):
        for bad in ["0->1", "0->1,0->0", "0->5,1->0", "x->1,1->0", "0=>1,1->0"]:
            with pytest.raises(EvalTypeError):
                ev('classical(2, 2, "%s")' % bad)

    def test_string_outside_classical_is_an_error(self):
        with pytest.raises(EvalTypeError):
            ev('norm("hello")')

    def test_unbound_identifier_position(self):
        with pytest.raises(UnboundIdentifier) as err:
            ev("1 + nope")
        assert err.value.position == (1, 5)

    def test_rebind_is_an_error(self):
        with pytest.raises(RebindIdentifier):
            ev("let a = 1; let a = 2; a")

    def test_type_error_points_at_offender(self):
        with pytest.raises(EvalTypeError) as err:
            ev("norm(5)")
        assert err.value.position == (1, 6)

    def test_sort_mismatch_in_star(self):
        with pytest.raises(EvalTypeError):
            ev("ket(0,2) * 2")
        with pytest.raises(EvalTypeError):
            ev("span{ket(0,2)} * op[[1,0],[0,1]]")

    def test_dimension_errors_propagate(self):
        with pytest.raises(DimMismatch):
            ev("ket(0,2) + ket(0,3)")

    def test_ragged_matrix_rows(self):
        with pytest.raises(EvalTypeError):
            ev("op[[1],[2,3]]")

    def test_vec_entries_must_be_scalars(self):
        with pytest.raises(EvalTypeError):
            ev("vec[ket(0,2), 1]")

    def test_counts_must_be_integers(self):
        with pytest.raises(EvalTypeError):
            ev("ket(0, 2.5)")
        with pytest.raises(EvalTypeError):
            ev("id(2i)")

    def test_evaluation_is_pure(self):
        script = parse_script("let a = ket(0,2); inner(a, a)")
        env = {}
        first = run_script(script, env)
        assert "a" in env
        again = evaluate(script.body, env)
        assert first == again

    def test_adjoint_builtin(self):
        a = ev("op[[1, 2i], [0, 3]]")
        assert ev_equal(ev("adj(op[[1, 2i], [0, 3]])"), adjoint(a))

    def test_equality_on_vectors_and_scalars(self):
        assert ev("vec[1, 0] == ket(0, 2)") is True
        assert ev("1 + 1 == 2") is True
        assert ev("1 == 2") is False
        assert ev("(1 <= 2) == (0 <= 1)") is True


def ev_equal(x, y):
    if isinstance(x, HOp):
        from ketlab.hop import sub
        from ketlab.numeric import fro_norm

        return fro_norm(sub(x, y).mat) < 1e-9
    if isinstance(x, HVec):
        return vnorm(vsub(x, y)) < 1e-9
    if isinstance(x, complex):
        return abs(x - y) < 1e-9
    return seq(x, y)


class TestFormat:
    def test_scalars(self):
        assert format_value(1 + 0j) == "1"
        assert format_value(complex(2, 3)) == "2+3i"
        assert format_value(complex(0, 2)) == "2i"
        assert format_value(complex(1.5, -2)) == "1.5-2i"
        assert format_value(complex(-0.0, 0.0)) == "0"
        assert format_value(complex(0.0, -0.0)) == "0"
        assert format_value(2**0.5 + 0j, 9) == "1.41421356"
        assert format_value(2**0.5 + 0j, 3) == "1.41"

    def test_precision_must_be_positive(self):
        with pytest.raises(ValueError):
            format_value(1 + 0j, 0)

    def test_bool(self):
        assert format_value(True) == "true"
        assert format_value(False) == "false"

    def test_vector(self):
        assert format_value(HVec([0, 0])) == "[0, 0]"
        assert format_value(HVec([1, complex(0, -1)])) == "[1, -1i]"

    def test_operator(self):
        assert format_value(identity(2)) == "[[1, 0], [0, 1]]"

    def test_subspace(self):
        assert format_value(top(2)) == "span{[1, 0], [0, 1]}"
        assert format_value(ev("bot(2)")) == "span{}"

    def test_integer_valued_results_print_bare(self):
        assert format_value(ev("dim(vec[1,2,3])")) == "3"
