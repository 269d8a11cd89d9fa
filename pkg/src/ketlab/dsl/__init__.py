"""A small typed expression language over scalars, vectors, operators,
subspaces, and booleans."""

from .lex import Token, tokenize
from .parse import parse_repl_line, parse_script, print_expr, print_script
from .interp import bind_bindings, evaluate, run_script, sort_of
from .fmt import format_value

__all__ = [
    "Token",
    "tokenize",
    "parse_repl_line",
    "parse_script",
    "print_expr",
    "print_script",
    "bind_bindings",
    "evaluate",
    "run_script",
    "sort_of",
    "format_value",
]
