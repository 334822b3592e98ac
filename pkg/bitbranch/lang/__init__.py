"""Concrete syntax of the mini language: parsing, printing and syntactic queries."""

from bitbranch.lang.analysis import free_vars, is_bitfree, strip_origins
from bitbranch.lang.json_ast import program_from_json, program_to_json
from bitbranch.lang.parser import parse_expr, parse_program
from bitbranch.lang.printer import format_expr, format_stmt, pretty_print

__all__ = [
    "format_expr",
    "format_stmt",
    "free_vars",
    "is_bitfree",
    "parse_expr",
    "parse_program",
    "pretty_print",
    "program_from_json",
    "program_to_json",
    "strip_origins",
]
