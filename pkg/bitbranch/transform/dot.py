"""Graphviz rendering of control-flow automata."""

import json

from bitbranch.domain.cfa import Cfa
from bitbranch.domain.syntax import Assign, Assume, Error, Havoc, Stmt
from bitbranch.lang.printer import format_expr


def edge_label(stmt: Stmt) -> str:
    match stmt:
        case Assign(lhs=lhs, rhs=rhs):
            return f"{lhs} := {format_expr(rhs)}"
        case Havoc(name=name):
            return f"havoc {name}"
        case Assume(cond=cond):
            return f"assume({format_expr(cond)})"
        case Error():
            return "error"
    raise TypeError(f"unexpected edge label {stmt!r}")


def cfa_to_dot(cfa: Cfa, *, name: str = "cfa") -> str:
    """DOT digraph of a CFA; the initial location is bold, the error location a double circle."""
    lines = [f"digraph {name} {{", "  node [shape=circle];"]
    for q in cfa.locations:
        attributes = [f'label="q{q}"']
        if q == cfa.initial:
            attributes.append("style=bold")
        if q == cfa.error:
            attributes.append("shape=doublecircle")
        lines.append(f"  q{q} [{', '.join(attributes)}];")
    for edge in cfa.edges:
        # json.dumps yields a double-quoted string with DOT-compatible escapes
        lines.append(f"  q{edge.source} -> q{edge.target} [label={json.dumps(edge_label(edge.stmt))}];")
    lines.append("}")
    return "\n".join(lines) + "\n"
