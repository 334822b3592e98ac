"""JSON documents for programs: one object per node, tagged with "node"."""

from pydantic import TypeAdapter

from bitbranch.domain.syntax import Expr, Program

_expr_adapter: TypeAdapter[Expr] = TypeAdapter(Expr)


def program_to_json(p: Program, *, indent: int | None = 2) -> str:
    """Serialise a program; integer literals are written as decimal strings."""
    return p.model_dump_json(indent=indent)


def program_from_json(document: str | bytes) -> Program:
    return Program.model_validate_json(document)


def expr_to_json(e: Expr) -> str:
    return _expr_adapter.dump_json(e).decode()


def expr_from_json(document: str | bytes) -> Expr:
    return _expr_adapter.validate_json(document)
