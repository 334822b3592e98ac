"""Syntactic queries over expressions, statements and programs."""

from collections.abc import Iterator, Mapping

from bitbranch.domain.syntax import (
    Assign,
    Assume,
    Binary,
    Block,
    Expr,
    Havoc,
    IfCond,
    IfNondet,
    Ite,
    Opaque,
    Program,
    Stmt,
    Unary,
    Var,
    While,
)


def subexprs(e: Expr) -> Iterator[Expr]:
    """Preorder walk of an expression, descending into Opaque."""
    yield e
    match e:
        case Unary(operand=operand):
            yield from subexprs(operand)
        case Binary(left=left, right=right):
            yield from subexprs(left)
            yield from subexprs(right)
        case Ite(cond=cond, then=then, orelse=orelse):
            yield from subexprs(cond)
            yield from subexprs(then)
            yield from subexprs(orelse)
        case Opaque(inner=inner):
            yield from subexprs(inner)


def free_vars(e: Expr) -> frozenset[str]:
    return frozenset(node.name for node in subexprs(e) if isinstance(node, Var))


def is_bitfree(e: Expr) -> bool:
    """True iff `e` contains no bitvector operator, Opaque contents included."""
    for node in subexprs(e):
        if isinstance(node, (Binary, Unary)) and node.op.is_bitvector:
            return False
    return True


def iter_stmts(block: Block) -> Iterator[Stmt]:
    """Preorder walk over a block and all nested blocks."""
    for stmt in block:
        yield stmt
        match stmt:
            case IfCond() | IfNondet():
                yield from iter_stmts(stmt.then)
                yield from iter_stmts(stmt.orelse)
            case While(body=body):
                yield from iter_stmts(body)


def stmt_exprs(stmt: Stmt) -> tuple[Expr, ...]:
    """Expressions held directly by a statement (nested blocks excluded)."""
    match stmt:
        case Assign(rhs=rhs):
            return (rhs,)
        case Assume(cond=cond) | IfCond(cond=cond) | While(cond=cond):
            return (cond,)
    return ()


def assigned_vars(stmt: Stmt) -> frozenset[str]:
    match stmt:
        case Assign(lhs=lhs):
            return frozenset({lhs})
        case Havoc(name=name):
            return frozenset({name})
    return frozenset()


def program_vars(p: Program) -> frozenset[str]:
    """Every identifier the body mentions."""
    names: set[str] = set()
    for stmt in iter_stmts(p.body):
        names |= assigned_vars(stmt)
        for e in stmt_exprs(stmt):
            names |= free_vars(e)
    return frozenset(names)


def origins(block: Block) -> list[int]:
    return [s.origin for s in iter_stmts(block) if s.origin is not None]


def _strip_block(block: Block) -> Block:
    stripped = []
    for stmt in block:
        update: dict[str, object] = {"origin": None, "observable": True}
        if isinstance(stmt, (IfCond, IfNondet)):
            update["then"] = _strip_block(stmt.then)
            update["orelse"] = _strip_block(stmt.orelse)
        elif isinstance(stmt, While):
            update["body"] = _strip_block(stmt.body)
        stripped.append(stmt.model_copy(update=update))
    return tuple(stripped)


def strip_origins(p: Program) -> Program:
    """Program with every origin tag and observability flag reset, for structural comparison."""
    return p.model_copy(update={"body": _strip_block(p.body)})


def substitute(e: Expr, delta: Mapping[str, Expr]) -> Expr:
    """Simultaneously replace variables named in `delta`."""
    match e:
        case Var(name=name):
            return delta.get(name, e)
        case Unary(operand=operand):
            return e.model_copy(update={"operand": substitute(operand, delta)})
        case Binary(left=left, right=right):
            return e.model_copy(
                update={"left": substitute(left, delta), "right": substitute(right, delta)}
            )
        case Ite(cond=cond, then=then, orelse=orelse):
            return e.model_copy(
                update={
                    "cond": substitute(cond, delta),
                    "then": substitute(then, delta),
                    "orelse": substitute(orelse, delta),
                }
            )
        case Opaque(inner=inner):
            return e.model_copy(update={"inner": substitute(inner, delta)})
    return e
