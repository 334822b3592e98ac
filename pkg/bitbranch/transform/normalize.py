"""Conditional branching to nondeterministic branching."""

from bitbranch.domain.syntax import (
    Assume,
    Block,
    IfCond,
    IfNondet,
    Program,
    Stmt,
    Unary,
    UnOp,
    While,
)


def _normalize_stmt(stmt: Stmt) -> Stmt:
    match stmt:
        case IfCond(cond=cond, then=then, orelse=orelse, origin=origin, observable=observable):
            negated = Unary(op=UnOp.LOG_NOT, operand=cond)
            then_guard = Assume(cond=cond, origin=origin, observable=observable)
            else_guard = Assume(cond=negated, origin=origin, observable=observable)
            return IfNondet(
                then=(then_guard, *normalize_block(then)),
                orelse=(else_guard, *normalize_block(orelse)),
                origin=origin,
            )
        case IfNondet(then=then, orelse=orelse):
            return stmt.model_copy(
                update={"then": normalize_block(then), "orelse": normalize_block(orelse)}
            )
        case While(body=body):
            return stmt.model_copy(update={"body": normalize_block(body)})
    return stmt


def normalize_block(block: Block) -> Block:
    return tuple(_normalize_stmt(stmt) for stmt in block)


def branch_normalize(p: Program) -> Program:
    """Rewrite every `if (b) {s1} else {s2}` into `if (*) {assume(b); s1} else {assume(!b); s2}`.

    Loops keep their shape; their `assume(c)`/`assume(!c)` edges appear when the
    CFA is built. Origin tags are preserved, and the introduced assumes carry the
    origin of the conditional they come from.
    """
    return p.model_copy(update={"body": normalize_block(p.body)})
