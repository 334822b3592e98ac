"""Canonical text form of programs, statements and expressions."""

from bitbranch.domain.syntax import (
    Assign,
    Assume,
    Binary,
    BinOp,
    Block,
    BoolLit,
    Error,
    Expr,
    Havoc,
    IfCond,
    IfNondet,
    Ite,
    Lit,
    Opaque,
    Program,
    Stmt,
    Unary,
    UnOp,
    Var,
    While,
    WidthConst,
)

INDENT = "  "

# binding strength, higher binds tighter
_TERNARY = 1
_UNARY = 11
_ATOM = 12

_BINOP_PRECEDENCE = {
    BinOp.LOG_OR: 2,
    BinOp.LOG_AND: 3,
    BinOp.LT: 4,
    BinOp.LE: 4,
    BinOp.GT: 4,
    BinOp.GE: 4,
    BinOp.EQ: 4,
    BinOp.NE: 4,
    BinOp.BIT_OR: 5,
    BinOp.BIT_XOR: 6,
    BinOp.BIT_AND: 7,
    BinOp.ADD: 8,
    BinOp.SUB: 8,
    BinOp.MUL: 9,
    BinOp.DIV: 9,
    BinOp.MOD: 9,
    BinOp.SHL: 10,
    BinOp.SHR: 10,
}


def _precedence(e: Expr) -> int:
    match e:
        case Binary(op=op):
            return _BINOP_PRECEDENCE[op]
        case Ite():
            return _TERNARY
        case Unary():
            return _UNARY
        case Lit(value=value) if value < 0:
            return _UNARY
        case _:
            return _ATOM


def _needs_clarity_parens(parent: BinOp, child: Expr) -> bool:
    """Parentheses beyond the precedence table, for operands a C reader would group."""
    if not isinstance(child, Binary):
        return False
    if parent.is_bitvector:
        return child.op != parent and not (child.op.is_logical or child.op.is_relational)
    if parent.is_relational:
        return child.op.is_bitvector
    return False


def _operand(parent: BinOp, child: Expr, *, right: bool) -> str:
    text = format_expr(child)
    prec, child_prec = _BINOP_PRECEDENCE[parent], _precedence(child)
    grouped = child_prec < prec or (right and child_prec == prec)
    if grouped or _needs_clarity_parens(parent, child):
        return f"({text})"
    return text


def format_expr(e: Expr) -> str:
    """Render an expression with minimal (plus clarifying) parentheses."""
    match e:
        case Lit(value=value):
            return str(value)
        case BoolLit(value=value):
            return "true" if value else "false"
        case Var(name=name):
            return name
        case WidthConst():
            return "WIDTH"
        case Opaque(inner=inner):
            return f"opaque({format_expr(inner)})"
        case Unary(op=op, operand=operand):
            text = format_expr(operand)
            literal_operand = isinstance(operand, Lit) and (op is UnOp.NEG or operand.value < 0)
            if _precedence(operand) < _UNARY or literal_operand:
                text = f"({text})"
            return f"{op.value}{text}"
        case Binary(op=op, left=left, right=right):
            lhs = _operand(op, left, right=False)
            rhs = _operand(op, right, right=True)
            return f"{lhs} {op.value} {rhs}"
        case Ite(cond=cond, then=then, orelse=orelse):
            parts = [format_expr(part) for part in (cond, then, orelse)]
            parts = [
                f"({text})" if _precedence(part) == _TERNARY else text
                for part, text in zip((cond, then, orelse), parts)
            ]
            return f"{parts[0]} ? {parts[1]} : {parts[2]}"
    raise TypeError(f"not an expression: {e!r}")


def _header(text: str, stmt: Stmt, annotate: bool) -> str:
    if annotate and stmt.origin is not None:
        # helper statements of a weakened site show their tag in parentheses
        tag = f"@{stmt.origin}" if stmt.observable else f"(@{stmt.origin})"
        return f"{text}  // {tag}"
    return text


def _format_block(block: Block, depth: int, annotate: bool) -> list[str]:
    lines: list[str] = []
    for stmt in block:
        lines.extend(_format_stmt(stmt, depth, annotate))
    return lines


def _format_stmt(stmt: Stmt, depth: int, annotate: bool) -> list[str]:
    pad = INDENT * depth
    match stmt:
        case Assign(lhs=lhs, rhs=rhs):
            return [pad + _header(f"{lhs} := {format_expr(rhs)};", stmt, annotate)]
        case Havoc(name=name):
            return [pad + _header(f"havoc {name};", stmt, annotate)]
        case Assume(cond=cond):
            return [pad + _header(f"assume({format_expr(cond)});", stmt, annotate)]
        case Error():
            return [pad + _header("error;", stmt, annotate)]
        case While(cond=cond, body=body):
            lines = [pad + _header(f"while ({format_expr(cond)}) {{", stmt, annotate)]
            lines.extend(_format_block(body, depth + 1, annotate))
            lines.append(pad + "}")
            return lines
        case IfCond() | IfNondet():
            guard = format_expr(stmt.cond) if isinstance(stmt, IfCond) else "*"
            lines = [pad + _header(f"if ({guard}) {{", stmt, annotate)]
            lines.extend(_format_block(stmt.then, depth + 1, annotate))
            if stmt.orelse:
                lines.append(pad + "} else {")
                lines.extend(_format_block(stmt.orelse, depth + 1, annotate))
            lines.append(pad + "}")
            return lines
    raise TypeError(f"not a statement: {stmt!r}")


def format_stmt(stmt: Stmt, *, annotate: bool = False) -> str:
    """Render one statement; compound statements span several lines."""
    return "\n".join(_format_stmt(stmt, 0, annotate))


def format_block(block: Block, *, annotate: bool = False) -> str:
    return "\n".join(_format_block(block, 0, annotate))


def pretty_print(p: Program, *, annotate: bool = False) -> str:
    """Canonical text of a program.

    One statement per line, two-space indentation, minimal parentheses per the
    precedence table plus clarifying ones around mixed bitwise operands.

    Args:
        p: Program to print
        annotate: Append origin tags as `// @k` comments, `// (@k)` on non-observable helpers

    Returns:
        Program text that parses back to `p` (origin tags aside)
    """
    lines = [f"var {', '.join(p.decls)};"] if p.decls else []
    lines.extend(_format_block(p.body, 0, annotate))
    return "\n".join(lines) + "\n"
