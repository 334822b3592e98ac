"""Scalar evaluation of expressions at a fixed bit width."""

from collections.abc import Callable, Mapping, Sequence

from bitbranch.domain.machine import EvalFault, FaultKind, MachineConfig, State
from bitbranch.domain.syntax import (
    Binary,
    BinOp,
    BoolLit,
    Expr,
    Ite,
    Lit,
    Opaque,
    Unary,
    UnOp,
    Var,
    WidthConst,
)

Compiled = Callable[[Sequence[int]], int]


class Faulted(Exception):
    """Raised inside compiled closures when a partial operation is undefined."""

    def __init__(self, kind: FaultKind):
        super().__init__(kind.value)
        self.kind = kind


def trunc_div(a: int, b: int) -> int:
    """Integer division rounding toward zero, as C does."""
    q = abs(a) // abs(b)
    return q if (a < 0) == (b < 0) else -q


def trunc_mod(a: int, b: int) -> int:
    # sign follows the dividend
    r = abs(a) % abs(b)
    return -r if a < 0 else r


def _binary(op: BinOp, left: Compiled, right: Compiled, cfg: MachineConfig) -> Compiled:
    wrap, width = cfg.wrap, cfg.width

    def shift_amount(values: Sequence[int]) -> int:
        amount = right(values)
        if amount < 0 or amount >= width:
            raise Faulted(FaultKind.SHIFT_OUT_OF_RANGE)
        return amount

    def divisor(values: Sequence[int]) -> int:
        b = right(values)
        if b == 0:
            raise Faulted(FaultKind.DIV_BY_ZERO)
        return b

    match op:
        case BinOp.ADD:
            return lambda v: wrap(left(v) + right(v))
        case BinOp.SUB:
            return lambda v: wrap(left(v) - right(v))
        case BinOp.MUL:
            return lambda v: wrap(left(v) * right(v))
        case BinOp.DIV:
            return lambda v: wrap(trunc_div(left(v), divisor(v)))
        case BinOp.MOD:
            return lambda v: wrap(trunc_mod(left(v), divisor(v)))
        case BinOp.BIT_AND:
            return lambda v: left(v) & right(v)
        case BinOp.BIT_OR:
            return lambda v: left(v) | right(v)
        case BinOp.BIT_XOR:
            return lambda v: left(v) ^ right(v)
        case BinOp.SHL:
            return lambda v: wrap(left(v) << shift_amount(v))
        case BinOp.SHR:
            return lambda v: left(v) >> shift_amount(v)
        case BinOp.LT:
            return lambda v: int(left(v) < right(v))
        case BinOp.LE:
            return lambda v: int(left(v) <= right(v))
        case BinOp.GT:
            return lambda v: int(left(v) > right(v))
        case BinOp.GE:
            return lambda v: int(left(v) >= right(v))
        case BinOp.EQ:
            return lambda v: int(left(v) == right(v))
        case BinOp.NE:
            return lambda v: int(left(v) != right(v))
        case BinOp.LOG_AND:
            return lambda v: int(left(v) != 0 and right(v) != 0)
        case BinOp.LOG_OR:
            return lambda v: int(left(v) != 0 or right(v) != 0)
    raise ValueError(f"unknown operator {op}")


def compile_expr(e: Expr, slots: Mapping[str, int], cfg: MachineConfig) -> Compiled:
    """Compile an expression into a closure over a value vector.

    Args:
        e: Expression to compile
        slots: Position of each variable in the value vector
        cfg: Machine width

    Returns:
        Function from a value vector to the expression's value; raises Faulted
        on division by zero or an out-of-range shift amount
    """
    match e:
        case Lit(value=value):
            constant = cfg.wrap(value)
            return lambda _: constant
        case BoolLit(value=value):
            truth = int(value)
            return lambda _: truth
        case WidthConst():
            # a w-bit value like any other: -2 at width 2, while WIDTH - 1 is still 1
            width = cfg.wrap(cfg.width)
            return lambda _: width
        case Var(name=name):
            slot = slots[name]
            return lambda v: v[slot]
        case Opaque(inner=inner):
            return compile_expr(inner, slots, cfg)
        case Unary(op=op, operand=operand):
            inner = compile_expr(operand, slots, cfg)
            match op:
                case UnOp.NEG:
                    return lambda v: cfg.wrap(-inner(v))
                case UnOp.LOG_NOT:
                    return lambda v: int(inner(v) == 0)
                case UnOp.BIT_NOT:
                    return lambda v: ~inner(v)
        case Binary(op=op, left=left, right=right):
            return _binary(op, compile_expr(left, slots, cfg), compile_expr(right, slots, cfg), cfg)
        case Ite(cond=cond, then=then, orelse=orelse):
            c = compile_expr(cond, slots, cfg)
            t = compile_expr(then, slots, cfg)
            f = compile_expr(orelse, slots, cfg)
            return lambda v: t(v) if c(v) != 0 else f(v)
    raise TypeError(f"not an expression: {e!r}")


def eval_expr(e: Expr, sigma: State, cfg: MachineConfig) -> int | EvalFault:
    """Value of `e` in state `sigma`, or the fault that stopped evaluation."""
    slots = {name: i for i, name in enumerate(sigma.names)}
    try:
        return compile_expr(e, slots, cfg)(sigma.values)
    except Faulted as fault:
        return EvalFault(kind=fault.kind)
