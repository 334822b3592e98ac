"""Vectorised evaluation of expressions over whole operand grids."""

from collections.abc import Mapping

import numpy as np
import numpy.typing as npt

from bitbranch.domain.machine import MachineConfig
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

IntArray = npt.NDArray[np.int64]
BoolArray = npt.NDArray[np.bool_]


def _wrap(values: IntArray, cfg: MachineConfig) -> IntArray:
    half = 1 << (cfg.width - 1)
    return np.mod(values + half, cfg.modulus) - half


class _GridEvaluator:
    def __init__(self, env: Mapping[str, IntArray], cfg: MachineConfig):
        self.env = env
        self.cfg = cfg
        self.shape = np.broadcast_shapes(*(a.shape for a in env.values())) if env else ()

    def constant(self, value: int) -> tuple[IntArray, BoolArray]:
        return np.full(self.shape, value, dtype=np.int64), np.zeros(self.shape, dtype=bool)

    def eval(self, e: Expr) -> tuple[IntArray, BoolArray]:
        cfg = self.cfg
        match e:
            case Lit(value=value):
                return self.constant(cfg.wrap(value))
            case BoolLit(value=value):
                return self.constant(int(value))
            case WidthConst():
                return self.constant(cfg.wrap(cfg.width))
            case Var(name=name):
                values = np.broadcast_to(self.env[name], self.shape).astype(np.int64)
                return values, np.zeros(self.shape, dtype=bool)
            case Opaque(inner=inner):
                return self.eval(inner)
            case Unary(op=op, operand=operand):
                values, faults = self.eval(operand)
                match op:
                    case UnOp.NEG:
                        return _wrap(-values, cfg), faults
                    case UnOp.LOG_NOT:
                        return (values == 0).astype(np.int64), faults
                    case UnOp.BIT_NOT:
                        return np.invert(values), faults
            case Binary(op=op, left=left, right=right):
                return self.binary(op, self.eval(left), self.eval(right))
            case Ite(cond=cond, then=then, orelse=orelse):
                cv, cf = self.eval(cond)
                tv, tf = self.eval(then)
                ev, ef = self.eval(orelse)
                taken = cv != 0
                return np.where(taken, tv, ev), cf | np.where(taken, tf, ef)
        raise TypeError(f"not an expression: {e!r}")

    def binary(
        self, op: BinOp, lhs: tuple[IntArray, BoolArray], rhs: tuple[IntArray, BoolArray]
    ) -> tuple[IntArray, BoolArray]:
        (a, af), (b, bf) = lhs, rhs
        faults = af | bf
        cfg = self.cfg
        match op:
            case BinOp.ADD:
                return _wrap(a + b, cfg), faults
            case BinOp.SUB:
                return _wrap(a - b, cfg), faults
            case BinOp.MUL:
                return _wrap(a * b, cfg), faults
            case BinOp.DIV | BinOp.MOD:
                zero = b == 0
                safe = np.where(zero, 1, b)
                if op is BinOp.DIV:
                    result = np.abs(a) // np.abs(safe) * np.sign(a) * np.sign(safe)
                else:
                    result = np.abs(a) % np.abs(safe) * np.sign(a)
                return _wrap(result, cfg), faults | zero
            case BinOp.BIT_AND:
                return a & b, faults
            case BinOp.BIT_OR:
                return a | b, faults
            case BinOp.BIT_XOR:
                return a ^ b, faults
            case BinOp.SHL | BinOp.SHR:
                out_of_range = (b < 0) | (b >= cfg.width)
                amount = np.clip(b, 0, cfg.width - 1)
                if op is BinOp.SHL:
                    result = _wrap(np.left_shift(a, amount), cfg)
                else:
                    result = np.right_shift(a, amount)
                return result, faults | out_of_range
            case BinOp.LT:
                return (a < b).astype(np.int64), faults
            case BinOp.LE:
                return (a <= b).astype(np.int64), faults
            case BinOp.GT:
                return (a > b).astype(np.int64), faults
            case BinOp.GE:
                return (a >= b).astype(np.int64), faults
            case BinOp.EQ:
                return (a == b).astype(np.int64), faults
            case BinOp.NE:
                return (a != b).astype(np.int64), faults
            case BinOp.LOG_AND:
                # the right operand only runs where the left one holds
                return ((a != 0) & (b != 0)).astype(np.int64), af | ((a != 0) & bf)
            case BinOp.LOG_OR:
                return ((a != 0) | (b != 0)).astype(np.int64), af | ((a == 0) & bf)
        raise ValueError(f"unknown operator {op}")


def evaluate_array(
    e: Expr, env: Mapping[str, IntArray], cfg: MachineConfig
) -> tuple[IntArray, BoolArray]:
    """Evaluate `e` elementwise over broadcast variable grids.

    Args:
        e: Expression to evaluate
        env: One integer array per free variable, broadcastable to a common shape
        cfg: Machine width

    Returns:
        (values, faults): values where evaluation succeeded, and a mask of the
        positions whose evaluation faulted. Short-circuit operators and Ite only
        propagate faults from operands that would actually run.
    """
    return _GridEvaluator(env, cfg).eval(e)
