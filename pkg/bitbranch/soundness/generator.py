"""Seeded random programs for inclusion fuzzing.

Division only ever uses nonzero literal divisors and shifts only literal amounts
in [0, width - 1], so generated programs rarely fault.
"""

import random

from bitbranch.domain.machine import MachineConfig
from bitbranch.domain.syntax import (
    Assign,
    Assume,
    Binary,
    BinOp,
    Block,
    Error,
    Expr,
    Havoc,
    IfCond,
    IfNondet,
    Ite,
    Lit,
    Program,
    Stmt,
    Unary,
    UnOp,
    Var,
    While,
    WidthConst,
)
from bitbranch.lang.parser import number_statements

_ARITHMETIC = [BinOp.ADD, BinOp.SUB, BinOp.MUL, BinOp.DIV, BinOp.MOD]
_BITWISE = [BinOp.BIT_AND, BinOp.BIT_OR, BinOp.BIT_XOR, BinOp.SHL, BinOp.SHR]
_RELATIONS = [BinOp.LT, BinOp.LE, BinOp.GT, BinOp.GE, BinOp.EQ, BinOp.NE]
_CONNECTIVES = [BinOp.LOG_AND, BinOp.LOG_OR]
_VARIABLES = ("x", "y", "z")


def _literal(rng: random.Random, cfg: MachineConfig) -> Lit:
    return Lit(value=rng.randint(cfg.min_value, cfg.max_value))


def _leaf(rng: random.Random, names: tuple[str, ...], cfg: MachineConfig) -> Expr:
    roll = rng.random()
    if roll < 0.65:
        return Var(name=rng.choice(names))
    if roll < 0.75:
        return WidthConst()
    return _literal(rng, cfg)


def random_expr(
    rng: random.Random, names: tuple[str, ...], *, cfg: MachineConfig, depth: int = 2
) -> Expr:
    """Random integer expression over `names`, with bitwise operators weighted up.

    Conditional expressions take their condition from random_condition, so &&
    and || only ever sit in Boolean positions.
    """
    if depth == 0 or rng.random() < 0.3:
        return _leaf(rng, names, cfg)
    roll = rng.random()
    if roll < 0.1:
        return Ite(
            cond=random_condition(rng, names, cfg=cfg, depth=depth - 1),
            then=random_expr(rng, names, cfg=cfg, depth=depth - 1),
            orelse=random_expr(rng, names, cfg=cfg, depth=depth - 1),
        )
    if roll < 0.25:
        unop = rng.choice([UnOp.NEG, UnOp.BIT_NOT])
        return Unary(op=unop, operand=random_expr(rng, names, cfg=cfg, depth=depth - 1))
    op = rng.choice(_BITWISE * 2 + _ARITHMETIC)
    left = random_expr(rng, names, cfg=cfg, depth=depth - 1)
    match op:
        case BinOp.SHL | BinOp.SHR:
            right: Expr = Lit(value=rng.randint(0, cfg.width - 1))
        case BinOp.DIV | BinOp.MOD:
            right = Lit(value=rng.choice([v for v in cfg.domain() if v != 0]))
        case _:
            right = random_expr(rng, names, cfg=cfg, depth=depth - 1)
    return Binary(op=op, left=left, right=right)


def random_condition(
    rng: random.Random, names: tuple[str, ...], *, cfg: MachineConfig, depth: int = 1
) -> Expr:
    """Relation between two random expressions, sometimes joined by && or ||, occasionally negated."""
    relation: Expr = Binary(
        op=rng.choice(_RELATIONS),
        left=random_expr(rng, names, cfg=cfg, depth=depth),
        right=random_expr(rng, names, cfg=cfg, depth=depth),
    )
    if rng.random() < 0.2:
        other = Binary(
            op=rng.choice(_RELATIONS),
            left=random_expr(rng, names, cfg=cfg, depth=0),
            right=random_expr(rng, names, cfg=cfg, depth=0),
        )
        relation = Binary(op=rng.choice(_CONNECTIVES), left=relation, right=other)
    if rng.random() < 0.1:
        return Unary(op=UnOp.LOG_NOT, operand=relation)
    return relation


class _ProgramGenerator:
    def __init__(self, rng: random.Random, names: tuple[str, ...], *, cfg: MachineConfig, max_loops: int):
        self.rng = rng
        self.names = names
        self.cfg = cfg
        self.loops_left = max_loops

    def block(self, size: int, depth: int) -> Block:
        return tuple(self.stmt(depth) for _ in range(size))

    def stmt(self, depth: int) -> Stmt:
        rng, names, cfg = self.rng, self.names, self.cfg
        roll = rng.random()
        if depth < 2 and roll < 0.12 and self.loops_left > 0:
            self.loops_left -= 1
            counter = rng.choice(names)
            step = Assign(
                lhs=counter,
                rhs=Binary(op=BinOp.SUB, left=Var(name=counter), right=Lit(value=1)),
            )
            body = (*self.block(rng.randint(0, 2), depth + 1), step)
            cond = Binary(op=BinOp.GT, left=Var(name=counter), right=Lit(value=0))
            return While(cond=cond, body=body)
        if depth < 2 and roll < 0.27:
            then = self.block(rng.randint(1, 2), depth + 1)
            orelse = self.block(rng.randint(0, 2), depth + 1)
            if rng.random() < 0.5:
                return IfNondet(then=then, orelse=orelse)
            return IfCond(cond=random_condition(rng, names, cfg=cfg), then=then, orelse=orelse)
        if roll < 0.37:
            return Havoc(name=rng.choice(names))
        if roll < 0.47:
            return Assume(cond=random_condition(rng, names, cfg=cfg))
        if roll < 0.52 and depth > 0:
            return Error()
        return Assign(lhs=rng.choice(names), rhs=random_expr(rng, names, cfg=cfg))


def random_program(
    rng: random.Random,
    *,
    cfg: MachineConfig,
    max_vars: int = 3,
    max_loops: int = 2,
    max_stmts: int = 5,
) -> Program:
    """Random well-formed program; most variables are havocked up front.

    Args:
        rng: Source of randomness; the same seed gives the same program
        cfg: Machine width, bounding literals and shift amounts
        max_vars: At most this many variables (up to three)
        max_loops: At most this many loops
        max_stmts: Statements after the opening havocs

    Returns:
        Program with origins numbered as if freshly parsed
    """
    names = _VARIABLES[: rng.randint(1, min(max_vars, len(_VARIABLES)))]
    generator = _ProgramGenerator(rng, names, cfg=cfg, max_loops=max_loops)
    prologue = tuple(Havoc(name=name) for name in names if rng.random() < 0.8)
    body = prologue + generator.block(rng.randint(1, max_stmts), 0)
    return Program(decls=names, body=number_statements(body))
