"""Bitwise-branching translation of expressions, statements and programs."""

from collections.abc import Iterable, Sequence

from loguru import logger

from bitbranch.domain.rules import E1, E2, R, RuleInstance
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
    Opaque,
    Program,
    Stmt,
    Unary,
    UnOp,
    Var,
    While,
    WidthConst,
)
from bitbranch.rules.matching import (
    WeakenSite,
    instantiate,
    match_expr_rules,
    match_site_rules,
    weaken_sites,
)
from bitbranch.transform.options import TransformOptions


class Translator:
    """Applies the enabled rules to one program; temporaries are named per instance.

    Args:
        opts: Transformation options
        taken: Identifiers temporaries must not collide with
    """

    def __init__(self, opts: TransformOptions, *, taken: Iterable[str] = ()):
        self.rules = opts.active_rules()
        self.max_nesting = opts.max_nesting
        self.prefix = opts.fresh_prefix
        self.taken = set(taken)
        self.temporaries: list[str] = []
        self._counter = 0

    def fresh(self) -> str:
        while True:
            self._counter += 1
            name = f"{self.prefix}{self._counter}"
            if name not in self.taken:
                self.taken.add(name)
                self.temporaries.append(name)
                return name

    def _capped(self, instances: list[RuleInstance]) -> list[RuleInstance]:
        if self.max_nesting is None:
            return instances
        return instances[: self.max_nesting]

    # Expressions

    def t_e(self, e: Expr) -> Expr:
        match e:
            case Opaque():
                return e
            case Binary(op=op, left=left, right=right):
                node = Binary(op=op, left=self.t_e(left), right=self.t_e(right))
                if not op.is_bitvector:
                    return node
                instances = match_expr_rules(op, node.left, node.right, rules=self.rules)
                return self._fold(instances, node)
            case Unary(op=op, operand=operand):
                node = Unary(op=op, operand=self.t_e(operand))
                if not op.is_bitvector:
                    return node
                return self._fold(match_expr_rules(op, node.operand, rules=self.rules), node)
            case Ite(cond=cond, then=then, orelse=orelse):
                return Ite(cond=self.t_e(cond), then=self.t_e(then), orelse=self.t_e(orelse))
        return e

    def _fold(self, instances: list[RuleInstance], node: Expr) -> Expr:
        """Nest instances as guarded alternatives; the first one is the outermost guard.

        The seed is always `opaque(node)`, so a bitvector node with no instance is
        still sealed and a second pass leaves it alone.
        """
        instances = self._capped(instances)
        folded: Expr = Opaque(inner=node)
        for ri in reversed(instances):
            cond, replacement = instantiate(ri)
            folded = Ite(cond=cond, then=replacement, orelse=folded)
        if instances:
            logger.debug(f"Folded {[ri.rule_id for ri in instances]} over {node.node}")
        return folded

    # Statements

    def t_block(self, block: Block) -> Block:
        return tuple(out for stmt in block for out in self.t_s(stmt))

    def t_s(self, stmt: Stmt) -> Block:
        match stmt:
            case Assign(rhs=rhs) | Assume(cond=rhs):
                for site in weaken_sites(stmt):
                    instances = self._capped(match_site_rules(site, rules=self.rules))
                    if instances:
                        return self._weaken(stmt, site, instances)
                field = "rhs" if isinstance(stmt, Assign) else "cond"
                return (stmt.model_copy(update={field: self.t_e(rhs)}),)
            case Havoc() | Error():
                return (stmt,)
            case IfCond(cond=cond, then=then, orelse=orelse):
                update = {"cond": self.t_e(cond), "then": self.t_block(then)}
                return (stmt.model_copy(update={**update, "orelse": self.t_block(orelse)}),)
            case IfNondet(then=then, orelse=orelse):
                update = {"then": self.t_block(then), "orelse": self.t_block(orelse)}
                return (stmt.model_copy(update=update),)
            case While(cond=cond, body=body):
                return (stmt.model_copy(update={"cond": self.t_e(cond), "body": self.t_block(body)}),)
        raise TypeError(f"not a statement: {stmt!r}")

    def _capture(self, e: Expr, origin: int | None) -> tuple[Expr, list[Stmt]]:
        temp = self.fresh()
        return Var(name=temp), [Assign(lhs=temp, rhs=self.t_e(e), origin=origin, observable=False)]

    def _weaken(self, stmt: Assign | Assume, site: WeakenSite, instances: Sequence[RuleInstance]) -> Block:
        """Guarded chain of weakenings, falling back to the bitvector operation.

        Operands are captured in temporaries first, so every guard and constraint
        reads the pre-statement operand values. Only the statement closing each
        branch (the constraint, or the opaque fallback) is observable; captures,
        guards and the havoc carry the origin without recording observations.
        """
        origin = stmt.origin
        emitted: list[Stmt] = []
        r = site.r
        needs_r_temp = isinstance(stmt, Assume) and not isinstance(r, (Var, Lit, WidthConst))
        if needs_r_temp and not site.bv_on_left:
            r, captured = self._capture(r, origin)
            emitted.extend(captured)
        t1, captured = self._capture(site.e1, origin)
        emitted.extend(captured)
        delta: dict[str, Expr] = {E1: t1}
        bv: Expr = Unary(op=UnOp.BIT_NOT, operand=t1)
        if isinstance(site.op, BinOp) and site.e2 is not None:
            t2, captured = self._capture(site.e2, origin)
            emitted.extend(captured)
            delta[E2] = t2
            bv = Binary(op=site.op, left=t1, right=t2)
        if needs_r_temp and site.bv_on_left:
            r, captured = self._capture(r, origin)
            emitted.extend(captured)
        delta[R] = r

        chain: Stmt
        if isinstance(stmt, Assign):
            chain = Assign(lhs=stmt.lhs, rhs=Opaque(inner=bv), origin=origin)
        else:
            relation = stmt.cond
            assert isinstance(relation, Binary)
            left, right = (Opaque(inner=bv), r) if site.bv_on_left else (r, Opaque(inner=bv))
            chain = Assume(cond=Binary(op=relation.op, left=left, right=right), origin=origin)

        for ri in reversed(instances):
            cond, constraint = instantiate(RuleInstance(rule=ri.rule, delta=delta))
            then: Block = (Assume(cond=constraint, origin=origin),)
            if isinstance(stmt, Assign):
                then = (Havoc(name=stmt.lhs, origin=origin, observable=False), *then)
            chain = IfCond(cond=cond, then=then, orelse=(chain,), origin=origin, observable=False)

        logger.debug(f"Weakened @{origin} with {[ri.rule_id for ri in instances]}")
        return (*emitted, chain)


def t_e(e: Expr, opts: TransformOptions) -> Expr:
    """Rewrite every bitvector node of `e` into a guarded choice of bit-free alternatives.

    Operands are transformed first. At each bitvector node the enabled rewrite
    instances are folded into nested Ite nodes, the first catalog rule outermost,
    with `opaque(node)` as the final alternative. Opaque nodes are left untouched.
    """
    return Translator(opts).t_e(e)


def t_s(s: Stmt, opts: TransformOptions, *, taken: Iterable[str] = ()) -> Block:
    """Transform one statement; weakened sites expand into several statements.

    Args:
        s: Statement to transform
        opts: Transformation options
        taken: Identifiers generated temporaries must avoid

    Returns:
        Replacement statements, each carrying the origin of `s`
    """
    return Translator(opts, taken=taken).t_s(s)


def transform_program(p: Program, opts: TransformOptions) -> Program:
    """Apply the translation to every statement of `p`.

    Generated temporaries are appended to the declarations; every emitted
    statement keeps the origin of the statement it comes from.
    """
    translator = Translator(opts, taken=p.decls)
    body = translator.t_block(p.body)
    if translator.temporaries:
        logger.info(f"Introduced {len(translator.temporaries)} temporaries")
    return Program(decls=p.decls + tuple(translator.temporaries), body=body)
