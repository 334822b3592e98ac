"""Structural matching of catalog rules against expressions and statements."""

from collections.abc import Sequence

from loguru import logger
from pydantic import BaseModel, ConfigDict

from bitbranch.domain.rules import E1, E2, R, Relator, Rule, RuleInstance, RuleKind, StaticGuard
from bitbranch.domain.syntax import Assign, Assume, Binary, BinOp, Expr, Lit, Stmt, Unary, UnOp, Var
from bitbranch.lang.analysis import substitute
from bitbranch.rules.catalog import catalog


class WeakenSite(BaseModel):
    """A statement of shape `r rel (e1 op e2)`, `(e1 op e2) rel r` or `r := e1 op e2`.

    Attributes:
        r: Assigned variable, or the operand opposite the bitvector expression
        relator: Relation read with `r` on the left
        op: Bitvector operator at the top of the matched expression
        e1, e2: Its operands; e2 is None for `~`
        bv_on_left: The bitvector expression was the left operand of the relation
    """

    model_config = ConfigDict(frozen=True)

    r: Expr
    relator: Relator
    op: BinOp | UnOp
    e1: Expr
    e2: Expr | None = None
    bv_on_left: bool = False


def _bitvector_parts(e: Expr) -> tuple[BinOp | UnOp, Expr, Expr | None] | None:
    match e:
        case Binary(op=op, left=left, right=right) if op.is_bitvector:
            return op, left, right
        case Unary(op=UnOp.BIT_NOT, operand=operand):
            return UnOp.BIT_NOT, operand, None
    return None


def weaken_sites(stmt: Stmt) -> list[WeakenSite]:
    """Candidate weakening shapes of a statement, right-hand bitvector operand first."""
    match stmt:
        case Assign(lhs=lhs, rhs=rhs):
            parts = _bitvector_parts(rhs)
            if parts is None:
                return []
            op, e1, e2 = parts
            return [WeakenSite(r=Var(name=lhs), relator=Relator.ASSIGN, op=op, e1=e1, e2=e2)]
        case Assume(cond=Binary(op=op, left=left, right=right)):
            relator = Relator.from_binop(op)
            if relator is None:
                return []
            sites = []
            if (parts := _bitvector_parts(right)) is not None:
                bv_op, e1, e2 = parts
                sites.append(WeakenSite(r=left, relator=relator, op=bv_op, e1=e1, e2=e2))
            if (parts := _bitvector_parts(left)) is not None:
                bv_op, e1, e2 = parts
                sites.append(
                    WeakenSite(
                        r=right, relator=relator.mirrored(), op=bv_op, e1=e1, e2=e2, bv_on_left=True
                    )
                )
            return sites
    return []


def _guard_holds(guard: StaticGuard | None, delta: dict[str, Expr]) -> bool:
    match guard:
        case None:
            return True
        case StaticGuard.CONST_E1:
            return isinstance(delta.get(E1), Lit)
        case StaticGuard.CONST_E2:
            return isinstance(delta.get(E2), Lit)
        case StaticGuard.ZERO_R:
            r = delta.get(R)
            return isinstance(r, Lit) and r.value == 0
    return False


def _delta(e1: Expr, e2: Expr | None, r: Expr | None = None) -> dict[str, Expr]:
    delta = {E1: e1}
    if e2 is not None:
        delta[E2] = e2
    if r is not None:
        delta[R] = r
    return delta


def match_expr_rules(
    op: BinOp | UnOp,
    e1: Expr,
    e2: Expr | None = None,
    *,
    rules: Sequence[Rule] | None = None,
) -> list[RuleInstance]:
    """Rewrite rules for `op`, in catalog order, instantiated on the operands."""
    delta = _delta(e1, e2)
    return [
        RuleInstance(rule=rule, delta=delta)
        for rule in (catalog() if rules is None else rules)
        if rule.kind is RuleKind.REWRITE
        and rule.operator == op
        and _guard_holds(rule.static_guard, delta)
    ]


def match_site_rules(site: WeakenSite, *, rules: Sequence[Rule] | None = None) -> list[RuleInstance]:
    delta = _delta(site.e1, site.e2, site.r)
    return [
        RuleInstance(rule=rule, delta=delta)
        for rule in (catalog() if rules is None else rules)
        if rule.kind is RuleKind.WEAKEN
        and rule.operator == site.op
        and rule.rel_class is not None
        and site.relator in rule.rel_class.members
        and _guard_holds(rule.static_guard, delta)
    ]


def match_stmt_rules(stmt: Stmt, *, rules: Sequence[Rule] | None = None) -> list[RuleInstance]:
    """Weaken rules applicable to an assignment or assumption.

    Args:
        stmt: `r := e1 op e2`, `assume(r rel (e1 op e2))` or `assume((e1 op e2) rel r)`
        rules: Catalog to match against, defaults to the full catalog

    Returns:
        Instances for the first orientation that matches any rule, in catalog order;
        `r` is bound to the assigned variable or to the opposite operand
    """
    for site in weaken_sites(stmt):
        instances = match_site_rules(site, rules=rules)
        if instances:
            logger.debug(f"{len(instances)} weakening instances for @{stmt.origin}")
            return instances
    return []


def instantiate(ri: RuleInstance) -> tuple[Expr, Expr]:
    """Condition and replacement (or constraint) of a rule instance."""
    return substitute(ri.rule.condition, ri.delta), substitute(ri.rule.replacement, ri.delta)
