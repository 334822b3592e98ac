"""Exhaustive correctness check of catalog rules at small widths."""

from collections.abc import Sequence

import numpy as np
from loguru import logger

from bitbranch.domain.machine import MachineConfig
from bitbranch.domain.rules import (
    E1,
    E2,
    R,
    Counterexample,
    Relator,
    Rule,
    RuleKind,
    RuleVerdict,
    StaticGuard,
)
from bitbranch.domain.syntax import Binary, Expr, Unary, UnOp, Var
from bitbranch.rules.catalog import catalog
from bitbranch.semantics.vectorized import BoolArray, IntArray, evaluate_array

_COMPARISONS = {
    Relator.LT: np.less,
    Relator.LE: np.less_equal,
    Relator.GT: np.greater,
    Relator.GE: np.greater_equal,
    Relator.EQ: np.equal,
    Relator.ASSIGN: np.equal,
}


def bitvector_template(rule: Rule) -> Expr:
    """The matched expression `e1 op e2` (or `~e1`) over the rule's holes."""
    if isinstance(rule.operator, UnOp):
        return Unary(op=rule.operator, operand=Var(name=E1))
    return Binary(op=rule.operator, left=Var(name=E1), right=Var(name=E2))


def _grid(cfg: MachineConfig, names: Sequence[str]) -> dict[str, IntArray]:
    axis = np.arange(cfg.min_value, cfg.max_value + 1, dtype=np.int64)
    return dict(zip(names, np.meshgrid(*([axis] * len(names)), indexing="ij")))


def _counterexample(
    env: dict[str, IntArray],
    index: tuple[int, ...],
    *,
    sides: tuple[IntArray, IntArray, BoolArray],
    relator: Relator | None = None,
) -> Counterexample:
    lhs, rhs, faults = sides
    return Counterexample(
        valuation={name: int(values[index]) for name, values in env.items()},
        relator=relator,
        lhs=int(lhs[index]),
        rhs=int(rhs[index]),
        fault=bool(faults[index]),
    )


def _check_rewrite(rule: Rule, cfg: MachineConfig) -> RuleVerdict:
    env = _grid(cfg, [E1] if rule.is_unary else [E1, E2])
    cond, cond_faults = evaluate_array(rule.condition, env, cfg)
    lhs, lhs_faults = evaluate_array(bitvector_template(rule), env, cfg)
    rhs, rhs_faults = evaluate_array(rule.replacement, env, cfg)
    faults = cond_faults | ((cond != 0) & (lhs_faults | rhs_faults))
    violations = faults | ((cond != 0) & (lhs != rhs))
    checked = int(cond.size)
    if not violations.any():
        return RuleVerdict(rule_id=rule.id, width=cfg.width, passed=True, checked=checked)
    index = tuple(int(i) for i in np.argwhere(violations)[0])
    return RuleVerdict(
        rule_id=rule.id,
        width=cfg.width,
        passed=False,
        checked=checked,
        counterexample=_counterexample(env, index, sides=(lhs, rhs, faults)),
    )


def _check_weaken(rule: Rule, cfg: MachineConfig) -> RuleVerdict:
    holes = [E1] if rule.is_unary else [E1, E2]
    if rule.static_guard is StaticGuard.ZERO_R:
        env = _grid(cfg, holes)
        env[R] = np.zeros_like(env[E1])
    else:
        env = _grid(cfg, [R, *holes])
    cond, cond_faults = evaluate_array(rule.condition, env, cfg)
    bv, bv_faults = evaluate_array(bitvector_template(rule), env, cfg)
    constraint, constraint_faults = evaluate_array(rule.replacement, env, cfg)
    checked = 0
    relators = sorted(rule.rel_class.members) if rule.rel_class is not None else []
    for relator in relators:
        related = _COMPARISONS[relator](env[R], bv)
        premise = (cond != 0) & related
        faults = cond_faults | bv_faults | (premise & constraint_faults)
        violations = faults | (premise & (constraint == 0))
        checked += int(cond.size)
        if violations.any():
            index = tuple(int(i) for i in np.argwhere(violations)[0])
            return RuleVerdict(
                rule_id=rule.id,
                width=cfg.width,
                passed=False,
                checked=checked,
                counterexample=_counterexample(
                    env, index, sides=(env[R], bv, faults), relator=relator
                ),
            )
    return RuleVerdict(rule_id=rule.id, width=cfg.width, passed=True, checked=checked)


def check_rule_correctness(rule: Rule, cfg: MachineConfig) -> RuleVerdict:
    """Check a rule over every operand valuation at the given width.

    Rewrite rules must agree with the bitvector expression wherever their condition
    holds. Weaken rules must imply their constraint for every `r` related to the
    bitvector result by a relator of their class (`:=` read as `==`). Faults count
    as violations.

    Args:
        rule: Catalog entry to check
        cfg: Machine width; every width up to 8 is tractable

    Returns:
        RuleVerdict with the first violating valuation as counterexample
    """
    if rule.kind is RuleKind.REWRITE:
        verdict = _check_rewrite(rule, cfg)
    else:
        verdict = _check_weaken(rule, cfg)
    if verdict.passed:
        logger.debug(f"{rule.id} holds at width {cfg.width} ({verdict.checked} cases)")
    else:
        logger.warning(f"{rule.id} fails at width {cfg.width}: {verdict.counterexample}")
    return verdict


def check_catalog(
    cfg: MachineConfig, rules: Sequence[Rule] | None = None, *, kinds: set[RuleKind] | None = None
) -> list[RuleVerdict]:
    """Check every rule of a catalog (the full catalog by default) at one width."""
    selected = catalog() if rules is None else rules
    return [
        check_rule_correctness(rule, cfg)
        for rule in selected
        if kinds is None or rule.kind in kinds
    ]

