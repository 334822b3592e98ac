"""Deliberately unsound rule variants, for checking that the checkers are not vacuous."""

from collections.abc import Callable

from bitbranch.domain.rules import Rule
from bitbranch.domain.syntax import BoolLit, Lit, Unary, UnOp
from bitbranch.errors import UnknownRuleError
from bitbranch.rules.catalog import base_rules, close_under_commutation


def _drop_condition(rule: Rule) -> Rule:
    return rule.model_copy(update={"condition": BoolLit(value=True)})


def _zero_replacement(rule: Rule) -> Rule:
    return rule.model_copy(update={"replacement": Lit(value=0)})


def _negate_constraint(rule: Rule) -> Rule:
    return rule.model_copy(
        update={"replacement": Unary(op=UnOp.LOG_NOT, operand=rule.replacement)}
    )


# mutant name -> (base rule id, mutation)
MUTANTS: dict[str, tuple[str, Callable[[Rule], Rule]]] = {
    "R-And-1-no-cond": ("R-And-1", _drop_condition),
    "R-Or-1-zero": ("R-Or-1", _zero_replacement),
    "W-And-Pos-negated": ("W-And-Pos", _negate_constraint),
}


def mutated_catalog(name: str) -> list[Rule]:
    """The catalog with one base rule mutated; its commuted variant follows the mutant.

    Raises:
        UnknownRuleError: If `name` is not a documented mutant
    """
    try:
        target, mutate = MUTANTS[name]
    except KeyError:
        raise UnknownRuleError(
            f"unknown mutant '{name}', expected one of: {', '.join(MUTANTS)}"
        ) from None
    rules = [mutate(rule) if rule.id == target else rule for rule in base_rules()]
    return close_under_commutation(rules)
