import pytest

from bitbranch.domain.rules import RelClass, RuleKind, StaticGuard
from bitbranch.errors import UnknownRuleError
from bitbranch.lang.parser import parse_expr
from bitbranch.rules.catalog import (
    base_rules,
    canonical_text,
    catalog,
    catalog_ids,
    commute,
    is_symmetric,
    rule_by_id,
)
from bitbranch.rules.mutants import MUTANTS, mutated_catalog

COMMUTED = [
    "R-And-0-c",
    "R-And-1-c",
    "R-And-LBS-c",
    "R-Or-0-c",
    "R-Or-1-c",
    "R-Xor-0-c",
    "W-And-Mix-c",
    "W-Or-Const-c",
    "W-Or-Mix-c",
    "W-XOr-Mix-c",
]


def test_base_rule_counts() -> None:
    """Eleven rewrite rules and thirteen weaken rules."""
    rules = base_rules()

    assert len(rules) == 24
    assert sum(r.kind is RuleKind.REWRITE for r in rules) == 11
    assert sum(r.kind is RuleKind.WEAKEN for r in rules) == 13


def test_commuted_variants() -> None:
    """Asymmetric rules over commutative operators get a -c variant right after them."""
    ids = catalog_ids()

    assert len(ids) == 34
    assert sorted(i for i in ids if i.endswith("-c")) == sorted(COMMUTED)
    for variant in COMMUTED:
        assert ids.index(variant) == ids.index(variant.removesuffix("-c")) + 1


def test_catalog_ids_are_unique() -> None:
    ids = catalog_ids()

    assert len(set(ids)) == len(ids)


def test_shift_and_complement_rules_are_not_commuted() -> None:
    ids = catalog_ids()

    assert "R-RightShift-Pos-c" not in ids
    assert "W-Cpl-Pos-c" not in ids


def test_symmetry_ignores_operand_order() -> None:
    assert is_symmetric(rule_by_id("R-Xor-Neq"))
    assert is_symmetric(rule_by_id("R-And-LOG"))
    assert not is_symmetric(rule_by_id("R-And-LBS"))


def test_commute_swaps_holes_and_guard() -> None:
    variant = commute(rule_by_id("W-Or-Const"))

    assert variant.id == "W-Or-Const-c"
    assert variant.static_guard is StaticGuard.CONST_E1
    assert variant.condition == parse_expr("e2 >= 0")
    assert variant.replacement == parse_expr("r >= e1")
    assert variant.commuted


def test_canonical_text_sorts_commutative_operands() -> None:
    assert canonical_text(parse_expr("e2 == 0 && e1 == 1")) == canonical_text(
        parse_expr("1 == e1 && 0 == e2")
    )
    assert canonical_text(parse_expr("e1 - e2")) != canonical_text(parse_expr("e2 - e1"))


def test_weaken_rule_metadata() -> None:
    r_or_log = rule_by_id("R-Or-LOG")

    assert r_or_log.kind is RuleKind.WEAKEN
    assert r_or_log.rel_class is RelClass.OP_EQ
    assert r_or_log.static_guard is StaticGuard.ZERO_R
    assert rule_by_id("W-Cpl-Neg").is_unary


def test_unknown_rule() -> None:
    with pytest.raises(UnknownRuleError):
        rule_by_id("R-And-2")


def test_catalog_is_a_fresh_list() -> None:
    rules = catalog()
    rules.clear()

    assert len(catalog()) == 34


@pytest.mark.parametrize("name", sorted(MUTANTS))
def test_mutated_catalog_swaps_one_rule(name: str) -> None:
    """A mutant catalog differs from the standard one only in the mutated rule and its variant."""
    target, _ = MUTANTS[name]
    mutated = mutated_catalog(name)

    assert [r.id for r in mutated] == catalog_ids()
    changed = {r.id for r, std in zip(mutated, catalog()) if r != std}
    assert target in changed
    assert changed <= {target, f"{target}-c"}


def test_unknown_mutant() -> None:
    with pytest.raises(UnknownRuleError, match="unknown mutant"):
        mutated_catalog("R-Xor-0-flipped")
