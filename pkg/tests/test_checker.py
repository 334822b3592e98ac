import pytest

from bitbranch.domain.machine import MachineConfig
from bitbranch.domain.rules import Rule, RuleKind
from bitbranch.domain.syntax import Lit
from bitbranch.lang.parser import parse_expr
from bitbranch.rules.catalog import catalog, commute, rule_by_id
from bitbranch.rules.checker import bitvector_template, check_catalog, check_rule_correctness
from bitbranch.rules.mutants import MUTANTS, mutated_catalog


def test_rewrite_rule_enumerates_operand_pairs(cfg4: MachineConfig) -> None:
    verdict = check_rule_correctness(rule_by_id("R-And-0"), cfg4)

    assert verdict.passed
    assert verdict.checked == 256
    assert verdict.counterexample is None


def test_weaken_rule_enumerates_triples_per_relator(cfg4: MachineConfig) -> None:
    verdict = check_rule_correctness(rule_by_id("W-And-Pos"), cfg4)

    assert verdict.passed
    assert verdict.checked == 4096 * 4


def test_zero_guard_fixes_r(cfg4: MachineConfig) -> None:
    """R-Or-LOG only speaks about (e1 | e2) == 0, so r is not enumerated."""
    verdict = check_rule_correctness(rule_by_id("R-Or-LOG"), cfg4)

    assert verdict.passed
    assert verdict.checked == 256 * 2


def test_unary_weaken_rule(cfg4: MachineConfig) -> None:
    verdict = check_rule_correctness(rule_by_id("W-Cpl-Neg"), cfg4)

    assert verdict.passed
    assert verdict.checked == 256 * 4


def test_bitvector_template() -> None:
    assert bitvector_template(rule_by_id("W-XOr-Mix")) == parse_expr("e1 ^ e2")
    assert bitvector_template(rule_by_id("W-Cpl-Pos")) == parse_expr("~e1")


@pytest.mark.parametrize("width", [2, 3, 4, 6])
def test_whole_catalog_is_correct(width: int) -> None:
    """Every rule and commuted variant holds exhaustively at small widths."""
    verdicts = check_catalog(MachineConfig(width=width))

    assert len(verdicts) == 34
    assert [v.rule_id for v in verdicts if not v.passed] == []


@pytest.mark.slow
def test_rewrite_rules_at_width_eight() -> None:
    verdicts = check_catalog(MachineConfig(width=8), kinds={RuleKind.REWRITE})

    assert len(verdicts) == 17
    assert all(v.passed for v in verdicts)


def test_zeroed_or_replacement_is_caught(cfg4: MachineConfig) -> None:
    """0 | 1 is 1, not 0."""
    mutant = rule_by_id("R-Or-1", mutated_catalog("R-Or-1-zero"))

    verdict = check_rule_correctness(mutant, cfg4)

    assert not verdict.passed
    assert verdict.counterexample is not None
    assert verdict.counterexample.lhs == 1
    assert verdict.counterexample.rhs == 0


def test_negated_constraint_reports_relator(cfg4: MachineConfig) -> None:
    mutant = rule_by_id("W-And-Pos", mutated_catalog("W-And-Pos-negated"))

    verdict = check_rule_correctness(mutant, cfg4)

    assert not verdict.passed
    assert verdict.counterexample is not None
    assert verdict.counterexample.relator is not None
    assert set(verdict.counterexample.valuation) == {"r", "e1", "e2"}


@pytest.mark.parametrize("name", sorted(MUTANTS))
def test_every_mutant_fails_the_rule_suite(name: str, cfg4: MachineConfig) -> None:
    verdicts = check_catalog(cfg4, mutated_catalog(name))
    failed = {v.rule_id for v in verdicts if not v.passed}

    assert MUTANTS[name][0] in failed


def test_check_catalog_filters_kinds(cfg3: MachineConfig) -> None:
    verdicts = check_catalog(cfg3, catalog(), kinds={RuleKind.WEAKEN})

    assert len(verdicts) == 17


_COMMUTED = [rule for rule in catalog() if rule.commuted]
_REWRITES = [rule for rule in catalog() if rule.kind is RuleKind.REWRITE]


@pytest.mark.parametrize("rule", _COMMUTED, ids=lambda rule: rule.id)
def test_commuted_variant_agrees_with_base(rule: Rule, cfg3: MachineConfig) -> None:
    base = rule_by_id(rule.id.removesuffix("-c"))

    verdict = check_rule_correctness(rule, cfg3)

    assert verdict.passed == check_rule_correctness(base, cfg3).passed
    assert verdict.checked == check_rule_correctness(base, cfg3).checked


@pytest.mark.parametrize("rule", [r for r in _REWRITES if not r.commuted], ids=lambda rule: rule.id)
def test_broken_rule_fails_in_both_operand_orders(rule: Rule, cfg3: MachineConfig) -> None:
    wrong = Lit(value=1 if rule.replacement == Lit(value=0) else 0)
    broken = rule.model_copy(update={"replacement": wrong})

    assert not check_rule_correctness(broken, cfg3).passed
    assert not check_rule_correctness(commute(broken), cfg3).passed


@pytest.mark.parametrize("constant", [-1, 0, 1])
@pytest.mark.parametrize("rule", _REWRITES, ids=lambda rule: rule.id)
def test_wrong_replacement_constant_is_caught(rule: Rule, constant: int, cfg4: MachineConfig) -> None:
    if rule.replacement == parse_expr(str(constant)):
        pytest.skip(f"{rule.id} already rewrites to {constant}")
    mutant = rule.model_copy(update={"replacement": Lit(value=constant)})

    verdict = check_rule_correctness(mutant, cfg4)

    assert not verdict.passed
    assert verdict.counterexample is not None
