"""The bitwise-branching rule catalog.

Rewrite rules replace a bitvector expression by a bit-operation free one where
their condition holds. Weaken rules over-approximate an assignment or relation
`r rel (e1 op e2)` by a linear constraint. Templates are written in the
language's own expression syntax over the holes e1, e2 and r.
"""

from collections.abc import Sequence
from functools import cache

from bitbranch.domain.rules import E1, E2, R, RelClass, Rule, RuleKind, StaticGuard
from bitbranch.domain.syntax import Binary, BinOp, Expr, Unary, UnOp, Var
from bitbranch.errors import UnknownRuleError
from bitbranch.lang.analysis import substitute
from bitbranch.lang.parser import parse_expr
from bitbranch.lang.printer import format_expr

_HOLES = (E1, E2, R)

# id, operator, condition, replacement
_REWRITE_ROWS: list[tuple[str, BinOp, str, str]] = [
    ("R-And-0", BinOp.BIT_AND, "e1 == 0", "0"),
    ("R-And-1", BinOp.BIT_AND, "(e1 == 0 || e1 == 1) && e2 == 1", "e1"),
    (
        "R-And-LOG",
        BinOp.BIT_AND,
        "(e1 == 0 || e1 == 1) && (e2 == 0 || e2 == 1)",
        "e1 && e2",
    ),
    ("R-And-LBS", BinOp.BIT_AND, "e1 >= 0 && e2 == 1", "e1 % 2"),
    ("R-Or-0", BinOp.BIT_OR, "e2 == 0", "e1"),
    ("R-Or-1", BinOp.BIT_OR, "(e1 == 0 || e1 == 1) && e2 == 1", "1"),
    ("R-Xor-0", BinOp.BIT_XOR, "e2 == 0", "e1"),
    ("R-Xor-Eq", BinOp.BIT_XOR, "e1 == 0 && e2 == 0 || e1 == 1 && e2 == 1", "0"),
    ("R-Xor-Neq", BinOp.BIT_XOR, "e1 == 1 && e2 == 0 || e1 == 0 && e2 == 1", "1"),
    ("R-RightShift-Pos", BinOp.SHR, "e1 >= 0 && e2 == WIDTH - 1", "0"),
    ("R-RightShift-Neg", BinOp.SHR, "e1 < 0 && e2 == WIDTH - 1", "-1"),
]

# id, operator, relator class, static guard, condition, constraint
_WEAKEN_ROWS: list[tuple[str, BinOp | UnOp, RelClass, StaticGuard | None, str, str]] = [
    ("W-And-Pos", BinOp.BIT_AND, RelClass.OP_LE, None, "e1 >= 0 && e2 >= 0", "r <= e1 && r <= e2"),
    (
        "W-And-Neg",
        BinOp.BIT_AND,
        RelClass.OP_LE,
        None,
        "e1 < 0 && e2 < 0",
        "r <= e1 && r <= e2 && r < 0",
    ),
    ("W-And-Mix", BinOp.BIT_AND, RelClass.OP_EQ, None, "e1 >= 0 && e2 < 0", "0 <= r && r <= e1"),
    (
        "R-Or-LOG",
        BinOp.BIT_OR,
        RelClass.OP_EQ,
        StaticGuard.ZERO_R,
        "(e1 == 0 || e1 == 1) && (e2 == 0 || e2 == 1)",
        "e1 == 0 && e2 == 0",
    ),
    ("W-Or-Const", BinOp.BIT_OR, RelClass.OP_GE, StaticGuard.CONST_E2, "e1 >= 0", "r >= e2"),
    ("W-Or-Pos", BinOp.BIT_OR, RelClass.OP_GE, None, "e1 >= 0 && e2 >= 0", "r >= e1 && r >= e2"),
    (
        "W-Or-Neg",
        BinOp.BIT_OR,
        RelClass.OP_EQ,
        None,
        "e1 < 0 && e2 < 0",
        "r >= e1 && r >= e2 && r < 0",
    ),
    ("W-Or-Mix", BinOp.BIT_OR, RelClass.OP_EQ, None, "e1 >= 0 && e2 < 0", "e2 <= r && r < 0"),
    ("W-XOr-Pos", BinOp.BIT_XOR, RelClass.OP_GE, None, "e1 >= 0 && e2 >= 0", "r >= 0"),
    ("W-XOr-Neg", BinOp.BIT_XOR, RelClass.OP_GE, None, "e1 < 0 && e2 < 0", "r >= 0"),
    ("W-XOr-Mix", BinOp.BIT_XOR, RelClass.OP_LE, None, "e1 >= 0 && e2 < 0", "r < 0"),
    ("W-Cpl-Pos", UnOp.BIT_NOT, RelClass.OP_LE, None, "e1 >= 0", "r < 0"),
    ("W-Cpl-Neg", UnOp.BIT_NOT, RelClass.OP_GE, None, "e1 < 0", "r >= 0"),
]

_SWAPPED_GUARDS = {
    StaticGuard.CONST_E1: StaticGuard.CONST_E2,
    StaticGuard.CONST_E2: StaticGuard.CONST_E1,
    StaticGuard.ZERO_R: StaticGuard.ZERO_R,
}


def _template(text: str) -> Expr:
    return parse_expr(text, scope=_HOLES)


def base_rules() -> list[Rule]:
    """The 24 rules in catalog order: 11 rewrite rules, then 13 weaken rules."""
    rules = [
        Rule(
            id=rule_id,
            kind=RuleKind.REWRITE,
            operator=op,
            condition=_template(condition),
            replacement=_template(replacement),
        )
        for rule_id, op, condition, replacement in _REWRITE_ROWS
    ]
    rules.extend(
        Rule(
            id=rule_id,
            kind=RuleKind.WEAKEN,
            operator=op,
            rel_class=rel_class,
            static_guard=guard,
            condition=_template(condition),
            replacement=_template(constraint),
        )
        for rule_id, op, rel_class, guard, condition, constraint in _WEAKEN_ROWS
    )
    return rules


def canonical_text(e: Expr) -> str:
    """Text of `e` with the operands of commutative operators sorted."""
    match e:
        case Binary(op=op, left=left, right=right) if op.is_commutative:
            lhs, rhs = sorted((canonical_text(left), canonical_text(right)))
            return f"({lhs} {op.value} {rhs})"
        case Binary(op=op, left=left, right=right):
            return f"({canonical_text(left)} {op.value} {canonical_text(right)})"
        case Unary(op=op, operand=operand):
            return f"{op.value}({canonical_text(operand)})"
    return format_expr(e)


def commute(rule: Rule) -> Rule:
    """Operand-swapped variant of a binary rule, named `<id>-c`."""
    swap = {E1: Var(name=E2), E2: Var(name=E1)}
    guard = rule.static_guard
    return rule.model_copy(
        update={
            "id": f"{rule.id}-c",
            "condition": substitute(rule.condition, swap),
            "replacement": substitute(rule.replacement, swap),
            "static_guard": None if guard is None else _SWAPPED_GUARDS[guard],
            "commuted": True,
        }
    )


def is_symmetric(rule: Rule) -> bool:
    """True when swapping e1 and e2 leaves the rule unchanged up to commutativity."""
    swapped = commute(rule)
    return (
        canonical_text(swapped.condition) == canonical_text(rule.condition)
        and canonical_text(swapped.replacement) == canonical_text(rule.replacement)
        and swapped.static_guard == rule.static_guard
    )


def close_under_commutation(rules: Sequence[Rule]) -> list[Rule]:
    """Insert each asymmetric commutative rule's variant right after its base rule."""
    closed: list[Rule] = []
    for rule in rules:
        closed.append(rule)
        commutative = isinstance(rule.operator, BinOp) and rule.operator.is_commutative
        if commutative and not is_symmetric(rule):
            closed.append(commute(rule))
    return closed


@cache
def _default_catalog() -> tuple[Rule, ...]:
    return tuple(close_under_commutation(base_rules()))


def catalog() -> list[Rule]:
    """Every rule with its commuted variants, base rules in catalog order."""
    return list(_default_catalog())


def catalog_ids(rules: Sequence[Rule] | None = None) -> list[str]:
    return [rule.id for rule in (catalog() if rules is None else rules)]


def rule_by_id(rule_id: str, rules: Sequence[Rule] | None = None) -> Rule:
    for rule in catalog() if rules is None else rules:
        if rule.id == rule_id:
            return rule
    raise UnknownRuleError(f"unknown rule '{rule_id}'")
