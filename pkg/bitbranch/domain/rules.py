"""Rule catalog domain models."""

from enum import StrEnum

from pydantic import BaseModel, ConfigDict

from bitbranch.domain.syntax import BinOp, Expr, UnOp

# holes of rule templates
E1 = "e1"
E2 = "e2"
R = "r"


class Relator(StrEnum):
    """Relation between `r` and the bitvector expression in a weakenable shape."""

    LT = "<"
    LE = "<="
    GT = ">"
    GE = ">="
    EQ = "=="
    ASSIGN = ":="

    def mirrored(self) -> "Relator":
        """Relator with operands swapped: `a < b` iff `b > a`."""
        return _MIRRORS.get(self, self)

    @classmethod
    def from_binop(cls, op: BinOp) -> "Relator | None":
        try:
            return cls(op.value)
        except ValueError:
            return None


_MIRRORS = {
    Relator.LT: Relator.GT,
    Relator.GT: Relator.LT,
    Relator.LE: Relator.GE,
    Relator.GE: Relator.LE,
}


class RelClass(StrEnum):
    OP_LE = "op_le"
    OP_GE = "op_ge"
    OP_EQ = "op_eq"

    @property
    def members(self) -> frozenset[Relator]:
        return _REL_CLASS_MEMBERS[self]


_REL_CLASS_MEMBERS = {
    RelClass.OP_LE: frozenset({Relator.LT, Relator.LE, Relator.EQ, Relator.ASSIGN}),
    RelClass.OP_GE: frozenset({Relator.GT, Relator.GE, Relator.EQ, Relator.ASSIGN}),
    RelClass.OP_EQ: frozenset({Relator.EQ, Relator.ASSIGN}),
}


class RuleKind(StrEnum):
    REWRITE = "rewrite"
    WEAKEN = "weaken"


class StaticGuard(StrEnum):
    """Meta-predicates on the matched syntax, checked before a rule is instantiated."""

    CONST_E1 = "is_const(e1)"
    CONST_E2 = "is_const(e2)"
    ZERO_R = "r == 0"


class Rule(BaseModel):
    """A catalog entry.

    Attributes:
        id: Canonical name, commuted variants carry a `-c` suffix
        kind: Rewrite (exact under the condition) or Weaken (over-approximation)
        operator: Bitvector operator matched at the site
        rel_class: Relators a Weaken rule accepts, None for Rewrite rules
        static_guard: Optional syntactic filter on the operands
        condition: Template over holes e1, e2
        replacement: Template over e1, e2 (Rewrite) or constraint over r, e1, e2 (Weaken)
        commuted: True for generated operand-swapped variants
    """

    model_config = ConfigDict(frozen=True)

    id: str
    kind: RuleKind
    operator: BinOp | UnOp
    rel_class: RelClass | None = None
    static_guard: StaticGuard | None = None
    condition: Expr
    replacement: Expr
    commuted: bool = False

    @property
    def is_unary(self) -> bool:
        return isinstance(self.operator, UnOp)


class RuleInstance(BaseModel):
    """A rule matched at a site, with the substitution of its holes."""

    model_config = ConfigDict(frozen=True)

    rule: Rule
    delta: dict[str, Expr]

    @property
    def rule_id(self) -> str:
        return self.rule.id


class Counterexample(BaseModel):
    valuation: dict[str, int]
    relator: Relator | None = None
    lhs: int | None = None
    rhs: int | None = None
    fault: bool = False

    def __str__(self) -> str:
        parts = [f"{name}={value}" for name, value in self.valuation.items()]
        if self.relator is not None:
            parts.append(f"rel={self.relator.value}")
        parts.append(f"lhs={'fault' if self.lhs is None else self.lhs}")
        parts.append(f"rhs={'fault' if self.rhs is None else self.rhs}")
        return " ".join(parts)


class RuleVerdict(BaseModel):
    rule_id: str
    width: int
    passed: bool
    checked: int
    counterexample: Counterexample | None = None
