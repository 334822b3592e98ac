"""Abstract syntax of the bitvector mini language."""

from __future__ import annotations

from enum import StrEnum
from typing import Annotated, Literal, Union

from pydantic import BaseModel, BeforeValidator, ConfigDict, Field, PlainSerializer

RESERVED_WORDS = frozenset(
    {
        "var",
        "havoc",
        "assume",
        "error",
        "if",
        "else",
        "while",
        "ite",
        "opaque",
        "WIDTH",
        "true",
        "false",
    }
)


class BinOp(StrEnum):
    ADD = "+"
    SUB = "-"
    MUL = "*"
    DIV = "/"
    MOD = "%"
    BIT_AND = "&"
    BIT_OR = "|"
    BIT_XOR = "^"
    SHL = "<<"
    SHR = ">>"
    LT = "<"
    LE = "<="
    GT = ">"
    GE = ">="
    EQ = "=="
    NE = "!="
    LOG_AND = "&&"
    LOG_OR = "||"

    @property
    def is_bitvector(self) -> bool:
        return self in _BITVECTOR_BINOPS

    @property
    def is_relational(self) -> bool:
        return self in _RELATIONAL_BINOPS

    @property
    def is_logical(self) -> bool:
        return self in (BinOp.LOG_AND, BinOp.LOG_OR)

    @property
    def is_nonlinear(self) -> bool:
        """Integer operators that leave linear arithmetic (still bit-operation free)."""
        return self in (BinOp.MUL, BinOp.DIV, BinOp.MOD)

    @property
    def is_commutative(self) -> bool:
        return self in _COMMUTATIVE_BINOPS


_BITVECTOR_BINOPS = frozenset({BinOp.BIT_AND, BinOp.BIT_OR, BinOp.BIT_XOR, BinOp.SHL, BinOp.SHR})
_RELATIONAL_BINOPS = frozenset({BinOp.LT, BinOp.LE, BinOp.GT, BinOp.GE, BinOp.EQ, BinOp.NE})
_COMMUTATIVE_BINOPS = frozenset(
    {
        BinOp.ADD,
        BinOp.MUL,
        BinOp.BIT_AND,
        BinOp.BIT_OR,
        BinOp.BIT_XOR,
        BinOp.EQ,
        BinOp.NE,
        BinOp.LOG_AND,
        BinOp.LOG_OR,
    }
)


class UnOp(StrEnum):
    NEG = "-"
    LOG_NOT = "!"
    BIT_NOT = "~"

    @property
    def is_bitvector(self) -> bool:
        return self is UnOp.BIT_NOT


def _int_from_text(value: object) -> object:
    # JSON documents carry integers as decimal strings
    if isinstance(value, str):
        return int(value)
    return value


BigInt = Annotated[
    int,
    BeforeValidator(_int_from_text),
    PlainSerializer(str, return_type=str, when_used="json"),
]


class _Node(BaseModel):
    model_config = ConfigDict(frozen=True)


# Expressions


class Lit(_Node):
    node: Literal["Lit"] = "Lit"
    value: BigInt


class BoolLit(_Node):
    node: Literal["BoolLit"] = "BoolLit"
    value: bool


class Var(_Node):
    node: Literal["Var"] = "Var"
    name: str


class WidthConst(_Node):
    """The symbolic machine width `WIDTH`."""

    node: Literal["WidthConst"] = "WidthConst"


class Unary(_Node):
    node: Literal["Unary"] = "Unary"
    op: UnOp
    operand: Expr


class Binary(_Node):
    node: Literal["Binary"] = "Binary"
    op: BinOp
    left: Expr
    right: Expr


class Ite(_Node):
    node: Literal["Ite"] = "Ite"
    cond: Expr
    then: Expr
    orelse: Expr


class Opaque(_Node):
    """Residual bitvector expression left by the transformation; never re-entered."""

    node: Literal["Opaque"] = "Opaque"
    inner: Expr


Expr = Annotated[
    Union[Lit, BoolLit, Var, WidthConst, Unary, Binary, Ite, Opaque],
    Field(discriminator="node"),
]


# Statements


class _Stmt(_Node):
    origin: int | None = None  # index of the source statement this one derives from
    observable: bool = True  # False on helper statements emitted inside a weakened site


class Assign(_Stmt):
    node: Literal["Assign"] = "Assign"
    lhs: str
    rhs: Expr


class Havoc(_Stmt):
    node: Literal["Havoc"] = "Havoc"
    name: str


class Assume(_Stmt):
    node: Literal["Assume"] = "Assume"
    cond: Expr


class Error(_Stmt):
    node: Literal["Error"] = "Error"


class IfCond(_Stmt):
    node: Literal["IfCond"] = "IfCond"
    cond: Expr
    then: Block
    orelse: Block = ()


class IfNondet(_Stmt):
    node: Literal["IfNondet"] = "IfNondet"
    then: Block
    orelse: Block = ()


class While(_Stmt):
    node: Literal["While"] = "While"
    cond: Expr
    body: Block


Stmt = Annotated[
    Union[Assign, Havoc, Assume, Error, IfCond, IfNondet, While],
    Field(discriminator="node"),
]

Block = tuple[Stmt, ...]


class Program(_Node):
    """A program: declared variables and a statement block.

    Attributes:
        decls: Declared variable names, in declaration order
        body: Top-level statement block
    """

    decls: tuple[str, ...]
    body: Block


for _model in (Unary, Binary, Ite, Opaque, IfCond, IfNondet, While, Program):
    _model.model_rebuild()
