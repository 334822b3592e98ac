import pytest

from bitbranch.domain.syntax import (
    Assign,
    Assume,
    Binary,
    BinOp,
    BoolLit,
    Error,
    Havoc,
    IfCond,
    IfNondet,
    Ite,
    Lit,
    Opaque,
    Unary,
    UnOp,
    Var,
    While,
    WidthConst,
)
from bitbranch.errors import ParseError, ReservedWordError, UndeclaredVariableError
from bitbranch.lang.parser import parse_expr, parse_program


def test_parse_bitwise_assignment() -> None:
    """A declaration list and a single bitwise assignment."""
    p = parse_program("var x; var a; x := x & a;")

    assert p.decls == ("x", "a")
    assert p.body == (
        Assign(
            lhs="x",
            rhs=Binary(op=BinOp.BIT_AND, left=Var(name="x"), right=Var(name="a")),
            origin=0,
        ),
    )


def test_parse_ite_call_syntax() -> None:
    """ite(c, a, b) builds an Ite node with three children."""
    p = parse_program("var s; s := ite(s >= 0, s % 2, s);")

    rhs = p.body[0].rhs
    assert isinstance(rhs, Ite)
    assert rhs.cond == Binary(op=BinOp.GE, left=Var(name="s"), right=Lit(value=0))
    assert rhs.then == Binary(op=BinOp.MOD, left=Var(name="s"), right=Lit(value=2))
    assert rhs.orelse == Var(name="s")


def test_ternary_and_ite_agree() -> None:
    """The C conditional operator is sugar for ite."""
    assert parse_expr("a > 0 ? a : 0 - a") == parse_expr("ite(a > 0, a, 0 - a)")


def test_undeclared_variable_is_rejected() -> None:
    """Using an undeclared identifier raises with the variable name and location."""
    with pytest.raises(UndeclaredVariableError) as excinfo:
        parse_program("var x;\nx := y;")

    assert excinfo.value.name == "y"
    assert excinfo.value.line == 2


@pytest.mark.parametrize("text", ["var if;", "var x; opaque := 1;", "var WIDTH;", "var x; havoc ite;"])
def test_reserved_words_are_not_identifiers(text: str) -> None:
    """Keywords, opaque and WIDTH are reserved."""
    with pytest.raises(ReservedWordError):
        parse_program(text)


def test_duplicate_declaration() -> None:
    """Declaring a variable twice is a parse error."""
    with pytest.raises(ParseError, match="declared twice"):
        parse_program("var x, y; var x;")


def test_syntax_error_has_location() -> None:
    """Syntax errors report line and column."""
    with pytest.raises(ParseError) as excinfo:
        parse_program("var x;\nx := (x + ;")

    assert excinfo.value.line == 2
    assert excinfo.value.column is not None


def test_operator_precedence() -> None:
    """Shifts bind tighter than +, then &, then |, and bitwise operators tighter than comparisons."""
    e = parse_expr("a | b & c + d << 1 == 0")

    assert e == Binary(
        op=BinOp.EQ,
        left=Binary(
            op=BinOp.BIT_OR,
            left=Var(name="a"),
            right=Binary(
                op=BinOp.BIT_AND,
                left=Var(name="b"),
                right=Binary(
                    op=BinOp.ADD,
                    left=Var(name="c"),
                    right=Binary(op=BinOp.SHL, left=Var(name="d"), right=Lit(value=1)),
                ),
            ),
        ),
        right=Lit(value=0),
    )


def test_subtraction_is_left_associative() -> None:
    assert parse_expr("a - b - c") == Binary(
        op=BinOp.SUB,
        left=Binary(op=BinOp.SUB, left=Var(name="a"), right=Var(name="b")),
        right=Var(name="c"),
    )


def test_negative_literal_and_negation() -> None:
    """-3 is a literal; -(3) and -x are negations."""
    assert parse_expr("-3") == Lit(value=-3)
    assert parse_expr("-(3)") == Unary(op=UnOp.NEG, operand=Lit(value=3))
    assert parse_expr("x - -3") == Binary(op=BinOp.SUB, left=Var(name="x"), right=Lit(value=-3))
    assert parse_expr("-x") == Unary(op=UnOp.NEG, operand=Var(name="x"))


def test_atoms() -> None:
    assert parse_expr("WIDTH - 1") == Binary(op=BinOp.SUB, left=WidthConst(), right=Lit(value=1))
    assert parse_expr("!true") == Unary(op=UnOp.LOG_NOT, operand=BoolLit(value=True))
    assert parse_expr("opaque(a ^ b)") == Opaque(
        inner=Binary(op=BinOp.BIT_XOR, left=Var(name="a"), right=Var(name="b"))
    )


def test_expression_scope() -> None:
    """parse_expr checks identifiers only when a scope is given."""
    assert parse_expr("e1 & e2", scope=("e1", "e2")) == parse_expr("e1 & e2")
    with pytest.raises(UndeclaredVariableError):
        parse_expr("e1 & r", scope=("e1", "e2"))


def test_statement_forms_and_origins() -> None:
    """Every statement form parses and origins follow preorder."""
    p = parse_program(
        """
        var x, y;
        havoc x;
        y := *;
        assume(x > 0);
        if (x > 1) { error; } else if (*) { x := 0; }
        while (x > 0) { x := x - 1; }
        error();
        """
    )

    havoc, star, assume, branch, loop, err = p.body
    assert havoc == Havoc(name="x", origin=0)
    assert star == Havoc(name="y", origin=1)
    assert isinstance(assume, Assume) and assume.origin == 2
    assert isinstance(branch, IfCond) and branch.origin == 3
    assert branch.then == (Error(origin=4),)
    (nested,) = branch.orelse
    assert isinstance(nested, IfNondet) and nested.origin == 5
    assert nested.then[0].origin == 6
    assert isinstance(loop, While) and loop.origin == 7
    assert loop.body[0].origin == 8
    assert err == Error(origin=9)


def test_comments_are_ignored() -> None:
    """Line and block comments carry no meaning."""
    p = parse_program("// LTL: G(F(n < 0))\nvar n; /* start */ n := 1; // done")

    assert p.body == (Assign(lhs="n", rhs=Lit(value=1), origin=0),)
