from bitbranch.domain.rules import E1, E2, R, Relator
from bitbranch.domain.syntax import BinOp, Lit, Stmt, UnOp, Var
from bitbranch.lang.parser import parse_expr, parse_program
from bitbranch.rules.matching import (
    instantiate,
    match_expr_rules,
    match_stmt_rules,
    weaken_sites,
)


def _stmt(text: str) -> Stmt:
    return parse_program(text).body[-1]


def _ids(stmt_text: str) -> list[str]:
    return [ri.rule_id for ri in match_stmt_rules(_stmt(stmt_text))]


def test_and_rewrite_rules_in_catalog_order() -> None:
    instances = match_expr_rules(BinOp.BIT_AND, Var(name="s"), parse_expr("1 - s"))

    assert [ri.rule_id for ri in instances] == [
        "R-And-0",
        "R-And-0-c",
        "R-And-1",
        "R-And-1-c",
        "R-And-LOG",
        "R-And-LBS",
        "R-And-LBS-c",
    ]


def test_shift_rules() -> None:
    instances = match_expr_rules(BinOp.SHR, Var(name="x"), parse_expr("WIDTH - 1"))

    assert [ri.rule_id for ri in instances] == ["R-RightShift-Pos", "R-RightShift-Neg"]


def test_xor_rules() -> None:
    instances = match_expr_rules(BinOp.BIT_XOR, Var(name="a"), Lit(value=0))

    assert [ri.rule_id for ri in instances] == ["R-Xor-0", "R-Xor-0-c", "R-Xor-Eq", "R-Xor-Neq"]


def test_no_rewrite_rules_for_left_shift_or_complement() -> None:
    assert match_expr_rules(BinOp.SHL, Var(name="x"), Lit(value=1)) == []
    assert match_expr_rules(UnOp.BIT_NOT, Var(name="x")) == []


def test_assignment_matches_every_relator_class() -> None:
    assert _ids("var x, a; x := x & a;") == ["W-And-Pos", "W-And-Neg", "W-And-Mix", "W-And-Mix-c"]


def test_assignment_binds_r_to_target() -> None:
    (first, *_) = match_stmt_rules(_stmt("var x, a; x := x & a;"))

    assert first.delta == {R: Var(name="x"), E1: Var(name="x"), E2: Var(name="a")}


def test_relator_class_filters_assumptions() -> None:
    """r <= (a | b) has no or-rule: op_ge and op_eq both exclude <=."""
    assert _ids("var r, a, b; assume(r <= (a | b));") == []


def test_or_log_needs_literal_zero() -> None:
    assert _ids("var a, b; assume((a | b) == 0);")[0] == "R-Or-LOG"
    assert "R-Or-LOG" not in _ids("var a, b, y; assume((a | b) == y);")
    assert _ids("var a, b; assume((a | b) == 0);") == [
        "R-Or-LOG",
        "W-Or-Pos",
        "W-Or-Neg",
        "W-Or-Mix",
        "W-Or-Mix-c",
    ]


def test_constant_guard() -> None:
    assert "W-Or-Const" in _ids("var x, a; x := a | 3;")
    assert "W-Or-Const-c" not in _ids("var x, a; x := a | 3;")
    assert "W-Or-Const-c" in _ids("var x, a; x := 3 | a;")
    assert "W-Or-Const" not in _ids("var x, a, b; x := a | b;")


def test_mirrored_relation() -> None:
    """(a & b) >= y reads as y <= (a & b)."""
    (site,) = weaken_sites(_stmt("var a, b, y; assume((a & b) >= y);"))

    assert site.relator is Relator.LE
    assert site.bv_on_left
    assert _ids("var a, b, y; assume((a & b) >= y);") == ["W-And-Pos", "W-And-Neg"]


def test_right_operand_is_tried_first() -> None:
    """Both sides bitwise: the or-site on the right wins, with r bound to the left side."""
    stmt = _stmt("var a, b, c, d; assume((a & b) >= (c | d));")
    sites = weaken_sites(stmt)

    assert [site.op for site in sites] == [BinOp.BIT_OR, BinOp.BIT_AND]
    (first, *_) = match_stmt_rules(stmt)
    assert first.rule_id == "W-Or-Pos"
    assert first.delta[R] == parse_expr("a & b")


def test_plain_statements_have_no_sites() -> None:
    assert weaken_sites(_stmt("var y; assume(y == 0);")) == []
    assert weaken_sites(_stmt("var x; havoc x;")) == []
    assert weaken_sites(_stmt("var x, a; x := 1 + (x & a);")) == []
    assert weaken_sites(_stmt("var x, a; assume(x != (x & a));")) == []


def test_instantiate_rewrite() -> None:
    (lbs,) = [
        ri
        for ri in match_expr_rules(BinOp.BIT_AND, Var(name="s"), parse_expr("1 - s"))
        if ri.rule_id == "R-And-LBS"
    ]

    cond, replacement = instantiate(lbs)

    assert cond == parse_expr("s >= 0 && (1 - s) == 1")
    assert replacement == parse_expr("s % 2")


def test_instantiate_weaken() -> None:
    (pos, *_) = match_stmt_rules(_stmt("var r, x, a; assume(r <= (x & a));"))

    assert instantiate(pos) == (parse_expr("x >= 0 && a >= 0"), parse_expr("r <= x && r <= a"))


def test_instantiate_complement() -> None:
    (cpl_pos, cpl_neg) = match_stmt_rules(_stmt("var r, n; r := ~n;"))

    assert cpl_pos.rule_id == "W-Cpl-Pos"
    assert cpl_neg.rule_id == "W-Cpl-Neg"
    assert instantiate(cpl_pos) == (parse_expr("n >= 0"), parse_expr("r < 0"))
