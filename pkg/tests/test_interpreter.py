from bitbranch.domain.machine import ErrorToken, EvalFault, FaultKind, MachineConfig, State
from bitbranch.domain.syntax import Stmt
from bitbranch.lang.parser import parse_program
from bitbranch.semantics.interpreter import Interpreter, exec_block, exec_stmt


def _stmt(text: str) -> Stmt:
    return parse_program(text).body[-1]


def test_blocked_assume(cfg4: MachineConfig) -> None:
    assert exec_stmt(_stmt("var x; assume(x > 0);"), State.of({"x": 0}), cfg4) == set()


def test_havoc_enumerates_domain(cfg2: MachineConfig) -> None:
    outcomes = exec_stmt(_stmt("var x; havoc x;"), State.of({"x": 0}), cfg2)

    assert outcomes == {State.of({"x": v}) for v in (-2, -1, 0, 1)}


def test_infeasible_branch_contributes_nothing(cfg4: MachineConfig) -> None:
    stmt = _stmt("var b; if (*) { assume(b); error; } else { assume(!b); }")

    assert exec_stmt(stmt, State.of({"b": 1}), cfg4) == {ErrorToken()}


def test_loop_runs_to_exit(cfg4: MachineConfig) -> None:
    stmt = _stmt("var x; while (x > 0) { x := x - 1; }")

    assert exec_stmt(stmt, State.of({"x": 3}), cfg4) == {State.of({"x": 0})}


def test_nonterminating_loop_has_no_exit_state(cfg4: MachineConfig) -> None:
    stmt = _stmt("var x; while (true) { x := x + 1; }")

    assert exec_stmt(stmt, State.of({"x": 0}), cfg4) == set()


def test_fault_carries_statement_origin(cfg4: MachineConfig) -> None:
    p = parse_program("var x, y; havoc x; x := x / y;")

    outcomes = exec_block(p.body, State.zeros(p.decls), cfg4)

    assert outcomes == {EvalFault(kind=FaultKind.DIV_BY_ZERO, location=1)}


def test_observer_sees_post_states(cfg4: MachineConfig) -> None:
    """Statements report their post-state; conditionals the state their guard held in."""
    p = parse_program("var x; x := 2; if (x > 1) { x := 0; } else { error; }")
    seen: list[tuple[int, State]] = []

    exec_block(p.body, State.zeros(p.decls), cfg4, observer=lambda k, s: seen.append((k, s)))

    assert seen == [
        (0, State.of({"x": 2})),
        (1, State.of({"x": 2})),
        (2, State.of({"x": 0})),
    ]


def test_unrolling_budget(cfg4: MachineConfig) -> None:
    """A loop still growing when the budget runs out keeps the exits found so far."""
    p = parse_program("var x; x := 5; while (x > 0) { x := x - 1; }")
    interpreter = Interpreter(cfg4, max_loop_unrollings=2)

    assert interpreter.exec_block(p.body, State.zeros(p.decls)) == set()
