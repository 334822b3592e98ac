import random

import pytest

from bitbranch.domain.machine import EvalFault, FaultKind, MachineConfig, State
from bitbranch.lang.parser import parse_program
from bitbranch.semantics.explorer import reachable
from bitbranch.soundness.generator import random_program
from bitbranch.soundness.inclusion import interpreted_observations


def test_assume_false_blocks_error(cfg4: MachineConfig) -> None:
    result = reachable(parse_program("var x; assume(false); error;"), cfg4, 100)

    assert not result.error_reached
    assert not result.exhausted


def test_havoc_guard_reaches_error(cfg4: MachineConfig) -> None:
    p = parse_program("var x; havoc x; if (x > 0) { error; } else { }")

    assert reachable(p, cfg4, 100).error_reached


def test_observations_are_origin_tagged(cfg4: MachineConfig) -> None:
    result = reachable(parse_program("var x; x := 1; x := x + 1;"), cfg4, 100)

    assert result.observed == {(0, State.of({"x": 1})), (1, State.of({"x": 2}))}


def test_observe_projects_states(cfg4: MachineConfig) -> None:
    p = parse_program("var x, t; t := 3; x := t;")

    result = reachable(p, cfg4, 100, observe=("x",))

    assert result.observed == {(0, State.of({"x": 0})), (1, State.of({"x": 3}))}


def test_faults_end_paths(cfg4: MachineConfig) -> None:
    result = reachable(parse_program("var x, y; x := 1 / y; error;"), cfg4, 100)

    assert result.faults == {EvalFault(kind=FaultKind.DIV_BY_ZERO, location=0)}
    assert not result.error_reached
    assert result.observed == frozenset()


def test_step_bound_exhaustion(cfg4: MachineConfig) -> None:
    p = parse_program("var x; havoc x; while (x > 0) { x := x - 1; }")

    assert reachable(p, cfg4, 3).exhausted
    assert not reachable(p, cfg4, 10_000).exhausted


def test_step_bound_must_be_positive(cfg4: MachineConfig) -> None:
    with pytest.raises(ValueError):
        reachable(parse_program("var x;"), cfg4, 0)


def test_summary_keys(cfg4: MachineConfig) -> None:
    summary = reachable(parse_program("var x; havoc x;"), cfg4, 100).summary()

    assert summary == {
        "error_reached": False,
        "exhausted": False,
        "fault_count": 0,
        "observed_count": 16,
        "steps": 17,
    }


@pytest.mark.parametrize("seed", range(25))
def test_explorer_matches_structured_interpreter(seed: int, cfg3: MachineConfig) -> None:
    """The CFA explorer and the big-step interpreter make the same observations."""
    p = random_program(random.Random(seed), cfg=cfg3)

    result = reachable(p, cfg3, 200_000)

    assert not result.exhausted
    assert result.observed == interpreted_observations(p, cfg3, observe=p.decls)


@pytest.mark.parametrize("seed", range(10))
def test_larger_bound_observes_more(seed: int, cfg3: MachineConfig) -> None:
    p = random_program(random.Random(seed), cfg=cfg3)

    runs = [reachable(p, cfg3, bound) for bound in (20, 200, 200_000)]

    for smaller, larger in zip(runs, runs[1:]):
        assert smaller.observed <= larger.observed
        assert larger.error_reached or not smaller.error_reached
        assert smaller.steps <= larger.steps


@pytest.mark.parametrize("seed", range(5))
def test_exploration_is_deterministic(seed: int, cfg3: MachineConfig) -> None:
    p = random_program(random.Random(seed), cfg=cfg3)

    assert reachable(p, cfg3, 500) == reachable(p, cfg3, 500)


def test_steps_is_the_last_summary_key(cfg4: MachineConfig) -> None:
    summary = reachable(parse_program("var x; x := 1;"), cfg4, 100).summary()

    assert list(summary)[-1] == "steps"
