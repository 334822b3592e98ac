"""Structured big-step interpreter with set semantics."""

from collections.abc import Callable

from loguru import logger

from bitbranch.config import settings
from bitbranch.domain.machine import ErrorToken, EvalFault, MachineConfig, State
from bitbranch.domain.syntax import (
    Assign,
    Assume,
    Block,
    Error,
    Expr,
    Havoc,
    IfCond,
    IfNondet,
    Stmt,
    While,
)
from bitbranch.semantics.evaluator import eval_expr

Outcome = State | ErrorToken | EvalFault
Observer = Callable[[int, State], None]


def _observe(observer: Observer | None, stmt: Stmt, sigma: State) -> None:
    if observer is not None and stmt.origin is not None and stmt.observable:
        observer(stmt.origin, sigma)


def _eval(e: Expr, sigma: State, cfg: MachineConfig, origin: int | None) -> int | EvalFault:
    value = eval_expr(e, sigma, cfg)
    if isinstance(value, EvalFault):
        return value.model_copy(update={"location": origin})
    return value


class Interpreter:
    """Executes statements over sets of states.

    Args:
        cfg: Machine width
        observer: Called with (origin, state) after each executed observing statement
        max_loop_unrollings: Iteration budget of every While fixpoint
    """

    def __init__(
        self,
        cfg: MachineConfig,
        *,
        observer: Observer | None = None,
        max_loop_unrollings: int | None = None,
    ):
        self.cfg = cfg
        self.observer = observer
        self.max_loop_unrollings = max_loop_unrollings or settings.max_loop_unrollings

    def exec_block(self, block: Block, sigma: State) -> set[Outcome]:
        frontier: set[Outcome] = {sigma}
        for stmt in block:
            successors: set[Outcome] = set()
            for outcome in frontier:
                if isinstance(outcome, State):
                    successors |= self.exec_stmt(stmt, outcome)
                else:
                    successors.add(outcome)
            frontier = successors
        return frontier

    def exec_stmt(self, stmt: Stmt, sigma: State) -> set[Outcome]:
        origin = stmt.origin
        match stmt:
            case Assign(lhs=lhs, rhs=rhs):
                value = _eval(rhs, sigma, self.cfg, origin)
                if isinstance(value, EvalFault):
                    return {value}
                successor = sigma.updated(lhs, value)
                _observe(self.observer, stmt, successor)
                return {successor}
            case Havoc(name=name):
                successors: set[Outcome] = set()
                for value in self.cfg.domain():
                    successor = sigma.updated(name, value)
                    _observe(self.observer, stmt, successor)
                    successors.add(successor)
                return successors
            case Assume(cond=cond):
                value = _eval(cond, sigma, self.cfg, origin)
                if isinstance(value, EvalFault):
                    return {value}
                if value == 0:
                    return set()
                _observe(self.observer, stmt, sigma)
                return {sigma}
            case Error():
                _observe(self.observer, stmt, sigma)
                return {ErrorToken()}
            case IfCond(cond=cond, then=then, orelse=orelse):
                value = _eval(cond, sigma, self.cfg, origin)
                if isinstance(value, EvalFault):
                    return {value}
                _observe(self.observer, stmt, sigma)
                return self.exec_block(then if value != 0 else orelse, sigma)
            case IfNondet(then=then, orelse=orelse):
                return self.exec_block(then, sigma) | self.exec_block(orelse, sigma)
            case While():
                return self._exec_while(stmt, sigma)
        raise TypeError(f"not a statement: {stmt!r}")

    def _exec_while(self, loop: While, sigma: State) -> set[Outcome]:
        results: set[Outcome] = set()
        seen: set[State] = {sigma}
        frontier = [sigma]
        for _ in range(self.max_loop_unrollings):
            if not frontier:
                return results
            next_frontier: list[State] = []
            for state in frontier:
                value = _eval(loop.cond, state, self.cfg, loop.origin)
                if isinstance(value, EvalFault):
                    results.add(value)
                    continue
                _observe(self.observer, loop, state)
                if value == 0:
                    results.add(state)
                    continue
                for outcome in self.exec_block(loop.body, state):
                    if not isinstance(outcome, State):
                        results.add(outcome)
                    elif outcome not in seen:
                        seen.add(outcome)
                        next_frontier.append(outcome)
            frontier = next_frontier
        if frontier:
            logger.warning(
                f"Loop at @{loop.origin} still growing after {self.max_loop_unrollings} unrollings"
            )
        return results


def exec_stmt(
    s: Stmt, sigma: State, cfg: MachineConfig, *, observer: Observer | None = None
) -> set[Outcome]:
    """All outcomes of executing `s` from `sigma`.

    Args:
        s: Statement to execute
        sigma: Pre-state
        cfg: Machine width
        observer: Optional callback receiving (origin, state) observations

    Returns:
        Successor states, plus ErrorToken and EvalFault outcomes of ended paths
    """
    return Interpreter(cfg, observer=observer).exec_stmt(s, sigma)


def exec_block(
    block: Block, sigma: State, cfg: MachineConfig, *, observer: Observer | None = None
) -> set[Outcome]:
    return Interpreter(cfg, observer=observer).exec_block(block, sigma)
