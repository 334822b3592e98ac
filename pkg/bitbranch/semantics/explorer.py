"""Exhaustive breadth-first reachability over the program's control-flow automaton."""

from collections import deque
from collections.abc import Callable, Iterable, Sequence

from loguru import logger

from bitbranch.domain.cfa import Cfa, CfaEdge
from bitbranch.domain.machine import EvalFault, FaultKind, MachineConfig, ReachResult, State
from bitbranch.domain.syntax import Assign, Assume, Error, Havoc, Program
from bitbranch.semantics.evaluator import Faulted, compile_expr
from bitbranch.transform.cfa_builder import build_cfa
from bitbranch.transform.normalize import branch_normalize

Values = tuple[int, ...]
Step = Callable[[Values], Iterable[Values]]


def _edge_step(edge: CfaEdge, slots: dict[str, int], cfg: MachineConfig) -> Step:
    match edge.stmt:
        case Assign(lhs=lhs, rhs=rhs):
            f = compile_expr(rhs, slots, cfg)
            slot = slots[lhs]
            return lambda v: (v[:slot] + (f(v),) + v[slot + 1 :],)
        case Havoc(name=name):
            slot = slots[name]
            domain = tuple(cfg.domain())
            return lambda v: [v[:slot] + (x,) + v[slot + 1 :] for x in domain]
        case Assume(cond=cond):
            g = compile_expr(cond, slots, cfg)
            return lambda v: (v,) if g(v) != 0 else ()
        case Error():
            return lambda v: (v,)
    raise TypeError(f"unexpected edge label {edge.stmt!r}")


class Explorer:
    """Breadth-first search over (location, valuation) pairs of a CFA.

    Args:
        cfa: Automaton to explore
        cfg: Machine width
        observe: Variables kept in recorded observations
    """

    def __init__(self, cfa: Cfa, cfg: MachineConfig, *, observe: Sequence[str]):
        self.cfa = cfa
        self.cfg = cfg
        self.observe = tuple(observe)
        slots = {name: i for i, name in enumerate(cfa.variables)}
        self.projection = tuple(slots[name] for name in self.observe)
        self.outgoing = {
            q: [(edge, _edge_step(edge, slots, cfg)) for edge in edges]
            for q, edges in cfa.outgoing().items()
        }

    def run(self, step_bound: int) -> ReachResult:
        initial = (self.cfa.initial, (0,) * len(self.cfa.variables))
        visited = {initial}
        queue = deque([initial])
        observed: set[tuple[int, Values]] = set()
        faults: set[tuple[FaultKind, int | None]] = set()
        error_reached = False
        steps = 0

        while queue and steps < step_bound:
            location, values = queue.popleft()
            steps += 1
            for edge, step in self.outgoing[location]:
                origin = edge.stmt.origin
                observing = origin is not None and edge.stmt.observable
                try:
                    successors = step(values)
                except Faulted as fault:
                    faults.add((fault.kind, origin))
                    continue
                for successor in successors:
                    if observing:
                        observed.add((origin, tuple(successor[i] for i in self.projection)))
                    if isinstance(edge.stmt, Error):
                        error_reached = True
                        continue
                    pair = (edge.target, successor)
                    if pair not in visited:
                        visited.add(pair)
                        queue.append(pair)

        exhausted = bool(queue)
        if exhausted:
            logger.warning(f"Step bound {step_bound} reached with {len(queue)} pairs pending")
        logger.debug(
            f"Explored {steps} pairs: {len(observed)} observations, error_reached={error_reached}"
        )
        return ReachResult(
            observed=frozenset(
                (origin, State.model_construct(names=self.observe, values=proj))
                for origin, proj in observed
            ),
            error_reached=error_reached,
            faults=frozenset(EvalFault(kind=kind, location=origin) for kind, origin in faults),
            exhausted=exhausted,
            steps=steps,
        )


def reachable(
    p: Program,
    cfg: MachineConfig,
    step_bound: int,
    *,
    observe: Sequence[str] | None = None,
) -> ReachResult:
    """Explore every execution of `p` from the all-zeros state.

    Args:
        p: Program to explore; conditionals are normalised first
        cfg: Machine width
        step_bound: Maximum number of (location, state) pairs to expand
        observe: Variables kept in observations, defaults to the program's decls

    Returns:
        ReachResult with the observations, faults and whether the bound was hit
    """
    if step_bound < 1:
        raise ValueError("step_bound must be at least 1")
    cfa = build_cfa(branch_normalize(p))
    result = Explorer(cfa, cfg, observe=p.decls if observe is None else observe).run(step_bound)
    logger.info(f"Reachability at width {cfg.width}: {result.summary()}")
    return result
