"""Observation inclusion between a program and its transformation."""

import random

from loguru import logger

from bitbranch.domain.machine import MachineConfig, Observation, ReachResult, State
from bitbranch.domain.syntax import Program
from bitbranch.domain.verdicts import FuzzReport, InclusionStatus, InclusionVerdict, Witness
from bitbranch.lang.printer import pretty_print
from bitbranch.semantics.explorer import reachable
from bitbranch.semantics.interpreter import exec_block
from bitbranch.soundness.generator import random_program
from bitbranch.transform.options import TransformOptions
from bitbranch.transform.translator import transform_program


def _first_missing(original: ReachResult, transformed: ReachResult) -> Witness | None:
    missing = original.observed - transformed.observed
    if not missing:
        return None
    origin, state = min(missing, key=lambda obs: (obs[0], obs[1].values))
    return Witness(origin=origin, state=state)


def compare_runs(original: ReachResult, transformed: ReachResult) -> InclusionVerdict:
    """Verdict from the reachability results of P and T(P).

    A missing observation is conclusive only when T(P) was explored to its fixpoint:
    everything P observed, even on a truncated run, is a real behaviour of P.
    """
    witness = _first_missing(original, transformed)
    lost_error = original.error_reached and not transformed.error_reached
    if not transformed.exhausted and (witness is not None or lost_error):
        status = InclusionStatus.FAILS
    elif original.exhausted or transformed.exhausted:
        status, witness = InclusionStatus.INCONCLUSIVE, None
    else:
        status = InclusionStatus.HOLDS
    return InclusionVerdict(
        status=status,
        witness=witness if status is InclusionStatus.FAILS else None,
        error_monotone=not (lost_error and not transformed.exhausted),
        original_observed=len(original.observed),
        transformed_observed=len(transformed.observed),
        original_exhausted=original.exhausted,
        transformed_exhausted=transformed.exhausted,
        original_error_reached=original.error_reached,
        transformed_error_reached=transformed.error_reached,
    )


def check_inclusion(
    p: Program, opts: TransformOptions, *, cfg: MachineConfig, step_bound: int
) -> InclusionVerdict:
    """Check that every observation of `p` is an observation of its transformation.

    Args:
        p: Source program
        opts: Transformation options
        cfg: Machine width shared by both runs
        step_bound: Step bound of each reachability run

    Returns:
        InclusionVerdict; fails carries the first missing (origin, state) observation
    """
    transformed = transform_program(p, opts)
    original_run = reachable(p, cfg, step_bound)
    transformed_run = reachable(transformed, cfg, step_bound, observe=p.decls)
    verdict = compare_runs(original_run, transformed_run)
    logger.info(f"Inclusion at width {cfg.width}: {verdict.status.value}")
    return verdict


def interpreted_observations(p: Program, cfg: MachineConfig, *, observe: tuple[str, ...]) -> set[Observation]:
    """Observations of `p` under the structured interpreter."""
    seen: set[Observation] = set()

    def record(origin: int, sigma: State) -> None:
        seen.add((origin, sigma.project(observe)))

    exec_block(p.body, State.zeros(p.decls), cfg, observer=record)
    return seen


def replay_witness(
    p: Program, witness: Witness, cfg: MachineConfig, *, transformed: Program | None = None
) -> bool:
    """Re-derive a witness with the structured interpreter instead of the CFA explorer.

    Returns:
        True if `p` makes the observation and, when `transformed` is given, T(P) does not
    """
    observation = (witness.origin, witness.state)
    if observation not in interpreted_observations(p, cfg, observe=p.decls):
        return False
    if transformed is None:
        return True
    return observation not in interpreted_observations(transformed, cfg, observe=p.decls)


def fuzz_inclusion(
    *,
    count: int,
    seed: int,
    cfg: MachineConfig,
    step_bound: int,
    opts: TransformOptions | None = None,
) -> FuzzReport:
    """Run the inclusion check over `count` seeded random programs.

    Failing verdicts are counted as counterexamples only after their witness has
    been replayed by the structured interpreter.
    """
    opts = opts or TransformOptions()
    rng = random.Random(seed)
    report = FuzzReport(seed=seed, count=count, width=cfg.width)
    for index in range(count):
        p = random_program(rng, cfg=cfg)
        verdict = check_inclusion(p, opts, cfg=cfg, step_bound=step_bound)
        match verdict.status:
            case InclusionStatus.HOLDS:
                report.holds += 1
            case InclusionStatus.INCONCLUSIVE:
                report.inconclusive += 1
            case InclusionStatus.FAILS if verdict.witness is not None:
                transformed = transform_program(p, opts)
                if replay_witness(p, verdict.witness, cfg, transformed=transformed):
                    report.counterexamples.append(f"#{index} {verdict.witness}")
                    logger.warning(f"Program #{index} loses {verdict.witness}:\n{pretty_print(p)}")
                else:
                    report.unconfirmed += 1
        if not verdict.error_monotone:
            report.monotonicity_violations += 1
        if verdict.transformed_error_reached and not verdict.original_error_reached:
            report.spurious_alarms += 1
    logger.info(
        f"Fuzzed {count} programs: {report.holds} hold, {report.inconclusive} inconclusive, "
        f"{len(report.counterexamples)} counterexamples"
    )
    return report
