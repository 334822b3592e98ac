"""Transfer of safety from the over-approximating transformation back to the source."""

from loguru import logger

from bitbranch.domain.machine import MachineConfig
from bitbranch.domain.syntax import Program
from bitbranch.domain.verdicts import SafetyOutcome, SafetyReport
from bitbranch.semantics.explorer import reachable
from bitbranch.transform.options import TransformOptions
from bitbranch.transform.translator import transform_program


def certify_safety(
    p: Program, opts: TransformOptions, *, cfg: MachineConfig, step_bound: int
) -> SafetyReport:
    """Decide whether `error` is unreachable in `p` by exploring its transformation.

    An unreachable error in T(P) proves P safe. When T(P) reaches error, P itself
    is explored to tell a true alarm from one introduced by the over-approximation.

    Args:
        p: Source program
        opts: Transformation options
        cfg: Machine width
        step_bound: Step bound of each reachability run

    Returns:
        SafetyReport with outcome safe, true_alarm, spurious_alarm or inconclusive
    """
    width = cfg.width
    after = reachable(transform_program(p, opts), cfg, step_bound, observe=p.decls)
    if not after.error_reached:
        if after.exhausted:
            report = SafetyReport(
                outcome=SafetyOutcome.INCONCLUSIVE,
                width=width,
                message=f"T(P) explored up to the step bound {step_bound} without reaching error",
                transformed_error_reached=False,
            )
        else:
            report = SafetyReport(
                outcome=SafetyOutcome.SAFE,
                width=width,
                message=f"P safe at width {width} (certified via over-approximation)",
                transformed_error_reached=False,
            )
        logger.info(report.message)
        return report

    before = reachable(p, cfg, step_bound)
    if before.error_reached:
        outcome, message = SafetyOutcome.TRUE_ALARM, f"error reachable in P at width {width}"
    elif before.exhausted:
        outcome = SafetyOutcome.INCONCLUSIVE
        message = f"T(P) reaches error; P explored up to the step bound {step_bound} without it"
    else:
        outcome = SafetyOutcome.SPURIOUS_ALARM
        message = f"error reachable only in T(P) at width {width}: alarm from over-approximation"
    logger.info(message)
    return SafetyReport(
        outcome=outcome,
        width=width,
        message=message,
        transformed_error_reached=True,
        original_error_reached=before.error_reached,
    )
