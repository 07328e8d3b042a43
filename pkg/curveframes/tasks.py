# curveframes/tasks.py
from celery import shared_task
from celery.utils.log import get_task_logger

from .exceptions import CurveFramesError
from .exports import json_safe
from .models import Discrepancy, VerificationRun
from .verification import SuiteConfig, SuiteReport, run_suite

logger = get_task_logger(__name__)


def record_report(run: VerificationRun, report: SuiteReport) -> VerificationRun:
    """Store a finished suite on its run: counters, out-of-tolerance records, JSON report."""
    failing = []
    for name, discrepancy in report.discrepancies.items():
        curve, kind = name.rsplit(".", 1)
        for record in discrepancy.failures():
            failing.append(Discrepancy(
                run=run,
                curve=curve,
                kind=kind,
                quantity=record.quantity,
                max_abs=record.max_abs,
                max_rel=record.max_rel,
                s_argmax=record.s_argmax,
            ))
    Discrepancy.objects.bulk_create(failing)
    run.increment_counters(total=len(report.checks), failed=len(report.failures()), discrepancies=len(failing))
    run.report = json_safe(report.as_dict())
    run.save(update_fields=["report", "updated_at"])
    run.mark_finished(success=True)
    return run


@shared_task(bind=True)
def run_verification(self, run_id: str):
    """
    Worker entrypoint invoked by the API: runs the suite with the run's
    sample count and tolerances and records the outcome.
    """
    logger.info("run_verification start: %s", run_id)
    run = VerificationRun.objects.get(pk=run_id)
    run.mark_running()
    try:
        report = run_suite(SuiteConfig(n=run.samples, rtol=run.rtol, atol=run.atol))
        record_report(run, report)
    except CurveFramesError as fatal:
        run.report = {"error": fatal.as_dict()}
        run.save(update_fields=["report", "updated_at"])
        run.mark_finished(success=False)
        logger.exception("verification run %s failed", run_id)
        raise
    logger.info("run_verification finished: %s -> %s", run_id, run.status)
    return {"run_id": run_id, "status": run.status}
