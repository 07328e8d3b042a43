# curveframes/models.py
from uuid import uuid4

from django.core.validators import MinValueValidator
from django.db import models, transaction
from django.utils import timezone


class TimeStampedModel(models.Model):
    """Reusable timestamp mixin."""
    created_at = models.DateTimeField(auto_now_add=True)
    updated_at = models.DateTimeField(auto_now=True)

    class Meta:
        abstract = True


class VerificationRun(TimeStampedModel):
    """
    One execution of the verification suite. UUID PK so a run can be
    referenced from the worker and the API alike.
    Status lifecycle: PENDING -> RUNNING -> PASSED / DISCREPANT / FAILED
    """
    class Status(models.TextChoices):
        PENDING = "PENDING", "Pending"
        RUNNING = "RUNNING", "Running"
        PASSED = "PASSED", "Passed"
        DISCREPANT = "DISCREPANT", "Passed with discrepancies"
        FAILED = "FAILED", "Failed"

    id = models.UUIDField(primary_key=True, default=uuid4, editable=False)
    status = models.CharField(max_length=20, choices=Status.choices, default=Status.PENDING)
    started_at = models.DateTimeField(blank=True, null=True)
    finished_at = models.DateTimeField(blank=True, null=True)
    samples = models.PositiveIntegerField(default=4096, validators=[MinValueValidator(64)])
    rtol = models.FloatField(blank=True, null=True, help_text="Overrides CURVEFRAMES['COMPARE_RTOL']")
    atol = models.FloatField(blank=True, null=True, help_text="Overrides CURVEFRAMES['COMPARE_ATOL']")
    checks_total = models.IntegerField(default=0)
    checks_failed = models.IntegerField(default=0)
    discrepancies_count = models.IntegerField(default=0)
    # api / cli / scheduler
    initiator = models.CharField(max_length=40, default="api")
    # full SuiteReport.as_dict() once finished
    report = models.JSONField(blank=True, null=True)

    def mark_running(self):
        self.status = self.Status.RUNNING
        self.started_at = timezone.now()
        self.save(update_fields=["status", "started_at", "updated_at"])

    def mark_finished(self, success: bool = True):
        """
        success=False is for runs that crashed. Otherwise failed checks give
        FAILED, out-of-tolerance discrepancy records alone give DISCREPANT.
        """
        self.finished_at = timezone.now()
        if not success or self.checks_failed > 0:
            self.status = self.Status.FAILED
        elif self.discrepancies_count > 0:
            self.status = self.Status.DISCREPANT
        else:
            self.status = self.Status.PASSED
        self.save(update_fields=["status", "finished_at", "updated_at"])

    def increment_counters(self, total: int = 0, failed: int = 0, discrepancies: int = 0):
        with transaction.atomic():
            run = VerificationRun.objects.select_for_update().get(pk=self.pk)
            run.checks_total = run.checks_total + total
            run.checks_failed = run.checks_failed + failed
            run.discrepancies_count = run.discrepancies_count + discrepancies
            run.save(update_fields=["checks_total", "checks_failed", "discrepancies_count", "updated_at"])
        self.refresh_from_db(fields=["checks_total", "checks_failed", "discrepancies_count"])

    def __str__(self) -> str:
        return f"Run {self.pk} - {self.status}"


class Discrepancy(TimeStampedModel):
    """Out-of-tolerance closed-form vs oracle record, one per quantity."""
    run = models.ForeignKey(VerificationRun, on_delete=models.CASCADE, related_name="discrepancies")
    curve = models.CharField(max_length=40)          # circle / helix / salkowski
    kind = models.CharField(max_length=10)           # tn1 / tn2 / n1n2 / tn1n2
    quantity = models.CharField(max_length=20)
    max_abs = models.FloatField()
    max_rel = models.FloatField()
    s_argmax = models.FloatField()

    class Meta:
        ordering = ["curve", "kind", "quantity"]
        indexes = [models.Index(fields=["kind", "quantity"], name="curveframes_kind_4c1f0e_idx")]

    def __str__(self) -> str:
        return f"{self.curve}.{self.kind} {self.quantity}: rel {self.max_rel:.3e}"
