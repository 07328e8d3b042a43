# curveframes/admin.py
from django.contrib import admin

from .models import Discrepancy, VerificationRun


class DiscrepancyInline(admin.TabularInline):
    model = Discrepancy
    extra = 0
    readonly_fields = ("curve", "kind", "quantity", "max_abs", "max_rel", "s_argmax")


@admin.register(VerificationRun)
class VerificationRunAdmin(admin.ModelAdmin):
    list_display = ("id", "status", "initiator", "samples", "started_at", "finished_at", "checks_total", "checks_failed", "discrepancies_count")
    list_filter = ("status", "initiator")
    inlines = [DiscrepancyInline]


@admin.register(Discrepancy)
class DiscrepancyAdmin(admin.ModelAdmin):
    list_display = ("run", "curve", "kind", "quantity", "max_rel", "created_at")
    list_filter = ("curve", "kind", "quantity")
