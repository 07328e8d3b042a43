# curveframes/serializers.py
from typing import Any, Dict

from rest_framework import serializers

from .models import Discrepancy, VerificationRun


class DiscrepancyRecordSerializer(serializers.Serializer):
    """One entry of the closed-form vs oracle JSON report."""
    quantity = serializers.CharField()
    max_abs = serializers.FloatField()
    max_rel = serializers.FloatField()
    s_argmax = serializers.FloatField()


class SphereEntrySerializer(serializers.Serializer):
    s_star = serializers.FloatField()
    source = serializers.CharField()
    branch = serializers.CharField(allow_null=True)
    center = serializers.ListField(child=serializers.FloatField(), required=False)
    radius = serializers.FloatField(required=False)
    residuals = serializers.ListField(child=serializers.FloatField(), required=False)
    deltas = serializers.ListField(child=serializers.FloatField(), required=False)
    # paper-theorem only
    radius_gap = serializers.FloatField(required=False)
    # osculating only
    signed_radius = serializers.FloatField(required=False)
    error = serializers.DictField(required=False)


class DiscrepancySerializer(serializers.ModelSerializer):
    class Meta:
        model = Discrepancy
        fields = ["id", "run", "curve", "kind", "quantity", "max_abs", "max_rel", "s_argmax", "created_at"]
        read_only_fields = fields


class VerificationRunSerializer(serializers.ModelSerializer):
    # nicer status output for read operations
    status_display = serializers.SerializerMethodField(read_only=True)
    report = serializers.JSONField(read_only=True)

    class Meta:
        model = VerificationRun
        fields = [
            "id",
            "status",
            "status_display",
            "started_at",
            "finished_at",
            "samples",
            "rtol",
            "atol",
            "checks_total",
            "checks_failed",
            "discrepancies_count",
            "initiator",
            "report",
            "created_at",
            "updated_at",
        ]
        read_only_fields = [
            "id",
            "status",
            "started_at",
            "finished_at",
            "checks_total",
            "checks_failed",
            "discrepancies_count",
            "report",
            "created_at",
            "updated_at",
        ]

    def get_status_display(self, obj: VerificationRun) -> str:
        return obj.get_status_display()

    def validate(self, attrs: Dict[str, Any]) -> Dict[str, Any]:
        for key in ("rtol", "atol"):
            value = attrs.get(key)
            if value is not None and not value > 0:
                raise serializers.ValidationError({key: "tolerance must be positive."})
        return attrs
