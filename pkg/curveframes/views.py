# curveframes/views.py
from django.shortcuts import get_object_or_404
from rest_framework import mixins, status, viewsets
from rest_framework.decorators import action
from rest_framework.response import Response

from .models import Discrepancy, VerificationRun
from .serializers import DiscrepancySerializer, VerificationRunSerializer
from .tasks import run_verification


class VerificationRunViewSet(
    mixins.CreateModelMixin,
    mixins.RetrieveModelMixin,
    mixins.ListModelMixin,
    mixins.DestroyModelMixin,
    viewsets.GenericViewSet,
):
    queryset = VerificationRun.objects.all().order_by("-created_at")
    serializer_class = VerificationRunSerializer
    filterset_fields = ["status", "initiator"]

    def create(self, request, *args, **kwargs):
        """Create the run (PENDING) and immediately enqueue the worker."""
        serializer = self.get_serializer(data=request.data)
        serializer.is_valid(raise_exception=True)
        run = serializer.save()
        run_verification.delay(str(run.id))
        headers = self.get_success_headers(serializer.data)
        return Response(serializer.data, status=status.HTTP_201_CREATED, headers=headers)

    @action(detail=True, methods=["post"])
    def start(self, request, pk=None):
        """Re-enqueue a run that is still PENDING (e.g. the broker was down)."""
        run = get_object_or_404(VerificationRun, pk=pk)
        if run.status != VerificationRun.Status.PENDING:
            return Response({"detail": "Run not in PENDING state."}, status=status.HTTP_400_BAD_REQUEST)
        run_verification.delay(str(run.id))
        return Response({"detail": "Run enqueued."}, status=status.HTTP_202_ACCEPTED)


class DiscrepancyViewSet(viewsets.ReadOnlyModelViewSet):
    queryset = Discrepancy.objects.select_related("run").all()
    serializer_class = DiscrepancySerializer
    filterset_fields = ["run", "kind", "quantity"]
