# curveframes/urls.py
from django.urls import include, path
from rest_framework.routers import DefaultRouter

from . import views

router = DefaultRouter()
router.register(r"runs", views.VerificationRunViewSet, basename="verificationrun")
router.register(r"discrepancies", views.DiscrepancyViewSet, basename="discrepancy")

urlpatterns = [
    path("", include(router.urls)),
]
