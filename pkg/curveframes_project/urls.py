# curveframes_project/urls.py
from django.contrib import admin
from django.urls import include, path

urlpatterns = [
    path("admin/", admin.site.urls),
    # verification run ledger
    path("api/", include("curveframes.urls")),
    path("api-auth/", include("rest_framework.urls", namespace="rest_framework")),
]
