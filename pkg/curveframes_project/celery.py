# curveframes_project/celery.py
import os

from celery import Celery

os.environ.setdefault("DJANGO_SETTINGS_MODULE", "curveframes_project.settings")

app = Celery("curveframes_project")
# CELERY_-prefixed keys of the Django settings configure the worker.
app.config_from_object("django.conf:settings", namespace="CELERY")
app.autodiscover_tasks()
