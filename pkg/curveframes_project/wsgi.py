"""
WSGI config for curveframes_project.

Exposes the run ledger API to gunicorn as ``application``.
"""

import os

from django.core.wsgi import get_wsgi_application

os.environ.setdefault("DJANGO_SETTINGS_MODULE", "curveframes_project.settings")

application = get_wsgi_application()
