from django.apps import AppConfig


class CurveFramesConfig(AppConfig):
    name = "curveframes"
    default_auto_field = "django.db.models.BigAutoField"
