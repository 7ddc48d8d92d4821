from django.apps import AppConfig


class CoframeConfig(AppConfig):
    default_auto_field = 'django.db.models.BigAutoField'
    name = 'coframe'
    verbose_name = 'Álgebra exterior do coreferencial do cone'
