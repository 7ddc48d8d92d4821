from django.apps import AppConfig


class CalabiConfig(AppConfig):
    default_auto_field = 'django.db.models.BigAutoField'
    name = 'calabi'
    verbose_name = 'Família explícita de métricas com holonomia SU(4)'
