from django.apps import AppConfig


class StructuresConfig(AppConfig):
    default_auto_field = 'django.db.models.BigAutoField'
    name = 'structures'
    verbose_name = 'Forma de Cayley, formas de Kähler e o sistema de EDOs'
