from django.apps import AppConfig


class SymexprConfig(AppConfig):
    default_auto_field = 'django.db.models.BigAutoField'
    name = 'symexpr'
    verbose_name = 'Aritmética exata (polinômios e funções racionais)'
