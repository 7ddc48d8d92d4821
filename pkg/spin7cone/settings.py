"""
Django settings for spin7cone project.

O projeto não serve páginas: é usado pelos comandos de gerenciamento
(derive, verify, family, integrate, check_holonomy, explore_alc).

For the full list of settings and their values, see
https://docs.djangoproject.com/en/5.0/ref/settings/
"""

from pathlib import Path
import os

# Build paths inside the project like this: BASE_DIR / 'subdir'.
BASE_DIR = Path(__file__).resolve().parent.parent


# SECURITY WARNING: keep the secret key used in production secret!
SECRET_KEY = os.environ.get('SPIN7_SECRET_KEY', 'django-insecure-spin7cone-local-only')

DEBUG = os.environ.get('SPIN7_DEBUG', '0') == '1'

ALLOWED_HOSTS = []


# Application definition

INSTALLED_APPS = [
    'django.contrib.contenttypes',
    'django.contrib.auth',
    'rest_framework',
    'core',
    'symexpr',
    'coframe',
    'structures',
    'flows',
    'calabi',
]

MIDDLEWARE = []


# Database
# Nenhum modelo persistente; o sqlite só satisfaz o executor de testes.

DATABASES = {
    'default': {
        'ENGINE': 'django.db.backends.sqlite3',
        'NAME': BASE_DIR / 'db.sqlite3',
    }
}


# Internationalization

LANGUAGE_CODE = 'pt-br'

TIME_ZONE = 'America/Sao_Paulo'

USE_I18N = True

USE_TZ = True

DEFAULT_AUTO_FIELD = 'django.db.models.BigAutoField'

# REST Framework Configuration (somente serializers + JSONRenderer)
REST_FRAMEWORK = {
    'DEFAULT_RENDERER_CLASSES': [
        'rest_framework.renderers.JSONRenderer',
    ],
    'COERCE_DECIMAL_TO_STRING': False,
}

# Logging Configuration
LOG_DIR = Path(os.environ.get('SPIN7_LOG_DIR', BASE_DIR / 'logs'))
LOG_LEVEL = os.environ.get('SPIN7_LOG_LEVEL', 'INFO')

LOGGING = {
    'version': 1,
    'disable_existing_loggers': False,
    'formatters': {
        'verbose': {
            'format': '{levelname} {asctime} {module} {process:d} {thread:d} {message}',
            'style': '{',
        },
    },
    'handlers': {
        'file': {
            'level': 'INFO',
            'class': 'logging.FileHandler',
            'filename': LOG_DIR / 'spin7cone.log',
            'formatter': 'verbose',
        },
        'console': {
            'level': 'WARNING',
            'class': 'logging.StreamHandler',
            'formatter': 'verbose',
        },
    },
    'root': {
        'handlers': ['console', 'file'],
        'level': 'WARNING',
    },
    'loggers': {
        'django': {
            'handlers': ['console', 'file'],
            'level': 'WARNING',
            'propagate': False,
        },
        **{
            name: {
                'handlers': ['console', 'file'],
                'level': LOG_LEVEL,
                'propagate': False,
            }
            for name in ('core', 'symexpr', 'coframe', 'structures', 'flows', 'calabi')
        },
    },
}

# SPIN7 Specific Settings
SPIN7_SETTINGS = {
    'REL_TOL': 1e-10,
    'EPSILON': 1e-4,
    'R_RANGE': (1.001, 50.0, 200, 'log'),
    'ALPHA_GRID': [0.0, 0.3, 0.6, 0.9, 0.99, 1.0],
    'HOLONOMY_R_GRID': [1.05, 1.5, 2.0, 5.0, 20.0],
    'CLOSED_TOL': 1e-10,
    'OPEN_TOL': 0.1,
    'RESIDUAL_TOL': 1e-10,
    'T_END': 100.0,
    'THREADS': int(os.environ.get('SPIN7_THREADS', os.cpu_count() or 1)),
}

# Create logs directory if it doesn't exist
os.makedirs(LOG_DIR, exist_ok=True)
