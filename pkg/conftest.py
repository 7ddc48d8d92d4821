import os

import django

os.environ.setdefault('DJANGO_SETTINGS_MODULE', 'spin7cone.settings')
django.setup()
