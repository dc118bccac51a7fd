"""Configura Django para pytest igual que `DJANGO_ENV=test python manage.py test`."""
import os

import django

os.environ.setdefault('DJANGO_ENV', 'test')
os.environ.setdefault('DJANGO_SETTINGS_MODULE', 'config.settings')
django.setup()
