from .base import *
from .base import env

DEBUG = True
SECRET_KEY = env("DJANGO_SECRET_KEY", default="dev-secret-key")

# django-extensions
INSTALLED_APPS += ["django_extensions"]

CADA_SIM_CHECKED_MODE = env.bool("CADA_SIM_CHECKED_MODE", default=True)

LOGGING["loggers"]["cada_sim"]["level"] = env("CADA_SIM_LOG_LEVEL", default="DEBUG")
