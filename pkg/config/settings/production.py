from .base import *
from .base import env

DEBUG = False

DATABASES = {
    "default": env.db("DATABASE_URL")
}
DATABASES["default"]["CONN_MAX_AGE"] = env.int("CONN_MAX_AGE", default=60)

CADA_SIM_WORKER_THREADS = env.int("CADA_SIM_WORKER_THREADS", default=4)

# LOGGING
LOGGING["loggers"]["celery"] = {
    "handlers": ["console"],
    "level": "INFO",
    "propagate": False,
}
