import os
from pathlib import Path

from dotenv import load_dotenv


# Переменные окружения из .env (корень проекта или путь из CURVELAB_DOTENV_PATH)
BASE_DIR = Path(__file__).resolve().parent.parent
load_dotenv(os.getenv("CURVELAB_DOTENV_PATH", BASE_DIR / ".env"))


SECRET_KEY = os.getenv("DJANGO_SECRET_KEY", "dev-secret-key-change-in-prod")

DEBUG = os.getenv("DJANGO_DEBUG", "True") == "True"

ALLOWED_HOSTS: list[str] = [h.strip() for h in os.getenv("DJANGO_ALLOWED_HOSTS", "localhost,127.0.0.1").split(",") if h.strip()]

INSTALLED_APPS = [
    "django.contrib.admin",
    "django.contrib.auth",
    "django.contrib.contenttypes",
    "django.contrib.sessions",
    "django.contrib.messages",
    "django.contrib.staticfiles",
    # Проектные приложения
    "curvelab",
]

MIDDLEWARE = [
    "django.middleware.security.SecurityMiddleware",
    "django.contrib.sessions.middleware.SessionMiddleware",
    "django.middleware.common.CommonMiddleware",
    "django.middleware.csrf.CsrfViewMiddleware",
    "django.contrib.auth.middleware.AuthenticationMiddleware",
    "django.contrib.messages.middleware.MessageMiddleware",
    "django.middleware.clickjacking.XFrameOptionsMiddleware",
]

ROOT_URLCONF = "curvelab_site.urls"

TEMPLATES = [
    {
        "BACKEND": "django.template.backends.django.DjangoTemplates",
        "DIRS": [],
        "APP_DIRS": True,
        "OPTIONS": {
            "context_processors": [
                "django.template.context_processors.debug",
                "django.template.context_processors.request",
                "django.contrib.auth.context_processors.auth",
                "django.contrib.messages.context_processors.messages",
            ],
        },
    },
]

WSGI_APPLICATION = "curvelab_site.wsgi.application"


# База: sqlite рядом с проектом, хранит только журнал прогонов
DATABASES = {
    "default": {
        "ENGINE": "django.db.backends.sqlite3",
        "NAME": os.getenv("CURVELAB_DB_PATH", str(BASE_DIR / "curvelab.sqlite3")),
    },
}


AUTH_PASSWORD_VALIDATORS: list[dict] = []


LANGUAGE_CODE = "ru-ru"

TIME_ZONE = "Europe/Moscow"

USE_I18N = True
USE_TZ = True


STATIC_URL = "/static/"
STATIC_ROOT = BASE_DIR / "staticfiles"

DEFAULT_AUTO_FIELD = "django.db.models.BigAutoField"


# ── Параметры проверок ──
# Файл таблицы модулей: строки "p k c_0 c_1 ... c_k". Пусто = минимальный неприводимый.
CURVELAB_MODULUS_TABLE = os.getenv("CURVELAB_MODULUS_TABLE", "")
# Каталог для отчётов run/count, если --out не задан
CURVELAB_REPORT_DIR = os.getenv("CURVELAB_REPORT_DIR", str(BASE_DIR / "reports"))
CURVELAB_JOBS = int(os.getenv("CURVELAB_JOBS", "1"))
# Потолок BFS-замыкания группы (число элементов)
CURVELAB_CLOSURE_CAP = int(os.getenv("CURVELAB_CLOSURE_CAP", "1000000"))
# Потолок размерности пространства форм степени d: (d+1)(d+2)/2
CURVELAB_FORM_SPACE_CAP = int(os.getenv("CURVELAB_FORM_SPACE_CAP", "120"))
# Потолок числа кандидатов при поиске диагональной проективности
CURVELAB_WITNESS_SEARCH_CAP = int(os.getenv("CURVELAB_WITNESS_SEARCH_CAP", "1000000"))
# M для поиска особых точек и для dgz-points
CURVELAB_SINGULAR_EXT = int(os.getenv("CURVELAB_SINGULAR_EXT", "4"))
CURVELAB_DGZ_EXT = int(os.getenv("CURVELAB_DGZ_EXT", "6"))
# Таблицы логарифмов строятся только для полей не больше этого порядка
CURVELAB_MAX_FIELD_ORDER = int(os.getenv("CURVELAB_MAX_FIELD_ORDER", str(2**20)))
# Сохранять прогоны в БД (VerificationRun/CheckRecord) помимо файлов отчёта
CURVELAB_PERSIST_RUNS = os.getenv("CURVELAB_PERSIST_RUNS", "true").lower() == "true"

CURVELAB_LOG_LEVEL = os.getenv("CURVELAB_LOG_LEVEL", "INFO").upper()

LOGGING = {
    "version": 1,
    "disable_existing_loggers": False,
    "formatters": {
        "plain": {"format": "%(asctime)s %(levelname)s %(name)s: %(message)s"},
    },
    "handlers": {
        "console": {"class": "logging.StreamHandler", "formatter": "plain"},
    },
    "loggers": {
        "curvelab": {"handlers": ["console"], "level": CURVELAB_LOG_LEVEL, "propagate": False},
    },
}
