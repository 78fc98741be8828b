import logging

from django.apps import AppConfig

logger = logging.getLogger(__name__)


class CurvelabConfig(AppConfig):
    default_auto_field = "django.db.models.BigAutoField"
    name = "curvelab"
    verbose_name = "Проверка инвариантных кривых"

    def ready(self):
        from django.conf import settings
        table = getattr(settings, "CURVELAB_MODULUS_TABLE", "")
        if table:
            logger.info("Модули полей: таблица %s (остальные степени — минимальный неприводимый).", table)
        else:
            logger.debug("Модули полей: лексикографически минимальные неприводимые многочлены.")
        logger.debug(
            "Отчёты: %s, jobs=%s, сохранение прогонов=%s",
            getattr(settings, "CURVELAB_REPORT_DIR", ""),
            getattr(settings, "CURVELAB_JOBS", 1),
            getattr(settings, "CURVELAB_PERSIST_RUNS", True),
        )
