from __future__ import annotations

import json

from django.db import models

from .suites import VerificationSuite


def _plain(value):
    """JSON-совместимая копия (FieldElement и прочее — через repr)."""
    return json.loads(json.dumps(value, ensure_ascii=False, default=repr))


class TimeStampedModel(models.Model):
    """Базовая абстракция с датами создания/обновления."""

    created_at = models.DateTimeField(auto_now_add=True)
    updated_at = models.DateTimeField(auto_now=True)

    class Meta:
        abstract = True


class VerificationRun(TimeStampedModel):
    """Один прогон `manage.py curvelab run <suite>`.

    Файлы отчёта остаются основным результатом; строка в БД — журнал,
    по которому удобно смотреть историю прогонов в админке.
    """

    class Status(models.TextChoices):
        PASSED = "passed", "Все проверки прошли"
        FAILED = "failed", "Есть проваленные проверки"

    suite = models.CharField(max_length=50, db_index=True, help_text="Идентификатор набора проверок.")
    params = models.JSONField(default=dict, help_text="Параметры прогона (q, n, λ, ext, потолки).")
    status = models.CharField(max_length=10, choices=Status.choices, db_index=True)
    checks_total = models.PositiveIntegerField(default=0)
    checks_failed = models.PositiveIntegerField(default=0)
    report_dir = models.CharField(max_length=500, blank=True, default="", help_text="Каталог с JSON/CSV/XLSX отчётами.")
    fields = models.JSONField(default=list, help_text="Поля GF(p^k) с модулями, использованные в прогоне.")

    class Meta:
        verbose_name = "Прогон проверок"
        verbose_name_plural = "Прогоны проверок"
        ordering = ["-created_at"]

    def __str__(self) -> str:  # pragma: no cover
        return f"{self.suite} ({self.get_status_display()}, {self.created_at:%Y-%m-%d %H:%M})"

    @classmethod
    def record(cls, suite: VerificationSuite, report_dir: str = "") -> "VerificationRun":
        """Сохраняет прогон вместе со всеми проверками."""
        run = cls.objects.create(
            suite=suite.suite,
            params=suite.params,
            status=cls.Status.PASSED if suite.passed else cls.Status.FAILED,
            checks_total=len(suite.checks),
            checks_failed=len(suite.failed),
            report_dir=report_dir,
            fields=suite.fields,
        )
        CheckRecord.objects.bulk_create(
            CheckRecord(
                run=run,
                name=check.name,
                passed=check.passed,
                elapsed_ms=check.elapsed_ms,
                data=_plain(check.to_json()),
            )
            for check in suite.checks
        )
        return run


class CheckRecord(models.Model):
    """Результат одной проверки внутри прогона."""

    run = models.ForeignKey(VerificationRun, on_delete=models.CASCADE, related_name="checks")
    name = models.CharField(max_length=100)
    passed = models.BooleanField(db_index=True)
    elapsed_ms = models.PositiveIntegerField(default=0)
    data = models.JSONField(default=dict, help_text="Данные проверки в том виде, как они записаны в JSON-отчёт.")

    class Meta:
        verbose_name = "Результат проверки"
        verbose_name_plural = "Результаты проверок"
        ordering = ["run", "id"]

    def __str__(self) -> str:  # pragma: no cover
        return f"{self.name}: {'OK' if self.passed else 'FAIL'}"
