from __future__ import annotations

from django.contrib import admin

from . import models


class CheckRecordInline(admin.TabularInline):
    model = models.CheckRecord
    extra = 0
    fields = ("name", "passed", "elapsed_ms")
    readonly_fields = fields
    can_delete = False


@admin.register(models.VerificationRun)
class VerificationRunAdmin(admin.ModelAdmin):
    list_display = ("suite", "status", "checks_total", "checks_failed", "report_dir", "created_at")
    list_filter = ("suite", "status")
    search_fields = ("suite", "report_dir")
    readonly_fields = ("params", "fields", "created_at", "updated_at")
    inlines = (CheckRecordInline,)


@admin.register(models.CheckRecord)
class CheckRecordAdmin(admin.ModelAdmin):
    list_display = ("name", "run", "passed", "elapsed_ms")
    list_filter = ("passed", "run__suite")
    search_fields = ("name",)
