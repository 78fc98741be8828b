"""Файлы отчётов: JSON (schema 1), CSV по проверкам, CSV с числами точек и XLSX."""

from __future__ import annotations

import csv
import json
import logging
from pathlib import Path
from typing import Iterable

from openpyxl import Workbook

from .suites import VerificationSuite

logger = logging.getLogger(__name__)

CHECK_COLUMNS = ["name", "passed", "elapsed_ms", "summary"]
COUNT_COLUMNS = ["curve_id", "q", "m", "count", "elapsed_ms"]


def _default(value):
    # FieldElement, PointPG2 и прочее — по repr
    return repr(value)


def write_json(suite: VerificationSuite, path: Path) -> Path:
    path.write_text(json.dumps(suite.to_json(), ensure_ascii=False, indent=2, default=_default), encoding="utf-8")
    return path


def write_checks_csv(suite: VerificationSuite, path: Path) -> Path:
    with path.open("w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(CHECK_COLUMNS)
        for check in suite.checks:
            writer.writerow([check.name, "true" if check.passed else "false", check.elapsed_ms, check.summary()])
    return path


def write_counts_csv(rows: Iterable[dict], path: Path) -> Path:
    with path.open("w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(COUNT_COLUMNS)
        for row in rows:
            writer.writerow([row.get(col, "") for col in COUNT_COLUMNS])
    return path


def write_xlsx(suite: VerificationSuite, path: Path) -> Path:
    wb = Workbook()
    ws = wb.active
    ws.title = "checks"
    ws.append(["Проверка", "Результат", "Время, мс", "Итог"])
    for check in suite.checks:
        ws.append([check.name, "OK" if check.passed else "FAIL", check.elapsed_ms, check.summary()])
    widths = [32, 10, 12, 80]
    for i, w in enumerate(widths, start=1):
        ws.column_dimensions[chr(64 + i)].width = w

    params = wb.create_sheet("params")
    params.append(["Параметр", "Значение"])
    params.append(["suite", suite.suite])
    for key, value in suite.params.items():
        params.append([key, str(value)])
    params.append([])
    params.append(["p", "k", "modulus"])
    for info in suite.fields:
        params.append([info["p"], info["k"], " ".join(str(c) for c in info["modulus"])])
    params.column_dimensions["A"].width = 18
    params.column_dimensions["B"].width = 30

    wb.save(path)
    return path


def write_reports(suite: VerificationSuite, out_dir: str | Path) -> dict[str, Path]:
    """Все отчёты набора в out_dir: <suite>.json, <suite>.csv, <suite>.xlsx (+ <suite>-counts.csv)."""
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    stem = suite.suite
    written = {
        "json": write_json(suite, out / f"{stem}.json"),
        "csv": write_checks_csv(suite, out / f"{stem}.csv"),
        "xlsx": write_xlsx(suite, out / f"{stem}.xlsx"),
    }
    counts = suite.point_counts()
    if counts:
        written["counts"] = write_counts_csv(counts, out / f"{stem}-counts.csv")
    logger.info("Отчёты %s записаны в %s", stem, out)
    return written
