"""
Проверка инвариантных кривых над конечными полями.

Запуск:
  python manage.py curvelab run dgz-points --q 2
  python manage.py curvelab run pgu-pencil --n 2 --jobs 4 --out reports/pgu
  python manage.py curvelab run hemisystem --q 3 --lambda 2
  python manage.py curvelab catalog list
  python manage.py curvelab count --curve dgz --q 2 --ext 6 --out reports/dgz
  python manage.py curvelab count --curve pgu-pencil --n 2 --lambda g4^5 --ext 4
  python manage.py curvelab generators --group PGU3 --n 2

Код выхода ненулевой, если хотя бы одна проверка не прошла.
Значения по умолчанию берутся из настроек CURVELAB_* (см. .env).
"""
import json
from pathlib import Path

from django.conf import settings
from django.core.management.base import BaseCommand, CommandError

from curvelab import catalog, gf, reports
from curvelab.exceptions import CurvelabError, InvalidParameters, UnknownSuite
from curvelab.groups import GROUP_TAGS, GroupId, export_generators, generators_for
from curvelab.models import VerificationRun
from curvelab.suites import SUITE_IDS, SuiteParams, count_curve, run_suite


class Command(BaseCommand):
    help = "Строит кривые, пучки и группы и проверяет их свойства точной арифметикой в GF(p^k)."

    def add_arguments(self, parser):
        sub = parser.add_subparsers(dest="action", required=True)

        run = sub.add_parser("run", help="Выполнить набор проверок.")
        run.add_argument("suite", help=f"Набор: {', '.join(SUITE_IDS)}.")
        run.add_argument("--q", type=int, help="Порядок поля q (по умолчанию 2, для нечётных наборов 3).")
        run.add_argument("--n", type=int, help="n для эрмитовых кривых и PGU(3,n) (по умолчанию 2).")
        run.add_argument("--lambda", dest="lam", help="λ: sym, целое или g<k>^<i> (по умолчанию — как в наборе).")
        run.add_argument("--ext", type=int, help="Верхняя граница степени расширения m.")
        run.add_argument("--jobs", type=int, help="Число параллельных проверок.")
        run.add_argument("--out", help="Каталог для отчётов.")

        cat = sub.add_parser("catalog", help="Каталог кривых.")
        cat.add_argument("what", choices=["list"])

        count = sub.add_parser("count", help="Число точек кривой каталога над GF(q^m), m = 1..ext.")
        count.add_argument("--curve", required=True, choices=catalog.CATALOG_IDS)
        count.add_argument("--q", type=int)
        count.add_argument("--n", type=int)
        count.add_argument("--lambda", dest="lam")
        count.add_argument("--ext", type=int, default=1)
        count.add_argument("--jobs", type=int)
        count.add_argument("--out", help="Каталог для CSV с числами точек.")

        gen = sub.add_parser("generators", help="Порождающие группы в JSON.")
        gen.add_argument("--group", required=True, choices=GROUP_TAGS)
        gen.add_argument("--q", type=int)
        gen.add_argument("--n", type=int)

    def handle(self, *args, **options):
        gf.configure(
            max_order=settings.CURVELAB_MAX_FIELD_ORDER,
            modulus_table=settings.CURVELAB_MODULUS_TABLE or None,
        )
        handler = getattr(self, f"_handle_{options['action']}")
        try:
            handler(options)
        except (UnknownSuite, InvalidParameters) as e:
            raise CommandError(str(e))
        except CurvelabError as e:
            raise CommandError(f"{type(e).__name__}: {e}")

    # ── run ──

    def _handle_run(self, options):
        params = SuiteParams(
            q=options.get("q"),
            n=options.get("n"),
            lam=options.get("lam"),
            ext=options.get("ext"),
            closure_cap=settings.CURVELAB_CLOSURE_CAP,
            form_space_cap=settings.CURVELAB_FORM_SPACE_CAP,
            witness_cap=settings.CURVELAB_WITNESS_SEARCH_CAP,
            singular_ext=settings.CURVELAB_SINGULAR_EXT,
            dgz_ext=settings.CURVELAB_DGZ_EXT,
            max_order=settings.CURVELAB_MAX_FIELD_ORDER,
            modulus_table=settings.CURVELAB_MODULUS_TABLE or None,
        )
        jobs = options.get("jobs") or settings.CURVELAB_JOBS
        suite = run_suite(options["suite"], params, jobs=jobs)
        out_dir = Path(options.get("out") or Path(settings.CURVELAB_REPORT_DIR) / suite.suite)
        written = reports.write_reports(suite, out_dir)

        if settings.CURVELAB_PERSIST_RUNS:
            run = VerificationRun.record(suite, report_dir=str(out_dir))
            self.stdout.write(f"Прогон #{run.pk} сохранён.")

        for check in suite.checks:
            line = f"  {check.name}: {check.summary()}" if check.summary() else f"  {check.name}"
            if check.passed:
                self.stdout.write(self.style.SUCCESS("OK  ") + line)
            else:
                self.stdout.write(self.style.ERROR("FAIL") + line)
        self.stdout.write(f"Отчёты: {', '.join(str(p) for p in written.values())}")

        failed = len(suite.failed)
        if failed:
            raise CommandError(f"{suite.suite}: не прошли {failed} из {len(suite.checks)} проверок.")
        self.stdout.write(self.style.SUCCESS(f"{suite.suite}: все {len(suite.checks)} проверок прошли."))

    # ── catalog ──

    def _handle_catalog(self, options):
        for curve_id in catalog.CATALOG_IDS:
            marks = []
            if curve_id in catalog.PENCIL_IDS:
                marks.append("пучок")
            if curve_id in catalog.ODD_ONLY:
                marks.append("нечётное q")
            if curve_id in catalog.N_BASED:
                marks.append("параметр n")
            suffix = f" [{', '.join(marks)}]" if marks else ""
            self.stdout.write(f"{curve_id:<18} {catalog.DESCRIPTIONS[curve_id]}{suffix}")

    # ── count ──

    def _handle_count(self, options):
        if options["ext"] < 1:
            raise InvalidParameters("--ext должно быть ≥ 1")
        jobs = options.get("jobs") or settings.CURVELAB_JOBS
        rows = []
        for m in range(1, options["ext"] + 1):
            row = count_curve(
                options["curve"], m,
                q=options.get("q"), n=options.get("n"), lam=options.get("lam"), jobs=jobs,
            )
            rows.append(row)
            self.stdout.write(f"m={m}: {row['count']} ({row['elapsed_ms']} мс)")
        if options.get("out"):
            out = Path(options["out"])
            out.mkdir(parents=True, exist_ok=True)
            path = reports.write_counts_csv(rows, out / f"{options['curve']}-counts.csv")
            self.stdout.write(self.style.SUCCESS(f"CSV: {path}"))

    # ── generators ──

    def _handle_generators(self, options):
        tag = options["group"]
        if tag == "PGU3":
            if not options.get("n"):
                raise InvalidParameters("PGU3 требует --n")
            gid = GroupId.pgu(options["n"])
        else:
            if not options.get("q"):
                raise InvalidParameters(f"{tag} требует --q")
            gid = GroupId(tag, options["q"])
        data = export_generators(gid, generators_for(gid))
        self.stdout.write(json.dumps(data, ensure_ascii=False, indent=2))
