"""Panel analysis against a reference entity, and report emitters.

:func:`analyze` runs preprocessing, regression and classification for each
non-reference entity of a panel.  The resulting :class:`Report` can be
written as a fixed-width text table, a delimited CSV table, JSON (lossless
round trip through :func:`load_report`) and one SVG figure per analyzed
entity.
"""

from __future__ import annotations

import csv
import io
import json
import math
import re
from dataclasses import asdict, dataclass, field
from pathlib import Path
from typing import Iterable, Mapping

from . import __version__
from .errors import DomainError, FitError, InputError
from .inference import ols_fit
from .plotting import render_fit_svg
from .timeseries import GrowthSeries, PairedSample, PreprocessConfig, pair_and_log, preprocess
from .typology import classify, render_relation

OUTPUT_FORMATS: tuple[str, ...] = ("text", "json", "svg", "csv")

SKIP_SHORT = "insufficient observations after preprocessing"
SKIP_DEGENERATE = "degenerate regressor (zero variance)"
SKIP_NO_OVERLAP = "no years in common with the reference"

DASH = "—"


@dataclass(frozen=True)
class AnalysisConfig:
    reference: str
    alpha: float = 0.05
    preprocess: PreprocessConfig = PreprocessConfig()
    output_formats: tuple[str, ...] = ("text",)
    output_dir: Path | None = None

    def __post_init__(self):
        if not 0 < self.alpha < 1:
            raise ValueError(f"alpha must lie in (0, 1), got {self.alpha}")
        unknown = set(self.output_formats) - set(OUTPUT_FORMATS)
        if unknown:
            raise ValueError(f"unknown output formats: {', '.join(sorted(unknown))}")

    def echo(self) -> dict:
        """The part of the configuration that determines the numbers."""
        return {
            "reference": self.reference,
            "alpha": self.alpha,
            "preprocess": self.preprocess.to_dict(),
        }


@dataclass(frozen=True)
class EntityRecord:
    entity: str
    status: str  # "analyzed" or "skipped"
    skip_reason: str | None = None
    n: int | None = None
    intercept: float | None = None
    se_intercept: float | None = None
    b_hat: float | None = None
    se: float | None = None
    r2: float | None = None
    r2_adj: float | None = None
    s: float | None = None
    f_stat: float | None = None
    f_p: float | None = None
    dw: float | None = None
    t_zero: float | None = None
    p_zero: float | None = None
    t_one: float | None = None
    p_one: float | None = None
    alternative_one: str | None = None
    verdict: str | None = None
    rationale: tuple[str, ...] = ()
    fitted_relation_text: str | None = None
    dropped_observations: tuple[tuple[int, str], ...] = ()
    pairs: tuple[tuple[int, float, float], ...] = ()

    @property
    def analyzed(self) -> bool:
        return self.status == "analyzed"

    @property
    def stars(self) -> str:
        if self.p_zero is None:
            return ""
        if self.p_zero <= 0.01:
            return "**"
        if self.p_zero <= 0.05:
            return "*"
        return ""


@dataclass(frozen=True)
class Report:
    version: str
    config: Mapping
    records: tuple[EntityRecord, ...] = field(default_factory=tuple)

    @property
    def all_skipped(self) -> bool:
        return not any(r.analyzed for r in self.records)


# -- analysis ----------------------------------------------------------------

def _skipped(entity: str, reason: str, dropped=()) -> EntityRecord:
    return EntityRecord(entity=entity, status="skipped", skip_reason=reason,
                        dropped_observations=tuple(dropped))


def _prepare(series: GrowthSeries, config: PreprocessConfig) -> GrowthSeries | str:
    """Smoothed rate series, or the skip reason when that is impossible."""
    if config.rebase_year is not None and config.rebase_year not in series.years:
        return f"rebase year {config.rebase_year} not observed"
    try:
        return preprocess(series, config)
    except DomainError as exc:
        return f"preprocessing failed: {exc}"
    except ValueError:
        return SKIP_SHORT


def analyze_entity(
    target: GrowthSeries,
    reference_rates: GrowthSeries,
    config: AnalysisConfig,
) -> EntityRecord:
    rates = _prepare(target, config.preprocess)
    if isinstance(rates, str):
        return _skipped(target.entity, rates)
    try:
        pairs = pair_and_log(rates, reference_rates)
    except ValueError:
        return _skipped(target.entity, SKIP_NO_OVERLAP)
    if len(pairs) < 3:
        return _skipped(target.entity, SKIP_SHORT, pairs.dropped)
    try:
        fit = ols_fit(pairs)
    except FitError:
        return _skipped(target.entity, SKIP_DEGENERATE, pairs.dropped)
    verdict = classify(fit, config.alpha)
    t0, t1 = verdict.test_vs_zero, verdict.test_vs_one
    return EntityRecord(
        entity=target.entity,
        status="analyzed",
        n=fit.n,
        intercept=fit.intercept,
        se_intercept=fit.se_intercept,
        b_hat=fit.slope,
        se=fit.se_slope,
        r2=fit.r2,
        r2_adj=fit.r2_adj,
        s=fit.s,
        f_stat=fit.f_stat,
        f_p=fit.f_p,
        dw=fit.dw,
        t_zero=t0.t_stat,
        p_zero=t0.p_value,
        t_one=t1.t_stat,
        p_one=t1.p_value,
        alternative_one=t1.alternative,
        verdict=verdict.label.value,
        rationale=verdict.rationale,
        fitted_relation_text=render_relation(fit, target.entity, config.reference),
        dropped_observations=pairs.dropped,
        pairs=pairs.pairs,
    )


def analyze(panel: Mapping[str, GrowthSeries], config: AnalysisConfig) -> Report:
    """Analyze every non-reference entity of ``panel`` against the reference.

    Entities that cannot be analyzed appear in the report with a
    ``skip_reason``.  Records are ordered by entity name.
    """
    if config.reference not in panel:
        raise InputError(f"reference entity {config.reference!r} not found in panel")
    ref_rates = _prepare(panel[config.reference], config.preprocess)
    records = []
    for entity in sorted(panel):
        if entity == config.reference:
            continue
        if isinstance(ref_rates, str):
            records.append(_skipped(entity, ref_rates))
        else:
            records.append(analyze_entity(panel[entity], ref_rates, config))
    return Report(__version__, config.echo(), tuple(records))


# -- text and csv --------------------------------------------------------------

def _bse(rec: EntityRecord) -> str:
    return f"{rec.b_hat:.3f}{rec.stars} ({rec.se:.3f})"


def emit_text(report: Report) -> str:
    """Fixed-width table: Entity | B (SE) | Typology | R2 adj.

    Stars after the estimate mark the B = 0 test: ``*`` at 5%, ``**`` at 1%.
    """
    header = ("Entity", "B (SE)", "Typology", "R2 adj")
    rows = []
    for rec in report.records:
        if rec.analyzed:
            rows.append((rec.entity, _bse(rec), rec.verdict, f"{rec.r2_adj:.3f}"))
        else:
            rows.append((rec.entity, DASH, f"skipped: {rec.skip_reason}", DASH))
    widths = [max(len(r[i]) for r in [header, *rows]) for i in range(3)]

    def line(cells):
        return "  ".join(c.ljust(w) for c, w in zip(cells[:3], widths)) + "  " + cells[3]

    out = [line(header), "  ".join("-" * w for w in widths) + "  " + "-" * len(header[3])]
    out.extend(line(r).rstrip() for r in rows)
    return "\n".join(out) + "\n"


CSV_COLUMNS = (
    "entity", "status", "skip_reason", "n", "intercept", "se_intercept", "b_hat", "se",
    "r2", "r2_adj", "s", "f_stat", "f_p", "dw", "t_zero", "p_zero", "t_one", "p_one",
    "alternative_one", "verdict", "fitted_relation_text", "n_dropped",
)


def emit_csv(report: Report) -> str:
    """One delimited row per record; floats in shortest round-trip form."""
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_COLUMNS)
    for rec in report.records:
        d = asdict(rec)
        d["n_dropped"] = len(rec.dropped_observations)
        w.writerow("" if d[c] is None else _csv_cell(d[c]) for c in CSV_COLUMNS)
    return buf.getvalue()


def _csv_cell(v):
    return repr(v) if isinstance(v, float) else v


# -- json ------------------------------------------------------------------------

_FLOAT_SENTINELS = {"inf": math.inf, "-inf": -math.inf, "nan": math.nan}


def _encode(v):
    if isinstance(v, float) and not math.isfinite(v):
        return "nan" if math.isnan(v) else ("inf" if v > 0 else "-inf")
    if isinstance(v, dict):
        return {k: _encode(x) for k, x in v.items()}
    if isinstance(v, (list, tuple)):
        return [_encode(x) for x in v]
    return v


def report_to_dict(report: Report) -> dict:
    return _encode({
        "version": report.version,
        "config": dict(report.config),
        "records": [asdict(r) for r in report.records],
    })


_FLOAT_FIELDS = (
    "intercept", "se_intercept", "b_hat", "se", "r2", "r2_adj", "s",
    "f_stat", "f_p", "dw", "t_zero", "p_zero", "t_one", "p_one",
)


def _record_from_dict(d: dict) -> EntityRecord:
    kw = dict(d)
    for name in _FLOAT_FIELDS:
        v = kw.get(name)
        if isinstance(v, str):
            kw[name] = _FLOAT_SENTINELS[v]
    kw["rationale"] = tuple(kw.get("rationale", ()))
    kw["dropped_observations"] = tuple((int(y), str(r)) for y, r in kw.get("dropped_observations", ()))
    kw["pairs"] = tuple((int(y), float(a), float(b)) for y, a, b in kw.get("pairs", ()))
    return EntityRecord(**kw)


def report_from_dict(d: dict) -> Report:
    return Report(
        version=d["version"],
        config=d["config"],
        records=tuple(_record_from_dict(r) for r in d["records"]),
    )


def dumps_report(report: Report) -> str:
    """JSON text; keys sorted, floats as shortest round-trip repr (17 digits max)."""
    return json.dumps(report_to_dict(report), indent=2, sort_keys=True, ensure_ascii=False) + "\n"


def emit_json(report: Report, path: str | Path) -> Path:
    path = Path(path)
    try:
        path.write_text(dumps_report(report), encoding="utf-8")
    except OSError as exc:
        raise InputError(f"cannot write {path}: {exc.strerror}") from None
    return path


def load_report(path: str | Path) -> Report:
    return report_from_dict(json.loads(Path(path).read_text(encoding="utf-8")))


# -- svg -----------------------------------------------------------------------

def emit_svg(record: EntityRecord, pairs: PairedSample | Iterable | None, path: str | Path) -> Path:
    """Scatter of (ln x, ln y) with the fitted and the slope-1 line."""
    if not record.analyzed:
        raise ValueError(f"{record.entity} was skipped ({record.skip_reason}); nothing to plot")
    triples = pairs.pairs if isinstance(pairs, PairedSample) else tuple(pairs if pairs is not None else record.pairs)
    reference = pairs.reference_entity if isinstance(pairs, PairedSample) else "reference"
    caption = record.fitted_relation_text or ""
    path = Path(path)
    try:
        return render_fit_svg(
            [p[2] for p in triples],
            [p[1] for p in triples],
            record.intercept,
            record.b_hat,
            path,
            target=record.entity,
            reference=reference,
            caption=caption,
        )
    except OSError as exc:
        raise InputError(f"cannot write {path}: {exc.strerror}") from None


def slugify(label: str) -> str:
    slug = re.sub(r"[^A-Za-z0-9]+", "_", label).strip("_")
    return slug or "entity"


def write_outputs(report: Report, out_dir: str | Path, formats: Iterable[str]) -> list[Path]:
    """Write the requested formats into ``out_dir``; return the paths."""
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    formats = set(formats)
    written = []
    if "text" in formats:
        p = out_dir / "report.txt"
        p.write_text(emit_text(report), encoding="utf-8")
        written.append(p)
    if "csv" in formats:
        p = out_dir / "report.csv"
        p.write_text(emit_csv(report), encoding="utf-8")
        written.append(p)
    if "json" in formats:
        written.append(emit_json(report, out_dir / "report.json"))
    if "svg" in formats:
        reference = report.config.get("reference", "reference")
        used: set[str] = set()
        for rec in report.records:
            if not rec.analyzed:
                continue
            slug = base = slugify(rec.entity)
            k = 1
            while slug in used:
                k += 1
                slug = f"{base}_{k}"
            used.add(slug)
            sample = PairedSample(rec.entity, reference, rec.pairs, rec.dropped_observations)
            written.append(emit_svg(rec, sample, out_dir / f"{slug}.svg"))
    return written
