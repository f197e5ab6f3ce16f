"""Report rendering: text tables, CSV mirrors and metadata headers.

Text tables are the primary human artifact and mirror the published
table conventions: `6.2 *` for a significant cell, `**1.9 0.06**`
(bold-marked) for an insignificant one, and `2.1 (3.3) 0.04 (*)` when the
win-proportion test provides a significant fallback.  Every rendering is
byte-deterministic for fixed inputs, config and seed.
"""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass, fields
from pathlib import Path
from typing import Mapping, Sequence

from .agreement import AgreementResult
from .dataio import (
    Level,
    Manifest,
    QualityDirection,
    RunRecord,
    SizeClass,
)
from .hardness import HardnessTable, RNG_NAME
from .ordering import PartialOrder, to_dot
from .pairwise import ComparisonResult, MagnitudeResult, Measure
from .scaling import IncomparableReason, ScalingResult, Verdict

LEVEL_ORDER = (
    Level.STRIPS,
    Level.NUMERIC,
    Level.HARD_NUMERIC,
    Level.SIMPLE_TIME,
    Level.TIME,
    Level.COMPLEX,
)


class UnknownCell(ValueError):
    """The requested (domain, level, size class) cell does not exist."""


@dataclass
class ReportConfig:
    """Analysis parameters shared by every command.

    Defaults: pairwise orderings at 0.001 (supporting transitive claims
    at 0.05 over 15 comparisons), individual magnitude/agreement/scaling
    tests at 0.05, bootstrap of 10000 samples of 20 values with a
    thirty-minute cutoff.
    """

    alpha_pairwise: float = 0.001
    alpha_magnitude: float = 0.05
    alpha_agreement: float = 0.05
    alpha_scaling: float = 0.05
    bootstrap_B: int = 10_000
    bootstrap_m: int = 20
    cutoff_ms: int = 1_800_000
    seed: int = 3
    output_dir: Path = Path(".")

    def validate(self) -> None:
        for name in ("alpha_pairwise", "alpha_magnitude", "alpha_agreement", "alpha_scaling"):
            value = getattr(self, name)
            if not (0.0 < value < 0.5):
                raise ValueError(f"{name} must lie in (0, 0.5), got {value}")
        for name in ("bootstrap_B", "bootstrap_m", "cutoff_ms"):
            if getattr(self, name) <= 0:
                raise ValueError(f"{name} must be positive")
        if not (0 <= self.seed < 2**64):
            raise ValueError("seed must fit in 64 bits")


def load_config_file(path: str | Path, base: ReportConfig | None = None) -> ReportConfig:
    """Read ``key=value`` lines into a config; unknown keys are errors."""
    config = base or ReportConfig()
    field_types = {f.name: f.type for f in fields(ReportConfig)}
    with open(path, "r", encoding="utf-8") as fh:
        for line_no, raw in enumerate(fh, start=1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            if "=" not in line:
                raise ValueError(f"{path}:{line_no}: expected key=value, got {line!r}")
            key, _, value = line.partition("=")
            key = key.strip()
            value = value.strip()
            if key not in field_types:
                raise ValueError(f"{path}:{line_no}: unknown config key {key!r}")
            if key == "output_dir":
                setattr(config, key, Path(value))
            elif key.startswith("alpha"):
                setattr(config, key, float(value))
            else:
                setattr(config, key, int(value))
    config.validate()
    return config


def metadata_lines(
    config: ReportConfig,
    dataset_hash: str,
    command: str,
    extra: Mapping[str, str] | None = None,
    comment: str = "#",
) -> list[str]:
    """Auditability header embedded in every output file."""
    items: list[tuple[str, str]] = [("command", command)]
    if extra:
        items.extend(sorted(extra.items()))
    items.extend(
        [
            ("alpha_pairwise", repr(config.alpha_pairwise)),
            ("alpha_magnitude", repr(config.alpha_magnitude)),
            ("alpha_agreement", repr(config.alpha_agreement)),
            ("alpha_scaling", repr(config.alpha_scaling)),
            ("bootstrap_B", str(config.bootstrap_B)),
            ("bootstrap_m", str(config.bootstrap_m)),
            ("cutoff_ms", str(config.cutoff_ms)),
            ("seed", str(config.seed)),
            ("rng", RNG_NAME),
            ("dataset_sha256", dataset_hash),
        ]
    )
    return [f"{comment} {key}={value}" for key, value in items]


def fmt_stat(value: float) -> str:
    if math.isinf(value):
        return "inf" if value > 0 else "-inf"
    if abs(value) >= 10:
        return f"{value:.1f}"
    return f"{value:.2g}"


def fmt_p(p: float, alpha: float) -> str:
    if p <= alpha:
        return "*"
    if p < 0.01:
        return "< 0.01"
    return f"{p:.2f}"


def fmt_float(value: float) -> str:
    if math.isinf(value):
        return "inf" if value > 0 else "-inf"
    return f"{value:.10g}"


def comparison_cell(result: ComparisonResult, alpha: float) -> tuple[str, str]:
    """(pair title, cell text) with the favored planner named first."""
    favored = result.favored_planner
    if favored is None:
        title = f"{result.planner_a}-{result.planner_b}"
    else:
        title = f"{favored}-{result.other_planner}"
    w = result.wilcoxon
    if result.n == 0:
        return title, "no data"
    z_text = fmt_stat(w.z)
    p_text = fmt_p(w.p_two_sided, alpha)
    if w.p_two_sided <= alpha:
        cell = f"{z_text} *"
    else:
        prop = result.proportion
        if prop.n > 0 and prop.p_two_sided <= alpha:
            cell = (
                f"{z_text} ({fmt_stat(abs(prop.z))}) "
                f"{p_text} ({fmt_p(prop.p_two_sided, alpha)})"
            )
        else:
            cell = f"**{z_text} {p_text}**"
    if result.too_small:
        cell += " (too small)"
    return title, cell


def render_compare_text(
    alo: Sequence[ComparisonResult],
    dh: Sequence[ComparisonResult],
    magnitudes: Sequence[MagnitudeResult | None],
    alpha: float,
    alpha_magnitude: float,
) -> str:
    out = io.StringIO()

    def table(results: Sequence[ComparisonResult], caption: str) -> None:
        out.write(f"== {caption} ==\n")
        rows = [("pair", "result", "n")]
        for r in results:
            title, cell = comparison_cell(r, alpha)
            rows.append((title, cell, str(r.n)))
        widths = [max(len(row[i]) for row in rows) for i in range(3)]
        for row in rows:
            out.write("  ".join(cell.ljust(widths[i]) for i, cell in enumerate(row)).rstrip())
            out.write("\n")
        out.write(f"'*' indicates a result less than {alpha:g}; "
                  "bold (**) marks results not significant at that level;\n"
                  "bracketed values are the win-proportion fallback test.\n\n")

    table(alo, "consistency, problems solved by at least one")
    table(dh, "consistency, double hits only")

    out.write("== magnitude (normalized paired t, double hits) ==\n")
    rows = [("pair", "means", "t,df", "p")]
    for m in magnitudes:
        if m is None:
            continue
        t = m.t_result
        means = (
            f"{m.planner_a} {t.mean_first_norm:.2f} / {m.planner_b} {t.mean_second_norm:.2f}"
        )
        t_text = "inf" if math.isinf(t.t) else f"{t.t:.2f}"
        cell = f"{t_text},{t.df}"
        p_text = fmt_p(t.p_two_sided, alpha_magnitude)
        if t.p_two_sided > alpha_magnitude:
            cell = f"**{cell}**"
        if m.direction is QualityDirection.MAXIMIZE:
            means += " (maximize: larger mean is better)"
        rows.append((f"{m.planner_a}-{m.planner_b}", means, cell, p_text))
    widths = [max(len(row[i]) for row in rows) for i in range(4)]
    for row in rows:
        out.write("  ".join(cell.ljust(widths[i]) for i, cell in enumerate(row)).rstrip())
        out.write("\n")
    out.write(f"'*' indicates a result less than {alpha_magnitude:g}; a mean below 1 is the "
              "smaller-valued side.\n")
    return out.getvalue()


def comparisons_csv_rows(results: Sequence[ComparisonResult]) -> list[list[str]]:
    rows = [
        [
            "planner_a",
            "planner_b",
            "level",
            "measure",
            "mode",
            "size_class",
            "n",
            "wilcoxon_z",
            "wilcoxon_p",
            "favored",
            "prop_wins",
            "prop_n",
            "prop_z",
            "prop_p",
            "significant_at",
            "too_small",
        ]
    ]
    for r in results:
        rows.append(
            [
                r.planner_a,
                r.planner_b,
                r.level.value,
                r.measure.value,
                r.mode.value,
                r.size_class.value,
                str(r.n),
                fmt_float(r.wilcoxon.z),
                fmt_float(r.wilcoxon.p_two_sided),
                r.favored_planner or "",
                str(r.proportion.wins),
                str(r.proportion.n),
                fmt_float(r.proportion.z),
                fmt_float(r.proportion.p_two_sided),
                "" if r.significant_at is None else repr(r.significant_at),
                "1" if r.too_small else "0",
            ]
        )
    return rows


def magnitudes_csv_rows(results: Sequence[MagnitudeResult]) -> list[list[str]]:
    rows = [
        [
            "planner_a",
            "planner_b",
            "level",
            "measure",
            "size_class",
            "n",
            "mean_a_norm",
            "mean_b_norm",
            "t",
            "df",
            "p",
            "direction",
        ]
    ]
    for m in results:
        t = m.t_result
        rows.append(
            [
                m.planner_a,
                m.planner_b,
                m.level.value,
                m.measure.value,
                m.size_class.value,
                str(m.n),
                fmt_float(t.mean_first_norm),
                fmt_float(t.mean_second_norm),
                fmt_float(t.t),
                str(t.df),
                fmt_float(t.p_two_sided),
                m.direction.value,
            ]
        )
    return rows


def csv_text(rows: Sequence[Sequence[str]], header_lines: Sequence[str] = ()) -> str:
    out = io.StringIO()
    for line in header_lines:
        out.write(line + "\n")
    writer = csv.writer(out, lineterminator="\n")
    writer.writerows(rows)
    return out.getvalue()


def _levels_in(items, key) -> list[Level]:
    present = {key(item) for item in items}
    return [lv for lv in LEVEL_ORDER if lv in present]


def render_hardness_text(specific: HardnessTable, independent: HardnessTable) -> str:
    out = io.StringIO()
    verdicts = list(specific.verdicts) + list(independent.verdicts)
    domains = sorted({v.domain for v in verdicts})
    levels = _levels_in(verdicts, lambda v: v.level)

    def planners_per_level(table: HardnessTable) -> dict[Level, int]:
        counts: dict[Level, set[str]] = {}
        for v in table.verdicts:
            counts.setdefault(v.level, set()).add(v.planner)
        return {lv: len(names) for lv, names in counts.items()}

    out.write("== easy/hard counts per domain (easy/hard, n planners in brackets) ==\n")
    for table, caption in ((specific, "level-specific pools"), (independent, "level-independent pool")):
        out.write(f"-- {caption} --\n")
        per_level = planners_per_level(table)
        header = ["domain"] + [
            f"{lv.value} [{per_level.get(lv, 0)}]" for lv in levels
        ]
        rows = [header]
        counts = table.cell_counts()
        for domain in domains:
            row = [domain]
            for lv in levels:
                cell = counts.get((domain, lv))
                row.append("-" if cell is None else f"{cell[0]}/{cell[1]}")
            rows.append(row)
        widths = [max(len(r[i]) for r in rows) for i in range(len(header))]
        for row in rows:
            out.write("  ".join(c.ljust(widths[i]) for i, c in enumerate(row)).rstrip())
            out.write("\n")
        out.write("\n")

    out.write("== per-planner extremes (percentile <= 0.05 or >= 0.95) ==\n")
    for table, caption in ((specific, "level-specific pools"), (independent, "level-independent pool")):
        out.write(f"-- {caption} --\n")
        for planner in sorted({v.planner for v in table.verdicts}):
            easy = [
                v
                for v in table.verdicts
                if v.planner == planner and v.percentile <= 0.05
            ]
            hard = [
                v
                for v in table.verdicts
                if v.planner == planner and v.percentile >= 0.95
            ]
            if not easy and not hard:
                continue
            out.write(f"{planner}:\n")
            if easy:
                cells = ", ".join(
                    f"{v.domain}/{v.level.value} {v.percentile:.4g}"
                    for v in sorted(easy, key=lambda v: (v.domain, v.level.value))
                )
                out.write(f"  easy: {cells}\n")
            if hard:
                cells = ", ".join(
                    f"{v.domain}/{v.level.value} {v.percentile:.4g}"
                    for v in sorted(hard, key=lambda v: (v.domain, v.level.value))
                )
                out.write(f"  hard: {cells}\n")
        out.write("\n")
    return out.getvalue()


def hardness_csv_rows(tables: Sequence[HardnessTable]) -> list[list[str]]:
    rows = [
        [
            "planner",
            "domain",
            "level",
            "size_class",
            "pool",
            "area_ms",
            "percentile",
            "classification",
        ]
    ]
    for table in tables:
        for v in table.verdicts:
            rows.append(
                [
                    v.planner,
                    v.domain,
                    v.level.value,
                    v.size_class.value,
                    v.pool_kind.label,
                    fmt_float(v.area_ms),
                    fmt_float(v.percentile),
                    v.classification.value,
                ]
            )
    return rows


def render_agreement_text(results: Sequence[AgreementResult]) -> str:
    out = io.StringIO()
    for size in (SizeClass.SMALL, SizeClass.LARGE):
        subset = [r for r in results if r.size_class == size]
        if not subset:
            continue
        out.write(f"== agreement F-tests, {size.value} problems ==\n")
        domains = sorted({r.domain for r in subset})
        levels = _levels_in(subset, lambda r: r.level)
        header = ["domain"] + [lv.value for lv in levels]
        rows = [header]
        index = {(r.domain, r.level): r for r in subset}
        for domain in domains:
            row = [domain]
            for lv in levels:
                r = index.get((domain, lv))
                if r is None:
                    row.append("-")
                    continue
                f_text = "inf" if math.isinf(r.mrc.F) else f"{r.mrc.F:.3g}"
                cell = f"F({r.mrc.df[0]},{r.mrc.df[1]})={f_text}"
                if not r.significant:
                    cell = f"**{cell}**"
                row.append(cell)
            rows.append(row)
        widths = [max(len(r[i]) for r in rows) for i in range(len(header))]
        for row in rows:
            out.write("  ".join(c.ljust(widths[i]) for i, c in enumerate(row)).rstrip())
            out.write("\n")
        out.write("bold (**) marks cells without significant agreement.\n\n")
    return out.getvalue()


def agreement_csv_rows(results: Sequence[AgreementResult]) -> list[list[str]]:
    rows = [["domain", "level", "size_class", "F", "df1", "df2", "p", "significant", "judges"]]
    for r in results:
        rows.append(
            [
                r.domain,
                r.level.value,
                r.size_class.value,
                fmt_float(r.mrc.F),
                str(r.mrc.df[0]),
                str(r.mrc.df[1]),
                fmt_float(r.mrc.p),
                "1" if r.significant else "0",
                ";".join(r.judges),
            ]
        )
    return rows


def scaling_symbol(result: ScalingResult) -> str:
    if result.verdict is Verdict.INCOMPARABLE:
        return "x" if result.reason is IncomparableReason.NO_SHARED_TRACK else "o"
    if result.verdict is Verdict.NO_DIFFERENCE:
        return "0"
    return f"{abs(result.spearman.rho):.2f}"


def render_scaling_text(results: Sequence[ScalingResult], level: Level) -> str:
    out = io.StringIO()
    planners = sorted({r.planner_a for r in results} | {r.planner_b for r in results})
    out.write(f"== relative scaling at {level.value} "
              "(value in the better-scaling planner's row) ==\n")
    index = {}
    for r in results:
        index[(r.planner_a, r.planner_b)] = r
    header = [""] + planners
    rows = [header]
    for row_planner in planners:
        row = [row_planner]
        for col_planner in planners:
            if row_planner == col_planner:
                row.append(".")
                continue
            r = index.get((row_planner, col_planner)) or index.get((col_planner, row_planner))
            if r is None:
                row.append("-")
                continue
            symbol = scaling_symbol(r)
            if symbol in ("x", "o", "0"):
                # undirected marker: show in the upper triangle only
                row.append(symbol if row_planner < col_planner else "")
                continue
            winner = r.planner_a if r.verdict is Verdict.A_SCALES_BETTER else r.planner_b
            row.append(symbol if winner == row_planner else "")
        rows.append(row)
    widths = [max(len(r[i]) for r in rows) for i in range(len(header))]
    for row in rows:
        out.write("  ".join(c.ljust(widths[i]) for i, c in enumerate(row)).rstrip())
        out.write("\n")
    out.write("x: no shared track; o: insufficient agreement; 0: no significant difference.\n")
    return out.getvalue()


def scaling_csv_rows(results: Sequence[ScalingResult]) -> list[list[str]]:
    rows = [["planner_a", "planner_b", "level", "n", "rho_z", "p", "verdict", "domains"]]
    for r in results:
        rows.append(
            [
                r.planner_a,
                r.planner_b,
                r.level.value,
                str(r.n),
                "" if r.spearman is None else fmt_float(r.spearman.z),
                "" if r.spearman is None else fmt_float(r.spearman.p_two_sided),
                r.verdict.value if r.reason is None else f"incomparable:{r.reason.value}",
                ";".join(r.eligible_domains),
            ]
        )
    return rows


def series_csv(
    runs: Sequence[RunRecord],
    manifest: Manifest,
    domain: str,
    level: Level,
    measure: Measure,
    size_class: SizeClass = SizeClass.SMALL,
    header_lines: Sequence[str] = (),
) -> str:
    """Per-problem value series, one column per planner (empty = unsolved).

    Raises:
        UnknownCell: if the (domain, level, size class) cell has no set.
    """
    sets = manifest.sets_at(level=level, size_class=size_class, domain=domain)
    if not sets:
        raise UnknownCell(f"no {size_class.value} problem set for {domain}/{level.value}")
    (ps,) = sets
    cell_runs = [r for r in runs if r.domain == domain and r.level == level]
    planners = sorted({r.planner for r in cell_runs if r.problem in set(ps.problems)})
    index = {(r.planner, r.problem): r for r in cell_runs}

    def value(rec: RunRecord | None) -> str:
        if rec is None or not rec.solved:
            return ""
        if measure is Measure.SPEED:
            return str(rec.time_ms)
        field = {
            Measure.QUALITY_METRIC: rec.metric_value,
            Measure.QUALITY_SEQ: rec.seq_length,
            Measure.QUALITY_CONC: rec.conc_length,
        }[measure]
        return "" if field is None else fmt_float(float(field))

    direction = (
        ps.quality_direction.value if measure is Measure.QUALITY_METRIC else "minimize"
    )
    out = io.StringIO()
    for line in header_lines:
        out.write(line + "\n")
    out.write(f"# direction={direction}\n")
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(["problem"] + planners)
    for problem in ps.problems:
        writer.writerow([problem] + [value(index.get((p, problem))) for p in planners])
    return out.getvalue()


def dot_with_metadata(order: PartialOrder, header_lines: Sequence[str]) -> str:
    return "".join(line + "\n" for line in header_lines) + to_dot(order)
