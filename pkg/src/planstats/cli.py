"""Command-line front end.

Subcommands: validate, compare, order, hardness, agreement, scaling,
series.  Every command reads a runs CSV plus a manifest JSON, writes its
tables/graphs into the output directory with an embedded metadata header,
and echoes the main table to stdout.

Exit codes: 0 success, 2 input validation failure (diagnostics on
stderr), 3 degenerate-statistics warning escalated by --strict.
"""

from __future__ import annotations

import argparse
import hashlib
import sys
import warnings
from pathlib import Path

from . import agreement as agreement_mod
from . import hardness as hardness_mod
from . import scaling as scaling_mod
from .dataio import (
    Category,
    DataError,
    Level,
    Manifest,
    SizeClass,
    load_manifest,
    load_runs,
    validate_dataset,
)
from .ordering import build_order, transitive_reduction
from .pairwise import (
    Measure,
    PairingMode,
    all_pairs,
    compare,
    magnitude,
)
from .report import (
    ReportConfig,
    UnknownCell,
    agreement_csv_rows,
    comparisons_csv_rows,
    csv_text,
    dot_with_metadata,
    load_config_file,
    magnitudes_csv_rows,
    hardness_csv_rows,
    metadata_lines,
    render_agreement_text,
    render_compare_text,
    render_hardness_text,
    render_scaling_text,
    scaling_csv_rows,
    series_csv,
)
from .stattests import DegenerateStatisticWarning, NonPositiveValue, TooFewPairs

MEASURES = {
    "speed": Measure.SPEED,
    "metric": Measure.QUALITY_METRIC,
    "seq": Measure.QUALITY_SEQ,
    "conc": Measure.QUALITY_CONC,
}
CATEGORIES = {"auto": Category.FULLY_AUTOMATED, "hand": Category.HAND_CODED}
SIZES = {"small": SizeClass.SMALL, "large": SizeClass.LARGE}


def _build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--runs", required=True, help="runs CSV file")
    common.add_argument("--manifest", required=True, help="manifest JSON file")
    common.add_argument("--config", help="key=value config file")
    common.add_argument("--level", choices=[lv.value for lv in Level], help="restrict to one level")
    common.add_argument("--measure", choices=sorted(MEASURES),
                        help="default: speed plus the level's quality channels")
    common.add_argument("--category", choices=sorted(CATEGORIES), default="auto")
    common.add_argument("--size", choices=sorted(SIZES), help="problem size class")
    common.add_argument("--alpha", type=float, help="significance level for this command")
    common.add_argument("--seed", type=int, help="bootstrap seed")
    common.add_argument("--out", help="output directory (default: current)")
    common.add_argument("--reduce", action="store_true", help="transitive reduction of orders")
    common.add_argument("--cross", action="store_true", help="compare across planner categories")
    common.add_argument("--strict", action="store_true",
                        help="exit 3 when degenerate statistics occur")
    common.add_argument("--workers", type=int, default=1, help="bootstrap worker threads")

    parser = argparse.ArgumentParser(
        prog="planstats",
        description="Statistical comparison toolkit for planner competition run data.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("validate", parents=[common], help="check dataset consistency")
    sub.add_parser("compare", parents=[common], help="pairwise consistency and magnitude tables")
    sub.add_parser("order", parents=[common], help="partial-order DOT graphs")
    sub.add_parser("hardness", parents=[common], help="bootstrap easy/hard tables")
    sub.add_parser("agreement", parents=[common], help="multi-judge agreement grid")
    sub.add_parser("scaling", parents=[common], help="relative scaling matrices")
    series = sub.add_parser("series", parents=[common], help="per-problem value series CSV")
    series.add_argument("--domain", required=True, help="domain of the series cell")
    return parser


def _make_config(args: argparse.Namespace) -> ReportConfig:
    config = ReportConfig()
    if args.config:
        config = load_config_file(args.config, config)
    if args.seed is not None:
        config.seed = args.seed
    if args.out is not None:
        config.output_dir = Path(args.out)
    if args.alpha is not None:
        if args.command in ("compare", "order"):
            config.alpha_pairwise = args.alpha
        elif args.command == "agreement":
            config.alpha_agreement = args.alpha
        elif args.command == "scaling":
            config.alpha_scaling = args.alpha
        else:
            config.alpha_pairwise = args.alpha
    config.validate()
    return config


def _dataset_hash(runs_path: str, manifest_path: str) -> str:
    digest = hashlib.sha256()
    for path in (runs_path, manifest_path):
        digest.update(Path(path).read_bytes())
    return digest.hexdigest()


def _write(config: ReportConfig, name: str, text: str) -> Path:
    config.output_dir.mkdir(parents=True, exist_ok=True)
    path = config.output_dir / name
    path.write_text(text, encoding="utf-8")
    return path


def _levels_for(
    args, manifest: Manifest, category: Category, cross: bool = False
) -> list[Level]:
    if args.level:
        return [Level.parse(args.level)]
    levels = []
    for lv in manifest.levels():
        if len(_pair_names(manifest, category, lv, cross)) >= 2:
            levels.append(lv)
    return levels


def _sizes_for(args, category: Category) -> list[SizeClass]:
    if args.size:
        return [SIZES[args.size]]
    # hand-coded planners face both the small and the large collections
    if category is Category.HAND_CODED:
        return [SizeClass.SMALL, SizeClass.LARGE]
    return [SizeClass.SMALL]


def _pair_names(manifest: Manifest, category: Category, level: Level, cross: bool) -> list[str]:
    if cross:
        return sorted(p.name for p in manifest.planners if level in p.levels_entered)
    return sorted(p.name for p in manifest.planners_in(category, level))


def _measures_for(args, level: Level) -> list[Measure]:
    if args.measure:
        return [MEASURES[args.measure]]
    # quality channel defaults: plan lengths for strips, the problem
    # metric elsewhere
    if level is Level.STRIPS:
        return [Measure.SPEED, Measure.QUALITY_SEQ, Measure.QUALITY_CONC]
    return [Measure.SPEED, Measure.QUALITY_METRIC]


def _pair_results(runs, manifest, names, level, measure, size):
    alo, dh, mags = [], [], []
    for a, b in all_pairs(names):
        alo.append(compare(runs, manifest, a, b, level, measure, PairingMode.AT_LEAST_ONE, size))
        dh.append(compare(runs, manifest, a, b, level, measure, PairingMode.DOUBLE_HITS, size))
        try:
            mags.append(magnitude(runs, manifest, a, b, level, measure, size))
        except (TooFewPairs, NonPositiveValue):
            mags.append(None)
    return alo, dh, mags


def cmd_validate(args, config, runs, manifest, diagnostics, dataset_hash) -> int:
    for d in diagnostics:
        stream = sys.stderr if d.severity == "error" else sys.stdout
        print(f"{d.severity.upper()} {d.kind}: {d.message}", file=stream)
    errors = [d for d in diagnostics if d.severity == "error"]
    print(f"validate: {len(errors)} errors, {len(diagnostics) - len(errors)} notes")
    return 2 if errors else 0


def cmd_compare(args, config, runs, manifest, diagnostics, dataset_hash) -> int:
    category = CATEGORIES[args.category]
    suffix = "cross" if args.cross else args.category
    for level in _levels_for(args, manifest, category, args.cross):
        for size in _sizes_for(args, category):
            names = _pair_names(manifest, category, level, args.cross)
            if len(names) < 2 or not manifest.sets_at(level=level, size_class=size):
                continue
            for measure in _measures_for(args, level):
                alo, dh, mags = _pair_results(runs, manifest, names, level, measure, size)
                extra = {
                    "category": suffix,
                    "level": level.value,
                    "measure": measure.value,
                    "size": size.value,
                }
                header = metadata_lines(config, dataset_hash, "compare", extra)
                text = render_compare_text(
                    alo, dh, mags, config.alpha_pairwise, config.alpha_magnitude
                )
                stem = f"compare_{suffix}_{level.value}_{measure.value}_{size.value}"
                _write(config, f"{stem}.txt", "\n".join(header) + "\n\n" + text)
                _write(config, f"{stem}.csv", csv_text(comparisons_csv_rows(alo + dh), header))
                _write(
                    config,
                    f"magnitude_{suffix}_{level.value}_{measure.value}_{size.value}.csv",
                    csv_text(magnitudes_csv_rows([m for m in mags if m is not None]), header),
                )
                print(f"-- {level.value}/{measure.value}/{size.value} --")
                print(text)
    return 0


def cmd_order(args, config, runs, manifest, diagnostics, dataset_hash) -> int:
    category = CATEGORIES[args.category]
    suffix = "cross" if args.cross else args.category
    for level in _levels_for(args, manifest, category, args.cross):
        for size in _sizes_for(args, category):
            names = _pair_names(manifest, category, level, args.cross)
            if len(names) < 2 or not manifest.sets_at(level=level, size_class=size):
                continue
            for measure in _measures_for(args, level):
                alo, dh, _ = _pair_results(runs, manifest, names, level, measure, size)
                order = build_order(alo + dh, alpha=config.alpha_pairwise)
                if args.reduce:
                    order = transitive_reduction(order)
                extra = {
                    "category": suffix,
                    "level": level.value,
                    "measure": measure.value,
                    "size": size.value,
                }
                header = metadata_lines(config, dataset_hash, "order", extra, comment="//")
                stem = f"order_{suffix}_{level.value}_{measure.value}_{size.value}"
                path = _write(config, f"{stem}.dot", dot_with_metadata(order, header))
                print(f"wrote {path} ({len(order.edges)} edges)")
    return 0


def cmd_hardness(args, config, runs, manifest, diagnostics, dataset_hash) -> int:
    category = CATEGORIES[args.category]
    for size in _sizes_for(args, category):
        tables = {}
        for level_specific in (True, False):
            tables[level_specific] = hardness_mod.hardness_table(
                runs,
                manifest,
                category,
                level_specific_pools=level_specific,
                size_class=size,
                B=config.bootstrap_B,
                m=config.bootstrap_m,
                cutoff_ms=config.cutoff_ms,
                seed=config.seed,
                workers=args.workers,
            )
        extra = {"category": args.category, "size": size.value}
        header = metadata_lines(config, dataset_hash, "hardness", extra)
        text = render_hardness_text(tables[True], tables[False])
        _write(config, f"hardness_{args.category}_{size.value}.txt",
               "\n".join(header) + "\n\n" + text)
        _write(
            config,
            f"hardness_{args.category}_{size.value}.csv",
            csv_text(hardness_csv_rows([tables[True], tables[False]]), header),
        )
        print(f"-- {size.value} problems --")
        print(text)
    return 0


def cmd_agreement(args, config, runs, manifest, diagnostics, dataset_hash) -> int:
    category = CATEGORIES[args.category]
    results = agreement_mod.agreement_table(runs, manifest, category, config.alpha_agreement)
    if args.size:
        results = [r for r in results if r.size_class is SIZES[args.size]]
    if args.level:
        results = [r for r in results if r.level is Level.parse(args.level)]
    extra = {"category": args.category}
    header = metadata_lines(config, dataset_hash, "agreement", extra)
    text = render_agreement_text(results)
    _write(config, f"agreement_{args.category}.txt", "\n".join(header) + "\n\n" + text)
    _write(config, f"agreement_{args.category}.csv", csv_text(agreement_csv_rows(results), header))
    print(text)
    return 0


def cmd_scaling(args, config, runs, manifest, diagnostics, dataset_hash) -> int:
    category = CATEGORIES[args.category]
    for size in _sizes_for(args, category):
        table = hardness_mod.hardness_table(
            runs,
            manifest,
            category,
            level_specific_pools=True,
            size_class=size,
            B=config.bootstrap_B,
            m=config.bootstrap_m,
            cutoff_ms=config.cutoff_ms,
            seed=config.seed,
            workers=args.workers,
        )
        for level in _levels_for(args, manifest, category):
            verdicts = table.by_planner(level)
            names = sorted(p.name for p in manifest.planners_in(category, level))
            if len(names) < 2:
                continue
            results = [
                scaling_mod.scaling_comparison(
                    runs,
                    manifest,
                    a,
                    b,
                    level,
                    verdicts,
                    category,
                    size_class=size,
                    cutoff_ms=config.cutoff_ms,
                    alpha=config.alpha_scaling,
                )
                for a, b in all_pairs(names)
            ]
            extra = {"category": args.category, "level": level.value, "size": size.value}
            header = metadata_lines(config, dataset_hash, "scaling", extra)
            text = render_scaling_text(results, level)
            stem = f"scaling_{args.category}_{level.value}_{size.value}"
            _write(config, f"{stem}.txt", "\n".join(header) + "\n\n" + text)
            _write(config, f"{stem}.csv", csv_text(scaling_csv_rows(results), header))
            print(text)
    return 0


def cmd_series(args, config, runs, manifest, diagnostics, dataset_hash) -> int:
    measure = MEASURES[args.measure or "speed"]
    if not args.level:
        print("series: --level is required", file=sys.stderr)
        return 2
    level = Level.parse(args.level)
    size = SIZES[args.size] if args.size else SizeClass.SMALL
    extra = {
        "domain": args.domain,
        "level": level.value,
        "measure": measure.value,
        "size": size.value,
    }
    header = metadata_lines(config, dataset_hash, "series", extra)
    try:
        text = series_csv(runs, manifest, args.domain, level, measure, size, header)
    except UnknownCell as exc:
        print(f"series: {exc}", file=sys.stderr)
        return 2
    path = _write(config, f"series_{args.domain}_{level.value}_{measure.value}_{size.value}.csv", text)
    print(f"wrote {path}")
    return 0


_COMMANDS = {
    "validate": cmd_validate,
    "compare": cmd_compare,
    "order": cmd_order,
    "hardness": cmd_hardness,
    "agreement": cmd_agreement,
    "scaling": cmd_scaling,
    "series": cmd_series,
}


def main(argv: list[str] | None = None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        config = _make_config(args)
    except (ValueError, OSError) as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2
    try:
        runs = load_runs(args.runs)
        manifest = load_manifest(args.manifest)
    except (DataError, OSError) as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return 2
    diagnostics = validate_dataset(runs, manifest)
    errors = [d for d in diagnostics if d.severity == "error"]
    if errors and args.command != "validate":
        for d in errors:
            print(f"ERROR {d.kind}: {d.message}", file=sys.stderr)
        return 2
    dataset_hash = _dataset_hash(args.runs, args.manifest)
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        rc = _COMMANDS[args.command](args, config, runs, manifest, diagnostics, dataset_hash)
    degenerate = [w for w in caught if issubclass(w.category, DegenerateStatisticWarning)]
    if degenerate:
        print(f"note: {len(degenerate)} degenerate statistic(s) encountered", file=sys.stderr)
        if args.strict and rc == 0:
            return 3
    return rc


if __name__ == "__main__":
    sys.exit(main())
