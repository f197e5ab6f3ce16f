import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).parent))

from planstats.dataio import Level, RunRecord, parse_manifest


def run(planner, domain, level, problem, time_ms=None, metric=None, seq=None, conc=None):
    """RunRecord shorthand: solved is inferred from time_ms presence."""
    if isinstance(level, str):
        level = Level.parse(level)
    return RunRecord(
        planner=planner,
        domain=domain,
        level=level,
        problem=problem,
        solved=time_ms is not None,
        time_ms=time_ms,
        metric_value=metric,
        seq_length=seq,
        conc_length=conc,
    )


def pset(domain, level, n=20, direction="minimize", size="small", prefix="p"):
    return {
        "domain": domain,
        "level": level,
        "size_class": size,
        "quality_direction": direction,
        "problems": [f"{prefix}{i:02d}" for i in range(1, n + 1)],
    }


def simple_manifest(planner_levels, problem_sets, category="fully-automated"):
    """Manifest from {planner: [level, ...]} plus pset() dicts."""
    doc = {
        "planners": [
            {"name": name, "category": category, "levels": levels}
            for name, levels in planner_levels.items()
        ],
        "problem_sets": problem_sets,
    }
    return parse_manifest(doc)
