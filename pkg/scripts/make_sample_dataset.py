#!/usr/bin/env python3
"""Regenerate the bundled synthetic dataset under data/sample/.

Three fully-automated planners (apex, bolt, crux) over two domains
(transport, warehouse) at two levels (strips, numeric), twenty problems
per set.  Times grow linearly with problem index with per-planner rank
perturbations so the planners agree imperfectly about difficulty; apex is
consistently fastest and crux fails the hardest four problems of every
set.  Fully deterministic: no RNG, byte-identical on every run.
"""

import json
from pathlib import Path

OUT = Path(__file__).resolve().parent.parent / "data" / "sample"

PLANNERS = ("apex", "bolt", "crux")
# time scale numerator/denominator per domain; kept close so planners
# classify the same way in both domains and the scaling gate opens
DOMAINS = {"transport": (1, 1), "warehouse": (21, 20)}
LEVELS = ("strips", "numeric")
N = 20

# per-planner swaps of adjacent difficulty indices (imperfect agreement)
SWAPS = {
    "apex": (),
    "bolt": ((1, 2), (7, 8), (13, 14)),
    "crux": ((3, 4), (9, 10), (15, 16)),
}
SPEED = {"apex": (50, 13), "bolt": (120, 31), "crux": (800, 57)}
CRUX_FAILS_FROM = 17


def perturbed(planner: str, i: int) -> int:
    for a, b in SWAPS[planner]:
        if i == a:
            return b
        if i == b:
            return a
    return i


def rows():
    for domain, (num, den) in DOMAINS.items():
        for level in LEVELS:
            for planner in PLANNERS:
                slope, offset = SPEED[planner]
                for i in range(1, N + 1):
                    problem = f"p{i:02d}"
                    if planner == "crux" and i >= CRUX_FAILS_FROM:
                        yield [planner, domain, level, problem, "0", "", "", "", ""]
                        continue
                    j = perturbed(planner, i)
                    time_ms = (slope * j + offset) * num // den
                    if level == "strips":
                        seq = {"apex": 20, "bolt": 22, "crux": 25}[planner] + i
                        conc = {"apex": 12, "bolt": 11, "crux": 18}[planner] + i
                        yield [planner, domain, level, problem, "1", str(time_ms), "", str(seq), str(conc)]
                    else:
                        metric = {"apex": 100, "bolt": 110, "crux": 130}[planner] + 3 * i
                        yield [planner, domain, level, problem, "1", str(time_ms), str(metric), "", ""]


def main():
    OUT.mkdir(parents=True, exist_ok=True)
    header = "planner,domain,level,problem,solved,time_ms,metric_value,seq_length,conc_length"
    lines = [header] + [",".join(r) for r in rows()]
    (OUT / "runs.csv").write_text("\n".join(lines) + "\n", encoding="utf-8")
    manifest = {
        "planners": [
            {"name": name, "category": "fully-automated", "levels": list(LEVELS)}
            for name in PLANNERS
        ],
        "problem_sets": [
            {
                "domain": domain,
                "level": level,
                "size_class": "small",
                "quality_direction": "minimize",
                "problems": [f"p{i:02d}" for i in range(1, N + 1)],
            }
            for domain in DOMAINS
            for level in LEVELS
        ],
    }
    (OUT / "manifest.json").write_text(json.dumps(manifest, indent=2) + "\n", encoding="utf-8")
    print(f"wrote {OUT}/runs.csv and {OUT}/manifest.json")


if __name__ == "__main__":
    main()
