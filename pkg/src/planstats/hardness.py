"""Bootstrap-based problem-difficulty analysis.

A planner's difficulty in a (domain, level) cell is the area under the
problems-left-to-solve-versus-time curve, clamped at a cutoff (unsolved
problems pay the full cutoff).  The area is compared against a bootstrap
distribution of areas resampled from the pool of timings at the same
level (level-specific) or across all levels (level-independent); areas in
the bottom/top 2.5% tails classify the cell as significantly Easy/Hard.

Determinism contract: every bootstrap sample draws from its own Philox
stream keyed (seed, sample index), so results are bit-identical for any
worker count.
"""

from __future__ import annotations

import enum
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .dataio import Category, Level, Manifest, RunRecord, SizeClass
from .ranking import EmptyInput

DEFAULT_CUTOFF_MS = 30 * 60 * 1000  # thirty minutes
DEFAULT_B = 10_000
DEFAULT_M = 20
EASY_TAIL = 0.025
HARD_TAIL = 0.975
RNG_NAME = "numpy-philox (key = seed, sample-index)"

_UINT64_MASK = (1 << 64) - 1


class EmptyPool(ValueError):
    """No timings available for the requested pool."""


class SampleSizeMismatch(ValueError):
    """Subject cannot be compared against the distribution."""


class Classification(enum.Enum):
    EASY = "easy"
    HARD = "hard"
    NEITHER = "neither"


@dataclass(frozen=True)
class PoolKind:
    """Bootstrap pool scope: a specific level, or all levels pooled."""

    level: Level | None = None

    @property
    def is_level_specific(self) -> bool:
        return self.level is not None

    @property
    def label(self) -> str:
        return self.level.value if self.level is not None else "independent"


LEVEL_INDEPENDENT = PoolKind(None)


def level_specific(level: Level) -> PoolKind:
    return PoolKind(level)


@dataclass(frozen=True)
class DifficultyArea:
    """Area under the problems-left-to-solve curve for one subject."""

    planner: str
    domain: str
    level: Level
    size_class: SizeClass
    area_ms: float
    n_problems: int
    cutoff_ms: int


@dataclass(frozen=True)
class BootstrapDistribution:
    """B resampled areas of m cutoff-clamped timings each."""

    pool_kind: PoolKind
    category: Category
    size_class: SizeClass
    samples: tuple[float, ...]
    B: int
    m: int
    cutoff_ms: int
    seed: int
    rng: str = RNG_NAME


@dataclass(frozen=True)
class HardnessVerdict:
    planner: str
    domain: str
    level: Level
    size_class: SizeClass
    pool_kind: PoolKind
    area_ms: float
    n_problems: int
    percentile: float
    classification: Classification


@dataclass(frozen=True)
class HardnessTable:
    """All verdicts for a category plus per-(domain, level) tail counts."""

    category: Category
    size_class: SizeClass
    pool_label: str
    verdicts: tuple[HardnessVerdict, ...]

    def cell_counts(self) -> dict[tuple[str, Level], tuple[int, int]]:
        counts: dict[tuple[str, Level], tuple[int, int]] = {}
        for v in self.verdicts:
            easy, hard = counts.get((v.domain, v.level), (0, 0))
            if v.classification is Classification.EASY:
                easy += 1
            elif v.classification is Classification.HARD:
                hard += 1
            counts[(v.domain, v.level)] = (easy, hard)
        return counts

    def by_planner(self, level: Level) -> dict[str, dict[str, HardnessVerdict]]:
        """planner -> domain -> verdict at one level (the scaling gate's input)."""
        out: dict[str, dict[str, HardnessVerdict]] = {}
        for v in self.verdicts:
            if v.level == level:
                out.setdefault(v.planner, {})[v.domain] = v
        return out


def difficulty_area(times: Sequence[float | None], cutoff_ms: int) -> float:
    """Sum of cutoff-clamped solve times; None (unsolved) pays the cutoff.

    This is the closed form of the area under the step curve counting
    problems left to solve over [0, cutoff].

    Raises:
        EmptyInput: if no times are supplied.
        ValueError: if the cutoff is not positive.
    """
    if cutoff_ms <= 0:
        raise ValueError(f"cutoff_ms must be positive, got {cutoff_ms}")
    if len(times) == 0:
        raise EmptyInput("difficulty_area needs at least one time")
    return float(sum(cutoff_ms if t is None else min(float(t), float(cutoff_ms)) for t in times))


def subject_area(
    runs: Sequence[RunRecord],
    manifest: Manifest,
    planner: str,
    domain: str,
    level: Level,
    size_class: SizeClass = SizeClass.SMALL,
    cutoff_ms: int = DEFAULT_CUTOFF_MS,
) -> DifficultyArea:
    """Difficulty area of one planner over one problem set.

    Unattempted problems count as unsolved.
    """
    sets = manifest.sets_at(level=level, size_class=size_class, domain=domain)
    if not sets:
        raise EmptyPool(f"no {size_class.value} problem set for {domain}/{level.value}")
    (ps,) = sets
    index = {
        (r.domain, r.problem): r
        for r in runs
        if r.planner == planner and r.level == level
    }
    times = []
    for problem in ps.problems:
        rec = index.get((domain, problem))
        times.append(float(rec.time_ms) if rec is not None and rec.solved else None)
    return DifficultyArea(
        planner=planner,
        domain=domain,
        level=level,
        size_class=size_class,
        area_ms=difficulty_area(times, cutoff_ms),
        n_problems=len(times),
        cutoff_ms=cutoff_ms,
    )


def _pool_timings(
    runs: Sequence[RunRecord],
    manifest: Manifest,
    category: Category,
    pool_kind: PoolKind,
    size_class: SizeClass,
    cutoff_ms: int,
) -> list[np.ndarray]:
    """Per-problem arrays of clamped timings, one entry per eligible planner.

    A problem is in the pool when at least one category planner entered
    its level; a planner with no record on a pooled problem contributes
    the cutoff (unsolved).
    """
    sets = manifest.sets_at(level=pool_kind.level, size_class=size_class)
    index = {r.key: r for r in runs}
    per_problem: list[np.ndarray] = []
    for ps in sets:
        eligible = [p.name for p in manifest.planners_in(category, ps.level)]
        if not eligible:
            continue
        for problem in ps.problems:
            values = np.empty(len(eligible), dtype=np.float64)
            for i, name in enumerate(eligible):
                rec = index.get((name, ps.domain, ps.level, problem))
                if rec is not None and rec.solved:
                    values[i] = min(float(rec.time_ms), float(cutoff_ms))
                else:
                    values[i] = float(cutoff_ms)
            per_problem.append(values)
    return per_problem


def _sample_area(
    sample_index: int,
    seed: int,
    per_problem: list[np.ndarray],
    m: int,
) -> float:
    key = np.array([seed & _UINT64_MASK, sample_index], dtype=np.uint64)
    rng = np.random.Generator(np.random.Philox(key=key))
    problem_draws = rng.integers(0, len(per_problem), size=m)
    area = 0.0
    for j in problem_draws:
        timings = per_problem[j]
        area += float(timings[rng.integers(0, len(timings))])
    return area


def bootstrap_distribution(
    runs: Sequence[RunRecord],
    manifest: Manifest,
    category: Category,
    pool_kind: PoolKind,
    size_class: SizeClass = SizeClass.SMALL,
    B: int = DEFAULT_B,
    m: int = DEFAULT_M,
    cutoff_ms: int = DEFAULT_CUTOFF_MS,
    seed: int = 0,
    workers: int = 1,
) -> BootstrapDistribution:
    """Bootstrap distribution of difficulty areas for a pool.

    Each of the B samples draws m problems uniformly with replacement
    from the pool's problem universe, then for each drawn problem one
    planner uniformly among the category planners that entered its level;
    that planner's cutoff-clamped time (missing record counts as
    unsolved) contributes to the sample's area.  Bit-identical for a
    given seed regardless of ``workers``.

    Raises:
        EmptyPool: if the pool has no problems visible to the category.
    """
    if B < 1 or m < 1:
        raise ValueError(f"B and m must be positive, got B={B}, m={m}")
    if not (0 <= seed <= _UINT64_MASK):
        raise ValueError("seed must fit in 64 bits")
    per_problem = _pool_timings(runs, manifest, category, pool_kind, size_class, cutoff_ms)
    if not per_problem:
        raise EmptyPool(
            f"no problems for category {category.value} in pool {pool_kind.label}/{size_class.value}"
        )
    if workers <= 1:
        areas = [_sample_area(i, seed, per_problem, m) for i in range(B)]
    else:
        areas = [0.0] * B
        chunk = (B + workers - 1) // workers
        ranges = [range(start, min(start + chunk, B)) for start in range(0, B, chunk)]

        def fill(indices: range) -> None:
            for i in indices:
                areas[i] = _sample_area(i, seed, per_problem, m)

        with ThreadPoolExecutor(max_workers=workers) as pool:
            list(pool.map(fill, ranges))
    return BootstrapDistribution(
        pool_kind=pool_kind,
        category=category,
        size_class=size_class,
        samples=tuple(areas),
        B=B,
        m=m,
        cutoff_ms=cutoff_ms,
        seed=seed,
    )


def percentile_of(area: float, samples: Sequence[float]) -> float:
    """Mid-p percentile of an area within a sample set (ties count half)."""
    below = sum(1 for s in samples if s < area)
    equal = sum(1 for s in samples if s == area)
    return (below + 0.5 * equal) / len(samples)


def classify(subject: DifficultyArea, dist: BootstrapDistribution) -> HardnessVerdict:
    """Easy/Hard/Neither verdict for a subject against a distribution.

    A subject whose problem count differs from the distribution's sample
    size m is compared after rescaling its area by m/n_problems, keeping
    the statistic comparable across 16/20/22-problem sets.

    Raises:
        SampleSizeMismatch: if the subject has no problems.
    """
    if subject.n_problems <= 0:
        raise SampleSizeMismatch("subject has no problems")
    area = subject.area_ms
    if subject.n_problems != dist.m:
        area = area * (dist.m / subject.n_problems)
    pct = percentile_of(area, dist.samples)
    if pct <= EASY_TAIL:
        classification = Classification.EASY
    elif pct >= HARD_TAIL:
        classification = Classification.HARD
    else:
        classification = Classification.NEITHER
    return HardnessVerdict(
        planner=subject.planner,
        domain=subject.domain,
        level=subject.level,
        size_class=subject.size_class,
        pool_kind=dist.pool_kind,
        area_ms=subject.area_ms,
        n_problems=subject.n_problems,
        percentile=pct,
        classification=classification,
    )


def hardness_table(
    runs: Sequence[RunRecord],
    manifest: Manifest,
    category: Category,
    *,
    level_specific_pools: bool,
    size_class: SizeClass = SizeClass.SMALL,
    B: int = DEFAULT_B,
    m: int = DEFAULT_M,
    cutoff_ms: int = DEFAULT_CUTOFF_MS,
    seed: int = 0,
    workers: int = 1,
) -> HardnessTable:
    """Classify every (planner, domain, level) subject for a category.

    With ``level_specific_pools`` each level gets its own bootstrap
    distribution; otherwise a single level-independent distribution is
    shared.  Subjects are the category planners that entered the level
    and produced at least one record in the cell.
    """
    index: dict[tuple[str, str, Level], int] = {}
    for r in runs:
        key = (r.planner, r.domain, r.level)
        index[key] = index.get(key, 0) + 1

    dists: dict[str, BootstrapDistribution] = {}

    def dist_for(level: Level) -> BootstrapDistribution | None:
        kind = level_specific(level) if level_specific_pools else LEVEL_INDEPENDENT
        if kind.label not in dists:
            try:
                dists[kind.label] = bootstrap_distribution(
                    runs,
                    manifest,
                    category,
                    kind,
                    size_class,
                    B=B,
                    m=m,
                    cutoff_ms=cutoff_ms,
                    seed=seed,
                    workers=workers,
                )
            except EmptyPool:
                return None
        return dists[kind.label]

    verdicts = []
    for ps in sorted(
        manifest.sets_at(size_class=size_class), key=lambda s: (s.domain, s.level.value)
    ):
        planners = manifest.planners_in(category, ps.level)
        for entry in sorted(planners, key=lambda p: p.name):
            if index.get((entry.name, ps.domain, ps.level), 0) == 0:
                continue
            dist = dist_for(ps.level)
            if dist is None:
                continue
            subject = subject_area(
                runs, manifest, entry.name, ps.domain, ps.level, size_class, cutoff_ms
            )
            verdicts.append(classify(subject, dist))
    pool_label = "level-specific" if level_specific_pools else "level-independent"
    return HardnessTable(
        category=category,
        size_class=size_class,
        pool_label=pool_label,
        verdicts=tuple(verdicts),
    )
