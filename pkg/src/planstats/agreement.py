"""Multi-judge agreement: do planners rank problems in the same order?

For each (domain, level, size class) cell, the planners act as judges
ranking the problem instances by solve time; unsolved problems are pushed
to the top end of the ranking as mutual ties.  Agreement is tested with
the multiple-judgements rank correlation F-test.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .dataio import Category, Level, Manifest, RunRecord, SizeClass
from .pairwise import NoProblems, _check_entered
from .ranking import WORST, RankVector, rank_ascending
from .stattests import MrcResult, mrc_test

# judges must have attempted at least this share of a cell's problems;
# a near-empty judge contributes only ties and dilutes F
MIN_ATTEMPT_FRACTION = 0.5

DEFAULT_ALPHA = 0.05


class TooFewJudges(ValueError):
    """Fewer than two eligible judges at the cell."""


@dataclass(frozen=True)
class AgreementResult:
    domain: str
    level: Level
    size_class: SizeClass
    category: Category
    judges: tuple[str, ...]
    excluded_judges: tuple[str, ...]
    k: int
    mrc: MrcResult
    significant: bool


def judge_ranks(
    runs: Sequence[RunRecord],
    manifest: Manifest,
    planner: str,
    domain: str,
    level: Level,
    size_class: SizeClass = SizeClass.SMALL,
) -> RankVector:
    """One planner's difficulty ranking of a problem set by solve time.

    Unsolved and unattempted problems map to WORST and tie at the top
    via mid-ranks.

    Raises:
        PlannerNotInLevel: if the planner did not enter the level.
        NoProblems: if the cell has no problem set.
    """
    _check_entered(manifest, planner, level)
    sets = manifest.sets_at(level=level, size_class=size_class, domain=domain)
    if not sets:
        raise NoProblems(f"no {size_class.value} problem set for {domain}/{level.value}")
    (ps,) = sets
    index = {
        r.problem: r
        for r in runs
        if r.planner == planner and r.domain == domain and r.level == level
    }
    values = []
    for problem in ps.problems:
        rec = index.get(problem)
        values.append(float(rec.time_ms) if rec is not None and rec.solved else WORST)
    return rank_ascending(values)


def _eligible_judges(
    runs: Sequence[RunRecord],
    manifest: Manifest,
    domain: str,
    level: Level,
    size_class: SizeClass,
    category: Category,
) -> tuple[list[str], list[str]]:
    sets = manifest.sets_at(level=level, size_class=size_class, domain=domain)
    if not sets:
        raise NoProblems(f"no {size_class.value} problem set for {domain}/{level.value}")
    (ps,) = sets
    problems = set(ps.problems)
    attempted: dict[str, int] = {}
    for r in runs:
        if r.domain == domain and r.level == level and r.problem in problems:
            attempted[r.planner] = attempted.get(r.planner, 0) + 1
    judges, excluded = [], []
    for entry in sorted(manifest.planners_in(category, level), key=lambda p: p.name):
        n_attempted = attempted.get(entry.name, 0)
        if n_attempted == 0:
            continue
        if n_attempted >= MIN_ATTEMPT_FRACTION * len(ps.problems):
            judges.append(entry.name)
        else:
            excluded.append(entry.name)
    return judges, excluded


def agreement_test(
    runs: Sequence[RunRecord],
    manifest: Manifest,
    domain: str,
    level: Level,
    size_class: SizeClass = SizeClass.SMALL,
    category: Category = Category.FULLY_AUTOMATED,
    alpha: float = DEFAULT_ALPHA,
) -> AgreementResult:
    """Agreement F-test for one (domain, level, size class) cell.

    Judges are the category's planners with records at the cell; judges
    that attempted fewer than half the problems are excluded and noted.

    Raises:
        TooFewJudges: with fewer than two eligible judges.
    """
    judges, excluded = _eligible_judges(runs, manifest, domain, level, size_class, category)
    if len(judges) < 2:
        raise TooFewJudges(
            f"{domain}/{level.value}/{size_class.value}: {len(judges)} eligible judges"
        )
    matrix = [
        tuple(judge_ranks(runs, manifest, j, domain, level, size_class)) for j in judges
    ]
    result = mrc_test(matrix)
    return AgreementResult(
        domain=domain,
        level=level,
        size_class=size_class,
        category=category,
        judges=tuple(judges),
        excluded_judges=tuple(excluded),
        k=result.k_subjects,
        mrc=result,
        significant=result.p <= alpha,
    )


def agreement_table(
    runs: Sequence[RunRecord],
    manifest: Manifest,
    category: Category,
    alpha: float = DEFAULT_ALPHA,
) -> list[AgreementResult]:
    """Agreement results for every populated cell of a category.

    Cells without two eligible judges are skipped.
    """
    results = []
    for ps in sorted(
        manifest.problem_sets, key=lambda s: (s.size_class.value, s.domain, s.level.value)
    ):
        try:
            results.append(
                agreement_test(runs, manifest, ps.domain, ps.level, ps.size_class, category, alpha)
            )
        except TooFewJudges:
            continue
    return results
