"""Unexpectedness, subjective probability and near-miss rankings.

Unexpectedness is generation complexity minus description complexity.
For a near miss it is evaluated through the counterfactual winning
position s2::

    U(s1) = [C_w - C(s2)] - C_w(s2 | s1)

where the last term is the cost of "cheating" with the world. Emotional
intensity is only assumed to increase with unexpectedness, so rankings
use the ordering of scores and nothing else.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Literal

from .bits import Bits
from .complexity import ComplexityReport, StructureCost, cheapest_counterfactual, complexity_report
from .errors import RankingError, SimplicityError
from .scenario import Counterfactual, Outcome, Scenario

TIE_TOLERANCE = 2.0 ** -20
ScoreName = Literal["u2", "u1s", "u2s"]
SCORES = ("u2", "u1s", "u2s")


def unexpectedness(c_w, c_desc):
    """Generation minus description complexity. Works on floats or Bits."""
    return c_w - c_desc


@dataclass(frozen=True)
class UnexpectednessScores:
    u_prior_lose: Bits | None
    u_prior_win: Bits
    u_nearmiss: Bits
    p_subjective: Fraction
    p_ex_ante: Fraction
    clamped: bool


@dataclass(frozen=True)
class NearMissEvaluation:
    scenario_id: str
    counterfactual: Counterfactual
    report: ComplexityReport
    scores: UnexpectednessScores

    def score(self, name: ScoreName = "u2") -> float:
        value = {"u2": self.scores.u_nearmiss,
                 "u1s": self.scores.u_prior_lose,
                 "u2s": self.scores.u_prior_win}[name]
        if value is None:
            raise SimplicityError(f"{self.scenario_id}: {name} undefined (no losing region)")
        return float(value)


def nearmiss_unexpectedness(outcome: Outcome, structure: StructureCost = "log2k") -> NearMissEvaluation:
    """Score a losing outcome against its cheapest counterfactual win."""
    sc = outcome.scenario
    cf = cheapest_counterfactual(outcome)
    report = complexity_report(outcome, cf, structure)
    u2 = unexpectedness(report.c_w, report.c_counterfactual) - report.cheat_total
    p = u2.exp2neg()
    scores = UnexpectednessScores(
        u_prior_lose=None if report.c_typical_lose is None
        else unexpectedness(report.c_w, report.c_typical_lose),
        u_prior_win=unexpectedness(report.c_w, report.c_typical_win),
        u_nearmiss=u2,
        p_subjective=min(Fraction(1), p),
        p_ex_ante=report.c_w.exp2neg(),
        clamped=p > 1,
    )
    return NearMissEvaluation(sc.id, cf, report, scores)


def coincidence_bound(c_w_1: float, c_w_2: float, c_1: float, c_2_given_1: float) -> float:
    """Lower bound on the unexpectedness of two coinciding events.

    Follows from C(s1 & s2) <= C(s1) + C(s2|s1) while the world has to
    generate both events independently.
    """
    return c_w_1 + c_w_2 - c_1 - c_2_given_1


def teigen_intensity(delta_v: float, distance: float) -> float:
    """Baseline intensity: utility gap over closeness to the counterfactual."""
    if distance <= 0:
        raise ValueError(f"baseline undefined for distance {distance}")
    return delta_v / distance


@dataclass(frozen=True)
class RankEntry:
    scenario_id: str
    score: float
    rank: int


@dataclass(frozen=True)
class Ranking:
    entries: tuple[RankEntry, ...]
    tie_groups: tuple[tuple[str, ...], ...]
    score_name: str = "u2"

    def order(self) -> list[str]:
        return [e.scenario_id for e in self.entries]


def rank_scores(scored: Iterable[tuple[str, float]], score_name: str = "u2") -> Ranking:
    """Dense ranking by score, descending; scores within TIE_TOLERANCE share a rank."""
    items = sorted(scored, key=lambda t: (-t[1], t[0]))
    groups: list[list[tuple[str, float]]] = []
    for sid, s in items:
        if groups and abs(groups[-1][-1][1] - s) <= TIE_TOLERANCE:
            groups[-1].append((sid, s))
        else:
            groups.append([(sid, s)])
    entries = []
    ties = []
    for rank, group in enumerate(groups, start=1):
        group.sort(key=lambda t: t[0])
        entries += [RankEntry(sid, s, rank) for sid, s in group]
        if len(group) > 1:
            ties.append(tuple(sid for sid, _ in group))
    return Ranking(tuple(entries), tuple(ties), score_name)


def evaluate_all(pairs: Iterable[tuple[Scenario, Outcome]],
                 structure: StructureCost = "log2k") -> list[NearMissEvaluation]:
    """Evaluate every pair, failing on the first invalid one with its id."""
    out = []
    for scenario, outcome in pairs:
        try:
            out.append(nearmiss_unexpectedness(outcome, structure))
        except SimplicityError as exc:
            raise RankingError(scenario.id, exc) from exc
    return out


def rank_scenarios(pairs: Iterable[tuple[Scenario, Outcome]], score: ScoreName = "u2",
                   structure: StructureCost = "log2k") -> Ranking:
    evaluations = evaluate_all(pairs, structure)
    try:
        scored = [(ev.scenario_id, ev.score(score)) for ev in evaluations]
    except SimplicityError as exc:
        raise RankingError(str(exc).split(":", 1)[0], exc) from exc
    return rank_scores(scored, score)
