"""Bit costs of lottery outcomes.

``generation_complexity`` is what the lottery machine spends to produce a
landing site; the ``*_complexity`` description costs are what an observer
spends to designate a position after the fact; ``cheat_cost`` is what it
takes to tell the machine to move its result onto a winning position.
All values are exact :class:`~simplicity.bits.Bits`.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Literal

from .bits import Bits
from .errors import DegenerateCounterfactualError, NoRegionError
from .scenario import Counterfactual, Outcome, Scenario, counterfactual_candidates

StructureCost = Literal["log2k", "none"]
STRUCTURE_COSTS = ("log2k", "none")


def structure_cost(pieces: int, mode: StructureCost = "log2k") -> Bits:
    """Extra bits to single out one piece of a fragmented region."""
    if mode not in STRUCTURE_COSTS:
        raise ValueError(f"unknown structure cost {mode!r}")
    if mode == "none" or pieces <= 1:
        return Bits.zero()
    return Bits.log2(pieces)


def _cells(scenario: Scenario):
    # measure of one distinguishable site: a in 1D, a^2 in 2D
    return scenario.cell ** scenario.dim


def generation_complexity(scenario: Scenario) -> Bits:
    """log2 of the number of distinguishable landing sites."""
    return Bits.log2(scenario.total_measure / _cells(scenario))


def typical_losing_complexity(scenario: Scenario, structure: StructureCost = "log2k") -> Bits:
    losing = scenario.total_measure - scenario.winning_measure
    if losing <= 0:
        raise NoRegionError(f"{scenario.id}: no losing region")
    return Bits.log2(losing / _cells(scenario)) + structure_cost(scenario.losing_piece_count, structure)


def typical_winning_complexity(scenario: Scenario, structure: StructureCost = "log2k") -> Bits:
    winning = scenario.winning_measure
    if winning <= 0:
        raise NoRegionError(f"{scenario.id}: no winning region")
    return Bits.log2(winning / _cells(scenario)) + structure_cost(len(scenario.pieces), structure)


def counterfactual_complexity(cf: Counterfactual, scenario: Scenario) -> Bits:
    """Cost of designating s2.

    Remarkable points are free. A 1D region edge is a frontier, hence free
    too; a 2D point must be located along its piece's perimeter. Either
    way, picking out the right piece among k costs log2(k).
    """
    if cf.is_remarkable:
        return Bits.zero()
    k = len(scenario.pieces)
    piece_bits = Bits.log2(k) if k > 1 else Bits.zero()
    if scenario.dim == 1:
        return piece_bits
    perimeter = scenario.pieces[cf.piece_index].perimeter
    return Bits.log2(perimeter / scenario.cell) + piece_bits


def cheat_direction_bits(cf: Counterfactual) -> Bits:
    return Bits.log2(cf.direction_count)


def cheat_move_bits(cf: Counterfactual, scenario: Scenario) -> Bits:
    if cf.delta <= 0:
        raise DegenerateCounterfactualError("zero move distance: outcome is on a winning frontier")
    return Bits.log2(cf.delta / scenario.cell)


def cheat_cost(cf: Counterfactual, scenario: Scenario) -> Bits:
    """Bits to steer the world from s1 to s2: a direction, then a magnitude.

    The magnitude term goes negative for moves shorter than one cell.
    """
    return cheat_direction_bits(cf) + cheat_move_bits(cf, scenario)


def counterfactual_total(cf: Counterfactual, scenario: Scenario) -> Bits:
    return counterfactual_complexity(cf, scenario) + cheat_cost(cf, scenario)


def cheapest_counterfactual(outcome: Outcome) -> Counterfactual:
    """The reachable winning position minimising C(s2) + cheat cost.

    Ties fall back to the nearest-win ordering (shorter move, remarkable
    point, lower piece index, smaller coordinate).
    """
    sc = outcome.scenario

    def key(cf):
        pos = cf.position if isinstance(cf.position, tuple) else (cf.position,)
        return (counterfactual_total(cf, sc), cf.delta, not cf.is_remarkable, cf.piece_index, pos)

    return min(counterfactual_candidates(outcome), key=key)


@dataclass(frozen=True)
class ComplexityReport:
    c_w: Bits
    c_typical_lose: Bits | None
    c_typical_win: Bits
    c_counterfactual: Bits
    cheat_direction_bits: Bits
    cheat_move_bits: Bits

    @property
    def cheat_total(self) -> Bits:
        return self.cheat_direction_bits + self.cheat_move_bits


def complexity_report(outcome: Outcome, counterfactual: Counterfactual | None = None,
                      structure: StructureCost = "log2k") -> ComplexityReport:
    sc = outcome.scenario
    cf = counterfactual if counterfactual is not None else cheapest_counterfactual(outcome)
    try:
        lose = typical_losing_complexity(sc, structure)
    except NoRegionError:
        lose = None
    return ComplexityReport(
        c_w=generation_complexity(sc),
        c_typical_lose=lose,
        c_typical_win=typical_winning_complexity(sc, structure),
        c_counterfactual=counterfactual_complexity(cf, sc),
        cheat_direction_bits=cheat_direction_bits(cf),
        cheat_move_bits=cheat_move_bits(cf, sc),
    )
