"""Brute-force checks that do not go through the scoring engine's geometry.

Scenarios are rasterised on a uniform lattice fine enough to hit every
coordinate exactly; winning pieces, perimeters and frontier points are
recovered from the raster by connected-component labelling. Costs are
kept as exact ratios so agreement is checked without tolerance.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import reduce
from itertools import product

import numpy as np
from scipy import ndimage

from . import codec
from .bits import Bits
from .complexity import (
    StructureCost,
    cheapest_counterfactual,
    counterfactual_total,
    structure_cost,
    typical_losing_complexity,
    typical_winning_complexity,
    generation_complexity,
)
from .errors import DiscretizationError, NoCounterfactualError
from .scenario import Outcome, Scenario, format_number

MAX_CELLS = 4_000_000


@dataclass
class CheckResult:
    name: str
    status: str  # "pass", "fail", "expected" or "skip"
    detail: str
    values: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return self.status != "fail"


def _fraction_gcd(values) -> Fraction:
    values = [Fraction(v) for v in values if v != 0]
    if not values:
        return Fraction(1)
    den = reduce(math.lcm, (v.denominator for v in values), 1)
    num = reduce(math.gcd, (abs(v.numerator) * (den // v.denominator) for v in values))
    return Fraction(num, den)


def _geometry_values(scenario: Scenario) -> list[Fraction]:
    if scenario.dim == 1:
        return [scenario.length, *(v for w in scenario.wins for v in w)]
    return [scenario.width, scenario.height,
            *(v for r in scenario.wins for v in (r.x, r.y, r.w, r.h))]


def grid_resolution(scenario: Scenario, outcome: Outcome | None = None) -> Fraction:
    """Largest lattice step on which every region bound (and point) falls."""
    vals = _geometry_values(scenario)
    if scenario.dim == 1:
        vals += list(scenario.remarks)
    else:
        vals += [v for p in scenario.remarks for v in p]
    if outcome is not None:
        pos = outcome.position
        vals += list(pos) if isinstance(pos, tuple) else [pos]
    return _fraction_gcd(vals)


def _steps(v: Fraction, r: Fraction, what: str) -> int:
    q = Fraction(v) / r
    if q.denominator != 1:
        raise DiscretizationError(f"{what} {format_number(v)} is not on the {format_number(r)} grid")
    return q.numerator


def rasterize(scenario: Scenario, resolution: Fraction) -> np.ndarray:
    """Boolean array of winning cells (1D: length n; 2D: shape (nx, ny))."""
    r = Fraction(resolution)
    if r <= 0:
        raise DiscretizationError("resolution must be positive")
    shape = tuple(_steps(e, r, "extent") for e in scenario.extent)
    if math.prod(shape) > MAX_CELLS:
        raise DiscretizationError(f"grid of {math.prod(shape)} cells is too fine")
    mask = np.zeros(shape, dtype=bool)
    if scenario.dim == 1:
        for s, e in scenario.wins:
            mask[_steps(s, r, "bound"):_steps(e, r, "bound")] = True
    else:
        for rect in scenario.wins:
            x0, x1 = _steps(rect.x, r, "bound"), _steps(rect.x1, r, "bound")
            y0, y1 = _steps(rect.y, r, "bound"), _steps(rect.y1, r, "bound")
            mask[x0:x1, y0:y1] = True
    return mask


def exhaustive_win_probability(scenario: Scenario, resolution=None) -> Fraction:
    """Winning cells over all cells, counted on the lattice."""
    r = grid_resolution(scenario) if resolution is None else Fraction(resolution)
    mask = rasterize(scenario, r)
    return Fraction(int(mask.sum()), mask.size)


def mc_win_frequency(scenario: Scenario, n_draws: int, seed: int) -> float:
    """Fraction of uniform draws landing in a winning region.

    Draws come from numpy's PCG64 bit generator seeded with ``seed`` taken
    modulo 2**64, so identical arguments give identical results.
    """
    if n_draws < 1:
        raise ValueError("n_draws must be positive")
    rng = np.random.Generator(np.random.PCG64(seed % 2 ** 64))
    wins = 0
    batch = 1 << 20
    left = n_draws
    while left > 0:
        m = min(batch, left)
        left -= m
        pts = rng.random((m, scenario.dim)) * np.array([float(e) for e in scenario.extent])
        hit = np.zeros(m, dtype=bool)
        if scenario.dim == 1:
            x = pts[:, 0]
            for s, e in scenario.wins:
                hit |= (x >= float(s)) & (x <= float(e))
        else:
            x, y = pts[:, 0], pts[:, 1]
            for rect in scenario.wins:
                hit |= ((x >= float(rect.x)) & (x <= float(rect.x1))
                        & (y >= float(rect.y)) & (y <= float(rect.y1)))
        wins += int(hit.sum())
    return wins / n_draws


def mc_check(scenario: Scenario, n_draws: int, seed: int, resolution=None) -> CheckResult:
    """Monte Carlo frequency against the exhaustive count, 3-sigma binomial band."""
    p = exhaustive_win_probability(scenario, resolution)
    f = mc_win_frequency(scenario, n_draws, seed)
    bound = 3 * math.sqrt(float(p) * (1 - float(p)) / n_draws)
    err = abs(f - float(p))
    ok = err <= bound if 0 < p < 1 else f == float(p)
    return CheckResult(
        "monte-carlo", "pass" if ok else "fail",
        f"freq={f:.6f} exact={format_number(p) if p.denominator < 10**6 else float(p)} "
        f"|diff|={err:.6f} 3sigma={bound:.6f} n={n_draws} seed={seed}",
        {"frequency": f, "exact": p, "bound": bound},
    )


def _identity_side(name, u: Bits | None, extensional: Fraction, expected: Bits) -> CheckResult:
    if u is None:
        return CheckResult(name, "skip", "region is empty")
    model = u.exp2neg()
    if model == extensional:
        return CheckResult(name, "pass", f"2^-U = {model} = {extensional}",
                           {"model": model, "extensional": extensional})
    gap = Bits(model / extensional)
    status = "expected" if gap == expected else "fail"
    return CheckResult(
        name, status,
        f"2^-U = {model} vs extensional {extensional}: discrepancy {float(gap):.6f} bits"
        + (" (structure cost)" if status == "expected" else ""),
        {"model": model, "extensional": extensional, "discrepancy_bits": float(gap)},
    )


def verify_prior_identity(scenario: Scenario, structure: StructureCost = "log2k",
                          resolution=None) -> list[CheckResult]:
    """Compare 2^-U1s and 2^-U2s with the counted losing and winning frequencies.

    For fragmented regions the model charges a structure cost, so the two
    sides differ by exactly that many bits; this is reported as expected.
    """
    p_win = exhaustive_win_probability(scenario, resolution)
    c_w = generation_complexity(scenario)
    out = []
    if p_win < 1:
        u1 = c_w - typical_losing_complexity(scenario, structure)
        out.append(_identity_side("prior-identity-lose", u1, 1 - p_win,
                                  structure_cost(scenario.losing_piece_count, structure)))
    else:
        out.append(_identity_side("prior-identity-lose", None, 1 - p_win, Bits.zero()))
    if p_win > 0:
        u2 = c_w - typical_winning_complexity(scenario, structure)
        out.append(_identity_side("prior-identity-win", u2, p_win,
                                  structure_cost(len(scenario.pieces), structure)))
    else:
        out.append(_identity_side("prior-identity-win", None, p_win, Bits.zero()))
    return out


# ---------------------------------------------------------------------------
# counterfactual search on the lattice


def _point_costs(scenario: Scenario, r: Fraction):
    """Map lattice point -> exact description-cost ratio, for winning frontier
    points and remarkable winning points."""
    mask = rasterize(scenario, r)
    labels, k = ndimage.label(mask)
    padded = np.pad(labels, 1, constant_values=0)
    a = scenario.cell
    piece_factor = k if k > 1 else 1
    remarkable = set()
    if scenario.dim == 1:
        remarkable |= {0, _steps(scenario.length, r, "extent")}
        remarkable |= {_steps(x, r, "remark") for x in scenario.remarks}
        costs = {}
        for i in range(mask.shape[0] + 1):
            near = {int(padded[i]), int(padded[i + 1])}  # cells i-1 and i
            comps = near - {0}
            if not comps:
                continue
            if i in remarkable:
                costs[i] = Fraction(1)
            elif len(near) > 1:
                costs[i] = Fraction(piece_factor)
        return costs, k
    w, h = scenario.extent
    nx, ny = mask.shape
    for cx, cy in ((0, 0), (nx, 0), (0, ny), (nx, ny)):
        remarkable.add((cx, cy))
    remarkable |= {(_steps(x, r, "remark"), _steps(y, r, "remark")) for x, y in scenario.remarks}
    perim = {}
    for c in range(1, k + 1):
        inside = padded == c
        edges = 0
        for axis in (0, 1):
            edges += int(np.count_nonzero(inside != np.roll(inside, 1, axis=axis)))
        perim[c] = edges * r
    costs = {}
    for i in range(nx + 1):
        for j in range(ny + 1):
            near = {int(v) for v in padded[i:i + 2, j:j + 2].ravel()}
            comps = near - {0}
            if not comps:
                continue
            if (i, j) in remarkable:
                costs[i, j] = Fraction(1)
                continue
            frontier = [c for c in comps if len(near) > 1]
            if frontier:
                costs[i, j] = min(perim[c] / a for c in frontier) * piece_factor
    return costs, k


def brute_force_counterfactuals(scenario: Scenario, outcome: Outcome, resolution=None):
    """Every single-axis move to a scored lattice point, with its total cost ratio.

    Returns ``(min_ratio, argmin_positions, n_candidates)``; ``min_ratio`` is
    None when nothing is reachable.
    """
    r = grid_resolution(scenario, outcome) if resolution is None else Fraction(resolution)
    costs, _ = _point_costs(scenario, r)
    a = scenario.cell
    if scenario.dim == 1:
        s = _steps(outcome.position, r, "outcome")
        n = _steps(scenario.length, r, "extent")
        dirs = sum(1 for d in (-1, 1) if 0 <= s + d <= n)
        cand = {p: c for p, c in costs.items() if p != s}
        totals = {p: c * dirs * (abs(p - s) * r / a) for p, c in cand.items()}
        to_pos = lambda p: p * r  # noqa: E731
    else:
        sx, sy = (_steps(v, r, "outcome") for v in outcome.position)
        nx, ny = (_steps(e, r, "extent") for e in scenario.extent)
        dirs = sum(1 for dx, dy in ((1, 0), (-1, 0), (0, 1), (0, -1))
                   if 0 <= sx + dx <= nx and 0 <= sy + dy <= ny)
        totals = {}
        for (i, j), c in costs.items():
            if (i == sx) != (j == sy):
                dist = abs(i - sx) + abs(j - sy)
                totals[i, j] = c * dirs * (dist * r / a)
        to_pos = lambda p: (p[0] * r, p[1] * r)  # noqa: E731
    if not totals:
        return None, [], 0
    best = min(totals.values())
    argmin = sorted(to_pos(p) for p, v in totals.items() if v == best)
    return best, argmin, len(totals)


def exhaustive_counterfactual_check(scenario: Scenario, outcome: Outcome,
                                    resolution=None) -> CheckResult:
    best, argmin, n = brute_force_counterfactuals(scenario, outcome, resolution)
    try:
        cf = cheapest_counterfactual(outcome)
    except NoCounterfactualError as exc:
        if best is None:
            return CheckResult("counterfactual-optimality", "pass",
                               "no reachable winning position (engine and brute force agree)")
        return CheckResult("counterfactual-optimality", "fail",
                           f"engine found none ({exc}) but brute force found {n} candidates")
    engine = counterfactual_total(cf, scenario)
    if best is None:
        return CheckResult("counterfactual-optimality", "fail",
                           "engine returned a counterfactual but brute force found none")
    ok = engine.ratio == best and cf.position in argmin
    pos = cf.position
    shown = "(" + ", ".join(format_number(v) for v in pos) + ")" if isinstance(pos, tuple) else format_number(pos)
    return CheckResult(
        "counterfactual-optimality", "pass" if ok else "fail",
        f"engine s2={shown} cost={float(engine):.6f} bits; brute-force minimum "
        f"{float(Bits(best)):.6f} bits over {n} candidates ({len(argmin)} minimisers)",
        {"engine_cost": engine, "oracle_cost": Bits(best), "argmin": argmin, "engine_s2": cf.position},
    )


# ---------------------------------------------------------------------------
# codec laws


def enumerate_code_words(n: int) -> list[str]:
    """The first n words, generated by listing bit strings by length."""
    words = []
    length = 0
    while len(words) < n:
        words.extend("".join(bits) for bits in product("01", repeat=length))
        length += 1
    return words[:n]


def verify_codec_laws(limit: int = 2 ** 16) -> list[CheckResult]:
    words = enumerate_code_words(limit)
    produced = [codec.code_word(i) for i in range(limit)]
    unique = len(set(produced)) == limit and produced == words
    lengths = np.array([len(w) for w in words])
    length_ok = all(codec.code_length(i) == lengths[i] for i in range(limit)) and all(
        lengths[i] == math.floor(math.log2(i + 1)) for i in range(1, limit))
    cum = np.cumsum(lengths)
    worst = 0.0
    avg_ok = True
    for n in range(2, limit + 1):
        avg = codec.average_code_length(n)
        if avg != cum[n - 1] / n:
            avg_ok = False
        worst = max(worst, abs(avg - math.log2(n)))
    avg_ok = avg_ok and worst <= 2
    return [
        CheckResult("codec-uniqueness", "pass" if unique else "fail",
                    f"first {limit} words pairwise distinct and in enumeration order"),
        CheckResult("codec-length-law", "pass" if length_ok else "fail",
                    f"code_length(i) = floor(log2(i+1)) for i < {limit}"),
        CheckResult("codec-average-law", "pass" if avg_ok else "fail",
                    f"max |avg(N) - log2 N| = {worst:.6f} for 2 <= N <= {limit}",
                    {"worst": worst}),
    ]
