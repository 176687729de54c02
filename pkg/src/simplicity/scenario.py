"""Uniform lottery geometries, the scenario file format, and geometric queries.

A scenario is either a 1D strip ``[0, L]`` or a 2D board ``[0, W] x [0, H]``
with winning regions, a cell size ``a`` (the smallest distinguishable
landing site) and optional registered remarkable points. Coordinates are
exact fractions. Winning regions are treated as closed sets: a landing
point on a region's frontier is a win.

File format, one directive per line, ``#`` starts a comment::

    scenario fig2-b
    dim 1
    size 48
    cell 1
    win 32 48
    outcome 31

2D boards use ``size W H``, ``win x y w h``, ``remark x y`` and
``outcome x y``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Union

from .errors import (
    NoCounterfactualError,
    NotANearMissError,
    ScenarioSemanticError,
    ScenarioSyntaxError,
)

Point2 = tuple[Fraction, Fraction]


def _frac(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    return Fraction(value)


@dataclass(frozen=True)
class Rect:
    """Axis-aligned rectangle ``[x, x + w] x [y, y + h]``."""

    x: Fraction
    y: Fraction
    w: Fraction
    h: Fraction

    def __post_init__(self):
        for name in ("x", "y", "w", "h"):
            object.__setattr__(self, name, _frac(getattr(self, name)))

    @property
    def x1(self) -> Fraction:
        return self.x + self.w

    @property
    def y1(self) -> Fraction:
        return self.y + self.h

    @property
    def area(self) -> Fraction:
        return self.w * self.h

    @property
    def perimeter(self) -> Fraction:
        return 2 * (self.w + self.h)

    def contains(self, p: Point2) -> bool:
        return self.x <= p[0] <= self.x1 and self.y <= p[1] <= self.y1

    def overlaps(self, other: Rect) -> bool:
        """True when the two interiors intersect."""
        return (self.x < other.x1 and other.x < self.x1
                and self.y < other.y1 and other.y < self.y1)

    def shared_edge(self, other: Rect) -> Fraction:
        """Length of the common frontier of two interior-disjoint rectangles."""
        if self.x1 == other.x or other.x1 == self.x:
            return max(Fraction(0), min(self.y1, other.y1) - max(self.y, other.y))
        if self.y1 == other.y or other.y1 == self.y:
            return max(Fraction(0), min(self.x1, other.x1) - max(self.x, other.x))
        return Fraction(0)


@dataclass(frozen=True)
class Piece:
    """One connected winning component."""

    index: int
    members: tuple[int, ...]
    measure: Fraction
    perimeter: Fraction | None = None
    bounds: tuple[Fraction, Fraction] | None = None  # 1D closed interval


def _check_dims(**values) -> None:
    for name, v in values.items():
        if v <= 0:
            raise ScenarioSemanticError(f"{name} must be positive, got {v}", directive=name)


@dataclass(frozen=True)
class Strip1D:
    length: Fraction
    cell: Fraction
    wins: tuple[tuple[Fraction, Fraction], ...] = ()
    remarks: tuple[Fraction, ...] = ()
    id: str = "scenario"

    dim = 1

    def __post_init__(self):
        object.__setattr__(self, "length", _frac(self.length))
        object.__setattr__(self, "cell", _frac(self.cell))
        object.__setattr__(self, "wins", tuple((_frac(s), _frac(e)) for s, e in self.wins))
        object.__setattr__(self, "remarks", tuple(_frac(r) for r in self.remarks))
        _check_dims(size=self.length, cell=self.cell)
        if self.length < self.cell:
            raise ScenarioSemanticError("strip is shorter than one cell", directive="size")
        for i, (s, e) in enumerate(self.wins):
            if not s < e:
                raise ScenarioSemanticError(f"empty interval [{s}, {e})", directive="win", items=(i,))
            if s < 0 or e > self.length:
                raise ScenarioSemanticError(f"interval [{s}, {e}) leaves the strip", directive="win", items=(i,))
        for i in range(1, len(self.wins)):
            if self.wins[i][0] < self.wins[i - 1][0]:
                raise ScenarioSemanticError("intervals are not sorted by start", directive="win", items=(i - 1, i))
            if self.wins[i][0] < self.wins[i - 1][1]:
                raise ScenarioSemanticError("overlapping winning regions", directive="win", items=(i - 1, i))
        for i, r in enumerate(self.remarks):
            if not 0 <= r <= self.length:
                raise ScenarioSemanticError(f"remarkable point {r} outside the strip", directive="remark", items=(i,))

    @property
    def extent(self) -> tuple[Fraction]:
        return (self.length,)

    @property
    def total_measure(self) -> Fraction:
        return self.length

    @cached_property
    def pieces(self) -> tuple[Piece, ...]:
        """Winning intervals merged where they touch, in left-to-right order."""
        merged: list[list] = []
        for i, (s, e) in enumerate(self.wins):
            if merged and s == merged[-1][1]:
                merged[-1][1] = e
                merged[-1][2].append(i)
            else:
                merged.append([s, e, [i]])
        return tuple(
            Piece(k, tuple(m), e - s, bounds=(s, e)) for k, (s, e, m) in enumerate(merged)
        )

    @property
    def winning_measure(self) -> Fraction:
        return sum((e - s for s, e in self.wins), Fraction(0))

    @cached_property
    def losing_piece_count(self) -> int:
        count = 0
        cursor = Fraction(0)
        for p in self.pieces:
            s, e = p.bounds
            if s > cursor:
                count += 1
            cursor = e
        if cursor < self.length:
            count += 1
        return count

    @cached_property
    def remarkable_points(self) -> tuple[Fraction, ...]:
        pts = [Fraction(0), self.length]
        pts += [r for r in self.remarks if r not in pts]
        return tuple(pts)

    def contains(self, x) -> bool:
        return 0 <= x <= self.length

    def is_win(self, x) -> bool:
        return any(s <= x <= e for s, e in self.wins)

    def pieces_at(self, x) -> list[int]:
        return [p.index for p in self.pieces if p.bounds[0] <= x <= p.bounds[1]]

    def open_directions(self, x) -> list[int]:
        """Signs (-1, +1) of the moves that stay on the strip."""
        return [d for d, ok in ((-1, x > 0), (+1, x < self.length)) if ok]

    def scaled(self, factor) -> Strip1D:
        f = _frac(factor)
        return Strip1D(self.length * f, self.cell * f,
                       tuple((s * f, e * f) for s, e in self.wins),
                       tuple(r * f for r in self.remarks), self.id)


@dataclass(frozen=True)
class Board2D:
    width: Fraction
    height: Fraction
    cell: Fraction
    wins: tuple[Rect, ...] = ()
    remarks: tuple[Point2, ...] = ()
    id: str = "scenario"

    dim = 2

    def __post_init__(self):
        for name in ("width", "height", "cell"):
            object.__setattr__(self, name, _frac(getattr(self, name)))
        object.__setattr__(self, "wins", tuple(r if isinstance(r, Rect) else Rect(*r) for r in self.wins))
        object.__setattr__(self, "remarks", tuple((_frac(x), _frac(y)) for x, y in self.remarks))
        _check_dims(size=min(self.width, self.height), cell=self.cell)
        if self.width < self.cell or self.height < self.cell:
            raise ScenarioSemanticError("board is smaller than one cell", directive="size")
        for i, r in enumerate(self.wins):
            if r.w <= 0 or r.h <= 0:
                raise ScenarioSemanticError("rectangle must have positive width and height",
                                            directive="win", items=(i,))
            if r.x < 0 or r.y < 0 or r.x1 > self.width or r.y1 > self.height:
                raise ScenarioSemanticError("rectangle leaves the board", directive="win", items=(i,))
        for i in range(len(self.wins)):
            for j in range(i + 1, len(self.wins)):
                if self.wins[i].overlaps(self.wins[j]):
                    raise ScenarioSemanticError("overlapping winning regions", directive="win", items=(i, j))
        for i, p in enumerate(self.remarks):
            if not self.contains(p):
                raise ScenarioSemanticError(f"remarkable point {p} outside the board",
                                            directive="remark", items=(i,))

    @property
    def extent(self) -> tuple[Fraction, Fraction]:
        return (self.width, self.height)

    @property
    def area(self) -> Fraction:
        return self.width * self.height

    @property
    def total_measure(self) -> Fraction:
        return self.area

    @cached_property
    def pieces(self) -> tuple[Piece, ...]:
        """Rectangles grouped by shared frontier, ordered by their first rectangle."""
        n = len(self.wins)
        parent = list(range(n))

        def find(i):
            while parent[i] != i:
                parent[i] = parent[parent[i]]
                i = parent[i]
            return i

        shared = {}
        for i in range(n):
            for j in range(i + 1, n):
                length = self.wins[i].shared_edge(self.wins[j])
                if length > 0:
                    shared[i, j] = length
                    parent[find(j)] = find(i)
        groups: dict[int, list[int]] = {}
        for i in range(n):
            groups.setdefault(find(i), []).append(i)
        pieces = []
        for k, members in enumerate(sorted(groups.values(), key=min)):
            rects = [self.wins[i] for i in members]
            inner = sum((v for (i, j), v in shared.items() if i in members), Fraction(0))
            pieces.append(Piece(
                k, tuple(members),
                sum((r.area for r in rects), Fraction(0)),
                perimeter=sum((r.perimeter for r in rects), Fraction(0)) - 2 * inner,
            ))
        return tuple(pieces)

    @property
    def winning_measure(self) -> Fraction:
        return sum((r.area for r in self.wins), Fraction(0))

    @cached_property
    def losing_piece_count(self) -> int:
        """Connected components of the board minus the winning rectangles."""
        xs = sorted({Fraction(0), self.width, *(v for r in self.wins for v in (r.x, r.x1))})
        ys = sorted({Fraction(0), self.height, *(v for r in self.wins for v in (r.y, r.y1))})
        free = set()
        for i in range(len(xs) - 1):
            cx = (xs[i] + xs[i + 1]) / 2
            for j in range(len(ys) - 1):
                cy = (ys[j] + ys[j + 1]) / 2
                if not any(r.contains((cx, cy)) for r in self.wins):
                    free.add((i, j))
        count = 0
        seen = set()
        for start in free:
            if start in seen:
                continue
            count += 1
            stack = [start]
            seen.add(start)
            while stack:
                i, j = stack.pop()
                for nb in ((i + 1, j), (i - 1, j), (i, j + 1), (i, j - 1)):
                    if nb in free and nb not in seen:
                        seen.add(nb)
                        stack.append(nb)
        return count

    @cached_property
    def remarkable_points(self) -> tuple[Point2, ...]:
        z = Fraction(0)
        pts = [(z, z), (self.width, z), (z, self.height), (self.width, self.height)]
        pts += [p for p in self.remarks if p not in pts]
        return tuple(pts)

    def contains(self, p) -> bool:
        return 0 <= p[0] <= self.width and 0 <= p[1] <= self.height

    def is_win(self, p) -> bool:
        return any(r.contains(p) for r in self.wins)

    def pieces_at(self, p) -> list[int]:
        return [pc.index for pc in self.pieces if any(self.wins[i].contains(p) for i in pc.members)]

    def open_directions(self, p) -> list[tuple[int, int]]:
        """(axis, sign) moves that stay on the board."""
        out = []
        for axis, hi in enumerate(self.extent):
            if p[axis] > 0:
                out.append((axis, -1))
            if p[axis] < hi:
                out.append((axis, +1))
        return out

    def scaled(self, factor) -> Board2D:
        f = _frac(factor)
        return Board2D(self.width * f, self.height * f, self.cell * f,
                       tuple(Rect(r.x * f, r.y * f, r.w * f, r.h * f) for r in self.wins),
                       tuple((x * f, y * f) for x, y in self.remarks), self.id)


Scenario = Union[Strip1D, Board2D]


@dataclass(frozen=True)
class Outcome:
    """Where the dot landed. ``position`` is a fraction in 1D, a pair in 2D."""

    scenario: Scenario = field(repr=False)
    position: object

    def __post_init__(self):
        if self.scenario.dim == 1:
            pos = _frac(self.position)
        else:
            pos = tuple(_frac(v) for v in self.position)
            if len(pos) != 2:
                raise ScenarioSemanticError("2D outcome needs two coordinates", directive="outcome")
        object.__setattr__(self, "position", pos)
        if not self.scenario.contains(pos):
            raise ScenarioSemanticError(f"outcome {_fmt_pos(pos)} out of bounds", directive="outcome")

    @property
    def is_win(self) -> bool:
        return self.scenario.is_win(self.position)

    def scaled(self, factor) -> Outcome:
        f = _frac(factor)
        sc = self.scenario.scaled(f)
        if sc.dim == 1:
            return Outcome(sc, self.position * f)
        return Outcome(sc, tuple(v * f for v in self.position))


@dataclass(frozen=True)
class Counterfactual:
    """A winning position s2 reachable from the outcome by one axis move."""

    position: object
    delta: Fraction
    direction_count: int
    piece_index: int
    is_remarkable: bool
    direction: object = None  # sign in 1D, (axis, sign) in 2D


# ---------------------------------------------------------------------------
# geometric queries


def _sort_key(cf: Counterfactual):
    pos = cf.position if isinstance(cf.position, tuple) else (cf.position,)
    return (cf.delta, not cf.is_remarkable, cf.piece_index, pos)


def counterfactual_candidates(outcome: Outcome) -> list[Counterfactual]:
    """Every winning position worth considering as s2.

    For each open axis direction: the nearest point of every winning piece
    met along the ray, plus every registered remarkable point on the ray
    that lies in a winning region. Candidates farther along a piece are
    never cheaper (same description cost, longer move), so they are skipped.
    """
    sc = outcome.scenario
    if outcome.is_win:
        raise NotANearMissError(f"outcome {_fmt_pos(outcome.position)} is a win")
    if not sc.wins:
        raise NoCounterfactualError(f"{sc.id}: scenario has no winning region")
    s1 = outcome.position
    dirs = sc.open_directions(s1)
    n_dirs = len(dirs)
    remarkable = set(sc.remarkable_points)
    out: list[Counterfactual] = []

    def add(pos, delta, piece, direction):
        out.append(Counterfactual(pos, delta, n_dirs, piece, pos in remarkable, direction))

    if sc.dim == 1:
        for sign in dirs:
            for p in sc.pieces:
                s, e = p.bounds
                if sign > 0 and s > s1:
                    add(s, s - s1, p.index, sign)
                elif sign < 0 and e < s1:
                    add(e, s1 - e, p.index, sign)
            for r in sc.remarkable_points:
                if (r - s1) * sign > 0:
                    on = sc.pieces_at(r)
                    if on:
                        add(r, abs(r - s1), on[0], sign)
    else:
        for axis, sign in dirs:
            other = 1 - axis
            for p in sc.pieces:
                best = None
                for i in p.members:
                    r = sc.wins[i]
                    lo, hi = (r.x, r.x1) if axis == 0 else (r.y, r.y1)
                    olo, ohi = (r.y, r.y1) if axis == 0 else (r.x, r.x1)
                    if not olo <= s1[other] <= ohi:
                        continue
                    entry = lo if sign > 0 else hi
                    d = (entry - s1[axis]) * sign
                    if d > 0 and (best is None or d < best):
                        best = d
                if best is not None:
                    pos = list(s1)
                    pos[axis] = s1[axis] + sign * best
                    add(tuple(pos), best, p.index, (axis, sign))
            for r in sc.remarkable_points:
                if r[other] == s1[other] and (r[axis] - s1[axis]) * sign > 0:
                    on = sc.pieces_at(r)
                    if on:
                        add(r, abs(r[axis] - s1[axis]), on[0], (axis, sign))
    if not out:
        raise NoCounterfactualError(
            f"{sc.id}: no winning region reachable from {_fmt_pos(s1)} by a single axis move")
    return out


def nearest_win(outcome: Outcome) -> Counterfactual:
    """The closest reachable winning position.

    Ties go to a remarkable point, then the lower piece index, then the
    lexicographically smaller coordinate.
    """
    return min(counterfactual_candidates(outcome), key=_sort_key)


def winning_measure(scenario: Scenario) -> tuple[Fraction, int]:
    """Total winning length (or area) and number of connected winning pieces."""
    return scenario.winning_measure, len(scenario.pieces)


# ---------------------------------------------------------------------------
# file format

_DIRECTIVES = ("scenario", "dim", "size", "cell", "win", "remark", "outcome")
_SINGLE = ("scenario", "dim", "size", "cell", "outcome")
_TOKEN = re.compile(r"\S+")


def _number(tok: str, line: int, col: int) -> Fraction:
    try:
        return Fraction(tok)
    except (ValueError, ZeroDivisionError):
        raise ScenarioSyntaxError(f"invalid number {tok!r}", line, col) from None


def parse_scenario(text: str, default_id: str = "scenario") -> tuple[Scenario, Outcome]:
    """Parse scenario-file text into a validated scenario and its outcome."""
    seen: dict[str, tuple[int, list]] = {}
    wins: list[tuple[int, list]] = []
    remarks: list[tuple[int, list]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        body = raw.split("#", 1)[0]
        toks = [(m.group(), m.start() + 1) for m in _TOKEN.finditer(body)]
        if not toks:
            continue
        name, col = toks[0]
        if name not in _DIRECTIVES:
            raise ScenarioSyntaxError(f"unknown directive {name!r}", lineno, col)
        args = toks[1:]
        if name == "scenario":
            if len(args) != 1:
                raise ScenarioSyntaxError("'scenario' takes exactly one identifier", lineno, col)
            values = [args[0][0]]
        elif name == "dim":
            if len(args) != 1 or args[0][0] not in ("1", "2"):
                raise ScenarioSyntaxError("'dim' must be 1 or 2", lineno, args[0][1] if args else col)
            values = [int(args[0][0])]
        else:
            if not args:
                raise ScenarioSyntaxError(f"'{name}' needs arguments", lineno, col)
            values = [_number(t, lineno, c) for t, c in args]
        if name in _SINGLE:
            if name in seen:
                raise ScenarioSemanticError("directive given twice", directive=name,
                                            lines=(seen[name][0], lineno))
            seen[name] = (lineno, values, col)
        elif name == "win":
            wins.append((lineno, values, col))
        else:
            remarks.append((lineno, values, col))

    for req in ("dim", "size", "cell", "outcome"):
        if req not in seen:
            raise ScenarioSyntaxError(f"missing '{req}' directive")
    dim = seen["dim"][1][0]
    arity = {"size": dim, "cell": 1, "outcome": dim, "win": 2 * dim, "remark": dim}
    for name in ("size", "cell", "outcome"):
        lineno, values, col = seen[name]
        if len(values) != arity[name]:
            raise ScenarioSyntaxError(
                f"'{name}' takes {arity[name]} number(s) in dim {dim}, got {len(values)}", lineno, col)
    for name, entries in (("win", wins), ("remark", remarks)):
        for lineno, values, col in entries:
            if len(values) != arity[name]:
                raise ScenarioSyntaxError(
                    f"'{name}' takes {arity[name]} numbers in dim {dim}, got {len(values)}", lineno, col)

    sid = seen["scenario"][1][0] if "scenario" in seen else default_id
    size = seen["size"][1]
    cell = seen["cell"][1][0]
    order = list(range(len(wins)))
    if dim == 1:
        order.sort(key=lambda i: (wins[i][1][0], wins[i][1][1]))
    line_of = {"win": [wins[i][0] for i in order], "remark": [n for n, _, _ in remarks]}
    try:
        if dim == 1:
            scenario = Strip1D(size[0], cell, tuple(tuple(wins[i][1]) for i in order),
                               tuple(v[0] for _, v, _ in remarks), sid)
        else:
            scenario = Board2D(size[0], size[1], cell, tuple(Rect(*v) for _, v, _ in wins),
                               tuple(tuple(v) for _, v, _ in remarks), sid)
    except ScenarioSemanticError as exc:
        if exc.directive in line_of and exc.items:
            lines = tuple(line_of[exc.directive][i] for i in exc.items)
        elif exc.directive in seen:
            lines = (seen[exc.directive][0],)
        else:
            raise
        msg = str(exc).split(": ", 1)[-1]
        raise ScenarioSemanticError(msg, directive=exc.directive, lines=lines) from None
    pos = seen["outcome"][1]
    try:
        outcome = Outcome(scenario, pos[0] if dim == 1 else tuple(pos))
    except ScenarioSemanticError as exc:
        msg = str(exc).split(": ", 1)[-1]
        raise ScenarioSemanticError(msg, directive="outcome", lines=(seen["outcome"][0],)) from None
    return scenario, outcome


def format_number(v: Fraction) -> str:
    """Exact decimal if one exists, else ``p/q``."""
    v = _frac(v)
    if v.denominator == 1:
        return str(v.numerator)
    d = v.denominator
    twos = fives = 0
    while d % 2 == 0:
        d //= 2
        twos += 1
    while d % 5 == 0:
        d //= 5
        fives += 1
    if d != 1:
        return f"{v.numerator}/{v.denominator}"
    places = max(twos, fives)
    scaled = abs(v.numerator) * 10 ** places // v.denominator
    sign = "-" if v < 0 else ""
    digits = str(scaled).rjust(places + 1, "0")
    return f"{sign}{digits[:-places]}.{digits[-places:]}".rstrip("0")


def _fmt_pos(pos) -> str:
    if isinstance(pos, tuple):
        return "(" + ", ".join(format_number(v) for v in pos) + ")"
    return format_number(pos)


def serialize_scenario(scenario: Scenario, outcome: Outcome) -> str:
    n = format_number
    lines = [f"scenario {scenario.id}", f"dim {scenario.dim}"]
    if scenario.dim == 1:
        lines += [f"size {n(scenario.length)}", f"cell {n(scenario.cell)}"]
        lines += [f"win {n(s)} {n(e)}" for s, e in scenario.wins]
        lines += [f"remark {n(r)}" for r in scenario.remarks]
        lines.append(f"outcome {n(outcome.position)}")
    else:
        lines += [f"size {n(scenario.width)} {n(scenario.height)}", f"cell {n(scenario.cell)}"]
        lines += [f"win {n(r.x)} {n(r.y)} {n(r.w)} {n(r.h)}" for r in scenario.wins]
        lines += [f"remark {n(x)} {n(y)}" for x, y in scenario.remarks]
        x, y = outcome.position
        lines.append(f"outcome {n(x)} {n(y)}")
    return "\n".join(lines) + "\n"
