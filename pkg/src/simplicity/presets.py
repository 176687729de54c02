"""Built-in lottery configurations.

Figure-2 strips: 48 unit cells, 16 of them winning. Figure-4 boards:
10 x 8 with 16 units of winning area, dot landing 0.25 away from a winning
frontier. Where the reference geometry is only partly stated, placements
were chosen to reproduce the stated scores and are marked ``derived``.
"""

from __future__ import annotations

from dataclasses import dataclass

from .scenario import Outcome, Scenario, parse_scenario


@dataclass(frozen=True)
class Preset:
    name: str
    text: str
    provenance: str  # "paper" or "derived"
    note: str
    claimed_u2: float | None = None


_RAW = [
    Preset("fig2-a", """\
scenario fig2-a
dim 1
size 48
cell 1
win 32 48
outcome 30
""", "derived", "fig2-b geometry, outcome two cells short of the winning zone"),
    Preset("fig2-b", """\
scenario fig2-b
dim 1
size 48
cell 1
win 32 48
outcome 31
""", "paper", "L=48, a=1, l1=32, l2=16; winning zone at the far end, outcome one cell short", 4.6),
    Preset("fig2-c", """\
scenario fig2-c
dim 1
size 48
cell 1
win 8 12
win 20 24
win 32 36
win 44 48
outcome 31
""", "derived", "l2=16 split into four pieces of 4; outcome one cell from a piece"),
    Preset("fig2-d", """\
scenario fig2-d
dim 1
size 48
cell 1
win 1 17
outcome 0
""", "paper", "outcome blocked at the strip end, one cell from the winning zone", 5.6),
    Preset("fig4-a", """\
scenario fig4-a
dim 2
size 10 8
cell 1
win 3 2 4 4
outcome 2.75 4
""", "paper", "S=10x8, winning square of side 4, delta=0.25", 2.3),
    Preset("fig4-c", """\
scenario fig4-c
dim 2
size 10 8
cell 1
win 1 1 2 2
win 7 1 2 2
win 1 5 2 2
win 7 5 2 2
outcome 0.75 2
""", "derived", "same area split into four squares of side 2, delta=0.25"),
    Preset("fig4-d", """\
scenario fig4-d
dim 2
size 10 8
cell 1
win 0.25 0 4 4
remark 0.25 0
outcome 0 0
""", "derived", "dot in a board corner, square corner registered remarkable, delta=0.25", 7.3),
]

PRESETS: dict[str, Preset] = {p.name: p for p in _RAW}


def load_preset(name: str) -> tuple[Scenario, Outcome]:
    try:
        preset = PRESETS[name]
    except KeyError:
        raise KeyError(f"unknown preset {name!r}; known: {', '.join(PRESETS)}") from None
    return parse_scenario(preset.text)
