"""Near-miss scoring with simplicity theory.

Bit costs of uniform lottery outcomes (generation vs. description
complexity), counterfactual "almost won" unexpectedness, and brute-force
oracles that check the model against extensional probabilities.
"""

from .bits import Bits
from .codec import average_code_length, code_length, code_word, remarkable_complexity
from .complexity import ComplexityReport, cheapest_counterfactual, complexity_report
from .errors import (
    DegenerateCounterfactualError,
    DiscretizationError,
    NoCounterfactualError,
    NoRegionError,
    NotANearMissError,
    RankingError,
    ScenarioError,
    ScenarioSemanticError,
    ScenarioSyntaxError,
    SimplicityError,
)
from .nearmiss import (
    NearMissEvaluation,
    Ranking,
    UnexpectednessScores,
    coincidence_bound,
    nearmiss_unexpectedness,
    rank_scenarios,
    teigen_intensity,
    unexpectedness,
)
from .presets import PRESETS, load_preset
from .scenario import (
    Board2D,
    Counterfactual,
    Outcome,
    Rect,
    Strip1D,
    nearest_win,
    parse_scenario,
    serialize_scenario,
    winning_measure,
)

__version__ = "0.1.0"
