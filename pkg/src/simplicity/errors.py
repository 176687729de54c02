"""Exception hierarchy shared by all modules."""


class SimplicityError(Exception):
    """Base class for every error raised by this package."""


class ScenarioError(SimplicityError, ValueError):
    pass


class ScenarioSyntaxError(ScenarioError):
    def __init__(self, message: str, line: int | None = None, column: int | None = None):
        self.line = line
        self.column = column
        where = ""
        if line is not None:
            where = f"line {line}" + (f", column {column}" if column is not None else "") + ": "
        super().__init__(where + message)


class ScenarioSemanticError(ScenarioError):
    """Invalid geometry. ``directive`` and ``lines`` point at the culprits."""

    def __init__(self, message: str, directive: str | None = None,
                 lines: tuple[int, ...] = (), items: tuple[int, ...] = ()):
        self.directive = directive
        self.lines = tuple(lines)
        self.items = tuple(items)
        prefix = ""
        if directive:
            prefix = directive
            if self.lines:
                joined = ", ".join(str(n) for n in self.lines)
                prefix += f" (line{'s' if len(self.lines) > 1 else ''} {joined})"
            prefix += ": "
        super().__init__(prefix + message)


class NotANearMissError(SimplicityError, ValueError):
    """The outcome is a win, so there is nothing to have almost won."""


class NoCounterfactualError(SimplicityError, ValueError):
    """No winning position can be reached from the outcome."""


class DegenerateCounterfactualError(SimplicityError, ValueError):
    """Zero move distance: the outcome sits on a winning boundary."""


class NoRegionError(SimplicityError, ValueError):
    """A typical-position cost was requested for an empty region."""


class DiscretizationError(SimplicityError, ValueError):
    """Region bounds do not fall on the requested cell grid."""


class RankingError(SimplicityError, ValueError):
    def __init__(self, scenario_id: str, cause: Exception):
        self.scenario_id = scenario_id
        self.cause = cause
        super().__init__(f"{scenario_id}: {cause}")
