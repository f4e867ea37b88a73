"""Exception hierarchy.

Resource exhaustion (BudgetExceeded, CapExceeded) is always distinct from
mathematical failure: a verdict object records failed claims, an exception
means the computation could not be carried out at all.
"""


class TightpolyError(Exception):
    pass


class AdjacentOddPair(TightpolyError):
    """Two adjacent odd entries: no extra-relator case applies."""

    def __init__(self, index: int):
        self.index = index
        super().__init__(f"entries {index + 1} and {index + 2} are both odd")


class NotAdmissible(TightpolyError):
    """Tuple fails the odd-entry neighbor condition."""

    def __init__(self, message: str, odd_index: int, violating_index: int):
        self.odd_index = odd_index
        self.violating_index = violating_index
        super().__init__(message)


class BudgetExceeded(TightpolyError):
    """Coset enumeration did not close within the coset budget."""

    def __init__(self, budget: int):
        self.budget = budget
        super().__init__(f"coset enumeration exceeded budget of {budget} cosets")


class CapExceeded(TightpolyError):
    """Element enumeration grew past the configured cap."""

    def __init__(self, cap: int):
        self.cap = cap
        super().__init__(f"element enumeration exceeded cap of {cap}")


class RelatorViolation(TightpolyError):
    """A closed table fails a relator check; internal consistency bug."""


class DiamondViolation(TightpolyError):
    """Flag adjacency is not unique; the poset is not a polytope."""


class NotComparable(TightpolyError):
    """Section endpoints are not incident."""


class RouteDisagreement(TightpolyError):
    """The two independent tightness routes disagree; internal bug."""


class PreconditionViolated(TightpolyError):
    """Arguments outside the stated domain of a construction."""


class PresentationParseError(TightpolyError):
    def __init__(self, line_no: int, message: str):
        self.line_no = line_no
        super().__init__(f"line {line_no}: {message}")
