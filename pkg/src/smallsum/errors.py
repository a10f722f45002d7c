class SmallSumError(Exception):
    """Base class for library errors."""


class HypothesisError(SmallSumError):
    """An input does not satisfy the hypotheses of the requested statement."""

    def __init__(self, clause: str):
        super().__init__(clause)
        self.clause = clause


class NotSeparable(SmallSumError):
    pass


class NotDegenerate(SmallSumError):
    pass


class NoSuperAtom(SmallSumError):
    pass


class TheoremViolation(SmallSumError):
    """Hypotheses hold but no conclusion could be established.

    This is a counterexample report, never a usage error.
    """

    def __init__(self, clause: str, payload: dict | None = None):
        super().__init__(clause)
        self.clause = clause
        self.payload = payload or {}
