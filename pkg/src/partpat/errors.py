"""Exceptions shared across modules."""


class IntegrityError(ArithmeticError):
    """A quantity that must be an exact integer is not; signals a transcription bug.

    ``index`` names the offending sequence index when there is one.
    """

    def __init__(self, message: str, index: int | None = None):
        super().__init__(message)
        self.index = index
