from typing import Optional


class VrhrError(Exception):
    """Base class of every error raised by the toolkit."""


class GraphError(VrhrError):
    pass


class ResourceLimitError(VrhrError):
    pass


class TermError(VrhrError):
    pass


class GrammarError(VrhrError):
    pass


class NetError(VrhrError):
    pass


class UnknownTransitionError(NetError):
    def __init__(self, transition: object) -> None:
        super().__init__(f"unknown transition {transition!r}")
        self.transition = transition


class NotEnabledError(NetError):
    def __init__(self, transition: object, index: Optional[int] = None) -> None:
        where = f" at step {index}" if index is not None else ""
        super().__init__(f"transition {transition!r} is not enabled{where}")
        self.transition = transition
        self.index = index


class InvalidSystemError(VrhrError):
    pass


class TranslationError(VrhrError):
    pass


class ExpansionMismatchError(TranslationError):
    pass


class MissingVariableError(VrhrError):
    def __init__(self, variable: str) -> None:
        super().__init__(f"no value for variable {variable!r}")
        self.variable = variable


class FuelError(VrhrError):
    pass


class SpecSyntaxError(VrhrError):
    def __init__(self, message: str, line: int = 0, column: int = 0) -> None:
        location = f"{line}:{column}: " if line else ""
        super().__init__(f"{location}{message}")
        self.message = message
        self.line = line
        self.column = column


class QuantifierError(SpecSyntaxError):
    pass


class ResolutionError(VrhrError):
    pass
