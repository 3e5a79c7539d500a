"""Exception types shared by every module."""


class D2Error(Exception):
    """Base class for all toolkit errors."""


class ParseError(D2Error):
    def __init__(self, message: str, line: int | None = None):
        self.line = line
        prefix = f"line {line}: " if line is not None else ""
        super().__init__(prefix + message)


class AsymmetricAdjacency(D2Error):
    pass


class SelfLoop(D2Error):
    pass


class Duplicate(D2Error):
    pass


class NotConnected(D2Error):
    pass


class NotSphere(D2Error):
    pass


class UnknownVertex(D2Error):
    pass


class NotAnEdge(D2Error):
    pass


class CrossingChords(D2Error):
    pass


class Disconnects(D2Error):
    pass


class UnsupportedDelta(D2Error):
    pass


class TooLarge(D2Error):
    pass


class PaletteExceeded(D2Error):
    def __init__(self, message: str, trace: list | None = None):
        self.trace = list(trace or [])
        super().__init__(message)


class PartialAssignment(D2Error):
    pass


class UnknownFixture(D2Error):
    pass


class BadSpec(D2Error):
    pass
