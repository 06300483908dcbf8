"""Exception hierarchy shared by every syncwin module."""


class SyncwinError(Exception):
    """Base class for all library errors."""


class MalformedTable(SyncwinError, ValueError):
    """A transition table or game file is out of range, ragged or unparsable."""


class LetterOutOfRange(SyncwinError, ValueError):
    pass


class Unreachable(SyncwinError):
    """The win state cannot be reached from the requested state."""


class NotWinReducible(SyncwinError):
    pass


class TooLarge(SyncwinError):
    """The requested computation exceeds a configured state-count cap."""


class BaseMismatch(SyncwinError, ValueError):
    pass


class RangeMismatch(SyncwinError, ValueError):
    pass
