"""Exception types shared across the package.

Two families matter to callers: input/validation problems (bad words,
malformed structures, unusable arguments) and guard violations (an
operation was asked to run outside the range where its contract holds).
The CLI maps the former to exit code 2 and the latter to exit code 3.
"""


class MatchworkError(Exception):
    """Base class for all errors raised by this package."""


class EmptyInput(MatchworkError):
    """A word to parse was empty or all whitespace."""


class LetterCountError(MatchworkError):
    """A token of a word does not occur exactly `arity` times."""

    def __init__(self, token: str, count: int, arity: int, position: int):
        self.token = token
        self.count = count
        self.arity = arity
        self.position = position  # 1-based position of the token's first occurrence
        super().__init__(
            f"token {token!r} (first at position {position}) occurs "
            f"{count} times, expected {arity}"
        )


class SharedVertex(MatchworkError):
    """Two edges or triples handed to a pair classifier share a vertex."""


class SizeTooSmall(MatchworkError):
    """The input is too small for the requested guarantee to apply."""


class NotALandscape(MatchworkError):
    """A matching expected to be nesting-free contains a nesting pair."""


class NotASemiLine(MatchworkError):
    """A triple matching has a pair that is neither aligned nor engaged."""


class NotAPermutation(MatchworkError):
    """A sequence is not a permutation of 1..n."""


class NotPermutational(MatchworkError):
    """A matching's left endpoints are not exactly 1..n."""


class TooLarge(MatchworkError):
    """An exhaustive operation was asked to run beyond its size guard."""


class IndexOutOfRange(MatchworkError):
    """An edge index refers outside the host matching."""


class InvalidParity(MatchworkError):
    """The split size does not have the parity the recursion needs."""


class UnsupportedStatistic(MatchworkError):
    """An experiment configuration requests an unknown statistic."""
