"""Deterministic generators: canonical structures and extremal fixtures."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .core import Edge, Matching, TripleMatching
from .errors import NotAPermutation, NotPermutational


@dataclass(frozen=True)
class Permutation:
    """A finite sequence of pairwise distinct positive integers."""

    values: tuple[int, ...]

    def __post_init__(self) -> None:
        if any(v < 1 for v in self.values):
            raise ValueError("entries must be positive")
        if len(set(self.values)) != len(self.values):
            raise ValueError("entries must be pairwise distinct")

    @classmethod
    def of(cls, values: Sequence[int]) -> "Permutation":
        return cls(tuple(values))

    @property
    def is_of_range(self) -> bool:
        """True iff the entries are exactly 1..n."""
        return sorted(self.values) == list(range(1, len(self.values) + 1))

    def __len__(self) -> int:
        return len(self.values)

    def __iter__(self):
        return iter(self.values)

    def __getitem__(self, i: int) -> int:
        return self.values[i]


def make_line(n: int) -> Matching:
    """AABBCC...: every pair of edges aligned."""
    _require_positive(n)
    return Matching(tuple(Edge(2 * i - 1, 2 * i) for i in range(1, n + 1)))


def make_stack(n: int) -> Matching:
    """ABC...CBA: every pair of edges nesting."""
    _require_positive(n)
    return Matching(tuple(Edge(i, 2 * n + 1 - i) for i in range(1, n + 1)))


def make_wave(n: int) -> Matching:
    """ABC...ABC: every pair of edges crossing."""
    _require_positive(n)
    return Matching(tuple(Edge(i, n + i) for i in range(1, n + 1)))


def _require_positive(n: int) -> None:
    if n < 1:
        raise ValueError("size must be >= 1")


def stacked_waves(ell: int, s: int, w: int) -> Matching:
    """A matching of size ell*s*w whose largest line, stack, and wave are
    exactly ell, s, and w.

    One block nests s waves of size w inside each other; ell blocks are laid
    side by side on disjoint consecutive vertex intervals.  Within a block
    any two edges nest (different levels) or cross (same level); edges of
    different blocks are aligned.
    """
    for v in (ell, s, w):
        _require_positive(v)
    span = 2 * s * w
    edges = []
    for copy in range(ell):
        off = copy * span
        for level in range(1, s + 1):
            for i in range(1, w + 1):
                left = off + (level - 1) * w + i
                right = off + span - level * w + i
                edges.append(Edge(left, right))
    return Matching.from_pairs(edges)


def from_permutation(pi: Permutation | Sequence[int]) -> Matching:
    """The matching whose edge k joins k with n + position of k in pi.

    Bijection between permutations of [n] and matchings whose left endpoints
    are exactly [n]; increasing runs of pi become waves, decreasing runs
    become stacks.
    """
    if not isinstance(pi, Permutation):
        pi = Permutation.of(pi)
    if not pi.is_of_range:
        raise NotAPermutation(f"{pi.values} is not a permutation of 1..{len(pi)}")
    n = len(pi)
    position = {v: j for j, v in enumerate(pi.values, start=1)}
    return Matching(tuple(Edge(k, n + position[k]) for k in range(1, n + 1)))


def is_permutational(m: Matching) -> bool:
    """True iff the left endpoints of a full matching are exactly 1..n."""
    return m.is_full and all(e.left == i for i, e in enumerate(m.edges, start=1))


def to_permutation(m: Matching) -> Permutation:
    """Inverse of `from_permutation`."""
    if not is_permutational(m):
        raise NotPermutational("left endpoints are not exactly 1..n")
    n = m.n
    values = [0] * n
    for k, e in enumerate(m.edges, start=1):
        values[e.right - n - 1] = k
    return Permutation.of(values)


# the four relations on triples that admit three consecutive one-per-triple
# blocks, ordered so that superimposing them left to right yields the pair
# census 64/32/16/8 over WW/WS/SW/SS
_SUPERIMPOSE_WORDS = ("ABABAB", "ABABBA", "ABBABA", "ABBAAB")


def _blow_up(m: TripleMatching, word: str) -> TripleMatching:
    # replace every triple by two triples realizing `word` between them,
    # spreading each old vertex into two consecutive new positions; pairs of
    # distinct old triples keep their old relation (one element per slot)
    blocks = [(word[2 * k], word[2 * k + 1]) for k in range(3)]
    triples = []
    for t in m.triples:
        t_a = []
        t_b = []
        for slot, v in enumerate(t):
            lo, hi = 2 * v - 1, 2 * v
            if blocks[slot][0] == "A":
                t_a.append(lo)
                t_b.append(hi)
            else:
                t_b.append(lo)
                t_a.append(hi)
        triples.append(tuple(t_a))
        triples.append(tuple(t_b))
    return TripleMatching.from_triples(triples)


def triple_optimality_16() -> TripleMatching:
    """Sixteen triples on [48] whose 120 pairs split 8/16/32/64 over the
    relations ABBAAB, ABBABA, ABABBA, ABABAB, with no three triples pairwise
    in the same relation and every homogeneous family capped at two."""
    m = TripleMatching.from_triples([(1, 2, 3)])
    for word in _SUPERIMPOSE_WORDS:
        m = _blow_up(m, word)
    return m
