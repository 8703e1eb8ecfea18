"""Core types for ordered matchings and their pairwise relations.

An ordered matching lives on a linearly ordered vertex set.  Full matchings
of size n cover {1, ..., 2n} exactly; sub-matchings keep the original vertex
labels and relax coverage, but edges always stay pairwise disjoint and sorted
by left endpoint.  Two disjoint edges stand in exactly one of three relations
(alignment AABB, nesting ABBA, crossing ABAB); two disjoint triples stand in
exactly one of ten relations, named here both by their interleaving word and
by a (x, y) index pair with a starred variant for the engagement.

Matchings are interchangeable with double occurrence words: the word's i-th
letter pair becomes an edge, the j-th character position becomes vertex j.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Iterator, NamedTuple, Optional, Sequence, Union

from .errors import EmptyInput, LetterCountError, SharedVertex


class Edge(NamedTuple):
    left: int
    right: int


class Relation(Enum):
    """Relative position of two disjoint edges."""

    ALIGNMENT = "alignment"
    NESTING = "nesting"
    CROSSING = "crossing"


class TripleRelation(Enum):
    """Relative position of two disjoint triples, named by interleaving word.

    Every relation also carries an (x, y) index pair over {"l", "s", "w"};
    the pair (l, l) is shared by the alignment and the starred engagement.
    Nine relations are collectable (arbitrarily large families exist whose
    pairs all realize the relation); the engagement AABABB is the exception:
    no third triple can be added to an engaged pair.
    """

    LL = "AAABBB"
    LL_STAR = "AABABB"
    LS = "AABBBA"
    LW = "AABBAB"
    SL = "ABBBAA"
    SS = "ABBAAB"
    SW = "ABBABA"
    WL = "ABAABB"
    WS = "ABABBA"
    WW = "ABABAB"

    @property
    def word(self) -> str:
        return self.value

    @property
    def index_pair(self) -> tuple[str, str]:
        x, y = self.name.split("_")[0].lower()
        return x, y

    @property
    def starred(self) -> bool:
        return self is TripleRelation.LL_STAR

    @property
    def collectable(self) -> bool:
        return self is not TripleRelation.LL_STAR

    @classmethod
    def from_word(cls, word: str) -> "TripleRelation":
        return cls(word)

    @classmethod
    def from_index_pair(cls, x: str, y: str, starred: bool = False) -> "TripleRelation":
        if starred:
            if (x, y) != ("l", "l"):
                raise ValueError("only the (l, l) relation has a starred variant")
            return cls.LL_STAR
        return cls[(x + y).upper()]


COLLECTABLE_RELATIONS: tuple[TripleRelation, ...] = tuple(
    r for r in TripleRelation if r.collectable
)


def _check_disjoint_sorted(groups: Sequence[tuple[int, ...]], what: str) -> None:
    seen: set[int] = set()
    prev_min = 0
    for g in groups:
        if list(g) != sorted(g):
            raise ValueError(f"{what} {g} is not internally sorted")
        if g[0] < 1:
            raise ValueError(f"{what} {g} has a vertex below 1")
        if g[0] <= prev_min:
            raise ValueError(f"{what} are not sorted by left endpoint")
        prev_min = g[0]
        for v in g:
            if v in seen:
                raise ValueError(f"vertex {v} occurs in two {what}s")
            seen.add(v)


@dataclass(frozen=True)
class Matching:
    """Disjoint edges sorted by left endpoint.

    May be a full matching on [2n] or a sub-matching keeping original labels;
    use `is_full` to tell them apart.  Instances are immutable and hashable.
    """

    edges: tuple[Edge, ...]

    def __post_init__(self) -> None:
        for e in self.edges:
            if e.left >= e.right:
                raise ValueError(f"edge {tuple(e)} must have left < right")
        _check_disjoint_sorted([tuple(e) for e in self.edges], "edge")

    @classmethod
    def from_pairs(cls, pairs: Iterable[Sequence[int]]) -> "Matching":
        """Build from unordered pairs in any order; sorts and validates."""
        edges = []
        for p in pairs:
            if len(p) != 2:
                raise ValueError(f"{tuple(p)} is not a pair")
            edges.append(Edge(min(p), max(p)))
        return cls(tuple(sorted(edges)))

    @property
    def n(self) -> int:
        return len(self.edges)

    @property
    def is_full(self) -> bool:
        pts = self.vertices()
        return pts == tuple(range(1, 2 * self.n + 1))

    def vertices(self) -> tuple[int, ...]:
        return tuple(sorted(v for e in self.edges for v in e))

    def restrict(self, indices: Sequence[int]) -> "Matching":
        """Sub-matching of the edges at `indices`, keeping original labels."""
        return Matching(tuple(self.edges[i] for i in sorted(indices)))

    def __len__(self) -> int:
        return len(self.edges)

    def __iter__(self) -> Iterator[Edge]:
        return iter(self.edges)

    def to_json(self) -> dict:
        return {"n": self.n, "edges": [[e.left, e.right] for e in self.edges]}

    @classmethod
    def from_json(cls, obj: dict) -> "Matching":
        m = cls.from_pairs(obj["edges"])
        if m.n != obj.get("n", m.n):
            raise ValueError("edge count disagrees with declared n")
        return m


@dataclass(frozen=True)
class TripleMatching:
    """Disjoint sorted 3-sets, sorted by minimum element."""

    triples: tuple[tuple[int, int, int], ...]

    def __post_init__(self) -> None:
        _check_disjoint_sorted(self.triples, "triple")

    @classmethod
    def from_triples(cls, triples: Iterable[Sequence[int]]) -> "TripleMatching":
        ts = sorted(tuple(sorted(t)) for t in triples)
        for t in ts:
            if len(t) != 3:
                raise ValueError(f"{t} is not a 3-set")
        return cls(tuple(ts))  # type: ignore[arg-type]

    @property
    def n(self) -> int:
        return len(self.triples)

    @property
    def is_full(self) -> bool:
        pts = tuple(sorted(v for t in self.triples for v in t))
        return pts == tuple(range(1, 3 * self.n + 1))

    def restrict(self, indices: Sequence[int]) -> "TripleMatching":
        return TripleMatching(tuple(self.triples[i] for i in sorted(indices)))

    def __len__(self) -> int:
        return len(self.triples)

    def __iter__(self) -> Iterator[tuple[int, int, int]]:
        return iter(self.triples)

    def to_json(self) -> dict:
        return {"n": self.n, "triples": [list(t) for t in self.triples]}

    @classmethod
    def from_json(cls, obj: dict) -> "TripleMatching":
        tm = cls.from_triples(obj["triples"])
        if tm.n != obj.get("n", tm.n):
            raise ValueError("triple count disagrees with declared n")
        return tm


AnyMatching = Union[Matching, TripleMatching]


# ---------------------------------------------------------------------------
# word codec

_LETTERS = "ABCDEFGHIJKLMNOPQRSTUVWXYZ"


def _tokenize(text: str) -> list[str]:
    if text.split():
        if any(c.isspace() for c in text.strip()):
            return text.split()
        return list(text.strip())
    raise EmptyInput("empty word")


def parse_word(text: str, arity: int = 2) -> AnyMatching:
    """Decode a double (or triple) occurrence word into a matching.

    Compact form: one capital letter per token, e.g. "ABABCC".  Extended
    form: whitespace-separated multi-character tokens, e.g. "A1 B1 A1 B1".
    Token j of the word becomes vertex j; the occurrences of each distinct
    token become one edge or triple.
    """
    if arity not in (2, 3):
        raise ValueError("arity must be 2 or 3")
    tokens = _tokenize(text)
    positions: dict[str, list[int]] = {}
    for i, tok in enumerate(tokens, start=1):
        positions.setdefault(tok, []).append(i)
    for tok, occ in positions.items():
        if len(occ) != arity:
            raise LetterCountError(tok, len(occ), arity, occ[0])
    groups = [tuple(occ) for occ in positions.values()]
    if arity == 2:
        return Matching.from_pairs(groups)
    return TripleMatching.from_triples(groups)


def _token_for(i: int) -> str:
    # A..Z, then A2..Z2, A3.. for larger sizes
    block, letter = divmod(i, 26)
    return _LETTERS[letter] + (str(block + 1) if block else "")


def to_word(m: AnyMatching) -> str:
    """Canonical word of a matching's order type.

    Letters are assigned in order of left endpoints.  Uses the compact
    single-letter form up to 26 edges and the whitespace-separated extended
    form beyond.  For full matchings, `parse_word(to_word(m)) == m`.
    """
    arity = 2 if isinstance(m, Matching) else 3
    groups = [tuple(e) for e in m]
    ranks = {v: r for r, v in enumerate(sorted(v for g in groups for v in g), start=1)}
    slots = [""] * (arity * len(groups))
    for i, g in enumerate(groups):
        tok = _token_for(i)
        for v in g:
            slots[ranks[v] - 1] = tok
    return "".join(slots) if len(groups) <= 26 else " ".join(slots)


# ---------------------------------------------------------------------------
# pair classification

def classify_pair(e: Sequence[int], f: Sequence[int]) -> Relation:
    """Relation of two disjoint edges; argument order does not matter."""
    a1, b1 = min(e), max(e)
    a2, b2 = min(f), max(f)
    if a2 < a1:
        a1, b1, a2, b2 = a2, b2, a1, b1
    if len({a1, b1} & {a2, b2}) > 0:
        raise SharedVertex(f"edges {tuple(e)} and {tuple(f)} share a vertex")
    if b1 < a2:
        return Relation.ALIGNMENT
    if b2 < b1:
        return Relation.NESTING
    return Relation.CROSSING


# word for (c1, c2) where c1/c2 count the second triple's elements that fall
# before the first triple's middle/between its middle and last element
_TRIPLE_WORDS = {
    (0, 0): "AAABBB", (0, 1): "AABABB", (0, 2): "AABBAB", (0, 3): "AABBBA",
    (1, 0): "ABAABB", (1, 1): "ABABAB", (1, 2): "ABABBA",
    (2, 0): "ABBAAB", (2, 1): "ABBABA",
    (3, 0): "ABBBAA",
}


def classify_triple_pair(e: Sequence[int], f: Sequence[int]) -> TripleRelation:
    """Relation of two disjoint triples; argument order does not matter."""
    t1 = tuple(sorted(e))
    t2 = tuple(sorted(f))
    if t1[0] > t2[0]:
        t1, t2 = t2, t1
    if set(t1) & set(t2):
        raise SharedVertex(f"triples {tuple(e)} and {tuple(f)} share a vertex")
    c1 = sum(1 for v in t2 if v < t1[1])
    c2 = sum(1 for v in t2 if t1[1] < v < t1[2])
    return TripleRelation(_TRIPLE_WORDS[c1, c2])


def relation_census(m: Matching) -> dict[Relation, int]:
    """Count how many edge pairs realize each relation."""
    census = {rel: 0 for rel in Relation}
    for e, f in itertools.combinations(m.edges, 2):
        census[classify_pair(e, f)] += 1
    return census


def triple_relation_census(m: TripleMatching) -> dict[TripleRelation, int]:
    """Count how many triple pairs realize each relation."""
    census = {rel: 0 for rel in TripleRelation}
    for e, f in itertools.combinations(m.triples, 2):
        census[classify_triple_pair(e, f)] += 1
    return census


# ---------------------------------------------------------------------------
# order isomorphism and pattern containment

def _normalized(m: Matching) -> tuple[tuple[int, int], ...]:
    ranks = {v: r for r, v in enumerate(m.vertices(), start=1)}
    return tuple((ranks[e.left], ranks[e.right]) for e in m.edges)


def order_isomorphic(m1: Matching, m2: Matching) -> bool:
    """True iff the rank-normalized edge lists coincide."""
    return m1.n == m2.n and _normalized(m1) == _normalized(m2)


def contains_pattern(host: Matching, pattern: Matching) -> Optional[tuple[int, ...]]:
    """Indices of an ordered copy of `pattern` among `host`'s edges.

    Exact backtracking over host edges in left-endpoint order, pruning
    partial choices whose pairwise relations disagree with the pattern's.
    Returns the lexicographically first embedding, or None if there is no
    ordered copy.
    """
    k = pattern.n
    n = host.n
    if k == 0:
        return ()
    if k > n:
        return None
    want = [
        [classify_pair(pattern.edges[t], pattern.edges[d]) for t in range(d)]
        for d in range(k)
    ]
    chosen: list[int] = []

    def extend(depth: int, start: int) -> Optional[tuple[int, ...]]:
        if depth == k:
            return tuple(chosen)
        for j in range(start, n - (k - depth) + 1):
            cand = host.edges[j]
            if all(
                classify_pair(host.edges[chosen[t]], cand) == want[depth][t]
                for t in range(depth)
            ):
                chosen.append(j)
                found = extend(depth + 1, j + 1)
                if found is not None:
                    return found
                chosen.pop()
        return None

    return extend(0, 0)


def matching_to_json_str(m: AnyMatching) -> str:
    """Stable one-line JSON encoding (sorted keys, no stray whitespace)."""
    return json.dumps(m.to_json(), sort_keys=True, separators=(",", ":"))
