"""r-twin discovery: verification, exhaustive oracle, block construction,
and the permutational split reduction.

r-twins are r pairwise edge-disjoint, pairwise order-isomorphic
sub-matchings of a host; their size is the number of edges in any one of
them.  The block method partitions [2n] into vertex blocks, keeps block
pairs joined by at least r host edges, and turns a matching of block pairs
into twins: every twin takes one edge per matched block pair, so the common
block pattern forces order isomorphism.  The split method halves the vertex
set: either enough edges cross the middle, and the crossing edges inherit
twins from a permutation-twin finder, or twins from the two halves
concatenate.
"""

from __future__ import annotations

import hashlib
import itertools
import math
from bisect import bisect_left
from dataclasses import dataclass
from typing import Callable, Optional, Sequence

from .constructions import Permutation
from .core import Matching, matching_to_json_str, order_isomorphic
from .errors import IndexOutOfRange, InvalidParity, TooLarge


@dataclass(frozen=True)
class TwinSet:
    """r edge-index lists into a host, one per twin, all the same length."""

    r: int
    subs: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        if self.r < 2:
            raise ValueError("twin multiplicity r must be >= 2")
        if len(self.subs) != self.r:
            raise ValueError(f"expected {self.r} sub-matchings, got {len(self.subs)}")
        if len({len(s) for s in self.subs}) > 1:
            raise ValueError("twin sub-matchings must have equal sizes")

    @classmethod
    def empty(cls, r: int) -> "TwinSet":
        return cls(r, ((),) * r)

    @property
    def size(self) -> int:
        return len(self.subs[0])

    def to_json(self, host: Matching, method: str) -> dict:
        digest = hashlib.sha256(matching_to_json_str(host).encode()).hexdigest()
        return {
            "host_sha256": digest,
            "method": method,
            "r": self.r,
            "size": self.size,
            "subs": [list(s) for s in self.subs],
        }


def verify_twins(host: Matching, t: TwinSet) -> bool:
    """True iff the subs are pairwise disjoint and order-isomorphic."""
    seen: set[int] = set()
    for sub in t.subs:
        for i in sub:
            if not 0 <= i < host.n:
                raise IndexOutOfRange(f"edge index {i} outside host of size {host.n}")
            if i in seen:
                return False
            seen.add(i)
    matchings = [host.restrict(sub) for sub in t.subs]
    return all(
        order_isomorphic(matchings[0], mk) for mk in matchings[1:]
    )


# ---------------------------------------------------------------------------
# exhaustive oracle

_EXACT_GUARDS = {2: 8}
_EXACT_GUARD_DEFAULT = 6


def _order_signature(host: Matching, indices: Sequence[int]) -> tuple:
    pts = sorted(v for i in indices for v in host.edges[i])
    rank = {v: k for k, v in enumerate(pts)}
    return tuple((rank[host.edges[i].left], rank[host.edges[i].right]) for i in indices)


def _disjoint_family(groups: list[tuple[int, ...]], r: int) -> Optional[tuple]:
    """First (in generation order) r pairwise disjoint members of one bucket."""
    masks = [sum(1 << i for i in g) for g in groups]

    def extend(start: int, chosen: list[int], used: int) -> Optional[tuple]:
        if len(chosen) == r:
            return tuple(groups[c] for c in chosen)
        for k in range(start, len(groups)):
            if len(groups) - k < r - len(chosen):
                return None
            if masks[k] & used:
                continue
            chosen.append(k)
            found = extend(k + 1, chosen, used | masks[k])
            if found is not None:
                return found
            chosen.pop()
        return None

    return extend(0, [], 0)


def exact_twins(host: Matching, r: int) -> TwinSet:
    """Maximum-size r-twins by exhaustive search; the oracle for small hosts."""
    if r < 2:
        raise ValueError("twin multiplicity r must be >= 2")
    n = host.n
    guard = _EXACT_GUARDS.get(r, _EXACT_GUARD_DEFAULT)
    if n > guard:
        raise TooLarge(f"exhaustive twins guarded at n <= {guard} for r = {r}")
    for t in range(n // r, 0, -1):
        buckets: dict[tuple, list[tuple[int, ...]]] = {}
        for sub in itertools.combinations(range(n), t):
            buckets.setdefault(_order_signature(host, sub), []).append(sub)
        for sig in sorted(buckets):
            group = buckets[sig]
            if len(group) < r:
                continue
            family = _disjoint_family(group, r)
            if family is not None:
                return TwinSet(r, family)
    return TwinSet.empty(r)


# ---------------------------------------------------------------------------
# block construction

def default_block_size(n: int, r: int) -> int:
    """Nearest integer to r!^(1/(2r-1)) * (2n)^((r-1)/(2r-1)), at least 2."""
    a = round(math.factorial(r) ** (1 / (2 * r - 1)) * (2 * n) ** ((r - 1) / (2 * r - 1)))
    return max(2, min(a, 2 * n))


@dataclass(frozen=True)
class BlockTwinParams:
    r: int = 2
    block_size: Optional[int] = None   # defaults to the formula above
    strategy: str = "greedy"           # or "exact"

    def __post_init__(self) -> None:
        if self.r < 2:
            raise ValueError("twin multiplicity r must be >= 2")
        if self.block_size is not None and self.block_size < 1:
            raise ValueError("block size must be >= 1")
        if self.strategy not in ("greedy", "exact"):
            raise ValueError("strategy must be greedy or exact")


@dataclass(frozen=True, eq=False)
class AuxiliaryGraph:
    """Blocks as vertices; X[i, j] counts host edges joining blocks i and j.

    A pair is an edge of the graph iff its count reaches the threshold r.
    Blocks are consecutive intervals of block_size vertices covering a
    prefix of [2n]; trailing vertices are ignored.
    """

    n_blocks: int
    block_size: int
    threshold: int
    counts: dict[tuple[int, int], int]

    @property
    def edges(self) -> list[tuple[int, int]]:
        return sorted(p for p, c in self.counts.items() if c >= self.threshold)


def auxiliary_graph(host: Matching, p: BlockTwinParams) -> AuxiliaryGraph:
    a = p.block_size if p.block_size is not None else default_block_size(host.n, p.r)
    n_blocks = (2 * host.n) // a
    counts: dict[tuple[int, int], int] = {}
    for e in host.edges:
        bi = (e.left - 1) // a
        bj = (e.right - 1) // a
        if bi != bj and bj < n_blocks:
            counts[bi, bj] = counts.get((bi, bj), 0) + 1
    return AuxiliaryGraph(n_blocks, a, p.r, counts)


def _greedy_matching(edges: list[tuple[int, int]]) -> list[tuple[int, int]]:
    used: set[int] = set()
    out = []
    for i, j in edges:  # edges come sorted by (i, j)
        if i not in used and j not in used:
            out.append((i, j))
            used.update((i, j))
    return out


def _exact_matching(edges: list[tuple[int, int]], n_blocks: int) -> list[tuple[int, int]]:
    import networkx as nx

    g = nx.Graph()
    g.add_nodes_from(range(n_blocks))
    g.add_edges_from(edges)
    mm = nx.max_weight_matching(g, maxcardinality=True)
    return sorted(tuple(sorted(p)) for p in mm)


def block_twins(host: Matching, p: BlockTwinParams) -> TwinSet:
    """Twins from a matching of block pairs, one host edge per twin and pair.

    For every matched block pair the r lexicographically first host edges
    between the blocks are used; twin h takes the h-th one.  The result is
    verified before being returned.
    """
    g = auxiliary_graph(host, p)
    aux_edges = g.edges
    if p.strategy == "greedy":
        matched = _greedy_matching(aux_edges)
    else:
        matched = _exact_matching(aux_edges, g.n_blocks)
    matched.sort()
    by_pair: dict[tuple[int, int], list[int]] = {bp: [] for bp in matched}
    a = g.block_size
    for idx, e in enumerate(host.edges):
        bp = ((e.left - 1) // a, (e.right - 1) // a)
        if bp in by_pair:
            by_pair[bp].append(idx)
    subs = tuple(
        tuple(sorted(by_pair[bp][h] for bp in matched)) for h in range(p.r)
    )
    ts = TwinSet(p.r, subs) if matched else TwinSet.empty(p.r)
    assert verify_twins(host, ts), "block construction produced invalid twins"
    return ts


# ---------------------------------------------------------------------------
# permutation twins and the split reduction

@dataclass(frozen=True)
class PermutationTwins:
    """r index lists into a permutation, pairwise similar subsequences."""

    r: int
    subs: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        if len(self.subs) != self.r:
            raise ValueError(f"expected {self.r} subsequences")
        if len({len(s) for s in self.subs}) > 1:
            raise ValueError("twin subsequences must have equal lengths")

    @classmethod
    def empty(cls, r: int) -> "PermutationTwins":
        return cls(r, ((),) * r)

    @property
    def length(self) -> int:
        return len(self.subs[0])


PermTwinFinder = Callable[[Permutation, int], PermutationTwins]

_PERM_GUARDS = {2: 10}
_PERM_GUARD_DEFAULT = 9


def _value_signature(values: Sequence[int], indices: Sequence[int]) -> tuple:
    picked = [values[i] for i in indices]
    rank = {v: k for k, v in enumerate(sorted(picked))}
    return tuple(rank[v] for v in picked)


def perm_twins_exhaustive(pi: Permutation | Sequence[int], r: int) -> PermutationTwins:
    """Maximum-length r-twins in a permutation by exhaustive search."""
    if not isinstance(pi, Permutation):
        pi = Permutation.of(pi)
    if r < 2:
        raise ValueError("twin multiplicity r must be >= 2")
    n = len(pi)
    guard = _PERM_GUARDS.get(r, _PERM_GUARD_DEFAULT)
    if n > guard:
        raise TooLarge(f"exhaustive permutation twins guarded at n <= {guard} for r = {r}")
    values = pi.values
    for t in range(n // r, 0, -1):
        buckets: dict[tuple, list[tuple[int, ...]]] = {}
        for sub in itertools.combinations(range(n), t):
            buckets.setdefault(_value_signature(values, sub), []).append(sub)
        for sig in sorted(buckets):
            group = buckets[sig]
            if len(group) < r:
                continue
            family = _disjoint_family(group, r)
            if family is not None:
                return PermutationTwins(r, family)
    return PermutationTwins.empty(r)


def _monotone_indices(values: Sequence[int], decreasing: bool) -> list[int]:
    # longest strictly monotone subsequence via patience piles with parents
    tails: list[int] = []
    tail_idx: list[int] = []
    parent = [-1] * len(values)
    for i, v in enumerate(values):
        key = -v if decreasing else v
        pos = bisect_left(tails, key)
        if pos == len(tails):
            tails.append(key)
            tail_idx.append(i)
        else:
            tails[pos] = key
            tail_idx[pos] = i
        parent[i] = tail_idx[pos - 1] if pos else -1
    if not tail_idx:
        return []
    chain = []
    i = tail_idx[-1]
    while i != -1:
        chain.append(i)
        i = parent[i]
    return chain[::-1]


def perm_twins_greedy(pi: Permutation | Sequence[int], r: int) -> PermutationTwins:
    """Twins of length floor(L/r) from the longest monotone subsequence.

    Monotone runs split into r consecutive chunks that are trivially similar;
    with L >= sqrt(n) this realizes the floor(sqrt(n)/r) guarantee.
    """
    if not isinstance(pi, Permutation):
        pi = Permutation.of(pi)
    if r < 2:
        raise ValueError("twin multiplicity r must be >= 2")
    inc = _monotone_indices(pi.values, decreasing=False)
    dec = _monotone_indices(pi.values, decreasing=True)
    best = inc if len(inc) >= len(dec) else dec
    t = len(best) // r
    if t == 0:
        return PermutationTwins.empty(r)
    subs = tuple(tuple(best[k * t:(k + 1) * t]) for k in range(r))
    return PermutationTwins(r, subs)


def default_perm_finder(pi: Permutation, r: int) -> PermutationTwins:
    """Exhaustive search on at most 8 points, greedy monotone split beyond."""
    if len(pi) <= 8:
        return perm_twins_exhaustive(pi, r)
    return perm_twins_greedy(pi, r)


def split_twins(
    host: Matching,
    r: int,
    m: int,
    perm_finder: Optional[PermTwinFinder] = None,
) -> TwinSet:
    """Twins by recursive halving with a pluggable permutation-twin finder.

    Split the vertex set in half.  If at least m edges cross the middle,
    those edges form a permutational pattern and the finder's permutation
    twins map straight back to edge twins.  Otherwise twins found separately
    in the two halves concatenate, twin by twin.  Requires n - m even so a
    failed threshold leaves both halves with at least (n - m + 2) / 2 edges.
    Recursive calls shrink the threshold to min(m, current size), bumped by
    one when needed to keep the size-minus-threshold parity even.
    """
    if r < 2:
        raise ValueError("twin multiplicity r must be >= 2")
    if not 1 <= m <= max(host.n, 1):
        raise ValueError(f"m must be in [1, {host.n}]")
    if (host.n - m) % 2:
        raise InvalidParity(f"n - m must be even, got n = {host.n}, m = {m}")
    if perm_finder is None:
        perm_finder = default_perm_finder
    subs = _split_rec(host, list(range(host.n)), r, m, perm_finder)
    ts = TwinSet(r, subs)
    assert verify_twins(host, ts), "split construction produced invalid twins"
    return ts


def _split_rec(
    host: Matching,
    idx: list[int],
    r: int,
    m: int,
    perm_finder: PermTwinFinder,
) -> tuple[tuple[int, ...], ...]:
    k = len(idx)
    if k == 0:
        return ((),) * r
    m_eff = min(m, k)
    m_eff += (k - m_eff) % 2
    pts = sorted(v for i in idx for v in host.edges[i])
    mid = pts[k - 1]  # last vertex of the lower half
    across = [i for i in idx if host.edges[i].right > mid >= host.edges[i].left]
    if len(across) >= m_eff:
        rights = [host.edges[i].right for i in across]
        order = sorted(range(len(across)), key=lambda j: rights[j])
        rank = [0] * len(across)
        for pos, j in enumerate(order, start=1):
            rank[j] = pos
        pt = perm_finder(Permutation.of(rank), r)
        return tuple(tuple(sorted(across[j] for j in sub)) for sub in pt.subs)
    lower = [i for i in idx if host.edges[i].right <= mid]
    upper = [i for i in idx if host.edges[i].left > mid]
    twins_lower = _split_rec(host, lower, r, m, perm_finder)
    twins_upper = _split_rec(host, upper, r, m, perm_finder)
    return tuple(
        tuple(sorted(a + b)) for a, b in zip(twins_lower, twins_upper)
    )
