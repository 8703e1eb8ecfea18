"""Exact largest homogeneous substructures and constructive witness extraction.

A line / stack / wave is a sub-matching in which every edge pair is aligned /
nesting / crossing.  The three exact finders here are polynomial: lines by
greedy interval scheduling, stacks by a longest-decreasing-chain DP on right
endpoints, waves by scanning candidate first edges and chaining edges that
cross them (JIT-compiled for experiment-scale inputs).

`es_witness` is constructive: given positive targets (ell, s, w) and a
matching of size at least ell*s*w + 1, it always returns a line of size
ell+1, a stack of size s+1, or a wave of size w+1, by scoring each edge with
the largest stack and the largest nesting-free sub-matching starting there
and then greedily splitting a long nesting-free sub-matching into waves.
The 3-uniform variant reduces twice to the graph case, once on the first
two elements of each triple and once on the last two.
"""

from __future__ import annotations

import itertools
from bisect import bisect_left
from dataclasses import dataclass
from enum import Enum
from functools import lru_cache
from typing import Sequence, Union

import numpy as np
from numba import njit

from .core import (
    _TRIPLE_WORDS,
    Matching,
    Relation,
    TripleMatching,
    TripleRelation,
    classify_pair,
    classify_triple_pair,
)
from .errors import NotALandscape, NotASemiLine, SizeTooSmall


class StructureKind(Enum):
    LINE = "line"
    STACK = "stack"
    WAVE = "wave"
    SEMI_LINE = "semi-line"


Kind = Union[StructureKind, TripleRelation]


def kind_label(kind: Kind) -> str:
    return kind.value


@dataclass(frozen=True)
class EsParams:
    """Positive size targets: a line of ell+1, a stack of s+1, or a wave of w+1."""

    ell: int
    s: int
    w: int

    def __post_init__(self) -> None:
        if min(self.ell, self.s, self.w) < 1:
            raise ValueError("all parameters must be >= 1")

    @property
    def product(self) -> int:
        return self.ell * self.s * self.w


_XY = ("l", "s", "w")


@dataclass(frozen=True)
class TripleEsParams:
    """Nine positive targets a[x][y] for x, y in {l, s, w}."""

    a_ll: int
    a_ls: int
    a_lw: int
    a_sl: int
    a_ss: int
    a_sw: int
    a_wl: int
    a_ws: int
    a_ww: int

    def __post_init__(self) -> None:
        if min(self.as_dict().values()) < 1:
            raise ValueError("all parameters must be >= 1")

    @classmethod
    def uniform(cls, value: int) -> "TripleEsParams":
        return cls(*([value] * 9))

    def as_dict(self) -> dict[tuple[str, str], int]:
        return {
            (x, y): getattr(self, f"a_{x}{y}") for x in _XY for y in _XY
        }

    def a(self, x: str, y: str) -> int:
        return getattr(self, f"a_{x}{y}")

    def row(self, x: str) -> EsParams:
        return EsParams(self.a(x, "l"), self.a(x, "s"), self.a(x, "w"))

    @property
    def product(self) -> int:
        p = 1
        for v in self.as_dict().values():
            p *= v
        return p


@dataclass(frozen=True)
class EsWitness:
    """A certified homogeneous sub-structure inside a host matching.

    `embedding[i]` is the host index of the i-th edge (or triple) of `sub`;
    `sub` keeps the host's vertex labels.
    """

    kind: Kind
    sub: Union[Matching, TripleMatching]
    embedding: tuple[int, ...]

    @property
    def size(self) -> int:
        return len(self.embedding)

    def to_json(self) -> dict:
        payload = {"kind": kind_label(self.kind), "size": self.size,
                   "embedding": list(self.embedding)}
        if isinstance(self.sub, Matching):
            payload["edges"] = [[e.left, e.right] for e in self.sub.edges]
        else:
            payload["triples"] = [list(t) for t in self.sub.triples]
        return payload


def _witness(host: Matching, kind: StructureKind, indices: Sequence[int]) -> EsWitness:
    idx = tuple(sorted(indices))
    return EsWitness(kind, host.restrict(idx), idx)


def _triple_witness(host: TripleMatching, kind: Kind, indices: Sequence[int]) -> EsWitness:
    idx = tuple(sorted(indices))
    return EsWitness(kind, host.restrict(idx), idx)


def verify_witness(host: Union[Matching, TripleMatching], witness: EsWitness) -> bool:
    """Re-check a witness from scratch with the pair classifiers."""
    idx = witness.embedding
    if len(set(idx)) != len(idx):
        return False
    if any(i < 0 or i >= host.n for i in idx):
        return False
    if isinstance(host, Matching):
        if not isinstance(witness.sub, Matching) or host.restrict(idx) != witness.sub:
            return False
        expected = {
            StructureKind.LINE: Relation.ALIGNMENT,
            StructureKind.STACK: Relation.NESTING,
            StructureKind.WAVE: Relation.CROSSING,
        }.get(witness.kind)  # type: ignore[arg-type]
        if expected is None:
            return False
        return all(
            classify_pair(e, f) == expected
            for e, f in itertools.combinations(witness.sub.edges, 2)
        )
    if not isinstance(witness.sub, TripleMatching) or host.restrict(idx) != witness.sub:
        return False
    if witness.kind is StructureKind.SEMI_LINE:
        allowed = {TripleRelation.LL, TripleRelation.LL_STAR}
        return all(
            classify_triple_pair(e, f) in allowed
            for e, f in itertools.combinations(witness.sub.triples, 2)
        )
    if not isinstance(witness.kind, TripleRelation):
        return False
    return all(
        classify_triple_pair(e, f) == witness.kind
        for e, f in itertools.combinations(witness.sub.triples, 2)
    )


# ---------------------------------------------------------------------------
# exact finders for lines, stacks, waves

def largest_line(m: Matching) -> EsWitness:
    """Maximum set of pairwise aligned edges (greedy by right endpoint)."""
    order = sorted(range(m.n), key=lambda i: m.edges[i].right)
    chosen: list[int] = []
    frontier = 0
    for i in order:
        e = m.edges[i]
        if e.left > frontier:
            chosen.append(i)
            frontier = e.right
    return _witness(m, StructureKind.LINE, chosen)


def largest_stack(m: Matching) -> EsWitness:
    """Maximum set of pairwise nesting edges.

    In left-endpoint order a nesting family is exactly a strictly decreasing
    chain of right endpoints; patience piles with parent pointers recover one
    maximum chain.
    """
    rights = [e.right for e in m.edges]
    tails: list[int] = []          # negated chain tails, increasing
    tail_idx: list[int] = []
    parent = [-1] * m.n
    for i, r in enumerate(rights):
        pos = bisect_left(tails, -r)
        if pos == len(tails):
            tails.append(-r)
            tail_idx.append(i)
        else:
            tails[pos] = -r
            tail_idx[pos] = i
        parent[i] = tail_idx[pos - 1] if pos else -1
    chosen: list[int] = []
    if tail_idx:
        i = tail_idx[-1]
        while i != -1:
            chosen.append(i)
            i = parent[i]
    return _witness(m, StructureKind.STACK, chosen)


@njit(cache=True)
def _wave_kernel(lefts: np.ndarray, rights: np.ndarray) -> tuple[int, int]:
    """Best wave size and the index of its first edge.

    For each candidate first edge f, the edges e with
    f.left < e.left < f.right < e.right all cross f and cross each other
    whenever both their endpoints increase, so the longest chain increasing
    in (left, right) among them extends f to a largest wave starting at f.
    """
    n = lefts.shape[0]
    best_size = 0
    best_first = -1
    tails = np.empty(n, np.int64)
    for f in range(n):
        bf = rights[f]
        size = 0
        for j in range(f + 1, n):
            if lefts[j] >= bf:
                break
            rj = rights[j]
            if rj <= bf:
                continue
            lo, hi = 0, size
            while lo < hi:
                mid = (lo + hi) >> 1
                if tails[mid] < rj:
                    lo = mid + 1
                else:
                    hi = mid
            tails[lo] = rj
            if lo == size:
                size += 1
        if size + 1 > best_size:
            best_size = size + 1
            best_first = f
    return best_size, best_first


def largest_wave(m: Matching) -> EsWitness:
    """Maximum set of pairwise crossing edges; exact."""
    if m.n == 0:
        return _witness(m, StructureKind.WAVE, ())
    lefts = np.fromiter((e.left for e in m.edges), np.int64, m.n)
    rights = np.fromiter((e.right for e in m.edges), np.int64, m.n)
    size, first = _wave_kernel(lefts, rights)
    # rebuild the chain for the winning first edge
    bf = m.edges[first].right
    cand = [j for j in range(first + 1, m.n)
            if m.edges[j].left < bf < m.edges[j].right]
    tails: list[int] = []
    tail_idx: list[int] = []
    parent = {}
    for j in cand:
        r = m.edges[j].right
        pos = bisect_left(tails, r)
        if pos == len(tails):
            tails.append(r)
            tail_idx.append(j)
        else:
            tails[pos] = r
            tail_idx[pos] = j
        parent[j] = tail_idx[pos - 1] if pos else -1
    chosen = [first]
    if tail_idx:
        j = tail_idx[-1]
        while j != -1:
            chosen.append(j)
            j = parent[j]
    assert len(chosen) == size
    return _witness(m, StructureKind.WAVE, chosen)


# ---------------------------------------------------------------------------
# landscapes and the constructive guarantee

def is_landscape(m: Matching) -> bool:
    """True iff right endpoints ascend along left-endpoint order (no nesting)."""
    rights = [e.right for e in m.edges]
    return all(a < b for a, b in zip(rights, rights[1:]))


@dataclass(frozen=True)
class Landscape(Matching):
    """A matching whose left and right endpoints are both ascending."""

    def __post_init__(self) -> None:
        super().__post_init__()
        if not is_landscape(self):
            raise NotALandscape("a nesting pair is present")


def decompose_landscape(m: Matching) -> list[Matching]:
    """Greedy split of a nesting-free matching into waves.

    The first wave takes the first edge plus every edge whose left end lies
    under its span, then the rule repeats on the rest.  The waves partition
    the edges and their leftmost edges form a line.
    """
    if not is_landscape(m):
        raise NotALandscape("a nesting pair is present")
    waves: list[Matching] = []
    i = 0
    while i < m.n:
        span_end = m.edges[i].right
        j = i + 1
        while j < m.n and m.edges[j].left < span_end:
            j += 1
        waves.append(m.restrict(range(i, j)))
        i = j
    return waves


def _decompose_landscape_indices(m: Matching, indices: Sequence[int]) -> list[list[int]]:
    # same greedy rule, expressed on host edge indices (assumed nesting-free)
    blocks: list[list[int]] = []
    pos = 0
    idx = list(indices)
    while pos < len(idx):
        span_end = m.edges[idx[pos]].right
        j = pos + 1
        while j < len(idx) and m.edges[idx[j]].left < span_end:
            j += 1
        blocks.append(idx[pos:j])
        pos = j
    return blocks


def es_witness(m: Matching, p: EsParams) -> EsWitness:
    """A line of size ell+1, a stack of size s+1, or a wave of size w+1.

    Requires n >= ell*s*w + 1.  Scores every edge i with s_i (largest stack
    whose leftmost edge is i) and L_i (largest nesting-free sub-matching
    whose leftmost edge is i), both by a right-to-left DP with parent
    pointers.  A stack wins ties; otherwise some L_i exceeds ell*w and the
    recovered nesting-free sub-matching splits greedily into waves, giving
    either a big wave or a line of leftmost wave edges.
    """
    n = m.n
    if n < p.product + 1:
        raise SizeTooSmall(
            f"need at least {p.product + 1} edges for targets "
            f"({p.ell}, {p.s}, {p.w}), got {n}"
        )
    edges = m.edges
    s_score = [1] * n
    s_parent = [-1] * n
    l_score = [1] * n
    l_parent = [-1] * n
    for i in range(n - 1, -1, -1):
        ai, bi = edges[i]
        for j in range(i + 1, n):
            aj, bj = edges[j]
            if bj < bi:  # j nests inside i: i extends j's stack
                if s_score[j] + 1 > s_score[i]:
                    s_score[i] = s_score[j] + 1
                    s_parent[i] = j
            elif bj > bi:  # aligned or crossing: i extends j's landscape
                if l_score[j] + 1 > l_score[i]:
                    l_score[i] = l_score[j] + 1
                    l_parent[i] = j

    def chain(start: int, parents: list[int]) -> list[int]:
        out = [start]
        while parents[out[-1]] != -1:
            out.append(parents[out[-1]])
        return out

    best_stack = max(range(n), key=lambda i: s_score[i])
    if s_score[best_stack] >= p.s + 1:
        return _witness(m, StructureKind.STACK, chain(best_stack, s_parent))

    best_land = max(range(n), key=lambda i: l_score[i])
    assert l_score[best_land] >= p.ell * p.w + 1, "pigeonhole on (s_i, L_i) pairs failed"
    land = chain(best_land, l_parent)
    blocks = _decompose_landscape_indices(m, land)
    widest = max(blocks, key=len)
    if len(widest) >= p.w + 1:
        return _witness(m, StructureKind.WAVE, widest)
    leftmost = [b[0] for b in blocks]
    assert len(leftmost) >= p.ell + 1
    return _witness(m, StructureKind.LINE, leftmost)


# ---------------------------------------------------------------------------
# 3-uniform: relation matrix, exact clique search, semi-lines

# relation id = index into sorted word list, shared with the vectorized builder
TRIPLE_WORD_IDS = {rel.word: i for i, rel in enumerate(sorted(TripleRelation, key=lambda r: r.word))}
_ID_TO_RELATION = {i: TripleRelation(w) for w, i in TRIPLE_WORD_IDS.items()}


@lru_cache(maxsize=8)
def triple_relation_matrix(m: TripleMatching) -> np.ndarray:
    """(n, n) int8 matrix of relation ids for every triple pair (symmetric).

    Vectorized over all pairs: with both triples internally sorted and i
    preceding j by minimum, the interleaving word is determined by how many
    of j's elements fall below i's middle element and between i's middle and
    last elements.  The diagonal is -1.  Cached (read-only result) so the
    per-relation finders share one matrix per matching.
    """
    n = m.n
    ids = np.full((n, n), -1, dtype=np.int8)
    if n < 2:
        ids.setflags(write=False)
        return ids
    T = np.asarray(m.triples, dtype=np.int64)
    below_mid = (T[None, :, :] < T[:, None, 1:2]).sum(axis=2)
    below_top = (T[None, :, :] < T[:, None, 2:3]).sum(axis=2)
    lut = np.full((4, 4), -1, dtype=np.int8)
    for (c1, c2), w in _TRIPLE_WORDS.items():
        lut[c1, c2] = TRIPLE_WORD_IDS[w]
    c1 = below_mid
    c2 = below_top - below_mid
    iu = np.triu_indices(n, 1)
    vals = lut[c1[iu], c2[iu]]
    ids[iu] = vals
    ids[iu[1], iu[0]] = vals
    ids.setflags(write=False)
    return ids


def _adjacency_bitsets(allowed: np.ndarray) -> list[int]:
    # rows of a boolean matrix as python-int bitsets (bit j of adj[i] = allowed[i, j])
    return [
        int.from_bytes(np.packbits(row, bitorder="little").tobytes(), "little")
        for row in allowed
    ]


def _max_clique_bitset(adj: list[int], n: int) -> int:
    """Maximum clique as a bitmask; branch and bound with greedy coloring.

    Vertices are explored in index order (= left-endpoint order of the
    triples).  At every node the candidate set is greedily colored and
    candidates are expanded from the highest color down, pruning whenever
    size + color cannot beat the incumbent.
    """
    if n == 0:
        return 0
    best_mask = 0
    best = 0
    # greedy warm start from a few offsets
    for start in range(min(n, 4)):
        cand = ((1 << n) - 1) & ~((1 << start) - 1)
        cur = 0
        while cand:
            b = cand & -cand
            cur |= b
            cand &= adj[b.bit_length() - 1]
        if cur.bit_count() > best:
            best = cur.bit_count()
            best_mask = cur

    def expand(cur_mask: int, size: int, cand: int) -> None:
        nonlocal best, best_mask
        if size > best:
            best = size
            best_mask = cur_mask
        if not cand:
            return
        order: list[tuple[int, int]] = []
        uncolored = cand
        color = 0
        while uncolored:
            color += 1
            q = uncolored
            while q:
                b = q & -q
                v = b.bit_length() - 1
                order.append((v, color))
                uncolored ^= b
                q = (q ^ b) & ~adj[v] & uncolored
        for v, c in reversed(order):
            if size + c <= best:
                return
            b = 1 << v
            expand(cur_mask | b, size + 1, cand & adj[v])
            cand ^= b

    expand(0, 0, (1 << n) - 1)
    return best_mask


def _mask_indices(mask: int) -> list[int]:
    out = []
    while mask:
        b = mask & -mask
        out.append(b.bit_length() - 1)
        mask ^= b
    return out


def largest_homogeneous_triples(m: TripleMatching, rel: TripleRelation) -> EsWitness:
    """Exact maximum set of triples pairwise in the given relation."""
    if m.n == 0:
        return _triple_witness(m, rel, ())
    ids = triple_relation_matrix(m)
    allowed = ids == TRIPLE_WORD_IDS[rel.word]
    mask = _max_clique_bitset(_adjacency_bitsets(allowed), m.n)
    return _triple_witness(m, rel, _mask_indices(mask))


def largest_semi_line(m: TripleMatching) -> EsWitness:
    """Exact maximum set of triples pairwise aligned or engaged."""
    if m.n == 0:
        return _triple_witness(m, StructureKind.SEMI_LINE, ())
    ids = triple_relation_matrix(m)
    allowed = (ids == TRIPLE_WORD_IDS[TripleRelation.LL.word]) | (
        ids == TRIPLE_WORD_IDS[TripleRelation.LL_STAR.word]
    )
    mask = _max_clique_bitset(_adjacency_bitsets(allowed), m.n)
    return _triple_witness(m, StructureKind.SEMI_LINE, _mask_indices(mask))


def semi_line_to_line(sl: TripleMatching) -> TripleMatching:
    """A line of size >= ceil(k/2) inside a semi-line of size k.

    The engagement graph of a semi-line is a linear forest (asserted), so a
    maximum independent set, taken greedily along each path, is pairwise
    aligned and misses at most every other triple.
    """
    k = sl.n
    if k == 0:
        return sl
    adj: dict[int, list[int]] = {i: [] for i in range(k)}
    for i, j in itertools.combinations(range(k), 2):
        rel = classify_triple_pair(sl.triples[i], sl.triples[j])
        if rel is TripleRelation.LL_STAR:
            adj[i].append(j)
            adj[j].append(i)
        elif rel is not TripleRelation.LL:
            raise NotASemiLine(
                f"triples {i} and {j} are in relation {rel.word}, "
                "not an alignment or engagement"
            )
    assert all(len(nb) <= 2 for nb in adj.values()), "engagement graph degree > 2"
    # max independent set over the paths (no cycles can exist: the earliest
    # triple of a cycle would need two later engagement partners)
    keep: list[int] = []
    seen: set[int] = set()
    for i in range(k):
        if i in seen or len(adj[i]) == 2:
            continue
        # walk the path starting at an endpoint (or isolated vertex)
        path = [i]
        seen.add(i)
        while True:
            nxt = [v for v in adj[path[-1]] if v not in seen]
            if not nxt:
                break
            path.append(nxt[0])
            seen.add(nxt[0])
        keep.extend(path[::2])
    assert len(seen) == k, "engagement graph contains a cycle"
    line = sl.restrict(sorted(keep))
    assert line.n >= (k + 1) // 2
    return line


def es_witness_triples(m: TripleMatching, p: TripleEsParams) -> EsWitness:
    """A semi-line of size a_ll+1 or a pairwise R_xy family of size a_xy+1.

    Requires n >= product(a_xy) + 1.  Two-stage reduction to the graph case:
    first on the matching of (first, second) elements with row-product
    targets, then, restricted to the winning structure, on the matching of
    (second, third) elements with that row's targets.  Since a triple's two
    element pairs share the middle element, the pair of graph outcomes pins
    the triple relation exactly, with (line, line) yielding the semi-line.
    """
    n = m.n
    if n < p.product + 1:
        raise SizeTooSmall(
            f"need at least {p.product + 1} triples, got {n}"
        )
    first_pairs = Matching.from_pairs((t[0], t[1]) for t in m.triples)
    # first-pair left endpoints are the triple minima, so edge order = triple order
    rows = EsParams(p.row("l").product, p.row("s").product, p.row("w").product)
    stage1 = es_witness(first_pairs, rows)
    x = {StructureKind.LINE: "l", StructureKind.STACK: "s", StructureKind.WAVE: "w"}[
        stage1.kind  # type: ignore[index]
    ]
    selected = list(stage1.embedding)

    second_pairs_sorted = sorted(selected, key=lambda i: m.triples[i][1])
    stage2_host = Matching.from_pairs(
        (m.triples[i][1], m.triples[i][2]) for i in selected
    )
    stage2 = es_witness(stage2_host, p.row(x))
    y = {StructureKind.LINE: "l", StructureKind.STACK: "s", StructureKind.WAVE: "w"}[
        stage2.kind  # type: ignore[index]
    ]
    chosen = [second_pairs_sorted[j] for j in stage2.embedding]
    if (x, y) == ("l", "l"):
        return _triple_witness(m, StructureKind.SEMI_LINE, chosen)
    return _triple_witness(m, TripleRelation.from_index_pair(x, y), chosen)
