"""Random matching generation, exhaustive enumeration, and the experiment harness.

Randomness is counter-based and fully reproducible: every generator is a
numpy Philox engine keyed by the 64-bit pair (seed, stream index).  The
harness gives sample i the stream (seed, i), so serial and parallel runs of
the same configuration produce byte-identical reports.

Two sampling schemes produce the uniform distribution over all
(2n-1)!! matchings of size n: the online scheme repeatedly matches the first
free vertex with a uniformly random remaining one; the permutation scheme
chops a random permutation of [2n] into consecutive pairs.
"""

from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass
from typing import Callable, Iterator, Optional

import numpy as np

from . import patterns, twins
from .core import Edge, Matching, TripleMatching
from .errors import TooLarge, UnsupportedStatistic

Seed = int  # 64-bit unsigned; larger values are reduced mod 2**64

_MASK64 = (1 << 64) - 1


def stream(seed: Seed, index: int = 0) -> np.random.Generator:
    """Independent generator for sub-stream `index` of `seed`."""
    key = np.array([seed & _MASK64, index & _MASK64], dtype=np.uint64)
    return np.random.Generator(np.random.Philox(key=key))


# ---------------------------------------------------------------------------
# counting and enumeration

def count_matchings(n: int) -> int:
    """(2n-1)!!, the number of matchings on [2n], exactly."""
    if n < 0:
        raise ValueError("n must be >= 0")
    return math.prod(range(1, 2 * n, 2))


def count_triple_matchings(n: int) -> int:
    """(3n)! / (n! * 6^n), the number of 3-uniform matchings on [3n]."""
    if n < 0:
        raise ValueError("n must be >= 0")
    return math.factorial(3 * n) // (math.factorial(n) * 6**n)


_ENUMERATE_GUARD = 8


def enumerate_all(n: int) -> Iterator[Matching]:
    """All matchings on [2n], each exactly once, lexicographic by edge list."""
    if n < 0:
        raise ValueError("n must be >= 0")
    if n > _ENUMERATE_GUARD:
        raise TooLarge(f"enumeration is guarded at n <= {_ENUMERATE_GUARD}")

    def rec(free: tuple[int, ...], acc: list[Edge]) -> Iterator[Matching]:
        if not free:
            yield Matching(tuple(acc))
            return
        u = free[0]
        rest = free[1:]
        for k, v in enumerate(rest):
            acc.append(Edge(u, v))
            yield from rec(rest[:k] + rest[k + 1:], acc)
            acc.pop()

    return rec(tuple(range(1, 2 * n + 1)), [])


# ---------------------------------------------------------------------------
# samplers

class _Pool:
    """Free-vertex pool: O(1) removal by value, O(1) uniform draw."""

    __slots__ = ("items", "pos", "size")

    def __init__(self, total: int):
        self.items = list(range(1, total + 1))
        self.pos = list(range(-1, total))  # pos[v] = index of v in items
        self.size = total

    def remove(self, v: int) -> None:
        i = self.pos[v]
        last = self.items[self.size - 1]
        self.items[i] = last
        self.pos[last] = i
        self.size -= 1

    def draw(self, rng: np.random.Generator) -> int:
        v = self.items[int(rng.integers(self.size))]
        self.remove(v)
        return v


def sample_uniform(n: int, seed: Seed, index: int = 0) -> Matching:
    """Uniform random matching by the online scheme.

    Matches the first unmatched vertex with a uniformly random remaining
    vertex, 2n-1 then 2n-3 ... choices, hence exactly uniform over the
    (2n-1)!! matchings.  `index` selects a sub-stream of the seed.
    """
    return _sample_uniform(n, stream(seed, index))


def _sample_uniform(n: int, rng: np.random.Generator) -> Matching:
    if n < 1:
        raise ValueError("n must be >= 1")
    pool = _Pool(2 * n)
    matched = bytearray(2 * n + 2)
    first = 1
    edges = []
    for _ in range(n):
        while matched[first]:
            first += 1
        u = first
        pool.remove(u)
        matched[u] = 1
        v = pool.draw(rng)
        matched[v] = 1
        edges.append(Edge(u, v))  # u is the minimum free vertex, so u < v
    return Matching(tuple(edges))


def sample_via_permutation(n: int, seed: Seed, index: int = 0) -> Matching:
    """Uniform random matching by chopping a random permutation of [2n]."""
    return _sample_via_permutation(n, stream(seed, index))


def _sample_via_permutation(n: int, rng: np.random.Generator) -> Matching:
    if n < 1:
        raise ValueError("n must be >= 1")
    p = rng.permutation(2 * n) + 1
    return Matching.from_pairs(
        (int(p[2 * i]), int(p[2 * i + 1])) for i in range(n)
    )


def sample_uniform_triples(n: int, seed: Seed, index: int = 0) -> TripleMatching:
    """Uniform random 3-uniform matching by the online scheme.

    Matches the first free vertex with a uniformly random unordered pair of
    remaining free vertices, hence uniform over (3n)!/(n! 6^n) matchings.
    """
    return _sample_uniform_triples(n, stream(seed, index))


def _sample_uniform_triples(n: int, rng: np.random.Generator) -> TripleMatching:
    if n < 1:
        raise ValueError("n must be >= 1")
    pool = _Pool(3 * n)
    matched = bytearray(3 * n + 2)
    first = 1
    triples = []
    for _ in range(n):
        while matched[first]:
            first += 1
        u = first
        pool.remove(u)
        matched[u] = 1
        v = pool.draw(rng)
        matched[v] = 1
        w = pool.draw(rng)
        matched[w] = 1
        triples.append(tuple(sorted((u, v, w))))
    return TripleMatching.from_triples(triples)


_SAMPLERS: dict[str, Callable[[int, np.random.Generator], Matching]] = {
    "uniform": _sample_uniform,
    "permutation": _sample_via_permutation,
}


# ---------------------------------------------------------------------------
# statistics

def short_edge_count(m: Matching, length: int) -> int:
    """Number of edges whose span right - left is at most `length`."""
    if not 1 <= length <= max(2 * m.n - 1, 1):
        raise ValueError(f"length must be in [1, {2 * m.n - 1}]")
    return sum(1 for e in m.edges if e.right - e.left <= length)


KNOWN_STATISTICS = ("line", "stack", "wave", "short_edges", "twins")


@dataclass(frozen=True)
class ExperimentConfig:
    """What to sample and what to measure; fully determines a report."""

    n: int
    samples: int
    statistics: tuple[str, ...]
    seed: Seed = 0
    scheme: str = "uniform"
    m: Optional[int] = None        # span threshold for short_edges
    r: int = 2                     # twin multiplicity
    twin_method: str = "block"
    twin_strategy: str = "greedy"  # block-pair matcher: greedy or exact

    def __post_init__(self) -> None:
        if self.n < 1:
            raise ValueError("n must be >= 1")
        if self.samples < 1:
            raise ValueError("samples must be >= 1")
        if self.scheme not in _SAMPLERS:
            raise ValueError(f"scheme must be one of {sorted(_SAMPLERS)}")
        if not self.statistics:
            raise UnsupportedStatistic("no statistics requested")
        for s in self.statistics:
            if s not in KNOWN_STATISTICS:
                raise UnsupportedStatistic(
                    f"unknown statistic {s!r}; known: {', '.join(KNOWN_STATISTICS)}"
                )
        if "short_edges" in self.statistics:
            if self.m is None:
                raise ValueError("short_edges requires the m threshold")
            if not 1 <= self.m <= 2 * self.n:
                raise ValueError("m must be in [1, 2n]")
        if "twins" in self.statistics:
            if self.r < 2:
                raise ValueError("twin multiplicity r must be >= 2")
            if self.twin_method not in ("block", "split", "exact"):
                raise ValueError("twin_method must be block, split, or exact")
            if self.twin_strategy not in ("greedy", "exact"):
                raise ValueError("twin_strategy must be greedy or exact")


@dataclass(frozen=True)
class SummaryStats:
    mean: float
    std: float
    min: float
    max: float
    q05: float
    q50: float
    q95: float

    @classmethod
    def of(cls, values: np.ndarray) -> "SummaryStats":
        q05, q50, q95 = np.quantile(values, [0.05, 0.5, 0.95])
        return cls(
            mean=float(np.mean(values)),
            std=float(np.std(values)),  # population std
            min=float(np.min(values)),
            max=float(np.max(values)),
            q05=float(q05),
            q50=float(q50),
            q95=float(q95),
        )

    def to_json(self) -> dict:
        return {
            "mean": self.mean, "std": self.std, "min": self.min,
            "max": self.max, "q05": self.q05, "q50": self.q50, "q95": self.q95,
        }


@dataclass(frozen=True, eq=False)
class StatsReport:
    n: int
    samples: int
    seed: Seed
    scheme: str
    statistics: dict[str, SummaryStats]

    def __eq__(self, other: object) -> bool:
        return isinstance(other, StatsReport) and self.to_json() == other.to_json()

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "samples": self.samples,
            "seed": self.seed,
            "scheme": self.scheme,
            "statistics": {k: v.to_json() for k, v in self.statistics.items()},
        }

    def to_json_str(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True, separators=(",", ":"))

    def to_csv(self) -> str:
        buf = io.StringIO()
        cols = ["statistic", "mean", "std", "min", "max", "q05", "q50", "q95",
                "n", "samples", "seed", "scheme"]
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(cols)
        for name in sorted(self.statistics):
            s = self.statistics[name]
            writer.writerow([name, s.mean, s.std, s.min, s.max,
                             s.q05, s.q50, s.q95,
                             self.n, self.samples, self.seed, self.scheme])
        return buf.getvalue()


def default_split_m(n: int) -> int:
    """Default split threshold for the split twin method: about n/4, with
    n - m even as the recursion expects."""
    m = max(1, n // 4)
    if (n - m) % 2:
        m += 1
    return min(m, n) if n >= 1 else 1


def _twin_size(host: Matching, r: int, method: str, strategy: str) -> int:
    if method == "block":
        return twins.block_twins(
            host, twins.BlockTwinParams(r=r, strategy=strategy)
        ).size
    if method == "split":
        return twins.split_twins(host, r, default_split_m(host.n)).size
    return twins.exact_twins(host, r).size


def run_experiment(cfg: ExperimentConfig) -> StatsReport:
    """Draw cfg.samples matchings and aggregate the requested statistics.

    Sample i is drawn from sub-stream (cfg.seed, i), so reports are
    reproducible and independent of evaluation order.
    """
    values: dict[str, list[float]] = {name: [] for name in cfg.statistics}
    sampler = _SAMPLERS[cfg.scheme]
    for i in range(cfg.samples):
        m = sampler(cfg.n, stream(cfg.seed, i))
        for name in cfg.statistics:
            if name == "line":
                v = patterns.largest_line(m).size
            elif name == "stack":
                v = patterns.largest_stack(m).size
            elif name == "wave":
                v = patterns.largest_wave(m).size
            elif name == "short_edges":
                v = short_edge_count(m, cfg.m)  # type: ignore[arg-type]
            elif name == "twins":
                v = _twin_size(m, cfg.r, cfg.twin_method, cfg.twin_strategy)
            else:  # pragma: no cover - rejected by the config validator
                raise UnsupportedStatistic(name)
            values[name].append(float(v))
    summaries = {
        name: SummaryStats.of(np.asarray(vals)) for name, vals in values.items()
    }
    return StatsReport(
        n=cfg.n, samples=cfg.samples, seed=cfg.seed, scheme=cfg.scheme,
        statistics=summaries,
    )
