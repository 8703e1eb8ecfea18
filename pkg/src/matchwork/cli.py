"""Command-line front end.

Subcommands: analyze, construct, sample, enumerate, experiment, twins.
Inputs accept a word literal, a file path, or "-" for stdin; JSON payloads
carry a "schema": "matchwork/1" field.  Exit codes: 0 success, 2 bad input
or flags, 3 guard or size-contract violations.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from typing import Optional, Sequence

from . import constructions, patterns
from . import random as mrandom
from . import twins as mtwins
from .core import (
    Matching,
    TripleMatching,
    TripleRelation,
    parse_word,
    relation_census,
    to_word,
    triple_relation_census,
)
from .errors import MatchworkError, SizeTooSmall, TooLarge

SCHEMA = "matchwork/1"
SEED_ENV_VAR = "MATCHWORK_SEED"

USAGE_ERROR = 2
GUARD_ERROR = 3


def _default_seed() -> int:
    return int(os.environ.get(SEED_ENV_VAR, "0"))


def _read_input(spec: str) -> str:
    if spec == "-":
        return sys.stdin.read()
    if os.path.exists(spec):
        with open(spec, "r", encoding="utf-8") as fh:
            return fh.read()
    return spec


def _load_matching(spec: str, arity: int):
    text = _read_input(spec).strip()
    if text.startswith("{"):
        obj = json.loads(text)
        if arity == 2:
            return Matching.from_json(obj)
        return TripleMatching.from_json(obj)
    return parse_word(text, arity=arity)


def _emit(args, payload: dict) -> None:
    print(json.dumps(payload, sort_keys=True, separators=(",", ":")))


def _print(args, text: str) -> None:
    print(text)


# ---------------------------------------------------------------------------
# analyze

def cmd_analyze(args) -> int:
    m = _load_matching(args.input, args.arity)
    if args.arity == 2:
        census = relation_census(m)
        sizes = {
            "line": patterns.largest_line(m).size,
            "stack": patterns.largest_stack(m).size,
            "wave": patterns.largest_wave(m).size,
        }
        witness = None
        if args.es:
            targets = _parse_ints(args.es, 3, "--es expects ell,s,w")
            witness = patterns.es_witness(m, patterns.EsParams(*targets))
        if args.format == "json":
            payload = {
                "schema": SCHEMA,
                "n": m.n,
                "census": {rel.value: c for rel, c in census.items()},
                "largest": sizes,
            }
            if witness is not None:
                payload["witness"] = witness.to_json()
            _emit(args, payload)
        else:
            _print(args, f"n={m.n}")
            _print(args, " ".join(f"{rel.value}={c}" for rel, c in census.items()))
            _print(args, " ".join(f"{k}={v}" for k, v in sizes.items()))
            if witness is not None:
                _print(
                    args,
                    f"witness kind={patterns.kind_label(witness.kind)} "
                    f"size={witness.size} embedding={list(witness.embedding)}",
                )
    else:
        census = triple_relation_census(m)
        maxima = {
            rel.word: patterns.largest_homogeneous_triples(m, rel).size
            for rel in TripleRelation
        }
        semi = patterns.largest_semi_line(m).size
        witness = None
        if args.es:
            targets = _parse_ints(args.es, 9, "--es expects nine a_xy values")
            witness = patterns.es_witness_triples(
                m, patterns.TripleEsParams(*targets)
            )
        if args.format == "json":
            payload = {
                "schema": SCHEMA,
                "n": m.n,
                "census": {rel.word: c for rel, c in census.items()},
                "largest": dict(sorted(maxima.items())),
                "semi_line": semi,
            }
            if witness is not None:
                payload["witness"] = witness.to_json()
            _emit(args, payload)
        else:
            _print(args, f"n={m.n}")
            _print(args, " ".join(f"{rel.word}={c}" for rel, c in sorted(census.items(), key=lambda kv: kv[0].word)))
            _print(args, " ".join(f"{w}={v}" for w, v in sorted(maxima.items())))
            _print(args, f"semi-line={semi}")
            if witness is not None:
                _print(
                    args,
                    f"witness kind={patterns.kind_label(witness.kind)} "
                    f"size={witness.size} embedding={list(witness.embedding)}",
                )
    return 0


def _parse_ints(text: str, count: int, message: str) -> list[int]:
    try:
        values = [int(v) for v in text.replace(",", " ").split()]
    except ValueError:
        raise ValueError(message)
    if len(values) != count:
        raise ValueError(message)
    return values


# ---------------------------------------------------------------------------
# construct

def cmd_construct(args) -> int:
    kind = args.kind
    if kind == "line":
        m = constructions.make_line(_one_int(args.params, kind))
    elif kind == "stack":
        m = constructions.make_stack(_one_int(args.params, kind))
    elif kind == "wave":
        m = constructions.make_wave(_one_int(args.params, kind))
    elif kind == "stacked-waves":
        if len(args.params) != 3:
            raise ValueError("stacked-waves expects ell s w")
        m = constructions.stacked_waves(*(int(v) for v in args.params))
    elif kind == "from-permutation":
        if not args.params:
            raise ValueError("from-permutation expects the permutation entries")
        m = constructions.from_permutation([int(v) for v in args.params])
    elif kind == "triple-optimality-16":
        if args.params:
            raise ValueError("triple-optimality-16 takes no parameters")
        m = constructions.triple_optimality_16()
    else:  # pragma: no cover - argparse restricts choices
        raise ValueError(f"unknown construction {kind!r}")
    _emit_matching(args, m)
    return 0


def _one_int(params: list[str], kind: str) -> int:
    if len(params) != 1:
        raise ValueError(f"{kind} expects exactly one size parameter")
    return int(params[0])


def _emit_matching(args, m) -> None:
    if args.format == "json":
        payload = {"schema": SCHEMA}
        payload.update(m.to_json())
        _emit(args, payload)
    else:
        _print(args, to_word(m))


# ---------------------------------------------------------------------------
# sample / enumerate

def cmd_sample(args) -> int:
    if args.n < 1:
        raise ValueError("--n must be >= 1")
    if args.count < 1:
        raise ValueError("--count must be >= 1")
    if args.arity == 3 and args.scheme != "uniform":
        raise ValueError("the 3-uniform sampler supports only the uniform scheme")
    for i in range(args.count):
        if args.arity == 2:
            if args.scheme == "uniform":
                m = mrandom.sample_uniform(args.n, args.seed, index=i)
            else:
                m = mrandom.sample_via_permutation(args.n, args.seed, index=i)
        else:
            m = mrandom.sample_uniform_triples(args.n, args.seed, index=i)
        _emit_matching(args, m)
    return 0


def cmd_enumerate(args) -> int:
    for m in mrandom.enumerate_all(args.n):
        _emit_matching(args, m)
    return 0


# ---------------------------------------------------------------------------
# experiment

def cmd_experiment(args) -> int:
    stats = tuple(s.strip() for s in args.stats.split(",") if s.strip())
    cfg = mrandom.ExperimentConfig(
        n=args.n,
        samples=args.samples,
        statistics=stats,
        seed=args.seed,
        scheme=args.scheme,
        m=args.m,
        r=args.r,
        twin_method=args.twin_method,
        twin_strategy=args.strategy,
    )
    report = mrandom.run_experiment(cfg)
    _write_report(args, report)
    return 0


def _write_report(args, report: mrandom.StatsReport) -> None:
    if args.format == "csv":
        text = report.to_csv()
    else:
        payload = {"schema": SCHEMA}
        payload.update(report.to_json())
        text = json.dumps(payload, sort_keys=True, separators=(",", ":")) + "\n"
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


# ---------------------------------------------------------------------------
# twins

def cmd_twins(args) -> int:
    if args.input is None and args.samples is None:
        raise ValueError("twins needs either --input or --n with --samples")
    if args.input is not None:
        host = _load_matching(args.input, 2)
        ts = _find_twins(host, args)
        payload = {"schema": SCHEMA}
        payload.update(ts.to_json(host, args.method))
        _emit(args, payload)
        return 0
    if args.n is None:
        raise ValueError("sampling mode needs --n")
    cfg = mrandom.ExperimentConfig(
        n=args.n,
        samples=args.samples,
        statistics=("twins",),
        seed=args.seed,
        scheme=args.scheme,
        r=args.r,
        twin_method=args.method,
        twin_strategy=args.strategy,
    )
    report = mrandom.run_experiment(cfg)
    _write_report(args, report)
    return 0


def _find_twins(host: Matching, args) -> mtwins.TwinSet:
    if args.method == "exact":
        return mtwins.exact_twins(host, args.r)
    if args.method == "block":
        params = mtwins.BlockTwinParams(
            r=args.r, block_size=args.block_size, strategy=args.strategy
        )
        return mtwins.block_twins(host, params)
    m = args.m if args.m is not None else mrandom.default_split_m(host.n)
    return mtwins.split_twins(host, args.r, m)


# ---------------------------------------------------------------------------
# parser

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="matchwork",
        description="Ordered matchings: analysis, constructions, sampling, twins.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", help="relation census and largest substructures")
    p.add_argument("input", help="word, file path, or - for stdin")
    p.add_argument("--arity", type=int, choices=(2, 3), default=2)
    p.add_argument("--es", help="targets for a guaranteed witness: ell,s,w "
                   "(arity 2) or nine a_xy values (arity 3)")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("construct", help="canonical and extremal matchings")
    p.add_argument("kind", choices=("line", "stack", "wave", "stacked-waves",
                                    "from-permutation", "triple-optimality-16"))
    p.add_argument("params", nargs="*", help="sizes or permutation entries")
    p.add_argument("--format", choices=("word", "json"), default="word")
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("sample", help="random matchings")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--count", type=int, default=1)
    p.add_argument("--seed", type=int, default=_default_seed())
    p.add_argument("--scheme", choices=("uniform", "permutation"), default="uniform")
    p.add_argument("--arity", type=int, choices=(2, 3), default=2)
    p.add_argument("--format", choices=("word", "json"), default="word")
    p.set_defaults(func=cmd_sample)

    p = sub.add_parser("enumerate", help="all matchings of a given size")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--format", choices=("word", "json"), default="word")
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("experiment", help="Monte Carlo statistics")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--samples", type=int, required=True)
    p.add_argument("--stats", required=True,
                   help="comma list from: line,stack,wave,short_edges,twins")
    p.add_argument("--seed", type=int, default=_default_seed())
    p.add_argument("--scheme", choices=("uniform", "permutation"), default="uniform")
    p.add_argument("--m", type=int, help="span threshold for short_edges")
    p.add_argument("--r", type=int, default=2, help="twin multiplicity")
    p.add_argument("--twin-method", choices=("block", "split", "exact"),
                   default="block")
    p.add_argument("--strategy", choices=("greedy", "exact"), default="greedy")
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.add_argument("--output", help="write the report to a file")
    p.set_defaults(func=cmd_experiment)

    p = sub.add_parser("twins", help="find twins in one matching or sample many")
    p.add_argument("--input", help="word, file path, or - for stdin")
    p.add_argument("--method", choices=("exact", "block", "split"), default="block")
    p.add_argument("--r", type=int, default=2)
    p.add_argument("--strategy", choices=("greedy", "exact"), default="greedy")
    p.add_argument("--block-size", type=int, help="block size for the block method")
    p.add_argument("--m", type=int, help="split threshold for the split method")
    p.add_argument("--n", type=int, help="sampling mode: matching size")
    p.add_argument("--samples", type=int, help="sampling mode: sample count")
    p.add_argument("--seed", type=int, default=_default_seed())
    p.add_argument("--scheme", choices=("uniform", "permutation"), default="uniform")
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.add_argument("--output", help="write the report to a file")
    p.set_defaults(func=cmd_twins)

    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (SizeTooSmall, TooLarge) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return GUARD_ERROR
    except (MatchworkError, ValueError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE_ERROR


if __name__ == "__main__":
    sys.exit(main())
