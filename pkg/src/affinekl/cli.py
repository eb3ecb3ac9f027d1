"""Command-line front end: compute, verify, bench, with a persistent cache.

The cache file is line-oriented text: a JSON header naming the root system,
then one JSON record per canonical element keyed by an exact encoding of the
anchor alcove's affine element.  Records are appended as they are computed;
a partial trailing record (crash mid-write) is discarded on load, and a file
whose header does not match the requested system is ignored.

Exit codes: 0 success, 2 invalid input, 3 mismatch between the two methods.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from fractions import Fraction

from .alcove import AffineElement, Alcove, a_plus, facet_of
from .heckemod import Memo, NVector, canonical_alcove
from .laurent import LaurentPoly
from .pathops import MVector, PathEngine
from .rootdata import RootSystem, pt_add, pt_sub
from .verify import run_families

CACHE_ENV_VAR = "AFFINEKL_CACHE"
CACHE_FORMAT_VERSION = 1


class InputError(ValueError):
    pass


# -- exact JSON encoding -------------------------------------------------------


def _enc_frac(x: Fraction):
    return int(x) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def _dec_frac(v) -> Fraction:
    return Fraction(v)


def _enc_element(el: AffineElement) -> dict:
    return {
        "m": [[_enc_frac(x) for x in row] for row in el.linear],
        "t": [_enc_frac(x) for x in el.trans],
    }


def _dec_element(data: dict) -> AffineElement:
    return AffineElement(
        tuple(tuple(_dec_frac(x) for x in row) for row in data["m"]),
        tuple(_dec_frac(x) for x in data["t"]),
    )


def _enc_record(alcove: Alcove, value: NVector) -> dict:
    return {
        "alcove": _enc_element(alcove.element),
        "terms": [
            [_enc_element(a.element), p.to_pairs()]
            for a, p in sorted(value.items(), key=lambda t: (t[0].length(), t[0].strips))
        ],
    }


def _dec_record(rs: RootSystem, data: dict) -> tuple[Alcove, NVector]:
    alcove = Alcove(rs, _dec_element(data["alcove"]))
    terms = [
        (Alcove(rs, _dec_element(a)), LaurentPoly.from_pairs(pairs))
        for a, pairs in data["terms"]
    ]
    return alcove, NVector(terms)


# -- the cache file --------------------------------------------------------------


class CacheFile:
    """Line-oriented persistent memo, append-on-insert."""

    def __init__(self, path: str, rs: RootSystem):
        self.path = path
        self.rs = rs
        self.usable = True
        self._handle = None

    def header(self) -> dict:
        return {
            "format_version": CACHE_FORMAT_VERSION,
            "type": self.rs.letter,
            "rank": self.rs.rank,
            "level": self.rs.level,
        }

    def load_into(self, memo: Memo) -> int:
        if not os.path.exists(self.path):
            return 0
        loaded = 0
        with open(self.path, "r", encoding="utf-8") as fh:
            first = fh.readline()
            try:
                header = json.loads(first)
            except json.JSONDecodeError:
                header = None
            if header != self.header():
                print(
                    f"warning: cache {self.path} does not match "
                    f"{self.rs.label} level {self.rs.level}; ignoring it",
                    file=sys.stderr,
                )
                self.usable = False
                return 0
            for line in fh:
                try:
                    alcove, value = _dec_record(self.rs, json.loads(line))
                except (json.JSONDecodeError, KeyError, ValueError):
                    break  # partial trailing record: discard and stop
                memo.preload(alcove, value)
                loaded += 1
        return loaded

    def attach(self, memo: Memo) -> None:
        """Start appending every new canonical element to the file."""
        if not self.usable:
            return
        fresh = not os.path.exists(self.path)
        self._handle = open(self.path, "a", encoding="utf-8")
        if fresh:
            self._handle.write(json.dumps(self.header(), sort_keys=True) + "\n")
            self._handle.flush()
        memo.on_insert = self._on_insert

    def _on_insert(self, alcove: Alcove, value: NVector) -> None:
        self._handle.write(json.dumps(_enc_record(alcove, value), sort_keys=True) + "\n")
        self._handle.flush()

    def close(self) -> None:
        if self._handle is not None:
            self._handle.close()
            self._handle = None


# -- shared plumbing ---------------------------------------------------------------


def _parse_weight(text: str, rs: RootSystem, what: str):
    try:
        coords = tuple(int(part) for part in text.split(","))
    except ValueError as exc:
        raise InputError(f"cannot parse {what} {text!r}") from exc
    if len(coords) != rs.rank:
        raise InputError(f"{what} {text!r} has {len(coords)} coordinates, need {rs.rank}")
    if any(c < 0 for c in coords):
        raise InputError(f"{what} {text!r} is not dominant")
    return tuple(Fraction(c) for c in coords)


def _build_system(args) -> RootSystem:
    try:
        rs = RootSystem.from_label(args.type, args.level)
    except ValueError as exc:
        raise InputError(str(exc)) from exc
    if rs.level_warning:
        print(
            f"warning: level {rs.level} is not above the dual Coxeter number "
            f"{rs.dual_coxeter} of {rs.label}",
            file=sys.stderr,
        )
    return rs


def _compute_via_path(rs: RootSystem, mu, memo: Memo) -> MVector:
    return PathEngine(rs, memo).compute_n(mu)


def _compute_via_alcove(rs: RootSystem, mu, memo: Memo) -> MVector:
    shifted = pt_add(mu, rs.rho)
    oracle = canonical_alcove(rs, a_plus(facet_of(rs, shifted)), memo)
    return PathEngine(rs, Memo()).from_alcove_level(oracle, shifted)


def _entries(rs: RootSystem, x: MVector, lam=None) -> list[dict]:
    engine = PathEngine(rs, Memo())
    if lam is not None:
        poly = x.coefficient(pt_add(lam, rs.rho))
        return [{"lambda": [int(c) for c in lam], "poly": poly.to_pairs()}]
    rows = []
    for point, poly in x.items():
        weight = pt_sub(point, rs.rho)
        rows.append(
            (
                engine.upper_alcove(point).length(),
                [int(c) for c in weight],
                poly,
            )
        )
    rows.sort(key=lambda r: (-r[0], r[1]))
    return [{"lambda": w, "poly": p.to_pairs()} for _, w, p in rows]


def _emit(payload: dict, fmt: str) -> None:
    if fmt == "json":
        print(json.dumps(payload, sort_keys=False))
        return
    mu = ",".join(str(c) for c in payload["mu"])
    print(f"# type={payload['type']}\tlevel={payload['level']}\tmu={mu}")
    for entry in payload["entries"]:
        lam = ",".join(str(c) for c in entry["lambda"])
        print(f"{lam}\t{json.dumps(entry['poly'])}")


# -- subcommands ---------------------------------------------------------------------


def cmd_compute(args) -> int:
    rs = _build_system(args)
    mu = _parse_weight(args.mu, rs, "--mu")
    lam = _parse_weight(args.lam, rs, "--lambda") if args.lam is not None else None

    cache_path = args.cache or os.environ.get(CACHE_ENV_VAR)
    cache = None
    memo = Memo()
    if cache_path and args.method != "both":
        cache = CacheFile(cache_path, rs)
        cache.load_into(memo)
        cache.attach(memo)
    try:
        if args.method == "path":
            result = _compute_via_path(rs, mu, memo)
        elif args.method == "alcove":
            result = _compute_via_alcove(rs, mu, memo)
        else:
            result = _compute_via_path(rs, mu, Memo())
            other = _compute_via_alcove(rs, mu, Memo())
            if not result.equal_terms(other):
                print(
                    f"method mismatch for mu={args.mu}: path {result} "
                    f"vs alcove {other}",
                    file=sys.stderr,
                )
                return 3
            if cache_path:
                cache = CacheFile(cache_path, rs)
                cache.load_into(memo)
                cache.attach(memo)
                PathEngine(rs, memo).compute_n(mu)
    finally:
        if cache is not None:
            cache.close()

    payload = {
        "type": rs.label,
        "level": rs.level,
        "mu": [int(c) for c in mu],
        "entries": _entries(rs, result, lam),
    }
    _emit(payload, args.format)
    return 0


def cmd_verify(args) -> int:
    rs = _build_system(args)
    reports = run_families(rs, args.bound, inject_fault=args.self_test_break)
    failed = 0
    for report in reports:
        line = {
            "family": report["name"],
            "cases": report["cases"],
            "failed": len(report["failures"]),
            "counterexamples": report["failures"][:5],
        }
        print(json.dumps(line, sort_keys=False))
        failed += len(report["failures"])
    print(json.dumps({"ok": failed == 0, "total_failures": failed}))
    return 0 if failed == 0 else 1


def cmd_bench(args) -> int:
    rs = _build_system(args)
    mu = _parse_weight(args.mu, rs, "--mu")

    path_memo = Memo()
    t0 = time.perf_counter()
    via_path = _compute_via_path(rs, mu, path_memo)
    t1 = time.perf_counter()

    alcove_memo = Memo()
    t2 = time.perf_counter()
    via_alcove = _compute_via_alcove(rs, mu, alcove_memo)
    t3 = time.perf_counter()

    agree = via_path.equal_terms(via_alcove)
    payload = {
        "type": rs.label,
        "level": rs.level,
        "mu": [int(c) for c in mu],
        "path": {
            "canonical_elements": path_memo.inserts,
            "terms": path_memo.terms_inserted,
            "seconds": round(t1 - t0, 6),
        },
        "alcove": {
            "canonical_elements": alcove_memo.inserts,
            "terms": alcove_memo.terms_inserted,
            "seconds": round(t3 - t2, 6),
        },
        "element_ratio": round(path_memo.inserts / alcove_memo.inserts, 6),
        "agree": agree,
    }
    print(json.dumps(payload, sort_keys=False))
    return 0 if agree else 3


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="affinekl",
        description="Parabolic affine Kazhdan-Lusztig polynomials by "
        "wall-crossing paths, with an alcove-recursion cross-check.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--type", required=True, help='Cartan label, e.g. "A2"')
        p.add_argument("--level", required=True, type=int)

    p = sub.add_parser("compute", help="compute the polynomials for a weight")
    common(p)
    p.add_argument("--mu", required=True, help='dominant weight, e.g. "1,2"')
    p.add_argument("--lambda", dest="lam", default=None,
                   help="report only this weight's polynomial")
    p.add_argument("--method", choices=("path", "alcove", "both"), default="path")
    p.add_argument("--format", choices=("json", "tsv"), default="json")
    p.add_argument("--cache", default=None,
                   help=f"cache file (default from ${CACHE_ENV_VAR})")
    p.set_defaults(func=cmd_compute)

    p = sub.add_parser("verify", help="run the cross-verification suites")
    common(p)
    p.add_argument("--bound", required=True, type=int,
                   help="weight-coordinate bound of the verified region")
    p.add_argument("--self-test-break", action="store_true",
                   help="inject a fault to exercise failure reporting")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("bench", help="compare the two methods' work on one weight")
    common(p)
    p.add_argument("--mu", required=True)
    p.set_defaults(func=cmd_bench)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
