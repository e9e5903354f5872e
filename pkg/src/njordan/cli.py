"""Command line entry point.

Exit codes: 0 verified (or search/classify finished), 2 malformed input,
3 premise failed, 4 budget exceeded, 5 refutation of a proved statement.
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional

from njordan.catalog import CatalogError, UnknownLabel, load_catalog
from njordan.jordan import (
    DEFAULT_SAMPLES,
    DEFAULT_TUPLE_BUDGET,
    TupleBudgetExceeded,
    VerificationReport,
    sampled,
    verify_corollary25,
    verify_lemma22,
    verify_theorem23,
    verify_theorem24,
)
from njordan.maps import (
    DEFAULT_ENUM_BUDGET,
    BudgetExceeded,
    NJordanFilter,
    OrderIncompatible,
    enumerate_additive_maps,
    map_from_generator_images,
)
from njordan.rings import DEFAULT_CARRIER_CAP, MAX_N, RingError, char_exceeds
from njordan.search import (
    PROFILES,
    emit_report,
    render_classification_text,
    rows_json,
    run_classification,
    search_sweep,
)

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_PREMISE = 3
EXIT_BUDGET = 4
EXIT_BUG = 5

STATEMENTS = ("lemma22", "thm23", "thm24", "cor25")


class UsageError(ValueError):
    pass


@dataclass
class CliConfig:
    catalog: Optional[Path] = None
    out: Optional[Path] = None
    format: str = "json"
    seed: int = 0
    tuple_budget: int = DEFAULT_TUPLE_BUDGET
    enum_budget: int = DEFAULT_ENUM_BUDGET
    carrier_cap: int = DEFAULT_CARRIER_CAP
    n_values: list = field(default_factory=list)
    jobs: int = 1
    timings: bool = False

    def __post_init__(self):
        for name in ("tuple_budget", "enum_budget", "carrier_cap", "jobs"):
            if getattr(self, name) <= 0:
                raise UsageError(f"--{name.replace('_', '-')} must be positive")
        if not 0 <= self.seed < 2**64:
            raise UsageError("--seed must be an unsigned 64-bit integer")
        bad = [n for n in self.n_values if not 2 <= n <= MAX_N]
        if bad:
            raise UsageError(f"n values must lie in [2, {MAX_N}], got {bad}")

    @classmethod
    def from_args(cls, args, default_n):
        return cls(
            catalog=args.catalog,
            out=args.out,
            format=args.format,
            seed=args.seed,
            tuple_budget=args.tuple_budget,
            enum_budget=args.enum_budget,
            carrier_cap=args.carrier_cap,
            n_values=args.n or list(default_n),
            jobs=args.jobs,
            timings=args.timings,
        )

    def run_meta(self, catalog) -> dict:
        return {
            "catalog_hash": catalog.hash,
            "seed": self.seed,
            "n": self.n_values,
            "tuple_budget": self.tuple_budget,
            "enum_budget": self.enum_budget,
        }


def _int_list(text: str) -> list[int]:
    try:
        return [int(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")


def _pairs(text: str) -> list[tuple[str, str]]:
    out = []
    for item in text.split(","):
        a, sep, b = item.partition(":")
        if not sep or not a or not b:
            raise argparse.ArgumentTypeError(f"pairs look like A:B,C:D, got {item!r}")
        out.append((a, b))
    return out


def _common() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--catalog", type=Path, help="ring catalog JSON (default: built-in catalog)")
    p.add_argument("--out", type=Path, help="report path (default: stdout)")
    p.add_argument("--format", choices=("json", "text"), default="json")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--tuple-budget", type=int, default=DEFAULT_TUPLE_BUDGET)
    p.add_argument("--enum-budget", type=int, default=DEFAULT_ENUM_BUDGET)
    p.add_argument("--carrier-cap", type=int, default=DEFAULT_CARRIER_CAP)
    p.add_argument("--n", type=_int_list, help="comma-separated n values")
    p.add_argument("--jobs", type=int, default=os.cpu_count() or 1)
    p.add_argument("--timings", action="store_true", help="include elapsed_ms (breaks byte-identity)")
    p.add_argument("-v", "--verbose", action="store_true")
    return p


def build_parser() -> argparse.ArgumentParser:
    common = _common()
    parser = argparse.ArgumentParser(prog="njordan", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("ring-show", parents=[common], help="describe a catalog ring")
    p.add_argument("label")

    p = sub.add_parser("verify", parents=[common], help="verify one statement on a ring pair")
    p.add_argument("statement", choices=STATEMENTS)
    p.add_argument("domain")
    p.add_argument("codomain")
    p.add_argument("--map", type=_int_list, help="generator images of the map (lemma22, thm24)")
    p.add_argument("--branch", choices=("hom", "anti"), default="hom")
    p.add_argument("--mode", choices=("exhaustive", "sampled"), default="exhaustive")
    p.add_argument("--samples", type=int, default=DEFAULT_SAMPLES)

    for name, help_ in (("classify", "classification table"), ("search", "counterexample search")):
        p = sub.add_parser(name, parents=[common], help=help_)
        p.add_argument("--pairs", type=_pairs, help="A:B,C:D (default: all ordered pairs)")
        p.add_argument("--rings", help="comma-separated labels; pairs are all ordered pairs of them")
        if name == "search":
            p.add_argument("--profile", choices=PROFILES, required=True)
            p.add_argument("--max-findings", type=int)
    return parser


def char_summary(R, upto: int = 7) -> str:
    ok = [n for n in range(2, upto + 1) if char_exceeds(R, n)]
    if not ok:
        return "char>n fails for all n≥2"
    if len(ok) == upto - 1:
        return f"char>n for n=2..{upto}"
    last = ok[-1]
    span = "n=2" if last == 2 else f"n=2..{last}"
    return f"char>n for {span}, fails at n={last + 1}"


def ring_summary(R) -> str:
    parts = [
        f"size={R.carrier_size}",
        "unital" if R.unit is not None else "non-unital",
        "commutative" if R.commutative else "noncommutative",
        "basis=[" + ",".join(f"{g}:{d}" for g, d in zip(R.basis.generators, R.basis.orders)) + "]",
        char_summary(R),
    ]
    return f"{R.label}: " + " ".join(parts)


def _write(cfg: CliConfig, text: str) -> None:
    if cfg.out is None:
        sys.stdout.write(text)
    else:
        cfg.out.write_text(text, encoding="utf-8")


def _dumps(doc) -> str:
    return json.dumps(doc, indent=2, sort_keys=True, ensure_ascii=False) + "\n"


def _exit_for(outcomes) -> int:
    outcomes = set(outcomes)
    if "refuted" in outcomes:
        return EXIT_BUG
    if "budget_exceeded" in outcomes:
        return EXIT_BUDGET
    if "premise_failed" in outcomes:
        return EXIT_PREMISE
    return EXIT_OK


def _select_pairs(args, catalog):
    if args.pairs:
        pairs = args.pairs
    elif args.rings:
        labels = [s for s in args.rings.split(",") if s]
        pairs = [(a, b) for a in labels for b in labels]
    else:
        pairs = [(a, b) for a in catalog for b in catalog]
    for a, b in pairs:
        catalog.ring(a), catalog.ring(b)
    return pairs


def cmd_ring_show(args, cfg, catalog) -> int:
    _write(cfg, ring_summary(catalog.ring(args.label)) + "\n")
    return EXIT_OK


def _verify_reports(args, cfg, catalog, n) -> list[VerificationReport]:
    A, B = catalog.ring(args.domain), catalog.ring(args.codomain)
    st = args.statement
    if st == "thm23":
        return [verify_theorem23(A, B, n, cfg.enum_budget, cfg.tuple_budget)]
    if st == "cor25":
        return [verify_corollary25(A, B, n, args.branch, cfg.enum_budget, cfg.tuple_budget)]
    if args.map is not None:
        maps = [map_from_generator_images(A, B, args.map)]
    else:
        maps = list(enumerate_additive_maps(A, B, NJordanFilter(n), cfg.enum_budget))
    if st == "lemma22":
        mode = "exhaustive" if args.mode == "exhaustive" else sampled(args.samples, cfg.seed)
        return [verify_lemma22(h, n, mode, cfg.tuple_budget) for h in maps]
    return [verify_theorem24(h, n) for h in maps]


def cmd_verify(args, cfg, catalog) -> int:
    reports = []
    for n in cfg.n_values:
        try:
            reports.extend(_verify_reports(args, cfg, catalog, n))
        except (BudgetExceeded, TupleBudgetExceeded) as exc:
            reports.append(
                VerificationReport(
                    args.statement, (args.domain, args.codomain), n,
                    outcome="budget_exceeded", detail=str(exc),
                )
            )
    code = _exit_for(r.outcome for r in reports)
    if cfg.format == "json":
        doc = {
            "run": cfg.run_meta(catalog),
            "reports": [r.to_json(cfg.timings) for r in reports],
            "exit_code": code,
        }
        text = _dumps(doc)
    else:
        lines = []
        for r in reports:
            key = ",".join(map(str, r.witness["gen_images"])) if r.witness and "gen_images" in r.witness else "-"
            lines.append(
                f"{r.statement:<8} {r.rings[0]:<10} {r.rings[1]:<10} n={r.n:<3} "
                f"{r.outcome:<16} maps={r.maps_checked:<5} tuples={r.tuples_checked:<10} "
                f"witness={key} {r.detail or ''}".rstrip()
            )
        text = "\n".join(lines) + f"\nexit_code={code}\n"
    _write(cfg, text)
    return code


def cmd_classify(args, cfg, catalog) -> int:
    pairs = _select_pairs(args, catalog)
    rows = run_classification(catalog, pairs, cfg.n_values, cfg.enum_budget, cfg.tuple_budget, cfg.jobs)
    partial = any(r.status != "ok" for r in rows)
    if cfg.format == "json":
        text = _dumps({"run": cfg.run_meta(catalog), "rows": rows_json(rows), "partial": partial})
    else:
        text = render_classification_text(rows)
    _write(cfg, text)
    return EXIT_BUDGET if partial else EXIT_OK


def cmd_search(args, cfg, catalog) -> int:
    pairs = _select_pairs(args, catalog)
    findings, rows = search_sweep(
        catalog, args.profile, cfg.n_values, cfg.enum_budget, pairs,
        tuple_budget=cfg.tuple_budget, max_findings=args.max_findings, jobs=cfg.jobs,
    )
    partial = any(r.status == "budget_exceeded" for r in rows)
    run = dict(cfg.run_meta(catalog), profile=args.profile)
    text = emit_report(findings, cfg.format, None, run, {"rows": rows_json(rows), "partial": partial})
    _write(cfg, text)
    return EXIT_BUDGET if partial else EXIT_OK


COMMANDS = {
    "ring-show": (cmd_ring_show, (2,)),
    "verify": (cmd_verify, (2,)),
    "classify": (cmd_classify, (2, 3, 4)),
    "search": (cmd_search, (2, 3, 4, 5, 6)),
}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING, format="%(levelname)s %(message)s")
    fn, default_n = COMMANDS[args.command]
    try:
        cfg = CliConfig.from_args(args, default_n)
        catalog = load_catalog(cfg.catalog, cfg.carrier_cap)
        return fn(args, cfg, catalog)
    except (UsageError, UnknownLabel, CatalogError, RingError, OrderIncompatible, ValueError, OSError) as exc:
        print(f"njordan: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
