"""Catalog sweeps: classification tables, counterexample hunts, report files."""

from __future__ import annotations

import json
import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass
from pathlib import Path
from typing import Iterable, Optional, Sequence

from njordan.catalog import Catalog
from njordan.jordan import (
    DEFAULT_TUPLE_BUDGET,
    TupleBudgetExceeded,
    is_n_jordan,
    n_hom_witness,
)
from njordan.maps import (
    DEFAULT_ENUM_BUDGET,
    BudgetExceeded,
    NJordanFilter,
    enumerate_additive_maps,
    map_from_generator_images,
)
from njordan.rings import char_exceeds

log = logging.getLogger(__name__)

PROFILES = ("char_violated", "no_unit", "noncommutative")


@dataclass
class SearchTask:
    pairs: list
    n_range: tuple[int, int] = (2, 6)
    statements: tuple = ("lemma22", "thm23", "thm24", "cor25")
    counterexample_profiles: tuple = PROFILES
    enum_budget: int = DEFAULT_ENUM_BUDGET
    tuple_budget: int = DEFAULT_TUPLE_BUDGET

    def __post_init__(self):
        lo, hi = self.n_range
        if not 2 <= lo <= hi <= 6:
            raise ValueError(f"n range {self.n_range} outside [2, 6]")
        unknown = set(self.counterexample_profiles) - set(PROFILES)
        if unknown:
            raise ValueError(f"unknown profiles {sorted(unknown)}")


@dataclass
class Finding:
    kind: str  # verification | counterexample | premise_failure
    statement: str
    rings: tuple[str, str]
    n: int
    witness: dict
    narrative: str

    def to_json(self) -> dict:
        out = asdict(self)
        out["rings"] = list(self.rings)
        return out


@dataclass
class ClassificationRow:
    domain: str
    codomain: str
    n: int
    additive: int = 0
    jordan: int = 0
    n_jordan: int = 0
    n_hom: int = 0
    anti_n_hom: int = 0
    status: str = "ok"
    detail: Optional[str] = None


@dataclass
class SearchRow:
    domain: str
    codomain: str
    n: int
    profile: str
    status: str  # searched | profile_mismatch | budget_exceeded
    n_jordan: int = 0
    counterexamples: int = 0
    near_misses: int = 0
    detail: Optional[str] = None


def all_pairs(catalog: Catalog) -> list[tuple[str, str]]:
    return [(a, b) for a in catalog for b in catalog]


def _n_values(n_range) -> list[int]:
    if isinstance(n_range, tuple) and len(n_range) == 2:
        return list(range(n_range[0], n_range[1] + 1))
    return list(n_range)


def _run_rows(fn, jobs: int, args: list) -> list:
    if jobs > 1 and len(args) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            return list(pool.map(fn, *zip(*args)))
    return [fn(*a) for a in args]


def _classify_row(A, B, n, enum_budget, tuple_budget) -> ClassificationRow:
    row = ClassificationRow(A.label, B.label, n)
    try:
        for h in enumerate_additive_maps(A, B, budget=enum_budget):
            row.additive += 1
            row.jordan += is_n_jordan(h, 2)
            row.n_jordan += is_n_jordan(h, n)
            row.n_hom += n_hom_witness(h, n, False, tuple_budget) is None
            row.anti_n_hom += n_hom_witness(h, n, True, tuple_budget) is None
    except (BudgetExceeded, TupleBudgetExceeded) as exc:
        row = ClassificationRow(A.label, B.label, n, status="budget_exceeded", detail=str(exc))
    return row


def run_classification(
    catalog: Catalog,
    pairs: Optional[Sequence[tuple[str, str]]] = None,
    n_range=(2, 4),
    enum_budget: int = DEFAULT_ENUM_BUDGET,
    tuple_budget: int = DEFAULT_TUPLE_BUDGET,
    jobs: int = 1,
) -> list[ClassificationRow]:
    """Count additive, Jordan, n-Jordan, n-hom and anti-n-hom maps for every
    (A, B, n); rows ordered by pair order then n. Budget overruns mark the row
    instead of aborting the sweep."""
    pairs = all_pairs(catalog) if pairs is None else pairs
    args = [
        (catalog.ring(a), catalog.ring(b), n, enum_budget, tuple_budget)
        for a, b in pairs
        for n in _n_values(n_range)
    ]
    return _run_rows(_classify_row, jobs, args)


def profile_violated(profile: str, A, B, n: int) -> bool:
    if profile == "char_violated":
        return not char_exceeds(B, n)
    if profile == "no_unit":
        return A.unit is None
    if profile == "noncommutative":
        return not (A.commutative and B.commutative)
    raise ValueError(f"unknown profile {profile!r}")


def _statement_for(profile, A, B) -> str:
    if profile == "noncommutative":
        return "thm23"
    if profile == "no_unit":
        return "thm24"
    return "thm23" if A.commutative and B.commutative else "cor25"


def _search_row(A, B, n, profile, enum_budget, tuple_budget, max_findings):
    row = SearchRow(A.label, B.label, n, profile, "searched")
    found = []
    if not profile_violated(profile, A, B, n):
        row.status = "profile_mismatch"
        row.detail = f"{profile} hypothesis holds for ({A.label}, {B.label}, n={n})"
        log.info("profile mismatch: %s", row.detail)
        return row, found
    try:
        for h in enumerate_additive_maps(A, B, NJordanFilter(n), enum_budget):
            row.n_jordan += 1
            hom_w = n_hom_witness(h, n, False, tuple_budget)
            anti_w = n_hom_witness(h, n, True, tuple_budget)
            if hom_w is not None and anti_w is not None:
                row.counterexamples += 1
                if max_findings is None or len(found) < max_findings:
                    found.append(
                        Finding(
                            "counterexample",
                            _statement_for(profile, A, B),
                            (A.label, B.label),
                            n,
                            {"gen_images": list(h.key), "tuple": list(hom_w), "anti_tuple": list(anti_w)},
                            f"{n}-Jordan map {list(h.key)} fails both the {n}-hom and the"
                            f" anti-{n}-hom identity ({profile})",
                        )
                    )
            elif hom_w is not None or anti_w is not None:
                row.near_misses += 1
                log.debug("near miss %s on (%s, %s, n=%d)", h.key, A.label, B.label, n)
    except (BudgetExceeded, TupleBudgetExceeded) as exc:
        row.status = "budget_exceeded"
        row.detail = str(exc)
    return row, found


def search_sweep(
    catalog: Catalog,
    profile: str,
    n_range=(2, 6),
    budget: int = DEFAULT_ENUM_BUDGET,
    pairs: Optional[Sequence[tuple[str, str]]] = None,
    tuple_budget: int = DEFAULT_TUPLE_BUDGET,
    max_findings: Optional[int] = None,
    jobs: int = 1,
) -> tuple[list[Finding], list[SearchRow]]:
    pairs = all_pairs(catalog) if pairs is None else pairs
    args = [
        (catalog.ring(a), catalog.ring(b), n, profile, budget, tuple_budget, max_findings)
        for a, b in pairs
        for n in _n_values(n_range)
    ]
    results = _run_rows(_search_row, jobs, args)
    findings = [f for _, fs in results for f in fs]
    return findings, [r for r, _ in results]


def find_counterexamples(
    catalog: Catalog,
    profile: str,
    n_range=(2, 6),
    budget: int = DEFAULT_ENUM_BUDGET,
    pairs: Optional[Sequence[tuple[str, str]]] = None,
    **kw,
) -> list[Finding]:
    """n-Jordan maps that are neither n-homs nor anti-n-homs, on pairs where
    the profile's hypothesis fails."""
    return search_sweep(catalog, profile, n_range, budget, pairs, **kw)[0]


def replay(catalog: Catalog, finding: Finding, tuple_budget: int = DEFAULT_TUPLE_BUDGET) -> dict:
    A, B = (catalog.ring(label) for label in finding.rings)
    h = map_from_generator_images(A, B, finding.witness["gen_images"])
    n = finding.n
    flags = {
        "is_n_jordan": is_n_jordan(h, n),
        "is_n_hom": n_hom_witness(h, n, False, tuple_budget) is None,
        "is_anti_n_hom": n_hom_witness(h, n, True, tuple_budget) is None,
    }
    xs = finding.witness.get("tuple")
    if xs is not None:
        lhs = h(A.prod(xs))
        rhs = B.prod([h(x) for x in xs])
        flags["tuple_fails_hom"] = lhs != rhs
    return flags


# --- emission -------------------------------------------------------------


def _dumps(doc) -> str:
    return json.dumps(doc, indent=2, sort_keys=True, ensure_ascii=False) + "\n"


def _table(headers: Sequence[str], rows: Iterable[Sequence]) -> str:
    rows = [[("-" if v is None else str(v)) for v in r] for r in rows]
    widths = [max([len(h)] + [len(r[i]) for r in rows]) for i, h in enumerate(headers)]
    fmt = "  ".join(f"{{:<{w}}}" for w in widths)
    lines = [fmt.format(*headers), fmt.format(*("-" * w for w in widths))]
    lines += [fmt.format(*r) for r in rows]
    return "\n".join(line.rstrip() for line in lines) + "\n"


def render_findings_text(findings: Sequence[Finding], run: dict) -> str:
    head = "".join(f"# {k}: {run[k]}\n" for k in sorted(run))
    body = _table(
        ["kind", "statement", "A", "B", "n", "gen_images", "narrative"],
        [
            (f.kind, f.statement, f.rings[0], f.rings[1], f.n,
             ",".join(map(str, f.witness.get("gen_images", []))), f.narrative)
            for f in findings
        ],
    )
    return head + body + f"# findings: {len(findings)}\n"


def render_classification_text(rows: Sequence[ClassificationRow]) -> str:
    return _table(
        ["A", "B", "n", "additive", "jordan", "n_jordan", "n_hom", "anti_n_hom", "status"],
        [
            (r.domain, r.codomain, r.n, r.additive, r.jordan, r.n_jordan, r.n_hom, r.anti_n_hom, r.status)
            for r in rows
        ],
    )


def emit_report(
    findings: Sequence[Finding],
    format: str = "json",
    path=None,
    run: Optional[dict] = None,
    extra: Optional[dict] = None,
) -> str:
    """Serialise findings deterministically; write to ``path`` when given and
    return the text either way."""
    run = dict(run or {})
    if format == "json":
        doc = {"run": run, "findings": [f.to_json() for f in findings]}
        doc.update(extra or {})
        text = _dumps(doc)
    elif format == "text":
        text = render_findings_text(findings, run)
    else:
        raise ValueError(f"unknown format {format!r}")
    if path is not None:
        Path(path).write_text(text, encoding="utf-8")
    return text


def finding_from_json(doc: dict) -> Finding:
    return Finding(
        doc["kind"], doc["statement"], tuple(doc["rings"]), doc["n"], doc["witness"], doc["narrative"]
    )


def rows_json(rows) -> list[dict]:
    return [{k: v for k, v in asdict(r).items() if v is not None} for r in rows]


__all__ = [
    "ClassificationRow",
    "Finding",
    "PROFILES",
    "SearchRow",
    "SearchTask",
    "emit_report",
    "find_counterexamples",
    "finding_from_json",
    "profile_violated",
    "replay",
    "run_classification",
    "search_sweep",
]
