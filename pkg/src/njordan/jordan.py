"""n-Jordan analysis: classification predicates, the Jordan defect and its
symmetrisation over S_n, and exhaustive checkers for the polarisation lemma,
the commutative theorem, the unital decomposition h = h(e) tau and the
Jordan-to-n-Jordan transfer corollary.

Tuple spaces are swept in lexicographic chunks of rows, so memory stays
bounded no matter how large |A|^n gets; witnesses are the first failing tuple
in that order.
"""

from __future__ import annotations

import math
import time
from dataclasses import asdict, dataclass, field
from itertools import permutations
from typing import Iterator, Optional, Sequence, Union

import numpy as np

from njordan.maps import (
    DEFAULT_ENUM_BUDGET,
    AdditiveMap,
    NJordanFilter,
    enumerate_additive_maps,
    is_additive,
    map_from_values,
)
from njordan.rings import FiniteRing, char_exceeds

DEFAULT_TUPLE_BUDGET = 10**8
DEFAULT_SAMPLES = 10**5
MAX_SYMMETRIZE_N = 8
CHUNK_ROWS = 1 << 18

STATEMENTS = ("lemma22", "thm23", "thm24", "cor25")


class TupleBudgetExceeded(RuntimeError):
    def __init__(self, needed: int, budget: int):
        self.needed = needed
        self.budget = budget
        super().__init__(f"{needed} element-operations exceed tuple budget {budget}")


class HypothesisFailed(ValueError):
    def __init__(self, witness: int):
        self.witness = witness
        super().__init__(f"diagonal value f(x,...,x) is nonzero at x={witness}")


class DecompositionError(ValueError):
    pass


class NoUnit(DecompositionError):
    pass


class CharTooSmall(DecompositionError):
    pass


class NotNJordan(DecompositionError):
    pass


# --- tuple-space plumbing -------------------------------------------------


def iter_tuple_chunks(size: int, n: int, chunk: int = CHUNK_ROWS) -> Iterator[np.ndarray]:
    """All n-tuples over range(size) as (rows, n) arrays, lexicographically."""
    total = size**n
    shape = (size,) * n
    for start in range(0, total, chunk):
        flat = np.arange(start, min(start + chunk, total), dtype=np.int64)
        yield np.stack(np.unravel_index(flat, shape), axis=1)


def row_products(R: FiniteRing, X: np.ndarray) -> np.ndarray:
    acc = X[:, 0]
    for j in range(1, X.shape[1]):
        acc = R.mul_table[acc, X[:, j]]
    return acc


def _check_tuple_budget(needed: int, budget: int) -> None:
    if needed > budget:
        raise TupleBudgetExceeded(needed, budget)


# --- classification predicates --------------------------------------------


def n_jordan_witness(h: AdditiveMap, n: int) -> Optional[int]:
    A, B = h.domain, h.codomain
    lhs = h.values[A.power_table(n)]
    rhs = B.power_table(n)[h.values]
    bad = np.flatnonzero(lhs != rhs)
    return int(bad[0]) if len(bad) else None


def is_n_jordan(h: AdditiveMap, n: int) -> bool:
    if n < 2:
        raise ValueError("n must be at least 2")
    return n_jordan_witness(h, n) is None


def n_hom_witness(
    h: AdditiveMap, n: int, anti: bool = False, tuple_budget: int = DEFAULT_TUPLE_BUDGET
) -> Optional[tuple[int, ...]]:
    """First tuple (x_1..x_n) where h fails to preserve the n-fold product, in
    order (or reversed order when ``anti``), or None."""
    if n < 2:
        raise ValueError("n must be at least 2")
    A, B = h.domain, h.codomain
    _check_tuple_budget(A.carrier_size**n, tuple_budget)
    for X in iter_tuple_chunks(A.carrier_size, n):
        lhs = h.values[row_products(A, X)]
        images = h.values[X]
        rhs = row_products(B, images[:, ::-1] if anti else images)
        bad = np.flatnonzero(lhs != rhs)
        if len(bad):
            return tuple(int(v) for v in X[bad[0]])
    return None


def is_n_hom(h: AdditiveMap, n: int, tuple_budget: int = DEFAULT_TUPLE_BUDGET) -> bool:
    return n_hom_witness(h, n, False, tuple_budget) is None


def is_anti_n_hom(h: AdditiveMap, n: int, tuple_budget: int = DEFAULT_TUPLE_BUDGET) -> bool:
    return n_hom_witness(h, n, True, tuple_budget) is None


@dataclass(frozen=True)
class ClassificationRecord:
    map_key: tuple[int, ...]
    n: int
    is_jordan: bool
    is_n_jordan: bool
    is_n_hom: bool
    is_anti_n_hom: bool


def classify(h: AdditiveMap, n: int, tuple_budget: int = DEFAULT_TUPLE_BUDGET) -> ClassificationRecord:
    return ClassificationRecord(
        map_key=h.key,
        n=n,
        is_jordan=is_n_jordan(h, 2),
        is_n_jordan=is_n_jordan(h, n),
        is_n_hom=is_n_hom(h, n, tuple_budget),
        is_anti_n_hom=is_anti_n_hom(h, n, tuple_budget),
    )


# --- defects and symmetrisation -------------------------------------------


def jordan_defect(h: AdditiveMap, xs: Sequence[int]) -> int:
    """h(x_1...x_n) - h(x_1)...h(x_n)."""
    if len(xs) < 2:
        raise ValueError("tuple must have length at least 2")
    A, B = h.domain, h.codomain
    return B.sub(h(A.prod(list(xs))), B.prod([h(x) for x in xs]))


def symmetrized_defect(h: AdditiveMap, xs: Sequence[int]) -> int:
    if len(xs) > MAX_SYMMETRIZE_N:
        raise ValueError(f"symmetrisation limited to n <= {MAX_SYMMETRIZE_N}")
    B = h.codomain
    acc = 0
    for perm in permutations(xs):
        acc = B.add(acc, jordan_defect(h, perm))
    return acc


class MultiAdditiveMap:
    """f : A^n -> B, evaluated on single tuples or on (rows, n) arrays."""

    domain: FiniteRing
    codomain: FiniteRing
    n: int
    description: str

    def __call__(self, xs: Sequence[int]) -> int:
        return int(self.rows(np.asarray([xs], dtype=np.int64))[0])

    def rows(self, X: np.ndarray) -> np.ndarray:
        raise NotImplementedError


class DefectForm(MultiAdditiveMap):
    """f(x_1..x_n) = h(x_1...x_n) - h(x_1)...h(x_n)."""

    def __init__(self, h: AdditiveMap, n: int):
        self.h, self.n = h, n
        self.domain, self.codomain = h.domain, h.codomain
        self.description = f"defect of {h.key}"

    def rows(self, X):
        B, v = self.codomain, self.h.values
        return B.add_table[v[row_products(self.domain, X)], B.neg_table[row_products(B, v[X])]]


class CommutatorForm(MultiAdditiveMap):
    """f(x_1..x_n) = g(x_1)...g(x_n) - g(x_n)...g(x_1)."""

    def __init__(self, g: AdditiveMap, n: int):
        self.g, self.n = g, n
        self.domain, self.codomain = g.domain, g.codomain
        self.description = f"product commutator of {g.key}"

    def rows(self, X):
        B = self.codomain
        images = self.g.values[X]
        fwd = row_products(B, images)
        rev = row_products(B, images[:, ::-1])
        return B.add_table[fwd, B.neg_table[rev]]


def symmetrized_rows(f: MultiAdditiveMap, X: np.ndarray) -> np.ndarray:
    B = f.codomain
    acc = np.zeros(len(X), dtype=B.add_table.dtype)
    for perm in permutations(range(X.shape[1])):
        acc = B.add_table[acc, f.rows(X[:, perm])]
    return acc


# --- reports --------------------------------------------------------------


@dataclass
class VerificationReport:
    statement: str
    rings: tuple[str, str]
    n: int
    mode: Union[str, dict] = "exhaustive"
    outcome: str = "verified"  # verified | refuted | premise_failed | budget_exceeded
    witness: Optional[dict] = None
    detail: Optional[str] = None
    tuples_checked: int = 0
    maps_checked: int = 0
    elapsed_ms: float = field(default=0.0, compare=False)

    @property
    def implementation_bug(self) -> bool:
        # every statement here is a proved theorem, so a refutation is a bug
        return self.outcome == "refuted"

    def to_json(self, timings: bool = False) -> dict:
        out = asdict(self)
        out["rings"] = list(self.rings)
        if not timings:
            out.pop("elapsed_ms")
        else:
            out["elapsed_ms"] = round(self.elapsed_ms, 3)
        return {k: v for k, v in out.items() if v is not None}


def _mode_json(mode) -> Union[str, dict]:
    if mode == "exhaustive":
        return "exhaustive"
    _, count, seed = mode
    return {"sampled": {"count": count, "seed": seed}}


def _parse_mode(mode):
    if mode in (None, "exhaustive"):
        return "exhaustive"
    if isinstance(mode, tuple) and len(mode) == 3 and mode[0] == "sampled":
        return mode
    raise ValueError(f"mode must be 'exhaustive' or ('sampled', count, seed), got {mode!r}")


def sampled(count: int = DEFAULT_SAMPLES, seed: int = 0) -> tuple:
    return ("sampled", count, seed)


class _Timer:
    def __enter__(self):
        self.t0 = time.perf_counter()
        return self

    def __exit__(self, *exc):
        self.ms = (time.perf_counter() - self.t0) * 1000


def _symmetrized_sweep(f: MultiAdditiveMap, mode, tuple_budget: int):
    """Return (first nonzero tuple or None, tuples checked)."""
    size, n = f.domain.carrier_size, f.n
    if n > MAX_SYMMETRIZE_N:
        raise ValueError(f"symmetrisation limited to n <= {MAX_SYMMETRIZE_N}")
    if mode == "exhaustive":
        _check_tuple_budget(size**n * math.factorial(n), tuple_budget)
        chunks = iter_tuple_chunks(size, n)
    else:
        _, count, seed = mode
        _check_tuple_budget(count * math.factorial(n), tuple_budget)
        rng = np.random.default_rng(seed)
        X = rng.integers(0, size, size=(count, n), dtype=np.int64)
        chunks = (X[i : i + CHUNK_ROWS] for i in range(0, count, CHUNK_ROWS))
    checked = 0
    for X in chunks:
        bad = np.flatnonzero(symmetrized_rows(f, X))
        if len(bad):
            return tuple(int(v) for v in X[bad[0]]), checked + int(bad[0]) + 1
        checked += len(X)
    return None, checked


def check_lemma21(
    f: MultiAdditiveMap, mode="exhaustive", tuple_budget: int = DEFAULT_TUPLE_BUDGET
) -> VerificationReport:
    """Diagonal vanishing of a multi-additive f implies vanishing of its
    symmetrisation. Raises HypothesisFailed if the diagonal does not vanish."""
    mode = _parse_mode(mode)
    A = f.domain
    diag = np.repeat(np.arange(A.carrier_size)[:, None], f.n, axis=1)
    bad = np.flatnonzero(f.rows(diag))
    if len(bad):
        raise HypothesisFailed(int(bad[0]))
    report = VerificationReport("lemma21", (A.label, f.codomain.label), f.n, _mode_json(mode))
    with _Timer() as t:
        witness, checked = _symmetrized_sweep(f, mode, tuple_budget)
    report.tuples_checked = checked
    report.elapsed_ms = t.ms
    report.detail = f.description
    if witness is not None:
        report.outcome = "refuted"
        report.witness = {"tuple": list(witness)}
    return report


def verify_lemma22(
    h: AdditiveMap, n: int, mode="exhaustive", tuple_budget: int = DEFAULT_TUPLE_BUDGET
) -> VerificationReport:
    mode = _parse_mode(mode)
    report = VerificationReport("lemma22", (h.domain.label, h.codomain.label), n, _mode_json(mode))
    report.maps_checked = 1
    with _Timer() as t:
        x = n_jordan_witness(h, n)
        if x is not None:
            report.outcome = "premise_failed"
            report.detail = f"map is not {n}-Jordan"
            report.witness = {"gen_images": list(h.key), "tuple": [x]}
        else:
            witness, checked = _symmetrized_sweep(DefectForm(h, n), mode, tuple_budget)
            report.tuples_checked = checked
            if witness is not None:
                report.outcome = "refuted"
                report.detail = "implementation bug: symmetrised defect nonzero"
                report.witness = {"gen_images": list(h.key), "tuple": list(witness)}
    report.elapsed_ms = t.ms
    return report


def _premise(report: VerificationReport, detail: str) -> VerificationReport:
    report.outcome = "premise_failed"
    report.detail = detail
    return report


def verify_theorem23(
    A: FiniteRing,
    B: FiniteRing,
    n: int,
    enum_budget: int = DEFAULT_ENUM_BUDGET,
    tuple_budget: int = DEFAULT_TUPLE_BUDGET,
) -> VerificationReport:
    report = VerificationReport("thm23", (A.label, B.label), n)
    if not A.commutative:
        return _premise(report, "A non-commutative")
    if not B.commutative:
        return _premise(report, "B non-commutative")
    if not char_exceeds(B, n):
        return _premise(report, f"char(B) > {n} fails")
    with _Timer() as t:
        for h in enumerate_additive_maps(A, B, NJordanFilter(n), enum_budget):
            report.maps_checked += 1
            report.tuples_checked += A.carrier_size**n
            w = n_hom_witness(h, n, False, tuple_budget)
            if w is not None:
                report.outcome = "refuted"
                report.detail = f"implementation bug: {n}-Jordan map is not an {n}-homomorphism"
                report.witness = {"gen_images": list(h.key), "tuple": list(w)}
                break
    report.elapsed_ms = t.ms
    return report


# --- unital decomposition -------------------------------------------------


@dataclass(frozen=True)
class CheckStatus:
    passed: bool
    witness: Optional[tuple[int, ...]] = None


DECOMPOSITION_CHECKS = (
    "c_power",
    "eq1",
    "eq4_centrality",
    "eq5",
    "eq6",
    "tau_jordan",
    "factorization",
)


@dataclass(frozen=True)
class Decomposition:
    c: int
    tau: AdditiveMap
    checks: dict

    @property
    def ok(self) -> bool:
        return all(s.passed for s in self.checks.values())

    def failures(self) -> dict:
        return {k: s.witness for k, s in self.checks.items() if not s.passed}


def _lmul_power(B: FiniteRing, c: int, k: int, y: int) -> int:
    """c^k * y, with c^0 * y = y so no unit in B is needed."""
    for _ in range(k):
        y = B.mul(c, y)
    return y


def _rmul_power(B: FiniteRing, y: int, c: int, k: int) -> int:
    for _ in range(k):
        y = B.mul(y, c)
    return y


def _first_failure(xs, pred) -> CheckStatus:
    for x in xs:
        if not pred(x):
            return CheckStatus(False, x if isinstance(x, tuple) else (x,))
    return CheckStatus(True)


def herstein_decompose(h: AdditiveMap, n: int) -> Decomposition:
    """Split an n-Jordan map on a unital ring as h = c * tau, c = h(e),
    tau(x) = c^(n-2) h(x), and re-check each intermediate identity."""
    A, B = h.domain, h.codomain
    if A.unit is None:
        raise NoUnit(f"{A.label} has no unit")
    if not char_exceeds(B, n):
        raise CharTooSmall(f"char({B.label}) > {n} fails")
    if not is_n_jordan(h, n):
        raise NotNJordan(f"map {h.key} is not {n}-Jordan")
    e = A.unit
    c = h(e)
    hv = [int(v) for v in h.values]
    tau = map_from_values(A, B, [_lmul_power(B, c, n - 2, y) for y in hv])
    elems = list(A.elements)

    def eq1(x):
        terms = 0
        for j in range(1, n + 1):
            term = _rmul_power(B, _lmul_power(B, c, n - j, hv[x]), c, j - 1)
            terms = B.add(terms, term)
        return B.scalar(n, hv[x]) == terms

    def central(pair):
        x, y = pair
        z = hv[x] if y is None else B.mul(hv[x], hv[y])
        return B.mul(z, c) == B.mul(c, z)

    pairs = [(x, None) for x in elems] + [(x, y) for x in elems for y in elems]

    checks = {
        "c_power": CheckStatus(True) if B.power(c, n) == c else CheckStatus(False, (e,)),
        "eq1": _first_failure(elems, eq1),
        "eq4_centrality": _first_failure(pairs, central),
        "eq5": _first_failure(elems, lambda x: hv[x] == _lmul_power(B, c, n - 1, hv[x])),
        "eq6": _first_failure(
            elems,
            lambda x: hv[A.mul(x, x)] == _lmul_power(B, c, n - 2, B.mul(hv[x], hv[x])),
        ),
        "tau_jordan": (
            _first_failure(elems, lambda x: tau(A.mul(x, x)) == B.mul(tau(x), tau(x)))
            if is_additive(tau.values, A, B)
            else CheckStatus(False, ())
        ),
        "factorization": _first_failure(elems, lambda x: hv[x] == B.mul(c, tau(x))),
    }
    return Decomposition(c, tau, checks)


def verify_theorem24(h: AdditiveMap, n: int) -> VerificationReport:
    report = VerificationReport("thm24", (h.domain.label, h.codomain.label), n)
    report.maps_checked = 1
    with _Timer() as t:
        try:
            dec = herstein_decompose(h, n)
        except DecompositionError as exc:
            report.outcome = "premise_failed"
            report.detail = f"{type(exc).__name__}: {exc}"
        else:
            report.tuples_checked = h.domain.carrier_size
            if not dec.ok:
                name, w = next(iter(dec.failures().items()))
                report.outcome = "refuted"
                report.detail = f"implementation bug: check {name} failed"
                report.witness = {"gen_images": list(h.key), "tuple": list(w)}
    report.elapsed_ms = t.ms
    return report


def unit_specialization_sides(h: AdditiveMap, n: int, x: int) -> tuple[int, int]:
    """Both sides of n! h(x) = (n-1)! * sum_j c^(n-j) h(x) c^(j-1), the
    symmetrised defect at (x, e, ..., e) before (n-1)! is cancelled."""
    A, B = h.domain, h.codomain
    c, hx = h(A.unit), h(x)
    total = 0
    for j in range(1, n + 1):
        total = B.add(total, _rmul_power(B, _lmul_power(B, c, n - j, hx), c, j - 1))
    return B.scalar(math.factorial(n), hx), B.scalar(math.factorial(n - 1), total)


# --- Jordan-to-n-Jordan transfer ----------------------------------------


def verify_corollary25(
    A: FiniteRing,
    B: FiniteRing,
    n: int,
    branch: str = "hom",
    enum_budget: int = DEFAULT_ENUM_BUDGET,
    tuple_budget: int = DEFAULT_TUPLE_BUDGET,
) -> VerificationReport:
    """Premise: every Jordan map A -> B is a hom (anti-hom). Conclusion: every
    n-Jordan map is an n-hom (anti-n-hom)."""
    if branch not in ("hom", "anti"):
        raise ValueError("branch must be 'hom' or 'anti'")
    anti = branch == "anti"
    report = VerificationReport("cor25", (A.label, B.label), n, mode="exhaustive")
    if A.unit is None:
        return _premise(report, "A has no unit")
    if not char_exceeds(B, n):
        return _premise(report, f"char(B) > {n} fails")
    kind = "anti-homomorphism" if anti else "homomorphism"
    n_kind = f"anti-{n}-homomorphism" if anti else f"{n}-homomorphism"
    with _Timer() as t:
        jordan_maps = 0
        for h in enumerate_additive_maps(A, B, NJordanFilter(2), enum_budget):
            jordan_maps += 1
            report.tuples_checked += A.carrier_size**2
            w = n_hom_witness(h, 2, anti, tuple_budget)
            if w is not None:
                report.elapsed_ms = (time.perf_counter() - t.t0) * 1000
                report.witness = {"gen_images": list(h.key), "tuple": list(w)}
                return _premise(report, f"Jordan map {list(h.key)} is not a {kind}")
        for h in enumerate_additive_maps(A, B, NJordanFilter(n), enum_budget):
            report.maps_checked += 1
            report.tuples_checked += A.carrier_size**n
            w = n_hom_witness(h, n, anti, tuple_budget)
            if w is not None:
                report.outcome = "refuted"
                report.detail = f"implementation bug: {n}-Jordan map is not an {n_kind}"
                report.witness = {"gen_images": list(h.key), "tuple": list(w)}
                break
        if report.outcome == "verified":
            report.detail = f"premise held on {jordan_maps} Jordan maps"
    report.elapsed_ms = t.ms
    return report
