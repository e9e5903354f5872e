"""Finite rings given by Cayley tables.

Elements are dense indices ``0..size-1`` and index 0 is always the additive
identity. Tables are kept twice: as read-only numpy arrays for vectorised
sweeps over tuple spaces, and as nested tuples for scalar lookups.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import reduce
from itertools import product
from typing import Optional, Sequence

import numpy as np

DEFAULT_CARRIER_CAP = 256
MAX_N = 12


class RingError(ValueError):
    pass


class AxiomViolation(RingError):
    def __init__(self, axiom: str, witness: tuple[int, ...]):
        self.axiom = axiom
        self.witness = witness
        super().__init__(f"{axiom} fails at {witness}")


class CarrierTooLarge(RingError):
    def __init__(self, size: int, cap: int):
        self.size = size
        self.cap = cap
        super().__init__(f"carrier size {size} exceeds cap {cap}")


@dataclass(frozen=True)
class AdditiveBasis:
    generators: tuple[int, ...]
    orders: tuple[int, ...]
    # coords[x] is the coordinate tuple of element x; element_of is the inverse
    coords: tuple[tuple[int, ...], ...] = field(repr=False, compare=False)
    element_of: dict = field(repr=False, compare=False)

    coord_array: np.ndarray = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        arr = np.array(self.coords, dtype=np.int64).reshape(len(self.coords), len(self.orders))
        arr.flags.writeable = False
        object.__setattr__(self, "coord_array", arr)


def _index_dtype(size: int):
    return np.min_scalar_type(max(size - 1, 0))


def _first_true(mask: np.ndarray) -> Optional[tuple[int, ...]]:
    hits = np.argwhere(mask)
    if len(hits) == 0:
        return None
    return tuple(int(i) for i in hits[0])


def _validate(size, add, mul, unit):
    idx = np.arange(size)
    bad = _first_true(add[0, :] != idx)
    if bad is not None:
        raise AxiomViolation("additive identity", (0, bad[0]))
    bad = _first_true(add != add.T)
    if bad is not None:
        raise AxiomViolation("additive commutativity", bad)
    for row in range(size):
        if not (add[row] == 0).any():
            raise AxiomViolation("additive inverse", (row,))
    # x+(y+z) vs (x+y)+z, and likewise for multiplication, over all triples
    left = add[add[:, :, None], idx[None, None, :]]
    right = add[idx[:, None, None], add[None, :, :]]
    bad = _first_true(left != right)
    if bad is not None:
        raise AxiomViolation("additive associativity", bad)
    left = mul[mul[:, :, None], idx[None, None, :]]
    right = mul[idx[:, None, None], mul[None, :, :]]
    bad = _first_true(left != right)
    if bad is not None:
        raise AxiomViolation("multiplicative associativity", bad)
    # x(y+z) = xy+xz and (y+z)x = yx+zx
    left = mul[idx[:, None, None], add[None, :, :]]
    right = add[mul[:, :, None], mul[:, None, :]]
    bad = _first_true(left != right)
    if bad is not None:
        raise AxiomViolation("left distributivity", bad)
    left = mul[add[None, :, :], idx[:, None, None]]
    right = add[mul.T[:, :, None], mul.T[:, None, :]]
    bad = _first_true(left != right)
    if bad is not None:
        raise AxiomViolation("right distributivity", bad)
    if unit is not None:
        bad = _first_true((mul[unit, :] != idx) | (mul[:, unit] != idx))
        if bad is not None:
            raise AxiomViolation("unit", (unit, bad[0]))


@dataclass(frozen=True, eq=False)
class FiniteRing:
    """A validated finite ring. Build through :func:`ring_from_tables` or the
    named constructors rather than directly."""

    carrier_size: int
    add_table: np.ndarray = field(repr=False)
    mul_table: np.ndarray = field(repr=False)
    unit: Optional[int]
    label: str = "R"
    neg_table: np.ndarray = field(init=False, repr=False)
    commutative: bool = field(init=False)
    basis: AdditiveBasis = field(init=False, repr=False)

    def __post_init__(self):
        set_ = object.__setattr__
        for name in ("add_table", "mul_table"):
            t = np.array(getattr(self, name), dtype=_index_dtype(self.carrier_size))
            t.flags.writeable = False
            set_(self, name, t)
        neg = np.argmax(self.add_table == 0, axis=1).astype(self.add_table.dtype)
        neg.flags.writeable = False
        set_(self, "neg_table", neg)
        set_(self, "commutative", bool((self.mul_table == self.mul_table.T).all()))
        set_(self, "_add", tuple(tuple(int(v) for v in row) for row in self.add_table))
        set_(self, "_mul", tuple(tuple(int(v) for v in row) for row in self.mul_table))
        set_(self, "_neg", tuple(int(v) for v in neg))
        set_(self, "_orders", self._compute_orders())
        set_(self, "basis", additive_group_basis(self))

    def __len__(self):
        return self.carrier_size

    @property
    def elements(self) -> range:
        return range(self.carrier_size)

    def add(self, x: int, y: int) -> int:
        return self._add[x][y]

    def sub(self, x: int, y: int) -> int:
        return self._add[x][self._neg[y]]

    def neg(self, x: int) -> int:
        return self._neg[x]

    def mul(self, x: int, y: int) -> int:
        return self._mul[x][y]

    def prod(self, xs: Sequence[int]) -> int:
        """Left-associated product of a non-empty sequence."""
        return reduce(lambda acc, y: self._mul[acc][y], xs[1:], xs[0])

    def power(self, x: int, n: int) -> int:
        acc = x
        for _ in range(n - 1):
            acc = self._mul[acc][x]
        return acc

    def additive_order(self, x: int) -> int:
        return self._orders[x]

    def scalar(self, k: int, x: int) -> int:
        """k-fold sum x + ... + x, with k reduced modulo the order of x."""
        k %= self._orders[x]
        acc = 0
        for _ in range(k):
            acc = self._add[acc][x]
        return acc

    def _compute_orders(self):
        orders = []
        for x in range(self.carrier_size):
            k, acc = 1, x
            while acc != 0:
                acc = self._add[acc][x]
                k += 1
            orders.append(k)
        return tuple(orders)

    def power_table(self, n: int) -> np.ndarray:
        """x -> x^n for every element, memoised per n."""
        cache = self.__dict__.setdefault("_power_cache", {})
        if n not in cache:
            acc = np.arange(self.carrier_size)
            out = acc
            for _ in range(n - 1):
                out = self.mul_table[out, acc]
            out = np.asarray(out, dtype=self.mul_table.dtype)
            out.flags.writeable = False
            cache[n] = out
        return cache[n]

    def revalidate(self) -> None:
        _validate(self.carrier_size, self.add_table, self.mul_table, self.unit)


def _renumber(size, add, mul, unit):
    """Swap indices so the additive identity becomes 0."""
    zeros = [z for z in range(size) if all(add[z][x] == x for x in range(size))]
    if not zeros:
        raise AxiomViolation("additive identity", ())
    z = zeros[0]
    if z == 0:
        return add, mul, unit
    perm = list(range(size))
    perm[0], perm[z] = z, 0  # perm is its own inverse

    def relabel(t):
        return [[perm[t[perm[i]][perm[j]]] for j in range(size)] for i in range(size)]

    return relabel(add), relabel(mul), (perm[unit] if unit is not None else None)


def _detect_unit(size, mul) -> Optional[int]:
    idx = np.arange(size)
    for e in range(size):
        if (mul[e, :] == idx).all() and (mul[:, e] == idx).all():
            return e
    return None


def ring_from_tables(
    size: int,
    add_table,
    mul_table,
    unit_hint: Optional[int] = None,
    label: str = "R",
    carrier_cap: int = DEFAULT_CARRIER_CAP,
) -> FiniteRing:
    if size < 1:
        raise RingError("carrier must be non-empty")
    if size > carrier_cap:
        raise CarrierTooLarge(size, carrier_cap)
    add = np.asarray(add_table, dtype=np.int64)
    mul = np.asarray(mul_table, dtype=np.int64)
    for name, t in (("add_table", add), ("mul_table", mul)):
        if t.shape != (size, size):
            raise RingError(f"{name} must be {size}x{size}, got {t.shape}")
        if t.min() < 0 or t.max() >= size:
            raise RingError(f"{name} has entries outside 0..{size - 1}")
    if unit_hint is not None and not 0 <= unit_hint < size:
        raise RingError(f"unit hint {unit_hint} out of range")
    add_l, mul_l, unit = _renumber(size, add.tolist(), mul.tolist(), unit_hint)
    add, mul = np.asarray(add_l), np.asarray(mul_l)
    _validate(size, add, mul, unit)
    if unit is None:
        unit = _detect_unit(size, mul)
    return FiniteRing(size, add, mul, unit, label)


def cyclic_ring(m: int, label: Optional[str] = None) -> FiniteRing:
    if m < 1:
        raise RingError("modulus must be positive")
    i = np.arange(m)
    add = (i[:, None] + i[None, :]) % m
    mul = (i[:, None] * i[None, :]) % m
    return FiniteRing(m, add, mul, 1 % m, label or f"Z{m}")


def zero_mul_ring(m: int, label: Optional[str] = None) -> FiniteRing:
    """The additive group Z_m with every product equal to 0."""
    if m < 1:
        raise RingError("modulus must be positive")
    i = np.arange(m)
    add = (i[:, None] + i[None, :]) % m
    mul = np.zeros((m, m), dtype=np.int64)
    return FiniteRing(m, add, mul, 0 if m == 1 else None, label or f"Z{m}^0")


def direct_product(
    A: FiniteRing, B: FiniteRing, label: Optional[str] = None, carrier_cap: int = DEFAULT_CARRIER_CAP
) -> FiniteRing:
    """Componentwise ring on pairs; the pair (a, b) has index a*|B| + b."""
    size = A.carrier_size * B.carrier_size
    if size > carrier_cap:
        raise CarrierTooLarge(size, carrier_cap)
    nb = B.carrier_size

    def combine(ta, tb):
        ta = ta.astype(np.int64)
        tb = tb.astype(np.int64)
        return (ta[:, None, :, None] * nb + tb[None, :, None, :]).reshape(size, size)

    unit = None
    if A.unit is not None and B.unit is not None:
        unit = A.unit * nb + B.unit
    return FiniteRing(
        size,
        combine(A.add_table, B.add_table),
        combine(A.mul_table, B.mul_table),
        unit,
        label or f"{A.label}x{B.label}",
    )


def matrix_ring(
    m: int, k: int, label: Optional[str] = None, carrier_cap: int = DEFAULT_CARRIER_CAP
) -> FiniteRing:
    """M_k(Z_m); a matrix's index is its row-major entries read as base-m digits,
    most significant first."""
    if m < 2 or k < 1:
        raise RingError("matrix ring needs m >= 2 and k >= 1")
    size = m ** (k * k)
    if size > carrier_cap:
        raise CarrierTooLarge(size, carrier_cap)
    mats = matrix_elements(m, k)
    weights = m ** np.arange(k * k - 1, -1, -1)

    def encode(arr):
        return (arr.reshape(*arr.shape[:-2], k * k) % m) @ weights

    add = encode(mats[:, None] + mats[None, :])
    mul = encode(np.einsum("aij,bjl->abil", mats, mats))
    unit = int(encode(np.eye(k, dtype=np.int64)))
    return FiniteRing(size, add, mul, unit, label or f"M{k}(Z{m})")


def matrix_elements(m: int, k: int) -> np.ndarray:
    """All k x k matrices over Z_m, ordered by their ring index."""
    digits = np.array(list(product(range(m), repeat=k * k)), dtype=np.int64)
    return digits.reshape(-1, k, k)


def additive_group_basis(R: FiniteRing) -> AdditiveBasis:
    """Cyclic decomposition of (R, +).

    Repeatedly take the element of largest order modulo the subgroup spanned so
    far, then shift it by a spanned element so that its order in R equals that
    quotient order. Ties go to the smallest index.
    """
    if getattr(R, "basis", None) is not None:
        return R.basis
    size = R.carrier_size
    add = R._add
    gens, orders = [], []
    span = {0: ()}  # element -> coordinates w.r.t. gens chosen so far

    def multiples(g, d):
        out, acc = [], 0
        for _ in range(d):
            out.append(acc)
            acc = add[acc][g]
        return out

    while len(span) < size:
        best = None
        for x in range(size):
            if x in span:
                continue
            k, acc = 1, x
            while acc not in span:
                acc = add[acc][x]
                k += 1
            if best is None or k > best[0]:
                best = (k, x, acc)
        d, x, landed = best
        # need s in span with d*s == landed; then x - s has order exactly d
        shifted = None
        for s in sorted(span):
            if R.scalar(d, s) == landed:
                shifted = R.sub(x, s)
                break
        if shifted is None:  # cannot happen for a finite abelian group
            raise RingError(f"no order-{d} lift of {x} found")
        mults = multiples(shifted, d)
        new_span = {}
        for y, c in span.items():
            for j, my in enumerate(mults):
                new_span[add[y][my]] = c + (j,)
        span = new_span
        gens.append(shifted)
        orders.append(d)

    coords = tuple(span[x] for x in range(size))
    assert math.prod(orders) == size and len(span) == size
    return AdditiveBasis(tuple(gens), tuple(orders), coords, {c: x for x, c in span.items()})


def char_exceeds(R: FiniteRing, n: int) -> bool:
    """True iff n! x = 0 forces x = 0 in R.

    Computed by brute force and cross-checked against gcd(n!, |R|) = 1.
    """
    if not 2 <= n <= MAX_N:
        raise ValueError(f"n must lie in 2..{MAX_N}, got {n}")
    fact = math.factorial(n)
    brute = all(R.scalar(fact, x) != 0 for x in R.elements if x != 0)
    fast = math.gcd(fact, R.carrier_size) == 1
    assert brute == fast, f"characteristic criteria disagree on {R.label}, n={n}"
    return brute


def index_bijection(*rings: FiniteRing):
    """Index of a tuple of component indices under nested direct products."""
    def encode(parts):
        out = 0
        for r, p in zip(rings, parts):
            out = out * r.carrier_size + p
        return out
    return encode
