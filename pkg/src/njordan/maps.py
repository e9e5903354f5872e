"""Additive maps between finite rings.

A map is stored as its full value table, but its identity is the tuple of
images of the domain's basis generators.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from itertools import product
from typing import Callable, Iterator, Optional, Sequence

import numpy as np

from njordan.rings import FiniteRing

DEFAULT_ENUM_BUDGET = 10**7


class OrderIncompatible(ValueError):
    def __init__(self, position: int, image: int, image_order: int, generator_order: int):
        self.position = position
        super().__init__(
            f"generator {position}: image {image} has order {image_order}, "
            f"which does not divide {generator_order}"
        )


class NotAdditive(ValueError):
    pass


class BudgetExceeded(RuntimeError):
    def __init__(self, estimated_count: int, budget: int):
        self.estimated_count = estimated_count
        self.budget = budget
        super().__init__(f"{estimated_count} assignments exceed budget {budget}")


@dataclass(frozen=True, eq=False)
class AdditiveMap:
    domain: FiniteRing = field(repr=False)
    codomain: FiniteRing = field(repr=False)
    generator_images: tuple[int, ...]
    values: np.ndarray = field(repr=False)

    @property
    def key(self) -> tuple[int, ...]:
        return self.generator_images

    def __call__(self, x: int) -> int:
        return int(self.values[x])

    def __eq__(self, other):
        if not isinstance(other, AdditiveMap):
            return NotImplemented
        return (
            self.domain is other.domain
            and self.codomain is other.codomain
            and self.generator_images == other.generator_images
        )

    def __hash__(self):
        return hash((id(self.domain), id(self.codomain), self.generator_images))

    def __lt__(self, other: "AdditiveMap"):
        return self.generator_images < other.generator_images

    def to_json(self) -> dict:
        return {
            "domain": self.domain.label,
            "codomain": self.codomain.label,
            "gen_images": list(self.generator_images),
        }


def evaluate(h: AdditiveMap, x: int) -> int:
    return int(h.values[x])


def is_additive(values: np.ndarray, A: FiniteRing, B: FiniteRing) -> bool:
    lhs = values[A.add_table]
    rhs = B.add_table[values[:, None], values[None, :]]
    return bool(values[0] == 0 and (lhs == rhs).all())


def _extend(A: FiniteRing, B: FiniteRing, images: Sequence[int]) -> np.ndarray:
    # values[x] = sum_i c_i(x) * images[i]
    coords = A.basis.coord_array
    values = np.zeros(A.carrier_size, dtype=B.add_table.dtype)
    for i, (img, d) in enumerate(zip(images, A.basis.orders)):
        mults = np.array([B.scalar(c, img) for c in range(d)], dtype=values.dtype)
        values = B.add_table[values, mults[coords[:, i]]]
    return values


def map_from_generator_images(A: FiniteRing, B: FiniteRing, images: Sequence[int]) -> AdditiveMap:
    images = tuple(int(i) for i in images)
    orders = A.basis.orders
    if len(images) != len(orders):
        raise ValueError(f"{A.label} has {len(orders)} generators, got {len(images)} images")
    for i, (img, d) in enumerate(zip(images, orders)):
        if not 0 <= img < B.carrier_size:
            raise ValueError(f"image {img} is not an element of {B.label}")
        if d % B.additive_order(img):
            raise OrderIncompatible(i, img, B.additive_order(img), d)
    values = _extend(A, B, images)
    if not is_additive(values, A, B):
        raise NotAdditive(f"images {images} do not extend additively")
    values.flags.writeable = False
    return AdditiveMap(A, B, images, values)


def map_from_values(A: FiniteRing, B: FiniteRing, values: Sequence[int]) -> AdditiveMap:
    """Wrap a full value table, checking additivity."""
    values = np.asarray(values, dtype=B.add_table.dtype)
    if values.shape != (A.carrier_size,) or not is_additive(values, A, B):
        raise NotAdditive("value table is not an additive map")
    values.flags.writeable = False
    images = tuple(int(values[g]) for g in A.basis.generators)
    return AdditiveMap(A, B, images, values)


def identity_map(A: FiniteRing) -> AdditiveMap:
    return map_from_values(A, A, np.arange(A.carrier_size))


def zero_map(A: FiniteRing, B: FiniteRing) -> AdditiveMap:
    return map_from_values(A, B, np.zeros(A.carrier_size, dtype=np.int64))


def candidate_images(A: FiniteRing, B: FiniteRing) -> list[list[int]]:
    return [
        [b for b in B.elements if d % B.additive_order(b) == 0] for d in A.basis.orders
    ]


def count_additive_maps(A: FiniteRing, B: FiniteRing) -> int:
    return math.prod(len(c) for c in candidate_images(A, B))


class NJordanFilter:
    """Keeps maps with h(x^n) = h(x)^n for every x.

    During enumeration the same identity is tested on every element of the
    partially spanned subgroup whose n-th power also lies in that subgroup, which
    is a necessary condition and so never drops a valid map.
    """

    def __init__(self, n: int):
        self.n = n

    def __call__(self, h: AdditiveMap) -> bool:
        from njordan.jordan import is_n_jordan

        return is_n_jordan(h, self.n)

    def partial_ok(self, A: FiniteRing, B: FiniteRing, partial: dict, fresh: list) -> bool:
        n = self.n
        for x in fresh:
            p = A.power(x, n)
            hp = partial.get(p)
            if hp is not None and hp != B.power(partial[x], n):
                return False
        return True


def enumerate_additive_maps(
    A: FiniteRing,
    B: FiniteRing,
    filter: Optional[Callable[[AdditiveMap], bool]] = None,
    budget: int = DEFAULT_ENUM_BUDGET,
) -> Iterator[AdditiveMap]:
    """Yield every additive map A -> B (passing ``filter``) in lexicographic
    order of generator images.

    Without a pruning filter the raw assignment count must fit the budget up
    front. A filter with a ``partial_ok`` hook instead prunes partial
    assignments, and the budget caps the number of search nodes visited.
    """
    candidates = candidate_images(A, B)
    total = math.prod(len(c) for c in candidates)
    prune = getattr(filter, "partial_ok", None)
    if prune is None and total > budget:
        raise BudgetExceeded(total, budget)
    if prune is None:
        yield from _enumerate_flat(A, B, candidates, filter)
    else:
        yield from _enumerate_pruned(A, B, candidates, filter, prune, budget)


def _enumerate_flat(A, B, candidates, filter):
    # contribution of generator i with image b to every element's value
    coords = A.basis.coord_array
    contrib = [
        {b: np.array([B.scalar(c, b) for c in range(d)], dtype=B.add_table.dtype)[coords[:, i]] for b in cands}
        for i, (cands, d) in enumerate(zip(candidates, A.basis.orders))
    ]
    zero = np.zeros(A.carrier_size, dtype=B.add_table.dtype)
    for images in product(*candidates):
        values = zero
        for i, b in enumerate(images):
            values = B.add_table[values, contrib[i][b]]
        if values is zero:
            values = zero.copy()
        h = AdditiveMap(A, B, tuple(images), _frozen(values))
        if filter is None or filter(h):
            yield h


def _frozen(values):
    values.flags.writeable = False
    return values


def _enumerate_pruned(A, B, candidates, filter, prune, budget):
    basis = A.basis
    k = len(basis.generators)
    # layers[i]: elements whose last nonzero coordinate is i, with that coordinate
    layers = [[] for _ in range(k)]
    for x, coords in enumerate(basis.coords):
        nz = [i for i, c in enumerate(coords) if c]
        if nz:
            layers[nz[-1]].append((x, coords[nz[-1]], basis.element_of[coords[: nz[-1]] + (0,) * (k - nz[-1])]))
    visited = 0
    partial = {0: 0}
    images: list[int] = []

    def descend(i):
        nonlocal visited
        if i == k:
            values = np.empty(A.carrier_size, dtype=B.add_table.dtype)
            for x, v in partial.items():
                values[x] = v
            h = AdditiveMap(A, B, tuple(images), _frozen(values))
            if filter(h):
                yield h
            return
        for img in candidates[i]:
            visited += 1
            if visited > budget:
                raise BudgetExceeded(visited, budget)
            mults = [B.scalar(c, img) for c in range(basis.orders[i])]
            fresh = []
            for x, c, rest in layers[i]:
                partial[x] = B.add(partial[rest], mults[c])
                fresh.append(x)
            images.append(img)
            if prune(A, B, partial, fresh):
                yield from descend(i + 1)
            images.pop()
            for x in fresh:
                del partial[x]

    yield from descend(0)


def transpose_map(R: FiniteRing, m: int, k: int) -> AdditiveMap:
    """Matrix transpose on a ring built by ``matrix_ring(m, k)``."""
    from njordan.rings import matrix_elements

    mats = matrix_elements(m, k)
    weights = m ** np.arange(k * k - 1, -1, -1)
    values = mats.transpose(0, 2, 1).reshape(-1, k * k) @ weights
    return map_from_values(R, R, values)
