"""Ring catalogs: JSON documents mapping labels to constructor descriptors.

    {"A": {"kind": "cyclic", "modulus": 7},
     "B": {"kind": "product", "factors": ["A", "A"]},
     "M": {"kind": "matrix", "modulus": 3, "dim": 2},
     "N": {"kind": "zero_mul", "modulus": 2},
     "T": {"kind": "tables", "add": [[...]], "mul": [[...]], "unit": 1}}

Labels may refer to each other in any order; cycles are rejected.
"""

from __future__ import annotations

import hashlib
import json
from pathlib import Path
from typing import Mapping, Union

from njordan.rings import (
    DEFAULT_CARRIER_CAP,
    FiniteRing,
    cyclic_ring,
    direct_product,
    matrix_ring,
    ring_from_tables,
    zero_mul_ring,
)


class CatalogError(ValueError):
    pass


class UnknownLabel(KeyError):
    def __str__(self):
        return f"unknown ring label {self.args[0]!r}"


# rings used by the acceptance sweep and the sharpness examples
DEFAULT_CATALOG = {
    "Z1": {"kind": "cyclic", "modulus": 1},
    "Z2": {"kind": "cyclic", "modulus": 2},
    "Z5": {"kind": "cyclic", "modulus": 5},
    "Z6": {"kind": "cyclic", "modulus": 6},
    "Z7": {"kind": "cyclic", "modulus": 7},
    "Z9": {"kind": "cyclic", "modulus": 9},
    "Z11": {"kind": "cyclic", "modulus": 11},
    "Z5xZ7": {"kind": "product", "factors": ["Z5", "Z7"]},
    "Z2xZ2": {"kind": "product", "factors": ["Z2", "Z2"]},
    "Z2^0": {"kind": "zero_mul", "modulus": 2},
    "M2(Z2)": {"kind": "matrix", "modulus": 2, "dim": 2},
    "M2(Z3)": {"kind": "matrix", "modulus": 3, "dim": 2},
}


class Catalog(dict):
    """Ordered label -> FiniteRing mapping, remembering the source document."""

    def __init__(self, rings, source: Mapping):
        super().__init__(rings)
        self.source = dict(source)

    @property
    def hash(self) -> str:
        blob = json.dumps(self.source, sort_keys=True, separators=(",", ":"))
        return hashlib.sha256(blob.encode()).hexdigest()

    def ring(self, label: str) -> FiniteRing:
        try:
            return self[label]
        except KeyError:
            raise UnknownLabel(label) from None


def _dependencies(desc) -> list:
    if desc.get("kind") == "product":
        return list(desc.get("factors", []))
    return []


def _build(label, desc, built, carrier_cap) -> FiniteRing:
    kind = desc.get("kind")
    try:
        if kind == "cyclic":
            return cyclic_ring(int(desc["modulus"]), label=label)
        if kind == "zero_mul":
            return zero_mul_ring(int(desc["modulus"]), label=label)
        if kind == "matrix":
            return matrix_ring(int(desc["modulus"]), int(desc["dim"]), label=label, carrier_cap=carrier_cap)
        if kind == "tables":
            add = desc["add"]
            return ring_from_tables(
                len(add), add, desc["mul"], desc.get("unit"), label=label, carrier_cap=carrier_cap
            )
        if kind == "product":
            factors = [built[f] for f in desc["factors"]]
            if not factors:
                raise CatalogError(f"{label}: product needs at least one factor")
            ring = factors[0]
            for i, f in enumerate(factors[1:], start=1):
                last = i == len(factors) - 1
                ring = direct_product(ring, f, label=label if last else None, carrier_cap=carrier_cap)
            if len(factors) == 1:
                ring = direct_product(ring, cyclic_ring(1), label=label, carrier_cap=carrier_cap)
            return ring
    except KeyError as exc:
        raise CatalogError(f"{label}: missing field {exc.args[0]!r}") from None
    raise CatalogError(f"{label}: unknown kind {kind!r}")


def build_catalog(doc: Mapping, carrier_cap: int = DEFAULT_CARRIER_CAP) -> Catalog:
    if not isinstance(doc, Mapping):
        raise CatalogError("catalog must be a JSON object")
    for label, desc in doc.items():
        if not isinstance(desc, Mapping):
            raise CatalogError(f"{label}: descriptor must be an object")
        for dep in _dependencies(desc):
            if dep not in doc:
                raise CatalogError(f"{label}: refers to unknown label {dep!r}")

    built: dict = {}
    visiting: set = set()

    def visit(label):
        if label in built:
            return
        if label in visiting:
            raise CatalogError(f"dependency cycle through {label!r}")
        visiting.add(label)
        for dep in _dependencies(doc[label]):
            visit(dep)
        visiting.discard(label)
        built[label] = _build(label, doc[label], built, carrier_cap)

    for label in doc:
        visit(label)
    return Catalog({label: built[label] for label in doc}, doc)


def load_catalog(path: Union[str, Path, None] = None, carrier_cap: int = DEFAULT_CARRIER_CAP) -> Catalog:
    if path is None:
        return build_catalog(DEFAULT_CATALOG, carrier_cap)
    try:
        doc = json.loads(Path(path).read_text())
    except json.JSONDecodeError as exc:
        raise CatalogError(f"{path}: {exc}") from None
    return build_catalog(doc, carrier_cap)
