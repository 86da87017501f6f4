"""Pencil files: JSON documents with canonical polynomial strings as leaves.

A document round-trips byte-identically after canonicalization (terms
sorted, coefficients normalized by the parser/printer pair).
"""
from __future__ import annotations

import json

from .clifford import CliffordRep
from .errors import InputError
from .parsing import parse_poly
from .pencil import LinearPencil, MFPair
from .poly import Poly, PolyRing
from .fields import parse_field
from .reports import digest_bytes


def ring_from_header(doc: dict) -> PolyRing:
    try:
        field = parse_field(doc["field"])
        base = int(doc.get("base_vars", 0))
        fiber = int(doc["fiber_vars"])
    except KeyError as exc:
        raise InputError(f"pencil document missing key {exc}") from exc
    return PolyRing(field, base, fiber)


def _grid_to_strings(matrix) -> list:
    return [[str(entry) for entry in row] for row in matrix]


def _grid_from_strings(grid, ring: PolyRing) -> list:
    return [[parse_poly(text, ring) for text in row] for row in grid]


def pencil_document(rep: CliffordRep, metadata: dict | None = None) -> dict:
    ring = rep.ring
    doc = {
        "field": ring.field.name,
        "base_vars": ring.base_count,
        "fiber_vars": ring.fiber_count,
        "degree": rep.d,
        "size": rep.size,
        "f": str(rep.f),
        "matrices": [_grid_to_strings(m) for m in rep.pencil.matrices],
    }
    meta = dict(metadata or {})
    if rep.notes:
        meta.setdefault("notes", list(rep.notes))
    if meta:
        doc["metadata"] = meta
    return doc


def load_pencil_document(doc: dict) -> CliffordRep:
    ring = ring_from_header(doc)
    try:
        f = parse_poly(doc["f"], ring)
        degree = int(doc["degree"])
        grids = doc["matrices"]
    except KeyError as exc:
        raise InputError(f"pencil document missing key {exc}") from exc
    if len(grids) != ring.fiber_count:
        raise InputError(f"expected {ring.fiber_count} matrices, got {len(grids)}")
    mats = [_grid_from_strings(g, ring) for g in grids]
    pencil = LinearPencil(ring, mats)
    if "size" in doc and int(doc["size"]) != pencil.size:
        raise InputError(f"declared size {doc['size']} != actual {pencil.size}")
    notes = tuple(doc.get("metadata", {}).get("notes", ()))
    return CliffordRep(pencil, f, degree, notes)


def dumps_document(doc: dict) -> str:
    return json.dumps(doc, sort_keys=True, indent=2) + "\n"


def save_pencil(rep: CliffordRep, path: str, metadata: dict | None = None) -> None:
    with open(path, "w", encoding="utf-8") as handle:
        handle.write(dumps_document(pencil_document(rep, metadata)))


def read_pencil(path: str) -> tuple[CliffordRep, str]:
    """Load a .pencil file; returns (rep, sha256 of the raw bytes)."""
    with open(path, "rb") as handle:
        raw = handle.read()
    try:
        doc = json.loads(raw.decode("utf-8"))
    except (UnicodeDecodeError, json.JSONDecodeError) as exc:
        raise InputError(f"{path}: not a JSON pencil document ({exc})") from exc
    return load_pencil_document(doc), digest_bytes(raw)


def load_mf_document(doc: dict) -> MFPair:
    ring = ring_from_header(doc)
    try:
        f = parse_poly(doc["f"], ring)
        phi = _grid_from_strings(doc["phi"], ring)
        psi = _grid_from_strings(doc["psi"], ring)
    except KeyError as exc:
        raise InputError(f"matrix factorization document missing key {exc}") from exc
    return MFPair(phi, psi, f)


def load_factors_document(doc: dict) -> tuple[list, Poly]:
    ring = ring_from_header(doc)
    try:
        f = parse_poly(doc["f"], ring)
        factors = [_grid_from_strings(g, ring) for g in doc["factors"]]
    except KeyError as exc:
        raise InputError(f"factor chain document missing key {exc}") from exc
    return factors, f
