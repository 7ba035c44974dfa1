"""Coefficient-sign positivity certificates with box / half-line subdivision.

A polynomial is certified nonnegative (or positive) on a product region
where every coordinate is either a bounded interval [lo, hi] or a half-line
[lo, oo).  On a leaf region bounded coordinates are mapped to [0, 1] and
expanded in the Bernstein basis; half-line coordinates are shifted to start
at 0 and kept in the monomial basis.  If every tensor coefficient is >= 0
the polynomial is >= 0 on the leaf.  For strict positivity the
coefficients whose half-line indices are all zero must additionally be
> 0 (they bound the polynomial from below on the leaf).

Failing leaves are first probed for a counterexample (corner points and
control points of negative coefficients, evaluated exactly); otherwise
the leaf is split.  Bounded coordinates are bisected; a half-line
[lo, oo) is split into [lo, 2 lo + 1] and [2 lo + 1, oo).
"""
from __future__ import annotations

from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Iterator

from .mpoly import MPoly, as_fraction

PROVED = "proved"
REFUTED = "refuted"
INCONCLUSIVE = "inconclusive"


@dataclass(frozen=True)
class Interval:
    lo: Fraction
    hi: Fraction | None = None  # None: unbounded above
    lo_open: bool = False

    @property
    def bounded(self) -> bool:
        return self.hi is not None

    def contains(self, v: Fraction) -> bool:
        above = v > self.lo if self.lo_open else v >= self.lo
        return above and (self.hi is None or v <= self.hi)

    def __str__(self):
        left = "(" if self.lo_open else "["
        right = "oo)" if self.hi is None else f"{self.hi}]"
        return f"{left}{self.lo}, {right}"


def interval(lo, hi=None, lo_open=False) -> Interval:
    return Interval(as_fraction(lo), None if hi is None else as_fraction(hi), lo_open)


@dataclass
class Node:
    region: dict  # name -> Interval
    basis: tuple = ()  # per variable: "bernstein" | "monomial" (leaves only)
    degrees: tuple = ()
    coeffs: dict | None = None  # multi-index -> Fraction (leaves only)
    split_var: str | None = None
    split_at: Fraction | None = None
    children: list = field(default_factory=list)
    status: str = PROVED  # leaves: proved | inconclusive

    @property
    def is_leaf(self) -> bool:
        return self.split_var is None

    def leaves(self) -> Iterator["Node"]:
        if self.is_leaf:
            yield self
        else:
            for c in self.children:
                yield from c.leaves()


@dataclass
class Certificate:
    target: str
    statement: str
    polynomial: MPoly  # claimed >= 0 (or > 0) on region, before the factor is removed
    region: dict
    strict: bool
    verdict: str
    source: str = ""  # sympy-parsable expression in the original variables
    substitution: dict = field(default_factory=dict)  # original name -> expression in certificate variables
    factor: dict = field(default_factory=dict)  # name -> power removed (name must be open at 0)
    tree: Node | None = None
    witness: dict | None = None
    side_conditions: list = field(default_factory=list)

    @property
    def variables(self) -> tuple:
        return self.polynomial.variables

    @property
    def proved(self) -> bool:
        return self.verdict == PROVED

    def uncovered(self) -> list:
        if self.tree is None:
            return []
        return [leaf.region for leaf in self.tree.leaves() if leaf.status != PROVED]

    def leaf_count(self) -> int:
        return 0 if self.tree is None else sum(1 for _ in self.tree.leaves())

    def summary(self) -> str:
        lines = [f"{self.target}: {self.verdict.upper()}  ({self.statement})"]
        region = "; ".join(f"{v} in {self.region[v]}" for v in self.variables)
        lines.append(f"  region: {region}")
        if self.verdict == PROVED:
            lines.append(f"  leaves: {self.leaf_count()}")
        elif self.verdict == REFUTED:
            lines.append(f"  witness: {', '.join(f'{k}={v}' for k, v in self.witness.items())}")
        else:
            for r in self.uncovered():
                lines.append("  uncovered: " + "; ".join(f"{v} in {r[v]}" for v in self.variables))
        for sc in self.side_conditions:
            lines.extend("  " + ln for ln in sc.summary().splitlines())
        return "\n".join(lines)


# --------------------------------------------------------------------------- leaves

def leaf_expansion(poly: MPoly, region: dict):
    """Basis, degree tuple and tensor coefficients of ``poly`` on ``region``."""
    basis = []
    box = {}
    shifted = poly
    for v in poly.variables:
        iv = region[v]
        if iv.bounded:
            basis.append("bernstein")
            box[v] = (iv.lo, iv.hi)
        else:
            basis.append("monomial")
            if iv.lo:
                shifted = shifted.shift(v, iv.lo)
    degrees = tuple(poly.degree(v) for v in poly.variables)
    coeffs = shifted.bernstein_coeffs(box, degrees)
    return tuple(basis), degrees, coeffs


def coefficients_certify(basis, coeffs: dict, strict: bool) -> bool:
    if any(c < 0 for c in coeffs.values()):
        return False
    if not strict:
        return True
    mono_axes = [i for i, b in enumerate(basis) if b == "monomial"]
    floor = [c for idx, c in coeffs.items() if all(idx[i] == 0 for i in mono_axes)]
    return all(c > 0 for c in floor)


# --------------------------------------------------------------------------- search

def _candidate_points(poly: MPoly, region: dict, basis, degrees, coeffs) -> list:
    names = poly.variables
    pts = []
    # control points of the most negative coefficients first
    neg = sorted((c, idx) for idx, c in coeffs.items() if c <= 0)
    for _, idx in neg[:16]:
        pt = {}
        for axis, v in enumerate(names):
            iv = region[v]
            if basis[axis] == "bernstein":
                d = degrees[axis] or 1
                pt[v] = iv.lo + (iv.hi - iv.lo) * Fraction(idx[axis], d)
            else:
                pt[v] = iv.lo + idx[axis]
        pts.append(pt)
    corners = []
    for v in names:
        iv = region[v]
        hi = iv.hi if iv.bounded else iv.lo + 1
        corners.append((iv.lo, (iv.lo + hi) / 2, hi))
    pts.append({v: c[1] for v, c in zip(names, corners)})
    for axis, v in enumerate(names):
        for k in (0, 2):
            pts.append({w: corners[i][k if i == axis else 1] for i, w in enumerate(names)})
    return pts


def _find_witness(poly, region, basis, degrees, coeffs, strict):
    for pt in _candidate_points(poly, region, basis, degrees, coeffs):
        if not all(region[v].contains(pt[v]) for v in poly.variables):
            continue
        val = poly.evaluate(pt)
        if val < 0 or (strict and val == 0):
            return pt
    return None


def _split(region: dict, v: str):
    iv = region[v]
    if iv.bounded:
        at = (iv.lo + iv.hi) / 2
        lo_part = Interval(iv.lo, at, iv.lo_open)
        hi_part = Interval(at, iv.hi)
    else:
        at = 2 * iv.lo + 1
        lo_part = Interval(iv.lo, at, iv.lo_open)
        hi_part = Interval(at, None)
    return at, {**region, v: lo_part}, {**region, v: hi_part}


class _Refuted(Exception):
    def __init__(self, witness):
        self.witness = witness


def _search(poly: MPoly, region: dict, strict: bool, splits: dict, max_depth: int, turn: int) -> Node:
    basis, degrees, coeffs = leaf_expansion(poly, region)
    if coefficients_certify(basis, coeffs, strict):
        return Node(region, basis, degrees, coeffs, status=PROVED)
    w = _find_witness(poly, region, basis, degrees, coeffs, strict)
    if w is not None:
        raise _Refuted(w)
    names = poly.variables
    # round-robin over axes that still have split budget and actually occur
    order = [names[(turn + i) % len(names)] for i in range(len(names))]
    order = [v for v in order if splits[v] < max_depth and poly.degree(v) > 0]
    if not order:
        return Node(region, basis, degrees, coeffs, status=INCONCLUSIVE)
    v = order[0]
    at, left, right = _split(region, v)
    budget = {**splits, v: splits[v] + 1}
    nxt = names.index(v) + 1
    children = [_search(poly, left, strict, budget, max_depth, nxt), _search(poly, right, strict, budget, max_depth, nxt)]
    return Node(region, split_var=v, split_at=at, children=children)


def certify_nonnegative(
    poly: MPoly,
    region: dict,
    *,
    strict: bool = False,
    target: str = "polynomial",
    statement: str = "",
    max_depth: int = 30,
    source: str = "",
    substitution: dict | None = None,
    side_conditions: list | None = None,
) -> Certificate:
    """Certify ``poly >= 0`` (``> 0`` if strict) on ``region``.

    Coordinates whose interval is open at a lower bound of 0 may carry a
    power of that variable as a factor; it is divided out first since it is
    positive on the open region.
    """
    region = {v: region[v] for v in poly.variables}
    factor = {}
    reduced = poly
    for v, iv in region.items():
        if iv.lo_open and iv.lo == 0 and not poly.is_zero():
            k = reduced.min_degree(v)
            if k:
                reduced = reduced.divide_monomial(v, k)
                factor[v] = k
    cert = Certificate(
        target=target,
        statement=statement,
        polynomial=poly,
        region=region,
        strict=strict,
        verdict=INCONCLUSIVE,
        source=source,
        substitution=dict(substitution or {}),
        factor=factor,
        side_conditions=list(side_conditions or []),
    )
    if poly.is_zero():
        cert.verdict = REFUTED if strict else PROVED
        if strict:
            cert.witness = {
                v: (iv.lo if not iv.lo_open else (iv.lo + iv.hi) / 2 if iv.bounded else iv.lo + 1)
                for v, iv in region.items()
            }
        else:
            cert.tree = Node(region, *leaf_expansion(poly, region))
        return cert
    closed = {v: replace(iv, lo_open=False) if v in factor else iv for v, iv in region.items()}
    try:
        tree = _search(reduced, closed, strict, {v: 0 for v in poly.variables}, max_depth, 0)
    except _Refuted as r:
        cert.verdict = REFUTED
        cert.witness = r.witness
        if factor and any(r.witness[v] == 0 for v in factor):
            # the factor vanishes there; the reduced polynomial refutes only the strengthened claim
            cert.verdict = INCONCLUSIVE
        return cert
    cert.tree = tree
    own = PROVED if all(leaf.status == PROVED for leaf in tree.leaves()) else INCONCLUSIVE
    if own == PROVED and any(sc.verdict != PROVED for sc in cert.side_conditions):
        own = INCONCLUSIVE
    cert.verdict = own
    return cert
