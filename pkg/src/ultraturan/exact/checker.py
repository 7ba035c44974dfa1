"""Independent re-verification of certificates.

Nothing here reuses :mod:`ultraturan.exact.mpoly` arithmetic or the search:
every expansion is redone with SymPy, and Bernstein coefficients are
obtained by a different route, as monomial coefficients of
``(1 + v)^d p(v / (1 + v))`` divided by ``C(d, i)``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product
from math import comb

import sympy as sp

from .certificate import INCONCLUSIVE, PROVED, REFUTED, Certificate, Interval, Node


@dataclass
class CheckResult:
    ok: bool = True
    problems: list = field(default_factory=list)
    leaves_checked: int = 0

    def fail(self, msg: str):
        self.ok = False
        self.problems.append(msg)

    def __bool__(self):
        return self.ok


def _sym(cert: Certificate):
    syms = sp.symbols(" ".join(cert.variables), seq=True)
    expr = sum(
        sp.Rational(c.numerator, c.denominator) * sp.Mul(*[s**k for s, k in zip(syms, e)])
        for e, c in cert.polynomial.terms.items()
    )
    return syms, sp.sympify(expr)


def _q(v):
    return sp.Rational(v.numerator, v.denominator)


def _leaf_coeffs(expr, syms, region: dict, degrees) -> dict:
    """Mixed Bernstein/monomial coefficients recomputed from scratch."""
    aux = []
    e = expr
    for s, d in zip(syms, degrees):
        iv = region[str(s)]
        if iv.bounded:
            v = sp.Symbol(f"_v_{s}")
            lo, hi = _q(iv.lo), _q(iv.hi)
            e = e.subs(s, lo + (hi - lo) * v / (1 + v)) * (1 + v) ** d
            aux.append((v, d, True))
        else:
            e = e.subs(s, s + _q(iv.lo))
            aux.append((s, d, False))
    gens = [a[0] for a in aux]
    poly = sp.Poly(sp.expand(sp.cancel(sp.together(e))), *gens)
    out = {}
    for monom, c in poly.terms():
        idx = tuple(monom)
        for (g, d, bern), i in zip(aux, idx):
            if bern:
                c = c / comb(d, i)
        out[idx] = sp.Rational(c)
    return out


def _check_leaf(node: Node, cert: Certificate, syms, expr, res: CheckResult):
    res.leaves_checked += 1
    if node.status != PROVED:
        res.fail(f"leaf {node.region} is not closed")
        return
    want_basis = tuple("bernstein" if node.region[str(s)].bounded else "monomial" for s in syms)
    if tuple(node.basis) != want_basis:
        res.fail(f"leaf basis {node.basis} does not match region {node.region}")
        return
    for s, d in zip(syms, node.degrees):
        if sp.degree(expr, s) > d:
            res.fail(f"leaf degree {d} in {s} is below the polynomial's degree")
            return
    recomputed = _leaf_coeffs(expr, syms, node.region, node.degrees)
    stored = {idx: _q(c) for idx, c in node.coeffs.items() if c != 0}
    recomputed = {idx: c for idx, c in recomputed.items() if c != 0}
    if stored != recomputed:
        res.fail(f"leaf coefficients on {node.region} do not match a fresh expansion")
        return
    if any(c < 0 for c in stored.values()):
        res.fail(f"negative coefficient on leaf {node.region}")
        return
    if cert.strict:
        mono_axes = [i for i, b in enumerate(node.basis) if b == "monomial"]
        grid = [range(d + 1) for d in node.degrees]
        for idx in product(*grid):
            if all(idx[i] == 0 for i in mono_axes) and stored.get(idx, 0) <= 0:
                res.fail(f"strict claim: floor coefficient {idx} not positive on {node.region}")
                return


def _check_cover(node: Node, region: dict, res: CheckResult, path="root"):
    if node.region != region:
        res.fail(f"{path}: node region {node.region} differs from the region it should cover {region}")
        return
    if node.is_leaf:
        return
    v = node.split_var
    iv = region[v]
    at = node.split_at
    if not (iv.lo < at and (iv.hi is None or at < iv.hi)) or len(node.children) != 2:
        res.fail(f"{path}: invalid split of {v} at {at}")
        return
    left = {**region, v: Interval(iv.lo, at, iv.lo_open)}
    right = {**region, v: Interval(at, iv.hi)}
    _check_cover(node.children[0], left, res, path + "/0")
    _check_cover(node.children[1], right, res, path + "/1")


def _check_source(cert: Certificate, syms, expr, res: CheckResult):
    if not cert.source:
        return
    names = {str(s): s for s in syms}
    src = sp.sympify(cert.source)
    subs = {}
    for k, e in cert.substitution.items():
        subs[sp.Symbol(k)] = sp.sympify(e, locals=names)
    derived = sp.cancel(sp.together(src.subs(subs, simultaneous=True)))
    if sp.expand(derived - expr) != 0:
        res.fail(f"{cert.target}: polynomial is not the stated source after substitution")


def check_certificate(cert: Certificate) -> CheckResult:
    """Re-verify a certificate without searching.

    Proved: the polynomial matches its source, the tree tiles the region,
    every leaf's coefficients match a fresh expansion and have the right
    signs, the removed factor divides exactly, and all side conditions are
    themselves proved.  Refuted: the witness lies in the region and the
    polynomial is negative (or zero for strict claims) there.
    Inconclusive certificates claim nothing; only the source is checked.
    """
    res = CheckResult()
    syms, expr = _sym(cert)
    _check_source(cert, syms, expr, res)
    if cert.verdict == REFUTED:
        w = cert.witness or {}
        if set(w) != set(cert.variables):
            res.fail("witness does not assign every variable")
            return res
        if not all(cert.region[v].contains(w[v]) for v in cert.variables):
            res.fail(f"witness {w} lies outside the region")
        val = expr.subs({s: _q(w[str(s)]) for s in syms})
        if not (val < 0 or (cert.strict and val == 0)):
            res.fail(f"witness value {val} does not refute the claim")
        return res
    if cert.verdict == INCONCLUSIVE:
        return res
    if cert.verdict != PROVED:
        res.fail(f"unknown verdict {cert.verdict!r}")
        return res
    reduced = expr
    for v, k in cert.factor.items():
        iv = cert.region[v]
        if not (iv.lo == 0 and iv.lo_open):
            res.fail(f"factor {v}^{k} removed but {v} is not open at 0")
        s = syms[cert.variables.index(v)]
        q, r = sp.div(sp.Poly(reduced, *syms), sp.Poly(s**k, *syms))
        if not r.is_zero:
            res.fail(f"{v}^{k} does not divide the polynomial")
            return res
        reduced = q.as_expr()
    if cert.tree is None:
        if expr != 0:
            res.fail("proved certificate without evidence tree")
        return res
    closed = {v: Interval(iv.lo, iv.hi, iv.lo_open and v not in cert.factor) for v, iv in cert.region.items()}
    _check_cover(cert.tree, closed, res)
    for leaf in cert.tree.leaves():
        _check_leaf(leaf, cert, syms, reduced, res)
    for sc in cert.side_conditions:
        sub = check_certificate(sc)
        res.leaves_checked += sub.leaves_checked
        if sc.verdict != PROVED:
            res.fail(f"side condition {sc.target} is {sc.verdict}")
        if not sub.ok:
            res.ok = False
            res.problems.extend(f"{sc.target}: {p}" for p in sub.problems)
    return res
