"""Exact multivariate polynomials over the rationals.

Coefficients are :class:`fractions.Fraction`; terms live in a dict keyed
by exponent tuples in the order of ``variables``.  Zero coefficients are
never stored, so the zero polynomial has an empty term map.
"""
from __future__ import annotations

from fractions import Fraction
from itertools import product
from math import comb
from typing import Iterable, Mapping


def as_fraction(v) -> Fraction:
    if isinstance(v, Fraction):
        return v
    if isinstance(v, float):
        # only exactly representable floats are accepted implicitly
        return Fraction(v)
    return Fraction(v)


class MPoly:
    __slots__ = ("variables", "terms")

    def __init__(self, variables: Iterable[str], terms: Mapping[tuple, object] | None = None):
        self.variables = tuple(variables)
        clean = {}
        nv = len(self.variables)
        for exp, c in (terms or {}).items():
            exp = tuple(int(e) for e in exp)
            if len(exp) != nv or any(e < 0 for e in exp):
                raise ValueError(f"bad exponent {exp} for variables {self.variables}")
            c = as_fraction(c)
            if c:
                clean[exp] = clean.get(exp, Fraction(0)) + c
                if not clean[exp]:
                    del clean[exp]
        self.terms = clean

    # construction ---------------------------------------------------------
    @classmethod
    def const(cls, variables, c) -> "MPoly":
        return cls(variables, {(0,) * len(tuple(variables)): c})

    @classmethod
    def var(cls, variables, name: str) -> "MPoly":
        variables = tuple(variables)
        exp = tuple(1 if v == name else 0 for v in variables)
        if sum(exp) != 1:
            raise ValueError(f"{name!r} is not one of {variables}")
        return cls(variables, {exp: 1})

    @classmethod
    def gens(cls, *names: str):
        return tuple(cls.var(names, v) for v in names)

    # structure -------------------------------------------------------------
    def is_zero(self) -> bool:
        return not self.terms

    def degree(self, name: str) -> int:
        i = self.variables.index(name)
        return max((e[i] for e in self.terms), default=0)

    def total_degree(self) -> int:
        return max((sum(e) for e in self.terms), default=0)

    def lift(self, variables: Iterable[str]) -> "MPoly":
        """Re-express over a variable order containing all of ours."""
        variables = tuple(variables)
        if variables == self.variables:
            return self
        missing = set(self.variables) - set(variables)
        if missing:
            raise ValueError(f"cannot drop variables {sorted(missing)} that may occur")
        idx = [self.variables.index(v) if v in self.variables else None for v in variables]
        out = {}
        for e, c in self.terms.items():
            out[tuple(0 if i is None else e[i] for i in idx)] = c
        return MPoly(variables, out)

    def _common(self, other):
        if not isinstance(other, MPoly):
            return self, MPoly.const(self.variables, other)
        if other.variables == self.variables:
            return self, other
        names = list(self.variables) + [v for v in other.variables if v not in self.variables]
        return self.lift(names), other.lift(names)

    # arithmetic -----------------------------------------------------------
    def __add__(self, other):
        a, b = self._common(other)
        out = dict(a.terms)
        for e, c in b.terms.items():
            out[e] = out.get(e, Fraction(0)) + c
        return MPoly(a.variables, out)

    __radd__ = __add__

    def __neg__(self):
        return MPoly(self.variables, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other if isinstance(other, MPoly) else -as_fraction(other))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        a, b = self._common(other)
        out: dict = {}
        for e1, c1 in a.terms.items():
            for e2, c2 in b.terms.items():
                e = tuple(i + j for i, j in zip(e1, e2))
                out[e] = out.get(e, Fraction(0)) + c1 * c2
        return MPoly(a.variables, out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative powers are not polynomials")
        result = MPoly.const(self.variables, 1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __eq__(self, other):
        if not isinstance(other, MPoly):
            other = MPoly.const(self.variables, other)
        a, b = self._common(other)
        return a.terms == b.terms

    def __hash__(self):
        return hash((self.variables, frozenset(self.terms.items())))

    def scale(self, c) -> "MPoly":
        c = as_fraction(c)
        return MPoly(self.variables, {e: c * v for e, v in self.terms.items()})

    # evaluation and substitution -----------------------------------------
    def __call__(self, **values):
        return self.evaluate(values)

    def evaluate(self, values: Mapping[str, object]) -> Fraction:
        vals = [as_fraction(values[v]) for v in self.variables]
        total = Fraction(0)
        for e, c in self.terms.items():
            t = c
            for v, k in zip(vals, e):
                if k:
                    t *= v**k
            total += t
        return total

    def compose(self, subs: Mapping[str, "MPoly"], variables: Iterable[str] | None = None) -> "MPoly":
        """Substitute polynomials for variables; unmapped variables stay themselves."""
        if variables is None:
            names = []
            for v in self.variables:
                if v in subs:
                    names.extend(w for w in subs[v].variables if w not in names)
                elif v not in names:
                    names.append(v)
            variables = names
        variables = tuple(variables)
        images = []
        for v in self.variables:
            img = subs[v] if v in subs else MPoly.var(variables, v)
            images.append(img.lift(variables))
        powers = [dict() for _ in images]
        out = MPoly(variables)
        for e, c in self.terms.items():
            term = MPoly.const(variables, c)
            for i, k in enumerate(e):
                if k:
                    if k not in powers[i]:
                        powers[i][k] = images[i] ** k
                    term = term * powers[i][k]
            out = out + term
        return out

    def shift(self, name: str, c) -> "MPoly":
        """p(..., name + c, ...)."""
        return self.compose({name: MPoly.var(self.variables, name) + as_fraction(c)}, self.variables)

    def affine(self, name: str, lo, width) -> "MPoly":
        """p(..., lo + width * name, ...)."""
        v = MPoly.var(self.variables, name)
        return self.compose({name: v.scale(width) + as_fraction(lo)}, self.variables)

    def divide_monomial(self, name: str, k: int) -> "MPoly":
        """Exact division by name**k; raises if some term is not divisible."""
        i = self.variables.index(name)
        out = {}
        for e, c in self.terms.items():
            if e[i] < k:
                raise ValueError(f"term {e} is not divisible by {name}^{k}")
            e2 = list(e)
            e2[i] -= k
            out[tuple(e2)] = c
        return MPoly(self.variables, out)

    def min_degree(self, name: str) -> int:
        i = self.variables.index(name)
        return min((e[i] for e in self.terms), default=0)

    # coefficient tensors ---------------------------------------------------
    def coeff_tensor(self, degrees: tuple | None = None) -> dict:
        """Dense monomial coefficients {exponent: Fraction} over the full degree box."""
        if degrees is None:
            degrees = tuple(self.degree(v) for v in self.variables)
        out = {}
        for e in product(*(range(d + 1) for d in degrees)):
            out[e] = self.terms.get(e, Fraction(0))
        return out

    def bernstein_coeffs(self, box: Mapping[str, tuple] | None = None, degrees: tuple | None = None) -> dict:
        """Tensor Bernstein coefficients over a box.

        ``box`` maps variable name to ``(lo, hi)``; variables not listed keep
        their monomial basis (useful for half-line directions).  Returns a
        dict from multi-index to Fraction; for Bernstein directions the index
        is i in B_{i,d}(u) = C(d,i) u^i (1-u)^(d-i) with u in [0,1].
        """
        box = dict(box or {})
        p = self
        for name, (lo, hi) in box.items():
            lo, hi = as_fraction(lo), as_fraction(hi)
            p = p.affine(name, lo, hi - lo)
        if degrees is None:
            degrees = tuple(self.degree(v) for v in self.variables)
        coeffs = p.coeff_tensor(degrees)
        for axis, name in enumerate(self.variables):
            if name in box:
                coeffs = _monomial_to_bernstein_axis(coeffs, axis, degrees[axis])
        return coeffs

    # display ---------------------------------------------------------------
    def __repr__(self):
        return f"MPoly({self.variables}, {self})"

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for e in sorted(self.terms, reverse=True):
            c = self.terms[e]
            mono = "*".join(f"{v}^{k}" if k > 1 else v for v, k in zip(self.variables, e) if k)
            mag = abs(c)
            if mono:
                body = mono if mag == 1 else f"{mag}*{mono}"
            else:
                body = str(mag)
            parts.append(("-" if c < 0 else "+", body))
        s = " ".join(f"{sgn} {b}" for sgn, b in parts)
        return s[2:] if s.startswith("+ ") else "-" + s[2:]


def _monomial_to_bernstein_axis(coeffs: dict, axis: int, d: int) -> dict:
    """Convert one axis from monomial to Bernstein basis on [0, 1].

    b_i = sum_{j<=i} C(i,j)/C(d,j) a_j.
    """
    out = {}
    for idx in coeffs:
        i = idx[axis]
        total = Fraction(0)
        for j in range(i + 1):
            key = idx[:axis] + (j,) + idx[axis + 1 :]
            a = coeffs[key]
            if a:
                total += Fraction(comb(i, j), comb(d, j)) * a
        out[idx] = total
    return out
