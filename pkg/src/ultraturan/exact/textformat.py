"""Line-oriented text format for certificates.

Layout (one record per line, nested blocks delimited by begin/end)::

    # ultraturan certificate v1
    begin certificate
    target: ratio_inequality
    statement: ...
    variables: s t
    source: <sympy expression in the original variables>
    substitution: lam = s - 1/2
    region: s [0, oo) ; t [0, 1]
    strict: no
    factor: -
    verdict: proved
    polynomial: <readable form>
    term 1 1 = 1          # exponent vector, then the exact rational coefficient
    witness: -
    begin node
    region: s [0, oo) ; t [0, 1]
    leaf: proved
    basis: monomial bernstein
    degrees: 1 2
    coeff 0 0 = 0
    ...
    end node
    begin certificate       # side conditions, same layout, nested
    ...
    end certificate
    end certificate

Intervals are written ``[lo, hi]``, ``[lo, oo)`` or ``(lo, ...`` for an
open lower end.  Rationals use ``p/q`` notation.  Output is fully
deterministic: terms and coefficients are sorted by exponent.
"""
from __future__ import annotations

from fractions import Fraction

from .certificate import Certificate, Interval, Node
from .mpoly import MPoly

HEADER = "# ultraturan certificate v1"


def _iv(iv: Interval) -> str:
    return str(iv)


def _parse_iv(s: str) -> Interval:
    s = s.strip()
    lo_open = s[0] == "("
    lo, hi = (t.strip() for t in s[1:-1].split(","))
    return Interval(Fraction(lo), None if hi == "oo" else Fraction(hi), lo_open)


def _region(variables, region) -> str:
    return " ; ".join(f"{v} {_iv(region[v])}" for v in variables)


def _parse_region(s: str) -> dict:
    out = {}
    for part in s.split(" ; "):
        name, rest = part.strip().split(" ", 1)
        out[name] = _parse_iv(rest)
    return out


def _idx(idx) -> str:
    return " ".join(str(i) for i in idx)


def _node_lines(node: Node, variables) -> list:
    lines = ["begin node", f"region: {_region(variables, node.region)}"]
    if node.is_leaf:
        lines.append(f"leaf: {node.status}")
        lines.append("basis: " + " ".join(node.basis))
        lines.append("degrees: " + _idx(node.degrees))
        for idx in sorted(node.coeffs):
            lines.append(f"coeff {_idx(idx)} = {node.coeffs[idx]}")
    else:
        lines.append(f"split: {node.split_var} at {node.split_at}")
        for child in node.children:
            lines.extend(_node_lines(child, variables))
    lines.append("end node")
    return lines


def _cert_lines(cert: Certificate) -> list:
    v = cert.variables
    lines = [
        "begin certificate",
        f"target: {cert.target}",
        f"statement: {cert.statement}",
        "variables: " + " ".join(v),
        f"source: {cert.source or '-'}",
        "substitution: " + ("; ".join(f"{k} = {e}" for k, e in cert.substitution.items()) or "-"),
        f"region: {_region(v, cert.region)}",
        f"strict: {'yes' if cert.strict else 'no'}",
        "factor: " + (" ".join(f"{k}^{p}" for k, p in cert.factor.items()) or "-"),
        f"verdict: {cert.verdict}",
        f"polynomial: {cert.polynomial}",
    ]
    for exp in sorted(cert.polynomial.terms):
        lines.append(f"term {_idx(exp)} = {cert.polynomial.terms[exp]}")
    if cert.witness:
        lines.append("witness: " + " ; ".join(f"{k} = {cert.witness[k]}" for k in v))
    else:
        lines.append("witness: -")
    if cert.tree is not None:
        lines.extend(_node_lines(cert.tree, v))
    for sc in cert.side_conditions:
        lines.extend(_cert_lines(sc))
    lines.append("end certificate")
    return lines


def dumps(cert: Certificate) -> str:
    return "\n".join([HEADER, *_cert_lines(cert)]) + "\n"


class FormatError(ValueError):
    pass


class _Reader:
    def __init__(self, text: str):
        self.lines = [ln.rstrip("\n") for ln in text.splitlines() if ln.strip() and not ln.startswith("#")]
        self.i = 0

    def peek(self) -> str:
        if self.i >= len(self.lines):
            raise FormatError("unexpected end of certificate text")
        return self.lines[self.i]

    def take(self, prefix: str | None = None) -> str:
        ln = self.peek()
        if prefix is not None:
            if not ln.startswith(prefix):
                raise FormatError(f"line {self.i + 1}: expected {prefix!r}, got {ln!r}")
            ln = ln[len(prefix):].strip()
        self.i += 1
        return ln


def _read_node(r: _Reader, variables) -> Node:
    r.take("begin node")
    region = _parse_region(r.take("region:"))
    if r.peek().startswith("leaf:"):
        status = r.take("leaf:")
        basis = tuple(r.take("basis:").split())
        degrees = tuple(int(t) for t in r.take("degrees:").split())
        coeffs = {}
        while r.peek().startswith("coeff "):
            idx, val = r.take("coeff").split("=")
            coeffs[tuple(int(t) for t in idx.split())] = Fraction(val.strip())
        node = Node(region, basis, degrees, coeffs, status=status)
    else:
        var, at = r.take("split:").split(" at ")
        children = []
        while r.peek() == "begin node":
            children.append(_read_node(r, variables))
        node = Node(region, split_var=var.strip(), split_at=Fraction(at), children=children)
    r.take("end node")
    return node


def _read_cert(r: _Reader) -> Certificate:
    r.take("begin certificate")
    target = r.take("target:")
    statement = r.take("statement:")
    variables = tuple(r.take("variables:").split())
    source = r.take("source:")
    subs_line = r.take("substitution:")
    substitution = {}
    if subs_line != "-":
        for part in subs_line.split(";"):
            k, e = part.split("=", 1)
            substitution[k.strip()] = e.strip()
    region = _parse_region(r.take("region:"))
    strict = r.take("strict:") == "yes"
    factor_line = r.take("factor:")
    factor = {}
    if factor_line != "-":
        for part in factor_line.split():
            k, p = part.split("^")
            factor[k] = int(p)
    verdict = r.take("verdict:")
    r.take("polynomial:")
    terms = {}
    while r.peek().startswith("term "):
        idx, val = r.take("term").split("=")
        terms[tuple(int(t) for t in idx.split())] = Fraction(val.strip())
    wline = r.take("witness:")
    witness = None
    if wline != "-":
        witness = {}
        for part in wline.split(" ; "):
            k, val = part.split("=")
            witness[k.strip()] = Fraction(val.strip())
    tree = _read_node(r, variables) if r.peek() == "begin node" else None
    sides = []
    while r.peek() == "begin certificate":
        sides.append(_read_cert(r))
    r.take("end certificate")
    return Certificate(
        target=target,
        statement=statement,
        polynomial=MPoly(variables, terms),
        region=region,
        strict=strict,
        verdict=verdict,
        source="" if source == "-" else source,
        substitution=substitution,
        factor=factor,
        tree=tree,
        witness=witness,
        side_conditions=sides,
    )


def loads(text: str) -> Certificate:
    if not text.startswith(HEADER):
        raise FormatError("missing certificate header")
    r = _Reader(text)
    cert = _read_cert(r)
    if r.i != len(r.lines):
        raise FormatError(f"trailing content after certificate at line {r.i + 1}")
    return cert
