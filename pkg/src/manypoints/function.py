"""Rational functions on P^1 with poles at rational points, plus the curve
expression grammar.

Points of P^1(F_q) are integers: ``0..q-1`` are the affine points and ``q``
stands for infinity.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

import numpy as np

from .errors import ParseError
from .gf import FieldSpec, FieldTable, table_for


def _clean(terms: dict[int, int]) -> tuple[tuple[int, int], ...]:
    return tuple(sorted((k, c) for k, c in terms.items() if c))


@dataclass(frozen=True)
class FunctionExpr:
    """``sum c*x^k + sum_alpha sum c/(x-alpha)^k``.

    ``poly`` holds ``(k, c)`` with ``k >= 0`` (``k = 0`` is the constant term);
    ``poles`` maps each finite pole ``alpha`` to its ``(order, c)`` terms.  All
    term lists are sorted ascending with nonzero coefficients, so ``==``
    compares functions structurally.
    """

    spec: FieldSpec
    poly: tuple[tuple[int, int], ...] = ()
    poles: tuple[tuple[int, tuple[tuple[int, int], ...]], ...] = ()

    # -- construction ----------------------------------------------------------

    @classmethod
    def build(cls, tbl: FieldTable, poly=None, poles=None) -> "FunctionExpr":
        """From ``{k: c}`` and ``{alpha: {k: c}}`` dicts (zero entries dropped)."""
        poly = _clean({int(k): int(c) for k, c in (poly or {}).items()})
        pl = []
        for a, terms in sorted((poles or {}).items()):
            t = _clean({int(k): int(c) for k, c in terms.items()})
            if any(k < 1 for k, _ in t):
                raise ValueError("pole orders must be positive")
            if t:
                pl.append((int(a), t))
        if any(k < 0 for k, _ in poly):
            raise ValueError("negative exponent in polynomial part")
        return cls(tbl.spec, poly, tuple(pl))

    @classmethod
    def monomial(cls, tbl: FieldTable, k: int, c: int = 1) -> "FunctionExpr":
        return cls.build(tbl, poly={k: c})

    @classmethod
    def zero(cls, tbl: FieldTable) -> "FunctionExpr":
        return cls(tbl.spec)

    @property
    def tbl(self) -> FieldTable:
        return table_for(self.spec)

    # -- structure -------------------------------------------------------------

    def poly_dict(self) -> dict[int, int]:
        return dict(self.poly)

    def pole_dict(self) -> dict[int, dict[int, int]]:
        return {a: dict(t) for a, t in self.poles}

    @property
    def constant(self) -> int:
        return self.poly_dict().get(0, 0)

    def is_zero(self) -> bool:
        return not self.poly and not self.poles

    def is_constant(self) -> bool:
        return not self.poles and all(k == 0 for k, _ in self.poly)

    def pole_orders(self) -> dict[int, int]:
        """Pole order at each pole, infinity keyed by ``q``."""
        out = {a: max(k for k, _ in t) for a, t in self.poles}
        deg = max((k for k, _ in self.poly), default=0)
        if deg > 0:
            out[self.spec.q] = deg
        return out

    def pole_set(self) -> frozenset[int]:
        return frozenset(self.pole_orders())

    # -- F_q-linear structure --------------------------------------------------

    def _combine(self, other: "FunctionExpr", op) -> "FunctionExpr":
        if other.spec != self.spec:
            raise ValueError("functions over different fields")
        tbl = self.tbl
        poly = self.poly_dict()
        for k, c in other.poly:
            poly[k] = op(tbl, poly.get(k, 0), c)
        poles = self.pole_dict()
        for a, t in other.poles:
            d = poles.setdefault(a, {})
            for k, c in t:
                d[k] = op(tbl, d.get(k, 0), c)
        return FunctionExpr.build(tbl, poly, poles)

    def __add__(self, other: "FunctionExpr") -> "FunctionExpr":
        return self._combine(other, lambda t, a, b: t.add(a, b))

    def __sub__(self, other: "FunctionExpr") -> "FunctionExpr":
        return self._combine(other, lambda t, a, b: t.sub(a, b))

    def scale(self, c: int) -> "FunctionExpr":
        """Multiply by the field element ``c``."""
        tbl = self.tbl
        poly = {k: tbl.mul(v, c) for k, v in self.poly}
        poles = {a: {k: tbl.mul(v, c) for k, v in t} for a, t in self.poles}
        return FunctionExpr.build(tbl, poly, poles)

    def times_int(self, n: int) -> "FunctionExpr":
        return self.scale(n % self.spec.p)

    def map_field(self, big: FieldTable, image) -> "FunctionExpr":
        """Transport coefficients and pole locations along an embedding."""
        poly = {k: int(image[c]) for k, c in self.poly}
        poles = {int(image[a]): {k: int(image[c]) for k, c in t} for a, t in self.poles}
        return FunctionExpr.build(big, poly, poles)

    # -- evaluation -------------------------------------------------------------

    def _term_traces(self, tbl: FieldTable, logx: np.ndarray, mask: np.ndarray, terms):
        """Sum over terms of Tr(c * x^k) given log(x) (entries under ~mask
        must be ignored by the caller)."""
        n = tbl.q - 1
        acc = np.zeros(logx.shape, dtype=np.int64)
        for k, c in terms:
            e = (int(tbl.log[c]) + k * logx) % n
            acc += np.where(mask, tbl.trace_table[tbl.exp[e]], 0)
        return acc

    def trace_values(self) -> tuple[np.ndarray, np.ndarray]:
        """``(tr, regular)`` over all q+1 points of P^1.

        ``tr[Q]`` is Tr(f(Q)) wherever ``regular[Q]``; at poles it is 0.
        Only logs and the trace table are used, so this is O(q * terms).
        """
        tbl = self.tbl
        q, p = tbl.q, tbl.p
        x = tbl.elements()
        regular = np.ones(q + 1, dtype=bool)
        tr = np.zeros(q + 1, dtype=np.int64)
        const = self.constant
        nonconst = [(k, c) for k, c in self.poly if k > 0]

        logx = tbl.log[x]
        nz = x != 0
        tr[:q] += self._term_traces(tbl, logx, nz, nonconst)
        # x = 0 contributes only through the constant term
        for a, terms in self.poles:
            d = tbl.sub(x, a)
            ok = d != 0
            logz = (-tbl.log[d]) % (q - 1)
            tr[:q] += self._term_traces(tbl, logz, ok, terms)
            regular[a] = False
        tr[:q] += int(tbl.trace(const))
        if nonconst:
            regular[q] = False
        else:
            tr[q] = int(tbl.trace(const))
        tr %= p
        tr[~regular] = 0
        return tr, regular

    def values(self, xs) -> np.ndarray:
        """Field values at affine non-pole points (full arithmetic)."""
        tbl = self.tbl
        xs = np.asarray(xs, dtype=np.int64)
        out = np.zeros(xs.shape, dtype=np.int64)
        for k, c in self.poly:
            out = tbl.add(out, tbl.mul(c, tbl.pow(xs, k)))
        for a, terms in self.poles:
            z = tbl.inv(tbl.sub(xs, a))
            for k, c in terms:
                out = tbl.add(out, tbl.mul(c, tbl.pow(z, k)))
        return np.asarray(out, dtype=np.int64)

    def value_at(self, Q: int) -> int:
        """Value at a regular point of P^1 (infinity is ``q``)."""
        if Q in self.pole_set():
            raise ValueError(f"{Q} is a pole")
        if Q == self.spec.q:
            return self.constant
        return int(self.values(np.array([Q]))[0])

    # -- text ------------------------------------------------------------------

    def render(self) -> str:
        return render_function(self)

    def __str__(self) -> str:
        return self.render()


# -- Artin-Schreier reduction -------------------------------------------------


def _unit_trace_element(tbl: FieldTable) -> int:
    return int(np.nonzero(tbl.trace_table == 1)[0][0])


def _reduce_terms(tbl: FieldTable, terms: dict[int, int]) -> dict[int, int]:
    """Replace ``c*z^(p*e)`` by ``c^(1/p)*z^e`` until every exponent is prime
    to p.  Works top-down so that new terms get processed too."""
    p = tbl.p
    terms = {k: c for k, c in terms.items() if c}
    for k in sorted(terms, reverse=True):
        c = terms.get(k, 0)
        if k == 0 or not c:
            continue
        while k % p == 0 and c:
            del terms[k]
            k //= p
            c = tbl.add(terms.get(k, 0), tbl.root_p(c))
            if c:
                terms[k] = c
            else:
                terms.pop(k, None)
    return terms


def as_reduce(f: FunctionExpr) -> FunctionExpr | None:
    """Artin-Schreier reduced representative of ``f``, or None when ``f`` is
    equivalent to a constant (the trivial cover).

    Every pole order of the result is prime to p and the constant term is
    ``Tr(c0) * u`` where ``u`` is the least element of trace 1.  Pointwise
    traces at regular points are unchanged.
    """
    tbl = f.tbl
    poly = _reduce_terms(tbl, f.poly_dict())
    const = poly.pop(0, 0)
    poles = {a: _reduce_terms(tbl, t) for a, t in f.pole_dict().items()}
    poles = {a: t for a, t in poles.items() if t}
    if not poly and not poles:
        return None
    s = int(tbl.trace(const))
    if s:
        poly[0] = tbl.scale(s, _unit_trace_element(tbl))
    return FunctionExpr.build(tbl, poly, poles)


def is_reduced(f: FunctionExpr) -> bool:
    r = as_reduce(f)
    return r is not None and r == f


# -- grammar -----------------------------------------------------------------

_ELEM = r"(?:\d+\*?)?t(?:\^\d+)?|\d+|\([^()]*\)"
_TERM_RE = re.compile(
    rf"""^(?:
        (?P<coef>{_ELEM})?\*?(?P<mono>x)(?:\^(?P<exp>\d+))?
      | (?P<pcoef>{_ELEM})?(?P<atzero>/x)(?:\^(?P<pexp>\d+))?
      | (?P<acoef>{_ELEM})?(?P<shifted>/\(x)(?P<sgn>[+-])(?P<alpha>{_ELEM})\)(?:\^(?P<aexp>\d+))?
      | (?P<const>{_ELEM})
    )$""",
    re.VERBOSE,
)


def _split_terms(s: str) -> list[tuple[str, str]]:
    out, depth, start = [], 0, 0
    for i, ch in enumerate(s):
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        elif ch in "+-" and depth == 0 and i > start:
            out.append(s[start:i])
            start = i
    out.append(s[start:])
    terms = []
    for chunk in out:
        sign = "+"
        if chunk[:1] in "+-":
            sign, chunk = chunk[0], chunk[1:]
        if not chunk:
            raise ParseError("dangling sign")
        terms.append((sign, chunk))
    return terms


def _parse_elem(tbl: FieldTable, text: str | None) -> int:
    if text is None:
        return 1
    if text.startswith("(") and text.endswith(")"):
        text = text[1:-1]
    return tbl.parse(text)


def parse_function(text: str, tbl: FieldTable) -> FunctionExpr:
    """Parse a sum of ``c*x^k``, ``c/x^k``, ``c/(x-a)^k`` and constants."""
    s = text.replace(" ", "")
    if not s:
        raise ParseError("empty expression")
    poly: dict[int, int] = {}
    poles: dict[int, dict[int, int]] = {}

    def put(d, k, c):
        d[k] = tbl.add(d.get(k, 0), c)

    for sign, body in _split_terms(s):
        mt = _TERM_RE.match(body)
        if not mt:
            raise ParseError(f"cannot parse term {body!r}")
        g = mt.groupdict()
        if g["const"] is not None:
            c, target, k = _parse_elem(tbl, g["const"]), poly, 0
        elif g["atzero"]:
            c = _parse_elem(tbl, g["pcoef"])
            k = int(g["pexp"] or 1)
            target = poles.setdefault(0, {})
        elif g["shifted"]:
            c = _parse_elem(tbl, g["acoef"])
            alpha = _parse_elem(tbl, g["alpha"])
            if g["sgn"] == "+":
                alpha = tbl.neg(alpha)
            k = int(g["aexp"] or 1)
            target = poles.setdefault(alpha, {})
        else:
            c = _parse_elem(tbl, g["coef"])
            k = int(g["exp"] or 1)
            target = poly
        if k < 1 and target is not poly:
            raise ParseError("pole order must be positive")
        if sign == "-":
            c = tbl.neg(c)
        put(target, k, c)
    return FunctionExpr.build(tbl, poly, poles)


def _coef_text(tbl: FieldTable, c: int, bare_one: bool) -> str:
    if c == 1 and bare_one:
        return ""
    s = tbl.render(c)
    return f"({s})" if "+" in s else s


def render_function(f: FunctionExpr) -> str:
    """Canonical text: polynomial terms by descending degree, then poles by
    location and descending order."""
    tbl = f.tbl
    parts = []
    for k, c in sorted(f.poly, reverse=True):
        if k == 0:
            parts.append(_coef_text(tbl, c, False))
            continue
        mono = "x" if k == 1 else f"x^{k}"
        cs = _coef_text(tbl, c, True)
        parts.append(f"{cs}*{mono}" if cs else mono)
    for a, terms in f.poles:
        for k, c in sorted(terms, reverse=True):
            cs = _coef_text(tbl, c, False)
            if a == 0:
                den = "x"
            else:
                at = tbl.render(a)
                den = f"(x-({at}))" if "+" in at else f"(x-{at})"
            parts.append(f"{cs}/{den}" + (f"^{k}" if k > 1 else ""))
    return " + ".join(parts) if parts else "0"


_CURVE_RE = re.compile(r"^\s*y\s*\^\s*(\d+)\s*([+-])\s*y\s*=(.*)$")


def parse_curve(text: str, tbl: FieldTable) -> FunctionExpr:
    """Parse ``y^p - y = <expr>`` (``y^2 + y`` is accepted when p = 2)."""
    mt = _CURVE_RE.match(text)
    if not mt:
        raise ParseError(f"expected 'y^p - y = ...', got {text!r}")
    if int(mt.group(1)) != tbl.p:
        raise ParseError(f"exponent {mt.group(1)} does not match characteristic {tbl.p}")
    if mt.group(2) == "+" and tbl.p != 2:
        raise ParseError("use 'y^p - y' in odd characteristic")
    return parse_function(mt.group(3), tbl)


def render_curve(f: FunctionExpr) -> str:
    return f"y^{f.spec.p} - y = {render_function(f)}"
