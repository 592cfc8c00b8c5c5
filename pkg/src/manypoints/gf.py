"""Finite fields GF(p^m) as fully materialized lookup tables.

Elements are plain integers in ``[0, q)``.  The index of an element is its
coefficient vector in the power basis ``1, t, ..., t^(m-1)`` read as a
base-``p`` number, ``index = c_0 + c_1 p + ... + c_(m-1) p^(m-1)``.  So ``0`` is
zero, ``1`` is one, the integers below ``p`` are the prime field, and ``p`` is
the generator ``t`` of the power basis.  An element only means something
together with the table it came from; every operation takes the table.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .errors import NonPrime, NotPrimePower, ParseError, ReducibleModulus, SizeLimitExceeded

MAX_FIELD_SIZE = 1 << 16


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


def prime_factors(n: int) -> list[int]:
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def prime_power(q: int) -> tuple[int, int]:
    """Return ``(p, m)`` with ``q == p**m``, or raise NotPrimePower."""
    if q < 2:
        raise NotPrimePower(q)
    fs = prime_factors(q)
    if len(fs) != 1:
        raise NotPrimePower(q)
    p = fs[0]
    m = 0
    while q % p == 0:
        q //= p
        m += 1
    return p, m


# -- polynomials over F_p as coefficient lists, constant term first ----------


def _trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _polymod(a: list[int], f: list[int], p: int) -> list[int]:
    a = _trim([c % p for c in a])
    df = len(f) - 1
    inv_lead = pow(f[-1], p - 2, p)
    while len(a) - 1 >= df:
        c = a[-1] * inv_lead % p
        shift = len(a) - 1 - df
        for i, fc in enumerate(f):
            a[shift + i] = (a[shift + i] - c * fc) % p
        _trim(a)
    return a


def _polymulmod(a: list[int], b: list[int], f: list[int], p: int) -> list[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return _polymod(out, f, p)


def _polypowmod(a: list[int], e: int, f: list[int], p: int) -> list[int]:
    result = [1]
    base = _polymod(list(a), f, p)
    while e:
        if e & 1:
            result = _polymulmod(result, base, f, p)
        base = _polymulmod(base, base, f, p)
        e >>= 1
    return result


def _polygcd(a: list[int], b: list[int], p: int) -> list[int]:
    a = _trim([c % p for c in a])
    b = _trim([c % p for c in b])
    while b:
        a, b = b, _polymod(a, b, p)
    return a


def _polysub(a: list[int], b: list[int], p: int) -> list[int]:
    n = max(len(a), len(b))
    a = a + [0] * (n - len(a))
    b = b + [0] * (n - len(b))
    return _trim([(x - y) % p for x, y in zip(a, b)])


def is_irreducible(coeffs, p: int) -> bool:
    """Rabin's test for a monic polynomial given constant term first."""
    f = [c % p for c in coeffs]
    m = len(f) - 1
    if m < 1 or f[-1] != 1:
        return False
    if m == 1:
        return True
    x = [0, 1]
    if _polysub(_polypowmod(x, p**m, f, p), x, p):
        return False
    for d in prime_factors(m):
        h = _polysub(_polypowmod(x, p ** (m // d), f, p), x, p)
        if len(_polygcd(f, h, p)) - 1 > 0:
            return False
    return True


def smallest_irreducible(p: int, m: int) -> tuple[int, ...]:
    """Least monic irreducible of degree m, ordering by the base-p value of
    ``(c_0, ..., c_(m-1))`` (most significant digit ``c_(m-1)``)."""
    for n in range(p**m):
        low = [(n // p**i) % p for i in range(m)]
        if m > 1 and low[0] == 0:
            continue
        coeffs = tuple(low) + (1,)
        if is_irreducible(coeffs, p):
            return coeffs
    raise AssertionError("no irreducible polynomial found")  # pragma: no cover


@dataclass(frozen=True)
class FieldSpec:
    p: int
    m: int
    modulus: tuple[int, ...]

    @property
    def q(self) -> int:
        return self.p**self.m

    def __str__(self) -> str:
        return f"{self.p}^{self.m}/" + ",".join(str(c) for c in self.modulus)


class FieldTable:
    """Immutable log/exp/trace tables for one field.

    Arithmetic methods accept ints or integer numpy arrays and broadcast; a
    scalar input gives a Python int back.
    """

    def __init__(self, spec: FieldSpec):
        self.spec = spec
        self.p = p = spec.p
        self.m = m = spec.m
        self.q = q = spec.q
        self.powers = p ** np.arange(m, dtype=np.int64)
        idx = np.arange(q, dtype=np.int64)
        self.digits = ((idx[:, None] // self.powers[None, :]) % p).astype(np.int16)

        self.generator = self._find_primitive()
        exp = self._exp_table(self.generator)
        self.exp = np.concatenate([exp, exp, exp[:2]])
        log = np.full(q, -1, dtype=np.int64)
        log[exp] = np.arange(q - 1, dtype=np.int64)
        self.log = log

        # Tr(t^i) via the Frobenius sum, then extend F_p-linearly.
        basis_tr = np.zeros(m, dtype=np.int64)
        for i in range(m):
            s = 0
            for j in range(m):
                s = self.add(s, self.frobenius(int(self.powers[i]), j))
            if s >= p:
                raise AssertionError("trace left the prime field")  # pragma: no cover
            basis_tr[i] = s
        self.trace_table = (self.digits @ basis_tr % p).astype(np.int64)
        for arr in (self.exp, self.log, self.digits, self.trace_table, self.powers):
            arr.setflags(write=False)

    # -- construction helpers ------------------------------------------------

    def _times_t(self, v: np.ndarray) -> np.ndarray:
        p, mod = self.p, np.array(self.spec.modulus[:-1], dtype=np.int64)
        top = v[..., -1:]
        shifted = np.concatenate([np.zeros_like(top), v[..., :-1]], axis=-1)
        return (shifted - top * mod) % p

    def _mul_matrix(self, c: int) -> np.ndarray:
        """Matrix of x -> c*x acting on digit row vectors (row @ M)."""
        rows = []
        v = self.digits[c].copy()
        for _ in range(self.m):
            rows.append(v)
            v = self._times_t(v)
        return np.array(rows, dtype=np.int64)

    def _poly(self, c: int) -> list[int]:
        return [int(d) for d in self.digits[c]]

    def _find_primitive(self) -> int:
        if self.q == 2:
            return 1
        f = list(self.spec.modulus)
        exps = [(self.q - 1) // ell for ell in prime_factors(self.q - 1)]
        for c in range(1, self.q):
            a = self._poly(c)
            if all(_polypowmod(a, e, f, self.p) != [1] for e in exps):
                return c
        raise AssertionError("no primitive element")  # pragma: no cover

    def _exp_table(self, g: int) -> np.ndarray:
        p, n = self.p, self.q - 1
        block = np.zeros((1, self.m), dtype=np.int64)
        block[0, 0] = 1
        step = self._mul_matrix(g)
        while block.shape[0] < n:
            block = np.concatenate([block, block @ step % p])
            step = step @ step % p
        return block[:n] @ self.powers

    # -- arithmetic ----------------------------------------------------------

    @staticmethod
    def _out(r):
        return int(r) if np.ndim(r) == 0 else r

    def encode(self, digits) -> int | np.ndarray:
        return self._out(np.asarray(digits, dtype=np.int64) % self.p @ self.powers)

    def add(self, a, b):
        if self.p == 2:
            return self._out(np.bitwise_xor(a, b))
        return self.encode(self.digits[a] + self.digits[b])

    def neg(self, a):
        if self.p == 2:
            return self._out(np.asarray(a))
        return self.encode(-self.digits[a])

    def sub(self, a, b):
        if self.p == 2:
            return self._out(np.bitwise_xor(a, b))
        return self.encode(self.digits[a] - self.digits[b])

    def scale(self, n: int, a):
        """The integer multiple ``n * a``."""
        return self.encode(self.digits[a] * (n % self.p))

    def mul(self, a, b):
        a = np.asarray(a)
        b = np.asarray(b)
        r = self.exp[self.log[a] + self.log[b]]
        return self._out(np.where((a == 0) | (b == 0), 0, r))

    def inv(self, a):
        a = np.asarray(a)
        if np.any(a == 0):
            raise ZeroDivisionError("inverse of zero")
        return self._out(self.exp[(-self.log[a]) % (self.q - 1)])

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def pow(self, a, n: int):
        a = np.asarray(a)
        if n == 0:
            return self._out(np.ones_like(a))
        if n < 0 and np.any(a == 0):
            raise ZeroDivisionError("negative power of zero")
        r = self.exp[(self.log[a] * (n % (self.q - 1))) % (self.q - 1)]
        return self._out(np.where(a == 0, 0, r))

    def frobenius(self, a, k: int = 1):
        """``a^(p^k)``."""
        return self.pow(a, self.p ** (k % self.m))

    def root_p(self, a):
        """The unique ``b`` with ``b^p == a``."""
        return self.frobenius(a, self.m - 1)

    def trace(self, a):
        return self._out(self.trace_table[a])

    def elements(self) -> np.ndarray:
        return np.arange(self.q, dtype=np.int64)

    def from_prime(self, n: int) -> int:
        return n % self.p

    # -- text ----------------------------------------------------------------

    def render(self, a: int) -> str:
        terms = []
        for i in range(self.m - 1, -1, -1):
            c = int(self.digits[a][i])
            if not c:
                continue
            mono = "" if i == 0 else ("t" if i == 1 else f"t^{i}")
            if not mono:
                terms.append(str(c))
            elif c == 1:
                terms.append(mono)
            else:
                terms.append(f"{c}*{mono}")
        return "+".join(terms) or "0"

    def parse(self, text: str) -> int:
        """Parse an integer index or a polynomial in ``t``."""
        s = text.replace(" ", "")
        if not s:
            raise ParseError("empty element")
        if re.fullmatch(r"\d+", s):
            v = int(s)
            if v >= self.q:
                raise ParseError(f"index {v} out of range for GF({self.q})")
            return v
        t = self.p if self.m > 1 else (-self.spec.modulus[0]) % self.p
        value = 0
        for sign, body in re.findall(r"([+-]?)([^+-]+)", s):
            mt = re.fullmatch(r"(?:(\d+)\*?)?t(?:\^(\d+))?|(\d+)", body)
            if not mt:
                raise ParseError(f"bad element term {body!r}")
            if mt.group(3) is not None:
                c, e = int(mt.group(3)), 0
            else:
                c = int(mt.group(1)) if mt.group(1) else 1
                e = int(mt.group(2)) if mt.group(2) else 1
            if sign == "-":
                c = -c
            value = self.add(value, self.scale(c, self.pow(t, e)))
        return value

    def __repr__(self) -> str:
        return f"FieldTable({self.spec})"


@lru_cache(maxsize=64)
def _build(spec: FieldSpec) -> FieldTable:
    return FieldTable(spec)


def build_field(p: int, m: int = 1, modulus=None, limit: int = MAX_FIELD_SIZE) -> FieldTable:
    """Build (or fetch from cache) the table for GF(p^m).

    Without a modulus the least irreducible monic of degree m is used, so two
    builds of the same (p, m) always enumerate elements identically.
    """
    if not is_prime(p):
        raise NonPrime(p)
    if m < 1:
        raise ValueError("degree must be positive")
    if p**m > limit:
        raise SizeLimitExceeded(f"GF({p}^{m}) exceeds the limit {limit}")
    if modulus is None:
        modulus = smallest_irreducible(p, m)
    else:
        modulus = tuple(int(c) % p for c in modulus)
        if len(modulus) != m + 1 or modulus[-1] != 1:
            raise ReducibleModulus(f"modulus must be monic of degree {m}")
        if not is_irreducible(modulus, p):
            raise ReducibleModulus(f"{modulus} is reducible over F_{p}")
    return _build(FieldSpec(p, m, tuple(modulus)))


_SPEC_RE = re.compile(r"^\s*(\d+)\s*(?:\^\s*(\d+))?\s*(?:/\s*([\d,\s]+))?\s*$")


def parse_field_spec(text: str, limit: int = MAX_FIELD_SIZE) -> FieldTable:
    """``"p^m"`` or ``"p^m/c0,c1,...,cm"``; a bare prime power ``"16"`` is
    accepted too."""
    mt = _SPEC_RE.match(text)
    if not mt:
        raise ParseError(f"bad field spec {text!r}")
    base = int(mt.group(1))
    if mt.group(2) is None:
        p, m = prime_power(base)
    else:
        p, m = base, int(mt.group(2))
    modulus = None
    if mt.group(3):
        modulus = [int(c) for c in mt.group(3).split(",") if c.strip()]
    return build_field(p, m, modulus, limit=limit)


def field_of_size(q: int, limit: int = MAX_FIELD_SIZE) -> FieldTable:
    p, m = prime_power(q)
    return build_field(p, m, limit=limit)


def embedding(small: FieldTable, big: FieldTable) -> np.ndarray:
    """Index map of a field embedding ``small -> big``.

    The image of the generator ``t`` is the least-index root of the small
    field's modulus in the big field.
    """
    if small.p != big.p or big.m % small.m:
        raise ValueError(f"{small} does not embed in {big}")
    if small.m == 1:
        return np.arange(small.q, dtype=np.int64)
    x = big.elements()
    acc = np.zeros_like(x)
    xp = np.ones_like(x)
    for c in small.spec.modulus:
        if c:
            acc = big.add(acc, big.mul(c, xp))
        xp = big.mul(xp, x)
    roots = np.nonzero(acc == 0)[0]
    theta = int(roots[0])
    basis = [1]
    for _ in range(small.m - 1):
        basis.append(big.mul(basis[-1], theta))
    image = np.zeros(small.q, dtype=np.int64)
    for i, b in enumerate(basis):
        image = big.add(image, big.mul(small.digits[:, i], b))
    return image


def table_for(spec: FieldSpec) -> FieldTable:
    """The cached table for a spec that was already validated once."""
    return _build(spec)
