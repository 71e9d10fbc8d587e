"""Arithmetic in a finite field tower F_p <= F_{p^m1}, F_{p^m2} <= F_{p^m}.

Elements are plain integers.  The integer ``x`` encodes the polynomial
``c_0 + c_1 X + ... + c_{m-1} X^{m-1}`` (reduced modulo the tower's
modulus) through its base-``p`` digits, ``x = sum(c_i * p**i)``.  Integer
order is therefore lexicographic order on the coefficient sequence read
from the highest degree down; this is the enumeration order used by every
other module.

Subfields are never built separately.  The subfield of degree ``L`` is the
set of elements fixed by ``x -> x**(p**L)`` inside the big field, so traces
and characters of different levels always agree on embeddings.

All operations accept either Python ints or numpy integer arrays and
broadcast in the obvious way; scalar input gives an ``int`` back.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, Sequence, Union

import numpy as np

from .errors import (
    DivisionByZero,
    NotDivisor,
    NotInSubfield,
    NotOddPrime,
    ReducibleModulus,
)

Element = int
ArrayLike = Union[int, np.ndarray]

__all__ = [
    "Element",
    "FieldTower",
    "build_tower",
    "arith",
    "is_prime",
    "factorize",
    "divisors",
    "find_irreducible",
    "is_irreducible",
]


# -- integers -----------------------------------------------------------------

def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def factorize(n: int) -> dict[int, int]:
    """Trial-division factorization, ``{prime: exponent}``."""
    out: dict[int, int] = {}
    f = 2
    while f * f <= n:
        while n % f == 0:
            out[f] = out.get(f, 0) + 1
            n //= f
        f += 1 if f == 2 else 2
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def divisors(n: int) -> list[int]:
    return [d for d in range(1, n + 1) if n % d == 0]


# -- polynomials over F_p (coefficient lists, lowest degree first) ------------

def _trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _poly_mod(a: list[int], f: Sequence[int], p: int) -> list[int]:
    a = [c % p for c in a]
    df = len(f) - 1
    inv_lead = pow(f[-1], p - 2, p)
    for i in range(len(a) - 1, df - 1, -1):
        c = a[i] * inv_lead % p
        if c:
            for j in range(df + 1):
                a[i - df + j] = (a[i - df + j] - c * f[j]) % p
    return _trim(a[:df] if len(a) > df else a)


def _poly_mul(a: Sequence[int], b: Sequence[int], p: int) -> list[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % p
    return _trim(out)


def _poly_powmod(a: Sequence[int], e: int, f: Sequence[int], p: int) -> list[int]:
    result = [1]
    base = _poly_mod(list(a), f, p)
    while e:
        if e & 1:
            result = _poly_mod(_poly_mul(result, base, p), f, p)
        base = _poly_mod(_poly_mul(base, base, p), f, p)
        e >>= 1
    return result


def _poly_gcd(a: list[int], b: list[int], p: int) -> list[int]:
    a, b = _trim([c % p for c in a]), _trim([c % p for c in b])
    while b:
        a, b = b, _poly_mod(a, b, p)
    return a


def is_irreducible(f: Sequence[int], p: int) -> bool:
    """Rabin's test for a monic polynomial ``f`` (lowest degree first)."""
    m = len(f) - 1
    if m < 1:
        return False
    if m == 1:
        return True
    x = [0, 1]
    # x^(p^m) == x (mod f)
    if _poly_powmod(x, p ** m, f, p) != x:
        return False
    for ell in factorize(m):
        h = _poly_powmod(x, p ** (m // ell), f, p)
        h = h + [0] * (2 - len(h)) if len(h) < 2 else list(h)
        h[1] = (h[1] - 1) % p
        if len(_poly_gcd(list(f), _trim(h), p)) != 1:
            return False
    return True


def find_irreducible(p: int, m: int) -> tuple[int, ...]:
    """First monic irreducible of degree ``m`` in lexicographic order.

    Candidates ``X^m + c_{m-1} X^{m-1} + ... + c_0`` are visited in the order
    of the integer ``sum(c_i p^i)``.
    """
    for code in range(p ** m):
        low = [(code // p ** i) % p for i in range(m)]
        f = tuple(low + [1])
        if is_irreducible(f, p):
            return f
    raise ReducibleModulus(f"no irreducible polynomial of degree {m} over F_{p}")


# -- the tower ----------------------------------------------------------------

def _readonly(a: np.ndarray) -> np.ndarray:
    a.setflags(write=False)
    return a


def _out(r):
    if np.ndim(r) == 0:
        return int(r)
    return r


@dataclass(frozen=True, eq=False)
class FieldTower:
    """The field F_{p^m} with designated subfields of degrees m1 and m2.

    Build instances with :func:`build_tower`; the constructor fields are the
    precomputed tables.
    """

    p: int
    m: int
    m1: int
    m2: int
    modulus: tuple[int, ...]
    alpha: Element
    _exp: np.ndarray = field(repr=False)
    _log: np.ndarray = field(repr=False)
    _digits: np.ndarray = field(repr=False)
    _weights: np.ndarray = field(repr=False)
    _traces: dict = field(repr=False)

    # sizes -------------------------------------------------------------
    @property
    def q(self) -> int:
        return self.p ** self.m

    def size(self, level: int) -> int:
        return self.p ** level

    @property
    def params(self) -> tuple[int, int, int, int]:
        return (self.p, self.m, self.m1, self.m2)

    def _check_level(self, level: int) -> None:
        if level < 1 or self.m % level:
            raise NotDivisor(f"level {level} does not divide m = {self.m}")

    # encoding ------------------------------------------------------------
    def coeffs(self, x: Element) -> tuple[int, ...]:
        return tuple(int(c) for c in self._digits[x])

    def from_coeffs(self, coeffs: Sequence[int]) -> Element:
        c = [int(v) % self.p for v in coeffs]
        c += [0] * (self.m - len(c))
        if len(c) > self.m:
            raise ValueError("too many coefficients")
        return int(np.dot(c, self._weights))

    def encode_digits(self, digits: np.ndarray) -> np.ndarray:
        """Inverse of the digit table: ``(..., m)`` digit arrays to elements."""
        return (np.asarray(digits, dtype=np.int64) % self.p) @ self._weights

    def digits(self, x: ArrayLike) -> np.ndarray:
        return self._digits[x]

    def elements(self) -> np.ndarray:
        return np.arange(self.q, dtype=np.int64)

    # arithmetic ------------------------------------------------------------
    def add(self, x: ArrayLike, y: ArrayLike) -> ArrayLike:
        d = self._digits[x].astype(np.int64) + self._digits[y]
        return _out((d % self.p) @ self._weights)

    def neg(self, x: ArrayLike) -> ArrayLike:
        d = -self._digits[x].astype(np.int64)
        return _out((d % self.p) @ self._weights)

    def sub(self, x: ArrayLike, y: ArrayLike) -> ArrayLike:
        d = self._digits[x].astype(np.int64) - self._digits[y]
        return _out((d % self.p) @ self._weights)

    def scale(self, k: int, x: ArrayLike) -> ArrayLike:
        """Multiply by the integer ``k`` (an element of the prime field)."""
        d = (k % self.p) * self._digits[x].astype(np.int64)
        return _out((d % self.p) @ self._weights)

    def sum(self, xs: np.ndarray, axis: int = -1) -> ArrayLike:
        """Field sum along ``axis``."""
        d = self._digits[np.asarray(xs)].astype(np.int64).sum(axis=axis if axis >= 0 else axis - 1)
        return _out((d % self.p) @ self._weights)

    def mul(self, x: ArrayLike, y: ArrayLike) -> ArrayLike:
        x = np.asarray(x)
        y = np.asarray(y)
        e = (self._log[x] + self._log[y]) % (self.q - 1)
        r = np.where((x == 0) | (y == 0), 0, self._exp[e])
        return _out(r)

    def inv(self, x: ArrayLike) -> ArrayLike:
        x = np.asarray(x)
        if np.any(x == 0):
            raise DivisionByZero("inverse of zero")
        return _out(self._exp[(-self._log[x]) % (self.q - 1)])

    def div(self, x: ArrayLike, y: ArrayLike) -> ArrayLike:
        return self.mul(x, self.inv(y))

    def power(self, x: ArrayLike, e: int) -> ArrayLike:
        x = np.asarray(x)
        if e == 0:
            return _out(np.ones_like(x))
        if e < 0:
            if np.any(x == 0):
                raise DivisionByZero("negative power of zero")
            x = np.asarray(self.inv(x))
            e = -e
        k = (self._log[x] * (e % (self.q - 1))) % (self.q - 1)
        return _out(np.where(x == 0, 0, self._exp[k]))

    def exp(self, k: ArrayLike) -> ArrayLike:
        """``alpha ** k``."""
        return _out(self._exp[np.asarray(k) % (self.q - 1)])

    def log(self, x: ArrayLike) -> ArrayLike:
        """Discrete log to base ``alpha``; ``log(0)`` is -1."""
        return _out(self._log[x])

    def frobenius(self, x: ArrayLike, level: int = 1) -> ArrayLike:
        return self.power(x, self.p ** level)

    # subfields -------------------------------------------------------------
    def subfield_step(self, level: int) -> int:
        """Exponent ``s`` such that ``alpha**s`` generates F_{p^level}^*."""
        self._check_level(level)
        return (self.q - 1) // (self.p ** level - 1)

    def in_subfield(self, x: ArrayLike, level: int) -> ArrayLike:
        s = self.subfield_step(level)
        x = np.asarray(x)
        r = (x == 0) | (self._log[x] % s == 0)
        return bool(r) if r.ndim == 0 else r

    def require_subfield(self, x: ArrayLike, level: int) -> None:
        if not np.all(self.in_subfield(x, level)):
            raise NotInSubfield(f"element not in the degree-{level} subfield")

    def subfield_elements(self, level: int) -> np.ndarray:
        """0 followed by successive powers of the subfield generator."""
        s = self.subfield_step(level)
        nz = self._exp[np.arange(self.p ** level - 1, dtype=np.int64) * s]
        return np.concatenate(([0], nz)).astype(np.int64)

    def subfield_nonzero(self, level: int) -> np.ndarray:
        return self.subfield_elements(level)[1:]

    # trace and quadratic character -----------------------------------------
    def trace_table(self, to_level: int, from_level: int | None = None) -> np.ndarray:
        """Lookup table of the relative trace over all encodings.

        Entries are meaningful only for arguments inside the from-level
        subfield.
        """
        from_level = self.m if from_level is None else from_level
        self._check_level(from_level)
        self._check_level(to_level)
        if from_level % to_level:
            raise NotDivisor(f"{to_level} does not divide {from_level}")
        return self._traces[(from_level, to_level)]

    def trace(self, x: ArrayLike, to_level: int = 1, from_level: int | None = None) -> ArrayLike:
        """Relative trace ``Tr_{p^from / p^to}`` (``from`` defaults to m)."""
        table = self.trace_table(to_level, from_level)
        if from_level is not None and from_level != self.m:
            self.require_subfield(x, from_level)
        return _out(table[x])

    def quad_char(self, x: ArrayLike, level: int | None = None) -> ArrayLike:
        """Quadratic character of the degree-``level`` subfield, with eta(0) = 0."""
        level = self.m if level is None else level
        self.require_subfield(x, level)
        return _out(self._eta(np.asarray(x), level))

    def _eta(self, x: np.ndarray, level: int) -> np.ndarray:
        s = self.subfield_step(level)
        k = self._log[x] // s
        return np.where(x == 0, 0, 1 - 2 * (k & 1))


# -- construction -------------------------------------------------------------

def _mult_matrix(elem: Sequence[int], f: Sequence[int], p: int) -> np.ndarray:
    """Matrix over F_p of ``y -> elem * y`` in the power basis."""
    m = len(f) - 1
    cols = []
    for j in range(m):
        prod = _poly_mod(_poly_mul(list(elem), [0] * j + [1], p), f, p)
        cols.append(prod + [0] * (m - len(prod)))
    return np.array(cols, dtype=np.int64).T


def _element_order_is_full(g: list[int], f: Sequence[int], p: int, q: int) -> bool:
    if _poly_powmod(g, q - 1, f, p) != [1]:
        return False
    return all(_poly_powmod(g, (q - 1) // ell, f, p) != [1] for ell in factorize(q - 1))


def _find_primitive(f: Sequence[int], p: int, m: int) -> int:
    q = p ** m
    if q == 2:
        return 1
    candidates: Iterable[int] = range(2, q)
    if m > 1:
        candidates = [p] + [c for c in range(2, q) if c != p]
    for code in candidates:
        g = _trim([(code // p ** i) % p for i in range(m)])
        if _element_order_is_full(g, f, p, q):
            return code
    raise ReducibleModulus("modulus admits no primitive element")


def _power_digits(A: np.ndarray, p: int, count: int) -> np.ndarray:
    """Digit vectors of alpha^0 .. alpha^(count-1) by repeated doubling."""
    m = A.shape[0]
    out = np.zeros((count, m), dtype=np.int64)
    out[0, 0] = 1
    have = 1
    step = A.copy()
    while have < count:
        take = min(have, count - have)
        out[have:have + take] = (out[:take] @ step.T) % p
        have += take
        step = (step @ step) % p
    return out


@lru_cache(maxsize=64)
def build_tower(p: int, m: int, m1: int, m2: int) -> FieldTower:
    """Construct the tower F_{p^m} with subfields F_{p^m1} and F_{p^m2}.

    >>> t = build_tower(3, 6, 2, 1)
    >>> t.q, t.size(t.m1), t.size(t.m2)
    (729, 9, 3)
    """
    for name, v in (("m", m), ("m1", m1), ("m2", m2)):
        if not isinstance(v, (int, np.integer)) or v < 1:
            raise NotDivisor(f"{name} must be a positive integer, got {v!r}")
    if p % 2 == 0 or not is_prime(p):
        raise NotOddPrime(f"p = {p} is not an odd prime")
    if m % m1:
        raise NotDivisor(f"m1 = {m1} does not divide m = {m}")
    if m % m2:
        raise NotDivisor(f"m2 = {m2} does not divide m = {m}")

    f = find_irreducible(p, m)
    alpha = _find_primitive(f, p, m)
    q = p ** m
    alpha_poly = _trim([(alpha // p ** i) % p for i in range(m)])
    A = _mult_matrix(alpha_poly, f, p)
    weights = p ** np.arange(m, dtype=np.int64)
    exp_digits = _power_digits(A, p, q - 1)
    exp = exp_digits @ weights
    log = np.full(q, -1, dtype=np.int64)
    log[exp] = np.arange(q - 1, dtype=np.int64)
    if np.count_nonzero(log >= 0) != q - 1:
        raise ReducibleModulus("alpha does not generate the multiplicative group")

    digits = ((np.arange(q, dtype=np.int64)[:, None] // weights) % p).astype(np.int8)

    allx = np.arange(q, dtype=np.int64)
    traces = {}
    divs = divisors(m)
    for F in divs:
        for T in divs:
            if F % T:
                continue
            acc = np.zeros((q, m), dtype=np.int64)
            lx = log[allx]
            for j in range(F // T):
                e = pow(p, T * j, q - 1)
                conj = np.where(allx == 0, 0, exp[(lx * e) % (q - 1)])
                acc += digits[conj]
            traces[(F, T)] = _readonly((acc % p) @ weights)

    return FieldTower(
        p=p,
        m=m,
        m1=m1,
        m2=m2,
        modulus=f,
        alpha=int(alpha),
        _exp=_readonly(exp),
        _log=_readonly(log),
        _digits=_readonly(digits),
        _weights=_readonly(weights),
        _traces=traces,
    )


def arith(tower: FieldTower, op: str, x: ArrayLike, y: ArrayLike | None = None) -> ArrayLike:
    """Dispatch ``op`` in {add, sub, mul, inv, pow, neg, div} on the tower."""
    if op == "add":
        return tower.add(x, y)
    if op == "sub":
        return tower.sub(x, y)
    if op == "mul":
        return tower.mul(x, y)
    if op == "div":
        return tower.div(x, y)
    if op == "inv":
        return tower.inv(x)
    if op == "neg":
        return tower.neg(x)
    if op == "pow":
        return tower.power(x, int(y))
    raise ValueError(f"unknown operation {op!r}")
