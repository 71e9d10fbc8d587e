"""Exact arithmetic in Z[zeta_p] for an odd prime p.

A :class:`CycInt` stores the coefficients ``(a_0, ..., a_{p-2})`` of
``sum a_k zeta^k`` in the integral basis ``1, zeta, ..., zeta^(p-2)``; the
power ``zeta^(p-1)`` is eliminated with ``1 + zeta + ... + zeta^(p-1) = 0``.
Two values are equal iff their coefficient tuples are equal.

Coefficients are Python ints, so there is no overflow. Character sums over
fields of size at most 3^10 stay below 10^5 in absolute value, and products
formed during verification below 10^10.
"""

from __future__ import annotations

import cmath
from typing import Iterable, Sequence

import numpy as np

from .errors import MixedPrimes, NotOddPrime
from .gf import is_prime

__all__ = ["CycInt", "root", "from_exponent_counts"]


def _check_prime(p: int) -> None:
    if p % 2 == 0 or not is_prime(p):
        raise NotOddPrime(f"p = {p} is not an odd prime")


def _reduce(p: int, full: Sequence[int]) -> tuple[int, ...]:
    # full has length p: coefficients of zeta^0 .. zeta^(p-1)
    top = int(full[p - 1])
    return tuple(int(full[k]) - top for k in range(p - 1))


class CycInt:
    """An element of the ring of cyclotomic integers Z[zeta_p]."""

    __slots__ = ("p", "coeffs")

    def __init__(self, p: int, coeffs: Iterable[int] = ()):
        coeffs = [int(c) for c in coeffs]
        if len(coeffs) > p - 1:
            full = [0] * p
            for k, c in enumerate(coeffs):
                full[k % p] += c
            coeffs = list(_reduce(p, full))
        else:
            coeffs += [0] * (p - 1 - len(coeffs))
        self.p = p
        self.coeffs = tuple(coeffs)

    # constructors -----------------------------------------------------------
    @classmethod
    def integer(cls, p: int, n: int) -> "CycInt":
        return cls(p, [n])

    @classmethod
    def zero(cls, p: int) -> "CycInt":
        return cls(p)

    # ring structure -------------------------------------------------------
    def _coerce(self, other) -> "CycInt":
        if isinstance(other, CycInt):
            if other.p != self.p:
                raise MixedPrimes(f"cannot combine Z[zeta_{self.p}] and Z[zeta_{other.p}]")
            return other
        if isinstance(other, (int, np.integer)):
            return CycInt.integer(self.p, int(other))
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return CycInt(self.p, [a + b for a, b in zip(self.coeffs, other.coeffs)])

    __radd__ = __add__

    def __neg__(self):
        return CycInt(self.p, [-a for a in self.coeffs])

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return CycInt(self.p, [a - b for a, b in zip(self.coeffs, other.coeffs)])

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        p = self.p
        full = [0] * p
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    if b:
                        full[(i + j) % p] += a * b
        return CycInt(p, _reduce(p, full))

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if e < 0:
            raise ValueError("negative powers are not defined in Z[zeta_p]")
        result = CycInt.integer(self.p, 1)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def exact_div(self, n: int) -> "CycInt":
        """Divide by a rational integer; raises ``ArithmeticError`` if inexact."""
        if n == 0:
            raise ZeroDivisionError("division of a cyclotomic integer by 0")
        if any(a % n for a in self.coeffs):
            raise ArithmeticError(f"{self!r} is not divisible by {n}")
        return CycInt(self.p, [a // n for a in self.coeffs])

    # comparisons and conversions ------------------------------------------
    def __eq__(self, other):
        if isinstance(other, (int, np.integer)):
            return self.as_integer() == int(other)
        if not isinstance(other, CycInt):
            return NotImplemented
        return self.p == other.p and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.p, self.coeffs))

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def as_integer(self) -> int | None:
        """The rational integer ``n`` if ``self == n``, else ``None``."""
        if any(self.coeffs[1:]):
            return None
        return self.coeffs[0]

    def to_complex(self) -> complex:
        z = cmath.exp(2j * cmath.pi / self.p)
        return complex(sum(a * z ** k for k, a in enumerate(self.coeffs)))

    def __repr__(self):
        terms = []
        for k, a in enumerate(self.coeffs):
            if a:
                terms.append(f"{a}" if k == 0 else f"{a}*z^{k}")
        return f"CycInt(p={self.p}, {' + '.join(terms) or '0'})"

    def to_json(self) -> list[int]:
        return list(self.coeffs)


def root(p: int, k: int) -> CycInt:
    """``zeta_p ** k`` in canonical form."""
    _check_prime(p)
    full = [0] * p
    full[k % p] = 1
    return CycInt(p, _reduce(p, full))


def from_exponent_counts(p: int, counts: Sequence[int]) -> CycInt:
    """``sum counts[k] * zeta^k`` for a length-``p`` sequence of integer weights."""
    counts = [int(c) for c in counts]
    if len(counts) != p:
        raise ValueError("need exactly p exponent counts")
    return CycInt(p, _reduce(p, counts))
