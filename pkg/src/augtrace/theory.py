"""Closed-form predictions for the augmented trace code.

Every Gauss-sum symbol is replaced by a signed p-power ``(-1)^l p^(h/2)``:

* ``G   = (-1)^l2 p^(m/2)``                    (m even)
* ``E1  = G G' eta'(-1)   = (-1)^l1 p^((m+m1)/2)``
* ``E4  = G G'' eta''(-1) = (-1)^l4 p^((m+m2)/2)``
* ``E5  = G G' G'' eta''(-1) = (-1)^l5 p^((m+m1+m2)/2)``
* ``E6  = G'' G' eta''(-1)   = (-1)^l6 p^((m1+m2)/2)``
* ``G'' = (-1)^l7 p^(m2/2)``

where ``G, G', G''`` are the quadratic Gauss sums of the fields of degree
m, m1, m2.  All arithmetic is done with exact fractions; a weight or
frequency that fails to be a nonnegative integer is an internal error
under the case hypotheses and a diagnostic otherwise.
"""

from __future__ import annotations

from dataclasses import asdict, dataclass, field
from fractions import Fraction
from typing import Optional

from .errors import IncomparableLevels, InternalConsistencyError, NotDivisor, NotOddPrime
from .gf import is_prime

__all__ = [
    "CaseTag",
    "Exponents",
    "PredictedSpectrum",
    "case_tag",
    "predicted_length",
    "exponents",
    "predicted_spectrum",
    "predicted_self_orthogonality",
]


def _parity(x: int) -> str:
    return "odd" if x % 2 else "even"


def _check(p: int, m: int, *levels: int) -> None:
    if p % 2 == 0 or not is_prime(p):
        raise NotOddPrime(f"p = {p} is not an odd prime")
    for L in levels:
        if L < 1 or m % L:
            raise NotDivisor(f"{L} does not divide {m}")


@dataclass(frozen=True)
class CaseTag:
    relation: str
    parity_m_over_m1: str
    parity_m2_over_m1: str = "n/a"
    parity_m_over_m2: str = "n/a"

    @property
    def label(self) -> str:
        """Short name of the weight table that applies."""
        if self.relation == "m2_divides_m1":
            return f"m2|m1, m/m1 {self.parity_m_over_m1}"
        return (f"m1|m2, m/m1 {self.parity_m_over_m1}, m2/m1 {self.parity_m2_over_m1}, "
                f"m/m2 {self.parity_m_over_m2}")


def case_tag(p: int, m: int, m1: int, m2: int, relation: str | None = None) -> CaseTag:
    """Classify a tower; ``m2_divides_m1`` wins when both relations hold."""
    _check(p, m, m1, m2)
    rels = [r for r, ok in (("m2_divides_m1", m1 % m2 == 0), ("m1_divides_m2", m2 % m1 == 0)) if ok]
    if not rels:
        raise IncomparableLevels(f"neither m2 | m1 nor m1 | m2 for m1={m1}, m2={m2}")
    relation = relation or rels[0]
    if relation not in rels:
        raise IncomparableLevels(f"relation {relation} does not hold for m1={m1}, m2={m2}")
    if relation == "m2_divides_m1":
        return CaseTag(relation, _parity(m // m1))
    return CaseTag(relation, _parity(m // m1), _parity(m2 // m1), _parity(m // m2))


# -- exponents ------------------------------------------------------------------

@dataclass(frozen=True)
class Exponents:
    """Sign exponents; an entry is None when its formula is not integral."""

    l1: Optional[int] = None
    l2: Optional[int] = None
    l3: Optional[int] = None
    l4: Optional[int] = None
    l5: Optional[int] = None
    l6: Optional[int] = None
    l7: Optional[int] = None

    def to_dict(self) -> dict:
        return asdict(self)


def _int_or_none(x: Fraction) -> Optional[int]:
    return int(x) if x.denominator == 1 else None


def exponents(p: int, m: int, m1: int, m2: int | None = None) -> Exponents:
    kappa = Fraction((p - 1) // 2) ** 2
    half = lambda s: kappa * s / 2  # noqa: E731
    l1 = half(m + m1) + m1 + m - 2 + Fraction(p ** m1 - 1, 2)
    l2 = half(m) + m - 1
    out = dict(l1=_int_or_none(l1), l2=_int_or_none(l2))
    if m2 is not None:
        l3 = half(m + m2) + m2 + m - 2
        l4 = l3 + Fraction(p ** m2 - 1, 2)
        l5 = half(m + m1 + m2) + m + m1 + m2 - 3 + Fraction(p ** m2 - 1, 2)
        l6 = half(m1 + m2) + m1 + m2 - 2 + Fraction(p ** m2 - 1, 2)
        l7 = half(m2) + m2 - 1
        out.update(l3=_int_or_none(l3), l4=_int_or_none(l4), l5=_int_or_none(l5),
                   l6=_int_or_none(l6), l7=_int_or_none(l7))
    return Exponents(**out)


class _NotIntegral(ArithmeticError):
    pass


def _pw(p: int, e) -> Fraction:
    """``p**e`` for an integral (possibly negative) exponent."""
    e = Fraction(e)
    if e.denominator != 1:
        raise _NotIntegral(f"p-power exponent {e} is not an integer")
    return Fraction(p) ** int(e)


def _signed(p: int, l: Optional[int], twice: int) -> Fraction:
    """``(-1)^l p^(twice/2)``."""
    if l is None:
        raise _NotIntegral("sign exponent is not an integer")
    return (-1) ** (l % 2) * _pw(p, Fraction(twice, 2))


def predicted_length(p: int, m: int, m1: int) -> int:
    """Size of the defining set."""
    _check(p, m, m1)
    if (m // m1) % 2:
        return p ** (m - m1)
    G = _signed(p, exponents(p, m, m1).l2, m)
    n = _pw(p, m - m1) + (p ** m1 - 1) * G / _pw(p, m1)
    if n.denominator != 1:
        raise InternalConsistencyError(f"non-integral length {n}")
    return int(n)


# -- hypotheses -------------------------------------------------------------------

def _hypotheses(m: int, m1: int, m2: int, tag: CaseTag) -> tuple[bool, bool, str, str]:
    """(hypothesis_ok, self-orthogonality claimed, hypothesis text, claim text)."""
    if tag.relation == "m2_divides_m1":
        if tag.parity_m_over_m1 == "odd":
            return m // m1 > 1, m > m1 + 2 * m2, "m/m1 > 1", "m > m1 + 2 m2"
        return m // m1 > 2, True, "m/m1 > 2", "unconditional"
    if tag.parity_m_over_m1 == "odd":
        return m > m1, m > 2 * m1 + m2, "m > m1", "m > 2 m1 + m2"
    if tag.parity_m2_over_m1 == "odd":
        return m > 2 * m1, m > m1 + m2, "m > 2 m1", "m > m1 + m2"
    return m > 2 * m1, m > 2 * m1 + m2, "m > 2 m1", "m > 2 m1 + m2"


def predicted_self_orthogonality(p: int, m: int, m1: int, m2: int,
                                 relation: str | None = None) -> tuple[bool, str]:
    """Whether the closed form claims self-orthogonality, and the condition used.

    ``False`` means no claim is made, not that the code fails to be
    self-orthogonal.
    """
    tag = case_tag(p, m, m1, m2, relation)
    _, claimed, _, cond = _hypotheses(m, m1, m2, tag)
    return claimed, cond


# -- spectra ------------------------------------------------------------------------

@dataclass
class PredictedSpectrum:
    length: int | None
    dimension: int
    rows: list[tuple[int, int]]
    hypothesis_ok: bool
    self_orthogonal_claimed: bool
    case: CaseTag
    hypothesis: str = ""
    claim_condition: str = ""
    diagnostic: str | None = None

    def as_dict(self) -> dict[int, int]:
        return dict(self.rows)

    @property
    def total(self) -> int:
        return sum(f for _, f in self.rows)

    def to_dict(self) -> dict:
        return {
            "length": self.length,
            "dimension": self.dimension,
            "rows": [[w, f] for w, f in self.rows],
            "hypothesis_ok": self.hypothesis_ok,
            "self_orthogonal_claimed": self.self_orthogonal_claimed,
            "case": asdict(self.case),
            "hypothesis": self.hypothesis,
            "claim_condition": self.claim_condition,
            "diagnostic": self.diagnostic,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "PredictedSpectrum":
        return cls(length=d["length"], dimension=d["dimension"],
                   rows=[(int(w), int(f)) for w, f in d["rows"]],
                   hypothesis_ok=d["hypothesis_ok"],
                   self_orthogonal_claimed=d["self_orthogonal_claimed"],
                   case=CaseTag(**d["case"]), hypothesis=d.get("hypothesis", ""),
                   claim_condition=d.get("claim_condition", ""),
                   diagnostic=d.get("diagnostic"))


def _rows_m2_divides_m1(p: int, m: int, m1: int, m2: int, ex: Exponents) -> list:
    P = lambda e: _pw(p, e)  # noqa: E731
    A = P(m - m1 - m2)
    if (m // m1) % 2:
        n = P(m - m1)
        E1 = _signed(p, ex.l1, m + m1)
        rows = [(n, p ** m2 - 1), (n - A, p ** m2 * (P(m - m1) - 1))]
        for s in (1, -1):
            B = Fraction(p ** m1 - 1, 2) * (P(m - m1) + s * E1 / P(m1))
            rows.append((n - A + s * E1 / P(m1 + m2), (p ** m2 - 1) * B))
            rows.append((n - A - s * (p ** m2 - 1) * E1 / P(m1 + m2), B))
        return rows
    G = _signed(p, ex.l2, m)
    n = P(m - m1) + (p ** m1 - 1) * G / P(m1)
    N0 = P(m - m1) + (p ** m1 - 1) * G / P(m1) - 1
    A4 = P(m) - P(m - m1) - (p ** m1 - 1) * G / P(m1)
    return [
        (n, p ** m2 - 1),
        (P(m - m1) - A, N0),
        (n - A, (p ** m2 - 1) * N0),
        (n - A - (p ** m1 - p ** m2) * G / P(m1 + m2), A4),
        (n - A - G / P(m2), (p ** m2 - 1) * A4),
    ]


def _rows_m1_divides_m2(p: int, m: int, m1: int, m2: int, ex: Exponents, tag: CaseTag) -> list:
    P = lambda e: _pw(p, e)  # noqa: E731
    A = P(m - m1 - m2)
    half2 = Fraction(p ** m2 - 1, 2)
    if tag.parity_m_over_m1 == "odd":
        n = P(m - m1)
        E4 = _signed(p, ex.l4, m + m2)
        rows = [(n, p ** m2 - 1), (n - A, p ** m2 * (P(m - m2) - 1))]
        for s in (1, -1):
            C = half2 * (P(m - m2) + s * E4 / P(m2))
            rows.append((n - A - s * (p ** m1 - 1) * E4 / P(m1 + m2), P(m2 - m1) * C))
            rows.append((n - A + s * E4 / P(m1 + m2), (P(m2) - P(m2 - m1)) * C))
        return rows

    G = _signed(p, ex.l2, m)
    n = P(m - m1) + (p ** m1 - 1) * G / P(m1)
    if tag.parity_m_over_m2 == "even":
        N0 = P(m - m2) + (p ** m2 - 1) * G / P(m2) - 1
    else:
        N0 = P(m - m2) - 1
    rows = [(n, p ** m2 - 1), (P(m - m1) - A, N0)]

    if tag.parity_m2_over_m1 == "odd":
        E5 = _signed(p, ex.l5, m + m1 + m2)
        E6 = _signed(p, ex.l6, m1 + m2)
        rows.append((n - A, (p ** m2 - 1) * N0 + P(m2 - m1) * (P(m) - 1 - N0)))
        for s in (1, -1):
            freq = ((p ** m2 - 1) * Fraction(p ** m1 - 1, 2) * (P(m2 - m1) + s * E6 / P(m1))
                    * (P(m - m2) - G / P(m2)))
            rows.append((n - A - s * E5 / P(m1 + m2), freq))
        return rows

    E4 = _signed(p, ex.l4, m + m2)
    G2 = _signed(p, ex.l7, m2)
    rows.append((n - A, (p ** m2 - 1) * N0))
    for s in (1, -1):
        if tag.parity_m_over_m2 == "even":
            bcount = half2 * (P(m - m2) - G / P(m2))
        else:
            bcount = half2 * (P(m - m2) + s * E4 / P(m2))
        zero_or_c0 = P(m2 - m1) + s * (p ** m1 - 1) * G2 / P(m1)
        rest = P(m2) - P(m2 - m1) - s * (p ** m1 - 1) * G2 / P(m1)
        rows.append((n - A - s * (p ** m1 - 1) * E4 / P(m1 + m2), bcount * zero_or_c0))
        rows.append((n - A + s * E4 / P(m1 + m2), bcount * rest))
    return rows


def _finalize(raw: list) -> tuple[list[tuple[int, int]], int]:
    """Merge equal weights and drop empty rows; returns rows and weight-0 mass."""
    merged: dict[Fraction, Fraction] = {}
    for w, f in raw:
        w, f = Fraction(w), Fraction(f)
        merged[w] = merged.get(w, Fraction(0)) + f
    rows: list[tuple[int, int]] = []
    zero_mass = 0
    for w in sorted(merged):
        f = merged[w]
        if f == 0:
            continue
        if w.denominator != 1 or f.denominator != 1:
            raise _NotIntegral(f"row ({w}, {f}) is not integral")
        if w < 0 or f < 0:
            raise _NotIntegral(f"row ({w}, {f}) is negative")
        if w == 0:
            zero_mass += int(f)
            continue
        rows.append((int(w), int(f)))
    return rows, zero_mass


def predicted_spectrum(p: int, m: int, m1: int, m2: int,
                       relation: str | None = None) -> PredictedSpectrum:
    """Nonzero weights and their frequencies as given by the closed forms.

    Outside the case hypothesis the rows are still produced when they
    are integral, for diagnostic comparison; otherwise ``rows`` is empty and
    ``diagnostic`` explains why.
    """
    tag = case_tag(p, m, m1, m2, relation)
    ok, claimed, hyp, cond = _hypotheses(m, m1, m2, tag)
    ex = exponents(p, m, m1, m2)
    pred = PredictedSpectrum(length=None, dimension=m // m2 + 1, rows=[], hypothesis_ok=ok,
                             self_orthogonal_claimed=claimed, case=tag,
                             hypothesis=hyp, claim_condition=cond)
    try:
        pred.length = predicted_length(p, m, m1)
        if tag.relation == "m2_divides_m1":
            raw = _rows_m2_divides_m1(p, m, m1, m2, ex)
        else:
            raw = _rows_m1_divides_m2(p, m, m1, m2, ex, tag)
        pred.rows, zero_mass = _finalize(raw)
    except (_NotIntegral, InternalConsistencyError) as exc:
        if ok:
            raise InternalConsistencyError(f"closed form for {(p, m, m1, m2)}: {exc}") from exc
        pred.rows = []
        pred.diagnostic = f"closed form not evaluable outside the hypothesis: {exc}"
        return pred
    if zero_mass:
        if ok:
            raise InternalConsistencyError(f"predicted {zero_mass} nonzero messages of weight 0")
        pred.diagnostic = f"{zero_mass} nonzero messages predicted to give the zero word"
    return pred
