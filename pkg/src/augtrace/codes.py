"""The augmented trace code and everything measured about it by direct
computation.

For a tower F_{p^m2} ⊆ F_{p^m1} ⊆ F_{p^m} (or with m1 | m2) the defining set
is ``D = {x in F_{p^m} : Tr_{p^m/p^m1}(x^2) = 0}`` listed with 0 last, and the
code is

    C = {(Tr_{p^m/p^m2}(b d_1) + c, ..., Tr_{p^m/p^m2}(b d_n) + c) :
         b in F_{p^m}, c in F_{p^m2}}.

Codewords are stored with entries encoded as big-field integers lying in the
degree-m2 subfield.  Weight distributions are computed over the set of
distinct codewords, which matters only when (b, c) -> codeword fails to be
injective.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from .errors import AlphabetTooSmall, BudgetExceeded, CodeTooShort, GroupErased, ZeroCode
from .gf import FieldTower

__all__ = [
    "DEFAULT_BUDGET",
    "DEFAULT_MAX_LENGTH",
    "LinearCode",
    "WeightDistribution",
    "CodeParams",
    "RepairGroup",
    "defining_set",
    "build_code",
    "rref_mod_p",
    "prime_field_basis",
    "weight_distribution_bruteforce",
    "weight_distribution_fourier",
    "code_params",
    "is_self_orthogonal",
    "p_divisibility",
    "dual_distance_small",
    "locality",
    "repair_erasure",
    "encode",
    "random_codeword",
]

DEFAULT_BUDGET = 2 ** 22
DEFAULT_MAX_LENGTH = 4096


# -- construction ----------------------------------------------------------------

def defining_set(tower: FieldTower) -> np.ndarray:
    """Elements with ``Tr_{p^m/p^m1}(x^2) = 0`` in enumeration order, 0 last."""
    xs = tower.elements()
    mask = tower.trace_table(tower.m1)[tower.mul(xs, xs)] == 0
    d = xs[mask]
    return np.concatenate([d[d != 0], d[d == 0]])


@dataclass(frozen=True, eq=False)
class LinearCode:
    """Generator data of the augmented code.

    ``gen_rows[0]`` is all-ones; ``gen_rows[1 + t]`` is
    ``Tr_{p^m/p^m2}(alpha^t d_i)`` for ``t < m/m2``.
    """

    tower: FieldTower
    coords: np.ndarray
    gen_rows: np.ndarray

    @property
    def n(self) -> int:
        return int(self.coords.shape[0])

    @property
    def q(self) -> int:
        return self.tower.size(self.tower.m2)

    @property
    def nominal_dimension(self) -> int:
        return self.tower.m // self.tower.m2 + 1

    def columns(self) -> np.ndarray:
        return self.gen_rows.T


def build_code(tower: FieldTower) -> LinearCode:
    d = defining_set(tower)
    t = tower.m // tower.m2
    rows = [np.ones_like(d)]
    tr = tower.trace_table(tower.m2)
    for j in range(t):
        rows.append(tr[tower.mul(tower.exp(j), d)])
    g = np.stack(rows).astype(np.int64)
    g.setflags(write=False)
    d.setflags(write=False)
    return LinearCode(tower=tower, coords=d, gen_rows=g)


def encode(code: LinearCode, b: int, c: int) -> np.ndarray:
    """The codeword ``(Tr_{p^m/p^m2}(b d_i) + c)_i``."""
    tower = code.tower
    tower.require_subfield(c, tower.m2)
    return tower.add(tower.trace_table(tower.m2)[tower.mul(b, code.coords)], c)


def random_codeword(code: LinearCode, rng: np.random.Generator) -> np.ndarray:
    tower = code.tower
    b = int(rng.integers(tower.q))
    sub = tower.subfield_elements(tower.m2)
    return encode(code, b, int(sub[rng.integers(len(sub))]))


# -- linear algebra over F_p ------------------------------------------------------

def rref_mod_p(a: np.ndarray, p: int) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form over F_p and its pivot columns."""
    a = np.array(a, dtype=np.int64) % p
    rows, cols = a.shape
    pivots: list[int] = []
    r = 0
    for col in range(cols):
        if r == rows:
            break
        nz = np.flatnonzero(a[r:, col])
        if nz.size == 0:
            continue
        piv = r + nz[0]
        a[[r, piv]] = a[[piv, r]]
        a[r] = (a[r] * pow(int(a[r, col]), -1, p)) % p
        others = np.flatnonzero(a[:, col])
        others = others[others != r]
        if others.size:
            a[others] = (a[others] - np.outer(a[others, col], a[r])) % p
        pivots.append(col)
        r += 1
    return a[:r], pivots


def _subfield_pivots(tower: FieldTower) -> list[int]:
    """Digit positions on which projection of the degree-m2 subfield is injective."""
    digits = tower.digits(tower.subfield_elements(tower.m2))
    _, piv = rref_mod_p(digits, tower.p)
    return piv


def prime_field_basis(code: LinearCode) -> tuple[np.ndarray, int]:
    """Independent F_p spanning rows of the code and the naive row count.

    Each codeword is flattened to ``n * m2`` digits over F_p by projecting
    every symbol onto the subfield pivot digits.  The returned matrix has
    full row rank; its row count divided by m2 is the dimension over
    F_{p^m2}.
    """
    tower = code.tower
    p, m = tower.p, tower.m
    piv = _subfield_pivots(tower)
    gens = [encode(code, p ** j, 0) for j in range(m)]
    gens += [np.full(code.n, int(c)) for c in _subfield_basis(tower)]
    flat = np.stack([tower.digits(w)[:, piv].reshape(-1) for w in gens])
    basis, _ = rref_mod_p(flat, p)
    return basis, len(gens)


def _subfield_basis(tower: FieldTower) -> list[int]:
    """An F_p-basis of the degree-m2 subfield (as big-field integers)."""
    sub = tower.subfield_elements(tower.m2)
    chosen: list[int] = []
    rows: list[np.ndarray] = []
    for x in sub[1:]:
        cand = rows + [tower.digits(int(x))]
        if len(rref_mod_p(np.stack(cand), tower.p)[1]) == len(cand):
            rows, chosen = cand, chosen + [int(x)]
            if len(chosen) == tower.m2:
                break
    return chosen


# -- weight distributions -----------------------------------------------------------

@dataclass
class WeightDistribution:
    """Frequencies of Hamming weights over the distinct codewords.

    ``collapse_factor`` is the number of (b, c) pairs mapping to each
    codeword; it is 1 exactly when the parametrization is injective.
    """

    counts: dict[int, int]
    collapse_factor: int = 1

    def __post_init__(self):
        self.counts = {int(w): int(f) for w, f in sorted(self.counts.items()) if f}

    @property
    def total(self) -> int:
        return sum(self.counts.values())

    def nonzero_weights(self) -> list[int]:
        return [w for w in self.counts if w]

    def min_weight(self) -> int:
        ws = self.nonzero_weights()
        if not ws:
            raise ZeroCode("the code has no nonzero codeword")
        return min(ws)

    def nonzero_items(self) -> list[tuple[int, int]]:
        return [(w, f) for w, f in self.counts.items() if w]

    def enumerator(self) -> str:
        terms = []
        for w, f in self.counts.items():
            terms.append(str(f) if w == 0 else f"{f}z^{w}")
        return " + ".join(terms)

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["weight", "frequency"])
        writer.writerows(self.counts.items())
        return buf.getvalue()

    @classmethod
    def from_csv(cls, text: str) -> "WeightDistribution":
        rows = list(csv.DictReader(io.StringIO(text)))
        return cls({int(r["weight"]): int(r["frequency"]) for r in rows})

    def to_dict(self) -> dict:
        return {"counts": {str(w): f for w, f in self.counts.items()},
                "collapse_factor": self.collapse_factor}

    @classmethod
    def from_dict(cls, d: dict) -> "WeightDistribution":
        return cls({int(w): int(f) for w, f in d["counts"].items()},
                   int(d.get("collapse_factor", 1)))


def _check_budget(code: LinearCode, budget: int, max_length: int) -> None:
    tower = code.tower
    size = tower.p ** (tower.m + tower.m2)
    if size > budget:
        raise BudgetExceeded(f"p^(m+m2) = {size} exceeds the enumeration budget {budget}")
    if code.n > max_length:
        raise BudgetExceeded(f"length {code.n} exceeds the limit {max_length}")


def weight_distribution_bruteforce(code: LinearCode, budget: int = DEFAULT_BUDGET,
                                   max_length: int = DEFAULT_MAX_LENGTH,
                                   chunk: int = 1 << 14) -> WeightDistribution:
    """Hamming weights of every distinct codeword, by explicit enumeration.

    The codeword set is the F_p-span of the images of an F_p-basis of
    F_{p^m} x F_{p^m2}; enumerating all combinations of an independent
    spanning set visits each distinct codeword exactly once.
    """
    _check_budget(code, budget, max_length)
    tower = code.tower
    p, m2 = tower.p, tower.m2
    basis, naive = prime_field_basis(code)
    rank = basis.shape[0]
    n = code.n
    bf = basis.astype(np.float64)
    hist = np.zeros(n + 1, dtype=np.int64)
    total = p ** rank
    powers = p ** np.arange(rank, dtype=np.int64)
    for start in range(0, total, chunk):
        idx = np.arange(start, min(start + chunk, total), dtype=np.int64)
        coeffs = ((idx[:, None] // powers[None, :]) % p).astype(np.float64)
        words = np.mod(coeffs @ bf, p).reshape(len(idx), n, m2)
        weights = np.count_nonzero(words.any(axis=2), axis=1)
        hist += np.bincount(weights, minlength=n + 1)
    return WeightDistribution({w: int(f) for w, f in enumerate(hist) if f},
                              collapse_factor=p ** (naive - rank))


def weight_distribution_fourier(code: LinearCode, max_states: int = 1 << 24) -> WeightDistribution:
    """Weight distribution through a discrete Fourier transform over F_p^K.

    With K independent F_p rows, coordinate i of the word with message u is
    zero iff ``u . M_i = 0`` for its K x m2 digit matrix M_i, so

        zeros(u) = p^(-m2) * sum_w F(w) zeta^(u.w),
        F(w) = #{(i, lam) : M_i lam = w}.

    One K-dimensional FFT of the histogram F yields zeros(u) for every u at
    cost O(K p^K) instead of O(n p^K).
    """
    tower = code.tower
    p, m2 = tower.p, tower.m2
    basis, naive = prime_field_basis(code)
    K = basis.shape[0]
    if p ** K > max_states:
        raise BudgetExceeded(f"p^K = {p ** K} exceeds the Fourier budget {max_states}")
    n = code.n
    mats = basis.reshape(K, n, m2).transpose(1, 0, 2)      # n x K x m2
    lams = np.array(np.meshgrid(*[np.arange(p)] * m2, indexing="ij")).reshape(m2, -1)
    vecs = np.einsum("ikj,jl->ilk", mats, lams) % p        # n x p^m2 x K
    flat = np.ravel_multi_index(vecs.reshape(-1, K).T, (p,) * K)
    hist = np.bincount(flat, minlength=p ** K).reshape((p,) * K)
    # fftn uses exp(-2 pi i ...); the zero count is real so the sign is immaterial
    zeros = np.fft.fftn(hist).real / p ** m2
    weights = n - np.rint(zeros).astype(np.int64)
    counts = np.bincount(weights.ravel(), minlength=n + 1)
    return WeightDistribution({w: int(f) for w, f in enumerate(counts) if f},
                              collapse_factor=p ** (naive - K))


# -- parameters and structural properties -----------------------------------------

@dataclass(frozen=True)
class CodeParams:
    n: int
    k: int
    d: int
    q: int
    injective: bool = True
    nominal_k: int | None = None

    @property
    def k_matches(self) -> bool:
        return self.nominal_k is None or self.k == self.nominal_k

    def as_tuple(self) -> tuple[int, int, int]:
        return (self.n, self.k, self.d)

    def __str__(self):
        return f"[{self.n},{self.k},{self.d}]_{self.q}"


def code_params(code: LinearCode, wd: WeightDistribution) -> CodeParams:
    q = code.q
    total = wd.total
    k = 0
    while q ** k < total:
        k += 1
    if q ** k != total:
        raise ValueError(f"{total} distinct codewords is not a power of {q}")
    return CodeParams(n=code.n, k=k, d=wd.min_weight(), q=q,
                      injective=wd.collapse_factor == 1,
                      nominal_k=code.nominal_dimension)


def is_self_orthogonal(code: LinearCode) -> bool:
    """True iff every pair of generator rows has zero inner product over F_{p^m2}."""
    tower = code.tower
    g = code.gen_rows
    for a in range(g.shape[0]):
        for b in range(a, g.shape[0]):
            if tower.sum(tower.mul(g[a], g[b])) != 0:
                return False
    return True


def p_divisibility(wd: WeightDistribution, p: int) -> int:
    """Largest power of p dividing every nonzero weight."""
    ws = wd.nonzero_weights()
    if not ws:
        raise ZeroCode("the code has no nonzero codeword")
    e = 1
    while all(w % (e * p) == 0 for w in ws):
        e *= p
    return e


def _normalized_columns(code: LinearCode) -> list[tuple[int, ...] | None]:
    """Each column scaled so its first nonzero entry is 1; None for zero columns."""
    tower = code.tower
    out: list[tuple[int, ...] | None] = []
    for col in code.columns():
        nz = np.flatnonzero(col)
        if nz.size == 0:
            out.append(None)
            continue
        inv = tower.inv(int(col[nz[0]]))
        out.append(tuple(int(v) for v in tower.mul(col, inv)))
    return out


def _dependent_pair(normed) -> tuple[int, int] | None:
    seen: dict[tuple[int, ...], int] = {}
    for i, key in enumerate(normed):
        if key in seen:
            return seen[key], i
        seen[key] = i
    return None


def _triple_through(code: LinearCode, i: int, j: int, lookup: dict) -> int | None:
    """A third column in span{g_i, g_j}, if one exists."""
    tower = code.tower
    cols = code.columns()
    for lam in tower.subfield_nonzero(tower.m2):
        v = tower.add(cols[i], tower.mul(cols[j], int(lam)))
        nz = np.flatnonzero(v)
        if nz.size == 0:
            continue
        key = tuple(int(x) for x in tower.mul(v, tower.inv(int(v[nz[0]]))))
        k = lookup.get(key)
        if k is not None and k not in (i, j):
            return k
    return None


def dual_distance_small(code: LinearCode, exhaustive: bool = False) -> int | None:
    """Minimum distance of the dual code when it is at most 3, else None.

    A zero column gives 1, two projectively equal columns give 2, and three
    columns in a common plane give 3.  The triple search first tries the
    constructive witness ``(i, j, n)`` with ``d_j = d_i / 2`` and then, or
    when ``exhaustive`` is set, every pair.
    """
    normed = _normalized_columns(code)
    if any(c is None for c in normed):
        return 1
    if _dependent_pair(normed) is not None:
        return 2
    lookup = {key: i for i, key in enumerate(normed)}
    n = code.n
    if not exhaustive and n >= 3:
        tower = code.tower
        index = {int(x): i for i, x in enumerate(code.coords)}
        half = tower.inv(tower.scale(2, 1))
        for i in range(n - 1):
            j = index.get(int(tower.mul(half, int(code.coords[i]))))
            if j is not None and _triple_through(code, i, j, lookup) is not None:
                return 3
    for i in range(n):
        for j in range(i + 1, n):
            if _triple_through(code, i, j, lookup) is not None:
                return 3
    return None


# -- locality and repair -------------------------------------------------------------

@dataclass(frozen=True)
class RepairGroup:
    """Column ``pos`` equals ``coef_j * g_j + coef_aux * g_aux``."""

    pos: int
    j: int
    aux: int
    coef_j: int
    coef_aux: int

    def to_dict(self) -> dict:
        return {"pos": self.pos, "j": self.j, "aux": self.aux,
                "coef_j": self.coef_j, "coef_aux": self.coef_aux}


def locality(code: LinearCode, u: int = 2) -> tuple[int, list[RepairGroup]]:
    """Locality and a witnessed repair group for every coordinate.

    For ``d_i != 0`` the group is ``(j, n)`` with ``d_j = u^{-1} d_i`` and
    ``g_i = u g_j + (1 - u) g_n``; ``u`` is taken from F_p so that ``d_j``
    stays in the defining set.  The last coordinate (``d_n = 0``) is repaired
    from ``d_j`` and ``-d_j`` with coefficients ``1/2, 1/2``.  The returned
    locality is 1 if some column is a multiple of another, else 2.
    """
    tower = code.tower
    if code.q < 3:
        raise AlphabetTooSmall("the repair construction needs an alphabet of size >= 3")
    if code.n < 3:
        raise CodeTooShort(f"length {code.n} leaves no two other coordinates to repair from")
    p = tower.p
    if u % p in (0, 1):
        raise ValueError("u must differ from 0 and 1 in F_p")
    u %= p
    n = code.n
    index = {int(x): i for i, x in enumerate(code.coords)}
    uinv = tower.inv(u)
    groups: list[RepairGroup] = []
    for i in range(n - 1):
        j = index[int(tower.mul(uinv, int(code.coords[i])))]
        groups.append(RepairGroup(i, j, n - 1, u, (1 - u) % p))
    k = index[int(tower.neg(int(code.coords[0])))]
    half = pow(2, -1, p)
    groups.append(RepairGroup(n - 1, 0, k, half, half))
    _verify_groups(code, groups)
    r = 1 if _dependent_pair(_normalized_columns(code)) is not None else 2
    return r, groups


def _verify_groups(code: LinearCode, groups: Iterable[RepairGroup]) -> None:
    tower = code.tower
    cols = code.columns()
    for g in groups:
        combo = tower.add(tower.scale(g.coef_j, cols[g.j]), tower.scale(g.coef_aux, cols[g.aux]))
        if not np.array_equal(combo, cols[g.pos]):
            raise AssertionError(f"repair witness for coordinate {g.pos} is wrong")


def repair_erasure(code: LinearCode, word: Sequence[int], pos: int,
                   erased: Iterable[int] | None = None,
                   groups: Sequence[RepairGroup] | None = None) -> int:
    """Restore ``word[pos]`` from its two repair-group members."""
    erased = {pos} if erased is None else set(erased) | {pos}
    if groups is None:
        groups = locality(code)[1]
    g = groups[pos]
    if g.j in erased or g.aux in erased:
        raise GroupErased(f"repair group ({g.j}, {g.aux}) of coordinate {pos} is not intact")
    tower = code.tower
    return int(tower.add(tower.scale(g.coef_j, int(word[g.j])),
                         tower.scale(g.coef_aux, int(word[g.aux]))))
