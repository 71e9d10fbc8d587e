"""Classical and locally-recoverable-code bounds, and optimality labels.

``k_opt_upper`` stands in for the (generally unknown) largest dimension of
an [n, *, d] code: it is the largest k allowed by the Griesmer bound.  The
resulting ``cm_k_bound`` is therefore an upper bound on the true
Cadambe-Mazumdar value.
"""

from __future__ import annotations

from dataclasses import asdict, dataclass, field
from math import comb

from .codes import CodeParams

__all__ = [
    "LRC_LABELS",
    "BoundReport",
    "griesmer_min_length",
    "k_opt_upper",
    "cm_k_bound",
    "singleton_like_d",
    "sphere_packing_excludes",
    "classify_lrc",
    "classify_dual",
    "griesmer_d_opt",
    "bound_report",
]

LRC_LABELS = frozenset({"d-optimal", "almost-d-optimal", "k-optimal", "almost-k-optimal"})
OPTIMAL_OR_ALMOST = "optimal-or-almost"
INCONCLUSIVE = "inconclusive"


def _ceil_div(a: int, b: int) -> int:
    return -(-a // b)


def griesmer_min_length(k: int, d: int, q: int) -> int:
    """Least length allowed for an [n, k, d]_q code: sum of ceil(d / q^i), i < k."""
    if k < 1 or d < 1 or q < 2:
        raise ValueError("need k >= 1, d >= 1, q >= 2")
    return sum(_ceil_div(d, q ** i) for i in range(k))


def k_opt_upper(n: int, d: int, q: int) -> int:
    """Largest k with ``griesmer_min_length(k, d, q) <= n``; 0 when n < d."""
    if d < 1:
        raise ValueError("need d >= 1")
    if n < d:
        return 0
    k, length = 1, d
    while length + _ceil_div(d, q ** k) <= n:
        length += _ceil_div(d, q ** k)
        k += 1
    return k


def cm_k_bound(n: int, d: int, r: int, q: int) -> int:
    """``min_t [r t + k_opt_upper(n - t(r+1), d, q)]`` over 1 <= t <= n/(r+1).

    When no t is admissible (n < r + 1) the plain ``k_opt_upper(n, d, q)``
    is returned.
    """
    if r < 1:
        raise ValueError("need r >= 1")
    ts = range(1, n // (r + 1) + 1)
    if not ts:
        return k_opt_upper(n, d, q)
    return min(r * t + k_opt_upper(n - t * (r + 1), d, q) for t in ts)


def singleton_like_d(n: int, k: int, r: int) -> int:
    """Right-hand side of ``d <= n - k - ceil(k/r) + 2``."""
    if r < 1 or not 1 <= k <= n:
        raise ValueError("need r >= 1 and 1 <= k <= n")
    return n - k - _ceil_div(k, r) + 2


def sphere_packing_excludes(n: int, k: int, d: int, q: int) -> bool:
    """True iff no [n, k, d]_q code can exist by the sphere-packing bound."""
    if d < 1:
        raise ValueError("need d >= 1")
    radius = (d - 1) // 2
    ball = sum(comb(n, i) * (q - 1) ** i for i in range(radius + 1))
    return q ** (n - k) < ball


def griesmer_d_opt(n: int, k: int, q: int) -> int:
    """Largest d with ``griesmer_min_length(k, d, q) <= n``."""
    d = 0
    while griesmer_min_length(k, d + 1, q) <= n:
        d += 1
    return d


def classify_lrc(params: CodeParams, r: int) -> set[str]:
    n, k, d, q = params.n, params.k, params.d, params.q
    labels: set[str] = set()
    s = singleton_like_d(n, k, r)
    if d == s:
        labels.add("d-optimal")
    elif d == s - 1:
        labels.add("almost-d-optimal")
    cm = cm_k_bound(n, d, r, q)
    if k == cm:
        labels.add("k-optimal")
    elif k == cm - 1:
        labels.add("almost-k-optimal")
    if griesmer_min_length(k, d + 1, q) > n >= griesmer_min_length(k, d, q):
        labels.add("griesmer-optimal")
    return labels


def classify_dual(n: int, k_dual: int, q: int) -> str:
    """Verdict for a dual code of distance 3 that beats the sphere-packing test at d = 5."""
    return OPTIMAL_OR_ALMOST if sphere_packing_excludes(n, k_dual, 5, q) else INCONCLUSIVE


@dataclass
class BoundReport:
    params: CodeParams
    r: int
    singleton_like_d: int
    cm_k: int
    griesmer_d_opt: int
    dual_sphere_packing_verdict: str
    labels: set[str] = field(default_factory=set)

    def consistent(self) -> bool:
        """Labels agree with a fresh recomputation from the stored parameters."""
        return self.labels == classify_lrc(self.params, self.r)

    def to_dict(self) -> dict:
        return {
            "params": asdict(self.params),
            "r": self.r,
            "singleton_like_d": self.singleton_like_d,
            "cm_k": self.cm_k,
            "griesmer_d_opt": self.griesmer_d_opt,
            "dual_sphere_packing_verdict": self.dual_sphere_packing_verdict,
            "labels": sorted(self.labels),
        }

    @classmethod
    def from_dict(cls, d: dict) -> "BoundReport":
        return cls(params=CodeParams(**d["params"]), r=d["r"],
                   singleton_like_d=d["singleton_like_d"], cm_k=d["cm_k"],
                   griesmer_d_opt=d["griesmer_d_opt"],
                   dual_sphere_packing_verdict=d["dual_sphere_packing_verdict"],
                   labels=set(d["labels"]))


def bound_report(params: CodeParams, r: int) -> BoundReport:
    return BoundReport(
        params=params,
        r=r,
        singleton_like_d=singleton_like_d(params.n, params.k, r),
        cm_k=cm_k_bound(params.n, params.d, r, params.q),
        griesmer_d_opt=griesmer_d_opt(params.n, params.k, params.q),
        dual_sphere_packing_verdict=classify_dual(params.n, params.n - params.k, params.q),
        labels=classify_lrc(params, r),
    )
