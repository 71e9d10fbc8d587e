import pytest

from augtrace.bounds import (
    INCONCLUSIVE,
    OPTIMAL_OR_ALMOST,
    BoundReport,
    bound_report,
    classify_dual,
    classify_lrc,
    cm_k_bound,
    griesmer_d_opt,
    griesmer_min_length,
    k_opt_upper,
    singleton_like_d,
    sphere_packing_excludes,
)
from augtrace.cli import DUAL_TOWERS, EXAMPLE_TOWERS
from augtrace.codes import CodeParams, build_code, code_params, weight_distribution_fourier
from augtrace.gf import build_tower


def test_griesmer_examples():
    assert griesmer_min_length(5, 12, 3) == 20
    assert griesmer_min_length(6, 12, 3) == 21
    assert griesmer_min_length(1, 7, 4) == 7
    with pytest.raises(ValueError):
        griesmer_min_length(0, 1, 3)


def test_k_opt_examples():
    assert k_opt_upper(6, 4, 3) == 2
    assert k_opt_upper(18, 12, 3) == 3
    assert k_opt_upper(18, 16, 9) == 2
    assert k_opt_upper(3, 4, 3) == 0


def test_cm_examples():
    assert cm_k_bound(9, 4, 2, 3) == 4
    assert cm_k_bound(21, 12, 2, 3) == 5
    assert cm_k_bound(21, 16, 2, 9) == 4
    # no admissible t falls back to the plain dimension bound
    assert cm_k_bound(2, 1, 2, 3) == k_opt_upper(2, 1, 3)


def test_singleton_like_examples():
    assert singleton_like_d(9, 4, 2) == 5
    assert singleton_like_d(21, 5, 2) == 15
    for n, k in [(10, 3), (7, 7), (20, 1)]:
        assert singleton_like_d(n, k, k) == n - k + 1


def test_sphere_packing_examples():
    assert sphere_packing_excludes(81, 74, 5, 3)
    assert not sphere_packing_excludes(30, 29, 1, 5)
    assert not sphere_packing_excludes(9, 5, 3, 3)


def test_classify_examples():
    assert classify_lrc(CodeParams(9, 4, 4, 3), 2) == {"k-optimal", "almost-d-optimal"}
    assert "k-optimal" in classify_lrc(CodeParams(21, 5, 12, 3), 2)
    assert "almost-k-optimal" in classify_lrc(CodeParams(21, 3, 16, 9), 2)
    assert "griesmer-optimal" in classify_lrc(CodeParams(21, 5, 12, 3), 2)


def test_classify_dual_examples():
    assert classify_dual(81, 74, 3) == OPTIMAL_OR_ALMOST
    assert classify_dual(9, 5, 3) == OPTIMAL_OR_ALMOST
    assert classify_dual(21, 18, 9) == OPTIMAL_OR_ALMOST
    assert classify_dual(10, 2, 3) == INCONCLUSIVE


def test_k_opt_monotone():
    for q in (3, 5, 9):
        for d in range(1, 31):
            prev = 0
            for n in range(1, 101):
                k = k_opt_upper(n, d, q)
                assert k >= prev
                prev = k
                if k:
                    assert griesmer_min_length(k, d, q) <= n < griesmer_min_length(k + 1, d, q)
                if d > 1:
                    assert k <= k_opt_upper(n, d - 1, q)


def test_cm_bounded_by_first_term():
    for q in (3, 9):
        for n in range(3, 60):
            for d in range(1, n + 1, 3):
                for r in (1, 2, 3):
                    if n >= r + 1:
                        assert cm_k_bound(n, d, r, q) <= r + k_opt_upper(n - r - 1, d, q)


def _constructed():
    towers = {t for t, _ in EXAMPLE_TOWERS} | {t for t, _ in DUAL_TOWERS}
    for t in sorted(towers):
        code = build_code(build_tower(*t))
        yield t, code_params(code, weight_distribution_fourier(code))


def test_bounds_hold_for_constructed_codes():
    for t, cp in _constructed():
        assert cp.d <= singleton_like_d(cp.n, cp.k, 2), t
        assert cp.k <= cm_k_bound(cp.n, cp.d, 2, cp.q), t
        assert not sphere_packing_excludes(cp.n, cp.k, 3, cp.q), t
        assert griesmer_min_length(cp.k, cp.d, cp.q) <= cp.n, t
        assert cp.d <= griesmer_d_opt(cp.n, cp.k, cp.q)


def test_report_round_trip_and_consistency():
    rep = bound_report(CodeParams(21, 5, 12, 3), 2)
    assert rep.consistent()
    assert BoundReport.from_dict(rep.to_dict()) == rep
    assert rep.cm_k == 5 and rep.singleton_like_d == 15
    rep.labels.add("d-optimal")
    assert not rep.consistent()
