"""One test per acceptance criterion; each records a PASS/FAIL line.

The lines are printed in the terminal summary of every pytest run.
"""

import subprocess
import sys
import time
from pathlib import Path

from augtrace.bounds import (
    LRC_LABELS,
    OPTIMAL_OR_ALMOST,
    classify_dual,
    classify_lrc,
    cm_k_bound,
    k_opt_upper,
    singleton_like_d,
)
from augtrace.charsums import (
    DEFAULT_TOWERS,
    check_count_quadric,
    check_count_subfield_quadric,
    check_gauss_sign,
    check_omega_readings,
    check_weil_sum,
    gauss_sign,
    gauss_sum_bruteforce,
)
from augtrace.cli import DUAL_TOWERS, EXAMPLE_TOWERS
from augtrace.codes import (
    CodeParams,
    build_code,
    code_params,
    dual_distance_small,
    is_self_orthogonal,
    locality,
    p_divisibility,
    weight_distribution_bruteforce,
)
from augtrace.gf import build_tower
from augtrace.theory import predicted_spectrum

WORKED_ENUMERATORS = {
    (3, 6, 2, 1): {0: 1, 48: 360, 51: 576, 54: 240, 57: 720, 60: 288, 81: 2},
    (3, 8, 2, 1): {0: 1, 414: 1312, 432: 5904, 441: 11808, 486: 656, 657: 2},
    (3, 5, 1, 1): {0: 1, 48: 90, 51: 144, 54: 240, 57: 180, 60: 72, 81: 2},
    (3, 4, 1, 1): {0: 1, 12: 100, 15: 120, 18: 20, 21: 2},
    (3, 6, 1, 2): {0: 1, 216: 80, 228: 1800, 231: 2304, 234: 640, 237: 1440, 240: 288, 261: 8},
}

_cache: dict = {}


def _measure(params):
    if params not in _cache:
        code = build_code(build_tower(*params))
        wd = weight_distribution_bruteforce(code)
        _cache[params] = (code, wd)
    return _cache[params]


def test_criterion_01_worked_enumerators(criterion):
    t0 = time.perf_counter()
    bad = []
    for params, want in WORKED_ENUMERATORS.items():
        _, wd = _measure(params)
        predicted = dict(predicted_spectrum(*params).rows)
        if wd.counts != want or predicted != {w: f for w, f in want.items() if w}:
            bad.append(params)
    dt = time.perf_counter() - t0
    ok = not bad and dt < 30
    criterion(1, "worked enumerators", ok,
              f"{len(WORKED_ENUMERATORS) - len(bad)}/{len(WORKED_ENUMERATORS)} exact", dt)
    assert ok, bad


def test_criterion_02_parameters(criterion):
    t0 = time.perf_counter()
    bad = []
    for params, nkd in EXAMPLE_TOWERS:
        code, wd = _measure(params)
        if code_params(code, wd).as_tuple() != nkd:
            bad.append(params)
    dt = time.perf_counter() - t0
    ok = not bad and dt < 30
    criterion(2, "code parameters", ok,
              f"{len(EXAMPLE_TOWERS) - len(bad)}/{len(EXAMPLE_TOWERS)} exact", dt)
    assert ok, bad


def test_criterion_03_double_sum(criterion):
    t0 = time.perf_counter()
    s = check_omega_readings(list(DEFAULT_TOWERS))
    dt = time.perf_counter() - t0
    ok = s.passed and s.mismatches == 0 and dt < 60
    criterion(3, "double character sum", ok,
              f"{s.mismatches} mismatches in {s.cases} cases, reading {s.extra['selected']}", dt)
    assert ok, s.details


def test_criterion_04_counting(criterion):
    t0 = time.perf_counter()
    a = check_count_quadric(list(DEFAULT_TOWERS))
    b = check_count_subfield_quadric(list(DEFAULT_TOWERS))
    dt = time.perf_counter() - t0
    ok = a.passed and b.passed and dt < 30
    criterion(4, "trace counting formulas", ok,
              f"{a.mismatches + b.mismatches} mismatches in {a.cases + b.cases} cases", dt)
    assert ok, a.details + b.details


def test_criterion_05_gauss_sign(criterion):
    t0 = time.perf_counter()
    worst, cases = 0.0, 0
    for p in (3, 5, 7):
        for level in range(1, 5):
            if p ** level > 2401:
                continue
            got = gauss_sum_bruteforce(build_tower(p, level, 1, 1), level).to_complex()
            want = gauss_sign(p, level).value
            worst = max(worst, abs(got - want) / abs(want))
            cases += 1
    s = check_gauss_sign((3, 5, 7), 4, 2401)
    dt = time.perf_counter() - t0
    ok = worst < 1e-6 and s.passed and dt < 5
    criterion(5, "Gauss sum sign law", ok, f"{cases} cases, worst relative error {worst:.1e}", dt)
    assert ok, s.details


def test_criterion_06_weil_sums(criterion):
    t0 = time.perf_counter()
    s = check_weil_sum()
    dt = time.perf_counter() - t0
    ok = s.passed and dt < 10
    criterion(6, "quadratic Weil sums", ok, f"{s.mismatches} mismatches in {s.cases} cases", dt)
    assert ok, s.details


def test_criterion_07_structure(criterion):
    t0 = time.perf_counter()
    bad = []
    towers = list(WORKED_ENUMERATORS) + [t for t, _ in EXAMPLE_TOWERS]
    for params in dict.fromkeys(towers):
        code, wd = _measure(params)
        pred = predicted_spectrum(*params)
        good = dual_distance_small(code) == 3 and locality(code)[0] == 2
        if pred.hypothesis_ok and pred.self_orthogonal_claimed:
            good = good and is_self_orthogonal(code) and p_divisibility(wd, params[0]) >= params[0]
        if not good:
            bad.append(params)
    dt = time.perf_counter() - t0
    ok = not bad and dt < 10
    criterion(7, "dual distance, locality, self-orthogonality", ok,
              f"{len(bad)} failing towers", dt)
    assert ok, bad


def test_criterion_08_bounds(criterion):
    t0 = time.perf_counter()
    got = [
        (k_opt_upper(6, 4, 3), cm_k_bound(9, 4, 2, 3), singleton_like_d(9, 4, 2)),
        (k_opt_upper(18, 12, 3), cm_k_bound(21, 12, 2, 3)),
        (k_opt_upper(18, 16, 9), cm_k_bound(21, 16, 2, 9)),
    ]
    want = [(2, 4, 5), (3, 5), (2, 4)]
    labels = [classify_lrc(CodeParams(*nkdq), 2) for nkdq in
              [(9, 4, 4, 3), (21, 5, 12, 3), (21, 3, 16, 9)]]
    want_labels = [{"k-optimal", "almost-d-optimal"}, {"k-optimal"}, {"almost-k-optimal"}]
    lrc_ok = [lab & LRC_LABELS == w for lab, w in zip(labels, want_labels)]
    griesmer = "griesmer-optimal" in labels[1]
    dt = time.perf_counter() - t0
    ok = got == want and all(lrc_ok) and griesmer and dt < 1
    criterion(8, "bound values and labels", ok,
              f"values {'exact' if got == want else got}, labels {sum(lrc_ok)}/3, "
              f"Griesmer-optimal {griesmer}", dt)
    assert ok


def test_criterion_09_dual_parameters(criterion):
    t0 = time.perf_counter()
    bad = []
    for params, (n, kd, dd) in DUAL_TOWERS:
        code, wd = _measure(params)
        k = code_params(code, wd).k
        got = (code.n, code.n - k, dual_distance_small(code))
        if got != (n, kd, dd) or classify_dual(n, kd, code.q) != OPTIMAL_OR_ALMOST:
            bad.append((params, got))
    dt = time.perf_counter() - t0
    ok = not bad and dt < 60
    criterion(9, "dual code parameters", ok,
              f"{len(DUAL_TOWERS) - len(bad)}/{len(DUAL_TOWERS)} rows", dt)
    assert ok, bad


def test_criterion_10_comparison_codes(criterion):
    t0 = time.perf_counter()
    got = {params: code_params(*_measure(params)).as_tuple() for params in [(3, 6, 2, 1), (5, 4, 1, 1)]}
    dt = time.perf_counter() - t0
    ok = got == {(3, 6, 2, 1): (81, 7, 48), (5, 4, 1, 1): (105, 5, 80)} and dt < 30
    criterion(10, "comparison codes", ok, ", ".join(f"{t}: {v}" for t, v in got.items()), dt)
    assert ok


PROPERTY_TESTS = [
    "test_gf.py::test_field_axioms",
    "test_gf.py::test_quad_char_multiplicative",
    "test_gf.py::test_trace_is_linear_and_frobenius_invariant",
    "test_gf.py::test_trace_matches_oracle_and_transitivity",
    "test_gf.py::test_trace_exhaustive_sweep_up_to_3_8",
    "test_cyclo.py::test_ring_axioms",
    "test_cyclo.py::test_complex_bridge_respects_ring_ops",
    "test_charsums.py::test_additive_character_orthogonality",
    "test_charsums.py::test_additive_character_homomorphism",
    "test_charsums.py::test_count_quadric_partition",
    "test_codes.py::test_divisibility_implies_self_orthogonality",
    "test_codes.py::test_mass_equals_q_to_k_under_hypothesis",
    "test_theory.py::test_length_matches_defining_set",
    "test_theory.py::test_predicted_weights_divisible_when_claimed",
    "test_bounds.py::test_k_opt_monotone",
    "test_bounds.py::test_bounds_hold_for_constructed_codes",
    "test_cli.py::test_report_round_trip",
]


def test_criterion_11_property_suites(criterion):
    here = Path(__file__).parent
    t0 = time.perf_counter()
    proc = subprocess.run([sys.executable, "-m", "pytest", "-q", "-p", "no:cacheprovider",
                           *[str(here / t) for t in PROPERTY_TESTS]],
                          capture_output=True, text=True, cwd=here.parent, timeout=300)
    dt = time.perf_counter() - t0
    tail = proc.stdout.strip().splitlines()[-1] if proc.stdout.strip() else proc.stderr[-200:]
    ok = proc.returncode == 0 and dt < 60
    criterion(11, "property suites", ok, tail, dt)
    assert ok, proc.stdout[-2000:]
