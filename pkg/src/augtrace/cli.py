"""Command-line front end: ``report``, ``verify`` and ``sweep``.

Exit codes: 0 when every recomputed match flag holds, 1 when some flag is
false or a verification fails, 2 when the parameters violate a
precondition (the message names it).
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from dataclasses import dataclass, field
from typing import Sequence

from . import __version__
from .bounds import BoundReport, bound_report
from .charsums import (
    DEFAULT_TOWERS,
    CheckSummary,
    check_count_quadric,
    check_count_subfield_quadric,
    check_gauss_sign,
    check_omega_readings,
    check_weil_sum,
)
from .codes import (
    DEFAULT_BUDGET,
    CodeParams,
    WeightDistribution,
    build_code,
    code_params,
    dual_distance_small,
    is_self_orthogonal,
    locality,
    p_divisibility,
    weight_distribution_bruteforce,
    weight_distribution_fourier,
)
from .errors import AugTraceError, BudgetExceeded, CodeTooShort, InvalidParameters, ZeroCode
from .gf import build_tower, divisors
from .theory import PredictedSpectrum, case_tag, predicted_spectrum

SCHEMA = 1
SCOPES = ("lemma4", "lemma5", "lemma7", "lemma8", "lemma9", "all")
METHODS = ("auto", "enumerate", "fourier")
# Towers larger than this skip the per-tower identity checks inside `report`.
CHECK_FIELD_LIMIT = 3 ** 8

# Worked towers with their expected [n, k, d].
EXAMPLE_TOWERS: tuple[tuple[tuple[int, int, int, int], tuple[int, int, int]], ...] = (
    ((3, 6, 2, 1), (81, 7, 48)),
    ((3, 8, 2, 1), (657, 9, 414)),
    ((3, 5, 1, 1), (81, 6, 48)),
    ((3, 4, 1, 1), (21, 5, 12)),
    ((3, 6, 1, 2), (261, 4, 216)),
    ((3, 3, 1, 1), (9, 4, 4)),
    ((3, 4, 1, 1), (21, 5, 12)),
    ((3, 4, 1, 2), (21, 3, 16)),
)

# Towers with the expected parameters [n, n - k, 3] of the dual code.
DUAL_TOWERS: tuple[tuple[tuple[int, int, int, int], tuple[int, int, int]], ...] = (
    ((3, 4, 1, 1), (21, 16, 3)),
    ((3, 5, 1, 1), (81, 75, 3)),
    ((3, 4, 1, 2), (21, 18, 3)),
    ((5, 4, 1, 1), (105, 100, 3)),
    ((3, 3, 1, 1), (9, 5, 3)),
    ((5, 3, 1, 1), (25, 21, 3)),
    ((7, 3, 1, 1), (49, 45, 3)),
    ((3, 6, 3, 1), (53, 46, 3)),
    ((3, 6, 2, 1), (81, 74, 3)),
    ((3, 6, 2, 2), (81, 77, 3)),
)


# -- report ---------------------------------------------------------------------

@dataclass
class Report:
    p: int
    m: int
    m1: int
    m2: int
    relation: str
    modulus: list[int]
    n: int
    predicted: PredictedSpectrum
    self_orthogonal: bool
    params: CodeParams | None = None
    weights: WeightDistribution | None = None
    weights_method: str | None = None
    divisibility: int | None = None
    locality: int | None = None
    dual_distance: int | None = None
    bounds: BoundReport | None = None
    checks: list[CheckSummary] = field(default_factory=list)
    timing: dict[str, float] = field(default_factory=dict)
    notes: list[str] = field(default_factory=list)

    @property
    def tower(self) -> tuple[int, int, int, int]:
        return (self.p, self.m, self.m1, self.m2)

    def matches(self) -> dict[str, bool | None]:
        """Agreement flags, recomputed from the stored data.

        None means the comparison does not apply: no brute-force data, the
        closed-form hypothesis fails, or the code is too short to carry the
        structural claims.
        """
        pred, hyp = self.predicted, self.predicted.hypothesis_ok
        out: dict[str, bool | None] = {
            "length": None if pred.length is None else pred.length == self.n,
            "weights": None, "dimension": None, "self_orthogonality": None,
            "divisibility": None, "locality": None, "dual_distance": None,
            "checks": all(s.passed for s in self.checks) if self.checks else None,
        }
        if self.weights is not None and hyp:
            out["weights"] = pred.as_dict() == dict(self.weights.nonzero_items())
        if self.params is not None and hyp:
            out["dimension"] = self.params.k == pred.dimension
        if hyp and pred.self_orthogonal_claimed:
            out["self_orthogonality"] = self.self_orthogonal
            if self.divisibility is not None:
                out["divisibility"] = self.divisibility >= self.p
        if self.n >= 3:
            out["locality"] = self.locality == 2
            out["dual_distance"] = self.dual_distance == 3
        return out

    def ok(self) -> bool:
        return all(v is not False for v in self.matches().values())

    def to_dict(self) -> dict:
        return {
            "schema": SCHEMA,
            "tower": {"p": self.p, "m": self.m, "m1": self.m1, "m2": self.m2},
            "relation": self.relation,
            "modulus": list(self.modulus),
            "n": self.n,
            "params": None if self.params is None else {
                "n": self.params.n, "k": self.params.k, "d": self.params.d, "q": self.params.q,
                "injective": self.params.injective, "nominal_k": self.params.nominal_k},
            "weights": None if self.weights is None else self.weights.to_dict(),
            "weights_method": self.weights_method,
            "predicted": self.predicted.to_dict(),
            "divisibility": self.divisibility,
            "self_orthogonal": self.self_orthogonal,
            "locality": self.locality,
            "dual_distance": self.dual_distance,
            "bounds": None if self.bounds is None else self.bounds.to_dict(),
            "checks": [s.to_dict() for s in self.checks],
            "timing": dict(self.timing),
            "notes": list(self.notes),
            "matches": self.matches(),
        }

    @classmethod
    def from_dict(cls, d: dict) -> "Report":
        if d.get("schema") != SCHEMA:
            raise ValueError(f"unsupported report schema {d.get('schema')!r}")
        t = d["tower"]
        return cls(
            p=t["p"], m=t["m"], m1=t["m1"], m2=t["m2"],
            relation=d["relation"], modulus=list(d["modulus"]), n=d["n"],
            predicted=PredictedSpectrum.from_dict(d["predicted"]),
            self_orthogonal=d["self_orthogonal"],
            params=None if d["params"] is None else CodeParams(**d["params"]),
            weights=None if d["weights"] is None else WeightDistribution.from_dict(d["weights"]),
            weights_method=d["weights_method"],
            divisibility=d["divisibility"], locality=d["locality"],
            dual_distance=d["dual_distance"],
            bounds=None if d["bounds"] is None else BoundReport.from_dict(d["bounds"]),
            checks=[CheckSummary.from_dict(s) for s in d["checks"]],
            timing=dict(d["timing"]), notes=list(d.get("notes", [])),
        )


def _weights(code, method: str, budget: int):
    if method == "fourier":
        return weight_distribution_fourier(code), "fourier"
    try:
        return weight_distribution_bruteforce(code, budget=budget), "enumerate"
    except BudgetExceeded:
        if method == "enumerate":
            raise
        return weight_distribution_fourier(code), "fourier"


def build_report(p: int, m: int, m1: int, m2: int, bruteforce: bool = True,
                 budget: int = DEFAULT_BUDGET, method: str = "auto",
                 checks: bool = True, relation: str | None = None) -> Report:
    """Build the code for one tower and measure everything about it."""
    timing: dict[str, float] = {}
    t0 = time.perf_counter()
    tag = case_tag(p, m, m1, m2, relation)
    tower = build_tower(p, m, m1, m2)
    code = build_code(tower)
    timing["build"] = time.perf_counter() - t0

    t = time.perf_counter()
    pred = predicted_spectrum(p, m, m1, m2, tag.relation)
    report = Report(p=p, m=m, m1=m1, m2=m2, relation=tag.relation,
                    modulus=list(tower.modulus), n=code.n, predicted=pred,
                    self_orthogonal=is_self_orthogonal(code))
    if pred.diagnostic:
        report.notes.append(pred.diagnostic)
    try:
        report.locality = locality(code)[0]
    except CodeTooShort as exc:
        report.notes.append(str(exc))
    report.dual_distance = dual_distance_small(code)
    timing["structure"] = time.perf_counter() - t

    if bruteforce:
        t = time.perf_counter()
        wd, used = _weights(code, method, budget)
        timing["weights"] = time.perf_counter() - t
        report.weights, report.weights_method = wd, used
        if wd.collapse_factor != 1:
            report.notes.append(f"(b, c) -> codeword is {wd.collapse_factor}-to-1")
        try:
            report.params = code_params(code, wd)
            report.divisibility = p_divisibility(wd, p)
            if report.locality is not None:
                report.bounds = bound_report(report.params, report.locality)
        except ZeroCode as exc:
            report.notes.append(str(exc))

    if checks:
        if tower.q > CHECK_FIELD_LIMIT:
            report.notes.append(f"identity checks skipped: field size {tower.q} > {CHECK_FIELD_LIMIT}")
        else:
            t = time.perf_counter()
            towers = [tower.params]
            report.checks.append(check_omega_readings(towers))
            report.checks.append(check_count_quadric(towers))
            if m2 % m1 == 0:
                report.checks.append(check_count_subfield_quadric(towers))
            timing["checks"] = time.perf_counter() - t
    timing["total"] = time.perf_counter() - t0
    report.timing = timing
    return report


def render_report(r: Report) -> str:
    lines = [f"tower (p, m, m1, m2) = {r.tower}  [{r.predicted.case.label}]",
             f"modulus coefficients (low to high): {r.modulus}",
             f"length n = {r.n}"]
    if r.params is not None:
        lines.append(f"parameters {r.params}  (nominal k = {r.params.nominal_k}, "
                     f"injective = {r.params.injective})")
    if r.weights is not None:
        lines.append(f"weight enumerator ({r.weights_method}): {r.weights.enumerator()}")
    pred = r.predicted
    rows = " + ".join(f"{f}z^{w}" for w, f in pred.rows) or "(none)"
    lines.append(f"predicted nonzero weights: {rows}")
    lines.append(f"hypothesis {pred.hypothesis}: {'holds' if pred.hypothesis_ok else 'fails'}")
    lines.append(f"self-orthogonal: measured {r.self_orthogonal}, claimed "
                 f"{pred.self_orthogonal_claimed} ({pred.claim_condition})")
    if r.divisibility is not None:
        lines.append(f"largest p-power dividing all weights: {r.divisibility}")
    lines.append(f"locality: {r.locality}   dual distance: "
                 f"{'>3' if r.dual_distance is None else r.dual_distance}")
    if r.bounds is not None:
        b = r.bounds
        lines.append(f"bounds: singleton-like d <= {b.singleton_like_d}, CM k <= {b.cm_k}, "
                     f"Griesmer d <= {b.griesmer_d_opt}, dual: {b.dual_sphere_packing_verdict}")
        lines.append(f"labels: {', '.join(sorted(b.labels)) or '(none)'}")
    for s in r.checks:
        extra = f"  {s.extra}" if s.extra else ""
        lines.append(f"check {s.name}: {s.cases - s.mismatches}/{s.cases} agree{extra}")
    for note in r.notes:
        lines.append(f"note: {note}")
    flags = ", ".join(f"{k}={v}" for k, v in r.matches().items())
    lines.append(f"matches: {flags}")
    lines.append(f"time: {r.timing.get('total', 0.0):.2f} s")
    return "\n".join(lines)


# -- verify -----------------------------------------------------------------------

def run_verify(scope: str, towers: Sequence[tuple[int, int, int, int]] | None = None,
               primes: Sequence[int] | None = None, max_level: int = 4) -> list[CheckSummary]:
    scopes = SCOPES[:-1] if scope == "all" else (scope,)
    out: list[CheckSummary] = []
    for s in scopes:
        if s == "lemma4":
            out.append(check_gauss_sign(tuple(primes or (3, 5, 7)), max_level))
        elif s == "lemma5":
            out.append(check_weil_sum())
        elif s == "lemma7":
            out.append(check_omega_readings(towers))
        elif s == "lemma8":
            out.append(check_count_quadric(towers))
        elif s == "lemma9":
            out.append(check_count_subfield_quadric(towers))
    return out


# -- sweep ------------------------------------------------------------------------

def sweep_towers(primes: Sequence[int], m_max: int, budget: int) -> list[tuple[int, int, int, int]]:
    """Every comparable tower with m <= m_max and p^(m+m2) within the budget."""
    out = []
    for p in primes:
        for m in range(1, m_max + 1):
            for m1 in divisors(m):
                for m2 in divisors(m):
                    if (m1 % m2 and m2 % m1) or p ** (m + m2) > budget:
                        continue
                    out.append((p, m, m1, m2))
    return out


def _sweep_row(kind: str, r: Report, expected: tuple[int, int, int] | None) -> dict:
    row = {
        "kind": kind,
        "tower": list(r.tower),
        "case": r.predicted.case.label,
        "hypothesis_ok": r.predicted.hypothesis_ok,
        "n": r.n,
        "k": None if r.params is None else r.params.k,
        "d": None if r.params is None else r.params.d,
        "dual": None if r.params is None else [r.n, r.n - r.params.k, r.dual_distance],
        "self_orthogonal": r.self_orthogonal,
        "locality": r.locality,
        "dual_distance": r.dual_distance,
        "matches": r.matches(),
        "expected": None if expected is None else list(expected),
    }
    if expected is not None:
        got = [row["n"], row["k"], row["d"]] if kind == "example" else row["dual"]
        row["matches"]["expected"] = got == list(expected)
    row["ok"] = all(v is not False for v in row["matches"].values())
    return row


def run_sweep(towers: Sequence[tuple[int, int, int, int]], preset: bool, bruteforce: bool,
              budget: int, method: str, checks: bool) -> list[dict]:
    rows = []
    cache: dict[tuple[int, int, int, int], Report] = {}

    def get(t):
        if t not in cache:
            cache[t] = build_report(*t, bruteforce=bruteforce, budget=budget,
                                    method=method, checks=checks)
        return cache[t]

    if preset:
        for t, exp in EXAMPLE_TOWERS:
            rows.append(_sweep_row("example", get(t), exp))
        for t, exp in DUAL_TOWERS:
            rows.append(_sweep_row("dual", get(t), exp))
    for t in towers:
        rows.append(_sweep_row("tower", get(t), None))
    return rows


_SWEEP_COLUMNS = ("kind", "tower", "case", "hypothesis_ok", "n", "k", "d", "dual",
                  "self_orthogonal", "locality", "dual_distance", "expected", "ok")


def render_sweep(rows: list[dict], fmt: str) -> str:
    if fmt == "json":
        return json.dumps({"schema": SCHEMA, "rows": rows}, indent=2)
    if fmt == "csv":
        import csv
        import io
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(_SWEEP_COLUMNS)
        for r in rows:
            w.writerow([json.dumps(r[c]) if isinstance(r[c], list) else r[c] for c in _SWEEP_COLUMNS])
        return buf.getvalue()
    lines = [f"{'kind':8} {'tower':14} {'hyp':5} {'[n,k,d]':16} {'dual':16} {'SO':5} "
             f"{'r':>2} {'ok':5} case"]
    for r in rows:
        nkd = f"[{r['n']},{r['k']},{r['d']}]"
        dual = "-" if r["dual"] is None else f"[{r['dual'][0]},{r['dual'][1]},{r['dual'][2]}]"
        lines.append(f"{r['kind']:8} {str(tuple(r['tower'])):14} {str(r['hypothesis_ok']):5} "
                     f"{nkd:16} {dual:16} {str(r['self_orthogonal']):5} "
                     f"{str(r['locality']):>2} {str(r['ok']):5} {r['case']}")
    lines.append(f"{len(rows)} rows, {sum(not r['ok'] for r in rows)} failing")
    return "\n".join(lines)


# -- argument parsing ---------------------------------------------------------------

def _add_common(sp: argparse.ArgumentParser, formats=("text", "json")) -> None:
    sp.add_argument("--format", choices=formats, default="text")
    sp.add_argument("--out", metavar="FILE", help="write the output here instead of stdout")


def _add_compute(sp: argparse.ArgumentParser) -> None:
    sp.add_argument("--no-bruteforce", action="store_true",
                    help="skip the weight-distribution computation")
    sp.add_argument("--budget", type=int, default=DEFAULT_BUDGET, metavar="N",
                    help="largest p^(m+m2) enumerated explicitly (default 2^22)")
    sp.add_argument("--method", choices=METHODS, default="auto",
                    help="weight-distribution route; auto falls back to the Fourier "
                         "route beyond the enumeration budget")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="augtrace",
                                 description="Augmented trace codes over field towers.")
    ap.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = ap.add_subparsers(dest="command", required=True)

    rp = sub.add_parser("report", help="analyse one tower")
    for name in ("--p", "--m", "--m1", "--m2"):
        rp.add_argument(name, type=int, required=True)
    rp.add_argument("--relation", choices=("m2_divides_m1", "m1_divides_m2"),
                    help="closed-form branch when m1 = m2")
    rp.add_argument("--weights-csv", metavar="FILE", help="also write the weight distribution as CSV")
    rp.add_argument("--no-checks", action="store_true", help="skip the per-tower identity checks")
    _add_compute(rp)
    _add_common(rp)

    vp = sub.add_parser("verify", help="check closed-form identities against brute force")
    vp.add_argument("--scope", choices=SCOPES, default="all",
                    help="lemma4: Gauss-sum sign law; lemma5: quadratic Weil sums; "
                         "lemma7: the double sum Omega(b, c); lemma8: trace-of-square counts; "
                         "lemma9: subfield trace counts")
    vp.add_argument("--towers", choices=("default", "paper-examples"), default="default")
    vp.add_argument("--p", type=int, nargs="+", help="primes for the sign-law check")
    vp.add_argument("--max-level", type=int, default=4)
    _add_common(vp)

    sp = sub.add_parser("sweep", help="report on a range of towers")
    sp.add_argument("--p", type=int, nargs="+", default=[3])
    sp.add_argument("--m-max", type=int, default=None,
                    help="largest m to sweep (default: no range sweep with --paper-examples, else 6)")
    sp.add_argument("--paper-examples", action="store_true",
                    help="include the worked towers and the dual-parameter list")
    sp.add_argument("--towers", choices=("default", "paper-examples"), default="default",
                    help="paper-examples is a synonym for --paper-examples")
    sp.add_argument("--run-checks", action="store_true", help="run identity checks per tower")
    _add_compute(sp)
    _add_common(sp, formats=("text", "json", "csv"))
    return ap


def _emit(text: str, out: str | None) -> None:
    if out:
        with open(out, "w") as fh:
            fh.write(text + ("" if text.endswith("\n") else "\n"))
    else:
        print(text)


def _unique_example_towers() -> list[tuple[int, int, int, int]]:
    seen: list[tuple[int, int, int, int]] = []
    for t, _ in EXAMPLE_TOWERS:
        if t not in seen:
            seen.append(t)
    return seen


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.command == "report":
            r = build_report(args.p, args.m, args.m1, args.m2,
                             bruteforce=not args.no_bruteforce, budget=args.budget,
                             method=args.method, checks=not args.no_checks,
                             relation=args.relation)
            text = json.dumps(r.to_dict(), indent=2) if args.format == "json" else render_report(r)
            _emit(text, args.out)
            if args.weights_csv and r.weights is not None:
                with open(args.weights_csv, "w") as fh:
                    fh.write(r.weights.to_csv())
            return 0 if r.ok() else 1

        if args.command == "verify":
            towers = _unique_example_towers() if args.towers == "paper-examples" else list(DEFAULT_TOWERS)
            results = run_verify(args.scope, towers, args.p, args.max_level)
            if args.format == "json":
                text = json.dumps({"schema": SCHEMA, "checks": [s.to_dict() for s in results]}, indent=2)
            else:
                lines = []
                for s in results:
                    status = "PASS" if s.passed else "FAIL"
                    extra = f"  {s.extra}" if s.extra else ""
                    lines.append(f"{status} {s.name}: {s.cases - s.mismatches}/{s.cases} agree{extra}")
                    lines.extend(f"    {d}" for d in s.details)
                text = "\n".join(lines)
            _emit(text, args.out)
            return 0 if all(s.passed for s in results) else 1

        preset = args.paper_examples or args.towers == "paper-examples"
        m_max = args.m_max if args.m_max is not None else (0 if preset else 6)
        towers = sweep_towers(args.p, m_max, args.budget)
        rows = run_sweep(towers, preset, not args.no_bruteforce, args.budget,
                         args.method, args.run_checks)
        _emit(render_sweep(rows, args.format), args.out)
        return 0 if all(r["ok"] for r in rows) else 1
    except (InvalidParameters, BudgetExceeded) as exc:
        print(f"augtrace: invalid parameters: {exc}", file=sys.stderr)
        return 2
    except AugTraceError as exc:
        print(f"augtrace: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
