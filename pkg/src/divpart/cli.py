"""Command-line front door.

Every subcommand is deterministic: identical flags produce byte-identical
artifacts.  Floats are therefore always emitted as decimal strings with 17
significant digits, JSON keys are sorted, CSV uses LF line endings, and
the worker-count flag can only change wall time, never output bytes.

Exit codes: 0 success, 1 invariant failure (verify), 2 configuration error.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Any, Callable

from . import arith, cltlab, dirichlet, partition, saddle


def fmt(x: Any) -> Any:
    """Floats to 17-significant-digit strings; containers recursively."""
    if isinstance(x, bool) or isinstance(x, int) or isinstance(x, str) or x is None:
        return x
    if isinstance(x, float):
        return f"{x:.17g}"
    if isinstance(x, dict):
        return {k: fmt(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [fmt(v) for v in x]
    return str(x)


def emit_json(doc: dict, path: str | None) -> None:
    text = json.dumps(fmt(doc), sort_keys=True, indent=2) + "\n"
    if path:
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def emit_text(text: str, path: str | None) -> None:
    if path:
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


@dataclass
class RunConfig:
    subcommand: str
    r: int = 2
    n: int = 100
    n_list: list[int] = field(default_factory=lambda: [50, 100, 200, 400])
    table_limit: int = 40
    u: float = 1.0
    mode: str = "general"
    prime_cutoff: int = dirichlet.DEFAULT_PRIME_CUTOFF
    tolerance: float = 1e-8
    s: float = 3.0
    x_grid: list[float] = field(default_factory=lambda: [0.5, 1.0, 2.0])
    theta_grid: list[float] = field(default_factory=lambda: [0.25, 0.5, 1.0])
    output: str | None = None
    csv_output: str | None = None
    format: str = "csv"
    quick: bool = False
    workers: int = 1
    convention: str = "standard"
    max_negative_mass: float = 0.0

    def validate(self) -> None:
        if self.r < 1:
            raise ValueError("--r must be >= 1")
        if self.workers < 1:
            raise ValueError("--workers must be >= 1")
        if self.format not in ("csv", "json"):
            raise ValueError("--format must be csv or json")
        if self.mode not in ("general", "paper_literal"):
            raise ValueError("--mode must be general or paper_literal")
        if self.convention not in ("standard", "shifted-zeta"):
            raise ValueError("--convention must be standard or shifted-zeta")
        if self.prime_cutoff < 100:
            raise ValueError("--prime-cutoff must be >= 100")


# ---------------------------------------------------------------------------
# Subcommands
# ---------------------------------------------------------------------------

def _cmd_table(cfg: RunConfig) -> int:
    tab = partition.build_table(cfg.r, cfg.table_limit)
    if cfg.format == "csv":
        emit_text(tab.to_csv(), cfg.output)
    else:
        emit_text(tab.to_json(), cfg.output)
    return 0


def _cmd_constants(cfg: RunConfig) -> int:
    c_val = dirichlet.constant_C(cfg.r, cutoff=cfg.prime_cutoff, tol=cfg.tolerance)
    k1 = dirichlet.euler_K(1.0, cfg.r, cutoff=cfg.prime_cutoff)
    if cfg.r >= 2:
        e1, cp = dirichlet.E_r_and_Cprime(1.0, cfg.r, cutoff=cfg.prime_cutoff)
        gc = dirichlet.growth_constants(cfg.r, cutoff=cfg.prime_cutoff)
        alt = "shifted-zeta" if cfg.convention == "standard" else "standard"
        doc = {
            "r": cfg.r,
            "C": c_val.value,
            "C_tail": c_val.tail_estimate,
            "Cprime": cp.value,
            "E1": e1.value,
            "K1": k1.value,
            "N": gc.N,
            "C_mu": gc.C_mu[cfg.convention],
            "C_sigma": gc.C_sigma[cfg.convention],
            "convention": cfg.convention,
            "C_mu_alt": gc.C_mu[alt],
            "C_sigma_alt": gc.C_sigma[alt],
            "alt_convention": alt,
            "prime_cutoff": cfg.prime_cutoff,
        }
    else:
        doc = {
            "r": cfg.r,
            "C": c_val.value,
            "C_tail": c_val.tail_estimate,
            "K1": k1.value,
            "zeta2_times_C": dirichlet.zeta_real(2.0) * c_val.value,
            "prime_cutoff": cfg.prime_cutoff,
        }
    emit_json(doc, cfg.output)
    return 0


def _cmd_dirichlet_check(cfg: RunConfig) -> int:
    closed = dirichlet.dirichlet_d1(cfg.s, cfg.r, mode="closed", cutoff=cfg.prime_cutoff)
    direct = dirichlet.dirichlet_d1(cfg.s, cfg.r, mode="direct")
    doc = {
        "r": cfg.r,
        "s": cfg.s,
        "d1_closed": closed.value,
        "d1_direct": direct.value,
        "d1_difference": abs(closed.value - direct.value),
        "d1_direct_truncation": direct.truncation_bound,
    }
    if cfg.s - cfg.r > 1.0:
        check = dirichlet.shifted_series_residual(cfg.s, cfg.r, cutoff=cfg.prime_cutoff)
        doc.update({
            "shifted_direct": check.direct,
            "shifted_series_part": check.d1_part,
            "shifted_budget": check.d2_budget,
            "shifted_ok": check.residual_bound_ok,
            "dsigma_residual": dirichlet.dsigma_residual(cfg.s, cfg.r),
        })
    emit_json(doc, cfg.output)
    return 0


def _cmd_saddle(cfg: RunConfig) -> int:
    sp = saddle.solve_saddle(cfg.n, cfg.u, cfg.r, mode=cfg.mode)
    mu, nu2 = saddle.mean_variance_saddle(cfg.n, cfg.r, mode=cfg.mode)
    emit_json({
        "n": sp.n, "r": sp.r, "u": sp.u, "mode": sp.mode,
        "tau": sp.tau, "residual": sp.residual,
        "F": sp.F_val, "F_g": sp.F_g, "F_gg": sp.F_gg, "B2": sp.B2,
        "theta_n": sp.theta_n, "mu": mu, "nu2": nu2,
    }, cfg.output)
    return 0


def _cmd_clt_report(cfg: RunConfig) -> int:
    report = cltlab.clt_report(cfg.r, cfg.n_list,
                               max_negative_mass=cfg.max_negative_mass)
    lines = ["n,mean_exact,var_exact,mu_general,nu2_general,mu_literal,"
             "nu2_literal,ks_distance,negativity_count,included,note"]
    for row in report.rows:
        ks = f"{row.ks_distance:.17g}" if row.ks_distance is not None else ""
        lines.append(
            f"{row.n},{row.mean_exact:.17g},{row.var_exact:.17g},"
            f"{row.mu_saddle['general']:.17g},{row.nu2_saddle['general']:.17g},"
            f"{row.mu_saddle['paper_literal']:.17g},"
            f"{row.nu2_saddle['paper_literal']:.17g},"
            f"{ks},{row.negativity_count},{int(row.included)},{row.note}"
        )
    emit_text("\n".join(lines) + "\n", cfg.csv_output)
    emit_json({
        "r": report.r,
        "n_list": report.n_list,
        "excluded": report.excluded,
        "exclusion_count": report.exclusion_count,
        "exponent_fit_mean": report.exponent_fit_mean,
        "exponent_fit_var": report.exponent_fit_var,
        "ks_trend_ok": cltlab.ks_trend_ok(report),
    }, cfg.output)
    return 0


def _cmd_tail(cfg: RunConfig) -> int:
    report = cltlab.tail_report(cfg.n, cfg.r, cfg.x_grid, slack=0.5,
                                max_negative_mass=cfg.max_negative_mass)
    lines = ["x,side,prob,bound,branch,ok"]
    for rec in report.records:
        lines.append(
            f"{rec.x:.17g},{rec.side},{rec.prob:.17g},{rec.bound:.17g},"
            f"{rec.branch},{int(rec.ok)}"
        )
    for finding in report.findings:
        lines.append(f"# finding: {finding}")
    emit_text("\n".join(lines) + "\n", cfg.output)
    return 0


def _cmd_mgf(cfg: RunConfig) -> int:
    profile = cltlab.mgf_profile(cfg.n, cfg.r, cfg.theta_grid,
                                 max_negative_mass=cfg.max_negative_mass)
    lines = ["theta,mgf_exact,gauss_target,rel_deviation"]
    for theta in cfg.theta_grid:
        m_est, target = profile[theta]
        lines.append(
            f"{theta:.17g},{m_est:.17g},{target:.17g},"
            f"{abs(m_est - target) / target:.17g}"
        )
    emit_text("\n".join(lines) + "\n", cfg.output)
    return 0


# ---------------------------------------------------------------------------
# verify: the cross-module invariant suite
# ---------------------------------------------------------------------------

def _verify_checks(quick: bool) -> list[tuple[str, Callable[[], tuple[bool, str]]]]:
    m_sweep, n_sweep = (12, 40) if quick else (30, 100)
    mn_closed = 40 if quick else 100
    d1_m, d1_n = (300, 3000) if quick else (2000, 20000)
    oracle_n = 9 if quick else 12

    def chk_ramanujan_closed() -> tuple[bool, str]:
        worst = 0.0
        for m in range(1, mn_closed + 1):
            for n in range(1, mn_closed + 1):
                diff = abs(arith.ramanujan_sum(m, n) - arith.ramanujan_sum_exponential(m, n))
                worst = max(worst, diff)
        return worst < 1e-10, f"max |closed - exponential| = {worst:.3e}"

    def chk_ramanujan_mobius() -> tuple[bool, str]:
        bad = sum(
            1
            for m in range(1, mn_closed + 1)
            for n in range(1, mn_closed + 1)
            if math.gcd(m, n) == 1 and arith.ramanujan_sum(m, n) != arith.mobius(m)
        )
        return bad == 0, f"{bad} coprime pairs violate c_m(n) = mu(m)"

    def chk_orthogonality() -> tuple[bool, str]:
        worst = 0.0
        top = 20 if quick else 50
        for m in range(1, top + 1):
            phi = arith.euler_phi(m)
            for a in range(m):
                total = sum(chi.values[a] for chi in arith.characters_mod(m))
                target = phi if (a % m == 1 % m and math.gcd(a, m) == 1) else 0.0
                worst = max(worst, abs(total - target))
        return worst < 1e-9, f"max orthogonality defect = {worst:.3e}"

    def chk_shifted_identity() -> tuple[bool, str]:
        worst = arith.shifted_identity_max_residual(m_sweep, n_sweep)
        return worst < 1e-9, f"max residual = {worst:.3e} over m <= {m_sweep}, n <= {n_sweep}"

    def chk_oracle_tables() -> tuple[bool, str]:
        for r in (2, 3):
            built = partition.build_table(r, oracle_n)
            oracles = partition.oracle_table(r, oracle_n)
            if not partition.tables_equal(built, oracles.naive):
                return False, f"naive oracle mismatch at r = {r}"
            if oracles.enumeration and not partition.tables_equal(built, oracles.enumeration):
                return False, f"enumeration oracle mismatch at r = {r}"
        return True, f"entrywise equal through n = {oracle_n}"

    def chk_permutation() -> tuple[bool, str]:
        ok = partition.permuted_build_matches(2, 24 if quick else 40, trials=3 if quick else 5)
        return ok, "factor order irrelevant"

    def chk_constants() -> tuple[bool, str]:
        c1 = dirichlet.constant_C(1).value
        landau = dirichlet.zeta_real(2.0) * c1
        ok = abs(c1 - 1.339784) < 1e-5 and abs(landau - 2.20386) < 1e-4
        return ok, f"C(1) = {c1:.8f}, zeta(2) C(1) = {landau:.7f}"

    def chk_polylog() -> tuple[bool, str]:
        worst = 0.0
        for s in (2.0, 3.0, 4.0, 5.0):
            lhs = dirichlet.polylog_neg(s, 1.0)
            rhs = -(1.0 - 2.0 ** (1.0 - s)) * dirichlet.zeta_real(s)
            worst = max(worst, abs(lhs - rhs))
        return worst < 1e-9, f"max |Li_s(-1) defect| = {worst:.3e}"

    def chk_d1() -> tuple[bool, str]:
        diffs = []
        for s, r in ((3.0, 2), (2.0, 1)):
            closed = dirichlet.dirichlet_d1(s, r, mode="closed").value
            direct = dirichlet.dirichlet_d1(s, r, mode="direct", m_limit=d1_m, n_limit=d1_n).value
            diffs.append(abs(closed - direct))
        tol = 5e-3 if quick else 1e-3
        return max(diffs) < tol, f"max |closed - direct| = {max(diffs):.3e}"

    def chk_euler_self_consistency() -> tuple[bool, str]:
        cut = 10**5
        worst = 0.0
        for make in (
            lambda c: dirichlet.constant_C(2, cutoff=c).value,
            lambda c: dirichlet.euler_K(2.0, 1, cutoff=c).value,
            lambda c: dirichlet.E_r_and_Cprime(1.0, 2, cutoff=c)[0].value,
        ):
            worst = max(worst, abs(make(cut) - make(2 * cut)))
        return worst < 2e-8, f"max cutoff-doubling drift = {worst:.3e}"

    def chk_saddle_residuals() -> tuple[bool, str]:
        ns = (1, 100) if quick else (1, 10, 100, 1000)
        worst = 0.0
        for r in (2, 3):
            for mode in ("general", "paper_literal"):
                for n in ns:
                    sp = saddle.solve_saddle(n, 1.0, r, mode=mode)
                    worst = max(worst, sp.residual / max(1.0, n))
        return worst < 1e-9, f"max scaled residual = {worst:.3e}"

    def chk_partials() -> tuple[bool, str]:
        # spot FD checks; the full grid lives in the test suite
        worst = 0.0
        for jg, ju in ((0, 1), (2, 0), (1, 1)):
            gamma, u, r = 0.1, 1.0, 2
            h = 1e-4
            if (jg, ju) == (0, 1):
                fd = (saddle.F_partial(gamma, u + h, r, (0, 0))
                      - saddle.F_partial(gamma, u - h, r, (0, 0))) / (2 * h)
            elif (jg, ju) == (2, 0):
                fd = (saddle.F_partial(gamma + h, u, r, (0, 0))
                      - 2 * saddle.F_partial(gamma, u, r, (0, 0))
                      + saddle.F_partial(gamma - h, u, r, (0, 0))) / h**2
            else:
                fd = (saddle.F_partial(gamma + h, u + h, r, (0, 0))
                      - saddle.F_partial(gamma + h, u - h, r, (0, 0))
                      - saddle.F_partial(gamma - h, u + h, r, (0, 0))
                      + saddle.F_partial(gamma - h, u - h, r, (0, 0))) / (4 * h * h)
            exact = saddle.F_partial(gamma, u, r, (jg, ju))
            worst = max(worst, abs(fd - exact) / abs(exact))
        return worst < 1e-4, f"max FD relative error = {worst:.3e}"

    def chk_mellin() -> tuple[bool, str]:
        grid = [0.1, 0.05] if quick else [0.1, 0.05, 0.02]
        ratios = saddle.mellin_ratio_check(0, grid, 1.0, 2)
        monotone = all(
            abs(b - 1.0) <= abs(a - 1.0) for a, b in zip(ratios, ratios[1:])
        )
        near = abs(ratios[-1] - 1.0) < (0.1 if quick else 0.05)
        return monotone and near, f"ratios = {[f'{x:.4f}' for x in ratios]}"

    def chk_minor_arc() -> tuple[bool, str]:
        one = saddle.minor_arc_ratio(0.05, 0.0, 1.0, 2)
        below = saddle.minor_arc_ratio(0.05, math.pi, 1.0, 2)
        return one == 1.0 and below < 1.0, f"ratio(0) = {one}, ratio(pi) = {below:.3e}"

    checks = [
        ("arith.ramanujan_closed_vs_exponential", chk_ramanujan_closed),
        ("arith.ramanujan_equals_mobius_on_coprimes", chk_ramanujan_mobius),
        ("arith.character_orthogonality", chk_orthogonality),
        ("arith.shifted_sum_identity", chk_shifted_identity),
        ("partition.oracle_equivalence", chk_oracle_tables),
        ("partition.factor_permutation_invariance", chk_permutation),
        ("dirichlet.totient_summatory_constant", chk_constants),
        ("dirichlet.polylog_special_values", chk_polylog),
        ("dirichlet.double_series_closed_vs_direct", chk_d1),
        ("dirichlet.euler_product_cutoff_stability", chk_euler_self_consistency),
        ("saddle.residual_tolerance", chk_saddle_residuals),
        ("saddle.partials_match_finite_differences", chk_partials),
        ("saddle.mellin_leading_order", chk_mellin),
        ("saddle.minor_arc_decay", chk_minor_arc),
    ]
    return checks


def _cmd_verify(cfg: RunConfig) -> int:
    checks = _verify_checks(cfg.quick)

    def run_one(item):
        name, fn = item
        try:
            ok, detail = fn()
        except Exception as exc:  # a crash is a failure with its message
            ok, detail = False, f"raised {type(exc).__name__}: {exc}"
        return name, ok, detail

    if cfg.workers > 1:
        with ThreadPoolExecutor(max_workers=cfg.workers) as pool:
            results = list(pool.map(run_one, checks))
    else:
        results = [run_one(item) for item in checks]
    results.sort(key=lambda t: t[0])

    lines = []
    failures = 0
    for name, ok, detail in results:
        lines.append(f"{'PASS' if ok else 'FAIL'} {name}: {detail}")
        failures += 0 if ok else 1
    lines.append(f"{'OK' if failures == 0 else 'FAILED'} "
                 f"({len(results) - failures}/{len(results)} checks passed)")
    text = "\n".join(lines) + "\n"
    sys.stdout.write(text)
    if cfg.output:
        emit_json({
            "quick": cfg.quick,
            "checks": [
                {"name": name, "ok": ok, "detail": detail}
                for name, ok, detail in results
            ],
            "failures": failures,
        }, cfg.output)
    return 1 if failures else 0


# ---------------------------------------------------------------------------
# Argument parsing
# ---------------------------------------------------------------------------

def _int_list(text: str) -> list[int]:
    return [int(tok) for tok in text.split(",") if tok.strip()]


def _float_list(text: str) -> list[float]:
    return [float(tok) for tok in text.split(",") if tok.strip()]


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="divpart",
        description="Exact and asymptotic statistics of divisor-gap "
                    "restricted partitions",
    )
    sub = parser.add_subparsers(dest="subcommand", required=True)

    p = sub.add_parser("table", help="export an exact coefficient table")
    p.add_argument("--r", type=int, default=2, help="divisor power (default 2)")
    p.add_argument("--N", dest="table_limit", type=int, default=40,
                   help="max weight (default 40)")
    p.add_argument("--format", choices=("csv", "json"), default="csv",
                   help="output format (default csv)")
    p.add_argument("--output", default=None, help="path (default stdout)")

    p = sub.add_parser("constants", help="emit the derived constants as JSON")
    p.add_argument("--r", type=int, default=1, help="divisor power (default 1)")
    p.add_argument("--prime-cutoff", dest="prime_cutoff", type=int,
                   default=dirichlet.DEFAULT_PRIME_CUTOFF,
                   help="Euler-product prime cutoff (default 1000000)")
    p.add_argument("--tolerance", type=float, default=1e-8,
                   help="product tail tolerance (default 1e-8)")
    p.add_argument("--convention", choices=("standard", "shifted-zeta"),
                   default="standard",
                   help="-Li_s(-1) convention for C_mu/C_sigma (default standard)")
    p.add_argument("--output", default=None)

    p = sub.add_parser("dirichlet-check", help="closed-vs-direct series checks")
    p.add_argument("--r", type=int, default=2)
    p.add_argument("--s", type=float, default=5.0)
    p.add_argument("--prime-cutoff", dest="prime_cutoff", type=int,
                   default=dirichlet.DEFAULT_PRIME_CUTOFF)
    p.add_argument("--output", default=None)

    p = sub.add_parser("saddle", help="solve the saddle equation at one n")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--r", type=int, default=2)
    p.add_argument("--u", type=float, default=1.0)
    p.add_argument("--mode", choices=("general", "paper_literal"), default="general")
    p.add_argument("--output", default=None)

    neg_help = ("admit rows whose total negative-cell mass is at most this "
                "value (default 0: strict positivity)")

    p = sub.add_parser("clt-report", help="exact-vs-normal distribution report")
    p.add_argument("--r", type=int, default=2)
    p.add_argument("--n-list", dest="n_list", type=_int_list, default=[50, 100, 200, 400],
                   help="comma-separated weights (default 50,100,200,400)")
    p.add_argument("--max-negative-mass", dest="max_negative_mass", type=float,
                   default=0.0, help=neg_help)
    p.add_argument("--csv", dest="csv_output", default=None, help="CSV path (default stdout)")
    p.add_argument("--output", default=None, help="JSON summary path (default stdout)")

    p = sub.add_parser("tail", help="exact tail probabilities vs the budget")
    p.add_argument("--n", type=int, default=400)
    p.add_argument("--r", type=int, default=2)
    p.add_argument("--x-grid", dest="x_grid", type=_float_list, default=[0.5, 1.0, 2.0],
                   help="comma-separated positive x values (default 0.5,1,2)")
    p.add_argument("--max-negative-mass", dest="max_negative_mass", type=float,
                   default=0.0, help=neg_help)
    p.add_argument("--output", default=None)

    p = sub.add_parser("mgf", help="exact standardized MGF vs Gaussian target")
    p.add_argument("--n", type=int, default=200)
    p.add_argument("--r", type=int, default=2)
    p.add_argument("--theta-grid", dest="theta_grid", type=_float_list,
                   default=[0.25, 0.5, 1.0],
                   help="comma-separated theta in [-2,2] (default 0.25,0.5,1)")
    p.add_argument("--max-negative-mass", dest="max_negative_mass", type=float,
                   default=0.0, help=neg_help)
    p.add_argument("--output", default=None)

    p = sub.add_parser("verify", help="run the cross-module invariant suite")
    p.add_argument("--quick", action="store_true", help="reduced sweep ranges")
    p.add_argument("--workers", type=int, default=1,
                   help="thread count; affects wall time only, never output")
    p.add_argument("--output", default=None, help="JSON report path")

    return parser


_DISPATCH = {
    "table": _cmd_table,
    "constants": _cmd_constants,
    "dirichlet-check": _cmd_dirichlet_check,
    "saddle": _cmd_saddle,
    "clt-report": _cmd_clt_report,
    "tail": _cmd_tail,
    "mgf": _cmd_mgf,
    "verify": _cmd_verify,
}


def run(config: RunConfig) -> int:
    try:
        config.validate()
    except ValueError as exc:
        print(f"configuration error: {exc}", file=sys.stderr)
        return 2
    try:
        return _DISPATCH[config.subcommand](config)
    except (ValueError, RuntimeError, ArithmeticError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    fields = {f for f in RunConfig.__dataclass_fields__}
    kwargs = {k: v for k, v in vars(args).items() if k in fields and v is not None}
    config = RunConfig(**kwargs)
    return run(config)


if __name__ == "__main__":
    sys.exit(main())
