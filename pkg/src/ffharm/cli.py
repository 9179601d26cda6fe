"""Command-line front end: exponential sums, sphere checks, varieties,
restriction norms, scans with CSV output, and the Fourier self-test.

Exit codes: 0 on success, 1 when a verification check fails, 2 on usage
errors.  Scans parallelize over q with a thread pool capped by the
FFHARM_THREADS environment variable; per-q work is sequential and seeded,
so output is byte-identical for identical spec and seed.
"""

from __future__ import annotations

import argparse
import math
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from . import fourier
from .errors import FFHarmError
from .expsums import gauss, kloosterman, salie
from .field import FieldCtx, is_odd_prime
from .restriction import (
    ExponentPair,
    RestrictionReport,
    SearchConfig,
    _exact22_iterations,
    parse_exponent,
    region_conjecture,
    region_lewko,
    rnorm_search,
    suf2_check,
    witness_lower_bound,
)
from .spheres import (
    enumerate_sphere,
    sphere_count_closed,
    sphere_ft_closed,
    sphere_ft_naive,
    verify_closed_form,
)
from .varieties import build_variety, zero_sphere_intersection

PASS, FAIL = "PASS", "FAIL"


def _fmt(x: float) -> str:
    """12 significant digits, '.' decimal separator."""
    return format(float(x), ".12g")


def _fmt_complex(z: complex) -> str:
    return f"{z.real:+.6f}{z.imag:+.6f}i"


# ---------------------------------------------------------------------------
# argparse plumbing


def _odd_prime(text: str) -> int:
    try:
        q = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"q must be an integer, got {text!r}")
    if not is_odd_prime(q):
        raise argparse.ArgumentTypeError(f"q must be an odd prime, got {q}")
    return q


def _odd_prime_list(text: str) -> list[int]:
    return [_odd_prime(part) for part in text.split(",") if part.strip()]


def _int_list(text: str) -> list[int]:
    return [int(part) for part in text.split(",") if part.strip()]


def _vector(text: str) -> list[int]:
    try:
        return [int(part) for part in text.split(",")]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")


def _exponent(text: str):
    try:
        return parse_exponent(text)
    except ValueError as e:
        raise argparse.ArgumentTypeError(str(e))


# ---------------------------------------------------------------------------
# sum


def cmd_sum(kind: str, q: int, a: int, b: Optional[int] = None) -> int:
    ctx = FieldCtx(q, 2)
    if kind == "gauss":
        sv = gauss(ctx, a)
        bound, bound_label = math.sqrt(q), "sqrt(q)"
        ok = abs(sv.magnitude - math.sqrt(q)) < 1e-6
        relation = "="
    elif kind == "kloosterman":
        sv = kloosterman(ctx, a, b or 0)
        bound, bound_label = 2 * math.sqrt(q), "2*sqrt(q)"
        ok = sv.magnitude <= bound + 1e-6
        relation = "<="
    else:
        sv = salie(ctx, a, b or 0)
        bound, bound_label = 2 * math.sqrt(q), "2*sqrt(q)"
        ok = sv.magnitude <= bound + 1e-6
        relation = "<="
    verdict = PASS if ok else FAIL
    print(
        f"{_fmt_complex(sv.value)}  |{sv.kind[0]}|={sv.magnitude:.6f} "
        f"{relation} {bound_label}={bound:.6f}  {verdict}"
    )
    return 0 if ok else 1


def _run_sum(args) -> int:
    if args.kind in ("kloosterman", "salie") and args.b is None:
        args.parser.error(f"{args.kind} requires --b")
    return cmd_sum(args.kind, args.q, args.a, args.b)


# ---------------------------------------------------------------------------
# sphere


def _run_sphere_count(args) -> int:
    ctx = FieldCtx(args.q, args.d)
    sphere = enumerate_sphere(ctx, args.j)
    closed = sphere_count_closed(ctx, args.j)
    ok = sphere.cardinality == closed
    print(
        f"q={args.q} d={args.d} j={args.j % args.q}  enumerated={sphere.cardinality} "
        f"closed={closed}  {PASS if ok else FAIL}"
    )
    return 0 if ok else 1


def _run_sphere_ft(args) -> int:
    ctx = FieldCtx(args.q, args.d)
    if len(args.x) != args.d:
        args.parser.error(f"--x needs {args.d} coordinates")
    sphere = enumerate_sphere(ctx, args.j)
    naive = sphere_ft_naive(sphere, args.x)
    closed = sphere_ft_closed(ctx, args.j, args.x)
    err = abs(naive - closed)
    ok = err < 1e-6
    print(f"naive ={_fmt_complex(naive)}")
    print(f"closed={_fmt_complex(closed)}")
    print(f"|diff|={err:.3e}  {PASS if ok else FAIL}")
    return 0 if ok else 1


def cmd_verify_lemma1(q_list: Sequence[int], d_list: Sequence[int], tol: float = 1e-6) -> int:
    """Exhaustive naive-vs-closed sphere transform comparison per (q, d)."""
    worst = 0.0
    failed = False
    for q in q_list:
        for d in d_list:
            ctx = FieldCtx(q, d)
            max_err, first_bad = verify_closed_form(ctx, tol=tol)
            worst = max(worst, max_err)
            if first_bad is None:
                print(f"q={q} d={d}  max_err={max_err:.3e}  {PASS}")
            else:
                failed = True
                j, x = first_bad
                print(f"q={q} d={d}  max_err={max_err:.3e}  {FAIL}  first j={j} x={x}")
    print(f"overall max_err={worst:.3e}")
    return 1 if failed else 0


def _run_verify_lemma1(args) -> int:
    return cmd_verify_lemma1(args.q, args.d, tol=args.tol)


# ---------------------------------------------------------------------------
# variety


def _variety_for(args):
    ctx = FieldCtx(args.q, args.d)
    return ctx, build_variety(ctx, args.variety)


def _run_variety_info(args) -> int:
    ctx, v = _variety_for(args)
    inter = zero_sphere_intersection(v)
    hyp = "" if v.size_ok else "  [hypothesis violated: |V| far from q^(d-1)]"
    print(f"variety={v.label} q={ctx.q} d={ctx.d}")
    print(f"|V|={v.cardinality} (q^(d-1)={ctx.q ** (ctx.d - 1)}) size_ok={v.size_ok}{hyp}")
    print(f"contains_zero={v.contains_zero}")
    print(
        f"|V cap S_0|={inter.count}  threshold=q^((d^2-d-1)/d)={_fmt(inter.threshold)}  "
        f"{'passes' if inter.passes else 'fails'}"
    )
    return 0


def _run_variety_intersect(args) -> int:
    ctx, v = _variety_for(args)
    inter = zero_sphere_intersection(v)
    verdict = PASS if inter.passes else FAIL
    print(
        f"variety={v.label} q={ctx.q} d={ctx.d}  count={inter.count} "
        f"threshold={_fmt(inter.threshold)}  {verdict}"
    )
    return 0 if inter.passes else 1


# ---------------------------------------------------------------------------
# restrict


def _report_for(v, pair, method, starts, seed, sign_mode) -> RestrictionReport:
    if method == "search":
        config = SearchConfig(starts=starts, seed=seed, sign_mode=sign_mode)
        return rnorm_search(v, pair, config)
    if method == "exact22":
        if not (pair.p == 2 and pair.r == 2):
            raise ValueError("method exact22 requires --p 2 --r 2")
        sigma, iters = _exact22_iterations(v)
        return RestrictionReport(
            v.label, v.ctx.q, v.ctx.d, pair, "Exact22", sigma, iters, seed
        )
    if method == "witness":
        value = witness_lower_bound(v, pair)
        return RestrictionReport(
            v.label, v.ctx.q, v.ctx.d, pair, "Witness", value, 0, seed
        )
    raise ValueError(f"unknown method {method!r}")


def _run_restrict_norm(args) -> int:
    ctx = FieldCtx(args.q, args.d)
    v = build_variety(ctx, args.variety)
    pair = ExponentPair(args.p, args.r)
    try:
        rep = _report_for(v, pair, args.method, args.starts, args.seed, args.sign_mode)
    except ValueError as e:
        args.parser.error(str(e))
    if not v.size_ok:
        print("[hypothesis violated: |V| far from q^(d-1)]")
    print(
        f"variety={rep.variety} q={rep.q} d={rep.d} pair={rep.pair} "
        f"method={rep.method} sign_mode={rep.sign_mode}"
    )
    print(f"estimate={_fmt(rep.estimate)}  iterations={rep.iterations}  seed={rep.seed}")
    return 0


@dataclass
class ScanSpec:
    """One restriction scan: a variety, exponent pair, and list of primes."""

    variety: str
    d: int
    qs: list[int]
    pair: ExponentPair
    method: str = "search"
    starts: Optional[int] = None
    seed: int = 0
    sign_mode: str = "signed"
    out: str = "scan.csv"

    def __post_init__(self):
        for q in self.qs:
            if not is_odd_prime(q):
                raise ValueError(f"scan q values must be odd primes, got {q}")
        if self.d < 2:
            raise ValueError("scan needs d >= 2")
        self.qs = sorted(self.qs)


_CSV_HEADER = "q,d,variety,p,r,method,sign_mode,estimate,iters,seed,v_size,v_cap_s0,threshold"


def _scan_row(spec: ScanSpec, q: int) -> str:
    ctx = FieldCtx(q, spec.d)
    v = build_variety(ctx, spec.variety)
    inter = zero_sphere_intersection(v)
    rep = _report_for(v, spec.pair, spec.method, spec.starts, spec.seed, spec.sign_mode)
    p_txt = "inf" if spec.pair.p == math.inf else str(spec.pair.p)
    r_txt = "inf" if spec.pair.r == math.inf else str(spec.pair.r)
    fields = [
        str(q),
        str(spec.d),
        v.label,
        p_txt,
        r_txt,
        rep.method,
        rep.sign_mode,
        _fmt(rep.estimate),
        str(rep.iterations),
        str(rep.seed),
        str(v.cardinality),
        str(inter.count),
        _fmt(inter.threshold),
    ]
    return ",".join(fields)


def _worker_count(n_tasks: int) -> int:
    env = os.environ.get("FFHARM_THREADS")
    cap = os.cpu_count() or 1
    if env:
        try:
            cap = max(1, int(env))
        except ValueError:
            pass
    return max(1, min(n_tasks, cap))


def fit_loglog_slope(qs: Sequence[int], values: Sequence[float]) -> float:
    """Least-squares slope of log(value) against log(q)."""
    x = np.log(np.asarray(qs, dtype=float))
    y = np.log(np.asarray(values, dtype=float))
    return float(np.polyfit(x, y, 1)[0])


def cmd_restrict_scan(spec: ScanSpec) -> int:
    """Run the scan, write the CSV, print the fitted log-log slope."""
    rows: dict[int, str] = {}
    errors: dict[int, str] = {}
    workers = _worker_count(len(spec.qs))
    if workers == 1:
        for q in spec.qs:
            try:
                rows[q] = _scan_row(spec, q)
            except Exception as e:  # flush what we have, report the rest
                errors[q] = f"{type(e).__name__}: {e}"
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            futures = {q: pool.submit(_scan_row, spec, q) for q in spec.qs}
            for q in spec.qs:
                try:
                    rows[q] = futures[q].result()
                except Exception as e:
                    errors[q] = f"{type(e).__name__}: {e}"
    with open(spec.out, "w", newline="\n") as fh:
        fh.write(_CSV_HEADER + "\n")
        for q in spec.qs:
            if q in rows:
                fh.write(rows[q] + "\n")
    for q in spec.qs:
        if q in errors:
            print(f"q={q}: {errors[q]}", file=sys.stderr)
    done = [q for q in spec.qs if q in rows]
    print(f"wrote {spec.out} ({len(done)} rows)")
    if len(done) >= 2:
        estimates = [float(rows[q].split(",")[7]) for q in done]
        print(f"slope log(estimate) vs log(q): {fit_loglog_slope(done, estimates):+.4f}")
    return 1 if errors else 0


def _run_restrict_scan(args) -> int:
    try:
        spec = ScanSpec(
            variety=args.variety,
            d=args.d,
            qs=args.q,
            pair=ExponentPair(args.p, args.r),
            method=args.method,
            starts=args.starts,
            seed=args.seed,
            sign_mode=args.sign_mode,
            out=args.out,
        )
        if args.method == "exact22" and not (spec.pair.p == 2 and spec.pair.r == 2):
            raise ValueError("method exact22 requires --p 2 --r 2")
    except ValueError as e:
        args.parser.error(str(e))
    return cmd_restrict_scan(spec)


def _run_restrict_region(args) -> int:
    pair = ExponentPair(args.p, args.r)
    point = pair.inverse_point()
    print(f"pair={pair}  point (1/p, 1/r) = ({point[0]}, {point[1]})")
    print(f"necessary region (d={args.d}): {region_conjecture(args.d, point)}")
    if args.d >= 3:
        print(f"endpoint region (d={args.d}): {region_lewko(args.d, point)}")
    if pair.is_finite:
        value, ok = suf2_check(args.d, pair)
        print(f"exponent gate r*d*(1-1/p)-d+1 = {value}  ({'<= 0' if ok else '> 0'})")
    return 0


# ---------------------------------------------------------------------------
# ft selftest


def cmd_ft_selftest(q: int, d: int, trials: int = 20, seed: int = 0) -> int:
    ctx = FieldCtx(q, d)
    rng = np.random.default_rng(seed)
    ok = True
    worst_fast = worst_plancherel = worst_roundtrip = 0.0
    for _ in range(trials):
        values = rng.standard_normal(ctx.size) + 1j * rng.standard_normal(ctx.size)
        f = fourier.GridFunction(ctx, values, fourier.Side.PrimalCounting)
        slow = fourier.ft_naive(f)
        fast = fourier.ft_fast(f)
        scale = max(1.0, float(np.abs(slow.values).max()))
        worst_fast = max(worst_fast, float(np.abs(fast.values - slow.values).max()) / scale)
        lhs = float((np.abs(fast.values) ** 2).sum()) / ctx.size
        rhs = float((np.abs(values) ** 2).sum())
        worst_plancherel = max(worst_plancherel, abs(lhs - rhs) / rhs)
        back = fourier.ift(fast)
        worst_roundtrip = max(
            worst_roundtrip,
            float(np.abs(back.values - values).max()) / max(1.0, float(np.abs(values).max())),
        )
    for label, err in (
        ("fast vs naive", worst_fast),
        ("plancherel", worst_plancherel),
        ("round-trip", worst_roundtrip),
    ):
        good = err < 1e-9
        ok = ok and good
        print(f"{label}: max rel err {err:.3e}  {PASS if good else FAIL}")
    return 0 if ok else 1


def _run_ft_selftest(args) -> int:
    return cmd_ft_selftest(args.q, args.d, trials=args.trials, seed=args.seed)


# ---------------------------------------------------------------------------
# parser


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ffharm",
        description="Exponential sums, sphere transforms, and restriction scans over F_q^d.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_sum = sub.add_parser("sum", help="compute one exponential sum and check its bound")
    p_sum.add_argument("kind", choices=("gauss", "kloosterman", "salie"))
    p_sum.add_argument("--q", type=_odd_prime, required=True)
    p_sum.add_argument("--a", type=int, required=True)
    p_sum.add_argument("--b", type=int, default=None)
    p_sum.set_defaults(func=_run_sum)

    p_sphere = sub.add_parser("sphere", help="sphere cardinalities and transforms")
    sphere_sub = p_sphere.add_subparsers(dest="subcommand", required=True)

    p_count = sphere_sub.add_parser("count")
    p_count.add_argument("--q", type=_odd_prime, required=True)
    p_count.add_argument("--d", type=int, required=True)
    p_count.add_argument("--j", type=int, required=True)
    p_count.set_defaults(func=_run_sphere_count)

    p_ft = sphere_sub.add_parser("ft")
    p_ft.add_argument("--q", type=_odd_prime, required=True)
    p_ft.add_argument("--d", type=int, required=True)
    p_ft.add_argument("--j", type=int, required=True)
    p_ft.add_argument("--x", type=_vector, required=True, help="comma-separated coordinates")
    p_ft.set_defaults(func=_run_sphere_ft)

    p_vl = sphere_sub.add_parser("verify-lemma1")
    p_vl.add_argument("--q", type=_odd_prime_list, required=True, help="comma-separated primes")
    p_vl.add_argument("--d", type=_int_list, required=True, help="comma-separated dimensions")
    p_vl.add_argument("--tol", type=float, default=1e-6)
    p_vl.set_defaults(func=_run_verify_lemma1)

    p_var = sub.add_parser("variety", help="build varieties and check the S_0 intersection")
    var_sub = p_var.add_subparsers(dest="subcommand", required=True)
    for name, func in (("info", _run_variety_info), ("intersect", _run_variety_intersect)):
        pv = var_sub.add_parser(name)
        pv.add_argument("--q", type=_odd_prime, required=True)
        pv.add_argument("--d", type=int, required=True)
        pv.add_argument(
            "--variety",
            required=True,
            help="paraboloid | plane | sphere:<t> | poly:<source>",
        )
        pv.set_defaults(func=func)

    p_res = sub.add_parser("restrict", help="restriction norms, scans, region tests")
    res_sub = p_res.add_subparsers(dest="subcommand", required=True)

    p_norm = res_sub.add_parser("norm")
    p_norm.add_argument("--q", type=_odd_prime, required=True)
    p_norm.add_argument("--d", type=int, required=True)
    p_norm.add_argument("--variety", required=True)
    p_norm.add_argument("--p", type=_exponent, required=True, help="fraction a/b or inf")
    p_norm.add_argument("--r", type=_exponent, required=True, help="fraction a/b or inf")
    p_norm.add_argument("--method", choices=("search", "exact22", "witness"), default="search")
    p_norm.add_argument("--starts", type=int, default=None)
    p_norm.add_argument("--seed", type=int, default=0)
    p_norm.add_argument("--sign-mode", dest="sign_mode", choices=("signed", "nonneg"), default="signed")
    p_norm.set_defaults(func=_run_restrict_norm)

    p_scan = res_sub.add_parser("scan")
    p_scan.add_argument("--variety", required=True)
    p_scan.add_argument("--d", type=int, required=True)
    p_scan.add_argument("--q", type=_odd_prime_list, required=True, help="comma-separated primes")
    p_scan.add_argument("--p", type=_exponent, required=True)
    p_scan.add_argument("--r", type=_exponent, required=True)
    p_scan.add_argument("--method", choices=("search", "exact22", "witness"), default="search")
    p_scan.add_argument("--starts", type=int, default=None)
    p_scan.add_argument("--seed", type=int, default=0)
    p_scan.add_argument("--sign-mode", dest="sign_mode", choices=("signed", "nonneg"), default="signed")
    p_scan.add_argument("--out", required=True)
    p_scan.set_defaults(func=_run_restrict_scan)

    p_region = res_sub.add_parser("region")
    p_region.add_argument("--d", type=int, required=True)
    p_region.add_argument("--p", type=_exponent, required=True)
    p_region.add_argument("--r", type=_exponent, required=True)
    p_region.set_defaults(func=_run_restrict_region)

    p_ftm = sub.add_parser("ft", help="Fourier engine self-test")
    ft_sub = p_ftm.add_subparsers(dest="subcommand", required=True)
    p_self = ft_sub.add_parser("selftest")
    p_self.add_argument("--q", type=_odd_prime, required=True)
    p_self.add_argument("--d", type=int, required=True)
    p_self.add_argument("--trials", type=int, default=20)
    p_self.add_argument("--seed", type=int, default=0)
    p_self.set_defaults(func=_run_ft_selftest)

    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    args.parser = parser
    try:
        return args.func(args)
    except FFHarmError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
