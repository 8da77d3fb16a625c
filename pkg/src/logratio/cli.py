"""Command-line interface: ``python -m logratio <command>``.

Exit codes: 0 success / all checks pass, 1 verification failure or domain
error, 2 usage error.
"""
from __future__ import annotations

import argparse
import math
import sys
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from . import analysis, laplace_conv, pickcheck, ratfun, representations as reps
from .cutplane import DomainError, Regime, RatioParam, f_direct
from .densities import Kind, density_spec
from .quadrature import QuadConfig

DEFAULT_RS = (0.1, 0.3, 0.5, 0.7, 0.9, 1.5, 2.5, 5.0, 10.0)
SUITES = ("identities", "representations", "pick", "convolution", "inequalities", "reciprocity")


class UsageError(Exception):
    pass


def _fmt(v) -> str:
    if isinstance(v, bool):
        return str(v).lower()
    if isinstance(v, Fraction):
        return str(v)
    if isinstance(v, complex):
        return f"{v.real:.17g}{v.imag:+.17g}j"
    if isinstance(v, (float, np.floating)):
        return "inf" if math.isinf(v) and v > 0 else format(float(v), ".17g")
    return str(v)


@dataclass
class Check:
    name: str
    target: object
    computed: object
    residual: float
    tolerance: float
    passed: bool

    def line(self) -> str:
        return (f"name={self.name} computed={_fmt(self.computed)} target={_fmt(self.target)} "
                f"residual={_fmt(self.residual)} tolerance={_fmt(self.tolerance)} "
                f"pass={_fmt(self.passed)}")


@dataclass
class VerificationReport:
    checks: list = field(default_factory=list)

    @property
    def overall(self) -> bool:
        return all(c.passed for c in self.checks)

    def add(self, name, target, computed, residual, tolerance, passed=None):
        if passed is None:
            passed = residual <= tolerance
        self.checks.append(Check(name, target, computed, float(residual), float(tolerance), bool(passed)))

    def format(self) -> str:
        return "\n".join([c.line() for c in self.checks] + [f"overall={_fmt(self.overall)}"])


# ---------------------------------------------------------------- density

def density_samples(kind: Kind, r: float, t_min: float, t_max: float, n: int) -> np.ndarray:
    """Linear grid on [t_min, t_max] plus any knots inside it; excluded domain
    edges are dropped."""
    spec = density_spec(kind, r)
    lo, hi = spec.domain
    if kind is Kind.PHI:
        lo = -math.inf
    t = np.linspace(t_min, t_max, n)
    knots = [k for k in spec.knots if t_min <= k <= t_max]
    t = np.unique(np.concatenate([t, knots]))
    open_lo = kind in (Kind.SIGMA, Kind.TSIGMA)
    keep = (t > lo) if open_lo else (t >= lo)
    if np.any(~keep & (t != lo)):
        raise DomainError(f"range [{t_min}, {t_max}] leaves the domain of {kind.value}")
    return t[keep]


def write_density_csv(path, t, values):
    with open(path, "w") as fh:
        fh.write("t,value\n")
        for a, b in zip(t, values):
            fh.write(f"{_fmt(float(a))},{_fmt(float(b))}\n")


def read_density_csv(path):
    data = np.genfromtxt(path, delimiter=",", names=True)
    return data["t"], data["value"]


def write_gnuplot(script_path, csv_path, spec, t_min, t_max, title):
    cuts = [t_min] + [k for k in spec.knots if t_min < k < t_max] + [t_max]
    panels = list(zip(cuts[:-1], cuts[1:]))
    lines = [
        "set datafile separator ','",
        "set key off",
        f"set multiplot layout 1,{len(panels)} title '{title}'",
    ]
    for a, b in panels:
        lines += [
            f"set xrange [{a}:{b}]",
            "set autoscale y",
            f"plot '{csv_path}' every ::1 using 1:(($1>{a} && $1<{b} && $2<1e300) ? $2 : 1/0) with lines",
        ]
    lines.append("unset multiplot")
    with open(script_path, "w") as fh:
        fh.write("\n".join(lines) + "\n")


def cmd_density(args) -> int:
    kind = Kind(args.kind)
    try:
        spec = density_spec(kind, args.r)
    except DomainError as exc:
        raise UsageError(str(exc))
    if args.n < 2 or not args.t_min < args.t_max:
        raise UsageError("need n >= 2 and t_min < t_max")
    t = density_samples(kind, args.r, args.t_min, args.t_max, args.n)
    vals = np.asarray(spec(t), dtype=float)
    out = args.out or f"{kind.value}_{args.r:g}.csv"
    write_density_csv(out, t, vals)
    if args.gnuplot:
        write_gnuplot(out.rsplit(".", 1)[0] + ".gp", out, spec, args.t_min, args.t_max,
                      f"{kind.value}, r = {args.r:g}")
    print(f"wrote {len(t)} rows to {out}")
    return 0


# ---------------------------------------------------------------- verify

def _real_grid(p: RatioParam, n=30):
    return np.geomspace(1e-3, 1e3, n)


def _complex_grid(n=20):
    rad = np.geomspace(0.05, 50.0, n // 4)
    ang = np.array([0.15, 0.5, 0.85, 0.97]) * np.pi
    return [complex(a * math.cos(b), a * math.sin(b)) for a in rad for b in ang][:n]


def suite_identities(report, rs, cfg, tol):
    for r in rs:
        m = reps.mass_identities(r, cfg)
        for key in m.residuals:
            report.add(f"{key}[r={r:g}]", m.targets[key], m.computed[key], m.residuals[key], tol)


def suite_representations(report, rs, cfg, tol):
    tol_c = max(tol, 1e-7)
    for r in rs:
        p = RatioParam(r)
        evals = [("rep", reps.eval_rep, lambda z: f_direct(p, z))]
        if p.regime is Regime.SUB_UNIT:
            evals += [("one-minus", reps.eval_one_minus_rep, lambda z: 1 - f_direct(p, z)),
                      ("f-over-z", reps.eval_f_over_z_rep, lambda z: f_direct(p, z) / z),
                      ("pick", reps.eval_pick_rep, lambda z: f_direct(p, z))]
        for name, fn, ref in evals:
            worst_r = max(abs(fn(p, x, cfg).value - ref(x)) for x in _real_grid(p))
            worst_c = max(abs(fn(p, z, cfg).value - ref(z)) for z in _complex_grid())
            report.add(f"{name}-real[r={r:g}]", 0.0, worst_r, worst_r, max(tol, 1e-8))
            report.add(f"{name}-complex[r={r:g}]", 0.0, worst_c, worst_c, tol_c)
        report.add(f"alpha[r={r:g}]", f_direct(p, 1j).real, reps.alpha(p),
                   abs(reps.alpha(p) - f_direct(p, 1j).real), 1e-13)


def suite_pick(report, rs, grid_n):
    grid = pickcheck.default_grid(grid_n)
    for r in rs:
        res = pickcheck.halfplane_scan(r, grid)
        if r < 1:
            report.add(f"halfplane-min-im[r={r:g}]", 0.0, res.min_im, 0.0, 0.0, res.min_im > 0)
        elif r > 1:
            report.add(f"halfplane-max-im[r={r:g}]", 0.0, res.max_im, 0.0, 0.0, res.max_im < 0)
        b = pickcheck.beta_probe(r, 1e6)
        report.add(f"beta[r={r:g}]", 0.0, b, b, 1e-5)


def suite_convolution(report, rs, cfg):
    for r in rs:
        if not r < 1:
            continue
        for x in (0.1, 0.5, 1.0, 2.0, 5.0):
            c = laplace_conv.convolution_residual(r, x, inner=cfg)
            report.add(f"convolution[r={r:g},x={x:g}]", 0.0, c.residual, abs(c.residual), 1e-5)


def suite_inequalities(report, rs, grid_n):
    grid = pickcheck.default_grid(grid_n)
    for r in rs:
        if r == 1:
            continue
        sub = r < 1
        bound = analysis.Inequality.SUB_BOUND if sub else analysis.Inequality.SUPER_BOUND
        half = analysis.Inequality.SUB_HALF_PLANE if sub else analysis.Inequality.SUPER_HALF_PLANE
        # the real bound holds for x > 0 and reverses on the negative part of the domain
        rb = analysis.inequality_scan(r, bound, 10_000, x_min=1e-9)
        report.add(f"{bound.value}[x>0,r={r:g}]", 0, rb.violations, rb.violations, 0)
        rh = analysis.inequality_scan(r, half, grid=grid)
        report.add(f"{half.value}[r={r:g}]", 0, rh.violations, rh.violations, 0)


def suite_reciprocity(report, seed, n=100):
    rng = np.random.default_rng(seed)
    rs = np.exp(rng.uniform(math.log(0.05), math.log(20), n))
    xs = np.exp(rng.uniform(math.log(0.01), math.log(100), n))
    worst = max(laplace_conv.reciprocity_residual(r, x) for r, x in zip(rs, xs))
    report.add(f"reciprocity[seed={seed}]", 0.0, worst, worst, 1e-13)


def run_verify(rs, suites, tol=1e-9, grid_n=200, seed=None, cfg=None) -> VerificationReport:
    cfg = cfg or QuadConfig()
    report = VerificationReport()
    for suite in suites:
        if suite == "identities":
            if any(r == 1 for r in rs):
                raise UsageError("identity checks are regime specific; r = 1 is not allowed")
            suite_identities(report, rs, cfg, tol)
        elif suite == "representations":
            suite_representations(report, [r for r in rs if r != 1], cfg, tol)
        elif suite == "pick":
            suite_pick(report, rs, grid_n)
        elif suite == "convolution":
            suite_convolution(report, rs, cfg)
        elif suite == "inequalities":
            suite_inequalities(report, rs, grid_n)
        elif suite == "reciprocity":
            if seed is None:
                continue
            suite_reciprocity(report, seed)
    return report


def cmd_verify(args) -> int:
    rs = args.r or list(DEFAULT_RS)
    suites = SUITES if args.suite == "all" else (args.suite,)
    if args.suite == "reciprocity" and args.seed is None:
        raise UsageError("the reciprocity suite samples at random; pass --seed")
    report = run_verify(rs, suites, args.tol or 1e-9, args.grid, args.seed, _cfg(args))
    print(report.format())
    return 0 if report.overall else 1


# ---------------------------------------------------------------- others

def cmd_scan(args) -> int:
    if args.what == "halfplane":
        for r in args.r:
            res = pickcheck.halfplane_scan(r, pickcheck.default_grid(args.grid))
            print(f"r={r:g} min_im={_fmt(res.min_im)} max_im={_fmt(res.max_im)} argmin={_fmt(res.argmin)}")
        return 0
    if args.what == "inequality":
        if not args.which:
            raise UsageError("--which is required for inequality scans")
        bad = 0
        for r in args.r:
            try:
                rep = analysis.inequality_scan(r, args.which, args.samples,
                                               grid=pickcheck.default_grid(args.grid))
            except DomainError as exc:
                raise UsageError(str(exc))
            bad += rep.violations
            print(f"r={r:g} which={rep.which.value} samples={rep.samples} violations={rep.violations} "
                  f"worst_margin={_fmt(rep.worst_margin)} violation_range={rep.violation_range}")
        return 0 if bad == 0 else 1
    kind = Kind(args.kind or "sigma")
    for r in args.r:
        try:
            spec = density_spec(kind, r)
        except DomainError as exc:
            raise UsageError(str(exc))
        a, b = spec.pieces()[0] if kind is not Kind.PHI else spec.pieces()[1]
        w = (b - a) * analysis.EDGE
        rep = analysis.monotonicity_scan(spec, a + w, b - w, args.samples)
        print(f"r={r:g} kind={kind.value} interval=({_fmt(a + w)},{_fmt(b - w)}) "
              f"monotone={_fmt(rep.monotone)} direction={rep.direction} sign_changes={list(rep.sign_changes)}")
    return 0


def cmd_find_r0(args) -> int:
    try:
        r0 = analysis.find_r0(args.lo, args.hi, args.tol_r0, args.n)
    except ValueError as exc:
        raise UsageError(str(exc))
    print(f"r0={_fmt(r0)} tol={_fmt(args.tol_r0)} samples={args.n}")
    return 0


def cmd_convolution(args) -> int:
    ok = True
    for r in args.r:
        for x in args.x:
            c = laplace_conv.convolution_residual(r, x, inner=_cfg(args))
            good = abs(c.residual) <= 1e-5
            ok &= good
            print(f"r={r:g} x={x:g} residual={_fmt(c.residual)} err_est={_fmt(c.err_est)} pass={_fmt(good)}")
    return 0 if ok else 1


EXPECTED_TERMS = ((Fraction(2), Fraction(-3, 10)), (Fraction(4), Fraction(-3, 4)), (Fraction(12), Fraction(-99, 20)))


def cmd_counterexample(args) -> int:
    f = ratfun.build_example_f()
    q = ratfun.scaled_quotient(f, Fraction(1, 4))
    d = ratfun.partial_fractions(q)
    rep = ratfun.classification_report(d, pickcheck.default_grid(args.grid))
    num_roots = ", ".join(str(x) for x in q.numerator_roots())
    den_roots = ", ".join(str(x) for x in q.denominator_roots())
    print("f(x) = x/(x+1) + x/(x+3)")
    print(f"quotient f(x/4)/f(x): numerator roots [{num_roots}], denominator roots [{den_roots}]")
    print(f"decomposition: {d}")
    print(f"constant={d.constant} coefficients={[str(c) for _, c in d.terms]} poles={[str(p) for p, _ in d.terms]}")
    print(f"value_at_zero={rep.value_at_zero}")
    print(f"negative_coefficient_flag={_fmt(rep.negative_coefficient_flag)}")
    print(f"all_coeffs_nonpos={_fmt(rep.all_coeffs_nonpos)} poles_all_positive={_fmt(rep.poles_all_positive)}")
    print(f"numeric_pick_min_im={_fmt(rep.numeric_pick_min_im)}")
    print(f"note: {rep.note}")
    exact = d.constant == 1 and d.terms == EXPECTED_TERMS and d.to_rational() == q
    print(f"matches_expected={_fmt(exact)}")
    return 0 if exact else 1


REPS = ("direct", "rep", "one-minus", "f-over-z", "pick", "bernstein")


def cmd_eval(args) -> int:
    z = complex(args.z.replace(" ", ""))
    p = RatioParam(args.r)
    cfg = _cfg(args)
    if args.rep == "direct":
        v, err = f_direct(p, z), 0.0
    elif args.rep == "bernstein":
        if z.imag:
            raise UsageError("the Bernstein representation is evaluated on the positive axis only")
        res = reps.eval_bernstein_rep(p, z.real, inner=cfg)
        v, err = complex(res.value), res.err_est
    else:
        fn = {"rep": reps.eval_rep, "one-minus": reps.eval_one_minus_rep,
              "f-over-z": reps.eval_f_over_z_rep, "pick": reps.eval_pick_rep}[args.rep]
        res = fn(p, z, cfg)
        v, err = res.value, res.err_est
    print(f"r={p.r:g} z={_fmt(z)} rep={args.rep} value={_fmt(v)} err_est={_fmt(err)}")
    return 0


def _cfg(args) -> QuadConfig:
    tol = getattr(args, "tol", None)
    if tol is None:
        return QuadConfig()
    try:
        return QuadConfig(abs_tol=tol, rel_tol=tol)
    except ValueError as exc:
        raise UsageError(f"--tol: {exc}")


def _floats(s):
    return [float(v) for v in s.split(",") if v]


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="logratio", description=__doc__.splitlines()[0])
    ap.add_argument("--tol", type=float, default=None, help="quadrature / check tolerance")
    ap.add_argument("--grid", type=int, default=200, help="half-plane grid size per axis")
    g = ap.add_mutually_exclusive_group()
    g.add_argument("--seed-free", action="store_true", help="skip randomised checks (default)")
    g.add_argument("--seed", type=int, default=None, help="seed for randomised checks")
    sub = ap.add_subparsers(dest="command", required=True)

    d = sub.add_parser("density", help="write a density to CSV")
    d.add_argument("--kind", choices=[k.value for k in Kind], required=True)
    d.add_argument("--r", type=float, required=True)
    d.add_argument("--t-min", type=float, required=True)
    d.add_argument("--t-max", type=float, required=True)
    d.add_argument("--n", type=int, default=1000)
    d.add_argument("--out", default=None)
    d.add_argument("--gnuplot", action="store_true", help="also write a plot script split at knots")
    d.set_defaults(func=cmd_density)

    v = sub.add_parser("verify", help="run verification suites")
    v.add_argument("--r", type=_floats, default=None, help="comma-separated r values")
    v.add_argument("--suite", choices=("all",) + SUITES, default="all")
    v.set_defaults(func=cmd_verify)

    s = sub.add_parser("scan", help="half-plane, inequality or monotonicity scans")
    s.add_argument("what", choices=("halfplane", "inequality", "monotonicity"))
    s.add_argument("--r", type=_floats, default=[0.5])
    s.add_argument("--which", choices=[w.value for w in analysis.Inequality])
    s.add_argument("--kind", choices=[k.value for k in Kind])
    s.add_argument("--samples", type=int, default=10_000)
    s.set_defaults(func=cmd_scan)

    f = sub.add_parser("find-r0", help="locate the monotonicity transition of sigma_r")
    f.add_argument("--lo", type=float, default=0.02)
    f.add_argument("--hi", type=float, default=0.5)
    f.add_argument("--tol-r0", type=float, default=1e-3)
    f.add_argument("--n", type=int, default=analysis.R0_SAMPLES)
    f.set_defaults(func=cmd_find_r0)

    c = sub.add_parser("convolution", help="residuals of the convolution equation")
    c.add_argument("--r", type=_floats, default=[0.5])
    c.add_argument("--x", type=_floats, default=[0.1, 0.5, 1.0, 2.0, 5.0])
    c.set_defaults(func=cmd_convolution)

    x = sub.add_parser("counterexample", help="exact partial fractions of f(x/4)/f(x)")
    x.set_defaults(func=cmd_counterexample)

    e = sub.add_parser("eval", help="evaluate f_r at one point")
    e.add_argument("--r", type=float, required=True)
    e.add_argument("--z", required=True, help="point, e.g. 1 or 0.5+2j")
    e.add_argument("--rep", choices=REPS, default="direct")
    e.set_defaults(func=cmd_eval)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 2
    except DomainError as exc:
        print(f"domain error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
