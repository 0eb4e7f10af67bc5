"""Command-line surface: point evaluations, verification suites, figure sweeps.

Exit codes: 0 success, 1 failed verification gate, 2 invalid parameters
or grids, 3 oracle non-convergence.

Output discipline: CSV files are RFC-4180 style (CRLF line ends, header
row) with every number printed to 17 significant digits; JSON records go
to stdout with fixed key order.  Nothing here depends on time or on an
unseeded generator, so identical invocations produce identical bytes.

A flat INI-style config file (section headers optional) can supply any
long option; explicit flags win over config values.
"""

from __future__ import annotations

import argparse
import configparser
import csv
import dataclasses
import json
import math
import sys
from concurrent.futures import ThreadPoolExecutor

import numpy as np

from .model import BiDistKind, GaussianSmearing
from .oracle import (
    IdentityCheck,
    OracleConvergenceError,
    check_integral_identity,
    oracle_value,
)
from .propagators import evaluate
from .udw import HarvestingSetup, fig1_sweep
from .gapless import fig3_sweep, fig4_sweep

KINDS = tuple(k.value for k in BiDistKind)
CHECK_NAMES = ("oracle_grid", "identities", "newint")
DEFAULT_SEED = 20260822
DEFAULT_LAMS = (0.25, 0.5, 1.0)

ORACLE_GRID_TOL = 1e-8
ORACLE_ABS_FLOOR = 1e-250
IDENTITY_TOL = 1e-12
NEWINT_TOL = 1e-8


def _fmt(x: float) -> str:
    return "%.17g" % float(x)


def _write_csv(path: str, header: list[str], rows: list[list[float]]) -> None:
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\r\n")
        w.writerow(header)
        for row in rows:
            w.writerow([_fmt(v) for v in row])


def _emit(record: dict) -> None:
    sys.stdout.write(json.dumps(record) + "\n")


# ---------------------------------------------------------------------------
# config file


def _load_config(path: str | None) -> dict[str, str]:
    if path is None:
        return {}
    with open(path) as fh:
        text = fh.read()
    stripped = [
        ln for ln in text.splitlines()
        if ln.strip() and not ln.lstrip().startswith(("#", ";"))
    ]
    if stripped and not stripped[0].lstrip().startswith("["):
        text = "[cli]\n" + text
    cp = configparser.ConfigParser()
    cp.read_string(text)
    flat: dict[str, str] = {}
    for section in cp.sections():
        flat.update(cp.items(section))
    return flat


def _resolve(args: argparse.Namespace, config: dict[str, str]):
    """Fill argparse None slots from the config file; flags win because
    they leave no None behind.  Config keys use the long option spelling
    (dashes or underscores both accepted)."""

    def get(name: str, default, cast):
        flag = getattr(args, name)
        if flag is not None:
            return flag
        for key in (name, name.replace("_", "-")):
            if key in config:
                raw = config[key]
                if cast is _floats:
                    return _floats(raw)
                return cast(raw)
        return default

    return get


def _floats(raw) -> tuple[float, ...]:
    if isinstance(raw, (list, tuple)):
        return tuple(float(v) for v in raw)
    return tuple(float(v) for v in str(raw).replace(",", " ").split())


# ---------------------------------------------------------------------------
# eval


def _smearing_pair(get) -> tuple[GaussianSmearing, GaussianSmearing]:
    T = get("T", 1.0, float)
    sigma = get("sigma", 0.0, float)
    omega = get("Omega", 0.0, float)
    f1 = GaussianSmearing(
        T=get("T_1", T, float),
        t0=get("t0", 0.0, float),
        Omega=get("Omega_1", omega, float),
        sigma=get("sigma_1", sigma, float),
    )
    f2 = GaussianSmearing(
        T=get("T_2", T, float),
        t0=0.0,
        Omega=get("Omega_2", omega, float),
        sigma=get("sigma_2", sigma, float),
        L=(get("sep", 0.0, float), 0.0, 0.0),
    )
    return f1, f2


def cmd_eval(args: argparse.Namespace, config: dict[str, str]) -> int:
    get = _resolve(args, config)
    f1, f2 = _smearing_pair(get)
    pv = evaluate(args.kind, f1, f2)
    if pv.overflow:
        raise ValueError("value is not finite at these parameters")
    record = {
        "re": pv.value.real,
        "im": pv.value.imag,
        "kind": args.kind,
        "params": {
            "T1": f1.T, "T2": f2.T, "sigma1": f1.sigma, "sigma2": f2.sigma,
            "Omega1": f1.Omega, "Omega2": f2.Omega, "t0": f1.t0,
            "sep": f2.L[0],
        },
    }
    if args.with_oracle:
        orc = oracle_value(args.kind, f1, f2)
        scale = max(abs(orc.value), ORACLE_ABS_FLOOR)
        record["oracle_re"] = orc.value.real
        record["oracle_im"] = orc.value.imag
        record["rel_err"] = abs(pv.value - orc.value) / scale
    _emit(record)
    return 0


# ---------------------------------------------------------------------------
# verify


@dataclasses.dataclass
class CheckResult:
    name: str
    max_rel_err: float
    ok: bool


def _grid_tuples(rng: np.random.Generator, n: int):
    """Certification tuples: wide parameter box, sigma occasionally 0
    (positive-frequency kinds only there), sigma always shared."""
    out = []
    for _ in range(n):
        T1 = float(rng.uniform(0.1, 10.0))
        T2 = float(rng.uniform(0.1, 10.0))
        sigma = 0.0 if rng.uniform() < 0.12 else float(rng.uniform(0.02, 2.0))
        t0 = float(rng.uniform(-10.0, 10.0))
        sep = float(rng.uniform(0.1, 30.0))
        om1 = float(rng.uniform(-3.0, 3.0))
        om2 = float(rng.uniform(-3.0, 3.0))
        out.append((T1, T2, sigma, t0, sep, om1, om2))
    return out


def _check_oracle_grid(seed: int, jobs: int, envelope_cut: float) -> CheckResult:
    rng = np.random.default_rng(seed)
    tuples = _grid_tuples(rng, 50)

    def one(tup) -> float:
        T1, T2, sigma, t0, sep, om1, om2 = tup
        f1 = GaussianSmearing(T=T1, t0=t0, Omega=om1, sigma=sigma)
        f2 = GaussianSmearing(T=T2, t0=0.0, Omega=om2, sigma=sigma,
                              L=(sep, 0.0, 0.0))
        kinds = list(BiDistKind) if sigma > 0.0 else [
            BiDistKind.WIGHTMAN, BiDistKind.HADAMARD, BiDistKind.CAUSAL,
        ]
        worst = 0.0
        for kind in kinds:
            c = evaluate(kind, f1, f2).value
            orc = oracle_value(kind, f1, f2, envelope_cut=envelope_cut)
            # allowed discrepancy: relative tolerance, ten times the
            # quadrature's own error estimate, or the deep-underflow
            # absolute floor, whichever is loosest
            scale = max(
                abs(orc.value),
                10.0 * orc.abs_error_estimate / ORACLE_GRID_TOL,
                ORACLE_ABS_FLOOR / ORACLE_GRID_TOL,
            )
            worst = max(worst, abs(c - orc.value) / scale)
        return worst

    if jobs > 1:
        with ThreadPoolExecutor(max_workers=jobs) as ex:
            worsts = list(ex.map(one, tuples))
    else:
        worsts = [one(t) for t in tuples]
    m = max(worsts)
    return CheckResult("oracle_grid", m, m <= ORACLE_GRID_TOL)


def _check_identities(seed: int) -> CheckResult:
    rng = np.random.default_rng(seed + 1)

    def rel(a: complex, b: complex, *terms: complex) -> float:
        """Residual measured against the participants' scale: when one
        order of a pair is exponentially below the other, the small side
        of an identity sits under the rounding floor of the big terms,
        and only the backward-error reading is achievable."""
        scale = max(abs(a), abs(b), *(abs(t) for t in terms))
        return abs(a - b) / scale if scale > 0.0 else 0.0

    worst = 0.0
    for _ in range(200):
        f1 = GaussianSmearing(
            T=float(rng.uniform(0.1, 10.0)), t0=float(rng.uniform(-10.0, 10.0)),
            Omega=float(rng.uniform(-3.0, 3.0)),
            sigma=float(rng.uniform(0.02, 2.0)),
        )
        f2 = GaussianSmearing(
            T=float(rng.uniform(0.1, 10.0)), t0=0.0,
            Omega=float(rng.uniform(-3.0, 3.0)), sigma=f1.sigma,
            L=(float(rng.uniform(0.1, 30.0)), 0.0, 0.0),
        )
        w = evaluate(BiDistKind.WIGHTMAN, f1, f2).value
        h = evaluate(BiDistKind.HADAMARD, f1, f2).value
        e = evaluate(BiDistKind.CAUSAL, f1, f2).value
        gr = evaluate(BiDistKind.RETARDED, f1, f2).value
        ga = evaluate(BiDistKind.ADVANCED, f1, f2).value
        dl = evaluate(BiDistKind.SYMMETRIC, f1, f2).value
        gf = evaluate(BiDistKind.FEYNMAN, f1, f2).value
        ga_swap = evaluate(BiDistKind.ADVANCED, f2, f1).value
        worst = max(
            worst,
            rel(e, gr - ga, gr, ga),
            rel(dl, gr + ga, gr, ga),
            rel(w, 0.5 * h + 0.5j * e, 0.5 * h, 0.5 * e),
            rel(gf, 0.5 * h + 0.5j * dl, 0.5 * h, 0.5 * dl),
            rel(gr, ga_swap),
        )
    return CheckResult("identities", worst, worst <= IDENTITY_TOL)


def _newint_draws(rng: np.random.Generator, n: int):
    out = []
    for _ in range(n):
        sigma = float(rng.uniform(0.5, 3.0))
        gamma = sigma * float(rng.uniform(-0.95, 0.95))
        ell = float(rng.uniform(0.0, 8.0))
        out.append((gamma, sigma, ell))
    return out


def _check_newint(seed: int, point=None) -> CheckResult:
    if point is not None:
        checks = [check_integral_identity(*point)]
    else:
        rng = np.random.default_rng(seed + 2)
        checks = [check_integral_identity(*p) for p in _newint_draws(rng, 20)]
    worst = 0.0
    for c in checks:
        scale = max(
            abs(c.lhs.value), abs(c.rhs),
            10.0 * c.lhs.abs_error_estimate / NEWINT_TOL,
        )
        if scale > 0.0:
            worst = max(worst, abs(c.lhs.value - c.rhs) / scale)
    return CheckResult("newint", worst, worst <= NEWINT_TOL)


def cmd_verify(args: argparse.Namespace, config: dict[str, str]) -> int:
    get = _resolve(args, config)
    seed = get("seed", DEFAULT_SEED, int)
    jobs = get("jobs", 1, int)
    only = args.only or list(CHECK_NAMES)
    for name in only:
        if name not in CHECK_NAMES:
            raise ValueError(
                f"unknown check {name!r}; pick from {', '.join(CHECK_NAMES)}"
            )
    envelope_cut = 1e-3 if args.inject_fault else 1e-18
    point = None
    if args.gamma is not None or args.sigma is not None or args.ell is not None:
        if None in (args.gamma, args.sigma, args.ell):
            raise ValueError("--gamma, --sigma and --ell must be given together")
        point = (args.gamma, args.sigma, args.ell)

    results: list[CheckResult] = []
    for name in CHECK_NAMES:
        if name not in only:
            continue
        if name == "oracle_grid":
            results.append(_check_oracle_grid(seed, jobs, envelope_cut))
        elif name == "identities":
            results.append(_check_identities(seed))
        elif name == "newint":
            results.append(_check_newint(seed, point))
    report = {
        "schema": 1,
        "checks": [
            {"name": r.name, "max_rel_err": r.max_rel_err, "pass": r.ok}
            for r in results
        ],
    }
    _emit(report)
    return 0 if all(r.ok for r in results) else 1


# ---------------------------------------------------------------------------
# figures


def _linspace(lo: float, hi: float, n: int) -> list[float]:
    if n < 2 or not (hi > lo):
        raise ValueError("grid needs at least 2 points and max > min")
    return [float(v) for v in np.linspace(lo, hi, n)]


def _lam_tag(lam: float) -> str:
    return f"{lam:g}"


def cmd_fig1(args: argparse.Namespace, config: dict[str, str]) -> int:
    get = _resolve(args, config)
    out = get("out", "fig1.csv", str)
    points = get("points", 200, int)
    omega_t_max = get("omega_t_max", 6.0, float)
    sep_over_t = get("sep_over_t", 5.0, float)
    sigma_over_t = get("sigma_over_t", 0.01, float)
    grid = _linspace(0.0, omega_t_max, points)
    base = HarvestingSetup(
        lam=1.0, Omega=0.0, T=1.0, sigma=sigma_over_t, sep=sep_over_t
    )
    rows = fig1_sweep(grid, base)
    _write_csv(
        out,
        ["OmegaT", "negativity_over_lambda2", "half_delta_over_lambda2"],
        [[r.OmegaT, r.negativity_over_lambda2, r.half_delta_over_lambda2]
         for r in rows],
    )
    return 0


def cmd_fig3(args: argparse.Namespace, config: dict[str, str]) -> int:
    get = _resolve(args, config)
    lams = get("lam", DEFAULT_LAMS, _floats)
    out_dir = get("out_dir", ".", str)
    t_min = get("t_min", 0.05, float)
    t_max = get("t_max", 4.0, float)
    points = get("points", 80, int)
    sigma_over_l = get("sigma_over_l", 0.05, float)
    jobs = get("jobs", 1, int)
    grid = _linspace(t_min, t_max, points)
    header = (
        ["T_over_L"]
        + [f"ev{i}_full" for i in (1, 2, 3, 4)]
        + [f"ev{i}_unitary" for i in (1, 2, 3, 4)]
    )
    for lam in lams:
        rows = fig3_sweep(lam, grid, sigma_over_l=sigma_over_l, jobs=jobs)
        _write_csv(
            f"{out_dir}/fig3_{_lam_tag(lam)}.csv",
            header,
            [[r.T_over_L, *r.ev_full, *r.ev_unitary] for r in rows],
        )
    return 0


def cmd_fig4(args: argparse.Namespace, config: dict[str, str]) -> int:
    get = _resolve(args, config)
    lams = get("lam", DEFAULT_LAMS, _floats)
    out = get("out", "fig4.csv", str)
    t_min = get("t_min", 0.1, float)
    t_max = get("t_max", 8.0, float)
    points = get("points", 80, int)
    sigma_over_l = get("sigma_over_l", 0.01, float)
    jobs = get("jobs", 1, int)
    grid = _linspace(t_min, t_max, points)
    rows = fig4_sweep(tuple(lams), grid, sigma_over_l=sigma_over_l, jobs=jobs)
    header = (
        ["T_over_L"]
        + [f"hs_sq_{_lam_tag(l)}" for l in lams]
        + [f"hs_limit_{_lam_tag(l)}" for l in lams]
    )
    _write_csv(
        out, header, [[r.T_over_L, *r.hs_sq, *r.hs_limit] for r in rows]
    )
    return 0


def cmd_newint(args: argparse.Namespace, config: dict[str, str]) -> int:
    chk: IdentityCheck = check_integral_identity(args.gamma, args.sigma, args.ell)
    _emit({
        "gamma": args.gamma,
        "sigma": args.sigma,
        "ell": args.ell,
        "quadrature": chk.lhs.value.real,
        "closed": chk.rhs.real,
        "rel_err": chk.rel_err,
    })
    return 0


# ---------------------------------------------------------------------------
# wiring


def _add_common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--config", default=None, help="flat INI-style options file")
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--jobs", type=int, default=None)


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="smearprop",
        description="closed-form smeared two-point values, checks, sweeps",
    )
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("eval", help="one closed-form evaluation")
    _add_common(p)
    p.add_argument("--kind", required=True, choices=KINDS)
    for flag in ("--T", "--T-1", "--T-2", "--sigma", "--sigma-1", "--sigma-2",
                 "--Omega", "--Omega-1", "--Omega-2", "--t0", "--sep"):
        p.add_argument(flag, type=float, default=None)
    p.add_argument("--with-oracle", action="store_true")
    p.set_defaults(fn=cmd_eval)

    p = sub.add_parser("verify", help="run the verification suites")
    _add_common(p)
    p.add_argument("--only", action="append", default=None,
                   help=f"restrict to one of: {', '.join(CHECK_NAMES)}")
    p.add_argument("--inject-fault", action="store_true",
                   help="loosen the oracle truncation to exercise the fail path")
    p.add_argument("--gamma", type=float, default=None)
    p.add_argument("--sigma", type=float, default=None)
    p.add_argument("--ell", type=float, default=None)
    p.set_defaults(fn=cmd_verify)

    p = sub.add_parser("fig1", help="gap sweep of negativity and signalling")
    _add_common(p)
    p.add_argument("--out", default=None)
    p.add_argument("--points", type=int, default=None)
    p.add_argument("--omega-t-max", type=float, default=None)
    p.add_argument("--sep-over-t", type=float, default=None)
    p.add_argument("--sigma-over-t", type=float, default=None)
    p.set_defaults(fn=cmd_fig1)

    p = sub.add_parser("fig3", help="partial-transpose spectra vs duration")
    _add_common(p)
    p.add_argument("--lam", type=float, action="append", default=None)
    p.add_argument("--out-dir", default=None)
    p.add_argument("--t-min", type=float, default=None)
    p.add_argument("--t-max", type=float, default=None)
    p.add_argument("--points", type=int, default=None)
    p.add_argument("--sigma-over-l", type=float, default=None)
    p.set_defaults(fn=cmd_fig3)

    p = sub.add_parser("fig4", help="evolution-distance sweep vs duration")
    _add_common(p)
    p.add_argument("--lam", type=float, action="append", default=None)
    p.add_argument("--out", default=None)
    p.add_argument("--t-min", type=float, default=None)
    p.add_argument("--t-max", type=float, default=None)
    p.add_argument("--points", type=int, default=None)
    p.add_argument("--sigma-over-l", type=float, default=None)
    p.set_defaults(fn=cmd_fig4)

    p = sub.add_parser("newint", help="one radial-integral identity check")
    _add_common(p)
    p.add_argument("--gamma", type=float, required=True)
    p.add_argument("--sigma", type=float, required=True)
    p.add_argument("--ell", type=float, required=True)
    p.set_defaults(fn=cmd_newint)

    return ap


def main(argv: list[str] | None = None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        config = _load_config(args.config)
        return args.fn(args, config)
    except OracleConvergenceError as exc:
        print(f"oracle did not converge: {exc}", file=sys.stderr)
        return 3
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
