"""Command-line front end: table/curve reproduction, verification, compilation.

Exit codes: 0 success, 1 verification failure, 2 usage or config error.
CSV output uses '.' decimals, newline-terminated rows and a stable column
order, so identical inputs give byte-identical output.
"""
from __future__ import annotations

import argparse
import math
import sys

import numpy as np

from . import broadband, metrics, sequences
from .engine import IDEAL, SimulationSettings, propagator_of
from .pulseprog import parse_program, serialize_program
from .spinsys import SpinSystem, ideal_chain, target_trilinear, swap13_target, spin_operator
from .linalg import expm_generator

USAGE_ERROR = 2


def _fmt(x: float) -> str:
    return f"{x:.10g}"


def _parse_range(text: str):
    """kappa range 'start:stop[:step]' -> list of grid values."""
    parts = text.split(":")
    try:
        if len(parts) == 2:
            start, stop = float(parts[0]), float(parts[1])
            step = 0.1
        elif len(parts) == 3:
            start, stop = float(parts[0]), float(parts[1])
            step = float(parts[2])
        else:
            raise ValueError
    except ValueError:
        raise SystemExit(USAGE_ERROR)
    if step <= 0:
        raise SystemExit(USAGE_ERROR)
    if stop < start:
        return []  # empty range: commands emit a header-only CSV
    n = int(round((stop - start) / step))
    return [round(start + i * step, 12) for i in range(n + 1) if start + i * step <= stop + 1e-12]


def _load_config(path: str | None) -> dict:
    """Flat key=value config; defaults reproduce the acetamide system."""
    cfg = {
        "j12": 88.8, "j23": 87.3, "j13": 2.9,
        "nu1": 0.0, "nu2": 0.0, "nu3": 358.0,
        "rf_proton": 35700.0, "rf_hetero": 5500.0,
        "rf_fwhm": 0.10, "rf_grid": 11,
    }
    if path is None:
        return cfg
    try:
        with open(path) as fh:
            for lineno, raw in enumerate(fh, start=1):
                line = raw.split("#", 1)[0].strip()
                if not line:
                    continue
                if "=" not in line:
                    print(f"config line {lineno}: expected key=value", file=sys.stderr)
                    raise SystemExit(USAGE_ERROR)
                key, _, value = line.partition("=")
                key = key.strip()
                if key not in cfg:
                    print(f"config line {lineno}: unknown key {key!r}", file=sys.stderr)
                    raise SystemExit(USAGE_ERROR)
                cfg[key] = type(cfg[key])(value.strip())
    except OSError as exc:
        print(f"cannot read config: {exc}", file=sys.stderr)
        raise SystemExit(USAGE_ERROR)
    return cfg


def cmd_table1(args) -> int:
    j = args.J
    if j <= 0:
        print("J must be positive", file=sys.stderr)
        return USAGE_ERROR
    header = "variant,tau1_s,s1,tau_swap13_s"
    rows = []
    for v in sequences.VARIANTS:
        tau, s = sequences.duration_scaling(v, 1.0)
        rows.append((v, tau / j, s, 3.0 * tau / j))
    print(f"Pulse sequence durations and scaling factors at kappa = 1, J = {_fmt(j)} Hz")
    print(f"{'':>10}" + "".join(f"{v:>12}" for v, *_ in rows))
    print(f"{'tau(1)':>10}" + "".join(f"{1e3 * r[1]:>10.3f}ms" for r in rows))
    print(f"{'s(1)':>10}" + "".join(f"{r[2]:>12.3f}" for r in rows))
    print(f"{'SWAP(1,3)':>10}" + "".join(f"{1e3 * r[3]:>10.1f}ms" for r in rows))
    book = sequences.swap_duration_bookkeeping(j)
    print(f"direct SWAP {1e3 * book['direct']:.1f}ms, conventional SWAP(1,3) "
          f"{1e3 * book['conventional13']:.1f}ms, optimal "
          f"{1e3 * book['optimal13']:.1f}ms "
          f"({100 * book['optimal13'] / book['conventional13']:.1f}%)")
    print()
    print(header)
    for v, tau, s, tsw in rows:
        print(f"{v},{_fmt(tau)},{_fmt(s)},{_fmt(tsw)}")
    return 0


def cmd_curves(args) -> int:
    kappas = [k for k in _parse_range(args.kappa) if 0.0 < k <= 1.0]
    print("kappa,tau_A,tau_B,tau_C,tau_D,s_A,s_B,s_C,s_D,rA,rC,rD")
    for row in metrics.fig2_tables(kappas):
        cells = [row["kappa"],
                 row["tau_A"], row["tau_B"], row["tau_C"], row["tau_D"],
                 row["s_A"], row["s_B"], row["s_C"], row["s_D"],
                 row["r_A"], row["r_C"], row["r_D"]]
        print(",".join(_fmt(c) for c in cells))
    return 0


def cmd_eta_sweep(args) -> int:
    if args.variant not in sequences.VARIANTS:
        print(f"unknown variant {args.variant!r}", file=sys.stderr)
        return USAGE_ERROR
    if args.mode not in ("ideal", "realistic"):
        print(f"unknown mode {args.mode!r}", file=sys.stderr)
        return USAGE_ERROR
    cfg = _load_config(args.config)
    sys_ = SpinSystem(cfg["j12"], cfg["j23"], cfg["j13"],
                      cfg["nu1"], cfg["nu2"], cfg["nu3"])
    settings = SimulationSettings.make(
        mode=args.mode,
        rf_amplitudes={"1H": cfg["rf_proton"], "15N": cfg["rf_hetero"]},
        rf_fwhm=cfg["rf_fwhm"] if args.mode == "realistic" else 0.0,
        rf_grid_points=int(cfg["rf_grid"]),
    )
    kappas = [k for k in _parse_range(args.kappa) if 0.0 <= k <= 2.0]
    print("variant,kappa,tau_s,eta13")
    if not kappas:
        return 0
    curve = metrics.eta_curve(args.variant, kappas, sys_, settings)
    for kappa, (tau, eta) in zip(kappas, curve):
        print(f"{args.variant},{_fmt(kappa)},{_fmt(tau)},{_fmt(eta)}")
    return 0


def _verify_identities(j: float):
    sys_ = ideal_chain(j)
    for v in sequences.VARIANTS:
        worst = 0.0
        for i in range(1, 21):
            kappa = round(0.1 * i, 10)
            u = propagator_of(sequences.build_uzzz(v, kappa, j), sys_)
            worst = max(worst, 1.0 - metrics.fidelity(u, target_trilinear("z", "z", "z", kappa)))
        yield f"sequence {v} identity (worst over kappa grid)", worst, 1e-9


def _verify_swap(j: float):
    uz = target_trilinear("z", "z", "z", 1.0)
    uy = target_trilinear("y", "z", "y", 1.0)
    ux = target_trilinear("x", "z", "x", 1.0)
    z2 = expm_generator(-math.pi / 2 * spin_operator(2, "z"), 1.0)
    prod = uz @ uy @ ux @ z2
    yield "trilinear product vs permutation", 1.0 - metrics.fidelity(prod, swap13_target()), 1e-10
    for a, b, name in ((uz, uy, "zzz/yzy"), (uz, ux, "zzz/xzx"), (uy, ux, "yzy/xzx")):
        yield f"commutator {name}", float(np.max(np.abs(a @ b - b @ a))), 1e-10
    sys_ = ideal_chain(j)
    for v in sequences.VARIANTS:
        u = propagator_of(sequences.build_swap13(v, 1.0, j), sys_)
        yield f"swap13 {v} fidelity", 1.0 - metrics.fidelity(u, swap13_target()), 1e-9


def _verify_broadband(j: float):
    sys_ = SpinSystem(j, j, 0.0, 200.0, -300.0, 500.0)
    target = target_trilinear("z", "z", "z", 1.0)
    for v in ("A", "C"):
        p = broadband.refocus_offsets(sequences.build_uzzz(v, 1.0, j))
        yield f"broadband {v} under offsets", 1.0 - metrics.fidelity(propagator_of(p, sys_), target), 1e-3
    pg = broadband.broadband_geodesic(1.0, j, n=64)
    yield "broadband geodesic n=64 under offsets", 1.0 - metrics.fidelity(propagator_of(pg, sys_), target), 1e-3
    chain = ideal_chain(j)
    errs = []
    for n in (8, 64):
        pd = broadband.dante_discretize(sequences.build_uzzz("D", 1.0, j), n)
        errs.append(1.0 - metrics.fidelity(propagator_of(pd, chain), target))
    yield "DANTE error(64) < error(8)", 0.0 if errs[1] < errs[0] else 1.0, 0.5


def _verify_limits(j: float):
    worst = 0.0
    for i in range(1, 201):
        kappa = i / 200.0
        tau_d, _ = sequences.duration_scaling("D", kappa)
        for v in ("A", "B", "C"):
            tau_v, _ = sequences.duration_scaling(v, kappa)
            worst = max(worst, tau_d - tau_v)
    yield "tau_D <= tau_A/B/C over 200 samples", max(worst, 0.0), 1e-12
    periodicity = 0.0
    for i in range(0, 65):
        kappa = i / 64.0
        base = sequences.theoretical_limit(kappa)
        for n in (1, 2):
            for k2 in (2 * n + kappa, 2 * n - kappa):
                other = sequences.theoretical_limit(k2)
                periodicity = max(periodicity, abs(base[0] - other[0]), abs(base[1] - other[1]))
    yield "periodicity tau*(2n +/- kappa)", periodicity, 0.0


_SUITES = {
    "identities": _verify_identities,
    "swap": _verify_swap,
    "broadband": _verify_broadband,
    "limits": _verify_limits,
}


def cmd_verify(args) -> int:
    if args.suite not in _SUITES:
        print(f"unknown suite {args.suite!r}; choose from {sorted(_SUITES)}", file=sys.stderr)
        return USAGE_ERROR
    failed = False
    for name, value, tol in _SUITES[args.suite](args.J):
        ok = value <= tol
        failed = failed or not ok
        print(f"{'PASS' if ok else 'FAIL'}  {name}: {value:.3e} (tol {tol:.0e})")
    return 1 if failed else 0


def cmd_compile(args) -> int:
    if args.variant not in sequences.VARIANTS:
        print(f"unknown variant {args.variant!r}", file=sys.stderr)
        return USAGE_ERROR
    if not 0.0 <= args.kappa <= 2.0:
        print(f"kappa out of range [0, 2]: {args.kappa}", file=sys.stderr)
        return USAGE_ERROR
    if args.broadband:
        if args.variant == "D":
            p = broadband.broadband_geodesic(args.kappa, args.J, n=args.n)
        else:
            p = broadband.refocus_offsets(sequences.build_uzzz(args.variant, args.kappa, args.J))
    else:
        p = sequences.build_uzzz(args.variant, args.kappa, args.J)
    text = serialize_program(p)
    if serialize_program(parse_program(text)) != text:
        print("internal error: serialization does not round-trip", file=sys.stderr)
        return 1
    try:
        with open(args.out, "w") as fh:
            fh.write(text)
    except OSError as exc:
        print(f"cannot write {args.out!r}: {exc}", file=sys.stderr)
        return USAGE_ERROR
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="trispin",
        description="Three-spin Ising chain pulse sequences: build, propagate, verify.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("table1", help="durations and scaling factors at kappa=1")
    p.add_argument("--J", type=float, required=True, help="coupling constant in Hz")
    p.set_defaults(func=cmd_table1)

    p = sub.add_parser("curves", help="duration/scaling-factor curves (CSV)")
    p.add_argument("--kappa", default="0.01:1.0:0.01", help="range start:stop[:step]")
    p.set_defaults(func=cmd_curves)

    p = sub.add_parser("eta-sweep", help="transfer-efficiency sweep (CSV)")
    p.add_argument("--variant", required=True)
    p.add_argument("--mode", default="ideal", help="ideal or realistic")
    p.add_argument("--kappa", default="0.1:2.0:0.1", help="range start:stop[:step]")
    p.add_argument("--config", default=None, help="key=value config file")
    p.set_defaults(func=cmd_eta_sweep)

    p = sub.add_parser("verify", help="run an oracle check suite")
    p.add_argument("suite", help="identities | swap | broadband | limits")
    p.add_argument("--J", type=float, default=88.0)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("compile", help="write a pulse program file")
    p.add_argument("--variant", required=True)
    p.add_argument("--kappa", type=float, required=True)
    p.add_argument("--J", type=float, default=88.0)
    p.add_argument("--broadband", action="store_true")
    p.add_argument("--n", type=int, default=None, help="DANTE segment count (multiple of 4)")
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_compile)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except SystemExit:
        raise
    except ValueError as exc:
        print(str(exc), file=sys.stderr)
        return USAGE_ERROR


if __name__ == "__main__":
    raise SystemExit(main())
