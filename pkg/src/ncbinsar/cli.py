"""Command-line front end: ``ncbinsar <subcommand> ...``.

Exit codes: 0 success, 1 runtime error (bad file, failed check, ...),
2 usage error.
"""

from __future__ import annotations

import argparse
import math
import sys
from pathlib import Path

import numpy as np

from . import __version__
from .baseline import cb_interferogram
from .errors import NcbError, RatioError
from .experiments import TABLE1_HEADER, reproduce_table1
from .io import read_json, read_raster, write_csv, write_json, write_pgm, write_raster
from .metrics import coef_error_map, error_curves, interferogram_spectrum, rmse, spectral_support_area
from .operator import lowpass_degrade
from .raster import ResolutionRatio
from .simulator import SceneConfig, default_patches, simulate_scene
from .solver import SolverConfig, nil1m
from .transforms import SparseTransform
from .verify import VerifyConfig, run_verify

SPECTRUM_RANGE_DB = 60.0
FULL_SIZE = 1024


def _fraction(text: str) -> str:
    try:
        ResolutionRatio.parse(text, "1")
    except (RatioError, ValueError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(f"invalid ratio {text!r}: {exc}") from exc
    return text


def _ratio(args) -> ResolutionRatio:
    return ResolutionRatio.parse(args.alpha, args.beta)


def _add_ratio(p):
    p.add_argument("--alpha", type=_fraction, required=True, help="range ratio, e.g. 1/16")
    p.add_argument("--beta", type=_fraction, required=True, help="azimuth ratio, e.g. 1")


def _sidecar(path) -> Path:
    return Path(str(path) + ".json")


# -- subcommands ---------------------------------------------------------------

def cmd_simulate(args) -> int:
    raw = read_json(args.config)
    if raw.get("outlier_patches") == "default":
        raw["outlier_patches"] = default_patches(raw.get("rows", 256), raw.get("cols", 256))
    cfg = SceneConfig.from_dict(raw)
    bundle = simulate_scene(cfg)
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    files = {
        "z_m": bundle.z_m,
        "z_s": bundle.z_s,
        "theta": bundle.theta_m,
        "phi_topo": bundle.phi_topo,
        "phi_noise": bundle.phi_noise,
        "amplitude": bundle.amplitude,
    }
    for name, arr in files.items():
        write_raster(out / f"{name}.ncbr", arr)
    write_pgm(out / "phi_topo.pgm", np.angle(np.exp(1j * bundle.phi_topo)), -math.pi, math.pi)
    write_json(out / "manifest.json", {
        "command": "simulate",
        "version": __version__,
        "scene": cfg.to_dict(),
        "seed": cfg.seed,
        "files": sorted([f"{n}.ncbr" for n in files] + ["phi_topo.pgm"]),
    })
    return 0


def cmd_degrade(args) -> int:
    scene = Path(args.scene)
    ratio = _ratio(args)
    z_s = read_raster(scene / "z_s.ncbr")
    y_s = lowpass_degrade(z_s, ratio)
    write_raster(args.out, y_s)
    seed = None
    if (scene / "manifest.json").exists():
        seed = read_json(scene / "manifest.json").get("seed")
    write_json(_sidecar(args.out), {
        "command": "degrade",
        "version": __version__,
        "scene": str(scene),
        "seed": seed,
        "alpha": args.alpha,
        "beta": args.beta,
        "shape": list(y_s.shape),
    })
    return 0


def cmd_recover(args) -> int:
    ratio = _ratio(args)
    y_s = read_raster(args.slave)
    theta = read_raster(args.theta)
    cfg = SolverConfig(lam=args.lam, gamma=args.gamma, n_iter=args.iters, transform=SparseTransform(args.basis))
    res = nil1m(y_s, theta, ratio, cfg)
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    write_raster(out / "u_hat.ncbr", res.u_hat)
    write_raster(out / "interferogram.ncbr", res.interferogram)
    write_raster(out / "phi_hat.ncbr", res.topo_phase)
    write_pgm(out / "phi_hat.pgm", res.topo_phase, -math.pi, math.pi)
    side = _sidecar(args.slave)
    provenance = read_json(side) if side.exists() else {}
    write_json(out / "manifest.json", {
        "command": "recover",
        "version": __version__,
        "slave": str(args.slave),
        "theta": str(args.theta),
        "alpha": args.alpha,
        "beta": args.beta,
        "alpha_beta": ratio.product,
        "basis": args.basis,
        "lambda_arg": args.lam,
        "gamma": args.gamma,
        "lambda_used": res.lambda_used,
        "iterations": res.iterations_run,
        "final_objective": res.final_objective,
        "seed": provenance.get("seed"),
        "scene": provenance.get("scene"),
        "files": ["interferogram.ncbr", "phi_hat.ncbr", "phi_hat.pgm", "u_hat.ncbr"],
    })
    return 0


def cmd_baseline(args) -> int:
    ratio = _ratio(args)
    res = cb_interferogram(read_raster(args.master), read_raster(args.slave), ratio)
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    write_raster(out / "interferogram.ncbr", res.interferogram)
    write_raster(out / "phi_hat.ncbr", res.topo_phase)
    write_pgm(out / "phi_hat.pgm", res.topo_phase, -math.pi, math.pi)
    side = _sidecar(args.slave)
    write_json(out / "manifest.json", {
        "command": "baseline",
        "version": __version__,
        "master": str(args.master),
        "slave": str(args.slave),
        "alpha": args.alpha,
        "beta": args.beta,
        "seed": read_json(side).get("seed") if side.exists() else None,
        "files": ["interferogram.ncbr", "phi_hat.ncbr", "phi_hat.pgm"],
    })
    return 0


def cmd_metrics(args) -> int:
    truth = read_raster(args.truth)
    est = read_raster(args.est)
    result = {"rmse": rmse(truth, est)}
    if args.curves:
        curves = error_curves(coef_error_map(truth, est, SparseTransform(args.basis)))
        write_csv(args.curves, ("xi", "e_low_db", "e_high_db"), curves.rows())
        result["curves"] = str(args.curves)
    if args.json:
        write_json(args.json, result)
    print(f"rmse {result['rmse']:.6f}")
    return 0


def cmd_spectra(args) -> int:
    spec = interferogram_spectrum(read_raster(args.master), read_raster(args.ifg), weight_by_master=not args.raw)
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    write_raster(out / "spectrum.ncbr", spec)
    peak = float(spec.max())
    with np.errstate(divide="ignore"):
        db = 20.0 * np.log10(spec / peak) if peak > 0 else np.full(spec.shape, -np.inf)
    write_pgm(out / "spectrum.pgm", np.nan_to_num(db, neginf=-SPECTRUM_RANGE_DB - 1), -SPECTRUM_RANGE_DB, 0.0)
    area = spectral_support_area(spec, -20.0)
    write_json(out / "manifest.json", {
        "command": "spectra",
        "version": __version__,
        "master": str(args.master),
        "ifg": str(args.ifg),
        "weighted_by_master": not args.raw,
        "support_area_-20db": area,
        "files": ["spectrum.ncbr", "spectrum.pgm"],
    })
    print(f"support_area_-20db {area}")
    return 0


def cmd_verify(args) -> int:
    cfg = VerifyConfig.from_dict(read_json(args.config)) if args.config else VerifyConfig()
    report = run_verify(cfg)
    write_json(args.report, {"version": __version__, "config": cfg.__dict__, "checks": report})
    failed = [c["check"] for c in report if not c["pass"]]
    for c in report:
        print(f"{'PASS' if c['pass'] else 'FAIL'} {c['check']}")
    return 1 if failed else 0


def cmd_reproduce(args) -> int:
    size = FULL_SIZE if args.full_size else args.size
    rows = reproduce_table1(size=size, seed=args.seed, n_iter=args.iters, basis=args.basis)
    write_csv(args.out, TABLE1_HEADER, rows)
    for r in rows:
        print("{:<11} {:<8} {:<4} {:.4f} {:.4f}".format(*r))
    return 0


# -- parser --------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="ncbinsar", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("simulate", help="simulate a master/slave scene")
    p.add_argument("--config", required=True, help="scene JSON")
    p.add_argument("--out", required=True, help="output directory")
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("degrade", help="low-pass the slave of a simulated scene")
    p.add_argument("--scene", required=True, help="directory written by simulate")
    _add_ratio(p)
    p.add_argument("--out", required=True, help="output .ncbr")
    p.set_defaults(func=cmd_degrade)

    p = sub.add_parser("recover", help="NCB recovery with NIL1M")
    p.add_argument("--slave", required=True)
    p.add_argument("--theta", required=True)
    _add_ratio(p)
    p.add_argument("--basis", choices=("dct", "db4"), default="dct")
    reg = p.add_mutually_exclusive_group(required=True)
    reg.add_argument("--lambda", dest="lam", type=float)
    reg.add_argument("--gamma", type=float)
    p.add_argument("--iters", type=int, default=200)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_recover)

    p = sub.add_parser("baseline", help="common-band interferogram")
    p.add_argument("--master", required=True)
    p.add_argument("--slave", required=True)
    _add_ratio(p)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_baseline)

    p = sub.add_parser("metrics", help="phase RMSE and coefficient-error curves")
    p.add_argument("--truth", required=True)
    p.add_argument("--est", required=True)
    p.add_argument("--basis", choices=("dct", "db4", "identity"), default="dct")
    p.add_argument("--curves", help="CSV for E_low / E_high curves")
    p.add_argument("--json", help="write the result as JSON")
    p.set_defaults(func=cmd_metrics)

    p = sub.add_parser("spectra", help="interferogram magnitude spectrum")
    p.add_argument("--master", required=True)
    p.add_argument("--ifg", required=True)
    p.add_argument("--raw", action="store_true", help="do not weight the interferogram by |z_m|")
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_spectra)

    p = sub.add_parser("verify", help="numerical checks of the operator theory")
    p.add_argument("--config", help="verify JSON (defaults used when omitted)")
    p.add_argument("--report", required=True)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("reproduce-table1", help="RMSE grid for both methods, scenes and ratios")
    size = p.add_mutually_exclusive_group()
    size.add_argument("--size", type=int, default=256)
    size.add_argument("--full-size", action="store_true", help=f"run at {FULL_SIZE}x{FULL_SIZE}")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--iters", type=int, default=200)
    p.add_argument("--basis", choices=("dct", "db4"), default="dct")
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_reproduce)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except (NcbError, OSError, ValueError, TypeError) as exc:
        print(f"ncbinsar {args.command}: error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
