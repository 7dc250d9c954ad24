"""Command-line front end.

Every command that writes files also writes ``manifest.json`` next to them,
holding the parameters and SHA-256 checksums of the outputs.

Exit codes: 2 domain error, 3 I/O error, 4 numerical instability.
"""
from __future__ import annotations

import argparse
import csv
import hashlib
import io
import json
import math
import sys
from pathlib import Path

import numpy as np

from . import __version__
from .errors import DomainError, InstabilityError
from .factorizer import enumerate_factorizations, kink_eval, kink_from
from .frame import (
    exact_alpha_closed_form,
    exact_kink,
    frame_residual,
    paper_alphas,
    sweep_curves,
)
from .ode_verify import classify, compare_to_kink, shoot_from_midpoint
from .pde_sim import GridConfig, measure_speed, run

EXIT_DOMAIN = 2
EXIT_IO = 3
EXIT_UNSTABLE = 4


def fmt(x) -> str:
    return f"{float(x):.17g}"


def csv_text(header, rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for row in rows:
        w.writerow([v if isinstance(v, str) else fmt(v) for v in row])
    return buf.getvalue()


def json_text(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True, ensure_ascii=False) + "\n"


def sha256(data: bytes) -> str:
    return hashlib.sha256(data).hexdigest()


def write_outputs(out_dir, command, params, files: dict[str, str]) -> Path:
    """Write text files plus a manifest; raises OSError on I/O failure."""
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    sums = {}
    for name, text in files.items():
        data = text.encode("utf-8")
        (out / name).write_bytes(data)
        sums[name] = sha256(data)
    manifest = {"command": command, "parameters": params, "version": __version__, "outputs": sums}
    (out / "manifest.json").write_bytes(json_text(manifest).encode("utf-8"))
    return out


def verify_manifest(out_dir) -> bool:
    out = Path(out_dir)
    manifest = json.loads((out / "manifest.json").read_text(encoding="utf-8"))
    return all(
        (out / name).is_file() and sha256((out / name).read_bytes()) == digest
        for name, digest in manifest["outputs"].items()
    )


def _parse_floats(text: str) -> list[float]:
    try:
        return [float(t) for t in text.split(",")]
    except ValueError:
        raise DomainError(f"cannot parse coefficient list {text!r}") from None


def _resolve_alpha(value: str, lambda0: float) -> float:
    if value == "auto":
        if not lambda0 > 0:
            raise DomainError("--alpha auto needs lambda0 > 0")
        return exact_alpha_closed_form(lambda0)
    return float(value)


def _exact_reference(alpha: float, lambda0: float, target: float = -1.0):
    """Exact-branch kink nearest to ``alpha`` (same direction of travel)."""
    if not lambda0 > 0:
        raise DomainError("no exact kink exists for lambda0 <= 0")
    ref = math.copysign(exact_alpha_closed_form(lambda0), alpha if alpha != 0 else 1.0)
    return ref, exact_kink(ref, lambda0, target=target)


def cmd_factor(args):
    coeffs = _parse_floats(args.g)
    if len(coeffs) != 4:
        raise DomainError("--g needs 4 coefficients, constant term first")
    entries = []
    for fa in enumerate_factorizations(coeffs):
        entry = {
            "a": fa.a, "r1": fa.r1, "r2": fa.r2, "c": fa.c, "beta": fa.beta,
            "phi1": list(fa.phi1.coeffs), "phi2": list(fa.phi2.coeffs),
        }
        if fa.r1 != 0.0:
            k = kink_from(fa, args.tau0)
            entry["kink"] = {
                "r_target": k.r_target, "kappa": k.kappa, "tau0": k.tau0,
                "formula": f"f(tau) = {fmt(k.r_target)} / (1 + exp({fmt(k.kappa)} * (tau - {fmt(k.tau0)})))",
            }
        else:
            entry["kink"] = None
        entries.append(entry)
    report = {"g": coeffs, "factorizations": entries}
    text = json_text(report)
    if args.out:
        write_outputs(args.out, "factor", {"g": coeffs, "tau0": args.tau0}, {"factor.json": text})
    sys.stdout.write(text)


def cmd_kink(args):
    alpha = _resolve_alpha(args.alpha, args.lambda0)
    k = exact_kink(alpha, args.lambda0, target=args.target, tau0=args.tau0)
    taus = np.linspace(args.tau_min, args.tau_max, args.n)
    f, fp, _ = kink_eval(k, taus)
    text = csv_text(["tau", "f", "fprime"], zip(taus, f, fp))
    params = {"lambda0": args.lambda0, "alpha": alpha, "target": args.target, "tau0": args.tau0,
              "tau_min": args.tau_min, "tau_max": args.tau_max, "n": args.n}
    write_outputs(args.out, "kink", params, {"kink.csv": text})
    sys.stdout.write(json_text({"r_target": k.r_target, "kappa": k.kappa, "tau0": k.tau0, "beta": k.beta}))


def cmd_curves(args):
    pts = sweep_curves(args.model, args.min, args.max, args.n)
    header = ["branch", "lambda0", "alpha", "residual"]

    def rows(branches):
        return [(p.branch.value, p.lambda0, p.alpha, p.residual) for p in pts if p.branch.value in branches]

    if args.model == "paper":
        files = {"fig1.csv": csv_text(header, rows({"alpha1", "alpha2"})),
                 "fig2.csv": csv_text(header, rows({"alpha3", "alpha4"}))}
    else:
        files = {"exact.csv": csv_text(header, rows({"exact_plus", "exact_minus"}))}
    params = {"model": args.model, "min": args.min, "max": args.max, "n": args.n}
    write_outputs(args.out, "curves", params, files)
    sys.stdout.write(json_text({"files": sorted(files), "points": len(pts)}))


def cmd_verify_ode(args):
    alpha = _resolve_alpha(args.alpha, args.lambda0)
    ref_alpha, k = _exact_reference(alpha, args.lambda0)
    taus = np.linspace(-20.0, 20.0, 401)
    max_res = float(np.max(np.abs(frame_residual(ref_alpha, args.lambda0, k, taus))))
    traj = shoot_from_midpoint(alpha, args.lambda0, k, (0.0, args.span), args.step)
    try:
        deviation = None if traj.diverged else compare_to_kink(traj, k)
    except DomainError:
        deviation = None
    report = {
        "alpha": alpha, "lambda0": args.lambda0, "alpha_exact": ref_alpha,
        "alpha_offset": alpha - ref_alpha, "max_residual": max_res,
        "kink_deviation": deviation, "classification": classify(traj),
        "span": args.span, "step": args.step,
    }
    text = json_text(report)
    if args.out:
        write_outputs(args.out, "verify-ode", {"alpha": alpha, "lambda0": args.lambda0, "span": args.span,
                                               "step": args.step}, {"verify_ode.json": text})
    sys.stdout.write(text)


def cmd_simulate(args):
    alpha = _resolve_alpha(args.alpha, args.lambda0)
    _, k = _exact_reference(alpha, args.lambda0)
    cfg = GridConfig(lambda0=args.lambda0, x_min=args.x_min, x_max=args.x_max, dx=args.dx, dt=args.dt,
                     t_max=args.t_max, output_every=args.output_every)
    res = run(cfg, k, alpha)
    fit = measure_speed(res.crossings)
    paper = paper_alphas(args.lambda0)
    report = {
        "speed": fit.speed, "intercept": fit.intercept, "rms": fit.rms_residual, "n_points": len(fit.crossings),
        "predicted_exact": math.copysign(exact_alpha_closed_form(args.lambda0), alpha),
        "predicted_paper": paper[0].alpha if alpha >= 0 else paper[3].alpha,
    }
    rows = ((t, xi, ui) for t, u in res.snapshots for xi, ui in zip(res.x, u))
    params = {"lambda0": args.lambda0, "alpha": alpha, "x_min": args.x_min, "x_max": args.x_max, "dx": args.dx,
              "dt": args.dt, "t_max": args.t_max, "output_every": args.output_every}
    text = json_text(report)
    write_outputs(args.out, "simulate", params,
                  {"snapshots.csv": csv_text(["t", "x", "u"], rows), "speed.json": text})
    sys.stdout.write(text)


def cmd_check(args):
    ok = verify_manifest(args.dir)
    sys.stdout.write("ok\n" if ok else "checksum mismatch\n")
    return 0 if ok else 1


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="kinkfactor", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=__version__)
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("factor", help="enumerate constant-beta factorizations of a cubic g")
    s.add_argument("--g", required=True, help="coefficients c0,c1,c2,c3 of g(f)")
    s.add_argument("--tau0", type=float, default=0.0)
    s.add_argument("--out")
    s.set_defaults(func=cmd_factor)

    s = sub.add_parser("kink", help="closed-form exact-branch kink as CSV")
    s.add_argument("--lambda0", type=float, required=True)
    s.add_argument("--alpha", default="auto")
    s.add_argument("--target", type=float, default=-1.0, choices=(-1.0, 1.0))
    s.add_argument("--tau0", type=float, default=0.0)
    s.add_argument("--tau-min", type=float, default=-20.0)
    s.add_argument("--tau-max", type=float, default=20.0)
    s.add_argument("--n", type=int, default=401)
    s.add_argument("--out", default="kinkfactor-out")
    s.set_defaults(func=cmd_kink)

    s = sub.add_parser("curves", help="admissible (lambda0, alpha) curves as CSV")
    s.add_argument("--model", choices=("paper", "exact"), default="paper")
    s.add_argument("--min", type=float, default=0.0)
    s.add_argument("--max", type=float, default=10.0)
    s.add_argument("--n", type=int, default=401)
    s.add_argument("--out", default="kinkfactor-out")
    s.set_defaults(func=cmd_curves)

    s = sub.add_parser("verify-ode", help="shoot the frame ODE from the kink midpoint")
    s.add_argument("--lambda0", type=float, required=True)
    s.add_argument("--alpha", default="auto")
    s.add_argument("--span", type=float, default=20.0)
    s.add_argument("--step", type=float, default=1e-3)
    s.add_argument("--out")
    s.set_defaults(func=cmd_verify_ode)

    s = sub.add_parser("simulate", help="run the PDE and fit the front speed")
    s.add_argument("--lambda0", type=float, required=True)
    s.add_argument("--alpha", default="auto")
    s.add_argument("--x-min", type=float, default=-40.0)
    s.add_argument("--x-max", type=float, default=80.0)
    s.add_argument("--dx", type=float, default=0.05)
    s.add_argument("--dt", type=float, default=0.02)
    s.add_argument("--t-max", type=float, default=30.0)
    s.add_argument("--output-every", type=int, default=25)
    s.add_argument("--out", default="kinkfactor-out")
    s.set_defaults(func=cmd_simulate)

    s = sub.add_parser("check", help="verify the checksums in an output directory's manifest")
    s.add_argument("dir")
    s.set_defaults(func=cmd_check)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args) or 0
    except InstabilityError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_UNSTABLE
    except DomainError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_DOMAIN
    except OSError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
