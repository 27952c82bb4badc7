"""Command line interface: ``cohom1 {angle,construct,classify,moduli,verify}``.

Exit codes: 0 success, 1 failed checks or internal error, 2 usage or input
errors.
"""
from __future__ import annotations

import argparse
import json
import sys
import warnings
from pathlib import Path

from . import __version__
from .algebra import AlgebraTag
from .angles import kahler_constancy, qk_constancy
from .catalog import moduli_table
from .classify import classify_normal_space, classify_subspace
from .families import FamilySpec, construct
from .io import SubspaceFileError, dumps, load_subspace, save_subspace
from .model import SolvableModel, complex_structure, quaternionic_structures
from .numerics import DEFAULT_SEED, Tolerance
from .stabilizers import cayley_modulus, grassmann_orbit_dim, normalizer_in, spin7_basis
from .verify import VerifyConfig, verify_suite

DEFAULT_TOL = 1e-8
DEFAULT_SAMPLES = 64

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def fmt_angle(x: float) -> str:
    """Four decimals with trailing zeros dropped: ``1.5708``, ``0``, ``0.5``."""
    s = f"{x:.4f}".rstrip("0").rstrip(".")
    return "0" if s in ("-0", "") else s


def _settings(args) -> dict:
    return {"seed": args.seed, "samples": args.samples, "tol": _tol(args)}


def _tol(args) -> float:
    return DEFAULT_TOL if args.tol is None else args.tol


def _tolerance(args) -> Tolerance:
    return Tolerance(defect_tol=_tol(args))


def _load(path):
    try:
        return load_subspace(path)
    except SubspaceFileError as exc:
        raise UsageError(str(exc)) from None


def _emit(args, payload: dict, text: str) -> None:
    if args.format == "json":
        sys.stdout.write(dumps(payload))
    else:
        print(text)


def angle_payload(model: SolvableModel, W, args) -> tuple[dict, str]:
    out = {"space": str(model), "dim": W.dim}
    out.update(_settings(args))
    tag = model.tag
    if tag is AlgebraTag.C:
        rep = kahler_constancy(W, complex_structure(model), _tolerance(args))
        out.update(kind="kahler", constant=rep.constant, phi=rep.phi, defect=rep.defect)
        text = f"phi = {fmt_angle(rep.phi)}, " + ("constant" if rep.constant else f"not constant (defect {rep.defect:.3e})")
    elif tag is AlgebraTag.H:
        if W.dim == 0:
            raise UsageError("quaternionic Kähler angles need a nonzero subspace")
        tri = qk_constancy(W, quaternionic_structures(model), args.samples, args.seed, _tolerance(args))
        constant = tri.constancy_defect <= _tol(args)
        out.update(kind="qk_triple", triple=list(tri.angles), constant=constant, defect=tri.constancy_defect)
        text = "(" + ", ".join(fmt_angle(a) for a in tri.angles) + ")"
        if not constant:
            text += f" not constant (defect {tri.constancy_defect:.3e})"
    elif tag is AlgebraTag.O:
        g = spin7_basis()
        orbit = grassmann_orbit_dim(g, W, _tolerance(args))
        stab = normalizer_in(g, W, _tolerance(args)).dim
        tau = cayley_modulus(W) if W.dim == 4 else None
        out.update(kind="cayley", modulus=tau, orbit_dim=orbit, stabilizer_dim=stab)
        text = f"Spin(7) orbit dim {orbit}, stabilizer dim {stab}"
        if tau is not None:
            text = f"cayley modulus {tau:.10g}; " + text
    else:
        out.update(kind="none")
        text = "no angle invariant in real hyperbolic space"
    return out, text


def cmd_angle(args) -> int:
    model, W = _load(args.subspace)
    payload, text = angle_payload(model, W, args)
    _emit(args, payload, text)
    return EXIT_OK


def cmd_construct(args) -> int:
    try:
        model = SolvableModel.parse(args.space)
        spec = FamilySpec(args.family, model, k=args.k, phi=args.phi)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    W = construct(spec)
    save_subspace(args.output, model, W, family=spec.to_dict())
    if args.format == "json":
        sys.stdout.write(dumps({"output": str(args.output), "family": spec.to_dict()}))
    else:
        print(f"wrote {args.output}: family {spec.label}, dim {W.dim}, space {model}")
    return EXIT_OK


def cmd_classify(args) -> int:
    model, S = _load(args.subspace)
    kw = dict(tol=_tolerance(args), samples=args.samples, seed=args.seed)
    rec = classify_subspace(model, S, **kw) if args.role == "v0" else classify_normal_space(model, S, **kw)
    payload = rec.to_dict()
    payload["settings"] = _settings(args)
    _emit(args, payload, rec.text())
    return EXIT_OK


def _moduli_text(table: dict) -> str:
    lines = [f"space {table['space']}", "foliations:"]
    lines += [f"  {f['label']}: {f['verdict']}" for f in table["foliations"]]
    lines.append("totally geodesic: " + (", ".join(table["totally_geodesic"]) or "none"))
    ntg = table["non_totally_geodesic"]
    lines.append(f"non totally geodesic: {ntg['summary']}" + ("" if ntg["complete"] else " (partial)"))
    for e in ntg["entries"]:
        lines.append(f"  family {e['family']}, codim {e['codim']}, parameter {e['parameter']}")
    if table["hypersurfaces"]:
        lines.append("hypersurfaces:")
        for h in table["hypersurfaces"]:
            extra = ", ".join(f"{k} {v}" for k, v in h.items() if k not in ("item", "kind"))
            lines.append(f"  {h['item']}. {h['kind']}" + (f" ({extra})" if extra else ""))
    return "\n".join(lines)


def cmd_moduli(args) -> int:
    try:
        model = SolvableModel.parse(args.space)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    table = moduli_table(model.tag, model.n)
    _emit(args, table, _moduli_text(table))
    return EXIT_OK


def _report_text(report: dict) -> str:
    lines = []
    for c in report["checks"]:
        margin = "n/a" if c["margin"] is None else f"{c['margin']:.3e}"
        lines.append(f"{c['id']} {c['status'].upper():5s} margin {margin}  {c['description']}  [{c['runtimeMs']} ms]")
        if c["status"] != "pass":
            lines.append(f"    {c['detail']}")
    verdict = "all checks passed" if report["passed"] else "some checks failed"
    tol = "pinned per check" if report["tolerance"] is None else report["tolerance"]
    lines.append(f"{verdict} (seed {report['seed']}, samples {report['samples']}, tolerance {tol})")
    return "\n".join(lines)


def cmd_verify(args) -> int:
    cfg = VerifyConfig(seed=args.seed, samples=args.samples, tol=args.tol, only=tuple(args.only or ()), jobs=args.jobs)
    if args.only:
        from .verify import select_checks

        if not select_checks(cfg.only):
            raise UsageError(f"--only {' '.join(args.only)} selects no checks")
    report = verify_suite(cfg)
    if args.report:
        Path(args.report).write_text(dumps(report))
    _emit(args, report, _report_text(report))
    return EXIT_OK if report["passed"] else EXIT_FAIL


def _positive_int(text: str) -> int:
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError(f"must be >= 1, got {v}")
    return v


def _positive_float(text: str) -> float:
    v = float(text)
    if not v > 0:
        raise argparse.ArgumentTypeError(f"must be > 0, got {v}")
    return v


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=DEFAULT_SEED, help="RNG seed (default 42)")
    common.add_argument("--samples", type=_positive_int, default=DEFAULT_SAMPLES, help="sample count (default 64)")
    common.add_argument("--tol", type=_positive_float, default=None, help="defect tolerance (default 1e-8)")
    common.add_argument("--format", choices=("json", "text"), default="text")

    p = argparse.ArgumentParser(prog="cohom1", description="Cohomogeneity one actions on rank one symmetric spaces.")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    a = sub.add_parser("angle", parents=[common], help="Kähler angle data of a subspace file")
    a.add_argument("--subspace", required=True, metavar="FILE")
    a.set_defaults(func=cmd_angle)

    c = sub.add_parser("construct", parents=[common], help="write a family subspace to a file")
    c.add_argument("--family", required=True, metavar="LABEL")
    c.add_argument("--k", type=int, default=1)
    c.add_argument("--phi", type=float, default=None)
    c.add_argument("--space", required=True, metavar="TAG:N")
    c.add_argument("-o", "--output", required=True, metavar="FILE")
    c.set_defaults(func=cmd_construct)

    k = sub.add_parser("classify", parents=[common], help="classify the action of a subspace file")
    k.add_argument("--subspace", required=True, metavar="FILE")
    k.add_argument("--as", dest="role", choices=("normal", "v0"), default="normal",
                   help="read the file as the normal space W = v0^perp (default) or as v0")
    k.set_defaults(func=cmd_classify)

    m = sub.add_parser("moduli", parents=[common], help="print the moduli catalog of a space")
    m.add_argument("--space", required=True, metavar="TAG:N")
    m.set_defaults(func=cmd_moduli)

    v = sub.add_parser("verify", parents=[common], help="run the verification suite")
    v.add_argument("--suite", choices=("paper",), default="paper")
    v.add_argument("--report", metavar="FILE", help="write the JSON report here")
    v.add_argument("--only", nargs="+", metavar="ID|TAG", help="check ids (A07) or tags (O, angles)")
    v.add_argument("--jobs", type=_positive_int, default=1)
    v.set_defaults(func=cmd_verify)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    warnings.simplefilter("always", UserWarning)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"cohom1 {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except Exception as exc:  # internal failure
        print(f"cohom1 {args.command}: internal error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
