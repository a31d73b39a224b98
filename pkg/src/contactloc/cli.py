"""Command line front end.

Exit codes: 0 success, 1 verification failure, 2 config error,
3 mathematical precondition violation.
"""
from __future__ import annotations

import argparse
import json
import re
import sys
from dataclasses import dataclass, field
from fractions import Fraction
from typing import List, Optional

from . import dh, localization, residue
from .errors import DegenerateCriticalSet, MathPreconditionError
from .exact import ExactScalar
from .mc import McConfig, default_workers, mc_contact_volume, mc_dh_histogram
from .poly import Poly
from .sphere import (EquivariantClass, WeightedSphere, class_reduce, critical_circles,
                     regular_isotropy_order, zero_regularity_problem)
from .textform import ParseError, format_poly, parse_poly
from .verify import run_suite

EXIT_OK, EXIT_VERIFY, EXIT_CONFIG, EXIT_MATH = 0, 1, 2, 3
DEFAULT_SPHERE = {"n": 1, "w": ["3/2", "1"], "beta": [-1, 1]}


class ConfigError(ValueError):
    pass


@dataclass
class RunConfig:
    sphere: WeightedSphere
    eta: Poly
    epsilons: List[float] = field(default_factory=lambda: [0.2, 0.1, 0.05, 0.025])
    mc: McConfig = field(default_factory=McConfig)


def _num(x: float):
    return float(f"{x:.15g}")


def _cplx(z: complex):
    return [_num(complex(z).real), _num(complex(z).imag)]


def _scalar(c: ExactScalar) -> dict:
    return {"exact": str(c), "float": _cplx(complex(c)) if c.im != 0 else _num(float(c))} \
        if c.is_homogeneous() else {"exact": str(c), "float": _cplx(complex(c))}


def _split_list(text: str) -> list:
    return [t.strip() for t in text.split(",") if t.strip()]


def load_config(args) -> RunConfig:
    data = {}
    if args.config:
        try:
            with open(args.config) as fh:
                data = json.load(fh)
        except (OSError, json.JSONDecodeError) as exc:
            raise ConfigError(f"cannot read config {args.config}: {exc}") from None
        if not isinstance(data, dict):
            raise ConfigError("config must be a JSON object")
    sph = dict(data.get("sphere", DEFAULT_SPHERE if args.w is None else {}))
    if args.w is not None:
        sph["w"] = _split_list(args.w)
        sph.pop("n", None)
    if args.beta is not None:
        sph["beta"] = [int(b) for b in _split_list(args.beta)]
    if "beta" not in sph and "w" in sph:
        sph["beta"] = [0] * len(sph["w"])
    try:
        sphere = WeightedSphere.from_json(sph)
    except (ValueError, TypeError, ZeroDivisionError) as exc:
        raise ConfigError(f"invalid sphere: {exc}") from None
    eta_text = args.eta if args.eta is not None else str(data.get("eta", "1"))
    try:
        eta = EquivariantClass(sphere, parse_poly(eta_text)).rep
    except (ParseError, ValueError) as exc:
        raise ConfigError(f"invalid eta {eta_text!r}: {exc}") from None
    eps = data.get("epsilons", [0.2, 0.1, 0.05, 0.025])
    if args.eps is not None:
        eps = [float(e) for e in _split_list(args.eps)]
    if not eps or any(float(e) <= 0 for e in eps):
        raise ConfigError("epsilons must be positive")
    mcd = dict(data.get("mc", {}))
    for key in ("seed", "samples", "workers"):
        if getattr(args, key) is not None:
            mcd[key] = getattr(args, key)
    if args.bins is not None:
        mcd["histogram_bins"] = args.bins
    mcd.setdefault("workers", default_workers())
    if getattr(args, "quick", False):
        mcd["samples"] = 10_000
    try:
        mc = McConfig(**mcd)
    except (TypeError, ValueError) as exc:
        raise ConfigError(f"invalid mc settings: {exc}") from None
    return RunConfig(sphere, eta, [float(e) for e in eps], mc)


def _terms_json(terms) -> list:
    return [{"circle": t.circle_index, "exponent_lambda": str(t.exponent_lambda),
             "numerator": format_poly(t.amplitude.numerator),
             "denominator": format_poly(t.amplitude.denominator)} for t in terms]


def cmd_volume(cfg: RunConfig, args) -> dict:
    vol = localization.contact_volume(cfg.sphere)
    out = {"sphere": cfg.sphere.to_json(), "exact": str(vol), "float": _num(float(vol))}
    if args.mc:
        est = mc_contact_volume(cfg.sphere, cfg.mc)
        out["mc"] = {"estimate": _num(est.value), "stderr": _num(est.stderr),
                     "samples": est.samples, "seed": cfg.mc.seed}
    return out


def cmd_localize(cfg: RunConfig, args) -> dict:
    sphere = cfg.sphere
    pairing = localization.pair_alpha_eta(sphere, cfg.eta)
    circles = [{"index": c.index, "mu": str(c.mu_value), "euler_class": format_poly(c.euler_class),
                "restriction": f"s -> {format_poly(Poly.var('u') * c.restriction_slope)}",
                "alpha_integral": str(c.alpha_integral)} for c in critical_circles(sphere)]
    return {"sphere": sphere.to_json(), "eta": format_poly(cfg.eta),
            "eta_reduced": format_poly(class_reduce(EquivariantClass(sphere, cfg.eta)).rep),
            "pairing": format_poly(pairing), "circles": circles}


def cmd_pushforward(cfg: RunConfig, args) -> dict:
    terms = localization.pushforward(cfg.sphere, cfg.eta)
    return {"sphere": cfg.sphere.to_json(), "eta": format_poly(cfg.eta),
            "form": "sum_j exp(i*exponent_lambda*phi) * numerator / denominator",
            "terms": _terms_json(terms)}


def _require_regular(sphere: WeightedSphere):
    problem = zero_regularity_problem(sphere)
    if problem is not None:
        raise MathPreconditionError(f"0 is not a regular value of mu: {problem}")


def cmd_residue(cfg: RunConfig, args) -> dict:
    _require_regular(cfg.sphere)
    val = residue.quotient_pairing(cfg.sphere, cfg.eta)
    out = {"sphere": cfg.sphere.to_json(), "eta": format_poly(cfg.eta), **_scalar(val),
           "n0": regular_isotropy_order(cfg.sphere), "vol_G": str(residue.VOLUME_OF_G),
           "terms": _terms_json(localization.pushforward(cfg.sphere, cfg.eta))}
    return out


def cmd_dh_profile(cfg: RunConfig, args) -> dict:
    _require_regular(cfg.sphere)
    Q = dh.dh_distribution(cfg.sphere, cfg.eta)
    if args.csv:
        dh.write_profile_csv(Q, args.csv)
    out = {"sphere": cfg.sphere.to_json(), "eta": format_poly(cfg.eta),
           "normalization": "Q(y) = sqrt(2*pi) * P(y)",
           "breakpoints": [str(b) for b in Q.breakpoints],
           "pieces": [format_poly(p) for p in Q.pieces],
           "atoms": [{"location": str(k[0]), "order": k[1], "coefficient": str(c)}
                     for k, c in sorted(Q.atoms.items())]}
    if args.mc:
        h = mc_dh_histogram(cfg.sphere, cfg.mc)
        if args.histogram_csv:
            h.to_csv(args.histogram_csv)
        out["mc_total_mass"] = _num(h.total_mass)
    return out


def cmd_asymptotics(cfg: RunConfig, args) -> dict:
    _require_regular(cfg.sphere)
    rep = dh.asymptotic_report(cfg.sphere, cfg.eta, cfg.epsilons)
    if args.csv:
        dh.write_asymptotics_csv(rep, args.csv)
    return {"sphere": cfg.sphere.to_json(), "eta": format_poly(cfg.eta),
            "limit": str(rep.limit), "limit_float": _cplx(complex(rep.limit)),
            "local_polynomial": format_poly(rep.local_polynomial),
            "epsilons": rep.epsilons, "I": [_cplx(v) for v in rep.I_values],
            "residuals": [_num(r) for r in rep.residuals],
            "decay_exponent_estimate": _num(rep.decay_exponent_estimate),
            "r_squared": _num(rep.r_squared)}


COMMANDS = {"volume": cmd_volume, "localize": cmd_localize, "pushforward": cmd_pushforward,
            "residue": cmd_residue, "dh-profile": cmd_dh_profile, "asymptotics": cmd_asymptotics}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="JSON run config")
    common.add_argument("--w", help="Reeb weights, e.g. '3/2,1'")
    common.add_argument("--beta", help="action weights, e.g. '-1,1'")
    common.add_argument("--eta", help="class in u, s, e.g. 'u + 2*s'")
    common.add_argument("--eps", help="comma separated epsilon grid")
    common.add_argument("--seed", type=int)
    common.add_argument("--samples", type=int)
    common.add_argument("--workers", type=int, help="default: $CONTACTLOC_THREADS or 1")
    common.add_argument("--bins", type=int)
    common.add_argument("--output", "-o", help="write JSON here instead of stdout")

    parser = argparse.ArgumentParser(prog="contactloc", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    for name in ("volume", "localize", "pushforward", "residue", "dh-profile", "asymptotics"):
        p = sub.add_parser(name, parents=[common])
        if name in ("volume", "dh-profile"):
            p.add_argument("--mc", action="store_true", help="add a Monte Carlo estimate")
        if name in ("dh-profile", "asymptotics"):
            p.add_argument("--csv", help="CSV table output path")
        if name == "dh-profile":
            p.add_argument("--histogram-csv", help="CSV path for the MC histogram")
    v = sub.add_parser("verify", parents=[common])
    v.add_argument("--quick", action="store_true", help="1e4 MC samples, 5 sigma tolerances")
    v.add_argument("--perturb-euler", type=Fraction, default=Fraction(0),
                   help="negative control: perturb one Euler class")
    return parser


def _emit(obj, path: Optional[str]):
    text = json.dumps(obj, indent=2)
    if path:
        with open(path, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)


def main(argv=None) -> int:
    parser = build_parser()
    argv = list(sys.argv[1:] if argv is None else argv)
    # let '--beta -1,1' through: argparse would read '-1,1' as an option
    for i in range(len(argv) - 1):
        if argv[i] in ("--beta", "--w") and re.match(r"-\d", argv[i + 1]):
            argv[i + 1] = " " + argv[i + 1]
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_CONFIG if exc.code else EXIT_OK
    try:
        cfg = load_config(args)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    try:
        if args.command == "verify":
            checks = run_suite(cfg.sphere, cfg.eta, cfg.mc, quick=args.quick,
                               perturb_euler=args.perturb_euler, epsilons=cfg.epsilons)
            for c in checks:
                print(c.line(), file=sys.stderr)
            ok = all(c.passed for c in checks)
            _emit({"passed": ok, "checks": [c.__dict__ for c in checks]}, args.output)
            return EXIT_OK if ok else EXIT_VERIFY
        _emit(COMMANDS[args.command](cfg, args), args.output)
    except (MathPreconditionError, DegenerateCriticalSet) as exc:
        print(f"precondition violated: {exc}", file=sys.stderr)
        return EXIT_MATH
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
