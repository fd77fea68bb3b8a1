"""Command-line front end: ``podles COMMAND [options]``.

Every command prints one JSON document on stdout (or a short text summary with
``--output text``).  Exit status: 0 success, 2 parse or usage error, 3 math
domain error, 4 failed verification.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from dataclasses import asdict, dataclass
from fractions import Fraction

import mpmath

from .errors import NotInSubalgebra, ParseError, PodlesError, VerificationFailed
from .hochschild import closed_form_cocycle, residue_cocycle
from .hopf import functional_value, left_act, pair, right_act
from .ncalg import AlgebraElement, AlgebraId, counit, embed_sphere, recognize_in_sphere
from .parser import parse
from .scalars import ScalarContext, to_mp
from .spectral import TruncatedSpace, diagonal_op, represent
from .zeta import residue_aK, residue_LK, tau, zeta_direct, zeta_LK

try:
    import tomllib
except ModuleNotFoundError:  # Python < 3.11
    import tomli as tomllib

@dataclass
class RunConfig:
    q: float = 0.5
    precision: int = 50
    l_max: Fraction = Fraction(81, 2)
    j_max: int = 200
    tol: float = 1e-8
    output: str = "json"

    def __post_init__(self):
        self.q = float(self.q)
        self.precision = int(self.precision)
        self.l_max = Fraction(str(self.l_max))
        self.j_max = int(self.j_max)
        self.tol = float(self.tol)
        if not 0 < self.q < 1:
            raise ValueError(f"q must lie in (0, 1), got {self.q}")
        if (2 * self.l_max).denominator != 1 or (2 * self.l_max) % 2 != 1 or self.l_max < Fraction(5, 2):
            raise ValueError(f"l_max must be a half-odd-integer >= 5/2, got {self.l_max}")
        if self.j_max < 1:
            raise ValueError("j_max must be positive")
        if self.output not in ("json", "text"):
            raise ValueError("output must be json or text")

    def context(self):
        return ScalarContext(q=mpmath.mpf(repr(self.q)), precision=self.precision, tol=self.tol)

    def echo(self):
        d = asdict(self)
        d.pop("output")
        d["l_max"] = float(self.l_max)
        return d


_CONFIG_KEYS = ("q", "precision", "l_max", "j_max", "tol", "output")


def load_config(args) -> RunConfig:
    """Defaults, then the TOML file (``--config`` or ``$PODLES_CONFIG``), then flags."""
    values = {}
    path = getattr(args, "config", None) or os.environ.get("PODLES_CONFIG")
    if path:
        with open(path, "rb") as fh:
            data = tomllib.load(fh)
        data = data.get("podles", data)
        unknown = set(data) - set(_CONFIG_KEYS)
        if unknown:
            raise ValueError(f"unknown config keys: {', '.join(sorted(unknown))}")
        values.update(data)
    for key in _CONFIG_KEYS:
        v = getattr(args, key, None)
        if v is not None:
            values[key] = v
    return RunConfig(**values)


# ---------------------------------------------------------------------------
# serialization


def scalar_json(x):
    x = to_mp(x)
    return {"re": float(mpmath.re(x)), "im": float(mpmath.im(x)), "digits": mpmath.nstr(x, 30)}


def element_json(x: AlgebraElement):
    return {"algebra": x.algebra.value, "expr": str(x), "terms": len(x.terms)}


def _parse_z(text):
    try:
        parts = [p.strip() for p in text.split(",")]
        if len(parts) == 1:
            return mpmath.mpf(parts[0])
        if len(parts) == 2:
            return mpmath.mpc(mpmath.mpf(parts[0]), mpmath.mpf(parts[1]))
    except (ValueError, TypeError):
        pass
    raise ParseError(f"cannot read z = {text!r}; expected RE or RE,IM", 1, 1)


def _sphere(src, ctx):
    alg, x = parse(src, ctx)
    if alg is not AlgebraId.SPHERE:
        raise ParseError(f"expected a sphere element, got {alg.value}", 1, 1)
    return x


def _quantum_group(src, ctx):
    alg, x = parse(src, ctx)
    if alg is AlgebraId.SPHERE:
        return embed_sphere(x)
    if alg is not AlgebraId.SUQ2:
        raise ParseError(f"expected a sphere or SU_q(2) element, got {alg.value}", 1, 1)
    return x


def _uq(src, ctx):
    alg, x = parse(src, ctx)
    if alg is not AlgebraId.UQ:
        if all(m == (0, 0, 0) for m in x.terms):
            return x.__class__(AlgebraId.UQ, dict(x.terms), ctx)
        raise ParseError(f"expected a U_q element, got {alg.value}", 1, 1)
    return x


# ---------------------------------------------------------------------------
# commands


def cmd_nf(args, cfg, ctx):
    _, x = parse(args.expr, ctx)
    return {"value": element_json(x)}


def cmd_counit(args, cfg, ctx):
    _, x = parse(args.expr, ctx)
    return {"value": scalar_json(counit(x))}


def cmd_act(args, cfg, ctx):
    f = _uq(args.f, ctx)
    x = _quantum_group(args.x, ctx)
    y = left_act(f, x) if args.side == "left" else right_act(x, f)
    out = {"value": element_json(y)}
    try:
        out["sphere"] = element_json(recognize_in_sphere(y))
    except NotInSubalgebra:
        pass
    return out


def cmd_pair(args, cfg, ctx):
    f = _uq(args.f, ctx)
    alg, x = parse(args.x, ctx)
    if alg is AlgebraId.SPHERE:
        v = functional_value(f, x)
    else:
        v = pair(f, _quantum_group(args.x, ctx))
    return {"value": scalar_json(v)}


def cmd_zeta(args, cfg, ctx):
    a = _sphere(args.T, ctx)
    mu = to_mp(args.mu)
    z = _parse_z(args.z)
    space = TruncatedSpace(cfg.l_max, ctx)
    q = ctx.q
    weight = diagonal_op(space, lambda l2, k2, p: q ** (2 * mu * k2 / 2))
    T = represent(a, space) * weight
    parity = 1 if args.parity in ("+", "1", "+1") else -1
    res = zeta_direct(T, parity, z, space, abscissa=2 * abs(mu))
    return {"value": scalar_json(res.value), "error_estimate": float(res.abs_error), "window": float(res.window)}


def cmd_zeta_closed(args, cfg, ctx):
    z = _parse_z(args.z)
    res = zeta_LK(args.beta, args.delta, z, cfg.j_max, ctx)
    return {"value": scalar_json(res.value), "error_estimate": float(res.abs_error), "window": res.window}


def cmd_residue(args, cfg, ctx):
    if args.a is not None:
        if args.mu is None:
            raise ParseError("residue --a needs --mu", 1, 1)
        return {"value": scalar_json(residue_aK(_sphere(args.a, ctx), args.mu))}
    if args.beta is None or args.delta is None:
        raise ParseError("residue needs --a and --mu, or --beta and --delta", 1, 1)
    pole = residue_LK(args.beta, args.delta, ctx)
    return {"value": scalar_json(pole.residue), "pole": {"location": float(pole.location), "order": pole.order}}


def cmd_tau(args, cfg, ctx):
    return {"value": scalar_json(tau(args.mu, _sphere(args.a, ctx)))}


def cmd_cocycle(args, cfg, ctx):
    a0, a1, a2 = (_sphere(s, ctx) for s in (args.a0, args.a1, args.a2))
    if args.method == "residue":
        return {"value": scalar_json(residue_cocycle(a0, a1, a2))}
    if args.method == "closed":
        return {"value": scalar_json(closed_form_cocycle(a0, a1, a2))}
    r = residue_cocycle(a0, a1, a2)
    c = closed_form_cocycle(a0, a1, a2)
    diff = abs(r - c)
    out = {
        "value": {"residue": scalar_json(r), "closed": scalar_json(c), "difference": float(diff)},
        "error_estimate": float(diff),
    }
    if diff >= cfg.tol:
        print(f"podles: residue and closed form differ by {mpmath.nstr(diff, 5)}", file=sys.stderr)
        out["exit_status"] = VerificationFailed.exit_status
    return out


def cmd_verify(args, cfg, ctx):
    from .verify import SUITES, VerifyConfig, run_all, run_suite

    vcfg = VerifyConfig(ctx=ctx, l_max=cfg.l_max, j_max=cfg.j_max)
    if args.suite == "all":
        results = run_all(vcfg)
    elif args.suite in SUITES:
        results = [run_suite(args.suite, vcfg)]
    else:
        raise ParseError(f"unknown suite {args.suite!r}; choose from all, {', '.join(SUITES)}", 1, 1)
    report = [r.to_dict() for r in results]
    if args.report:
        with open(args.report, "w", encoding="utf-8") as fh:
            json.dump(report, fh, indent=2)
    for r in results:
        print(r.line(), file=sys.stderr)
    out = {"report": report, "passed": sum(r.passed for r in results), "failed": sum(not r.passed for r in results)}
    if out["failed"]:
        out["exit_status"] = VerificationFailed.exit_status
    return out


HANDLERS = {
    "nf": cmd_nf,
    "counit": cmd_counit,
    "act": cmd_act,
    "pair": cmd_pair,
    "zeta": cmd_zeta,
    "zeta-closed": cmd_zeta_closed,
    "residue": cmd_residue,
    "tau": cmd_tau,
    "cocycle": cmd_cocycle,
    "verify": cmd_verify,
}


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    g = common.add_argument_group("configuration")
    g.add_argument("--config", help="TOML file with q, precision, l_max, j_max, tol, output")
    g.add_argument("--q", type=float)
    g.add_argument("--precision", type=int)
    g.add_argument("--l-max", dest="l_max", type=Fraction)
    g.add_argument("--j-max", dest="j_max", type=int)
    g.add_argument("--tol", type=float)
    g.add_argument("--output", choices=("json", "text"))

    p = argparse.ArgumentParser(prog="podles", description="Podleś sphere spectral triple toolkit")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("nf", parents=[common], help="normal form of an expression")
    s.add_argument("expr")
    s = sub.add_parser("counit", parents=[common], help="counit of an expression")
    s.add_argument("expr")
    s = sub.add_parser("act", parents=[common], help="left or right action of U_q")
    s.add_argument("--side", choices=("left", "right"), default="left")
    s.add_argument("--f", required=True)
    s.add_argument("--x", required=True)
    s = sub.add_parser("pair", parents=[common], help="pairing <f, x>")
    s.add_argument("--f", required=True)
    s.add_argument("--x", required=True)
    s = sub.add_parser("zeta", parents=[common], help="direct truncated zeta of T K^(2 mu)")
    s.add_argument("--T", required=True)
    s.add_argument("--mu", type=float, default=0.0)
    s.add_argument("--z", required=True, help="RE or RE,IM")
    s.add_argument("--parity", default="+", choices=("+", "-"))
    s = sub.add_parser("zeta-closed", parents=[common], help="closed-form zeta of L^beta K^delta")
    s.add_argument("--beta", type=float, required=True)
    s.add_argument("--delta", type=float, required=True)
    s.add_argument("--z", required=True, help="RE or RE,IM")
    s = sub.add_parser("residue", parents=[common], help="residues from the table or of L^beta K^delta")
    s.add_argument("--a")
    s.add_argument("--mu", type=float)
    s.add_argument("--beta", type=float)
    s.add_argument("--delta", type=float)
    s = sub.add_parser("tau", parents=[common], help="twisted trace tau_mu(a)")
    s.add_argument("--mu", type=float, required=True)
    s.add_argument("--a", required=True)
    s = sub.add_parser("cocycle", parents=[common], help="evaluate the residue cocycle")
    s.add_argument("--a0", required=True)
    s.add_argument("--a1", required=True)
    s.add_argument("--a2", required=True)
    s.add_argument("--method", choices=("residue", "closed", "both"), default="residue")
    s = sub.add_parser("verify", parents=[common], help="run invariant suites")
    s.add_argument("--suite", default="all")
    s.add_argument("--report", help="write the suite results to this JSON file")
    return p


def _emit(doc, cfg_output):
    if cfg_output == "text":
        if "error" in doc:
            print(f"error [{doc['error']['code']}]: {doc['error']['message']}")
            return
        val = doc.get("value", doc.get("report"))
        if isinstance(val, dict) and "digits" in val:
            print(val["digits"])
        elif isinstance(val, dict) and "expr" in val:
            print(val["expr"])
        else:
            print(json.dumps(val, indent=2))
        return
    print(json.dumps(doc))


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = load_config(args)
    except (ValueError, OSError, tomllib.TOMLDecodeError) as exc:
        print(f"podles: configuration error: {exc}", file=sys.stderr)
        return 2
    ctx = cfg.context()
    doc = {"command": args.command, "config": cfg.echo()}
    t0 = time.perf_counter()
    status = 0
    try:
        out = HANDLERS[args.command](args, cfg, ctx)
        status = out.pop("exit_status", 0)
        doc.update(out)
    except PodlesError as exc:
        status = exc.exit_status
        doc["error"] = {"code": exc.code, "message": str(exc)}
        print(f"podles: {exc}", file=sys.stderr)
    except ZeroDivisionError as exc:
        status = 3
        doc["error"] = {"code": "math-domain", "message": str(exc)}
        print(f"podles: {exc}", file=sys.stderr)
    doc.setdefault("error_estimate", None)
    doc.setdefault("window", float(cfg.l_max) if args.command == "zeta" else None)
    doc["duration_ms"] = round((time.perf_counter() - t0) * 1000, 3)
    _emit(doc, cfg.output)
    return status


if __name__ == "__main__":
    sys.exit(main())
