"""Command-line entry point: verification suites and ad-hoc evaluators.

Exit codes: 0 all checks pass, 1 a check failed or a computation error,
2 usage error.  Machine output is JSON on stdout with stable field order;
human-readable summaries go to stderr.  GERBEKIT_THREADS caps the number
of suites run concurrently under `verify --suite all`.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple

from . import serialize
from .covers import two_subordinations
from .fiberint import pushforward, pushforward_commutes_defect
from .holonomy import holonomy, holonomy_phase
from .lattice import builtin, enumerate_by_norm
from .modform import (AutomorphyFamily, GroupElement, ModuliPoint, act,
                      character, factor, _eta_with_terms, _theta1_with_terms,
                      _theta_with_terms)
from .suites import SUITES

DEFAULT_TRIALS = {"cochain": 50, "holonomy": 20, "pushforward": 20,
                  "chernsimons": 20, "lattice": 1, "modular": 20,
                  "crossmodule": 10}


@dataclass
class SuiteReport:
    suite: str
    trials: int
    seed: int
    tol: float
    checks: List[Dict] = field(default_factory=list)
    wall_time_s: float = 0.0

    @property
    def all_pass(self) -> bool:
        return all(c["pass"] for c in self.checks)

    def to_json(self) -> Dict:
        # wall time is excluded so reports are byte-identical per (seed, flags)
        return {"suite": self.suite, "trials": self.trials, "seed": self.seed,
                "tol": self.tol, "checks": self.checks,
                "all_pass": self.all_pass}


def run_suite(name: str, trials: int, seed: int, tol: float) -> SuiteReport:
    if name not in SUITES:
        raise ValueError(f"unknown suite: {name}")
    t0 = time.time()
    raw = SUITES[name](trials, seed, tol)
    checks = [{"name": n, "max_defect": float(d), "pass": bool(float(d) <= tol)}
              for n, d in raw]
    return SuiteReport(name, trials, seed, tol, checks, time.time() - t0)


# ---------------------------------------------------------------------------
# flag parsing helpers


def parse_complex(s: str) -> complex:
    re, im = s.split(",")
    return complex(float(re), float(im))


def parse_z(s: str, rank: int) -> Tuple[complex, ...]:
    """'zeros', or a file holding a JSON list of [re, im] pairs."""
    if s == "zeros":
        return (0j,) * rank
    with open(s) as fh:
        pairs = json.load(fh)
    z = tuple(complex(float(p[0]), float(p[1])) for p in pairs)
    if len(z) != rank:
        raise ValueError(f"z file has {len(z)} coordinates, expected {rank}")
    return z


def parse_element(s: str) -> GroupElement:
    data = json.loads(s)
    return _element_from_obj(data)


def _element_from_obj(data) -> GroupElement:
    if isinstance(data, list):
        return GroupElement.word([_element_from_obj(e) for e in data])
    if "S" in data:
        return GroupElement.S(*data["S"])
    if "T" in data:
        return GroupElement.T(data["T"][0], data["T"][1])
    if "W" in data:
        return GroupElement.W(data["W"])
    raise ValueError("element must contain S, T, or W")


def parse_point(s: str) -> ModuliPoint:
    data = json.loads(s)
    tau = complex(data["tau"][0], data["tau"][1])
    z = tuple(complex(p[0], p[1]) for p in data["z"])
    return ModuliPoint(tau, z)


def emit(obj: Dict) -> None:
    print(json.dumps(obj, indent=1))


# ---------------------------------------------------------------------------
# subcommands


def cmd_verify(args) -> int:
    names = list(SUITES) if args.suite == "all" else [args.suite]
    threads = max(int(os.environ.get("GERBEKIT_THREADS", "1")), 1)

    def one(name: str) -> SuiteReport:
        trials = args.trials if args.trials else DEFAULT_TRIALS[name]
        return run_suite(name, trials, args.seed, args.tol)

    if threads > 1 and len(names) > 1:
        with ThreadPoolExecutor(max_workers=threads) as ex:
            reports = list(ex.map(one, names))
    else:
        reports = [one(n) for n in names]
    payload = [r.to_json() for r in reports]
    emit(payload[0] if len(payload) == 1 else {"suites": payload})
    ok = True
    for r in reports:
        for c in r.checks:
            mark = "pass" if c["pass"] else "FAIL"
            print(f"[{mark}] {r.suite}/{c['name']}: "
                  f"max_defect={c['max_defect']:.3e}", file=sys.stderr)
        print(f"suite {r.suite}: {'PASS' if r.all_pass else 'FAIL'} "
              f"({r.wall_time_s:.1f}s)", file=sys.stderr)
        ok = ok and r.all_pass
    if args.report:
        with open(args.report, "w") as fh:
            json.dump(payload[0] if len(payload) == 1
                      else {"suites": payload}, fh, indent=1)
    return 0 if ok else 1


def cmd_theta(args) -> int:
    L = builtin(args.lattice)
    tau = parse_complex(args.tau)
    z = parse_z(args.z, L.rank)
    val, terms = _theta_with_terms(L, tau, z, args.tol)
    emit({"value_re": val.real, "value_im": val.imag,
          "tol_used": args.tol, "terms_summed": terms})
    return 0


def cmd_character(args) -> int:
    L = builtin(args.lattice)
    tau = parse_complex(args.tau)
    z = parse_z(args.z, L.rank)
    val = character(L, tau, z, args.tol)
    _, terms = _theta_with_terms(L, tau, z, args.tol)
    _, eterms = _eta_with_terms(tau, args.tol)
    emit({"value_re": val.real, "value_im": val.imag,
          "tol_used": args.tol, "terms_summed": terms + eterms})
    return 0


def cmd_factor(args) -> int:
    L = builtin(args.lattice) if args.lattice else None
    fam = AutomorphyFamily(args.family, L)
    g = parse_element(args.element)
    x = parse_point(args.point)
    val = factor(fam, g, x)
    emit({"value_re": val.real, "value_im": val.imag,
          "tol_used": args.tol, "terms_summed": 0})
    return 0


def cmd_act(args) -> int:
    g = parse_element(args.element)
    x = parse_point(args.point)
    y = act(g, x)
    emit({"tau": [y.tau.real, y.tau.imag],
          "z": [[c.real, c.imag] for c in y.z]})
    return 0


def cmd_holonomy(args) -> int:
    omega = serialize.load_cochain(args.cochain)
    dec = serialize.decomposition_from_id(args.decomposition)
    rho, _ = two_subordinations(dec, omega.cover)
    val = holonomy(omega, dec, rho)
    ph = holonomy_phase(omega, dec, rho)
    cells = sum(len(v) for v in dec.faces.values())
    emit({"value": val, "phase_re": ph.real, "phase_im": ph.imag,
          "cells_used": cells})
    return 0


def cmd_pushforward(args) -> int:
    omega = serialize.load_cochain(args.cochain)
    dec = serialize.decomposition_from_id(args.decomposition)
    if not hasattr(omega.cover, "factor_covers"):
        raise ValueError("push-forward needs a cochain over a product cover")
    _, e_cover = omega.cover.factor_covers
    rho, _ = two_subordinations(dec, e_cover)
    out = pushforward(omega, dec, rho)
    defect = pushforward_commutes_defect(omega, dec, rho)
    base_id = args.output_cover_id
    if args.output:
        serialize.save_cochain(args.output, out, base_id)
    emit({"output": args.output, "degree": out.degree,
          "stokes_defect": defect})
    return 0


def cmd_lattice(args) -> int:
    L = builtin(args.name)
    shells = enumerate_by_norm(L, args.enumerate_norm)
    emit({"name": L.name, "rank": L.rank,
          "counts": {str(k): len(v) for k, v in shells.items()}})
    return 0


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="gerbekit")
    sub = p.add_subparsers(dest="command", required=True)

    v = sub.add_parser("verify", help="run a verification suite")
    v.add_argument("--suite", required=True,
                   choices=sorted(SUITES) + ["all"])
    v.add_argument("--trials", type=int, default=0,
                   help="0 = per-suite default")
    v.add_argument("--seed", type=int, default=0)
    v.add_argument("--tol", type=float, default=1e-8)
    v.add_argument("--report", default=None, metavar="FILE")
    v.set_defaults(func=cmd_verify)

    t = sub.add_parser("theta", help="evaluate a lattice theta series")
    t.add_argument("--lattice", required=True)
    t.add_argument("--tau", required=True, metavar="RE,IM")
    t.add_argument("--z", default="zeros")
    t.add_argument("--tol", type=float, default=1e-12)
    t.set_defaults(func=cmd_theta)

    c = sub.add_parser("character", help="evaluate the rank-16 character")
    c.add_argument("--lattice", required=True)
    c.add_argument("--tau", required=True, metavar="RE,IM")
    c.add_argument("--z", default="zeros")
    c.add_argument("--tol", type=float, default=1e-12)
    c.set_defaults(func=cmd_character)

    f = sub.add_parser("factor", help="evaluate an automorphy factor")
    f.add_argument("--family", required=True)
    f.add_argument("--lattice", default=None)
    f.add_argument("--element", required=True, metavar="JSON")
    f.add_argument("--point", required=True, metavar="JSON")
    f.add_argument("--tol", type=float, default=1e-12)
    f.set_defaults(func=cmd_factor)

    a = sub.add_parser("act", help="apply a group element to a point")
    a.add_argument("--element", required=True, metavar="JSON")
    a.add_argument("--point", required=True, metavar="JSON")
    a.set_defaults(func=cmd_act)

    h = sub.add_parser("holonomy", help="holonomy of a cochain file")
    h.add_argument("--cochain", required=True, metavar="FILE")
    h.add_argument("--decomposition", required=True, metavar="ID")
    h.set_defaults(func=cmd_holonomy)

    pf = sub.add_parser("pushforward", help="fiber-integrate a cochain file")
    pf.add_argument("--cochain", required=True, metavar="FILE")
    pf.add_argument("--decomposition", required=True, metavar="ID")
    pf.add_argument("--output", default=None, metavar="FILE")
    pf.add_argument("--output-cover-id", default="", metavar="ID")
    pf.set_defaults(func=cmd_pushforward)

    la = sub.add_parser("lattice", help="enumerate lattice shells")
    la.add_argument("--name", required=True)
    la.add_argument("--enumerate-norm", type=int, default=4)
    la.set_defaults(func=cmd_lattice)
    return p


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ValueError, OSError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
