"""Command-line front end: figure CSVs, state dumps, property suites.

Verbs: ring-check, commutator, evolve, asymptotic, verify.  A JSON config
file supplies defaults (field parameters, lattice, rho table); explicit
flags override config keys.  Exit codes: 0 pass, 1 criterion/property
failure, 2 usage or config error.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys

from . import verification
from .commutators import (commutator_omega_omegadagger, commutator_pi_pidagger,
                          figure_data, lattice_delta_profile,
                          weighted_commutators)
from .errors import HyperfieldError
from .modes import FieldParams
from .observables import GeometrySpec
from .operators import CommutationTable, VacuumRules
from .ring import Bicomplex
from .states import (asymptotic_state_finite, asymptotic_state_infinite,
                     evolve_vacuum, norm_preservation, schmidt_rank)

DEFAULT_CONFIG = {
    "m": 1.0,
    "gamma": 0.5,
    "dim": 1,
    "geometry": {"kind": "infinite_line", "L1": -1.0, "L2": 1.0},
    "rho": [[1.0, 0.0, 0.0, 0.0], [0.0, 0.0, 0.0, 0.0],
            [0.0, 0.0, 0.0, 0.0], [0.0, 0.0, 0.0, 0.0]],
    "sigma": [[0.0, 0.0, 0.0, 0.0]] * 4,
    "delta_k": 0.1,
    "N": 16,
    "stagger": True,
    "truncation_order": 3,
    "output_dir": ".",
    "seed": 0,
}


class ConfigError(Exception):
    pass


def load_config(path: str | None) -> dict:
    cfg = json.loads(json.dumps(DEFAULT_CONFIG))  # deep copy
    if path:
        try:
            with open(path, "r", encoding="utf-8") as fh:
                user = json.load(fh)
        except (OSError, json.JSONDecodeError) as exc:
            raise ConfigError(f"cannot read config {path}: {exc}") from exc
        for key, value in user.items():
            if key not in DEFAULT_CONFIG:
                raise ConfigError(f"unknown config key {key!r}")
            cfg[key] = value
    for key in ("m", "gamma", "delta_k"):
        if not math.isfinite(cfg[key]):
            raise ConfigError(f"config {key} must be finite")
    return cfg


def _params(cfg: dict) -> FieldParams:
    return FieldParams(m=cfg["m"], gamma=cfg["gamma"], dim=cfg["dim"])


def _table(cfg: dict) -> CommutationTable:
    rho = tuple(Bicomplex(*row) for row in cfg["rho"])
    sigma = tuple(Bicomplex(*row) for row in cfg["sigma"])
    return CommutationTable(rho=rho, sigma=sigma, delta_k=cfg["delta_k"],
                            N=cfg["N"], stagger=cfg["stagger"])


def _geometry(cfg: dict) -> GeometrySpec:
    g = cfg["geometry"]
    return GeometrySpec(g["kind"], g.get("L1", 0.0), g.get("L2", 0.0))


def _warn_lattice_span(cfg: dict) -> None:
    span = 2.0 * cfg["N"] * cfg["delta_k"]
    need = 5.0 * max(cfg["m"], cfg["gamma"])
    if span < need:
        print(f"warning: lattice span 2 N delta_k = {span:.3g} below "
              f"recommended {need:.3g}", file=sys.stderr)


def _write_csv(path: str, rows) -> None:
    try:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write("x,re,im\n")
            for x, re, im in rows:
                fh.write(f"{x:.12g},{re:.12g},{im:.12g}\n")
    except OSError as exc:
        raise ConfigError(f"cannot write {path}: {exc}") from exc


def _write_json(path: str, payload) -> None:
    try:
        with open(path, "w", encoding="utf-8") as fh:
            json.dump(payload, fh, indent=2, sort_keys=True)
            fh.write("\n")
    except OSError as exc:
        raise ConfigError(f"cannot write {path}: {exc}") from exc


# -- verbs -------------------------------------------------------------------

def cmd_ring_check(args) -> int:
    mul_fn = None
    if args.selftest_defect:
        # deliberately broken product (unit table with j^2 = -1) to
        # demonstrate the failure path
        def mul_fn(a, b):
            good = a * b
            return Bicomplex(good.x - 2 * a.u * b.u, good.y, good.u, good.v)
    rep = verification.ring_property_suite(
        n_checks=args.checks, seed=args.seed,
        **({"mul_fn": mul_fn} if mul_fn else {}))
    print(f"ring-check: {rep['checks']} checks in {rep['seconds']:.2f}s")
    if rep["failures"]:
        print("failing properties: " + ", ".join(rep["failures"]))
        return 1
    print("all properties hold")
    return 0


_WHICH_MAP = {
    "omega-omega": ("omega_omega", False),
    "pi-pi": ("pi_pi", False),
    "omega-pi": ("omega_pi", False),
    "w-omega-omega": ("omega_omega", True),
    "w-pi-pi": ("pi_pi", True),
    "w-omega-pi": ("omega_pi", True),
}


def cmd_commutator(args, cfg: dict) -> int:
    params = _params(cfg)
    table = _table(cfg)
    _warn_lattice_span(cfg)
    if args.steps < 1:
        raise ConfigError("empty sweep: --steps must be >= 1")
    which, weighted = _WHICH_MAP[args.which]
    xs = [args.x_min + (args.x_max - args.x_min) * i / max(args.steps - 1, 1)
          for i in range(args.steps)]
    rows = []
    if not weighted and which == "omega_pi":
        rows = figure_data("fig1", (args.x_min, args.x_max, args.steps),
                           params, table)
    elif weighted and which in ("omega_omega", "pi_pi"):
        fig = "fig6" if which == "omega_omega" else "fig7"
        rows = figure_data(fig, (args.x_min, args.x_max, args.steps),
                           params, table)
    else:
        # delta-type kernels: emit coefficient times the lattice delta profile
        if not weighted and which == "omega_omega":
            coeff = commutator_omega_omegadagger(table).coefficient
            for dx in xs:
                prof = lattice_delta_profile(dx, table)
                val = (coeff * Bicomplex.from_complex(prof)).plus()
                rows.append((dx, val.real, val.imag))
        elif not weighted and which == "pi_pi":
            res = commutator_pi_pidagger(table, params)
            for dx in xs:
                prof = table.delta_k * sum(
                    (-table.momentum(i) ** 2 - params.m2_mod)
                    * complex(math.cos(table.momentum(i) * dx),
                              math.sin(table.momentum(i) * dx))
                    for i in table.momentum_indices())
                val = (res.delta2_coeff * Bicomplex.from_complex(prof)).plus()
                rows.append((dx, val.real, val.imag))
        else:  # weighted omega-pi
            coeff = weighted_commutators("omega_pi", 1.0, params, table).coefficient
            for dx in xs:
                prof = lattice_delta_profile(dx, table)
                val = (coeff * Bicomplex.from_complex(prof)).plus()
                rows.append((dx, val.real, val.imag))
    out = args.output or os.path.join(cfg["output_dir"],
                                      f"commutator_{args.which}.csv")
    _write_csv(out, rows)
    print(f"wrote {len(rows)} rows to {out}")
    return 0


def cmd_evolve(args, cfg: dict) -> int:
    params = _params(cfg)
    table = _table(cfg)
    _warn_lattice_span(cfg)
    geom = _geometry(cfg)
    if args.geometry:
        if args.geometry == "finite":
            geom = GeometrySpec("finite_interval",
                                args.L1 if args.L1 is not None else -1.0,
                                args.L2 if args.L2 is not None else 1.0)
        else:
            geom = GeometrySpec("infinite_line")
    order = args.order if args.order is not None else cfg["truncation_order"]
    rules = VacuumRules.constrained_rules()
    state = evolve_vacuum(args.t, order, params, geom, table, rules)
    out = args.output or os.path.join(cfg["output_dir"], "evolved_state.json")
    _write_json(out, state.to_jsonable())
    dev = norm_preservation(args.t, order, params, geom, table, rules)
    part = {table.momentum_indices()[0]}
    rank = schmidt_rank(state, part)
    print(f"t={args.t} order={order} kets={len(state.amplitudes)} "
          f"norm_deviation={dev:.3e} schmidt_rank={rank}")
    if geom.kind == "infinite_line" and params.gamma > 0:
        diag = asymptotic_state_infinite([max(args.t, 1.0)], params, table)[0]
        print(f"warning: infinite geometry with gamma > 0 diverges at large t "
              f"(growth rate {diag['predicted_growth_rate']:.3g})",
              file=sys.stderr)
    print(f"wrote state to {out}")
    return 0


def cmd_asymptotic(args, cfg: dict) -> int:
    params = _params(cfg)
    table = _table(cfg)
    _warn_lattice_span(cfg)
    order = args.order if args.order is not None else cfg["truncation_order"]
    if args.geometry == "finite":
        L1 = args.L1 if args.L1 is not None else cfg["geometry"].get("L1", -1.0)
        L2 = args.L2 if args.L2 is not None else cfg["geometry"].get("L2", 1.0)
        state = asymptotic_state_finite(order, params, L1, L2, table)
        out = args.output or os.path.join(cfg["output_dir"],
                                          "asymptotic_state.json")
        _write_json(out, state.to_jsonable())
        part = {table.momentum_indices()[0]}
        print(f"finite [{L1}, {L2}] order={order} kets={len(state.amplitudes)} "
              f"schmidt_rank={schmidt_rank(state, part)}")
        print(f"wrote state to {out}")
        return 0
    ts = [float(v) for v in args.t_values.split(",")] if args.t_values \
        else [0.0, 1.0, 10.0, 100.0]
    diags = asymptotic_state_infinite(ts, params, table)
    out = args.output or os.path.join(cfg["output_dir"],
                                      "asymptotic_diagnostics.json")
    _write_json(out, diags)
    for d in diags:
        tag = "cyclostationary" if d["is_cyclostationary"] else (
            "divergent" if d["divergent"] else "stationary")
        print(f"t={d['t']:g}: {tag}, growth rate {d['modulus_growth_rate']:.4g}")
    print(f"wrote diagnostics to {out}")
    return 0


def cmd_verify(args, cfg: dict) -> int:
    table = _table(cfg) if args.config else None
    reports = verification.run_all(table)
    for r in reports:
        mark = "PASS" if r["passed"] else "FAIL"
        print(f"[{mark}] criterion {r['id']:>2} {r['name']} "
              f"(tolerance: {r['tolerance']}) -- {r['detail']}")
    out = args.output or os.path.join(cfg["output_dir"], "verify_report.json")
    _write_json(out, reports)
    print(f"wrote report to {out}")
    if all(r["passed"] for r in reports):
        print("all criteria pass")
        return 0
    print("criteria failed: "
          + ", ".join(str(r["id"]) for r in reports if not r["passed"]))
    return 1


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="hyperfield",
        description="bicomplex dissipative field toolkit")
    ap.add_argument("--config", help="JSON config file")
    sub = ap.add_subparsers(dest="verb", required=True)

    rc = sub.add_parser("ring-check", help="run the ring property suite")
    rc.add_argument("--checks", type=int, default=10_000)
    rc.add_argument("--seed", type=int, default=7)
    rc.add_argument("--selftest-defect", action="store_true",
                    help=argparse.SUPPRESS)

    cm = sub.add_parser("commutator", help="sweep a field commutator to CSV")
    cm.add_argument("--which", required=True, choices=sorted(_WHICH_MAP))
    cm.add_argument("--m", type=float)
    cm.add_argument("--gamma", type=float)
    cm.add_argument("--x-min", type=float, default=0.1)
    cm.add_argument("--x-max", type=float, default=10.0)
    cm.add_argument("--steps", type=int, default=100)
    cm.add_argument("--output")

    ev = sub.add_parser("evolve", help="evolve the vacuum and dump the state")
    ev.add_argument("--t", type=float, required=True)
    ev.add_argument("--order", type=int)
    ev.add_argument("--geometry", choices=("finite", "infinite"))
    ev.add_argument("--L1", type=float)
    ev.add_argument("--L2", type=float)
    ev.add_argument("--output")

    asy = sub.add_parser("asymptotic", help="asymptotic state or diagnostics")
    asy.add_argument("--geometry", required=True, choices=("finite", "infinite"))
    asy.add_argument("--order", type=int)
    asy.add_argument("--L1", type=float)
    asy.add_argument("--L2", type=float)
    asy.add_argument("--t-values", help="comma-separated times (infinite)")
    asy.add_argument("--output")

    vf = sub.add_parser("verify", help="run the acceptance criteria")
    vf.add_argument("--output")
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        cfg = load_config(args.config)
        for key in ("m", "gamma"):
            override = getattr(args, key, None)
            if override is not None:
                cfg[key] = override
        if args.verb == "ring-check":
            return cmd_ring_check(args)
        if args.verb == "commutator":
            return cmd_commutator(args, cfg)
        if args.verb == "evolve":
            return cmd_evolve(args, cfg)
        if args.verb == "asymptotic":
            return cmd_asymptotic(args, cfg)
        if args.verb == "verify":
            return cmd_verify(args, cfg)
        raise ConfigError(f"unknown verb {args.verb}")
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except HyperfieldError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
