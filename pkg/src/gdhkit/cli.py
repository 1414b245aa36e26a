"""Command-line front end.

Every subcommand prints one JSON report ``{"command", "inputs", "rows",
"checks"}``.  Rationals are written as ``"p/q"`` strings.  Exit status: 0 when
every check passes, 1 when a check fails, 2 for usage or data errors.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from fractions import Fraction

from . import __version__

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _q(x) -> str:
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def _jsonable(obj):
    if isinstance(obj, Fraction):
        return _q(obj)
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    return obj


def report(command, inputs, rows, checks) -> dict:
    return {"command": command, "inputs": inputs, "rows": rows,
            "checks": [{"assertion": a, "result": r} for a, r in checks]}


def _check(name, ok) -> tuple:
    return (name, "pass" if ok else "fail")


def _parse_rationals(text: str) -> list[Fraction]:
    try:
        return [Fraction(x.strip()) for x in text.replace(";", ",").split(",") if x.strip()]
    except (ValueError, ZeroDivisionError) as exc:
        raise UsageError(f"bad rational vector {text!r}") from exc


def _load_iso(path):
    from .leech import LatticeIsometry, LeechError
    try:
        with open(path) as f:
            return LatticeIsometry.from_json(json.load(f))
    except (OSError, json.JSONDecodeError, LeechError, KeyError) as exc:
        raise UsageError(f"cannot load isometry {path}: {exc}") from exc


# ----------------------------------------------------------------- commands

def cmd_enumerate(args) -> dict:
    from .affine import enumerate_eq1, level_lcm, order_lcm, ratio, total_dim
    rows = [{"dim": total_dim(s), "structure": str(s), "pretty": s.pretty(),
             "ratio": _q(ratio(s)), "n": order_lcm(s), "level_lcm": level_lcm(s)}
            for s in enumerate_eq1()]
    return report("enumerate", {}, rows, [_check("221 structures", len(rows) == 221)])


def cmd_coeffs(args) -> dict:
    from .dimform import eisenstein_coeffs
    c = eisenstein_coeffs(args.n)
    rows = [{"divisor": d, "value": _q(v)} for d, v in sorted(c.coeffs.items())]
    return report("coeffs", {"n": args.n}, rows, [_check("divisor relations", c.check())])


def cmd_bound(args) -> dict:
    from .dimform import dimension_bound
    from .kacauto import CycleShape
    shape = CycleShape.parse(args.shape)
    b = dimension_bound(shape, args.n)
    return report("bound", {"shape": str(shape), "n": args.n}, [{"bound": _q(b)}], [])


def cmd_vsf(args) -> dict:
    from .dimform import vsf_bound
    from .kacauto import (InnerAutomorphism, cycle_shape, eigenspace_dims, parse_kac,
                          very_strange_lhs, very_strange_rhs)
    comps = []
    for part in args.component:
        if ":" not in part:
            raise UsageError(f"component must look like TYPE:(s0,...,sl), got {part!r}")
        t, kac = part.split(":", 1)
        comps.append((t.strip(), parse_kac(kac)))
    a = InnerAutomorphism(comps)
    lhs, rhs = very_strange_lhs(a), very_strange_rhs(a)
    row = {"order": a.order, "lhs": _q(lhs), "rhs": _q(rhs),
           "shape": str(cycle_shape(eigenspace_dims(a), a.order))}
    checks = [_check("lhs = rhs", lhs == rhs)]
    if args.n:
        row["bound"] = _q(vsf_bound(a, args.n))
    return report("vsf", {"components": args.component, "n": args.n}, [row], checks)


def cmd_pairs(args) -> dict:
    from .classify import candidate_pairs, is_spurious, realised_keys
    realised = realised_keys()
    rows = []
    for p in candidate_pairs():
        rows.append({"structure": str(p.structure), "pretty": p.structure.pretty(),
                     "class": p.co0_class.name, "shape": str(p.co0_class.shape), "n": p.n,
                     "rho": _q(p.co0_class.vacuum_anomaly),
                     "spurious": is_spurious(p, realised)})
    spurious = sum(r["spurious"] for r in rows)
    return report("pairs", {}, rows, [_check("82 pairs", len(rows) == 82),
                                      _check("13 spurious", spurious == 13)])


def cmd_verify_leech(args) -> dict:
    from .leech import build_golay, leech_checks
    info = leech_checks(count_minimal=not args.quick)
    code = build_golay()
    dist = code.weight_distribution()
    checks = [_check("even", info["even"]), _check("determinant 1", info["det"] == 1),
              _check("no norm 2 vectors", info["norm2"] == 0)]
    if not args.quick:
        checks.append(_check("196560 norm 4 vectors", info["norm4"] == 196560))
    checks += [_check("759 octads", dist.get(8) == 759),
               _check("minimum distance 8", code.min_distance() == 8)]
    return report("verify-leech", {"quick": args.quick}, [_jsonable(info)], checks)


def cmd_shape(args) -> dict:
    from .dimform import vacuum_anomaly
    from .leech import cycle_shape_of, fixed_lattice, order_doubling
    iso = _load_iso(args.auto)
    shape = cycle_shape_of(iso)
    row = {"name": iso.name, "order": iso.order, "shape": str(shape),
           "fixed_rank": fixed_lattice(iso).rank if iso.order > 1 else 24,
           "vacuum_anomaly": _q(vacuum_anomaly(shape)),
           "order_doubling": order_doubling(iso)}
    return report("shape", {"auto": args.auto}, [row], [])


def cmd_weight(args) -> dict:
    from .leech import (LeechAutomorphism, automorphism_order, twisted_weight,
                        type_of_automorphism)
    iso = _load_iso(args.auto)
    f = _parse_rationals(args.shift) if args.shift else [Fraction(0)] * 24
    if len(f) != 24:
        raise UsageError("shift needs 24 Leech-basis coordinates")
    g = LeechAutomorphism(iso, f)
    n = args.n or automorphism_order(g)
    w = twisted_weight(g)
    row = {"order": automorphism_order(g), "weight": _q(w), "n": n,
           "type": type_of_automorphism(g, n)}
    return report("weight", {"auto": args.auto, "shift": args.shift, "n": args.n}, [row], [])


def _class_data(args):
    from .classify import load_class_data
    return load_class_data(args.class_, args.centralizers)


def cmd_orbits(args) -> dict:
    from .classify import _restrict, leech_orbit_space, orbit_enumerate
    data = _class_data(args)
    space = leech_orbit_space(data.isometry, args.n)
    mats = [_restrict(t, space.fixed) for t in data.centralizer]
    res = orbit_enumerate(mats, space.s_scaled, space.space, args.cap)
    rows = [{"representative": list(z), "size": s, "f": _jsonable(space.f_of(z))}
            for z, s in zip(res.representatives, res.sizes)]
    checks = [_check("sizes sum to quotient order", res.total == space.space.size)]
    return report("orbits", {"class": data.name, "n": args.n, "moduli": space.space.moduli},
                  rows, checks)


def cmd_gdh(args) -> dict:
    from .classify import gdh_pipeline, tally_lines
    data = _class_data(args)
    rep = gdh_pipeline(data, args.n, cap=args.cap, workers=args.threads)
    rows = [{"representative": list(r.representative), "orbit_size": r.orbit_size,
             "weight": _q(r.weight), "type": r.type_residue,
             "extremal_necessary": r.extremal_necessary, "rank_condition": r.rank_condition,
             "coprime_weights": _jsonable(r.coprime_weights)} for r in rep["records"]]
    tally = {k: v for k, v in rep.items() if k != "records"}
    out = report("gdh", {"class": data.name, "shape": str(data.shape), "n": args.n}, rows, [])
    out["tally"] = tally
    out["summary"] = tally_lines(rep)
    return out


def cmd_co0_check(args) -> dict:
    from .classify import filter_counts, load_co0_table
    classes = load_co0_table(args.table)
    c = filter_counts(classes)
    names = [k.name for k in classes]
    checks = [_check("167 classes", c["classes"] == 167),
              _check("72 with positive fixed rank", c["positive_rank"] == 72),
              _check("50 with vacuum anomaly below 1", c["anomaly_below_one"] == 50),
              _check("names unique", len(set(names)) == len(names))]
    return report("co0-check", {"table": args.table}, [c], checks)


# ----------------------------------------------------------------- parser

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="gdhkit", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=__version__)
    p.add_argument("--threads", type=int, default=os.cpu_count() or 1,
                   help="worker processes for weight computations (default: all CPUs)")
    p.add_argument("--format", choices=["json", "csv"], default="json")
    sub = p.add_subparsers(dest="command", required=True)

    sub.add_parser("enumerate", help="structures satisfying the trace identity")
    s = sub.add_parser("coeffs", help="dimension-formula coefficients for n")
    s.add_argument("--n", type=int, required=True)
    s = sub.add_parser("bound", help="dimension bound for a cycle shape")
    s.add_argument("--shape", required=True)
    s.add_argument("--n", type=int, required=True)
    s = sub.add_parser("vsf", help="very strange formula for Kac coordinates")
    s.add_argument("--component", action="append", required=True,
                   help='e.g. "A2:(1,1,1)"; repeat for several ideals')
    s.add_argument("--n", type=int)
    sub.add_parser("pairs", help="candidate pairs with spurious flags")
    s = sub.add_parser("verify-leech", help="Leech lattice and Golay code checks")
    s.add_argument("--quick", action="store_true", help="skip counting minimal vectors")
    s = sub.add_parser("shape", help="cycle shape of an isometry file")
    s.add_argument("--auto", required=True)
    s = sub.add_parser("weight", help="twisted-module weight")
    s.add_argument("--auto", required=True)
    s.add_argument("--shift", help="24 Leech-basis coordinates of f, comma separated")
    s.add_argument("--n", type=int)
    for name, text in (("orbits", "orbit representatives for a class"),
                       ("gdh", "conjugacy-class tally for a class")):
        s = sub.add_parser(name, help=text)
        s.add_argument("--class", dest="class_", required=True,
                       help="class name from the bundled table or a frame shape")
        s.add_argument("--n", type=int, required=True)
        s.add_argument("--centralizers", help="centralizer file (default: bundled)")
        s.add_argument("--cap", type=int, default=10 ** 8)
    s = sub.add_parser("co0-check", help="validate the class table")
    s.add_argument("--table")
    return p


COMMANDS = {"enumerate": cmd_enumerate, "coeffs": cmd_coeffs, "bound": cmd_bound,
            "vsf": cmd_vsf, "pairs": cmd_pairs, "verify-leech": cmd_verify_leech,
            "shape": cmd_shape, "weight": cmd_weight, "orbits": cmd_orbits, "gdh": cmd_gdh,
            "co0-check": cmd_co0_check}


def _csv(rows) -> str:
    buf = io.StringIO()
    if rows:
        w = csv.DictWriter(buf, fieldnames=list(rows[0]), lineterminator="\n")
        w.writeheader()
        for r in rows:
            w.writerow({k: json.dumps(v) if isinstance(v, (list, dict)) else v
                        for k, v in r.items()})
    return buf.getvalue()


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_USAGE
    if args.threads < 1:
        print("error: --threads must be positive", file=sys.stderr)
        return EXIT_USAGE
    from .classify import DataError
    try:
        out = COMMANDS[args.command](args)
    except (UsageError, DataError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    if args.format == "csv":
        sys.stdout.write(_csv(out["rows"]))
    else:
        json.dump(_jsonable(out), sys.stdout, indent=1)
        sys.stdout.write("\n")
    failed = any(c["result"] == "fail" for c in out["checks"])
    return EXIT_FAIL if failed else EXIT_OK


def main_entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    main_entry()
