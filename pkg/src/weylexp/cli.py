"""Command-line front end.

    weylexp analyze|exponents|law|verify|report FILE [--json] [options]

Exit status: 0 success, 1 internal error, 2 parse or semantic error, 3 a change of variables
is needed, 4 divergent chart, 5 numerical verification failed.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from . import oracle
from .errors import Divergent, InputError, NeedsResolution, WeylExpError
from .exponents import (ExponentResult, compute_exponents, eigen_law, exponents_from_charts,
                        profile_index_set)
from .nsw import classify, nsw_profile
from .polyalg import format_poly
from .sysfile import SystemFile, load_system

EXIT_OK, EXIT_INPUT, EXIT_RESOLUTION, EXIT_DIVERGENT, EXIT_FAIL = 0, 2, 3, 4, 5


def _jsonable(v):
    if isinstance(v, Fraction):
        return str(v) if v.denominator != 1 else v.numerator
    if isinstance(v, dict):
        return {k: _jsonable(x) for k, x in v.items()}
    if isinstance(v, (list, tuple)):
        return [_jsonable(x) for x in v]
    return v


def _plain(v) -> str:
    if isinstance(v, float):
        return f"{v:.6f}"
    return str(v)


def _profile(sf: SystemFile):
    if sf.system is None:
        raise InputError("this command needs a vector-field system (the file only has charts)")
    return nsw_profile(sf.system)


def analyze(sf: SystemFile) -> dict:
    p = _profile(sf)
    return {
        "Q": p.Q,
        "hoermander_index": p.hoermander_index,
        "w": p.w,
        "nu_origin": p.Q,
        "degenerate_vars": "{" + ", ".join(f"x{j + 1}" for j in p.degenerate_vars) + "}",
        "alphaX": p.alphaX,
        "classification": str(classify(p)),
    }


def _exponents(sf: SystemFile) -> ExponentResult:
    if sf.charts:
        return exponents_from_charts(sf.charts)
    return compute_exponents(_profile(sf), sf.subst)


def _pair_rows(res: ExponentResult) -> list[dict]:
    rows = []
    for pc in res.contributions:
        a, s = pc.pair
        rows.append({"pair": list(a) + [s], "status": pc.status, "m": pc.m, "d": pc.d,
                     "s+m": pc.rate})
    return rows


def exponents(sf: SystemFile) -> dict:
    res = _exponents(sf)
    out = {"Q0": res.Q0, "d0": res.d0, "derivation": str(res.derivation)}
    if res.contributions:
        out["pairs"] = _pair_rows(res)
    return out


def law(sf: SystemFile) -> dict:
    res = _exponents(sf)
    if res.Q0 <= 0:
        raise InputError("no eigenvalue law: Q0 must be positive")
    L = eigen_law(res)
    counting = f"N(lambda) ~ lambda^({L.counting_exponent})"
    if L.counting_log_power:
        counting += f" * (ln lambda)^{L.counting_log_power}"
    return {"Q0": res.Q0, "d0": res.d0, "counting_law": counting, "eigenvalue_law": L.eigen_str()}


def verify(sf: SystemFile, r_min, r_max, points, seed, tol, nodes) -> dict:
    oracle.r_ladder(r_min, r_max, points)  # validates the ladder before any work
    res = _exponents(sf)
    if sf.charts:
        charts = sf.charts
    else:
        charts = [profile_index_set(_profile(sf), sf.subst)]
    if max(G.N for G in charts) <= 3:
        lad = oracle.ladder_I(charts, r_min, r_max, points, nodes=nodes)
        method = "quadrature"
    else:
        lad = oracle.ladder_J(_profile(sf), r_min, r_max, points, seed=seed)
        method = "monte-carlo"
    ok = abs(lad.fit.Q0_hat - float(res.Q0)) <= tol
    return {
        "Q0": res.Q0,
        "d0": res.d0,
        "method": method,
        "points": points,
        "Q0_hat": lad.fit.Q0_hat,
        "d0_hat": lad.fit.d0_hat,
        "residual": lad.fit.residual,
        "monotone": lad.monotone,
        "tol": tol,
        "verdict": "PASS" if ok else "FAIL",
    }


def report(sf: SystemFile) -> dict:
    out = {}
    if sf.system is not None:
        out.update(analyze(sf))
    out.update(exponents(sf))
    if out["Q0"] > 0:
        out.update(law(sf))
    return out


def _emit(data: dict, as_json: bool, stream=None):
    stream = stream or sys.stdout
    if as_json:
        print(json.dumps(_jsonable(data)), file=stream)
        return
    for k, v in data.items():
        if k == "pairs":
            for row in v:
                tag = " ".join(map(str, row["pair"]))
                extra = "" if row["m"] is None else f" m={row['m']} d={row['d']} s+m={row['s+m']}"
                print(f"pair[{tag}] = {row['status']}{extra}", file=stream)
        elif k in ("counting_law", "eigenvalue_law"):
            print(v, file=stream)
        else:
            print(f"{k} = {_plain(v)}", file=stream)


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="weylexp", description=__doc__.split("\n\n")[0])
    ap.add_argument("command", choices=["analyze", "exponents", "law", "verify", "report"])
    ap.add_argument("file")
    ap.add_argument("--json", action="store_true", help="emit one JSON object")
    ap.add_argument("--tol", type=float, default=0.15)
    ap.add_argument("--points", type=int, default=7)
    ap.add_argument("--rmin", type=float, default=1e-5)
    ap.add_argument("--rmax", type=float, default=1e-2)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--nodes", type=int, default=oracle.DEFAULT_NODES)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    if args.command == "verify" and not (0 < args.rmin < args.rmax < 1 and args.points >= 4):
        ap.print_usage(sys.stderr)
        print("weylexp: error: need 0 < --rmin < --rmax < 1 and --points >= 4", file=sys.stderr)
        return EXIT_INPUT
    try:
        sf = load_system(args.file)
        if args.command == "analyze":
            data = analyze(sf)
        elif args.command == "exponents":
            data = exponents(sf)
        elif args.command == "law":
            data = law(sf)
        elif args.command == "report":
            data = report(sf)
        else:
            data = verify(sf, args.rmin, args.rmax, args.points, args.seed, args.tol, args.nodes)
    except NeedsResolution as exc:
        _emit({"status": "NeedsResolution",
               "offending": [format_poly(p) for p in exc.offending]}
              if args.json else
              {"status": "NeedsResolution", **{f"offending[{i}]": format_poly(p)
                                               for i, p in enumerate(exc.offending)}},
              args.json)
        return EXIT_RESOLUTION
    except Divergent as exc:
        a, s = exc.pair
        _emit({"status": "Divergent", "witness": list(a) + [s]}, args.json)
        return EXIT_DIVERGENT
    except OSError as exc:
        print(f"weylexp: error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except WeylExpError as exc:
        print(f"weylexp: error: {exc}", file=sys.stderr)
        return exc.exit_code
    _emit(data, args.json)
    if data.get("verdict") == "FAIL":
        return EXIT_FAIL
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
