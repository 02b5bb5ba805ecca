"""
Command-line interface.

Exit codes: 0 success, 2 usage error, 3 domain failure (invalid input,
family-membership failure, failed verification), 4 internal error.
"""
from __future__ import annotations

import argparse
import json
import re
import sys
from fractions import Fraction
from pathlib import Path

from . import render as render_mod
from . import verification as ver
from .balanced import (balanced_dd2, canonical_Z_half_orientation, canonical_Z_orientation,
                       halve_bipartite)
from .bijection import phi_plus, psi_plus
from .enumerate import GenSpec, generate_maps, in_F, in_L, in_M
from .maps import CombMap, MapError, essential_girth, parse_map
from .mobile import FAMILIES, Mobile, check_family
from .orientation import WeightedBiorientation, weight_tables
from .series import (SeriesError, closed_form_series, mobile_route_quadrangulation,
                     mobile_route_triangulation, solve_V_system, solve_W_system)

EXIT_OK, EXIT_USAGE, EXIT_DOMAIN, EXIT_INTERNAL = 0, 2, 3, 4


class UsageError(Exception):
    pass


# helpers -----------------------------------------------------------------------------


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None


def _write(path: str | None, text: str) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        Path(path).write_text(text)


def _emit(args, payload: dict, text: str) -> None:
    if args.format == "json":
        sys.stdout.write(json.dumps(payload, indent=1, sort_keys=True) + "\n")
    else:
        sys.stdout.write(text if text.endswith("\n") else text + "\n")


def _parse_faces(spec: str) -> tuple[list[int] | None, str, int]:
    """``all=d`` | ``even>=k`` | ``min=k`` | ``root=d,min=k`` -> (root degrees, kind, bound)."""
    root = None
    kind = None
    bound = 0
    for part in spec.split(","):
        m = re.fullmatch(r"(all|root|min|even>?)(=|>=)(\d+)", part.strip())
        if not m:
            raise UsageError(f"bad --faces component {part!r}")
        key, val = m.group(1), int(m.group(3))
        if key == "root":
            root = [val]
        else:
            kind, bound = key.rstrip(">"), val
    if kind is None:
        if root is None:
            raise UsageError("--faces needs all=, min= or even>=")
        kind, bound = "min", root[0]
    if bound < 1:
        raise UsageError("face degrees must be positive")
    return root, kind, bound


def _face_degrees(kind: str, bound: int, max_edges: int) -> list[int]:
    if kind == "all":
        return [bound]
    top = 2 * max_edges
    if kind == "even":
        return [k for k in range(bound, top + 1) if k % 2 == 0]
    return list(range(bound, top + 1))


_FILTER_RE = re.compile(r"(essential-girth|girth-at-least|bipartite|F|L|M)(?:=(\d+))?")


def _make_filter(items: list[str]):
    preds = []
    for item in items:
        m = _FILTER_RE.fullmatch(item)
        if not m:
            raise UsageError(f"bad --filter {item!r}")
        key, val = m.group(1), m.group(2)
        if key == "bipartite":
            preds.append(lambda mp: mp.is_bipartite())
            continue
        if val is None:
            raise UsageError(f"--filter {key} needs a value")
        k = int(val)
        if key == "essential-girth":
            preds.append(lambda mp, k=k: essential_girth(mp) == k)
        elif key == "girth-at-least":
            preds.append(lambda mp, k=k: essential_girth(mp) >= k)
        else:
            test = {"F": in_F, "L": in_L, "M": in_M}[key]
            preds.append(lambda mp, k=k, test=test: test(mp.with_root(0, "face"), k))
    if not preds:
        return None
    return lambda mp: all(p(mp) for p in preds)


def _load_oriented(path: str) -> tuple[CombMap, WeightedBiorientation | None]:
    m, weights = parse_map(_read(path))
    return m, None if weights is None else WeightedBiorientation(tuple(weights))


# subcommands ---------------------------------------------------------------------------


def cmd_enumerate(args) -> int:
    root, kind, bound = _parse_faces(args.faces)
    if args.max_edges is not None:
        edges = (1, args.max_edges)
        top = args.max_edges
    elif kind == "all" and root is None and args.vertices is not None and bound > 2:
        # Euler's formula V - E + F = 2 - 2g with 2E = dF fixes E
        num = bound * (args.vertices - 2 + 2 * args.genus)
        if num <= 0 or num % (bound - 2):
            raise UsageError("no map with these face degrees and vertex count")
        edges = num // (bound - 2)
        top = edges
    else:
        raise UsageError("--max-edges is required unless --faces all=d (d >= 3) and --vertices are given")
    spec = GenSpec(edges=edges, face_degrees=_face_degrees(kind, bound, top), root_degrees=root,
                   genus=args.genus, vertices=args.vertices, rooting=args.rooting,
                   filter=_make_filter(args.filter))
    maps = generate_maps(spec)
    if args.emit:
        out = Path(args.emit)
        out.mkdir(parents=True, exist_ok=True)
        count = 0
        for i, m in enumerate(maps):
            (out / f"map_{i:05d}.tor").write_text(m.to_text())
            count += 1
        _emit(args, {"count": count, "directory": str(out)}, f"{count} maps written to {out}")
        return EXIT_OK
    if args.list:
        texts = [m.to_text() for m in maps]
        _emit(args, {"count": len(texts), "maps": texts}, "\n".join(texts) + f"count: {len(texts)}")
        return EXIT_OK
    count = sum(1 for _ in maps)
    _emit(args, {"count": count}, str(count))
    return EXIT_OK


def cmd_orient(args) -> int:
    m, _ = _load_oriented(args.input)
    if m.root is None:
        raise MapError("the input map needs a root_face or root_corner line")
    m = m.with_root(m.root, "face")
    d = args.d
    if args.z_regime:
        if args.bipartite_halve:
            if d % 2:
                raise UsageError("--bipartite-halve needs an even d")
            w = canonical_Z_half_orientation(m, d // 2)
        else:
            w = canonical_Z_orientation(m, d)
        if w is None:
            raise MapError("no canonical orientation: the map is not in the family")
    else:
        w = balanced_dd2(m, d)
        if args.bipartite_halve:
            w = halve_bipartite(m, w)
    text = m.to_text(w.weights)
    tables = weight_tables(m, w)
    to_file = args.output not in (None, "-")
    if to_file:
        _write(args.output, text)
    if args.format == "json":
        _emit(args, {"map": text, "weights": list(w.weights), "tables": tables}, "")
    elif to_file:
        _emit(args, {}, _tables_text(tables))
    else:
        # comment lines keep the output readable by the map parser
        _emit(args, {}, text + "".join(f"# {line}\n" for line in _tables_text(tables).splitlines()))
    return EXIT_OK


def _tables_text(tables: dict) -> str:
    lines = ["vertex weights: " + " ".join(map(str, tables["vertices"])),
             "edge weights: " + " ".join(f"{d}:{w}" for d, w in sorted(tables["edges"].items())),
             "face weights: " + " ".join(map(str, tables["faces"]))]
    return "\n".join(lines)


def cmd_biject(args) -> int:
    if args.forward:
        m, w = _load_oriented(args.input)
        if w is None:
            raise MapError("the input map has no weights line")
        if m.root is None:
            raise MapError("the input map needs a root_face line")
        mob = phi_plus(m.with_root(m.root, "face"), w)
        if args.family and not check_family(mob, args.family, args.param):
            raise MapError(f"the mobile is not in the family {args.family}")
        _write(args.output, mob.to_json())
        return EXIT_OK
    mob = Mobile.from_json(_read(args.input))
    if args.family and not check_family(mob, args.family, args.param):
        raise MapError(f"the mobile is not in the family {args.family}")
    m, w = psi_plus(mob, args.d)
    _write(args.output, m.to_text(w.weights))
    return EXIT_OK


_SIMPLE_FAMILIES = {"triangulation": "T", "quadrangulation": "Q", "bip-quad-all": "F", "loopless-tri-all": "G"}


def series_coefficients(family: str, order: int, xdelta: int | None = None, route: str = "closed",
                        component: int | None = None) -> list[int]:
    """Exact integer coefficients z^0..z^order of a named series."""
    if family in _SIMPLE_FAMILIES:
        tag = _SIMPLE_FAMILIES[family]
        if route == "mobile" and tag == "T":
            s = mobile_route_triangulation(order).T
        elif route == "mobile" and tag == "Q":
            s = mobile_route_quadrangulation(order).Q
        elif route == "mobile":
            raise UsageError(f"no mobile route for {family}")
        else:
            s = closed_form_series(tag, order)
    else:
        m = re.fullmatch(r"([WV])(\d+)", family)
        if not m:
            raise UsageError(f"unknown series family {family!r}")
        k = int(m.group(2))
        if m.group(1) == "W":
            deg = xdelta if xdelta is not None else k
            system = solve_W_system(k, {deg: 1}, order)
        else:
            deg = xdelta if xdelta is not None else 2 * k
            system = solve_V_system(k, {deg: 1}, order)
        if not system.residual_ok:
            raise SeriesError("the fixed point did not converge")
        if component is None:
            s = system.annulus
        elif component in system.values:
            s = system.values[component]
        else:
            raise UsageError(f"no component {component}; valid: {sorted(system.values)}")
    out = []
    for k in range(order + 1):
        c = Fraction(s[k])
        if c.denominator != 1:
            raise SeriesError(f"coefficient {k} is not an integer: {c}")
        out.append(int(c))
    return out


def cmd_series(args) -> int:
    coeffs = series_coefficients(args.family, args.order, args.xdelta, args.route, args.component)
    _emit(args, {"family": args.family, "coefficients": coeffs}, "\n".join(map(str, coeffs)))
    return EXIT_OK


def run_suite(name: str, d: int | None = None, max_n: int | None = None, bipartite: bool = False,
              order: int | None = None, max_edges: int | None = None, large: bool = False) -> list:
    """Run one named suite with CLI-style parameters; returns a list of reports."""
    n = max_n if max_n is not None else 3
    if name == "counting":
        fams = {3: ("T", "G"), 4: ("Q", "F")}.get(d, ("T", "Q", "F", "G"))
        return [ver.suite_counting(fams, n)]
    if name == "series-crosscheck":
        return [ver.suite_series(order or 20)]
    if name == "roundtrip":
        dd = d or 3
        return [ver.suite_roundtrip(dd, n, bipartite=bipartite, large=large, max_edges=max_edges)]
    if name == "uniqueness":
        if d is None:
            return [ver.suite_uniqueness()]
        if large:
            return [ver.suite_uniqueness(ds_F=(), ds_L=(d,), max_n_L=n)]
        return [ver.suite_uniqueness(ds_F=(d,), max_n_F=n, ds_L=())]
    if name == "epsilon":
        return [ver.suite_epsilon(dd, n) for dd in ((d,) if d else (3, 4, 5))]
    if name == "gamma-linearity":
        return [ver.suite_gamma_linearity(dd, n) for dd in ((d,) if d else (3, 4, 5))]
    if name == "parity":
        b = d // 2 if d else 2
        return [ver.suite_parity(b, n)]
    if name == "decomposition":
        return [ver.suite_decomposition(d or 3, n)]
    if name == "phi-rules":
        return [ver.suite_phi_rules((d,) if d else (3, 4), n, z_ds=() if d else (1, 2, 3))]
    if name == "mobile-series":
        return [ver.suite_mobile_series(n)]
    raise UsageError(f"unknown suite {name!r}")


def cmd_verify(args) -> int:
    reports = run_suite(args.suite, args.d, args.max_n, args.bipartite, args.order,
                        args.max_edges, args.large)
    passed = all(r.passed for r in reports)
    lines = [line for r in reports for line in r.lines()]
    lines.append(("PASS" if passed else "FAIL") + f" {args.suite}")
    _emit(args, {"passed": passed, "reports": [r.to_dict() for r in reports]}, "\n".join(lines))
    return EXIT_OK if passed else EXIT_DOMAIN


def cmd_render(args) -> int:
    text = _read(args.input)
    if args.mobile or text.lstrip().startswith("{"):
        svg = render_mod.render_mobile(Mobile.from_json(text), size=args.size)
    else:
        m, weights = parse_map(text)
        svg = render_mod.render_map(m, weights, size=args.size)
    _write(args.output, svg)
    return EXIT_OK


# parser ------------------------------------------------------------------------------


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="torusmaps", description="Toroidal maps, canonical orientations and mobiles.")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.add_argument("-v", "--verbose", action="store_true", help="print tracebacks on errors")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "json"), default=argparse.SUPPRESS)
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    e = sub.add_parser("enumerate", parents=[common], help="generate rooted maps exhaustively")
    e.add_argument("--genus", type=int, default=1)
    e.add_argument("--faces", required=True, help="all=d, even>=k, min=k, optionally with root=d")
    e.add_argument("--vertices", type=int)
    e.add_argument("--max-edges", type=int)
    e.add_argument("--filter", action="append", default=[],
                   help="essential-girth=k, girth-at-least=k, bipartite, F=d, L=d, M=d")
    e.add_argument("--rooting", choices=("corner", "face"), default="corner")
    mode = e.add_mutually_exclusive_group()
    mode.add_argument("--count", action="store_true", help="print the number of maps (default)")
    mode.add_argument("--list", action="store_true", help="print every map")
    mode.add_argument("--emit", metavar="DIR", help="write one file per map")
    e.set_defaults(func=cmd_enumerate)

    o = sub.add_parser("orient", parents=[common], help="canonical orientation of a face-rooted map")
    o.add_argument("--input", required=True)
    o.add_argument("--d", type=int, required=True)
    o.add_argument("--bipartite-halve", action="store_true")
    o.add_argument("--z-regime", action="store_true", help="maps with root face d and larger faces")
    o.add_argument("--output")
    o.set_defaults(func=cmd_orient)

    b = sub.add_parser("biject", parents=[common], help="map+orientation <-> mobile")
    direction = b.add_mutually_exclusive_group(required=True)
    direction.add_argument("--forward", action="store_true")
    direction.add_argument("--inverse", action="store_true")
    b.add_argument("--input", required=True)
    b.add_argument("--output")
    b.add_argument("--d", type=int, help="expected excess for --inverse")
    b.add_argument("--family", choices=sorted(FAMILIES), help="require membership in a mobile family")
    b.add_argument("--param", type=int, help="family parameter (d, or b for hat families)")
    b.set_defaults(func=cmd_biject)

    s = sub.add_parser("series", parents=[common], help="exact generating-function coefficients")
    s.add_argument("--family", required=True,
                   help="triangulation, quadrangulation, bip-quad-all, loopless-tri-all, W<d>, V<b>")
    s.add_argument("--order", type=int, required=True)
    s.add_argument("--xdelta", type=int, help="face degree carrying weight 1 (W/V families)")
    s.add_argument("--component", type=int, help="print W_j or V_j instead of the annulus series")
    s.add_argument("--route", choices=("closed", "mobile"), default="closed")
    s.set_defaults(func=cmd_series)

    v = sub.add_parser("verify", parents=[common], help="run a consistency suite")
    v.add_argument("suite", choices=("roundtrip", "uniqueness", "gamma-linearity", "epsilon", "parity",
                                     "counting", "series-crosscheck", "decomposition", "phi-rules",
                                     "mobile-series"))
    v.add_argument("--d", type=int)
    v.add_argument("--max-n", type=int)
    v.add_argument("--bipartite", action="store_true")
    v.add_argument("--large", action="store_true", help="maps with faces of degree at least d")
    v.add_argument("--max-edges", type=int)
    v.add_argument("--order", type=int)
    v.set_defaults(func=cmd_verify)

    r = sub.add_parser("render", parents=[common], help="SVG drawing in the flat torus")
    r.add_argument("--input", required=True)
    r.add_argument("--output")
    r.add_argument("--mobile", action="store_true")
    r.add_argument("--size", type=int, default=400)
    r.set_defaults(func=cmd_render)
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    verbose = "-v" in (argv or sys.argv[1:]) or "--verbose" in (argv or sys.argv[1:])
    try:
        args = parser.parse_args(argv)
        if getattr(args, "order", None) is not None and args.order < 0:
            raise UsageError("--order must be non-negative")
        if getattr(args, "family", None) and getattr(args, "param", 0) is None:
            raise UsageError("--family needs --param")
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (MapError, SeriesError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    except SystemExit as exc:
        return EXIT_OK if exc.code in (0, None) else EXIT_USAGE
    except Exception as exc:  # noqa: BLE001
        if verbose:
            raise
        print(f"internal error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
