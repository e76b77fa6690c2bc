"""Batch command-line front end.

Commands: describe, flag, cdindex, toric, extended, partition, verify.
Inputs are either a JSON file ({"dim": d, "vertices": [["0","1/2"],...]})
or a builtin spec such as cube:3, polygon:7, pyramid:polygon:4,
product:cube:2:polygon:3.

Exit codes: 0 success; 2 invalid input (non-generic direction, points
that are not vertices, non-Eulerian data, bad spec); 3 internal
cross-check failure -- independent routes disagreed, which is a bug and
aborts loudly.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction

from .errors import CrossCheckError, InputError, NotCDExpressible, NotInImage
from .exactnum import format_rational
from .flagvec import ab_index, cd_index, flag_f, flag_h, reverse_words
from .polytope import (
    FaceLattice,
    VRep,
    dual,
    hull_lattice,
    is_eulerian,
    lattice_to_json,
    load_vrep,
    make_crosspolytope,
    make_cube,
    make_polygon,
    make_simplex,
    polar_dual,
    prism,
    product,
    pyramid,
)
from .sweep import (
    cd_sweep,
    cd_sweep_symmetric,
    choose_direction,
    min_vertex_partition,
    simple_h_by_outdegree,
)
from .toric import (
    extended_toric,
    is_symmetric,
    is_unimodal,
    reconstruct_cd,
    toric_from_cd,
    toric_h_definition,
    toric_sweep,
    toric_sweep_symmetric,
)
from .truncpartition import build_partition, enumerate_chains, verify_partition

SCHEMA = 1


def parse_input(spec: str) -> VRep:
    if os.path.exists(spec) or spec.endswith(".json"):
        try:
            return load_vrep(spec)
        except (OSError, ValueError, KeyError, TypeError) as e:
            raise InputError(f"cannot read polytope file {spec!r}: {e}") from e
    vrep, rest = _parse_spec(spec.split(":"))
    if rest:
        raise InputError(f"trailing tokens in input spec: {rest}")
    return vrep


def _parse_spec(tokens: list) -> tuple[VRep, list]:
    if not tokens:
        raise InputError("empty input spec")
    head, rest = tokens[0], tokens[1:]
    if head == "point":
        return make_simplex(0), rest
    if head == "segment":
        return make_cube(1), rest
    if head in ("simplex", "cube", "cross", "crosspolytope", "polygon"):
        if not rest:
            raise InputError(f"{head} needs a size argument")
        try:
            n = int(rest[0])
        except ValueError:
            raise InputError(f"bad size {rest[0]!r} for {head}") from None
        maker = {
            "simplex": make_simplex,
            "cube": make_cube,
            "cross": make_crosspolytope,
            "crosspolytope": make_crosspolytope,
            "polygon": make_polygon,
        }[head]
        try:
            return maker(n), rest[1:]
        except ValueError as e:
            raise InputError(str(e)) from None
    if head == "pyramid":
        base, rest2 = _parse_spec(rest)
        return pyramid(base), rest2
    if head == "prism":
        base, rest2 = _parse_spec(rest)
        return prism(base), rest2
    if head == "product":
        a, rest2 = _parse_spec(rest)
        b, rest3 = _parse_spec(rest2)
        return product(a, b), rest3
    raise InputError(f"unknown builtin {head!r}")


def parse_direction(text: str):
    try:
        return tuple(Fraction(x.strip()) for x in text.split(","))
    except ValueError:
        raise InputError(f"bad direction {text!r}") from None


def _sweep_order(s):
    return sorted(range(len(s.heights)), key=lambda i: s.heights[i])


def _fmt_vec(h) -> list:
    return [str(x) if isinstance(x, Fraction) else x for x in h]


def _subset_key(S) -> str:
    return ",".join(str(i) for i in sorted(S))


# ---------------------------------------------------------------------------
# Commands.  Each returns a JSON-able payload.


def cmd_describe(lat: FaceLattice, args) -> dict:
    return {
        "dim": lat.dim,
        "n_vertices": lat.n_vertices,
        "f_vector": list(lat.f_vector()),
        "eulerian": is_eulerian(lat),
        "simple": lat.is_simple(),
        "lattice": lattice_to_json(lat),
    }


def cmd_flag(lat: FaceLattice, args) -> dict:
    f = flag_f(lat)
    h = flag_h(f)
    return {
        "f": {_subset_key(S): v for S, v in sorted(f.values.items(), key=lambda kv: (len(kv[0]), sorted(kv[0])))},
        "h": {_subset_key(S): v for S, v in sorted(h.values.items(), key=lambda kv: (len(kv[0]), sorted(kv[0])))},
        "ab": ab_index(h).to_json(),
    }


def cmd_cdindex(lat: FaceLattice, args) -> dict:
    method = args.method or "flag"
    if method == "flag":
        return {"method": method, "cd": cd_index(lat).to_json()}
    s = choose_direction(args.direction, lat.coords)
    if method == "sweep":
        per, total = cd_sweep(lat, s, deep=args.deep_sweep)
        if args.deep_sweep and total != cd_index(lat):
            raise CrossCheckError("deep sweep disagrees with flag route")
    elif method == "symmetric":
        per, total = cd_sweep_symmetric(lat, s)
    else:
        raise InputError(f"cdindex has no method {method!r}")
    return {
        "method": method,
        "cd": total.to_json(),
        "per_vertex": [
            {
                "vertex": vi,
                "height": format_rational(s.heights[vi]),
                "cd": per[vi].to_json(),
            }
            for vi in _sweep_order(s)
        ],
    }


def cmd_toric(lat: FaceLattice, args) -> dict:
    method = args.method or "def"
    if method == "def":
        return {"method": method, "toric": _fmt_vec(toric_h_definition(lat))}
    if method == "cd":
        return {"method": method, "toric": _fmt_vec(toric_from_cd(cd_index(lat)))}
    if method not in ("sweep", "symmetric"):
        raise InputError(f"toric has no method {method!r}")
    # sweeping a polytope accumulates the toric h-vector of its dual, so
    # sweep the polar dual to get the input's own vector
    polar = hull_lattice(polar_dual(lat))
    s = choose_direction(args.direction, polar.coords)
    fn = toric_sweep if method == "sweep" else toric_sweep_symmetric
    per, total = fn(polar, s)
    return {
        "method": method,
        "toric": _fmt_vec(total),
        "swept": "polar-dual",
        "per_vertex": [
            {
                "vertex": vi,
                "height": format_rational(s.heights[vi]),
                "toric": _fmt_vec(per[vi]),
            }
            for vi in _sweep_order(s)
        ],
    }


def cmd_extended(lat: FaceLattice, args) -> dict:
    phi = cd_index(lat)
    ext = extended_toric(phi, degree=lat.dim)
    rebuilt = reconstruct_cd(ext, lat.dim)
    if rebuilt != phi:
        raise CrossCheckError(
            f"extended toric reconstruction mismatch: {rebuilt} vs {phi}"
        )
    return {
        "extended": {(w if w else "1"): _fmt_vec(v) for w, v in ext.items()},
        "reconstructed_cd": rebuilt.to_json(),
    }


def cmd_partition(lat: FaceLattice, args) -> dict:
    if lat.dim > args.max_dim:
        raise InputError(
            f"partition limited to dimension {args.max_dim}; "
            f"raise --max-dim to override"
        )
    s = choose_direction(args.direction, lat.coords)
    blocks = build_partition(lat, s)
    chains = enumerate_chains(lat)
    report = verify_partition(blocks, chains, lat)
    if not report.ok:
        raise CrossCheckError("; ".join(report.failures))
    order = _sweep_order(s)
    blocks = sorted(blocks, key=lambda b: (order.index(b.owner), b.word))
    return {
        "n_chains": len(chains),
        "blocks": [
            {
                "word": b.word if b.word else "1",
                "owner": b.owner,
                "size": len(b.faces),
                "faces": sorted(
                    [sorted(lat.vertices_of(i)) for i in ch] for ch in b.faces
                ),
            }
            for b in blocks
        ],
        "verified": True,
    }


def cmd_verify(lat: FaceLattice, args) -> dict:
    checks = run_verification(lat, args.direction, args.max_dim, args.deep_sweep)
    ok = all(passed for _, passed in checks)
    if not ok:
        failed = [name for name, passed in checks if not passed]
        raise CrossCheckError("failed checks: " + "; ".join(failed))
    return {"checks": [{"name": n, "pass": p} for n, p in checks]}


def run_verification(lat: FaceLattice, direction, max_dim: int, deep: bool) -> list:
    """Every cross-method invariant on one polytope; returns
    (name, passed) pairs but raises early on malformed input."""
    checks: list[tuple[str, bool]] = []
    d = lat.dim

    checks.append(("lattice is Eulerian", is_eulerian(lat)))
    f = flag_f(lat)
    h = flag_h(f)
    full = frozenset(range(d))
    checks.append(
        ("flag h symmetry h_S = h_Sc",
         all(h.values[S] == h.values[full - S] for S in h.values))
    )
    phi = cd_index(lat)
    checks.append(("cd coefficients nonnegative", phi.is_nonnegative()))
    checks.append(("coefficient of c^d is 1", phi.coefficient("c" * d) == 1))
    checks.append(
        ("dual cd-index is the reversed cd-index",
         cd_index(dual(lat)) == reverse_words(phi))
    )

    s1 = choose_direction(direction, lat.coords)
    s2 = _second_direction(lat, s1)
    for tag, s in (("primary", s1), ("alternate", s2)):
        per, total = cd_sweep(lat, s, deep=deep)
        checks.append((f"sweep total equals flag route ({tag})", total == phi))
        if d >= 1:
            last = max(range(lat.n_vertices), key=lambda i: s.heights[i])
            checks.append(
                (f"last vertex contributes zero ({tag})", per[last].is_zero())
            )
        checks.append(
            (f"per-vertex parts nonnegative ({tag})",
             all(p.is_nonnegative() for p in per.values()))
        )
        per_s, total_s = cd_sweep_symmetric(lat, s)
        checks.append(
            (f"symmetric sweep equals flag route ({tag})", total_s == phi)
        )
        checks.append(
            (f"symmetric parts nonnegative half-integers ({tag})",
             all(p.is_nonnegative() and (2 * p).is_integral() for p in per_s.values()))
        )

    h_def = toric_h_definition(lat)
    h_cd = toric_from_cd(phi, degree=d)
    checks.append(("toric definition equals cd route", h_def == h_cd))
    per_t, h_dualsweep = toric_sweep(lat, s1)
    checks.append(
        ("toric sweep equals reversed-cd route of the dual",
         h_dualsweep == toric_from_cd(reverse_words(phi), degree=d))
    )
    _, h_dualsym = toric_sweep_symmetric(lat, s1)
    checks.append(("toric symmetric sweep equals toric sweep", h_dualsym == h_dualsweep))
    if d >= 1:
        polar = hull_lattice(polar_dual(lat))
        sp = choose_direction(None, polar.coords)
        _, via_polar = toric_sweep(polar, sp)
        checks.append(("toric via polar sweep equals definition", via_polar == h_def))
    checks.append(("toric h symmetric", is_symmetric(h_def)))
    checks.append(("toric h starts at 1", h_def[0] == 1))
    checks.append(("toric h unimodal", is_unimodal(h_def)))

    ext = extended_toric(phi, degree=d)
    checks.append(
        ("extended vectors symmetric and nonnegative",
         all(is_symmetric(v) and all(x >= 0 for x in v) for v in ext.values()))
    )
    checks.append(
        ("extended toric reconstructs the cd-index",
         reconstruct_cd(ext, d) == phi)
    )

    if 1 <= d <= max_dim:
        blocks = build_partition(lat, s1)
        report = verify_partition(blocks, enumerate_chains(lat), lat)
        checks.append(("truncation partition verifies", report.ok))
        checks.append(
            ("number of blocks equals cd coefficient sum",
             len(blocks) == sum(phi.terms.values()))
        )

    if lat.is_simple() and d >= 1:
        hv = simple_h_by_outdegree(lat, s1)
        checks.append(("outdegree h equals f(P, x-1)", hv == _h_from_f(lat)))
        blocks = min_vertex_partition(lat, s1)
        nonempty = sum(1 for k in lat.dims if k >= 0)
        checks.append(
            ("minimal-vertex blocks cover all nonempty faces",
             sum(len(b) for b in blocks.values()) == nonempty)
        )
    return checks


def _second_direction(lat: FaceLattice, s1):
    """The reversed sweep: always generic, always a different ordering."""
    if lat.dim == 0:
        return s1
    return choose_direction(tuple(-x for x in s1.p), lat.coords)


def _h_from_f(lat: FaceLattice) -> tuple:
    """Coefficients of f(P, x-1): the independent h-vector oracle."""
    fv = lat.f_vector()
    d = lat.dim
    h = [0] * (d + 1)
    for i in range(d + 1):  # f_i * (x-1)^i
        fi = fv[i + 1]
        for j in range(i + 1):
            sign = -1 if (i - j) % 2 else 1
            h[j] += fi * sign * _binom(i, j)
    return tuple(h)


def _binom(n: int, k: int) -> int:
    out = 1
    for i in range(k):
        out = out * (n - i) // (i + 1)
    return out


# ---------------------------------------------------------------------------
# Table rendering and entry point.


def _render_table(payload: dict, out) -> None:
    def walk(obj, indent=""):
        if isinstance(obj, dict):
            for k, v in obj.items():
                if isinstance(v, (dict, list)) and v and not _is_flat(v):
                    print(f"{indent}{k}:", file=out)
                    walk(v, indent + "  ")
                else:
                    print(f"{indent}{k}: {_flat(v)}", file=out)
        elif isinstance(obj, list):
            for v in obj:
                if isinstance(v, (dict, list)) and v and not _is_flat(v):
                    walk(v, indent + "  ")
                    print(file=out)
                else:
                    print(f"{indent}- {_flat(v)}", file=out)

    walk(payload)


def _is_flat(v) -> bool:
    if isinstance(v, list):
        return all(not isinstance(x, (dict, list)) for x in v)
    if isinstance(v, dict):
        return all(not isinstance(x, (dict, list)) for x in v.values())
    return True


def _flat(v) -> str:
    if isinstance(v, dict):
        return ", ".join(f"{k}={x}" for k, x in v.items())
    if isinstance(v, list):
        return "[" + ", ".join(str(x) for x in v) + "]"
    return str(v)


COMMANDS = {
    "describe": cmd_describe,
    "flag": cmd_flag,
    "cdindex": cmd_cdindex,
    "toric": cmd_toric,
    "extended": cmd_extended,
    "partition": cmd_partition,
    "verify": cmd_verify,
}


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="polysweep",
        description="Exact cd-indices, toric h-vectors and sweep "
        "decompositions of convex polytopes.",
    )
    ap.add_argument("command", choices=sorted(COMMANDS))
    ap.add_argument("--input", required=True, help="builtin spec or JSON path")
    ap.add_argument("--method", help="cdindex: flag|sweep|symmetric; "
                    "toric: def|cd|sweep|symmetric")
    ap.add_argument("--direction", help="comma-separated rationals, e.g. 1,2,4")
    ap.add_argument("--format", choices=("json", "table"), default="json")
    ap.add_argument("--output", help="write result here instead of stdout")
    ap.add_argument("--deep-sweep", action="store_true",
                    help="recompute section cd-indices by recursive sweeps")
    ap.add_argument("--max-dim", type=int, default=4,
                    help="dimension cap for the partition construction")
    return ap


VALID_METHODS = {
    "cdindex": ("flag", "sweep", "symmetric"),
    "toric": ("def", "cd", "sweep", "symmetric"),
}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.method is not None:
            allowed = VALID_METHODS.get(args.command)
            if allowed is None:
                raise InputError(f"{args.command} takes no --method")
            if args.method not in allowed:
                raise InputError(
                    f"{args.command} method must be one of {', '.join(allowed)}"
                )
        vrep = parse_input(args.input)
        if args.direction is not None:
            args.direction = parse_direction(args.direction)
        lat = hull_lattice(vrep)
        payload = {"schema": SCHEMA, "command": args.command, "input": args.input}
        payload.update(COMMANDS[args.command](lat, args))
    except (InputError, NotCDExpressible) as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    except (CrossCheckError, NotInImage) as e:
        print(f"cross-check failure: {e}", file=sys.stderr)
        return 3

    if args.output:
        with open(args.output, "w") as f:
            json.dump(payload, f, indent=2)
            f.write("\n")
    elif args.format == "json":
        json.dump(payload, sys.stdout, indent=2)
        print()
    else:
        _render_table(payload, sys.stdout)
    return 0


if __name__ == "__main__":
    sys.exit(main())
