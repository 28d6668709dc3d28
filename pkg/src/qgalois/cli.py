"""Command-line front end.

    qgalois verify <claim-id | all> [--json]
    qgalois compute --algebra weyl:1 "y*x^2" [--act G --generator i] [--reynolds G]
    qgalois invariants --group "Gm:2,n:1" --algebra affine:1 --degree 2
    qgalois supp --algebra skew-weyl:2 "e1 + h2*e2^-1" [--group]
    qgalois hnf 1,2 3,4
    qgalois catalog

Exit status: 0 success, 1 certificate failure, 2 usage or parse error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from . import __version__
from .claims import find_claim, load_manifest, run_claim
from .errors import GroupTooLarge, QGaloisError, UnknownClaim
from .groups import DEFAULT_MAX_ORDER, act, group_from_spec, invariant_basis, orbit_invariant_count, reynolds
from .gwa import INSTANCE_NAMES, gwa_instance, quantum_weyl_gwa
from .lattice import generates_group, generates_monoid, hnf
from .quantum import QAlgebraKind
from .skew import NN, ZN, qlga_action, supp, weyl_gwa_action

DEFAULT_MAX_DEGREE = 10


class UsageError(Exception):
    pass


def algebra_from_spec(spec: str):
    """Parent object for an algebra spec.

    ``affine:n``, ``torus:n``, ``weyl:n`` (optionally ``:multi``) are quantum
    algebras; ``gwa:<instance>`` and ``gwa-weyl:n`` are GWAs;
    ``skew-qlga:n``, ``skew-qlga-z:n`` and ``skew-weyl:n`` are skew monoid rings.
    """
    head, _, rest = spec.partition(":")
    try:
        if head in ("affine", "torus", "weyl"):
            return QAlgebraKind.from_spec(spec)
        if head == "gwa":
            return gwa_instance(rest).data
        if head == "gwa-weyl":
            return quantum_weyl_gwa(int(rest))
        if head == "skew-qlga":
            return qlga_action(int(rest), NN)
        if head == "skew-qlga-z":
            return qlga_action(int(rest), ZN)
        if head == "skew-weyl":
            return weyl_gwa_action(int(rest))
    except ValueError as exc:
        raise UsageError(f"bad algebra spec {spec!r}") from exc
    raise UsageError(f"unknown algebra spec {spec!r}")


def _limits(args):
    order = args.max_group_order or int(os.environ.get("QGALOIS_MAX_GROUP_ORDER", DEFAULT_MAX_ORDER))
    degree = args.max_degree or int(os.environ.get("QGALOIS_MAX_DEGREE", DEFAULT_MAX_DEGREE))
    return order, degree


def _emit(args, payload, text_lines):
    if args.json:
        print(json.dumps(payload, indent=1, sort_keys=True))
    else:
        for line in text_lines:
            print(line)


def cmd_verify(args) -> int:
    max_order, _ = _limits(args)
    manifest = load_manifest()
    entries = manifest if args.claim == "all" else [find_claim(args.claim, manifest)]
    results = [run_claim(e, max_group_order=max_order) for e in entries]
    ok = all(r["ok"] for r in results)
    payload = {
        "claims": results,
        "total": len(results),
        "matched": sum(r["ok"] for r in results),
        "ok": ok,
    }
    lines = []
    for r in results:
        mark = "ok  " if r["ok"] else "FAIL"
        lines.append(f"{mark} {r['id']}: {r['verdict']} (expected {r['expected']})")
        if not r["ok"] or args.verbose:
            lines += ["     " + d for d in r["details"]]
    lines.append(f"{payload['matched']}/{payload['total']} claims match their expected verdict")
    _emit(args, payload, lines)
    return 0 if ok else 1


def cmd_compute(args) -> int:
    max_order, _ = _limits(args)
    parent = algebra_from_spec(args.algebra)
    u = parent.parse(args.expr)
    if args.act:
        group = group_from_spec(args.act, max_order)
        if not 0 <= args.generator < len(group.generators):
            raise UsageError(f"{group.label} has {len(group.generators)} generators")
        u = act(group.generators[args.generator], u)
    if args.reynolds:
        u = reynolds(group_from_spec(args.reynolds, max_order), u)
    _emit(args, u.to_json(), [u.format()])
    return 0


def cmd_invariants(args) -> int:
    max_order, max_degree = _limits(args)
    kind = algebra_from_spec(args.algebra)
    if not isinstance(kind, QAlgebraKind):
        raise UsageError("invariants are computed for affine, torus and weyl algebras")
    if args.degree > max_degree:
        raise UsageError(f"degree {args.degree} exceeds --max-degree {max_degree}")
    group = group_from_spec(args.group, max_order)
    basis = invariant_basis(group, kind, args.degree, args.box, max_degree)
    orbit = orbit_invariant_count(group, kind, args.degree, args.box)
    certs = [
        {"element": b.format(), "reynolds_fixed": reynolds(group, b) == b,
         "generators_fixed": all(act(g, b) == b for g in group.generators)}
        for b in basis
    ]
    ok = len(basis) == orbit and all(c["reynolds_fixed"] and c["generators_fixed"] for c in certs)
    payload = {
        "group": group.spec,
        "group_order": group.order,
        "algebra": kind.spec,
        "degree": args.degree,
        "dimension": len(basis),
        "orbit_count": orbit,
        "basis": [b.to_json() for b in basis],
        "certificates": certs,
        "ok": ok,
    }
    lines = [f"{group.label} (order {group.order}) on {kind.spec}, degree {args.degree}: dimension {len(basis)}"]
    lines += ["  " + b.format() for b in basis]
    if not ok:
        lines.append("certificate FAILED")
    _emit(args, payload, lines)
    return 0 if ok else 1


def cmd_supp(args) -> int:
    ring = algebra_from_spec(args.algebra)
    if not hasattr(ring, "ambient"):
        raise UsageError("supp needs a skew monoid ring (skew-qlga, skew-qlga-z, skew-weyl)")
    elems = [ring.parse(e) for e in args.exprs]
    supports = [sorted(supp(u)) for u in elems]
    vecs = set().union(*map(set, supports)) if supports else set()
    as_group = args.group or (ring.ambient == ZN and not args.monoid)
    payload = {"supports": [[list(v) for v in s] for s in supports]}
    lines = [f"supp({e}) = {[list(v) for v in s]}" for e, s in zip(args.exprs, supports)]
    if as_group:
        cert = generates_group(vecs, ring.rank)
        payload["generates_group"] = cert.to_json()
        lines.append(f"generates Z^{ring.rank} as a group: {cert.generates} (HNF {cert.hnf})")
        ok = cert.generates
    else:
        ok = generates_monoid(vecs, ring.rank)
        payload["generates_monoid"] = ok
        lines.append(f"generates N^{ring.rank} as a monoid: {ok}")
    _emit(args, payload, lines)
    return 0 if ok else 1


def _vector(text: str) -> list[int]:
    try:
        return [int(v) for v in text.replace("[", "").replace("]", "").split(",") if v.strip()]
    except ValueError as exc:
        raise UsageError(f"bad integer vector {text!r}") from exc


def cmd_hnf(args) -> int:
    rows = [_vector(v) for v in args.vectors]
    if not rows or len({len(r) for r in rows}) != 1:
        raise UsageError("give one or more integer vectors of equal length, e.g. 1,0 0,1")
    h, u = hnf(rows)
    cert = generates_group(rows, len(rows[0]))
    payload = {"rows": rows, "hnf": h, "transform": u, "generates": cert.generates}
    lines = ["H ="] + [f"  {r}" for r in h] + ["U ="] + [f"  {r}" for r in u]
    lines.append(f"generates Z^{len(rows[0])}: {cert.generates}")
    _emit(args, payload, lines)
    return 0


def cmd_catalog(args) -> int:
    manifest = load_manifest()
    payload = {
        "claims": [{"id": e["id"], "kind": e["kind"], "anchor": e["anchor"], "expected": e["expected"]} for e in manifest],
        "gwa_instances": [gwa_instance(n).to_json() for n in INSTANCE_NAMES],
    }
    lines = [f"{e['id']:<34} {e['kind']:<13} {e['expected']:<5} {e['anchor']}" for e in manifest]
    lines.append("")
    lines += [f"gwa:{n}" for n in INSTANCE_NAMES]
    _emit(args, payload, lines)
    return 0


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="machine-readable output")
    common.add_argument("--max-group-order", type=int, default=None,
                        help="closure cap (env QGALOIS_MAX_GROUP_ORDER, default 100000)")
    common.add_argument("--max-degree", type=int, default=None,
                        help="degree cap (env QGALOIS_MAX_DEGREE, default 10)")

    p = argparse.ArgumentParser(prog="qgalois", description="Quantum algebras, skew monoid rings and invariant checks.")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("verify", parents=[common], help="replay claims from the manifest")
    s.add_argument("claim", help="claim id or 'all'")
    s.add_argument("-v", "--verbose", action="store_true")
    s.set_defaults(func=cmd_verify)

    s = sub.add_parser("compute", parents=[common], help="evaluate an expression to normal form")
    s.add_argument("--algebra", required=True)
    s.add_argument("expr")
    s.add_argument("--act", metavar="GROUP", help="apply a group generator to the result")
    s.add_argument("--generator", type=int, default=0)
    s.add_argument("--reynolds", metavar="GROUP", help="average the result over a group")
    s.set_defaults(func=cmd_compute)

    s = sub.add_parser("invariants", parents=[common], help="graded invariant basis")
    s.add_argument("--group", required=True)
    s.add_argument("--algebra", required=True)
    s.add_argument("--degree", type=int, required=True)
    s.add_argument("--box", type=int, default=None, help="exponent bound on the torus")
    s.set_defaults(func=cmd_invariants)

    s = sub.add_parser("supp", parents=[common], help="supports in a skew monoid ring")
    s.add_argument("--algebra", required=True)
    s.add_argument("exprs", nargs="+")
    s.add_argument("--group", action="store_true", help="test generation as a group")
    s.add_argument("--monoid", action="store_true", help="test generation as a monoid")
    s.set_defaults(func=cmd_supp)

    s = sub.add_parser("hnf", parents=[common], help="Hermite normal form of integer row vectors")
    s.add_argument("vectors", nargs="+")
    s.set_defaults(func=cmd_hnf)

    s = sub.add_parser("catalog", parents=[common], help="list claims and GWA instances")
    s.set_defaults(func=cmd_catalog)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UnknownClaim as exc:
        print(f"error: unknown claim {exc}", file=sys.stderr)
        return 2
    except GroupTooLarge as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (QGaloisError, UsageError, ValueError, KeyError) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
