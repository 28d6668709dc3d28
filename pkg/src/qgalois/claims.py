"""The claim manifest: every structural statement checked by the package.

Each entry is plain JSON and is replayed from that JSON alone.  Kinds:

hom            generator images into a target algebra, certified on relations
equivariance   a certified map commuting with a group on algebra generators
automorphism   each group generator induces a relation-preserving self-map
support        supports of embedded elements generate Z^n (HNF certificate)
invariants     graded invariant bases against brute-force orbit counts
dumas          invariant v = x^k y^l of the quantum plane with v x^m = q^n x^m v
"""

from __future__ import annotations

import json
from functools import lru_cache
from importlib import resources

from .errors import UnknownClaim
from .groups import (
    act,
    affine_cyclic_count,
    group_from_spec,
    invariant_basis,
    orbit_invariant_count,
    reynolds,
    span_rows,
)
from .gwa import INSTANCE_NAMES, gwa_instance
from .lattice import generates_group
from .quantum import AFFINE, TORUS, QAlgebraKind
from .text import parse_field
from .skew import NN, ZN, MonoidAction, qlga_action, supp, weyl_gwa_action
from .verify import GenMap, Presentation, apply_map, certify_equivariance, certify_hom

__all__ = ["build_manifest", "load_manifest", "run_claim", "run_all", "manifest_path"]

MANIFEST_FILE = "claims.json"


# -- manifest construction --------------------------------------------------

def _qa_source(family: str, n: int, param: str = "q") -> dict:
    kind = QAlgebraKind.create(family, n, [parse_field(param)] * n)
    return {"generators": kind.presentation_generators(), "relations": kind.presentation_relations()}


def _names(n: int):
    xs = ["x"] if n == 1 else [f"x{i + 1}" for i in range(n)]
    ys = ["y"] if n == 1 else [f"y{i + 1}" for i in range(n)]
    es = [f"e{i + 1}" for i in range(n)]
    return xs, ys, es


def _affine_cyclic(n: int, m: int, family: str, q_source: str, expected: str, cid: str) -> dict:
    xs, ys, _ = _names(n)
    images = {}
    for x, y in zip(xs, ys):
        images[x] = f"{x}^{m}"
        images[y] = y
        if family == TORUS:
            images[x + "inv"] = f"{x}^-{m}"
            images[y + "inv"] = f"{y}^-1"
    return {
        "id": cid,
        "kind": "hom",
        "anchor": f"G_m^n-invariants of the quantum {'torus' if family == TORUS else 'affine space'} "
        "realized by x_i -> x_i^m, y_i -> y_i from parameter q^m",
        "source": _qa_source(family, n, q_source),
        "target": {"type": "qalgebra", "spec": f"{family}:{n}"},
        "images": images,
        "expected": expected,
    }


def _order_map(n: int, family: str) -> dict:
    xs, ys, es = _names(n)
    images = {}
    for x, y, e in zip(xs, ys, es):
        images[x] = f"x{xs.index(x) + 1}"
        images[y] = e
        if family == TORUS:
            images[x + "inv"] = f"x{xs.index(x) + 1}^-1"
            images[y + "inv"] = f"{e}^-1"
    return images


def _order_target(n: int, family: str) -> dict:
    return {"type": "skew", "action": qlga_action(n, ZN if family == TORUS else NN).to_json()}


def _weyl_embed(n: int, literal: bool, cid: str, expected: str) -> dict:
    xs, ys, es = _names(n)
    images, claims = {}, []
    for i, (x, y, e) in enumerate(zip(xs, ys, es)):
        h = f"h{i + 1}"
        images[x] = e
        images[y] = f"{h}^-1*{e}^-1" if literal else f"{h}*{e}^-1"
        claims.append([f"{y}*{x}", h])
    return {
        "id": cid,
        "kind": "hom",
        "anchor": "quantum Weyl algebra A_n^q inside k(h_1..h_n)*Z^n via x_i -> e_i, y_i x_i -> h_i"
        + (" (literal image h_i^-1 e_i^-1 for y_i)" if literal else " (image h_i e_i^-1 for y_i)"),
        "source": _qa_source("weyl", n),
        "target": {"type": "skew", "action": weyl_gwa_action(n).to_json()},
        "images": images,
        "claims": claims,
        "expected": expected,
    }


def _gwa_instance_claim(name: str) -> dict:
    inst = gwa_instance(name)
    return {
        "id": f"gwa-{name}",
        "kind": "hom",
        "anchor": f"{name} as a generalized Weyl algebra D(a, sigma)",
        "source": {"generators": list(inst.generators), "relations": list(inst.relations)},
        "target": {"type": "gwa", "instance": name},
        "images": dict(inst.images),
        "claims": [list(c) for c in inst.claims],
        "expected": "pass",
    }


def _equivariance(group: str, n: int, twist: bool, cid: str, expected: str) -> dict:
    return {
        "id": cid,
        "kind": "equivariance",
        "anchor": "the isomorphism O_q(k^2n) -> k[x]*N^n is G(m,p,n)-equivariant with h(e_i) = e_pi(i)"
        + (" (twisted: scalar on e_i)" if twist else ""),
        "source": _qa_source(AFFINE, n),
        "source_algebra": f"{AFFINE}:{n}",
        "target": _order_target(n, AFFINE),
        "images": _order_map(n, AFFINE),
        "group": group,
        "twist": twist,
        "expected": expected,
    }


def _automorphism(group: str, algebra: dict, cid: str, anchor: str) -> dict:
    return {"id": cid, "kind": "automorphism", "anchor": anchor, "algebra": algebra, "group": group, "expected": "pass"}


def build_manifest() -> list[dict]:
    out = []
    for family in (AFFINE, TORUS):
        tag = "affine" if family == AFFINE else "torus"
        for n in (1, 2):
            for m in (2, 3):
                out.append(_affine_cyclic(n, m, family, f"q^{m}", "pass", f"{tag}-cyclic-n{n}-m{m}"))
    for family in (AFFINE, TORUS):
        tag = "affine-cyclic-order" if family == AFFINE else "torus-order"
        for n in (1, 2, 3):
            out.append({
                "id": f"{tag}-n{n}",
                "kind": "hom",
                "anchor": "quantum affine space (torus) as k[x]*N^n (k[x^+-1]*Z^n) via x_i -> x_i, y_i -> e_i",
                "source": _qa_source(family, n),
                "target": _order_target(n, family),
                "images": _order_map(n, family),
                "expected": "pass",
            })
    for n in (1, 2, 3):
        out.append(_weyl_embed(n, False, f"weyl-gwa-embed-n{n}", "pass"))
    out.append({
        "id": "a1-order-z",
        "kind": "hom",
        "anchor": "z = (q-1)xy + 1 satisfies zx = qxz in A_1^q and is fixed by G_m",
        "source": {"generators": ["x", "z"], "relations": ["z*x - q*x*z"]},
        "target": {"type": "qalgebra", "spec": "weyl:1"},
        "images": {"x": "x", "z": "(q-1)*x*y + 1"},
        "invariant_under": "cyclic-on-A1:3",
        "invariant_images": ["z"],
        "expected": "pass",
    })
    ore = MonoidAction.create(1, NN, [{"t": "q*t+1"}])
    out.append({
        "id": "ore-sample",
        "kind": "hom",
        "anchor": "Ore extension D[x; sigma] as D*N, x -> generator of N acting as sigma",
        "source": {"generators": ["t", "x"], "relations": ["x*t - (q*t+1)*x"]},
        "target": {"type": "skew", "action": ore.to_json()},
        "images": {"t": "t", "x": "e1"},
        "claims": [["x^2*t", "(q^2*t+q+1)*e1^2"]],
        "expected": "pass",
    })
    for name in INSTANCE_NAMES:
        out.append(_gwa_instance_claim(name))
    out.append(_equivariance("G(2,1,2)", 2, False, "equivariance-G212", "pass"))
    out.append(_equivariance("G(3,3,2)", 2, False, "equivariance-G332", "pass"))
    out.append(_equivariance("G(2,2,3)", 3, False, "equivariance-G223", "pass"))
    for group, spec in (("G(2,1,2)", "affine:2"), ("G(3,3,2)", "affine:2"), ("G(2,1,2)", "torus:2"), ("G(2,1,2)", "weyl:2"), ("Sn:3", "weyl:3"), ("cyclic-on-A1:3", "weyl:1")):
        cid = f"aut-{group.replace('(', '').replace(')', '').replace(',', '').replace(':', '')}-{spec.replace(':', '')}"
        out.append(_automorphism(group, {"type": "qalgebra", "spec": spec}, cid, f"{group} acts on {spec} by algebra automorphisms"))
    for m in (2, 3, 4):
        out.append(_automorphism(
            f"cyclic-on-A1:{m}",
            {"type": "gwa", "instance": "Usl2"},
            f"aut-Usl2-G{m}",
            "G_m fixes h and sends e -> xi e, f -> xi^-1 f; brackets preserved and C fixed",
        ))
    for n in (2, 3):
        out.append({
            "id": f"quantum-order-support-n{n}",
            "kind": "support",
            "anchor": "supports of the images of x_1+..+x_n and y_1+..+y_n generate Z^n as a group",
            "n": n,
            "expected": "pass",
        })
    for group, spec, degrees, box in (
        ("Gm:2,n:2", "affine:2", [0, 1, 2, 3, 4], None),
        ("Gm:3,n:1", "torus:1", [-2, 0, 1, 3], 4),
        ("G(2,1,2)", "affine:2", [0, 1, 2, 3], None),
        ("G(3,3,2)", "affine:2", [0, 1, 2, 3], None),
        ("G(2,1,2)", "weyl:2", [0, 1, 2], None),
        ("Sn:2", "weyl:2", [0, 1, 2], None),
        ("cyclic-on-A1:3", "weyl:1", [0, 1, 2, 3, 4], None),
    ):
        out.append({
            "id": f"invariants-{group}-{spec}".replace("(", "").replace(")", "").replace(",", "").replace(":", ""),
            "kind": "invariants",
            "anchor": "graded invariant components by Reynolds averaging and exact row reduction",
            "group": group,
            "algebra": spec,
            "degrees": degrees,
            "box": box,
            "expected": "pass",
        })
    for m, pairs, expect in ((4, [[1, 2]], [2, 1, 4, 4]), (3, [[1, 1]], [2, 1, 3, 3]), (6, [[2, 0], [0, 3]], [3, 2, 3, 6])):
        out.append({
            "id": f"dumas-m{m}-{'-'.join(f'{a}{b}' for a, b in pairs)}",
            "kind": "dumas",
            "anchor": "invariants of the quantum plane embed in C(x^m)[v; sigma], v = x^k y^l, sigma(x^m) = q^n x^m",
            "m": m,
            "pairs": pairs,
            "parameters": dict(zip("klmn", expect)),
            "expected": "pass",
        })
    # negative controls
    out.append(_weyl_embed(1, True, "neg-weyl-embed-literal-n1", "fail"))
    out.append(_weyl_embed(2, True, "neg-weyl-embed-literal-n2", "fail"))
    sphere = gwa_instance("QuantumSphere")
    rels = list(sphere.relations[:3]) + ["s^-1*X*Y + (c-s^2*H)*(d+s^2*H)"]
    out.append({
        "id": "neg-sphere-literal",
        "kind": "hom",
        "anchor": "quantum sphere with the relation lambda^-1/2 XY = -(c - lambda H)(d + lambda H) taken literally",
        "source": {"generators": list(sphere.generators), "relations": rels},
        "target": {"type": "gwa", "instance": "QuantumSphere"},
        "images": dict(sphere.images),
        "expected": "fail",
    })
    out.append(_equivariance("G(2,1,2)", 2, True, "neg-equivariance-twisted", "fail"))
    out.append(_affine_cyclic(1, 2, AFFINE, "q", "fail", "neg-affine-cyclic-wrong-q"))
    return out


# -- loading ----------------------------------------------------------------

def manifest_path():
    return resources.files("qgalois") / "data" / MANIFEST_FILE


@lru_cache(maxsize=1)
def _load() -> tuple:
    text = manifest_path().read_text(encoding="utf-8")
    return tuple(json.dumps(e, sort_keys=True) for e in json.loads(text))


def load_manifest() -> list[dict]:
    return [json.loads(e) for e in _load()]


def write_manifest(path=None) -> None:
    path = path or manifest_path()
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(build_manifest(), fh, indent=1)
        fh.write("\n")


# -- replay -----------------------------------------------------------------

def _target(spec: dict):
    kind = spec["type"]
    if kind == "qalgebra":
        return QAlgebraKind.from_spec(spec["spec"])
    if kind == "skew":
        return MonoidAction.from_dict(spec["action"])
    if kind == "gwa":
        return gwa_instance(spec["instance"]).data
    raise ValueError(f"unknown target type {kind!r}")


def _genmap(entry: dict) -> GenMap:
    source = Presentation.from_strings(entry["source"]["generators"], entry["source"]["relations"])
    target = _target(entry["target"])
    return GenMap.from_strings(source, target, entry["images"], [tuple(c) for c in entry.get("claims", [])])


def _cert_lines(cert) -> list[str]:
    return [f"{r['label']}: {'ok' if r['ok'] else 'residual ' + str(r['residual'])}" for r in cert.residuals]


def _run_hom(entry, opts):
    gm = _genmap(entry)
    cert = certify_hom(gm)
    lines = _cert_lines(cert)
    passed = cert.passed
    if "invariant_under" in entry:
        group = group_from_spec(entry["invariant_under"], opts.get("max_group_order", 10 ** 5))
        for name in entry["invariant_images"]:
            u = gm.images[name]
            fixed = all(act(g, u) == u for g in group.generators)
            lines.append(f"image of {name} fixed by {group.label}: {fixed}")
            passed = passed and fixed
    return passed, lines


def _run_equivariance(entry, opts):
    gm = _genmap(entry)
    hom = certify_hom(gm)
    kind = QAlgebraKind.from_spec(entry["source_algebra"])
    group = group_from_spec(entry["group"], opts.get("max_group_order", 10 ** 5))
    twist = entry.get("twist", False)
    cert = certify_equivariance(
        gm,
        group.generators,
        lambda g, name: act(g, kind.gen(name)),
        lambda g, u: act(g, u, twist),
    )
    lines = [f"homomorphism: {hom.passed}", f"order of {group.label}: {group.order}"] + _cert_lines(cert)
    return hom.passed and cert.passed, lines


def _run_automorphism(entry, opts):
    group = group_from_spec(entry["group"], opts.get("max_group_order", 10 ** 5))
    alg = entry["algebra"]
    if alg["type"] == "qalgebra":
        kind = QAlgebraKind.from_spec(alg["spec"])
        pres = Presentation.from_strings(kind.presentation_generators(), kind.presentation_relations())
        base = {name: kind.gen(name) for name in pres.generators}
        target, claims, labels = kind, [], []
    else:
        inst = gwa_instance(alg["instance"])
        pres = Presentation.from_strings(inst.generators, inst.relations)
        base = inst.image_map()
        target = inst.data
        # the catalog claims (for U(sl_2): the Casimir) must still hold after twisting
        claims = [(pres.free.parse(w), target.parse(e)) for w, e in inst.claims]
        labels = [f"{w} -> {e}" for w, e in inst.claims]
    passed, lines = True, []
    for gi, g in enumerate(group.generators):
        gm = GenMap(pres, target, {k: act(g, v) for k, v in base.items()}, claims, labels)
        cert = certify_hom(gm)
        passed = passed and cert.passed
        lines += [f"g{gi} = {g}: " + s for s in _cert_lines(cert)]
    return passed, lines


def _run_support(entry, opts):
    n = entry["n"]
    kind = QAlgebraKind.from_spec(f"weyl:{n}")
    action = weyl_gwa_action(n)
    xs, ys, es = _names(n)
    images = {x: action.gen(e) for x, e in zip(xs, es)}
    images.update({y: action.parse(f"h{i + 1}*{e}^-1") for i, (y, e) in enumerate(zip(ys, es))})
    pres = Presentation.from_strings(kind.presentation_generators(), kind.presentation_relations())
    gm = GenMap(pres, action, images)
    hom = certify_hom(gm)
    sx = apply_map(gm, kind.parse(" + ".join(xs)))
    sy = apply_map(gm, kind.parse(" + ".join(ys)))
    unit = [tuple(int(i == j) for j in range(n)) for i in range(n)]
    ok_x = supp(sx) == frozenset(unit)
    ok_y = supp(sy) == frozenset(tuple(-v for v in u) for u in unit)
    lat = generates_group(supp(sx) | supp(sy), n)
    ident = [list(u) for u in unit]
    lines = [
        f"homomorphism: {hom.passed}",
        f"image of x-sum: {sx}",
        f"image of y-sum: {sy}",
        f"supp(x-sum) = {{e_i}}: {ok_x}",
        f"supp(y-sum) = {{-e_i}}: {ok_y}",
        f"HNF: {lat.hnf}",
    ]
    return hom.passed and ok_x and ok_y and lat.generates and lat.hnf == ident, lines


def check_invariant_degree(group, kind: QAlgebraKind, d: int, box=None) -> dict:
    """All oracle comparisons for one graded component."""
    basis = invariant_basis(group, kind, d, box)
    orbit = orbit_invariant_count(group, kind, d, box)
    res = {"dim": len(basis), "orbit_count": orbit}
    res["idempotent"] = all(reynolds(group, b) == b for b in basis)
    res["invariant"] = all(act(g, b) == b for g in group.generators for b in basis)
    cyc = group.spec.get("type") == "GmTensorN" and kind.family in (AFFINE, TORUS)
    if cyc:
        m = group.spec["m"]
        monos = [
            (a, b) for a, b in (
                kind.monomials_in_box(box if box is not None else abs(d)) if kind.family == TORUS else kind.monomials_of_degree(d)
            )
            if sum(a) + sum(b) == d
        ]
        target = span_rows(basis, monos)
        by_mono = span_rows([kind.monomial(a, b) for a, b in monos if all(v % m == 0 for v in a)], monos)
        # image of the source monomial x^(a/m) y^b under x_i -> x_i^m, multiplied out
        src = QAlgebraKind.create(kind.family, kind.n, [p ** m for p in kind.params])
        mapped = []
        for a, b in monos:
            if all(v % m == 0 for v in a):
                u = src.monomial(tuple(v // m for v in a), b)
                prod = kind.one()
                for (c, letters) in u.to_word():
                    term = kind.scalar(c)
                    for gname, e in letters:
                        g = kind.gen(gname)
                        if gname.startswith("x"):
                            g = g ** m
                        term = term * g ** e
                    prod = prod * term
                mapped.append(prod)
        res["span_monomials"] = target == by_mono
        res["span_image"] = target == span_rows(mapped, monos)
        if kind.family == AFFINE:
            res["closed_form"] = affine_cyclic_count(m, kind.n, d)
    return res


def _invariant_ok(res: dict) -> bool:
    ok = res["dim"] == res["orbit_count"] and res["idempotent"] and res["invariant"]
    ok = ok and res.get("span_monomials", True) and res.get("span_image", True)
    return ok and res.get("closed_form", res["dim"]) == res["dim"]


def _run_invariants(entry, opts):
    group = group_from_spec(entry["group"], opts.get("max_group_order", 10 ** 5))
    kind = QAlgebraKind.from_spec(entry["algebra"])
    passed, lines = True, [f"order of {group.label}: {group.order}"]
    for d in entry["degrees"]:
        res = check_invariant_degree(group, kind, d, entry.get("box"))
        ok = _invariant_ok(res)
        passed = passed and ok
        lines.append(f"degree {d}: " + ", ".join(f"{k}={v}" for k, v in res.items()))
    return passed, lines


def dumas_parameters(group, kind: QAlgebraKind) -> tuple[int, int, int, int]:
    """(k, l, m, n): x^m generates the invariants in x alone, v = x^k y^l is the
    invariant with smallest l > 0 (then smallest k > 0), and n = l*m."""
    bound = group.order * 2 + 2

    def invariant(a, b):
        u = kind.monomial((a,), (b,))
        return all(act(g, u) == u for g in group.generators)

    m = next(a for a in range(1, bound) if invariant(a, 0))
    for l in range(1, bound):
        ks = [k for k in range(1, bound) if invariant(k, l)]
        if ks:
            return ks[0], l, m, l * m
    raise ValueError("no invariant of the form x^k y^l")


def _run_dumas(entry, opts):
    from .groups import diagonal_group

    group = diagonal_group(entry["m"], entry["pairs"], opts.get("max_group_order", 10 ** 5))
    kind = QAlgebraKind.from_spec("affine:1")
    k, l, m, n = dumas_parameters(group, kind)
    v = kind.monomial((k,), (l,))
    xm = kind.monomial((m,), (0,))
    q = kind.params[0]
    fixed = all(act(g, v) == v and act(g, xm) == xm for g in group.generators)
    commute = v * xm == kind.scalar(q ** n) * xm * v
    found = {"k": k, "l": l, "m": m, "n": n}
    lines = [f"parameters: {found}", f"v and x^m invariant: {fixed}", f"v x^m = q^n x^m v: {commute}"]
    expect = entry.get("parameters")
    return fixed and commute and (expect is None or expect == found), lines


_RUNNERS = {
    "hom": _run_hom,
    "equivariance": _run_equivariance,
    "automorphism": _run_automorphism,
    "support": _run_support,
    "invariants": _run_invariants,
    "dumas": _run_dumas,
}


def find_claim(claim_id: str, manifest=None) -> dict:
    for entry in manifest if manifest is not None else load_manifest():
        if entry["id"] == claim_id:
            return entry
    raise UnknownClaim(claim_id)


def run_claim(entry: dict, **opts) -> dict:
    passed, lines = _RUNNERS[entry["kind"]](entry, opts)
    verdict = "pass" if passed else "fail"
    return {
        "id": entry["id"],
        "kind": entry["kind"],
        "anchor": entry["anchor"],
        "expected": entry["expected"],
        "verdict": verdict,
        "ok": verdict == entry["expected"],
        "details": lines,
    }


def run_all(manifest=None, **opts) -> list[dict]:
    return [run_claim(e, **opts) for e in (manifest if manifest is not None else load_manifest())]
