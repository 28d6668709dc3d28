import itertools
import math
import random

import pytest

from _rand import rand_gwa, rand_qa, rand_skew
from qgalois.cyclotomic import cyclo_root
from qgalois.errors import GroupTooLarge, ParseError, UndefinedAction
from qgalois.groups import (
    DiagonalElement,
    ReflGroupElement,
    act,
    affine_cyclic_count,
    cyclic_on_a1,
    group_from_spec,
    group_order,
    invariant_basis,
    orbit_invariant_count,
    refl_group,
    reynolds,
    symmetric_group,
)
from qgalois.gwa import gwa_instance, quantum_weyl_gwa
from qgalois.quantum import QAlgebraKind
from qgalois.ratfunc import fvar
from qgalois.skew import qlga_action, weyl_gwa_action


def _all_elements(m, p, n):
    """G(m,p,n) listed directly: diagonal sums divisible by p, any permutation."""
    out = set()
    for diag in itertools.product(range(m), repeat=n):
        if sum(diag) % p == 0:
            for perm in itertools.permutations(range(n)):
                out.add((diag, perm))
    return out


@pytest.mark.parametrize("m,p,n", [(2, 1, 2), (3, 3, 2), (1, 1, 3), (2, 2, 3), (4, 2, 2), (3, 1, 3), (6, 3, 2)])
def test_group_orders(m, p, n):
    G = refl_group(m, p, n)
    assert G.order == m ** n * math.factorial(n) // p == group_order(m, p, n)
    got = {(tuple(d % m for d in g.diag), tuple(g.perm)) for g in G.elements()}
    assert got == _all_elements(m, p, n)


def test_group_axioms():
    G = refl_group(3, 1, 2)
    els = G.elements()
    rng = random.Random(0)
    for _ in range(100):
        a, b, c = rng.choice(els), rng.choice(els), rng.choice(els)
        assert (a * b) * c == a * (b * c)
        assert a * a.inverse() == G.identity == a.inverse() * a
        assert (a * G.identity) == a


def test_element_validation():
    with pytest.raises(ValueError):
        ReflGroupElement.make(3, 3, 2, [1, 0])
    with pytest.raises(ValueError):
        ReflGroupElement.make(4, 3, 2)


@pytest.mark.parametrize("spec,family", [("G(2,1,2)", "affine:2"), ("G(3,3,2)", "weyl:2"), ("G(2,1,2)", "torus:2"),
                                         ("Sn:3", "weyl:3"), ("Gm:3,n:2", "affine:2")])
def test_action_axiom_and_automorphism(spec, family):
    G, kind = group_from_spec(spec), QAlgebraKind.from_spec(family)
    els = G.elements()
    rng = random.Random(hash(spec + family) % 997)
    for _ in range(40):
        g, h = rng.choice(els), rng.choice(els)
        u, v = rand_qa(rng, kind, 2, 2), rand_qa(rng, kind, 2, 2)
        assert act(g, act(h, u)) == act(g * h, u)
        assert act(g, u * v) == act(g, u) * act(g, v)
        assert act(G.identity, u) == u


def test_action_on_skew_and_gwa():
    rng = random.Random(4)
    G = refl_group(2, 1, 2)
    els = G.elements()
    for R in (qlga_action(2), weyl_gwa_action(2)):
        names = R.moved_variables + ("q",)
        for _ in range(20):
            g, h = rng.choice(els), rng.choice(els)
            u, v = rand_skew(rng, R, names, 2, 2, 1), rand_skew(rng, R, names, 2, 2, 1)
            assert act(g, act(h, u)) == act(g * h, u)
            assert act(g, act(h, u, True), True) == act(g * h, u, True)
    D = gwa_instance("Usl2").data
    C3 = cyclic_on_a1(3)
    for _ in range(20):
        g, h = rng.choice(C3.elements()), rng.choice(C3.elements())
        u, v = rand_gwa(rng, D, 2, 2, 1), rand_gwa(rng, D, 2, 2, 1)
        assert act(g, act(h, u)) == act(g * h, u)
        assert act(g, u * v) == act(g, u) * act(g, v)


def test_reynolds_examples():
    A2 = QAlgebraKind.from_spec("affine:2")
    x1 = A2.gen("x1")
    assert reynolds(refl_group(2, 1, 2), x1 ** 2).format() == "1/2*x1^2 + 1/2*x2^2"
    A1 = QAlgebraKind.from_spec("affine:1")
    assert reynolds(group_from_spec("Gm:2,n:1"), A1.gen("x")) == A1.zero()
    assert reynolds(group_from_spec("Gm:2,n:1"), A1.gen("x") ** 2) == A1.gen("x") ** 2


def test_transposition_example():
    W = QAlgebraKind.from_spec("weyl:2")
    (tau,) = symmetric_group(2).generators
    assert act(tau, W.gen("x1") * W.gen("y2")) == W.gen("x2") * W.gen("y1")


def test_reynolds_is_an_idempotent_projection():
    rng = random.Random(8)
    for spec, family in (("G(2,1,2)", "affine:2"), ("G(3,3,2)", "weyl:2"), ("Gm:2,n:2", "torus:2")):
        G, kind = group_from_spec(spec), QAlgebraKind.from_spec(family)
        for _ in range(15):
            u = rand_qa(rng, kind, 2, 3)
            r = reynolds(G, u)
            assert reynolds(G, r) == r
            assert all(act(g, r) == r for g in G.generators)


def _mono_action(g, family, a, b):
    """(image monomial, zeta exponent) computed on integer data only."""
    n = len(a)
    na, nb = [0] * n, [0] * n
    k = 0
    for i in range(n):
        na[g.perm[i]] = a[i]
        nb[g.perm[i]] = b[i]
        k += g.diag[i] * a[i] - (g.diag[i] * b[i] if family == "weyl" else 0)
    return (tuple(na), tuple(nb)), k % g.m


def _oracle_count(G, family, n, d):
    monos = []
    for total in range(d + 1):
        for a in itertools.product(range(total + 1), repeat=n):
            if sum(a) == total:
                for b in itertools.product(range(d - total + 1), repeat=n):
                    if sum(b) == d - total:
                        monos.append((a, b))
    seen, count = set(), 0
    for a, b in monos:
        if (a, b) in seen:
            continue
        orbit, trivial = set(), True
        for g in G.elements():
            img, k = _mono_action(g, family, a, b)
            orbit.add(img)
            trivial &= img != (a, b) or k == 0
        seen |= orbit
        count += trivial
    return count


@pytest.mark.parametrize("spec", ["G(2,1,2)", "G(3,3,2)", "Gm:2,n:2", "Gm:3,n:1", "Sn:2"])
@pytest.mark.parametrize("family", ["affine", "weyl"])
def test_invariant_dimension_oracle(spec, family):
    G = group_from_spec(spec)
    n = G.identity.n
    kind = QAlgebraKind.from_spec(f"{family}:{n}")
    for d in range(0, 6):
        dim = len(invariant_basis(G, kind, d))
        assert dim == _oracle_count(G, family, n, d) == orbit_invariant_count(G, kind, d)


@pytest.mark.parametrize("m", [2, 3])
@pytest.mark.parametrize("n", [1, 2])
def test_cyclic_closed_form(m, n):
    G = group_from_spec(f"Gm:{m},n:{n}")
    kind = QAlgebraKind.from_spec(f"affine:{n}")
    for d in range(9):
        assert len(invariant_basis(G, kind, d)) == affine_cyclic_count(m, n, d)


def test_invariant_basis_examples():
    A1 = QAlgebraKind.from_spec("affine:1")
    G = group_from_spec("Gm:2,n:1")
    assert [b.format() for b in invariant_basis(G, A1, 2)] == ["x^2", "y^2"]
    assert [b.format() for b in invariant_basis(G, A1, 0)] == ["1"]
    W2 = QAlgebraKind.from_spec("weyl:2")
    assert [b.format() for b in invariant_basis(symmetric_group(2), W2, 1)] == ["x1 + x2", "y1 + y2"]
    # sign changes on x_i force y_i to change sign too, so nothing of degree 1 survives
    assert invariant_basis(refl_group(2, 1, 2), W2, 1) == []
    T1 = QAlgebraKind.from_spec("torus:1")
    basis = invariant_basis(group_from_spec("Gm:3,n:1"), T1, -2, box=4)
    assert all(act(g, b) == b for b in basis for g in group_from_spec("Gm:3,n:1").generators)


def test_degree_bound():
    with pytest.raises(ValueError):
        invariant_basis(refl_group(2, 1, 1), QAlgebraKind.from_spec("affine:1"), 11)


def test_group_too_large():
    with pytest.raises(GroupTooLarge):
        refl_group(4, 1, 5, max_order=100).elements()
    with pytest.raises(GroupTooLarge):
        group_from_spec("G(3,1,4)", 50).order


def test_spec_parsing():
    assert group_from_spec("G(2,1,2)").order == 8
    assert group_from_spec('{"type": "G(m,p,n)", "m": 3, "p": 3, "n": 2}').order == 6
    assert group_from_spec({"type": "GmTensorN", "m": 2, "n": 3}).order == 8
    assert group_from_spec({"type": "Sn", "n": 3}).order == 6
    assert group_from_spec("cyclic-on-A1:4").order == 4
    assert group_from_spec({"type": "diagonal", "m": 6, "pairs": [[2, 0], [0, 3]]}).order == 6
    for bad in ("G(2,1)", "H(2,1,2)", "{oops", {"type": "nope"}, {"type": "Sn"}):
        with pytest.raises(ParseError):
            group_from_spec(bad)


def test_undefined_actions():
    W1 = QAlgebraKind.from_spec("weyl:1")
    with pytest.raises(UndefinedAction):
        act(DiagonalElement.make(3, [1], [0]), W1.gen("x"))
    A1 = QAlgebraKind.from_spec("affine:1")
    assert act(DiagonalElement.make(3, [1], [0]), A1.gen("x")) == cyclo_root(3) * A1.gen("x")
    with pytest.raises(UndefinedAction):
        act(refl_group(2, 1, 2).generators[0], W1.gen("x"))
    with pytest.raises(UndefinedAction):
        act(refl_group(2, 1, 2).generators[0], quantum_weyl_gwa(2).one())
    with pytest.raises(UndefinedAction):
        act(refl_group(2, 1, 1).generators[0], gwa_instance("QSO3").data.one())
    multi = QAlgebraKind.from_spec("affine:2:multi")
    with pytest.raises(UndefinedAction):
        act(symmetric_group(2).generators[0], multi.gen("x1"))
    with pytest.raises(UndefinedAction):
        act(refl_group(2, 1, 1).generators[0], 3)


def test_usl2_grading_action():
    D = gwa_instance("Usl2").data
    X, Y, H, C = D.gen("X"), D.gen("Y"), D.scalar(fvar("H")), D.scalar(fvar("C"))
    for m in (2, 3, 4):
        (g,) = cyclic_on_a1(m).generators
        assert act(g, C) == C and act(g, H) == H
        assert act(g, X) * act(g, Y) - act(g, Y) * act(g, X) == 2 * H
        assert act(g, X) != X
