import random

import pytest

from _rand import rand_gwa, rand_qa
from qgalois.errors import DataMismatch, UnknownInstance
from qgalois.gwa import INSTANCE_NAMES, GwaData, gwa_embed, gwa_instance, quantum_weyl_gwa
from qgalois.quantum import QAlgebraKind
from qgalois.ratfunc import field, fvar
from qgalois.verify import GenMap, Presentation, certify_hom

q, h, s, H, C = fvar("q"), fvar("h"), fvar("s"), fvar("H"), fvar("C")


def test_weyl_gwa_examples():
    D = quantum_weyl_gwa(1)
    X, Y = D.gen("X"), D.gen("Y")
    assert Y * X == D.scalar(h)
    assert X * Y == D.scalar((h - 1) / q)
    assert Y * X - q * X * Y == D.one()
    assert X * h == D.word((1,), (h - 1) / q)
    assert Y ** 2 * X ** 2 == D.scalar(h * (q * h + 1))
    assert (Y ** 2 * X ** 2).format() == "h^2*q + h"


@pytest.mark.parametrize("name", INSTANCE_NAMES)
def test_defining_products(name):
    data = gwa_instance(name).data
    for i in range(data.rank):
        X, Y = data.X(i), data.Y(i)
        assert Y * X == data.scalar(data.a[i])
        assert X * Y == data.scalar(data.sigma(i, 1, data.a[i]))
        for d in map(fvar, data.base_vars):
            assert X * d == data.scalar(data.sigma(i, 1, d)) * X
            assert Y * d == data.scalar(data.sigma(i, -1, d)) * Y


@pytest.mark.parametrize("name", INSTANCE_NAMES)
def test_instances_certify(name):
    inst = gwa_instance(name)
    assert inst.certificate().passed
    assert inst.to_json()["name"] == name


def test_usl2_brackets():
    D = gwa_instance("Usl2").data
    X, Y, Hh = D.gen("X"), D.gen("Y"), D.scalar(H)
    assert X * Y - Y * X == 2 * Hh
    assert Hh * X - X * Hh == X
    assert Hh * Y - Y * Hh == -Y
    # Casimir
    assert Hh * (Hh + 1) + Y * X == D.scalar(C)


def test_sphere_and_qso3_commutation():
    D = gwa_instance("QuantumSphere").data
    X, Y, Hh = D.gen("X"), D.gen("Y"), D.scalar(H)
    assert X * Hh == s ** 2 * Hh * X
    assert Y * Hh == (1 / s ** 2) * Hh * Y
    c, d = fvar("c"), fvar("d")
    assert s * X * Y == -(c - s ** 2 * H) * (d + s ** 2 * H) * D.one()
    assert s * Y * X == -(c - H) * (d + H) * D.one()
    D = gwa_instance("QSO3").data
    X, Hh = D.gen("X"), D.scalar(H)
    assert X * Hh == q ** 2 * Hh * X
    assert X * C == C * X


def test_literal_sphere_relation_fails():
    # the square-root-free reading of XY with a = -(c-H)(d+H)/s does not hold
    D = gwa_instance("QuantumSphere").data
    c, d = fvar("c"), fvar("d")
    assert D.gen("X") * D.gen("Y") != -(c - H) * (d + H) / s * D.one()


def test_unknown_instance():
    with pytest.raises(UnknownInstance):
        gwa_instance("Virasoro")


def test_data_mismatch():
    with pytest.raises(DataMismatch):
        quantum_weyl_gwa(1).one() * gwa_instance("Usl2").data.one()


def test_create_validates():
    with pytest.raises(ValueError):
        GwaData.create(["t"], [{"t": "t+1"}], [{"t": "t-1"}], ["0"])
    with pytest.raises(ValueError):
        GwaData.create(["t"], [{"t": "t+1"}], [{"t": "t-1"}], ["1/t"])


@pytest.mark.parametrize("name", INSTANCE_NAMES)
def test_associativity_sample(name):
    data = gwa_instance(name).data
    rng = random.Random(len(name))
    for _ in range(40):
        u, v, w = (rand_gwa(rng, data, 2, 2, 1) for _ in range(3))
        assert (u * v) * w == u * (v * w)


def test_embedding_is_multiplicative():
    rng = random.Random(9)
    for data in (quantum_weyl_gwa(1), quantum_weyl_gwa(2), gwa_instance("Usl2").data):
        for _ in range(40):
            u, v = rand_gwa(rng, data, 2, 2, 1), rand_gwa(rng, data, 2, 2, 1)
            assert gwa_embed(u * v) == gwa_embed(u) * gwa_embed(v)
            assert gwa_embed(u + v) == gwa_embed(u) + gwa_embed(v)


def test_embedding_images():
    D = quantum_weyl_gwa(1)
    R = D.skew_ring()
    assert gwa_embed(D.gen("X")) == R.eps(0)
    assert gwa_embed(D.gen("Y")) == R.monomial((-1,), h)
    assert gwa_embed(D.gen("Y") * D.gen("X")) == R.scalar(h)


def test_literal_inverse_embedding_fails():
    # y -> h^-1 eps^-1 breaks y x - q x y = 1 while y -> h eps^-1 satisfies it
    D = quantum_weyl_gwa(1)
    R = D.skew_ring()
    pres = Presentation.from_strings(("x", "y"), ("y*x - q*x*y - 1",))
    good = GenMap(pres, R, {"x": R.eps(0), "y": R.monomial((-1,), h)})
    bad = GenMap(pres, R, {"x": R.eps(0), "y": R.monomial((-1,), 1 / h)})
    assert certify_hom(good).passed
    assert not certify_hom(bad).passed


def _to_gwa(u, D):
    return sum((D.scalar(c) * D.X(0, a[0]) * D.Y(0, b[0]) for (a, b), c in u.terms.items()), D.zero())


def test_two_engines_agree():
    # quantum Weyl normal form mapped to the GWA, x -> X, y -> Y
    W = QAlgebraKind.from_spec("weyl:1")
    D = quantum_weyl_gwa(1)
    rng = random.Random(23)
    for _ in range(80):
        u, v = rand_qa(rng, W, 4, 3), rand_qa(rng, W, 4, 3)
        assert _to_gwa(u * v, D) == _to_gwa(u, D) * _to_gwa(v, D)


def test_text_and_json_round_trip():
    rng = random.Random(2)
    for name in INSTANCE_NAMES:
        data = gwa_instance(name).data
        for _ in range(20):
            u = rand_gwa(rng, data)
            assert data.parse(u.format()) == u
            assert data.from_json(u.to_json()) == u


def test_powers():
    D = quantum_weyl_gwa(1)
    X, Y = D.gen("X"), D.gen("Y")
    assert X ** 3 == D.X(0, 3)
    assert X ** 2 * Y ** 2 == D.scalar((h - 1) * (h - 1 - q) / q ** 3)
    assert X ** 0 == D.one()
    assert field(2) * X == X + X
