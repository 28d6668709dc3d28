import random

import pytest

from _rand import rand_qa
from qgalois.errors import MissingImage, UndefinedAction
from qgalois.groups import act, refl_group, symmetric_group
from qgalois.quantum import QAlgebraKind
from qgalois.skew import ZN, qlga_action
from qgalois.ratfunc import fvar
from qgalois.verify import GenMap, NCPoly, Presentation, apply_map, certify_equivariance, certify_hom, eval_word

q = fvar("q")


def _affine_into_skew(n):
    kind = QAlgebraKind.from_spec(f"affine:{n}")
    pres = Presentation.from_strings(kind.presentation_generators(), kind.presentation_relations())
    R = qlga_action(n, ZN)
    gens = pres.generators
    images = {}
    # x_i -> x_i, y_i -> eps_i, so y_i x_i = eps_i(x_i) eps_i = q x_i y_i
    for i in range(n):
        images[gens[i]] = R.scalar(fvar(f"x{i + 1}"))
        images[gens[n + i]] = R.eps(i)
    return kind, pres, GenMap(pres, R, images)


def test_free_algebra_words():
    pres = Presentation.from_strings(("a", "b"), ("a*b - b*a",))
    w = pres.free.parse("a*b + 2*b^2*a")
    assert isinstance(w, NCPoly)
    assert w.letters() == {"a", "b"}
    assert pres.free.parse(w.format()) == w
    assert w * pres.free.one() == w
    assert w - w == pres.free.scalar(0)


def test_eval_word_is_multiplicative():
    rng = random.Random(6)
    kind, pres, gm = _affine_into_skew(2)
    assert certify_hom(gm).passed
    for _ in range(40):
        u, v = rand_qa(rng, kind, 2, 2), rand_qa(rng, kind, 2, 2)
        assert apply_map(gm, u * v) == apply_map(gm, u) * apply_map(gm, v)
        w1, w2 = pres.free.parse("x1*y1 + q*y2"), pres.free.parse("y1^2*x2")
        assert eval_word(w1 * w2, gm) == eval_word(w1, gm) * eval_word(w2, gm)


def test_wrong_images_fail():
    kind, pres, gm = _affine_into_skew(1)
    R = gm.target
    bad = GenMap(pres, R, {"x": R.scalar(fvar("x1")), "y": R.eps(0, -1)})
    cert = certify_hom(bad)
    assert not cert.passed and cert.failures()
    assert cert.to_json()["passed"] is False


def test_missing_image():
    kind, pres, gm = _affine_into_skew(1)
    partial = GenMap(pres, gm.target, {"x": gm.images["x"]})
    with pytest.raises(MissingImage):
        certify_hom(partial)


def test_presentation_validation():
    with pytest.raises(ValueError):
        Presentation.from_strings(("a", "a"), ())
    with pytest.raises(ValueError):
        Presentation.from_strings(("a",), ("a - a",))


def _source_act(family):
    kind = QAlgebraKind.from_spec(family)
    return lambda g, name: act(g, kind.gen(name))


def test_trivial_group_equivariance():
    kind, pres, gm = _affine_into_skew(2)
    e = refl_group(1, 1, 2).identity
    cert = certify_equivariance(gm, [e], _source_act("affine:2"), lambda g, u: act(g, u))
    assert cert.passed


def test_equivariance_and_twisted_control():
    kind, pres, gm = _affine_into_skew(2)
    G = refl_group(2, 1, 2)
    src = _source_act("affine:2")
    assert certify_equivariance(gm, G.generators, src, lambda g, u: act(g, u)).passed
    assert not certify_equivariance(gm, G.generators, src, lambda g, u: act(g, u, True)).passed


def test_undefined_action_in_certificate():
    kind, pres, gm = _affine_into_skew(2)

    def src(g, name):
        raise KeyError(name)

    with pytest.raises(UndefinedAction):
        certify_equivariance(gm, symmetric_group(2).generators, src, lambda g, u: u)
