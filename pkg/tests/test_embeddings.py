import random

import pytest

from qwalg.cyclo import Coeff
from qwalg.embeddings import (FailingRelation, GeneratorMap, Verified,
                              embed_mixed, embed_torus, format_generator_map,
                              parse_generator_map, verify_homomorphism,
                              weyl_lower_bound_witness)
from qwalg.mixed import CanonicalMixedAlgebra, eulerian_presentation
from qwalg.presentation import certified_system
from qwalg.qwa import parse_presentation
from qwalg.scalars import ScalarGroup
from qwalg.torus import QuantumTorus

LL2_TARGET = """\
scalars { free q }
generators w, y, u, v
relations {
  [w, y] = y
  u v = q * v u
}
"""

T21_SOURCE = """\
scalars { free q }
generators y1, y2, w1
relations {
  y1 y2 = q * y2 y1
  [w1, y1] = y1
}
"""


@pytest.fixture
def grp():
    return ScalarGroup(1, ("q",))


def test_identity_map_verifies(grp):
    p = parse_presentation(T21_SOURCE)
    sys = certified_system(p)
    gmap = GeneratorMap(p, sys, {g: sys.gen(g) for g in p.gens})
    assert isinstance(verify_homomorphism(gmap), Verified)


def test_two_variable_unbraiding_map():
    # y1 -> y u, y2 -> v, w1 -> w embeds the derivation presentation into the
    # tensor of a derivation pair with a quantum plane
    src = parse_presentation(T21_SOURCE)
    tgt = certified_system(parse_presentation(LL2_TARGET))
    gmap = GeneratorMap(src, tgt, {
        "y1": tgt.word("y", "u"),
        "y2": tgt.word("v"),
        "w1": tgt.word("w"),
    })
    res = verify_homomorphism(gmap)
    assert isinstance(res, Verified) and res.relations_checked == 3


def test_corrupted_map_fails_on_quantum_pair():
    src = parse_presentation(T21_SOURCE)
    tgt = certified_system(parse_presentation(LL2_TARGET))
    gmap = GeneratorMap(src, tgt, {
        "y1": tgt.word("y", "u"),
        "y2": tgt.word("u"),
        "w1": tgt.word("w"),
    })
    res = verify_homomorphism(gmap)
    assert isinstance(res, FailingRelation)
    assert res.pair == ("y1", "y2")
    assert not res.defect.is_zero()


def test_embed_torus_images_n3(grp):
    q = grp.free_gen("q")
    one = grp.one()
    lam = [[one, q, q], [q.inv(), one, q], [q.inv(), q.inv(), one]]
    t = QuantumTorus(grp, lam)
    gmap, field = embed_torus(t)
    sys = gmap.target
    assert gmap.images["y1"] == sys.word("u1_2", "u1_3")
    assert gmap.images["y2"] == sys.word("v1_2", "u2_3")
    assert gmap.images["y3"] == sys.word("v1_3", "v2_3")
    assert (field.m, field.n, field.t) == (0, 3, 0)


def test_embed_torus_commutative(grp):
    one = grp.one()
    t = QuantumTorus(grp, [[one, one], [one, one]])
    gmap, field = embed_torus(t)
    assert (field.m, field.n, field.t) == (0, 0, 2)


def test_embed_torus_plane(grp):
    q = grp.free_gen("q")
    one = grp.one()
    t = QuantumTorus(grp, [[one, q], [q.inv(), one]])
    gmap, field = embed_torus(t)
    assert (field.m, field.n, field.t) == (0, 1, 0)
    assert field.qs == (q,)


def test_embed_torus_sizes(grp):
    rng = random.Random(3)
    q = grp.free_gen("q")
    one = grp.one()
    for n in range(1, 5):
        lam = [[one for _ in range(n)] for _ in range(n)]
        for i in range(n):
            for j in range(i + 1, n):
                w = q.pow(rng.randrange(-1, 2))
                lam[i][j] = w
                lam[j][i] = w.inv()
        _, field = embed_torus(QuantumTorus(grp, lam))
        assert 2 * field.n + field.t == n * (n - 1)


def s(grp, n, r, weight_exp=1):
    q = grp.free_gen("q", weight_exp)
    one = grp.one()
    lam = [[one for _ in range(n)] for _ in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            lam[i][j] = q
            lam[j][i] = q.inv()
    return CanonicalMixedAlgebra(grp, n, r, lam)


def test_embed_mixed_s21(grp):
    gmap, field = embed_mixed(s(grp, 2, 1))
    assert (field.m, field.n, field.t) == (1, 1, 0)


def test_embed_mixed_s22(grp):
    gmap, field = embed_mixed(s(grp, 2, 2))
    assert (field.m, field.n, field.t) == (2, 1, 0)
    assert 2 * field.m == 2 * 2  # target w-infdeg equals twice the pair count


def test_embed_mixed_torus_case(grp):
    gmap, field = embed_mixed(s(grp, 2, 0))
    assert field.m == 0
    assert (field.n, field.t) == (1, 0)


def test_embed_mixed_bounds_grid(grp):
    for n in (1, 2, 3):
        for r in range(n + 1):
            gmap, field = embed_mixed(s(grp, n, r))
            assert field.m == r
            if (n, r) == (1, 0):
                # the commutative line: one central variable, outside the bound
                assert (field.n, field.t) == (0, 1)
            else:
                assert n * (n - 1) <= 2 * field.n + field.t <= n * (n - 1) + r


def test_weyl_witness_s11(grp):
    gmap = weyl_lower_bound_witness(s(grp, 1, 1))
    assert isinstance(verify_homomorphism(gmap), Verified)


def test_weyl_witness_s22(grp):
    gmap = weyl_lower_bound_witness(s(grp, 2, 2))
    res = verify_homomorphism(gmap)
    assert isinstance(res, Verified)
    assert res.relations_checked == 6  # all pairs of the A_2 presentation


def test_weyl_witness_n3_r2(grp):
    gmap = weyl_lower_bound_witness(s(grp, 3, 2))
    assert isinstance(verify_homomorphism(gmap), Verified)


def test_composition_of_verified_maps(grp):
    # substitute one verified map into another and verify the composite
    src = parse_presentation(T21_SOURCE)
    tgt = certified_system(parse_presentation(LL2_TARGET))
    first = GeneratorMap(src, tgt, {
        "y1": tgt.word("y", "u"),
        "y2": tgt.word("v"),
        "w1": tgt.word("w"),
    })
    ident = {g: tgt.gen(g) for g in ("w", "y", "u", "v")}

    def substitute(el, images, sys):
        out = sys.one().scale(Coeff.from_rational(sys.ring, 0))
        for word, coeff in el.terms.items():
            acc = sys.one().scale(coeff)
            for letter in word:
                acc = sys.multiply(acc, images[tgt.letters[letter]])
            out = out.add(acc)
        return out

    composite = GeneratorMap(src, tgt, {
        g: substitute(first.images[g], ident, tgt) for g in src.gens})
    assert isinstance(verify_homomorphism(composite), Verified)


def test_map_serialization_roundtrip():
    src = parse_presentation(T21_SOURCE)
    tgt = certified_system(parse_presentation(LL2_TARGET))
    gmap = GeneratorMap(src, tgt, {
        "y1": tgt.word("y", "u"),
        "y2": tgt.word("v"),
        "w1": tgt.word("w"),
    })
    text = format_generator_map(gmap)
    back = parse_generator_map(text, src, tgt)
    for g in src.gens:
        assert back.images[g] == gmap.images[g]
