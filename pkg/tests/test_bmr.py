import pytest

from eerbraid import garside
from eerbraid.bmr import (
    alt, b_generator, beta, bmr_relation_list, bmr_relations, format_bmr, noncancel_witness,
    nofinite_witnesses, parse_bmr, phi, rewrites_over, verify_alpharot, verify_b_relations, verify_phi,
)
from eerbraid.presentation import Long, Params, Short, WordSyntaxError, presentation


def test_alt():
    assert alt(2, 1, 3) == (2, 1, 2)
    assert alt(2, 1, 0) == ()


def test_grammar_roundtrip():
    w = parse_bmr("T2P T3~ T2 T4", 4)
    assert w == (1, -3, 2, 4)
    assert format_bmr(w) == "T2P T3~ T2 T4"
    with pytest.raises(WordSyntaxError):
        parse_bmr("T2 T5", 4)
    with pytest.raises(WordSyntaxError):
        parse_bmr("T2 X", 4)


def test_relations_e2_r3():
    rels = bmr_relation_list(Params(2, 3))
    assert ((2, 1), (1, 2)) in rels
    # no pair of taus is two apart when r = 3
    assert not [x for x in rels if len(x[0]) == 2 and 3 in x[0]]


def test_relations_r5():
    rels = set(bmr_relation_list(Params(3, 5)))
    assert ((2, 4), (4, 2)) in rels and ((1, 5), (5, 1)) in rels
    assert ((3, 4, 3), (4, 3, 4)) in rels and ((1, 3, 1), (3, 1, 3)) in rels
    assert ((2, 1, 2), (1, 2, 1)) in rels
    assert ((1, 3), (3, 1)) not in rels
    assert all(len(u) == len(v) for u, v in rels)


def test_phi_letters():
    P = presentation(3, 4)
    assert phi((3,), P) == (P.a(0, 1),)
    assert phi((2, 1, -4), P) == (P.s(0, 1), P.s(0, 0), -P.a(1, 2))


@pytest.mark.parametrize("e,r", [(2, 3), (3, 3), (3, 4), (2, 2)])
def test_phi_beta_is_delta(e, r):
    P = presentation(e, r)
    assert phi(beta(Params(e, r)), P) == garside.delta(P)


def test_b_generator_shapes():
    params = Params(3, 3)
    assert b_generator(Short(0, 0), params) == (1,)
    assert b_generator(Long(0, 1), params) == (3,)
    assert b_generator(Short(0, 1), params) == (2,)
    assert b_generator(Short(0, 2), params) == (2, 1, -2)


@pytest.mark.parametrize("e,r", [(2, 3), (3, 3), (4, 3), (3, 4)])
def test_phi_well_defined_and_onto(e, r):
    rep = verify_phi(Params(e, r))
    assert rep.ok, rep.render()


@pytest.mark.parametrize("e,r", [(2, 3), (3, 3), (3, 4), (4, 4)])
def test_alpharot(e, r):
    rep = verify_alpharot(Params(e, r))
    assert rep.ok, rep.render()


@pytest.mark.parametrize("e,r", [(2, 3), (3, 3)])
def test_b_words_satisfy_relations(e, r):
    rep = verify_b_relations(Params(e, r))
    assert rep.ok, rep.render()


@pytest.mark.parametrize("e", [3, 4])
def test_noncancel_witness(e):
    w = noncancel_witness(e)
    assert w.ok and w.a == (2,)
    assert len(w.u) + 1 == e + 4


def test_noncancel_witness_e3_words():
    w = noncancel_witness(3)
    assert w.u == (1, 3, 2, 1, 3, 2) and w.v == (3, 2, 1, 3, 2, 1)
    assert w.class_u == (w.u,)


def test_noncancel_e2_collapses():
    w = noncancel_witness(2)
    assert w.group_equal and w.joined
    assert not w.distinct and not w.ok


def test_bmr_relations_system():
    sys = bmr_relations(Params(3, 3))
    assert sys.alphabet == (1, 2, 3)


def test_rewrites_over():
    P = presentation(3, 3)
    assert rewrites_over((3, 2, 1, 3), (1, 2, 3), P) == [(3, 2, 1, 3)]
    # 2 1 = 1 b_0^(2) is not spelled over the three letters, but 1 2 1 = 2 1 2 is
    assert rewrites_over((1, 2, 1), (1, 2), P) == [(1, 2, 1), (2, 1, 2)]


def test_nofinite_e3():
    rep = nofinite_witnesses(3, 3)
    assert rep.ok, rep.probes.render()
    assert [row.bmr_equal for row in rep.rows] == [True, False, False]
    assert all(row.group_equal for row in rep.rows)
