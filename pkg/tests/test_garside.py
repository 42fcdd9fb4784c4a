import itertools
import random

import pytest
from hypothesis import given, settings, strategies as st

from eerbraid import garside
from eerbraid.garside import (
    NormalForm, SimpleLattice, conjugate_test, cycling, decycling, delta, equal, left_divides, left_gcd,
    normal_form, parse_normal_form, positive_equal, right_divides, right_lcm, simples,
    super_summit_representative,
)
from eerbraid.presentation import inverse, presentation
from eerbraid.reversing import complement_table, reverse


def test_delta_words():
    P = presentation(3, 3)
    assert P.format(delta(P)) == "t(0;1) t(0;0) a(0,1)"
    P = presentation(2, 2)
    assert P.format(delta(P)) == "t(0;1) t(0;0)"
    for e, r in [(2, 5), (4, 4)]:
        assert len(delta(presentation(e, r))) == r


def test_prefix_divides_delta():
    P = presentation(3, 4)
    D = delta(P)
    ok, rest = left_divides(P, (P.s(0, 1),), D)
    assert ok and rest == D[1:]
    assert left_divides(P, (P.s(0, 0),), D)[0]


@pytest.mark.parametrize("e,r", [(2, 3), (3, 3), (3, 4)])
def test_every_generator_divides_delta(e, r):
    P = presentation(e, r)
    D = delta(P)
    for g in P.letters():
        ok, c = left_divides(P, (g,), D)
        assert ok and positive_equal(P, (g,) + c, D)
        ok, c = right_divides(P, (g,), D)
        assert ok and positive_equal(P, c + (g,), D)


def test_lcm_examples():
    P = presentation(3, 3)
    a1, a0 = P.s(0, 1), P.s(0, 0)
    assert positive_equal(P, right_lcm(P, (a1,), (a0,)), (a1, a0))
    for g in P.letters():
        assert right_lcm(P, (g,), (g,)) == (g,)


@pytest.mark.parametrize("e,r", [(2, 3), (3, 3), (2, 4), (3, 4)])
def test_lcm_of_atoms_is_delta(e, r):
    P = presentation(e, r)
    acc = (1,)
    for g in list(P.letters())[1:]:
        acc = right_lcm(P, acc, (g,))
    assert positive_equal(P, acc, delta(P))


@pytest.mark.parametrize("e,r,count", [
    (2, 2, 4), (3, 2, 5), (6, 2, 8), (3, 3, 18), (2, 3, 14), (2, 4, 50), (3, 4, 65), (4, 3, 22),
])
def test_simple_counts(e, r, count):
    lat = simples(e, r)
    assert len(lat) == count
    assert lat.words[0] == () and lat.lookup(delta(lat.pres)) == lat.delta_id


def test_left_and_right_divisors_agree():
    P = presentation(3, 3)
    lat = simples(3, 3)
    right = garside.enumerate_right_divisors(P)
    assert len(right) == len(lat)
    assert {lat.lookup(w) for w in right} == set(range(len(lat)))


def test_canonical_words_are_lex_least():
    P = presentation(3, 3)
    lat = simples(3, 3)
    for w in lat.words:
        same = [x for x in itertools.product(P.letters(), repeat=len(w)) if positive_equal(P, x, w)]
        assert min(same) == w


def test_lattice_tables():
    lat = simples(3, 3)
    D = lat.delta_id
    for s in range(len(lat)):
        assert lat.meet(s, D) == s and lat.join(s, 0) == s
        t = int(lat.comp[s])
        assert positive_equal(lat.pres, lat.words[s] + lat.words[t], lat.words[D])


def test_lattice_cache_roundtrip(tmp_path):
    lat = simples(2, 3)
    text = lat.dump()
    assert text.splitlines()[0] == "2 3 14"
    again = SimpleLattice.load(text, lat.pres)
    assert again.words == lat.words
    with pytest.raises(ValueError):
        SimpleLattice.load("3 3 14\n", lat.pres)
    with pytest.raises(ValueError):
        SimpleLattice.load("2 3 99\n" + "\n".join(text.splitlines()[1:]), lat.pres)


def test_gcd_examples():
    P = presentation(3, 3)
    a = P.s
    w = (a(0, 1), a(0, 0))
    assert positive_equal(P, left_gcd(P, w, w), w)
    assert positive_equal(P, left_gcd(P, w, (a(0, 0), a(0, 2))), w)


def test_gcd_lcm_absorption():
    P = presentation(3, 3)
    rng = random.Random(4)
    letters = list(P.letters())
    for _ in range(60):
        u = tuple(rng.choice(letters) for _ in range(rng.randint(0, 4)))
        v = tuple(rng.choice(letters) for _ in range(rng.randint(0, 4)))
        m = right_lcm(P, u, v)
        assert left_divides(P, v, m)[0]
        assert positive_equal(P, left_gcd(P, u, m), u)


def test_normal_form_examples():
    P = presentation(3, 3)
    lat = simples(3, 3)
    assert normal_form(P, ()) == NormalForm(3, 3, 0, ())
    assert normal_form(P, delta(P)) == NormalForm(3, 3, 1, ())
    nf = normal_form(P, (P.s(0, 0), P.s(0, 2)))
    assert nf.k == 0 and nf.factors == (lat.lookup((P.s(0, 1), P.s(0, 0))),)
    assert normal_form(P, inverse(delta(P))).k == -1


def test_equal_examples():
    P = presentation(3, 3)
    lhs = (P.a(0, 1),) + P.t(1)
    rhs = P.t(0) + (P.a(0, 1),)
    assert equal(P, lhs, rhs)
    assert not equal(P, (P.s(0, 0),), (P.s(0, 1),))
    assert equal(P, lhs + inverse(rhs), ())


@pytest.mark.parametrize("e,r", [(2, 3), (3, 3), (2, 4)])
def test_delta_twists_by_bar(e, r):
    P = presentation(e, r)
    D = delta(P)
    assert equal(P, P.rho(D), D)
    for g in P.letters():
        assert equal(P, (g,) + D, D + P.bar((g,)))


letters33 = st.integers(1, 8).flatmap(lambda x: st.sampled_from([x, -x]))


@settings(max_examples=150, deadline=None)
@given(st.lists(letters33, max_size=10))
def test_normal_form_invariants(word):
    P = presentation(3, 3)
    w = tuple(word)
    nf = normal_form(P, w)
    assert normal_form(P, nf.word()) == nf
    assert parse_normal_form(P, nf.render()) == nf
    assert P.nu(nf.word()) == P.nu(w)
    assert sum(len(x) for x in nf.factor_words()) + nf.k * 3 == sum(1 if x > 0 else -1 for x in w)
    lat = nf.lattice
    assert all(s not in (0, lat.delta_id) for s in nf.factors)


@settings(max_examples=100, deadline=None)
@given(st.lists(st.integers(1, 8), max_size=6), st.lists(st.integers(1, 8), max_size=6))
def test_equal_matches_two_way_reversing(u, v):
    P = presentation(3, 3)
    table = complement_table(3, 3)
    u, v = tuple(u), tuple(v)
    both = not reverse(inverse(u) + v, table).result and not reverse(inverse(v) + u, table).result
    assert equal(P, u, v) == both


def test_cycling_and_decycling_conjugate():
    P = presentation(3, 3)
    rng = random.Random(1)
    for _ in range(20):
        w = tuple(rng.choice([1, 2, 3, 4, 5, 6, 7, 8, -1, -5]) for _ in range(6))
        nf = normal_form(P, w)
        for op in (cycling, decycling, super_summit_representative):
            assert conjugate_test(P, nf.word(), op(nf).word()).verdict is True


def test_super_summit_representative_bounds():
    P = presentation(3, 3)
    w = (P.s(0, 0),) + delta(P) + (P.a(1, 0),)
    rep = super_summit_representative(normal_form(P, w))
    nf = normal_form(P, w)
    assert rep.inf >= nf.inf and rep.sup <= nf.sup


def test_conjugacy_examples():
    P = presentation(3, 3)
    assert conjugate_test(P, (P.s(0, 0),), (P.s(0, 1),)).verdict is True
    res = conjugate_test(P, delta(P), delta(P))
    assert res.verdict is True and res.explored == 1
    assert conjugate_test(P, (1, 2), (1,)).verdict is False
    rng = random.Random(7)
    for _ in range(10):
        w = tuple(rng.choice([1, 2, 3, 4, 5, 6, 7, 8, -2]) for _ in range(5))
        g = rng.choice(list(P.letters()))
        assert conjugate_test(P, w, (-g,) + w + (g,)).verdict is True


def test_conjugacy_budget_gives_indeterminate():
    P = presentation(3, 3)
    w = (P.a(0, 1), P.a(0, 1))
    x = (P.a(0, 1), P.a(1, 0))
    assert conjugate_test(P, w, x, budget=1).status == "indeterminate"
    assert conjugate_test(P, w, x).status == "no"
