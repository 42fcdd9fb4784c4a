"""Garside structure: Delta, divisibility, the lattice of simples, normal forms and conjugacy."""

from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from . import kernels
from .presentation import Presentation, Word, inverse, presentation
from .reversing import (
    TERMINATED, complement_table, left_complement_table, left_reverse, reverse,
)

DEFAULT_SIZE_GUARD = 10**6


class Indeterminate(RuntimeError):
    """A reversing or search budget ran out before an answer was reached."""


class ResourceLimit(RuntimeError):
    pass


def delta(pres: Presentation) -> Word:
    """a_0^(1) a_0^(0) a_01 a_12 ... a_{n-2,n-1}."""
    return pres.t(0) + pres.binom(pres.n - 1, 0)


def _rev(pres: Presentation, word: Sequence[int], step_limit: int | None):
    res = reverse(word, complement_table(pres.e, pres.r), step_limit)
    if res.status != TERMINATED:
        raise Indeterminate(f"reversing did not finish within {step_limit} steps")
    return res


def left_divides(pres: Presentation, a: Sequence[int], w: Sequence[int],
                 step_limit: int | None = None) -> tuple[bool, Word]:
    """Is ``a`` a prefix of ``w``?  On success also return ``c`` with ``a c = w``."""
    res = _rev(pres, inverse(a) + tuple(w), step_limit)
    return (not res.negative, res.positive)


def right_divides(pres: Presentation, a: Sequence[int], w: Sequence[int],
                  step_limit: int | None = None) -> tuple[bool, Word]:
    """Is ``a`` a suffix of ``w``?  On success also return ``c`` with ``c a = w``."""
    res = left_reverse(tuple(w) + inverse(a), left_complement_table(pres.e, pres.r), step_limit)
    if res.status != TERMINATED:
        raise Indeterminate("left reversing did not finish")
    return (not res.negative, res.positive)


def right_lcm(pres: Presentation, u: Sequence[int], v: Sequence[int], step_limit: int | None = None) -> Word:
    res = _rev(pres, inverse(u) + tuple(v), step_limit)
    return tuple(u) + res.positive


def positive_equal(pres: Presentation, u: Sequence[int], v: Sequence[int], step_limit: int | None = None) -> bool:
    if len(u) != len(v):
        return False
    return not _rev(pres, inverse(u) + tuple(v), step_limit).result


def left_gcd(pres: Presentation, u: Sequence[int], v: Sequence[int], step_limit: int | None = None) -> Word:
    g: list[int] = []
    u, v = tuple(u), tuple(v)
    while u and v:
        for a in pres.letters():
            ok_u, qu = left_divides(pres, (a,), u, step_limit)
            if not ok_u:
                continue
            ok_v, qv = left_divides(pres, (a,), v, step_limit)
            if ok_v:
                g.append(a)
                u, v = qu, qv
                break
        else:
            break
    return tuple(g)


def canonical_word(pres: Presentation, w: Sequence[int]) -> Word:
    """Lex-least word of the element ``w``: repeatedly peel the smallest atom dividing it."""
    out: list[int] = []
    w = tuple(w)
    while w:
        for a in pres.letters():
            ok, rest = left_divides(pres, (a,), w)
            if ok:
                out.append(a)
                w = rest
                break
    return tuple(out)


# -- simples -------------------------------------------------------------------


class SimpleLattice:
    """The divisors of Delta, numbered with 0 for the empty word.

    ``words[s]`` is the lex-least word of simple ``s``.  Tables:
    ``mul[s, c]`` is ``s`` times generator ``c`` (0-based) or -1,
    ``lquot[c, s]`` is ``c~ s`` when ``c`` left-divides ``s`` or -1,
    ``comp[s]`` is the simple ``t`` with ``s t = Delta``.
    """

    def __init__(self, pres: Presentation, words: Sequence[Word]):
        self.pres = pres
        self.words = tuple(words)
        self.index = {w: k for k, w in enumerate(self.words)}
        self._buckets: dict = {}
        for k, w in enumerate(self.words):
            self._buckets.setdefault(self._key(w), []).append(k)
        self.delta = delta(pres)
        self.delta_id = self.lookup(self.delta)
        if self.words[0] != () or self.delta_id is None:
            raise ValueError("simple list must start with the empty word and contain Delta")
        size, natoms = len(self.words), pres.size
        self.mul = np.full((size, natoms), -1, np.int64)
        self.lquot = np.full((natoms, size), -1, np.int64)
        self.comp = np.full(size, -1, np.int64)
        for s, w in enumerate(self.words):
            for c in range(natoms):
                cand = w + (c + 1,)
                ok, _ = left_divides(pres, cand, self.delta)
                if ok:
                    self.mul[s, c] = self._must(cand)
                if w:
                    ok, rest = left_divides(pres, (c + 1,), w)
                    if ok:
                        self.lquot[c, s] = self._must(rest)
            ok, rest = left_divides(pres, w, self.delta)
            if not ok:
                raise ValueError(f"{pres.format(w)} does not divide Delta")
            self.comp[s] = self._must(rest)

    def _key(self, w: Word):
        return len(w), self.pres.nu(w)

    def lookup(self, w: Sequence[int]) -> int | None:
        """Id of the simple equal to the positive word ``w``, or None."""
        w = tuple(w)
        if w in self.index:
            return self.index[w]
        for k in self._buckets.get(self._key(w), ()):
            if positive_equal(self.pres, self.words[k], w):
                return k
        return None

    def _must(self, w: Word) -> int:
        k = self.lookup(w)
        if k is None:
            raise ValueError(f"{self.pres.format(w)} divides Delta but was not enumerated")
        return k

    def __len__(self) -> int:
        return len(self.words)

    def __iter__(self):
        return iter(self.words)

    @property
    def eps_id(self) -> int:
        return 0

    def atom(self, letter: int) -> int:
        return int(self.mul[0, letter - 1])

    def meet(self, s: int, t: int) -> int:
        return self._must(left_gcd(self.pres, self.words[s], self.words[t]))

    def join(self, s: int, t: int) -> int:
        return self._must(right_lcm(self.pres, self.words[s], self.words[t]))

    def left_divisor_ids(self, t: int) -> set[int]:
        """All simples ``s`` with ``s`` a prefix of ``t``."""
        out, todo = {0}, [0]
        while todo:
            s = todo.pop()
            for c in range(self.pres.size):
                sc = int(self.mul[s, c])
                if sc >= 0 and sc not in out and left_divides(self.pres, self.words[sc], self.words[t])[0]:
                    out.add(sc)
                    todo.append(sc)
        return out

    # cache file: "e r count" then one word per line
    def dump(self) -> str:
        lines = [f"{self.pres.e} {self.pres.r} {len(self)}"]
        lines += [self.pres.format(w) for w in self.words]
        return "\n".join(lines) + "\n"

    @classmethod
    def load(cls, text: str, pres: Presentation) -> "SimpleLattice":
        lines = text.splitlines()
        try:
            e, r, count = (int(x) for x in lines[0].split())
        except (IndexError, ValueError):
            raise ValueError("cache header must be 'e r count'") from None
        if (e, r) != (pres.e, pres.r):
            raise ValueError(f"cache is for e={e} r={r}, not e={pres.e} r={pres.r}")
        words = [pres.parse(x) for x in lines[1:1 + count]]
        if len(words) != count:
            raise ValueError(f"cache announces {count} simples but holds {len(words)}")
        return cls(pres, words)


def enumerate_left_divisors(pres: Presentation, size_guard: int = DEFAULT_SIZE_GUARD) -> list[Word]:
    """Left divisors of Delta by breadth-first search, each as its lex-least word, sorted by (length, word)."""
    D = delta(pres)
    level: list[Word] = [()]
    out: list[Word] = [()]
    while level:
        found: dict = {}
        order: list[Word] = []
        for w in level:  # level is sorted, so the first word found per class is the least
            for c in pres.letters():
                cand = w + (c,)
                if not left_divides(pres, cand, D)[0]:
                    continue
                key = pres.nu(cand)
                bucket = found.setdefault(key, [])
                if any(positive_equal(pres, x, cand) for x in bucket):
                    continue
                bucket.append(cand)
                order.append(cand)
                if len(out) + len(order) > size_guard:
                    raise ResourceLimit(f"more than {size_guard} simples")
        level = sorted(order)
        out += level
    return out


def enumerate_right_divisors(pres: Presentation, size_guard: int = DEFAULT_SIZE_GUARD) -> list[Word]:
    """Right divisors of Delta, found by prepending generators and tested by left reversing."""
    D = delta(pres)
    level: list[Word] = [()]
    out: list[Word] = [()]
    while level:
        found: dict = {}
        nxt: list[Word] = []
        for w in level:
            for c in pres.letters():
                cand = (c,) + w
                if not right_divides(pres, cand, D)[0]:
                    continue
                bucket = found.setdefault(pres.nu(cand), [])
                if any(positive_equal(pres, x, cand) for x in bucket):
                    continue
                bucket.append(cand)
                nxt.append(cand)
                if len(out) + len(nxt) > size_guard:
                    raise ResourceLimit(f"more than {size_guard} simples")
        level = nxt
        out += level
    return out


_lattices: dict = {}


def simples(e: int, r: int, size_guard: int = DEFAULT_SIZE_GUARD) -> SimpleLattice:
    key = (e, r)
    if key not in _lattices:
        pres = presentation(e, r)
        _lattices[key] = SimpleLattice(pres, enumerate_left_divisors(pres, size_guard))
    return _lattices[key]


def install_lattice(lattice: SimpleLattice) -> None:
    """Use an already built (e.g. cached) lattice for its parameters."""
    _lattices[(lattice.pres.e, lattice.pres.r)] = lattice


# -- normal forms ----------------------------------------------------------------


@dataclass(frozen=True)
class NormalForm:
    """``Delta^k s_1 ... s_m`` with each ``s_i`` a proper non-empty simple, left-weighted."""

    e: int
    r: int
    k: int
    factors: tuple[int, ...]

    @property
    def lattice(self) -> SimpleLattice:
        return simples(self.e, self.r)

    @property
    def inf(self) -> int:
        return self.k

    @property
    def sup(self) -> int:
        return self.k + len(self.factors)

    def factor_words(self) -> tuple[Word, ...]:
        return tuple(self.lattice.words[s] for s in self.factors)

    def word(self) -> Word:
        """A word for the element: ``Delta^k`` written out (or inverted) followed by the factors."""
        D = self.lattice.delta
        head = D * self.k if self.k >= 0 else inverse(D) * (-self.k)
        return head + tuple(itertools.chain.from_iterable(self.factor_words()))

    def render(self) -> str:
        pres = self.lattice.pres
        return " | ".join([f"D^{self.k}"] + [pres.format(w) for w in self.factor_words()])

    def __str__(self) -> str:
        return self.render()


def _delta_complements(lat: SimpleLattice) -> dict[int, Word]:
    return {c: lat.words[int(lat.comp[lat.atom(c)])] for c in lat.pres.letters()}


def _to_delta_fraction(lat: SimpleLattice, word: Sequence[int]) -> tuple[int, Word]:
    """Write ``word`` as ``Delta^-m P`` with ``P`` positive."""
    pres = lat.pres
    comps = _delta_complements(lat)
    m, P = 0, []
    shift = pres.n + 1
    for x in word:
        if x > 0:
            P.append(x)
        else:
            # P x~ = P c Delta~ = Delta~ rho^(n+1)(P c)
            m += 1
            P = list(pres.rho(tuple(P) + comps[-x], shift))
    return m, tuple(P)


def normal_form(pres: Presentation, word: Sequence[int]) -> NormalForm:
    lat = simples(pres.e, pres.r)
    m, P = _to_delta_fraction(lat, word)
    codes = np.array([x - 1 for x in P], np.int64)
    factors = kernels.greedy_factors(codes, lat.mul, lat.lquot, 0)
    k = -m
    j = 0
    while j < len(factors) and factors[j] == lat.delta_id:
        j += 1
    return NormalForm(pres.e, pres.r, k + j, tuple(int(x) for x in factors[j:]))


def parse_normal_form(pres: Presentation, text: str) -> NormalForm:
    """Inverse of :meth:`NormalForm.render`."""
    parts = [x.strip() for x in text.split("|")]
    if not parts[0].startswith("D^"):
        raise ValueError("normal form must start with D^k")
    k = int(parts[0][2:])
    D = delta(pres)
    head = D * k if k >= 0 else inverse(D) * (-k)
    return normal_form(pres, head + tuple(itertools.chain.from_iterable(pres.parse(x) for x in parts[1:])))


def equal(pres: Presentation, w1: Sequence[int], w2: Sequence[int]) -> bool:
    if sum(1 if x > 0 else -1 for x in w1) != sum(1 if x > 0 else -1 for x in w2):
        return False
    return normal_form(pres, w1) == normal_form(pres, w2)


# -- conjugacy -------------------------------------------------------------------


def _nf(e: int, r: int, word: Sequence[int]) -> NormalForm:
    return normal_form(presentation(e, r), word)


def cycling(nf: NormalForm) -> NormalForm:
    if not nf.factors:
        return nf
    pres = presentation(nf.e, nf.r)
    words = nf.factor_words()
    D = nf.lattice.delta
    head = D * nf.k if nf.k >= 0 else inverse(D) * (-nf.k)
    rest = tuple(itertools.chain.from_iterable(words[1:]))
    return _nf(nf.e, nf.r, head + rest + pres.bar(words[0], -nf.k))


def decycling(nf: NormalForm) -> NormalForm:
    if not nf.factors:
        return nf
    words = nf.factor_words()
    D = nf.lattice.delta
    head = D * nf.k if nf.k >= 0 else inverse(D) * (-nf.k)
    body = tuple(itertools.chain.from_iterable(words[:-1]))
    return _nf(nf.e, nf.r, words[-1] + head + body)


def super_summit_representative(nf: NormalForm) -> NormalForm:
    """Cycle until the infimum is maximal, then decycle until the supremum is minimal."""
    bound = nf.r  # length of Delta
    x = nf
    stale = 0
    while stale < bound and x.factors:
        y = cycling(x)
        if y.inf > x.inf:
            stale = 0
        else:
            stale += 1
        x = y
    stale = 0
    while stale < bound and x.factors:
        y = decycling(x)
        if y.sup < x.sup:
            stale = 0
        else:
            stale += 1
        x = y
    return x


def conjugate_by(nf: NormalForm, s: Word) -> NormalForm:
    return _nf(nf.e, nf.r, inverse(s) + nf.word() + tuple(s))


@dataclass(frozen=True)
class ConjugacyResult:
    verdict: bool | None  # None: budget exhausted
    explored: int

    @property
    def status(self) -> str:
        return {True: "yes", False: "no", None: "indeterminate"}[self.verdict]


def super_summit_set(nf: NormalForm, budget: int = 10**5) -> tuple[set[NormalForm], bool]:
    """Closure of a super summit representative under conjugation by simples; flag is False if cut off."""
    rep = super_summit_representative(nf)
    lat = nf.lattice
    seen = {rep}
    todo = deque([rep])
    while todo:
        x = todo.popleft()
        for s in lat.words[1:]:
            y = conjugate_by(x, s)
            if y.inf == rep.inf and y.sup == rep.sup and y not in seen:
                seen.add(y)
                if len(seen) > budget:
                    return seen, False
                todo.append(y)
    return seen, True


def conjugate_test(pres: Presentation, w1: Sequence[int], w2: Sequence[int], budget: int = 10**5) -> ConjugacyResult:
    if sum(1 if x > 0 else -1 for x in w1) != sum(1 if x > 0 else -1 for x in w2):
        return ConjugacyResult(False, 0)
    a = super_summit_representative(normal_form(pres, w1))
    b = super_summit_representative(normal_form(pres, w2))
    if (a.inf, a.sup) != (b.inf, b.sup):
        return ConjugacyResult(False, 0)
    if a == b:
        return ConjugacyResult(True, 1)
    lat = a.lattice
    seen = {a}
    todo = deque([a])
    while todo:
        x = todo.popleft()
        for s in lat.words[1:]:
            y = conjugate_by(x, s)
            if y == b:
                return ConjugacyResult(True, len(seen) + 1)
            if y.inf == a.inf and y.sup == a.sup and y not in seen:
                seen.add(y)
                if len(seen) > budget:
                    return ConjugacyResult(None, len(seen))
                todo.append(y)
    return ConjugacyResult(False, len(seen))
