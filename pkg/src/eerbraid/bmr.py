"""The classical presentation on tau_2', tau_2, tau_3, ..., tau_r and its link to the new one.

BMR letters are signed ints: 1 is tau_2' (token ``T2P``), 2 is tau_2 (``T2``)
and ``i`` is tau_i (``Ti``) for 3 <= i <= r.  So the digit shorthand
``3213`` is literally the word ``(3, 2, 1, 3)``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Sequence

from . import garside
from .oracle import DEFAULT_SIZE_GUARD, RewriteSystem, equivalence_class, oracle_equal
from .presentation import Generator, Long, Params, Presentation, Short, Word, WordSyntaxError, inverse, presentation

_TOKEN = re.compile(r"T(2P|[2-9])")


def alt(a: int, b: int, k: int) -> Word:
    """Alternating word ``a b a ...`` of length ``k``."""
    return tuple(a if j % 2 == 0 else b for j in range(k))


def token(letter: int) -> str:
    x = abs(letter)
    name = "T2P" if x == 1 else f"T{x}"
    return name + ("~" if letter < 0 else "")


def format_bmr(word: Sequence[int]) -> str:
    return " ".join(token(x) for x in word)


def parse_bmr(text: str, r: int) -> Word:
    out = []
    pos = 0
    while pos < len(text):
        if text[pos].isspace():
            pos += 1
            continue
        m = _TOKEN.match(text, pos)
        if m is None:
            raise WordSyntaxError(text, pos, f"expected T2P or T2..T9, found {text[pos:pos + 6]!r}")
        x = 1 if m.group(1) == "2P" else int(m.group(1))
        if x > r:
            raise WordSyntaxError(text, pos, f"T{x} is not a generator for r={r}")
        pos = m.end()
        if pos < len(text) and text[pos] == "~":
            x = -x
            pos += 1
        out.append(x)
    return tuple(out)


def bmr_relation_list(params: Params) -> list[tuple[Word, Word]]:
    e, r = params.e, params.r
    rels: list[tuple[Word, Word]] = []
    taus = range(2, r + 1)
    for i in taus:
        for j in taus:
            if j - i >= 2:
                rels.append(((i, j), (j, i)))
    for j in range(4, r + 1):
        rels.append(((1, j), (j, 1)))
    rels.append((alt(2, 1, e), alt(1, 2, e)))
    for i in range(2, r):
        rels.append(((i, i + 1, i), (i + 1, i, i + 1)))
    if r >= 3:
        rels.append(((1, 3, 1), (3, 1, 3)))
        rels.append(((3, 2, 1, 3, 2, 1), (2, 1, 3, 2, 1, 3)))
    return [(u, v) for u, v in rels if u != v]


def bmr_relations(params: Params) -> RewriteSystem:
    return RewriteSystem.make(range(1, params.r + 1), bmr_relation_list(params))


def extra_relation(e: int) -> tuple[Word, Word]:
    """``1 3213 <21>^(e-2) = 3213 <21>^(e-1)``, true in the group but not in the monoid."""
    return (1, 3, 2, 1, 3) + alt(2, 1, e - 2), (3, 2, 1, 3) + alt(2, 1, e - 1)


def phi(word: Sequence[int], pres: Presentation) -> Word:
    out = []
    for x in word:
        k = abs(x)
        if k == 1:
            g = pres.s(0, 0)
        elif k == 2:
            g = pres.s(0, 1)
        else:
            g = pres.a(k - 3, k - 2)
        out.append(g if x > 0 else -g)
    return tuple(out)


def bmr_binom(q: int, p: int) -> Word:
    """tau_{p+3} ... tau_{q+2}; empty when p = q."""
    return tuple(range(p + 3, q + 3))


def beta(params: Params) -> Word:
    return (2, 1) + bmr_binom(params.n - 1, 0)


def _b_short0(e: int, i: int) -> Word:
    if i % e == 0:
        return (1,)
    return alt(2, 1, i) + inverse(alt(2, 1, i - 1))


def b_generator(g: Generator, params: Params) -> Word:
    """A signed BMR word mapping onto ``g`` under phi."""
    e, n = params.e, params.n
    if isinstance(g, Long):
        p, q = g.p, g.q
        if p < q:
            return inverse(bmr_binom(q, p + 1)) + bmr_binom(q, p)
        q, p = p, q
        conj = bmr_binom(q, 0) + bmr_binom(p, 0)
        return inverse(conj) + (-1, -2, 3, 2, 1) + conj
    if not 0 <= g.p < n:
        raise ValueError(f"{g} is not a generator for n={n}")
    conj = bmr_binom(g.p, 0)
    return inverse(conj) + _b_short0(e, g.i % e) + conj


def _alpharot_image(g: Generator, params: Params) -> Generator:
    n, e = params.n, params.e
    if isinstance(g, Long):
        return Long((g.p - 1) % n, (g.q - 1) % n)
    if g.p == 0:
        return Short(n - 1, (g.i - 2) % e)
    return Short(g.p - 1, (g.i - 1) % e)


@dataclass
class CheckReport:
    title: str
    rows: list[tuple[str, bool]] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(flag for _, flag in self.rows)

    def add(self, label: str, flag: bool) -> None:
        self.rows.append((label, flag))

    def render(self) -> str:
        lines = [f"{'PASS' if flag else 'FAIL'} {label}" for label, flag in self.rows]
        lines.append(f"{self.title}: {'PASS' if self.ok else 'FAIL'} ({sum(f for _, f in self.rows)}/{len(self.rows)})")
        return "\n".join(lines)


def _gens(pres: Presentation) -> list[Generator]:
    return [pres.gen(x) for x in pres.letters()]


def verify_phi(params: Params) -> CheckReport:
    """phi respects every BMR relation and hits every generator through its b-word."""
    pres = presentation(params.e, params.r)
    rep = CheckReport(f"phi at e={params.e} r={params.r}")
    for u, v in bmr_relation_list(params):
        rep.add(f"{format_bmr(u)} = {format_bmr(v)}", garside.equal(pres, phi(u, pres), phi(v, pres)))
    for g in _gens(pres):
        b = b_generator(g, params)
        rep.add(f"phi(b[{g}]) = {g}", garside.equal(pres, phi(b, pres), (pres.letter(g),)))
    return rep


def verify_alpharot(params: Params) -> CheckReport:
    """Conjugating a b-word by beta gives the b-word of the shifted generator."""
    pres = presentation(params.e, params.r)
    B = beta(params)
    rep = CheckReport(f"beta conjugation at e={params.e} r={params.r}")
    for g in _gens(pres):
        h = _alpharot_image(g, params)
        lhs = phi(inverse(B) + b_generator(g, params) + B, pres)
        ok = garside.equal(pres, lhs, phi(b_generator(h, params), pres))
        # and the same image is bar(g) in the new presentation
        ok = ok and pres.bar((pres.letter(g),)) == (pres.letter(h),)
        rep.add(f"beta~ b[{g}] beta = b[{h}]", ok)
    return rep


def verify_b_relations(params: Params) -> CheckReport:
    """The relations R1-R6 hold for the b-words (checked after phi)."""
    pres = presentation(params.e, params.r)
    words = {x: b_generator(pres.gen(x), params) for x in pres.letters()}
    rep = CheckReport(f"b-relations at e={params.e} r={params.r}")
    for rel in pres.relations():
        u = tuple(y for x in rel.lhs for y in words[x])
        v = tuple(y for x in rel.rhs for y in words[x])
        rep.add(f"{rel.family}: {pres.format(rel.lhs)} = {pres.format(rel.rhs)}",
                garside.equal(pres, phi(u, pres), phi(v, pres)))
    return rep


@dataclass(frozen=True)
class NoncancelWitness:
    e: int
    a: Word
    u: Word
    v: Word
    class_u: tuple[Word, ...]
    class_v: tuple[Word, ...]
    joined: bool
    group_equal: bool

    @property
    def distinct(self) -> bool:
        return self.class_u != self.class_v

    @property
    def ok(self) -> bool:
        """``a u = a v`` in the monoid while ``u != v``: left cancellation fails."""
        return self.distinct and self.joined and self.group_equal


def noncancel_witness(e: int, size_guard: int = DEFAULT_SIZE_GUARD) -> NoncancelWitness:
    """``2 u = 2 v`` in the BMR monoid, with the classes of ``u`` and ``v`` attached.

    At e = 2 the two words already agree (the monoid is cancellative there), so
    ``ok`` is false.
    """
    if e < 2:
        raise ValueError("need e >= 2")
    params = Params(e, 3)
    sys = bmr_relations(params)
    a = (2,)
    u, v = extra_relation(e)
    pres = presentation(e, 3)
    return NoncancelWitness(
        e, a, u, v,
        equivalence_class(u, sys, size_guard),
        equivalence_class(v, sys, size_guard),
        oracle_equal(a + u, a + v, sys, size_guard),
        garside.equal(pres, phi(a + u, pres), phi(a + v, pres)),
    )


def rewrites_over(target: Sequence[int], letters: Sequence[int], pres: Presentation) -> list[Word]:
    """All positive words over ``letters`` equal to ``target`` once mapped by phi.

    Prefixes are extended only while their image left-divides the target, so
    this is an exhaustive search pruned by divisibility.
    """
    goal = phi(target, pres)
    found: list[Word] = []
    stack: list[Word] = [()]
    while stack:
        prefix = stack.pop()
        if len(prefix) == len(goal):
            found.append(prefix)
            continue
        for x in letters:
            cand = prefix + (x,)
            if garside.left_divides(pres, phi(cand, pres), goal)[0]:
                stack.append(cand)
    return sorted(found)


@dataclass
class NofiniteRow:
    n: int
    left: Word
    right: Word
    group_equal: bool
    bmr_equal: bool
    s_equal: bool
    s_equal_padded: bool

    @property
    def ok(self) -> bool:
        apart = self.n <= 1 or not (self.bmr_equal or self.s_equal)
        return self.group_equal and self.s_equal_padded and apart


@dataclass
class NofiniteReport:
    e: int
    rows: list[NofiniteRow]
    probes: CheckReport

    @property
    def ok(self) -> bool:
        return all(row.ok for row in self.rows) and self.probes.ok


def nofinite_witnesses(e: int, n_max: int, size_guard: int = DEFAULT_SIZE_GUARD) -> NofiniteReport:
    """The family ``2 1^n 3213 = 3213 2^n 1``: equal in the group, apart in the BMR monoid."""
    params = Params(e, 3)
    pres = presentation(e, 3)
    bmr = bmr_relations(params)
    u, v = extra_relation(e)
    with_extra = RewriteSystem.make(bmr.alphabet, list(bmr.rules) + [(u, v)])
    pad = alt(2, 1, e - 2)
    rows = []
    for n in range(1, n_max + 1):
        left = (2,) + (1,) * n + (3, 2, 1, 3)
        right = (3, 2, 1, 3) + (2,) * n + (1,)
        rows.append(NofiniteRow(
            n, left, right,
            garside.equal(pres, phi(left, pres), phi(right, pres)),
            oracle_equal(left, right, bmr, size_guard),
            oracle_equal(left, right, with_extra, size_guard),
            oracle_equal(left + pad, right + pad, with_extra, size_guard),
        ))
    probes = CheckReport("divisibility probes")
    a0, a1 = pres.s(0, e - 1), pres.s(1, 0)
    probes.add("T2P left-divides T3 T2 T2P T3 in the Garside monoid",
               garside.left_divides(pres, phi((1,), pres), phi((3, 2, 1, 3), pres))[0])
    probes.add("T2P T3 = T3 t(1;0)", garside.equal(pres, phi((1, 3), pres), phi((3,), pres) + (a1,)))
    for k in range(0, min(n_max, 2) + 1):
        U = (1,) * k + (3, 2, 1, 3)
        probes.add(f"{format_bmr(U)} = T3 T2 T2P T3 {pres.format((a0,))}^{k}",
                   garside.equal(pres, phi(U, pres), phi((3, 2, 1, 3), pres) + (a0,) * k))
        probes.add(f"only {format_bmr(U)} spells itself over T2P T2 T3", rewrites_over(U, (1, 2, 3), pres) == [U])
        W = (2,) + (1,) * (k + 1)
        probes.add(f"only {format_bmr(W)} spells itself over T2P T2 T3", rewrites_over(W, (1, 2, 3), pres) == [W])
    return NofiniteReport(e, rows, probes)
