"""Generators, relations and symmetries of the positive presentation of B(e,e,r).

Words are tuples of signed integer letters.  Generator number ``c`` of a
:class:`Presentation` is written ``c + 1`` and its inverse ``-(c + 1)``, the
usual convention for braid words.  Generators are numbered with all long
generators ``a(p,q)`` first (sorted by ``(p, q)``) and then all short generators
``t(p;i)`` (sorted by ``(p, i)``), so comparing letters compares generators in
that fixed order.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from functools import cached_property, lru_cache
from typing import Iterable, Iterator, Sequence, Union

Word = tuple[int, ...]


class WordSyntaxError(ValueError):
    """A word could not be parsed; the message carries the column."""

    def __init__(self, text: str, column: int, reason: str):
        self.text = text
        self.column = column
        super().__init__(f"column {column + 1}: {reason}")


@dataclass(frozen=True, order=True)
class Params:
    e: int
    r: int

    def __post_init__(self) -> None:
        if not isinstance(self.e, int) or not isinstance(self.r, int):
            raise TypeError("e and r must be integers")
        if self.e < 1:
            raise ValueError(f"e must be positive, got {self.e}")
        if self.r < 2:
            raise ValueError(f"r must be at least 2, got {self.r}")

    @property
    def n(self) -> int:
        return self.r - 1


@dataclass(frozen=True)
class Long:
    """The generator a_{pq}."""

    p: int
    q: int

    def __str__(self) -> str:
        return f"a({self.p},{self.q})"


@dataclass(frozen=True)
class Short:
    """The generator a_p^{(i)}."""

    p: int
    i: int

    def __str__(self) -> str:
        return f"t({self.p};{self.i})"


Generator = Union[Long, Short]


@dataclass(frozen=True)
class Relation:
    """A positive relation ``lhs = rhs``, stored with ``lhs <= rhs``."""

    lhs: Word
    rhs: Word
    family: str

    @classmethod
    def make(cls, u: Iterable[int], v: Iterable[int], family: str) -> "Relation":
        u, v = tuple(u), tuple(v)
        if v < u:
            u, v = v, u
        return cls(u, v, family)

    @property
    def key(self) -> tuple[Word, Word]:
        return (self.lhs, self.rhs)

    def sides(self) -> tuple[Word, Word]:
        return (self.lhs, self.rhs)


@dataclass(frozen=True)
class MonomialMatrix:
    """Monomial matrix with entries stored as exponents of a primitive e-th root of unity.

    Row ``k`` holds ``zeta ** exps[k]`` in column ``cols[k]`` and zeros elsewhere.
    """

    cols: tuple[int, ...]
    exps: tuple[int, ...]
    e: int

    @classmethod
    def identity(cls, size: int, e: int) -> "MonomialMatrix":
        return cls(tuple(range(size)), (0,) * size, e)

    @classmethod
    def transposition(cls, size: int, e: int, i: int, j: int, a: int, b: int) -> "MonomialMatrix":
        """``I - E_ii - E_jj + zeta^a E_ij + zeta^b E_ji``."""
        cols = list(range(size))
        exps = [0] * size
        cols[i], cols[j] = j, i
        exps[i], exps[j] = a % e, b % e
        return cls(tuple(cols), tuple(exps), e)

    @property
    def size(self) -> int:
        return len(self.cols)

    def __matmul__(self, other: "MonomialMatrix") -> "MonomialMatrix":
        cols = tuple(other.cols[c] for c in self.cols)
        exps = tuple((self.exps[k] + other.exps[self.cols[k]]) % self.e for k in range(self.size))
        return MonomialMatrix(cols, exps, self.e)

    def inverse(self) -> "MonomialMatrix":
        cols = [0] * self.size
        exps = [0] * self.size
        for row, col in enumerate(self.cols):
            cols[col] = row
            exps[col] = (-self.exps[row]) % self.e
        return MonomialMatrix(tuple(cols), tuple(exps), self.e)

    def determinant_exponent(self) -> int:
        return sum(self.exps) % self.e

    def is_valid(self) -> bool:
        return sorted(self.cols) == list(range(self.size)) and self.determinant_exponent() == 0

    def rows(self) -> list[list[str]]:
        out = []
        for row in range(self.size):
            entries = ["0"] * self.size
            k = self.exps[row]
            entries[self.cols[row]] = "1" if k == 0 else f"z^{k}"
            out.append(entries)
        return out

    def __str__(self) -> str:
        grid = self.rows()
        width = max(len(x) for row in grid for x in row)
        return "\n".join(" ".join(x.rjust(width) for x in row) for row in grid)


def is_cyclically_ordered(seq: Sequence[int], n: int) -> bool:
    """True iff the residues ``seq`` mod ``n`` go once around the circle in increasing order."""
    residues = [x % n for x in seq]
    if len(set(residues)) != len(residues):
        raise ValueError(f"entries must be distinct mod {n}: {tuple(seq)}")
    if not residues:
        raise ValueError("sequence must be non-empty")
    k = len(residues)
    descents = sum(1 for j in range(k) if residues[(j + 1) % k] < residues[j])
    return k == 1 or descents == 1


def cyclic_tuples(n: int, k: int) -> Iterator[tuple[int, ...]]:
    """All n-cyclically ordered k-tuples of distinct residues."""
    for combo in itertools.combinations(range(n), k):
        for shift in range(k):
            yield combo[shift:] + combo[:shift]


def inverse(word: Sequence[int]) -> Word:
    return tuple(-x for x in reversed(word))


def rev(word: Sequence[int]) -> Word:
    """Letterwise reversal; signs are kept."""
    return tuple(reversed(word))


def is_positive(word: Sequence[int]) -> bool:
    return all(x > 0 for x in word)


_TOKEN = re.compile(
    r"a\(\s*(?P<p>-?\d+)\s*,\s*(?P<q>-?\d+)\s*\)|t\(\s*(?P<sp>-?\d+)\s*;\s*(?P<i>-?\d+)\s*\)"
)


class Presentation:
    """The augmented presentation for fixed (e, r) together with its word machinery."""

    def __init__(self, e: int, r: int):
        self.params = Params(e, r)
        self.e = e
        self.r = r
        self.n = r - 1
        n = self.n
        longs = [Long(p, q) for p in range(n) for q in range(n) if p != q]
        shorts = [Short(p, i) for p in range(n) for i in range(e)]
        self.gens: tuple[Generator, ...] = tuple(longs + shorts)
        self.num_long = len(longs)
        self.index = {g: c for c, g in enumerate(self.gens)}

    def __repr__(self) -> str:
        return f"Presentation(e={self.e}, r={self.r})"

    # -- generators ---------------------------------------------------------

    @property
    def size(self) -> int:
        return len(self.gens)

    def a(self, p: int, q: int) -> int:
        """Letter of a_{pq} (subscripts mod n)."""
        p, q = p % self.n, q % self.n
        if p == q:
            raise ValueError(f"a({p},{q}) needs distinct subscripts")
        return self.index[Long(p, q)] + 1

    def s(self, p: int, i: int) -> int:
        """Letter of a_p^{(i)} (subscript mod n, exponent mod e)."""
        return self.index[Short(p % self.n, i % self.e)] + 1

    def gen(self, letter: int) -> Generator:
        return self.gens[abs(letter) - 1]

    def letter(self, g: Generator, sign: int = 1) -> int:
        return sign * (self.index[g] + 1)

    def is_short(self, letter: int) -> bool:
        return abs(letter) > self.num_long

    def exponent(self, letter: int) -> int | None:
        g = self.gen(letter)
        return g.i if isinstance(g, Short) else None

    def subscripts(self, letter: int) -> tuple[int, ...]:
        g = self.gen(letter)
        return (g.p, g.q) if isinstance(g, Long) else (g.p,)

    def letters(self) -> range:
        return range(1, self.size + 1)

    # -- grammar ------------------------------------------------------------

    def parse(self, text: str) -> Word:
        out = []
        pos = 0
        while pos < len(text):
            if text[pos].isspace():
                pos += 1
                continue
            m = _TOKEN.match(text, pos)
            if m is None:
                raise WordSyntaxError(text, pos, f"expected a(P,Q) or t(P;I), found {text[pos:pos + 8]!r}")
            if m.group("p") is not None:
                p, q = int(m.group("p")), int(m.group("q"))
                if not (0 <= p < self.n and 0 <= q < self.n) or p == q:
                    raise WordSyntaxError(text, pos, f"a({p},{q}) is not a generator for n={self.n}")
                code = self.index[Long(p, q)] + 1
            else:
                p, i = int(m.group("sp")), int(m.group("i"))
                if not (0 <= p < self.n and 0 <= i < self.e):
                    raise WordSyntaxError(text, pos, f"t({p};{i}) is not a generator for n={self.n}, e={self.e}")
                code = self.index[Short(p, i)] + 1
            pos = m.end()
            if pos < len(text) and text[pos] == "~":
                code = -code
                pos += 1
            out.append(code)
        return tuple(out)

    def format(self, word: Sequence[int]) -> str:
        return " ".join(str(self.gen(x)) + ("~" if x < 0 else "") for x in word)

    # -- derived words ------------------------------------------------------

    def t(self, p: int) -> Word:
        """t_p = a_p^{(1)} a_p^{(0)}."""
        return (self.s(p, 1), self.s(p, 0))

    def binom(self, q: int, p: int) -> Word:
        """a_{p,p+1} a_{p+1,p+2} ... a_{q-1,q}, subscripts mod n."""
        n = self.n
        p, q = p % n, q % n
        out = []
        while p != q:
            out.append(self.a(p, p + 1))
            p = (p + 1) % n
        return tuple(out)

    # -- symmetries ---------------------------------------------------------

    @cached_property
    def _chi_table(self) -> tuple[int, ...]:
        n, e = self.n, self.e
        table = [0]
        for g in self.gens:
            if isinstance(g, Long):
                table.append(self.a(n - g.q, n - g.p))
            elif g.p != 0:
                table.append(self.s(n - g.p, e - g.i))
            else:
                table.append(self.s(0, e - g.i + 1))  # i'+1: the shift that makes chi(R) = rev(R)
        return tuple(table)

    def chi(self, word: Sequence[int]) -> Word:
        t = self._chi_table
        return tuple(t[x] if x > 0 else -t[-x] for x in word)

    def rho_letter(self, letter: int, k: int = 1) -> int:
        g = self.gen(letter)
        sign = 1 if letter > 0 else -1
        if isinstance(g, Long):
            return sign * self.a(g.p + k, g.q + k)
        m = (self.n * g.i + g.p + k) % (self.n * self.e)
        return sign * self.s(m % self.n, m // self.n)

    def rho(self, word: Sequence[int], k: int = 1) -> Word:
        return tuple(self.rho_letter(x, k) for x in word)

    def bar(self, word: Sequence[int], k: int = 1) -> Word:
        """Apply x -> rho^{-(n+1)}(x) k times, i.e. conjugation by Delta^k."""
        return self.rho(word, -(self.n + 1) * k)

    # -- relations ----------------------------------------------------------

    def _chain(self, words: Sequence[Word], family: str, closed_adjacent: bool = False) -> list[Relation]:
        if closed_adjacent:
            pairs = [(words[j], words[(j + 1) % len(words)]) for j in range(len(words))]
        else:
            pairs = list(itertools.combinations(words, 2))
        return [Relation.make(u, v, family) for u, v in pairs if u != v]

    def _base_relations(self, full_r6: bool) -> list[Relation]:
        n, e, a, s = self.n, self.e, self.a, self.s
        out: list[Relation] = []
        for p, q, r, t in cyclic_tuples(n, 4):
            out.append(Relation.make((a(p, q), a(r, t)), (a(r, t), a(p, q)), "R1"))
            out.append(Relation.make((a(p, t), a(q, r)), (a(q, r), a(p, t)), "R2"))
        for p, q, r in cyclic_tuples(n, 3):
            out += self._chain([(a(p, q), a(q, r)), (a(q, r), a(p, r)), (a(p, r), a(p, q))], "R3")
            for i in range(e):
                out.append(Relation.make((a(p, q), s(r, i)), (s(r, i), a(p, q)), "R4"))
        for p, q in itertools.permutations(range(n), 2):
            for i in range(e):
                j = i if p < q else i + 1
                out += self._chain([(a(p, q), s(q, j)), (s(q, j), s(p, i)), (s(p, i), a(p, q))], "R5")
        for p in range(n):
            chain = [(s(p, i), s(p, i - 1)) for i in range(e)]
            out += self._chain(chain, "R6", closed_adjacent=not full_r6)
        return out

    @staticmethod
    def _dedupe(rels: Iterable[Relation]) -> tuple[Relation, ...]:
        seen: dict[tuple[Word, Word], Relation] = {}
        for rel in rels:
            seen.setdefault(rel.key, rel)
        return tuple(sorted(seen.values(), key=lambda x: x.key))

    @cached_property
    def _relations(self) -> tuple[Relation, ...]:
        return self._dedupe(self._base_relations(full_r6=False))

    def relations(self) -> tuple[Relation, ...]:
        """The defining relations R1-R6, with R6 stored as its cyclic chain of adjacent pairs."""
        return self._relations

    @cached_property
    def _augmented(self) -> tuple[Relation, ...]:
        n, e, a, s, t = self.n, self.e, self.a, self.s, self.t
        out = self._base_relations(full_r6=True)
        for p, q, r, u in cyclic_tuples(n, 4):
            out.append(Relation.make((a(p, r), a(p, q), a(r, u)), (a(q, u), a(p, u), a(q, r)), "C1"))
            if p < r:  # the rotation (r,u,p,q) heads the same pair of generators
                out.append(Relation.make((a(p, u), a(p, q), a(q, r)) + t(u), (a(r, q), a(r, p), a(r, u)) + t(q), "C2"))
        for p, q, r in cyclic_tuples(n, 3):
            out.append(Relation.make((a(p, r), a(p, q)) + t(r), (a(q, p), a(q, r)) + t(p), "C3"))
            for i in range(e):
                j = i if p < q else i - 1
                k = i if q < r else i + 1
                out.append(Relation.make((a(p, r), a(p, q), s(r, k)), (s(q, i), a(q, r), s(p, j)), "C4"))
        for p, q in itertools.permutations(range(n), 2):
            out.append(Relation.make((a(p, q),) + t(q), (a(q, p),) + t(p), "C5"))
        covered = {frozenset((rel.lhs[0], rel.rhs[0])) for rel in out}
        for p, q in itertools.permutations(range(n), 2):
            for i, j in itertools.product(range(e), repeat=2):
                lhs = (s(p, i), s(p, i - 1), a(p, q))
                rhs = (s(q, j), s(q, j - 1), a(q, p))
                if frozenset((lhs[0], rhs[0])) not in covered:
                    out.append(Relation.make(lhs, rhs, "C6"))
        return self._dedupe(out)

    def augmented_relations(self) -> tuple[Relation, ...]:
        """R1-R6 (every R3/R5/R6 chain expanded to all pairs) plus C1-C6.

        C6 instances are only added for first-letter pairs not already
        covered, so each unordered pair of generators heads exactly one relation.
        """
        return self._augmented

    def map_relations(self, rels: Iterable[Relation], fn) -> set[tuple[Word, Word]]:
        return {Relation.make(fn(x.lhs), fn(x.rhs), x.family).key for x in rels}

    # -- reflection representation -----------------------------------------

    @cached_property
    def _nu_table(self) -> tuple[MonomialMatrix, ...]:
        n, e, size = self.n, self.e, self.r
        mats = []
        for g in self.gens:
            if isinstance(g, Long):
                if g.p < g.q:
                    mats.append(MonomialMatrix.transposition(size, e, g.p, g.q, 0, 0))
                else:
                    mats.append(MonomialMatrix.transposition(size, e, g.q, g.p, 1, -1))
            else:
                mats.append(MonomialMatrix.transposition(size, e, g.p, n, g.i, -g.i))
        return tuple(mats)

    def nu(self, word: Sequence[int]) -> MonomialMatrix:
        """Image of a word in G(e,e,r) as a monomial matrix."""
        m = MonomialMatrix.identity(self.r, self.e)
        for x in word:
            g = self._nu_table[abs(x) - 1]
            m = m @ (g if x > 0 else g.inverse())
        return m


@lru_cache(maxsize=None)
def presentation(e: int, r: int) -> Presentation:
    return Presentation(e, r)


def enumerate_generators(params: Params) -> tuple[Generator, ...]:
    return presentation(params.e, params.r).gens
