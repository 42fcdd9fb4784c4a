"""Brute-force equivalence closure for finite homogeneous positive presentations.

Used as ground truth for the reversing and Garside code on small instances,
and to exhibit non-cancellation in monoids that are not Garside.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from . import kernels
from .garside import ResourceLimit
from .presentation import Presentation, Relation, Word

DEFAULT_SIZE_GUARD = 10**6


@dataclass(frozen=True)
class RewriteSystem:
    alphabet: tuple[int, ...]
    rules: frozenset[tuple[Word, Word]]
    _by_first: dict = field(init=False, repr=False, compare=False, hash=False)

    def __post_init__(self) -> None:
        letters = set(self.alphabet)
        by_first: dict[int, list[tuple[Word, Word]]] = {}
        for u, v in self.rules:
            if len(u) != len(v):
                raise ValueError(f"rule {u} = {v} is not homogeneous")
            if not u or not set(u) | set(v) <= letters:
                raise ValueError(f"rule {u} = {v} uses letters outside the alphabet")
            for lhs, rhs in ((u, v), (v, u)):
                by_first.setdefault(lhs[0], []).append((lhs, rhs))
        object.__setattr__(self, "_by_first", by_first)

    @classmethod
    def make(cls, alphabet: Iterable[int], rules: Iterable[tuple[Sequence[int], Sequence[int]]]) -> "RewriteSystem":
        pairs = set()
        for u, v in rules:
            u, v = tuple(u), tuple(v)
            if u != v:
                pairs.add(min((u, v), (v, u)))
        return cls(tuple(sorted(alphabet)), frozenset(pairs))

    @classmethod
    def from_relations(cls, pres: Presentation, rels: Iterable[Relation] | None = None) -> "RewriteSystem":
        """Positive rewriting system of a presentation; defaults to all of R and C."""
        if rels is None:
            rels = pres.augmented_relations()
        return cls.make(pres.letters(), (x.sides() for x in rels))

    def neighbours(self, w: Word):
        for pos, x in enumerate(w):
            for lhs, rhs in self._by_first.get(x, ()):
                end = pos + len(lhs)
                if end <= len(w) and w[pos:end] == lhs:
                    yield w[:pos] + rhs + w[end:]

    def _rule_arrays(self):
        index = {x: k for k, x in enumerate(self.alphabet)}
        directed = sorted(
            (tuple(index[x] for x in lhs), tuple(index[x] for x in rhs))
            for rules in self._by_first.values() for lhs, rhs in rules
        )
        width = max((len(u) for u, _ in directed), default=1)
        lhs = np.zeros((max(len(directed), 1), width), np.int64)
        rhs = np.zeros_like(lhs)
        length = np.zeros(lhs.shape[0], np.int64)
        ptr = np.zeros(len(self.alphabet) + 1, np.int64)
        for k, (u, v) in enumerate(directed):
            lhs[k, :len(u)] = u
            rhs[k, :len(v)] = v
            length[k] = len(u)
            ptr[u[0] + 1] += 1
        return np.cumsum(ptr), length, lhs, rhs


def equivalence_class(w: Sequence[int], sys: RewriteSystem, size_guard: int = DEFAULT_SIZE_GUARD) -> tuple[Word, ...]:
    """All words reachable from ``w``, sorted."""
    start = tuple(w)
    if any(x <= 0 for x in start):
        raise ValueError("equivalence classes are only defined for positive words")
    seen = {start}
    todo = deque([start])
    while todo:
        for nxt in sys.neighbours(todo.popleft()):
            if nxt not in seen:
                seen.add(nxt)
                if len(seen) > size_guard:
                    raise ResourceLimit(f"class of {start} exceeds {size_guard} words")
                todo.append(nxt)
    return tuple(sorted(seen))


def oracle_equal(w1: Sequence[int], w2: Sequence[int], sys: RewriteSystem,
                 size_guard: int = DEFAULT_SIZE_GUARD) -> bool:
    w1, w2 = tuple(w1), tuple(w2)
    if len(w1) != len(w2):
        return False
    if w1 == w2:
        return True
    seen = {w1}
    todo = deque([w1])
    while todo:
        for nxt in sys.neighbours(todo.popleft()):
            if nxt == w2:
                return True
            if nxt not in seen:
                seen.add(nxt)
                if len(seen) > size_guard:
                    raise ResourceLimit(f"class of {w1} exceeds {size_guard} words")
                todo.append(nxt)
    return False


@dataclass(frozen=True)
class Partition:
    """Classes of all positive words of one length.

    Word codes are base-``len(alphabet)`` numbers, first letter most significant.
    """
    alphabet: tuple[int, ...]
    length: int
    labels: np.ndarray

    @property
    def count(self) -> int:
        return int(self.labels.max()) + 1 if self.labels.size else 0

    def encode(self, w: Sequence[int]) -> int:
        base = len(self.alphabet)
        code = 0
        for x in w:
            code = code * base + self.alphabet.index(x)
        return code

    def decode(self, code: int) -> Word:
        base = len(self.alphabet)
        out = []
        for _ in range(self.length):
            code, d = divmod(int(code), base)
            out.append(self.alphabet[d])
        return tuple(reversed(out))

    def label(self, w: Sequence[int]) -> int:
        return int(self.labels[self.encode(w)])

    def representatives(self) -> np.ndarray:
        """Least word code of every class, indexed by label."""
        _, first = np.unique(self.labels, return_index=True)
        return first


def partition(sys: RewriteSystem, length: int) -> Partition:
    base = len(sys.alphabet)
    if base ** length > 50_000_000:
        raise ResourceLimit(f"{base}^{length} words is too many to partition")
    ptr, rlen, lhs, rhs = sys._rule_arrays()
    labels = kernels.class_labels(length, base, ptr, rlen, lhs, rhs)
    return Partition(sys.alphabet, length, labels)


def cancellativity_probe(sys: RewriteSystem, max_len: int) -> list[tuple[int, Word, Word]]:
    """Every left-cancellation failure ``a u = a v`` with ``u != v`` up to total length ``max_len``.

    ``u`` and ``v`` are the least words of their classes, ``u < v``.  One
    triple per pair of distinct classes sharing an ``a``-multiple.
    """
    base = len(sys.alphabet)
    found: list[tuple[int, Word, Word]] = []
    if max_len < 2:
        return found
    prev = partition(sys, 1)
    for length in range(2, max_len + 1):
        cur = partition(sys, length)
        span = base ** (length - 1)
        codes = np.arange(base ** length)
        first = codes // span
        tails = prev.labels[codes % span]
        rows = np.unique(np.stack([cur.labels, first, tails], axis=1), axis=0)
        reps = prev.representatives()
        start = 0
        while start < len(rows):
            stop = start
            while stop < len(rows) and rows[stop, 0] == rows[start, 0] and rows[stop, 1] == rows[start, 1]:
                stop += 1
            if stop - start > 1:
                a = sys.alphabet[int(rows[start, 1])]
                words = sorted(prev.decode(reps[k]) for k in rows[start:stop, 2])
                for i in range(len(words)):
                    for j in range(i + 1, len(words)):
                        found.append((a, words[i], words[j]))
            start = stop
        prev = cur
    return found
