"""Whole-structure verification sweeps shared by the CLI ``verify`` command and the tests."""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from functools import reduce

import numpy as np

from . import garside, oracle
from .presentation import Word, presentation, rev


@dataclass
class Sweep:
    name: str
    ok: bool = True
    notes: list[str] = field(default_factory=list)

    def fail(self, note: str) -> None:
        self.ok = False
        self.notes.append(note)

    def render(self) -> str:
        head = f"{'PASS' if self.ok else 'FAIL'} {self.name}"
        return "\n".join([head] + [f"  {x}" for x in self.notes])


def chi_rev_symmetry(e_max: int = 6, r_max: int = 5) -> Sweep:
    sweep = Sweep(f"chi(R) = rev(R) for e<={e_max}, r<={r_max}")
    for e in range(1, e_max + 1):
        for r in range(2, r_max + 1):
            P = presentation(e, r)
            if P.map_relations(P.relations(), P.chi) != P.map_relations(P.relations(), rev):
                sweep.fail(f"e={e} r={r}")
    return sweep


def _element_keys(pres, words):
    return {garside.canonical_word(pres, w) for w in words}


def garside_axioms(e: int, r: int) -> Sweep:
    """Left and right divisors of Delta agree, every atom divides Delta, and the atoms' lcm is Delta."""
    P = presentation(e, r)
    D = garside.delta(P)
    sweep = Sweep(f"Delta is Garside at e={e} r={r}")
    left = garside.enumerate_left_divisors(P)
    right = garside.enumerate_right_divisors(P)
    if _element_keys(P, left) != _element_keys(P, right):
        sweep.fail(f"{len(left)} left divisors vs {len(right)} right divisors")
    for x in P.letters():
        if not garside.left_divides(P, (x,), D)[0] or not garside.right_divides(P, (x,), D)[0]:
            sweep.fail(f"{P.format((x,))} does not divide Delta on both sides")
    lcm = reduce(lambda u, v: garside.right_lcm(P, u, (v,)), list(P.letters())[1:], (1,))
    if not garside.positive_equal(P, lcm, D):
        sweep.fail(f"lcm of atoms is {P.format(lcm)}")
    sweep.notes.append(f"{len(left)} simples")
    return sweep


def rho_fixes_delta(e: int, r: int) -> Sweep:
    P = presentation(e, r)
    D = garside.delta(P)
    sweep = Sweep(f"rho(Delta) = Delta at e={e} r={r}")
    if not garside.equal(P, P.rho(D), D):
        sweep.fail(P.format(P.rho(D)))
    return sweep


def nu_homomorphism(e: int, r: int) -> Sweep:
    P = presentation(e, r)
    sweep = Sweep(f"nu respects every relation at e={e} r={r}")
    for rel in P.augmented_relations():
        if P.nu(rel.lhs) != P.nu(rel.rhs):
            sweep.fail(f"{rel.family}: {P.format(rel.lhs)} = {P.format(rel.rhs)}")
    return sweep


def oracle_agreement(e: int, r: int, max_len: int = 5, random_pairs: int = 1000,
                     random_len: int = 6, seed: int = 0) -> Sweep:
    """Compare garside.equal with the rewriting closure.

    For each length up to ``max_len`` every pair of words is covered at once:
    the two partitions of all words (by normal form and by closure) must coincide.
    """
    P = presentation(e, r)
    sys = oracle.RewriteSystem.from_relations(P)
    sweep = Sweep(f"garside.equal = oracle_equal at e={e} r={r}")
    words_checked = 0
    for length in range(max_len + 1):
        part = oracle.partition(sys, length)
        nf_label: dict = {}
        labels = np.empty(len(part.labels), np.int64)
        for code, w in enumerate(itertools.product(sys.alphabet, repeat=length)):
            nf = garside.normal_form(P, w)
            labels[code] = nf_label.setdefault(nf, len(nf_label))
        # identical partitions iff the pairing of labels is a bijection
        pairs = set(zip(part.labels.tolist(), labels.tolist()))
        if not (len(pairs) == part.count == len(nf_label)):
            sweep.fail(f"length {length}: {part.count} closure classes vs {len(nf_label)} normal forms")
        words_checked += len(labels)
    rng = random.Random(seed)
    letters = list(sys.alphabet)
    disagree = 0
    for k in range(random_pairs):
        u = tuple(rng.choice(letters) for _ in range(random_len))
        v = tuple(rng.choice(letters) for _ in range(random_len))
        if k % 2:  # half the pairs are random walks inside a class
            v = u
            for _ in range(8):
                v = rng.choice(list(sys.neighbours(v)) or [v])
        if garside.equal(P, u, v) != oracle.oracle_equal(u, v, sys):
            disagree += 1
    if disagree:
        sweep.fail(f"{disagree} random pairs of length {random_len} disagree")
    sweep.notes.append(f"{words_checked} words partitioned, {random_pairs} random pairs")
    return sweep


def divisors_by_closure(e: int, r: int) -> list[Word]:
    """Divisors of Delta as least words of their classes, from prefixes of the class of Delta."""
    P = presentation(e, r)
    sys = oracle.RewriteSystem.from_relations(P)
    D = garside.delta(P)
    prefixes = {w[:k] for w in oracle.equivalence_class(D, sys) for k in range(len(D) + 1)}
    return sorted({oracle.equivalence_class(w, sys)[0] for w in prefixes}, key=lambda w: (len(w), w))


def dihedral_counts(e_values=range(2, 7)) -> Sweep:
    sweep = Sweep("r=2 has e+2 simples")
    for e in e_values:
        brute = len(divisors_by_closure(e, 2))
        lat = len(garside.simples(e, 2))
        sweep.notes.append(f"e={e}: {brute} by closure, {lat} in the lattice")
        if not brute == lat == e + 2:
            sweep.fail(f"e={e} expected {e + 2}")
    return sweep
