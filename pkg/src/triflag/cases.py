"""One entry point per orbit problem: symbols, sizes, counts, brute-force checks, diagrams.

The CLI and the acceptance script both go through here, so a case name such
as "q" or "so-t0" means the same thing everywhere.
"""

from __future__ import annotations

import random
from collections import Counter
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Callable

import numpy as np

from . import glb_orbits as glb
from . import so_even, so_triple, t0_words
from .exactlin import FullFlag, as_field, enumerate_full_flags
from .forms import generators, random_word
from .oracle import (HasseEdge, OrbitPartition, fibre_edges, hasse_edges, orbit_partition,
                     partition_witness)
from .qcount import degree, m_count, q_factorial

__all__ = ["CASES", "GLB_CASES", "Calculus", "calculus", "Verdict", "verify", "hasse", "count_table"]

GLB_CASES = ("sp", "q", "one-sp", "levi")
CASES = GLB_CASES + ("so-triple", "so-t0", "so-even")


# ---------------------------------------------------------------- GL/B calculi

@dataclass(frozen=True)
class Calculus:
    """A subgroup H of GL_N acting on full flags of F^N, with its symbol calculus."""

    name: str
    n: int
    m_plus: int | None = None

    @property
    def kind(self) -> str:
        return self.name.replace("-", "_")

    @property
    def ambient(self) -> int:
        if self.name == "one-sp":
            return 2 * self.n - 1
        if self.name == "levi":
            return self.n
        return 2 * self.n

    @property
    def m_minus(self) -> int | None:
        return None if self.m_plus is None else self.n - self.m_plus

    def gens(self, p: int) -> list[np.ndarray]:
        if self.name == "sp":
            return generators("sp", self.n, p)
        if self.name == "q":
            return generators("q2n", self.n, p)
        if self.name == "one-sp":
            return generators("one-sp", self.n, p)
        return generators("gl-levi", self.n, p, m_plus=self.m_plus)

    def symbols(self) -> list:
        return list(_symbols(self.name, self.n, self.m_plus, self.m_minus))

    def symbol(self, flag: FullFlag):
        if self.name == "sp":
            return glb.sp_symbol(flag)
        if self.name == "q":
            return glb.q_symbol(flag)
        if self.name == "one-sp":
            return glb.one_sp_symbol(flag)
        return glb.levi_symbol(flag, self.m_plus, self.m_minus)

    def parse(self, text: str):
        if self.name == "levi":
            return glb.LeviSymbol.parse(text, self.m_plus, self.m_minus)
        return glb.parse_symbol(self.kind, text)

    def representative(self, sym, p: int) -> FullFlag:
        return {"sp": glb.sp_representative, "q": glb.q_representative,
                "one-sp": glb.one_sp_representative, "levi": glb.levi_representative}[self.name](sym, p)

    def size(self, sym, r: int) -> int:
        return {"sp": glb.sp_orbit_size, "q": glb.q_orbit_size,
                "one-sp": glb.one_sp_orbit_size, "levi": glb.levi_orbit_size}[self.name](sym, r)

    def dimension(self, sym) -> int:
        return glb.orbit_dimension(self.kind, sym)

    def count_formula(self) -> int:
        if self.name == "sp":
            return glb.sp_count_formula(self.n)
        if self.name == "q":
            return glb.q_count_formula(self.n)
        if self.name == "one-sp":
            return glb.one_sp_count_formula(self.n)
        return glb.levi_count_formula(self.m_plus, self.m_minus)


@lru_cache(maxsize=32)
def _symbols(name: str, n: int, m_plus: int | None, m_minus: int | None) -> tuple:
    # symbols are immutable and cache their statistics, so reuse them across r
    if name == "sp":
        return tuple(glb.sp_symbols(n))
    if name == "q":
        return tuple(glb.q_symbols(n))
    if name == "one-sp":
        return tuple(glb.one_sp_symbols(n))
    return tuple(glb.levi_symbols(m_plus, m_minus))


def calculus(name: str, n: int, m_plus: int | None = None) -> Calculus:
    if name not in GLB_CASES:
        raise ValueError(f"{name!r} is not a GL/B calculus")
    if n < 1:
        raise ValueError("n must be positive")
    if name == "levi":
        if m_plus is None or not 0 <= m_plus <= n:
            raise ValueError("the Levi calculus needs 0 <= m_plus <= n")
    return Calculus(name, n, m_plus if name == "levi" else None)


# ---------------------------------------------------------------- counts

def count_table(case: str, n: int, m_plus: int | None = None) -> list[tuple[str, int]]:
    """(quantity, value) rows; the first row is the headline count."""
    if case in GLB_CASES:
        calc = calculus(case, n, m_plus)
        return [("orbits", calc.count_formula())]
    if case == "so-triple":
        return [("orbits", so_triple.count_orbits_formula(n))]
    if case == "so-t0":
        return [("orbits", t0_words.count_t0(n)), ("gl_on_M0", t0_words.count_gl_on_M0(n))]
    if case == "so-even":
        rows = list(so_even.even_counts(n).items())
        return rows + [("gl_on_M0_prime", so_even.even_word_counts(n))]
    raise ValueError(f"unknown case {case!r}")


# ---------------------------------------------------------------- verification

@dataclass
class Verdict:
    case: str
    n: int
    p: int
    universe: int
    sizes: list[int]
    partition_equal: bool
    sizes_match: bool
    witness: str | None = None
    notes: list[str] = field(default_factory=list)

    @property
    def classes(self) -> int:
        return len(self.sizes)

    @property
    def ok(self) -> bool:
        return self.partition_equal and self.sizes_match

    def summary(self) -> str:
        sizes = "/".join(str(s) for s in sorted(self.sizes, reverse=True))
        head = f"{self.classes} classes, sizes {sizes}"
        return head if self.ok else f"{head}; MISMATCH: {self.witness}"


def _finish(case, n, p, universe, invariants, part: OrbitPartition, expected: Callable, describe) -> Verdict:
    wit = partition_witness(invariants, part)
    counts = Counter(invariants)
    bad = [inv for inv, c in counts.items() if c != expected(inv)]
    witness = None
    if wit is not None:
        i, j, why = wit
        witness = f"{why}: {describe(i)} vs {describe(j)}"
    elif bad:
        inv = bad[0]
        witness = f"class {inv} has {counts[inv]} elements, formula gives {expected(inv)}"
    return Verdict(case, n, p, universe, sorted(counts.values(), reverse=True), wit is None, not bad, witness)


def _verify_calculus(calc: Calculus, p: int) -> Verdict:
    flags = list(enumerate_full_flags(calc.ambient, p))
    part = orbit_partition([flags], calc.gens(p))
    syms = [calc.symbol(f) for f in flags]
    names = [str(s) for s in syms]
    by_name = {str(s): s for s in syms}
    return _finish(calc.name, calc.n, p, len(flags), names, part,
                   lambda nm: calc.size(by_name[nm], p), lambda k: f"{names[k]} {flags[k].rows.tolist()}")


def _verify_triples(n: int, p: int) -> Verdict:
    spaces = so_triple.maximal_isotropics(n, p)
    part = orbit_partition([spaces] * 3, generators("so-odd", n, p))
    idx = [part.unravel(k) for k in range(part.labels.size)]
    labels = [so_triple.triple_invariants(*(spaces[i] for i in t)).serialize() for t in idx]
    return _finish("so-triple", n, p, len(idx), labels, part,
                   lambda lab: so_triple.orbit_size(so_triple.TripleLabel.parse(lab), p),
                   lambda k: f"{labels[k]} at {idx[k]}")


def _verify_t0(n: int, p: int, seed: int, sample: int) -> Verdict:
    """Full M x M x M_0 under SO_{2n+1}: one word per orbit, sizes, and a random sample."""
    spaces = so_triple.maximal_isotropics(n, p)
    flags = t0_words.isotropic_flags(n, p)
    part = orbit_partition([spaces, spaces, flags], generators("so-odd", n, p))
    words: dict[int, str] = {}
    for cls in part.classes():
        i, j, k = part.unravel(int(cls[0]))
        words[len(words)] = t0_words.classify_t0(spaces[i], spaces[j], flags[k]).render()
    sizes = part.sizes()
    distinct = len(set(words.values())) == part.count
    size_ok = all(int(sizes[c]) == t0_words.t0_orbit_size(w, p) for c, w in words.items())
    rng = random.Random(seed)
    witness = None
    for _ in range(sample):
        k = rng.randrange(part.labels.size)
        i, j, f = part.unravel(k)
        got = t0_words.classify_t0(spaces[i], spaces[j], flags[f]).render()
        if got != words[int(part.labels[k])]:
            witness = f"point {(i, j, f)} has word {got}, its orbit {words[int(part.labels[k])]}"
            break
    if not distinct and witness is None:
        witness = "two orbits share a word"
    if not size_ok and witness is None:
        witness = "an orbit size differs from the word formula"
    v = Verdict("so-t0", n, p, int(part.labels.size), sorted(map(int, sizes), reverse=True),
                distinct and witness is None, size_ok, witness)
    v.notes.append(f"{sample} random points re-classified")
    return v


def _verify_t0_fibres(n: int, p: int) -> Verdict:
    """Every flag of M_0 under R_d, for each d, classified one by one."""
    flags = t0_words.isotropic_flags(n, p)
    all_sizes, equal, match, witness = [], True, True, None
    for d in range(n + 1):
        part = orbit_partition([flags], generators("r-d", n, p, d=d))
        words = [t0_words.classify_flag(f, d).render() for f in flags]
        scale = m_count(n, p) * so_triple.pu_d_size(n, d, p)
        v = _finish("so-t0", n, p, len(flags), words, part,
                    lambda w: t0_words.t0_orbit_size(w, p) // scale, lambda k: words[k])
        all_sizes += v.sizes
        equal &= v.partition_equal
        match &= v.sizes_match
        witness = witness or v.witness
    return Verdict("so-t0-fibres", n, p, len(flags) * (n + 1), all_sizes, equal, match, witness)


def _verify_even(n: int, p: int) -> Verdict:
    spaces = so_even.mprime_spaces(n, p)
    part = orbit_partition([spaces] * 3, generators("so-even-tilde", n, p))
    idx = [part.unravel(k) for k in range(part.labels.size)]
    labels = [so_even.even_triple_invariants(*(spaces[i] for i in t)).serialize() for t in idx]
    v = _finish("so-even", n, p, len(idx), labels, part,
                lambda lab: so_even.even_orbit_size(so_triple.TripleLabel.parse(lab), p),
                lambda k: f"{labels[k]} at {idx[k]}")
    split = orbit_partition([spaces] * 3, generators("so-even-split", n, p))
    doubled = all(part.sizes()[part.labels[k]] == 2 * split.sizes()[split.labels[k]]
                  for k in range(part.labels.size))
    if not doubled:
        v.sizes_match = False
        v.witness = v.witness or "a G~' orbit is not twice its G' orbit"
    v.notes.append(f"{split.count} G'-orbits")
    return v


def _verify_even_t0(n: int, p: int) -> Verdict:
    spaces = so_even.mprime_spaces(n, p)
    flags = [f for f in t0_words.isotropic_flags(n, p) if so_even.in_Mprime(f.space(n))]
    part = orbit_partition([spaces, spaces, flags], generators("so-even-tilde", n, p))
    idx = [part.unravel(k) for k in range(part.labels.size)]
    words = [t0_words.classify_t0(spaces[i], spaces[j], flags[k]).render() for i, j, k in idx]
    return _finish("so-even-t0", n, p, len(idx), words, part,
                   lambda w: so_even.even_t0_orbit_size(w, p), lambda k: f"{words[k]} at {idx[k]}")


def verify(case: str, n: int, p: int, m_plus: int | None = None, seed: int = 0,
           sample: int = 200) -> list[Verdict]:
    """Brute-force checks for one case; every verdict must be ok."""
    as_field(p)
    if case in GLB_CASES:
        return [_verify_calculus(calculus(case, n, m_plus), p)]
    as_field(p).require_odd()
    if case == "so-triple":
        return [_verify_triples(n, p)]
    if case == "so-t0":
        return [_verify_t0_fibres(n, p), _verify_t0(n, p, seed, sample)]
    if case == "so-even":
        return [_verify_even(n, p), _verify_even_t0(n, p)]
    raise ValueError(f"unknown case {case!r}")


# ---------------------------------------------------------------- Hasse diagrams

def hasse(case: str, n: int, p: int, m_plus: int | None = None, ascii: bool = False) -> list[HasseEdge]:
    """Closure-step edges S1 -i-> S2 between orbits."""
    if case in GLB_CASES:
        calc = calculus(case, n, m_plus)
        syms = calc.symbols()
        reps = {str(s): calc.representative(s, p) for s in syms}
        dims = {str(s): calc.dimension(s) for s in syms}
        edges = fibre_edges(reps, lambda f: str(calc.symbol(f)), dims)
    elif case == "so-t0":
        as_field(p).require_odd()
        flags = t0_words.isotropic_flags(n, p)
        edges = set()
        for d in range(n + 1):
            part = orbit_partition([flags], generators("r-d", n, p, d=d))
            names = {}
            for f, lab in zip(flags, part.labels.tolist()):
                if lab not in names:
                    names[lab] = t0_words.classify_flag(f, d).render()
            ordered = [names[k] for k in range(part.count)]
            dims = {w: degree(lambda r, w=w: t0_words.t0_orbit_size(w, r)) for w in ordered}
            edges |= set(hasse_edges(flags, part, ordered, dims))
        edges = sorted(edges)
    else:
        raise ValueError(f"no Hasse diagram for case {case!r}")
    if ascii:
        edges = [HasseEdge(_ascii(e.source), e.index, _ascii(e.target)) for e in edges]
    return sorted(edges)


def _ascii(text: str) -> str:
    return text.replace(t0_words.ALPHA, "al").replace(t0_words.BETA, "be").replace(glb.MINUS, "-")


# ---------------------------------------------------------------- helpers for the CLI

def random_translate(flag: FullFlag, gens, rng: random.Random) -> FullFlag:
    return flag.image(random_word(gens, flag.p, rng))


def partition_of_unity(case: str, n: int, r: int, m_plus: int | None = None) -> tuple[int, int]:
    """(sum of orbit sizes, expected total) as exact integers."""
    if case in GLB_CASES:
        calc = calculus(case, n, m_plus)
        return sum(calc.size(s, r) for s in calc.symbols()), q_factorial(calc.ambient, r)
    if case == "so-triple":
        return sum(so_triple.orbit_size(lab, r) for lab in so_triple.labels(n)), m_count(n, r) ** 3
    if case == "so-t0":
        total = sum(t0_words.t0_orbit_size(w, r) for w in t0_words.enumerate_words(n))
        return total, m_count(n, r) ** 3 * q_factorial(n, r)
    if case == "so-even":
        total = sum(so_even.even_orbit_size(lab, r) for lab in so_even.even_labels(n))
        return total, so_even.mprime_size(n, r) ** 3
    raise ValueError(f"unknown case {case!r}")
