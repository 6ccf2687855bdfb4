"""Seeded random generator words used by the self-test and acceptance runs."""

from __future__ import annotations

import random
from fractions import Fraction

from .bipoly import UniPoly
from .endo import Affine, missing_lines
from .errors import BirendoError
from .genword import (
    AffineGen,
    GenWord,
    Ggen,
    Hgen,
    MatM,
    SacStd,
    TriangularGen,
    Vgen,
    to_endo,
)


def matrices(bound: int):
    """Every M in the monoid with entries in 0..bound."""
    out = []
    r = range(bound + 1)
    for i in r:
        for j in r:
            for k in r:
                for l in r:
                    if i * l - j * k in (1, -1):
                        out.append(MatM(i, j, k, l))
    return out


def random_affine(rng: random.Random) -> AffineGen:
    while True:
        m = [[rng.randint(-2, 2) for _ in range(2)] for _ in range(2)]
        if m[0][0] * m[1][1] - m[0][1] * m[1][0] != 0:
            break
    t = (rng.randint(-2, 2), rng.randint(-2, 2))
    return AffineGen(tuple(tuple(r) for r in m), t)


def random_triangular(rng: random.Random) -> TriangularGen:
    r = UniPoly([rng.randint(-2, 2) for _ in range(rng.randint(1, 3))])
    return TriangularGen(rng.choice([1, -1, 2]), r)


def random_vgen(rng: random.Random, max_deg: int = 3) -> Vgen:
    d = rng.randint(1, max_deg)
    roots = [rng.randint(-3, 3) for _ in range(d)]
    return Vgen(UniPoly.from_roots(roots, rng.choice([1, 1, 2, -1])))


def random_hgen(rng: random.Random, max_m: int = 3) -> Hgen:
    m = rng.randint(1, max_m)
    p = UniPoly([rng.randint(-2, 2) for _ in range(rng.randint(0, m))])
    return Hgen(m, p)


def random_ggen(rng: random.Random, bound: int = 5, _cache={}) -> Ggen:
    if bound not in _cache:
        _cache[bound] = [M for M in matrices(bound) if M not in (MatM(1, 0, 0, 1),)]
    return Ggen(rng.choice(_cache[bound]))


def random_letter(rng: random.Random, triangular: bool = False):
    kind = rng.choice(["aff", "aff", "h", "g", "v", "sac"] + (["tri"] if triangular else []))
    if kind == "aff":
        return random_affine(rng)
    if kind == "tri":
        return random_triangular(rng)
    if kind == "h":
        return random_hgen(rng)
    if kind == "g":
        return random_ggen(rng)
    if kind == "v":
        return random_vgen(rng)
    return SacStd(rng.randint(0, 2))


def all_lines(w) -> bool:
    """True when every missing curve of the composed map is a line."""
    try:
        return missing_lines(to_endo(w)).all_missing_are_lines
    except BirendoError:
        return False


def letter_degree(g) -> int:
    return g.to_endo().degree


def random_word(rng: random.Random, max_len: int = 8, max_degree: int = 24, triangular: bool = False):
    """A random word whose letter degrees multiply to at most max_degree."""
    while True:
        n = rng.randint(1, max_len)
        letters, bound = [], 1
        for _ in range(n):
            g = random_letter(rng, triangular)
            d = letter_degree(g)
            if bound * d > max_degree:
                continue
            bound *= d
            letters.append(g)
        if letters:
            return GenWord(letters)


def line_class_corpus(seed: int, count: int, max_len: int = 8, max_degree: int = 24):
    """Words satisfying the factorization precondition (all missing curves lines)."""
    rng = random.Random(seed)
    out = []
    while len(out) < count:
        w = random_word(rng, max_len, max_degree, triangular=rng.random() < 0.2)
        if all_lines(w):
            out.append(w)
    return out


def random_automorphism_word(rng: random.Random, max_len: int = 3) -> GenWord:
    letters = []
    for _ in range(rng.randint(1, max_len)):
        letters.append(random_affine(rng) if rng.random() < 0.7 else random_triangular(rng))
    return GenWord(letters)
