"""Orbit machinery over the full labeling space.

The census walks every labeling exactly once: labelings are ranked into
0..n!-1 by their Lehmer code (lexicographic order), the word is tabulated once
as a permutation of ranks, and orbits are traced through a visited array.
Census iteration order is lexicographic, so each orbit's representative is its
lexicographically smallest labeling and all outputs are deterministic.

Everything is sequential and pure; callers may partition rank ranges to
parallelize externally.
"""

from __future__ import annotations

import os
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from math import factorial, gcd

from .core import Graph, all_labelings
from .operators import OperatorWord, apply_word

DEFAULT_MAX_N = 9
MAX_N_ENV_VAR = "TOGGLEDYN_MAX_N"


class CensusBoundError(RuntimeError):
    """Raised when a full census is requested above the configured bound."""


def census_bound() -> int:
    return int(os.environ.get(MAX_N_ENV_VAR, DEFAULT_MAX_N))


# ---------------------------------------------------------------------------
# ranking labelings (factorial number system)

def rank_labeling(sigma) -> int:
    n = len(sigma)
    rank = 0
    for i in range(n):
        smaller = sum(1 for j in range(i + 1, n) if sigma[j] < sigma[i])
        rank = rank * (n - i) + smaller
    return rank


def unrank_labeling(rank: int, n: int) -> tuple:
    digits = []
    for base in range(1, n + 1):
        rank, digit = divmod(rank, base)
        digits.append(digit)
    pool = list(range(1, n + 1))
    return tuple(pool.pop(d) for d in reversed(digits))


def space_permutation(G: Graph, word: OperatorWord) -> list[int]:
    """The word as a permutation of ranks: perm[rank(s)] = rank(word(s))."""
    return [rank_labeling(apply_word(word, sigma, G)) for sigma in all_labelings(G.n)]


def compose_perms(outer: list[int], inner: list[int]) -> list[int]:
    """(outer after inner)[x] = outer[inner[x]]."""
    return [outer[x] for x in inner]


def perm_power(perm: list[int], k: int) -> list[int]:
    n = len(perm)
    if k < 0:
        inv = [0] * n
        for x, y in enumerate(perm):
            inv[y] = x
        return perm_power(inv, -k)
    out = list(range(n))
    for _ in range(k):
        out = compose_perms(perm, out)
    return out


# ---------------------------------------------------------------------------
# censuses

@dataclass
class OrbitCensus:
    """Multiset of orbit sizes of an invertible map, with one representative
    (the lexicographically smallest member) per orbit."""

    n: int
    word_text: str
    sizes: Counter
    reps: list
    total: int

    @property
    def order(self) -> int:
        out = 1
        for s in self.sizes:
            out = out * s // gcd(out, s)
        return out

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "word": self.word_text,
            "sizes": {str(s): m for s, m in sorted(self.sizes.items())},
            "order": self.order,
            "reps": [",".join(str(x) for x in rep) for rep in self.reps],
        }


def _census_walk(perm: list[int]) -> tuple[Counter, list[int], list[int]]:
    """Trace orbits of a rank permutation.  Returns (sizes, rep ranks,
    orbit size per rank)."""
    N = len(perm)
    visited = bytearray(N)
    sizes: Counter = Counter()
    reps: list[int] = []
    size_of: list[int] = [0] * N
    for start in range(N):
        if visited[start]:
            continue
        orbit = [start]
        visited[start] = 1
        cur = perm[start]
        while cur != start:
            visited[cur] = 1
            orbit.append(cur)
            cur = perm[cur]
        sizes[len(orbit)] += 1
        reps.append(start)
        for r in orbit:
            size_of[r] = len(orbit)
    return sizes, reps, size_of


def full_census(G: Graph, word: OperatorWord, max_n: int | None = None,
                force: bool = False) -> OrbitCensus:
    """Partition all n! labelings into word-orbits."""
    bound = census_bound() if max_n is None else max_n
    if G.n > bound and not force:
        raise CensusBoundError(
            f"census over {G.n}! states exceeds bound n <= {bound} "
            f"(pass force=True / --force, or set {MAX_N_ENV_VAR})")
    perm = space_permutation(G, word)
    sizes, rep_ranks, _ = _census_walk(perm)
    reps = [unrank_labeling(r, G.n) for r in rep_ranks]
    return OrbitCensus(G.n, word.to_text(), sizes, reps, len(perm))


def orbit_size_by_rank(G: Graph, word: OperatorWord) -> list[int]:
    """Orbit size of each labeling, indexed by rank (no bound check; callers
    use this for per-labeling verification at small n)."""
    _, _, size_of = _census_walk(space_permutation(G, word))
    return size_of


def orbit_of(sigma, G: Graph, word: OperatorWord) -> list[tuple]:
    """Forward orbit sigma, W(sigma), ... up to first return."""
    orbit = [tuple(sigma)]
    cur = apply_word(word, sigma, G)
    while cur != orbit[0]:
        orbit.append(cur)
        cur = apply_word(word, cur, G)
    return orbit


def order_of(G: Graph, word: OperatorWord, max_n: int | None = None,
             force: bool = False) -> int:
    """lcm of the orbit sizes."""
    return full_census(G, word, max_n=max_n, force=force).order


def divisibility_check(census: OrbitCensus, m: int) -> bool:
    return all(s % m == 0 for s in census.sizes)


# ---------------------------------------------------------------------------
# statistics and homomesy

@dataclass(frozen=True)
class Statistic:
    name: str
    evaluator: object  # labeling -> Fraction-compatible value

    def __call__(self, sigma):
        return self.evaluator(sigma)


def indicator_statistic(v: int, i: int) -> Statistic:
    """1_{v,i}: value 1 iff sigma(v) = i."""
    return Statistic(f"1_[{v},{i}]", lambda sigma: 1 if sigma[v - 1] == i else 0)


@dataclass
class HomomesyReport:
    statistic: str
    expected: Fraction
    per_orbit: list  # (representative, orbit size, average)
    homomesic: bool

    def to_json(self) -> dict:
        return {
            "statistic": self.statistic,
            "expected": str(self.expected),
            "orbits": [
                {"rep": ",".join(str(x) for x in rep), "size": size, "average": str(avg)}
                for rep, size, avg in self.per_orbit
            ],
            "homomesic": self.homomesic,
        }


def homomesy_check(G: Graph, word: OperatorWord, stat: Statistic,
                   expected) -> HomomesyReport:
    """Exact per-orbit averages of the statistic; homomesic iff every orbit
    average equals the expected value."""
    expected = Fraction(expected)
    census = full_census(G, word)
    per_orbit = []
    ok = True
    for rep in census.reps:
        members = orbit_of(rep, G, word)
        avg = Fraction(sum(stat(s) for s in members), len(members))
        per_orbit.append((rep, len(members), avg))
        ok = ok and avg == expected
    return HomomesyReport(stat.name, expected, per_orbit, ok)


def orbit_count(census: OrbitCensus) -> int:
    return sum(census.sizes.values())


def expected_total(n: int) -> int:
    return factorial(n)
