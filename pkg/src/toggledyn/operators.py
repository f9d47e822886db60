"""The promotion operator family as composable, invertible operator words.

An :class:`OperatorWord` is a sequence of generators over the alphabet
{t1..tn, cyc, cyc-}, stored in *application order*: ``gens[0]`` acts first.
The classical right-to-left composition notation TPro = tau_n ... tau_2 tau_1
therefore corresponds to the list [t1, t2, ..., tn].

Words are plain data; :func:`apply_word` is the (stateless) evaluator, and
word identities are decided semantically by exhaustive application to the
labeling space (see :func:`words_equal_as_maps`).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .core import (
    Graph,
    all_labelings,
    interval_intersect_count,
    inverse_labeling,
    jdt_interval,
    resmod,
    validate_labeling,
)

Token = tuple[str, int]  # ("t", i) with 1 <= i <= n, or ("cyc", +1 / -1)


@dataclass(frozen=True)
class OperatorWord:
    """A composition of toggle / cyclic-shift generators on labelings of an
    n-vertex graph, stored first-applied-first."""

    n: int
    gens: tuple[Token, ...]

    def __post_init__(self):
        for kind, val in self.gens:
            if kind == "t":
                if not 1 <= val <= self.n:
                    raise ValueError(f"toggle index {val} out of range 1..{self.n}")
            elif kind == "cyc":
                if val not in (1, -1):
                    raise ValueError("cyc generator exponent must be +1 or -1")
            else:
                raise ValueError(f"unknown generator kind {kind!r}")

    def then(self, other: "OperatorWord") -> "OperatorWord":
        """The word that applies self first, then other."""
        if other.n != self.n:
            raise ValueError("cannot compose words with different moduli")
        return OperatorWord(self.n, self.gens + other.gens)

    def inverse(self) -> "OperatorWord":
        inv = []
        for kind, val in reversed(self.gens):
            inv.append((kind, -val) if kind == "cyc" else (kind, val))
        return OperatorWord(self.n, tuple(inv))

    def power(self, k: int) -> "OperatorWord":
        base = self if k >= 0 else self.inverse()
        return OperatorWord(self.n, base.gens * abs(k))

    def only_toggles(self) -> bool:
        return all(kind == "t" for kind, _ in self.gens)

    def to_text(self) -> str:
        parts = []
        for kind, val in self.gens:
            if kind == "t":
                parts.append(f"t{val}")
            else:
                parts.append("cyc" if val == 1 else "cyc-")
        return " ".join(parts)

    @classmethod
    def from_text(cls, text: str, n: int) -> "OperatorWord":
        gens = []
        for tok in text.split():
            if tok == "cyc":
                gens.append(("cyc", 1))
            elif tok == "cyc-":
                gens.append(("cyc", -1))
            elif tok.startswith("t"):
                gens.append(("t", resmod(int(tok[1:]), n)))
            else:
                raise ValueError(f"bad word token {tok!r}")
        return cls(n, tuple(gens))

    def to_json(self) -> list[str]:
        return self.to_text().split()


def identity_word(n: int) -> OperatorWord:
    return OperatorWord(n, ())


def toggle_word(n: int, i: int) -> OperatorWord:
    return OperatorWord(n, (("t", resmod(i, n)),))


def cyc_word(n: int, k: int = 1) -> OperatorWord:
    k %= n
    return OperatorWord(n, (("cyc", 1),) * k)


def run_word(n: int, lo: int, hi: int) -> OperatorWord:
    """tau_hi ... tau_{lo+1} tau_lo: consecutive toggles, tau_lo applied first."""
    return OperatorWord(n, tuple(("t", resmod(i, n)) for i in range(lo, hi + 1)))


def apply_word(word: OperatorWord, sigma, G: Graph) -> tuple:
    """Evaluate a word at a labeling.  Maintains the inverse alongside the
    image so each generator costs O(1)."""
    n = G.n
    if len(sigma) != n or word.n != n:
        raise ValueError("labeling / graph / word size mismatch")
    img = list(sigma)
    inv = [0] * (n + 1)
    for v, lab in enumerate(img, 1):
        inv[lab] = v
    adjacent = G.adjacent
    for kind, val in word.gens:
        if kind == "t":
            i = val
            j = i % n + 1
            u, w = inv[i], inv[j]
            if not adjacent(u, w):
                img[u - 1], img[w - 1] = j, i
                inv[i], inv[j] = w, u
        elif val == 1:
            for v in range(n):
                img[v] = img[v] % n + 1
            inv[1:] = [inv[n]] + inv[1:n]
        else:
            for v in range(n):
                img[v] = (img[v] - 2) % n + 1
            inv[1:] = inv[2:] + [inv[1]]
    return tuple(img)


def words_equal_as_maps(G: Graph, w1: OperatorWord, w2: OperatorWord, sample=None) -> bool:
    """Decide w1 == w2 semantically: exhaustively over all n! labelings, or
    over a caller-supplied sample of labelings."""
    labelings = sample if sample is not None else all_labelings(G.n)
    return all(apply_word(w1, s, G) == apply_word(w2, s, G) for s in labelings)


# ---------------------------------------------------------------------------
# the named operator words

def promotion_word(n: int) -> OperatorWord:
    """Pro = tau_{n-1} ... tau_2 tau_1."""
    if n < 2:
        raise ValueError("promotion needs n >= 2")
    return run_word(n, 1, n - 1)


def toric_word(n: int) -> OperatorWord:
    """TPro = tau_n tau_{n-1} ... tau_1 = tau_n Pro."""
    if n < 2:
        raise ValueError("toric promotion needs n >= 2")
    return run_word(n, 1, n)


def permutoric_word(pi) -> OperatorWord:
    """TPro_pi = tau_{pi(n)} ... tau_{pi(2)} tau_{pi(1)}; tau_{pi(1)} acts first."""
    n = len(pi)
    validate_labeling(pi, n)
    return OperatorWord(n, tuple(("t", v) for v in pi))


def broken_word(n: int, B) -> OperatorWord:
    """Bro_B for a proper subset B of Z/nZ: one consecutive-toggle run per
    cyclic arc of B, arcs ordered by their starting residue (they commute)."""
    word = identity_word(n)
    for a, b in arcs_of(n, B):
        word = word.then(run_word(n, a, b))
    return word


def cyc_bro_word(n: int, B) -> OperatorWord:
    """cyc . Bro_B (Bro_B applied first)."""
    return broken_word(n, B).then(cyc_word(n))


def arcs_of(n: int, B) -> list[tuple[int, int]]:
    """Connected arcs of the subgraph of Cycle_n induced by B, as (a, b) with
    a <= b integers and b - a + 1 the arc length (b may exceed n when the arc
    wraps through n to 1).  Ordered by starting residue a."""
    Bset = set(resmod(x, n) for x in B)
    if len(Bset) >= n:
        raise ValueError("B must be a proper subset of Z/nZ")
    arcs = []
    for a in sorted(Bset):
        if resmod(a - 1, n) in Bset:
            continue  # not the start of an arc
        b = a
        while resmod(b + 1, n) in Bset:
            b += 1
        arcs.append((a, b))
    return arcs


# ---------------------------------------------------------------------------
# acyclic orientations of Cycle_n

@dataclass(frozen=True)
class AcyclicOrientation:
    """An acyclic orientation of Cycle_n.  Edge i joins i and i+1 (mod n);
    ``ccw`` is the set of i whose edge is oriented counterclockwise, i.e.
    i+1 -> i.  Acyclicity forces 0 < |ccw| < n."""

    n: int
    ccw: frozenset

    def __post_init__(self):
        object.__setattr__(self, "ccw", frozenset(resmod(i, self.n) for i in self.ccw))
        if not self.ccw or len(self.ccw) == self.n:
            raise ValueError("orientation must have at least one edge each way")

    @property
    def d(self) -> int:
        """Number of counterclockwise edges."""
        return len(self.ccw)

    def arrows(self) -> list[tuple[int, int]]:
        out = []
        for i in range(1, self.n + 1):
            j = i % self.n + 1
            out.append((j, i) if i in self.ccw else (i, j))
        return out

    def sources(self) -> frozenset:
        # i is a source iff edge i-1 is ccw (i -> i-1) and edge i is cw (i -> i+1)
        return frozenset(
            i for i in range(1, self.n + 1)
            if resmod(i - 1, self.n) in self.ccw and i not in self.ccw
        )

    def sinks(self) -> frozenset:
        return frozenset(
            i for i in range(1, self.n + 1)
            if resmod(i - 1, self.n) not in self.ccw and i in self.ccw
        )

    def flip_source(self, i: int) -> "AcyclicOrientation":
        """Flip the source i into a sink by reversing both incident edges."""
        if i not in self.sources():
            raise ValueError(f"{i} is not a source")
        prev = resmod(i - 1, self.n)
        return AcyclicOrientation(self.n, (self.ccw - {prev}) | {i})


def orientation_from_pi(pi) -> AcyclicOrientation:
    """alpha_pi: edge {i, i+1} points i -> i+1 iff pi^{-1}(i) < pi^{-1}(i+1).
    The ccw edges are exactly the cyclic descents of pi^{-1}."""
    n = len(pi)
    validate_labeling(pi, n)
    inv = inverse_labeling(pi)
    ccw = frozenset(i for i in range(1, n + 1) if inv[i - 1] > inv[i % n])
    return AcyclicOrientation(n, ccw)


def cyclic_descent_count(pi) -> int:
    return orientation_from_pi(pi).d


def permutoric_word_from_orientation(beta: AcyclicOrientation) -> OperatorWord:
    """TPro_beta: the permutoric word of any linear extension of the
    transitive closure of beta (smallest-vertex-first topological sort, for
    determinism)."""
    n = beta.n
    indeg = {v: 0 for v in range(1, n + 1)}
    succs = {v: [] for v in range(1, n + 1)}
    for a, b in beta.arrows():
        indeg[b] += 1
        succs[a].append(b)
    ready = sorted(v for v in indeg if indeg[v] == 0)
    order = []
    while ready:
        v = ready.pop(0)
        order.append(v)
        for w in succs[v]:
            indeg[w] -= 1
            if indeg[w] == 0:
                ready.append(w)
        ready.sort()
    if len(order) != n:
        raise ValueError("orientation is not acyclic")
    return permutoric_word(tuple(order))


def unique_source_orientation(n: int, d: int) -> AcyclicOrientation:
    """The acyclic orientation of Cycle_n with unique source d and unique
    sink n (it has exactly d counterclockwise edges)."""
    if not 1 <= d <= n - 1:
        raise ValueError("need 1 <= d <= n-1")
    return AcyclicOrientation(n, frozenset(range(1, d)) | {n})


# ---------------------------------------------------------------------------
# independent sets S, the orientation beta_S, and canonical S

def validate_independent_set(n: int, S) -> tuple:
    """Sort S into residues s_1 < ... < s_d and check the cyclic gaps >= 2."""
    s = tuple(sorted(resmod(x, n) for x in set(S)))
    d = len(s)
    if not 1 <= d <= n // 2:
        raise ValueError("need 1 <= |S| <= floor(n/2)")
    for i in range(d):
        gap = (s[(i + 1) % d] - s[i]) % n if d > 1 else n
        if gap < 2:
            raise ValueError(f"{s} is not independent in Cycle_{n}")
    return s


def beta_from_S(n: int, S) -> AcyclicOrientation:
    """beta_S: sources at the elements of S, sinks at S-1, all other edges
    clockwise; the ccw edge set is exactly S-1."""
    s = validate_independent_set(n, S)
    return AcyclicOrientation(n, frozenset(resmod(x - 1, n) for x in s))


def R_from_S(n: int, S) -> frozenset:
    """The complement of S-1 in Z/nZ."""
    s = validate_independent_set(n, S)
    shifted = {resmod(x - 1, n) for x in s}
    return frozenset(set(range(1, n + 1)) - shifted)


def rounded_nearest(x) -> int:
    """[[x]]: the integer closest to x, with exact halves rounding down."""
    return math.ceil(Fraction(x) - Fraction(1, 2))


def canonical_S(n: int, d: int) -> tuple:
    """s_i = [[i n / d]] for i = 1..d, reduced to residues 1..n."""
    if not 1 <= d <= n // 2:
        raise ValueError("need 1 <= d <= floor(n/2)")
    s = tuple(resmod(rounded_nearest(Fraction(i * n, d)), n) for i in range(1, d + 1))
    return validate_independent_set(n, s)


# ---------------------------------------------------------------------------
# gliding-glob procedures for cyc . Bro_B

def glob_three_step(sigma, G: Graph, B) -> tuple:
    """The three-step gliding-glob computation of cyc(Bro_B(sigma)):
    glide each arc leader through its arc (carrying its glob), increment every
    label outside the union of the glide windows, then rewrite each glob label
    x_i to y_i + 1."""
    n = G.n
    arcs = arcs_of(n, B)  # arc i is [x_i, y_i - 1]_n, so b = y_i - 1
    out = tuple(sigma)
    windows = []  # (x_i, y_i)
    for a, b in arcs:
        x, y = a, b + 1
        out = jdt_interval(out, G, x, y)
        windows.append((x, y))
    covered = set()
    for x, y in windows:
        covered.update(resmod(k, n) for k in range(x, y + 1))
    inv = inverse_labeling(out)
    final = list(out)
    for v in range(1, n + 1):
        if final[v - 1] not in covered:
            final[v - 1] = final[v - 1] % n + 1
    for x, y in windows:
        glob_vertex = inv[resmod(x, n) - 1]  # the glob travelled with label x
        final[glob_vertex - 1] = resmod(y + 1, n)
    result = tuple(final)
    validate_labeling(result, n)
    return result


def glob_two_step(sigma, G: Graph, S) -> tuple:
    """The two-step procedure for cyc(Bro_R(sigma)) with R the complement of
    S-1: glide each s_i through [s_i, s_{i+1}-1]_n carrying its glob, then
    rotate the glob labels s_i -> s_{i+1}."""
    n = G.n
    s = validate_independent_set(n, S)
    d = len(s)
    out = tuple(sigma)
    for i in range(d):
        x = s[i]
        y = (s[0] + n if i == d - 1 else s[i + 1]) - 1
        out = jdt_interval(out, G, x, y)
    inv = inverse_labeling(out)
    final = list(out)
    for i in range(d):
        glob_vertex = inv[s[i] - 1]
        final[glob_vertex - 1] = s[(i + 1) % d]
    result = tuple(final)
    validate_labeling(result, n)
    return result


# ---------------------------------------------------------------------------
# the word Phi_{n,d}, the stacked-run word for TPro_beta^d, and the J sets

def staircase_word(n: int, d: int) -> OperatorWord:
    """(tau_n ... tau_{n+d-1}) ... (tau_1 ... tau_d): n runs of d toggles,
    run i applying tau_{i+d-1} down to tau_i, runs taken i = 1..n.  Equal as a
    map to TPro_beta^d for the unique-source-d orientation."""
    gens = []
    for i in range(1, n + 1):
        gens.extend(("t", resmod(i + d - 1 - k, n)) for k in range(d))
    return OperatorWord(n, tuple(gens))


def phi_word(n: int, d: int) -> OperatorWord:
    """Phi_{n,d} = cyc^d (tau_{n-d} ... tau_{n-1}) ... (tau_1 ... tau_d): the
    first n-d runs of the staircase followed by d cyclic shifts."""
    if not 1 <= d <= n - 1:
        raise ValueError("need 1 <= d <= n-1")
    gens = []
    for i in range(1, n - d + 1):
        gens.extend(("t", resmod(i + d - 1 - k, n)) for k in range(d))
    gens.extend((("cyc", 1),) * d)
    return OperatorWord(n, tuple(gens))


def j_set(n: int, d: int, gamma: int) -> tuple[frozenset, int, int]:
    """For the canonical S: the set J of the power identity
    TPro_beta^gamma = cyc^{-q} Bro_J (cyc Bro_R)^q, together with (q, r)
    from the division gamma*n = q(n-d) + r, 0 <= r <= n-d-1."""
    if gamma < 0:
        raise ValueError("gamma must be nonnegative")
    s = canonical_S(n, d)
    s_minus_1 = {resmod(x - 1, n) for x in s}
    q, r = divmod(gamma * n, n - d)
    J = frozenset(
        j for j in range(1, n + 1)
        if interval_intersect_count(j - q, j - 1, n, s_minus_1) >= q - gamma + 1
    )
    return J, q, r


# ---------------------------------------------------------------------------
# the suffix rewriting condition

def verify_suffix_lemma(Y: OperatorWord, beta: AcyclicOrientation, k: int) -> bool:
    """True iff every toggle appears exactly k times in Y and, for every
    suffix X of Y (in right-to-left composition notation these are the
    first-applied segments, i.e. prefixes of ``Y.gens``) and every arrow
    a -> b of beta, X<a> - X<b> lies in {0, 1}.  When this holds, Y equals
    TPro_beta^k as a map."""
    if not Y.only_toggles():
        raise ValueError("suffix condition is defined for toggle-only words")
    n = Y.n
    counts = [0] * (n + 1)
    for _, i in Y.gens:
        counts[i] += 1
    if any(counts[i] != k for i in range(1, n + 1)):
        return False
    arrows = beta.arrows()
    seen = [0] * (n + 1)
    for _, i in Y.gens:
        seen[i] += 1
        for a, b in arrows:
            if seen[a] - seen[b] not in (0, 1):
                return False
    return True
