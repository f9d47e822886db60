"""Graphs, labelings over Z/nZ, toggle and shift primitives, jeu de taquin,
and cyclic-interval arithmetic.

Conventions used throughout the package:

* Residues of Z/nZ are stored in the window 1..n, with n standing for 0.
* The vertices of a graph on n vertices are 1..n.  ``Path_n`` has vertices
  v_1..v_n left to right; ``Cycle_n`` is read clockwise as 1, 2, ..., n.
* A labeling is a plain tuple ``sigma`` of length n whose entry ``j-1`` is the
  label of v_j; it is always a permutation of 1..n.

Everything here is immutable after construction and all operations are pure
functions, so values can be shared freely between threads.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import permutations


def resmod(x: int, n: int) -> int:
    """Reduce an integer to the residue window 1..n (n stands for 0)."""
    return (x - 1) % n + 1


class Graph:
    """A simple undirected graph on vertices 1..n with a path/cycle/general tag."""

    __slots__ = ("n", "edges", "kind", "_nbrs")

    def __init__(self, n: int, edges, kind: str = "general"):
        if n < 1:
            raise ValueError("graph needs at least one vertex")
        canon = set()
        for a, b in edges:
            if a == b:
                raise ValueError(f"self-loop at vertex {a}")
            if not (1 <= a <= n and 1 <= b <= n):
                raise ValueError(f"edge ({a},{b}) out of range 1..{n}")
            canon.add((min(a, b), max(a, b)))
        self.n = n
        self.edges = frozenset(canon)
        self.kind = kind
        nbrs = [set() for _ in range(n + 1)]
        for a, b in canon:
            nbrs[a].add(b)
            nbrs[b].add(a)
        self._nbrs = tuple(frozenset(s) for s in nbrs)

    @classmethod
    def path(cls, n: int) -> "Graph":
        return cls(n, [(j, j + 1) for j in range(1, n)], kind="path")

    @classmethod
    def cycle(cls, n: int) -> "Graph":
        if n < 3:
            raise ValueError("cycle graph needs n >= 3")
        return cls(n, [(j, j + 1) for j in range(1, n)] + [(n, 1)], kind="cycle")

    def adjacent(self, u: int, v: int) -> bool:
        return v in self._nbrs[u]

    def neighbors(self, u: int) -> frozenset:
        return self._nbrs[u]

    def components(self) -> list[frozenset]:
        """Connected components as frozensets of vertices."""
        seen = [False] * (self.n + 1)
        comps = []
        for start in range(1, self.n + 1):
            if seen[start]:
                continue
            stack, comp = [start], set()
            seen[start] = True
            while stack:
                u = stack.pop()
                comp.add(u)
                for w in self._nbrs[u]:
                    if not seen[w]:
                        seen[w] = True
                        stack.append(w)
            comps.append(frozenset(comp))
        return comps

    def is_connected(self) -> bool:
        return len(self.components()) == 1

    def to_text(self) -> str:
        """Canonical text form ``n; a-b,c-d,...`` with edges sorted."""
        es = ",".join(f"{a}-{b}" for a, b in sorted(self.edges))
        return f"{self.n}; {es}" if es else f"{self.n};"

    @classmethod
    def from_text(cls, text: str) -> "Graph":
        head, _, rest = text.partition(";")
        n = int(head.strip())
        edges = []
        rest = rest.strip()
        if rest:
            for item in rest.split(","):
                a, _, b = item.strip().partition("-")
                edges.append((int(a), int(b)))
        g = cls(n, edges)
        path_edges = frozenset((j, j + 1) for j in range(1, n))
        if g.edges == path_edges:
            return cls.path(n)
        if n >= 3 and g.edges == path_edges | {(1, n)}:
            return cls.cycle(n)
        return g

    def __eq__(self, other):
        return isinstance(other, Graph) and self.n == other.n and self.edges == other.edges

    def __hash__(self):
        return hash((self.n, self.edges))

    def __repr__(self):
        return f"Graph.from_text({self.to_text()!r})"


# ---------------------------------------------------------------------------
# labelings

def validate_labeling(sigma, n: int) -> None:
    if len(sigma) != n or sorted(sigma) != list(range(1, n + 1)):
        raise ValueError(f"not a labeling of {n} vertices: {sigma!r}")


def identity_labeling(n: int) -> tuple:
    return tuple(range(1, n + 1))


def inverse_labeling(sigma) -> tuple:
    """Entry i-1 is the vertex carrying label i."""
    n = len(sigma)
    inv = [0] * n
    for v, lab in enumerate(sigma, 1):
        inv[lab - 1] = v
    return tuple(inv)


def all_labelings(n: int):
    """All n! labelings in lexicographic order."""
    return permutations(range(1, n + 1))


def labeling_to_text(sigma) -> str:
    return ",".join(str(x) for x in sigma)


def labeling_from_text(text: str, n: int | None = None) -> tuple:
    sigma = tuple(int(x) for x in text.split(","))
    validate_labeling(sigma, n if n is not None else len(sigma))
    return sigma


# ---------------------------------------------------------------------------
# toggles, shifts, jeu de taquin

def toggle(sigma, G: Graph, i: int) -> tuple:
    """Swap labels i and i+1 (indices mod n) if they sit on nonadjacent
    vertices; otherwise return sigma unchanged.  An involution for every i."""
    n = G.n
    if not 1 <= i <= n:
        raise ValueError(f"toggle label {i} out of range 1..{n}")
    j = i % n + 1
    inv = inverse_labeling(sigma)
    u, w = inv[i - 1], inv[j - 1]
    if G.adjacent(u, w):
        return tuple(sigma)
    out = list(sigma)
    out[u - 1], out[w - 1] = j, i
    return tuple(out)


def cyc(sigma) -> tuple:
    """Add 1 (mod n) to every label."""
    n = len(sigma)
    return tuple(lab % n + 1 for lab in sigma)


def cyc_pow(sigma, k: int) -> tuple:
    n = len(sigma)
    k %= n
    return tuple((lab - 1 + k) % n + 1 for lab in sigma)


def jdt_pair(sigma, G: Graph, i1: int, i2: int) -> tuple:
    """Glide label i1 through label i2: swap them iff their vertices are
    adjacent (the opposite condition to ``toggle``)."""
    n = G.n
    i1, i2 = resmod(i1, n), resmod(i2, n)
    if i1 == i2:
        raise ValueError("jdt needs two distinct labels")
    inv = inverse_labeling(sigma)
    u, w = inv[i1 - 1], inv[i2 - 1]
    if not G.adjacent(u, w):
        return tuple(sigma)
    out = list(sigma)
    out[u - 1], out[w - 1] = i2, i1
    return tuple(out)


def jdt_interval(sigma, G: Graph, x: int, y: int) -> tuple:
    """Glide the label x-bar through x+1, x+2, ..., y in order (all mod n).

    x == y is the identity (empty glide list); y - x + 1 may not exceed n,
    since the residues would repeat.
    """
    out, _ = jdt_interval_trace(sigma, G, x, y)
    return out


def jdt_interval_trace(sigma, G: Graph, x: int, y: int) -> tuple:
    """Like ``jdt_interval`` but also reports which labels the glide actually
    passed through (the successful swaps, in order)."""
    n = G.n
    if x > y:
        raise ValueError("interval needs x <= y")
    if y - x + 1 > n:
        raise ValueError(f"interval [{x},{y}]_{n} has repeated residues")
    lead = resmod(x, n)
    out = tuple(sigma)
    glided = []
    for k in range(x + 1, y + 1):
        other = resmod(k, n)
        nxt = jdt_pair(out, G, lead, other)
        if nxt != out:
            glided.append(other)
        out = nxt
    return out, glided


# ---------------------------------------------------------------------------
# cyclic intervals [x,y]_n as multisets of residues

@dataclass(frozen=True)
class CyclicInterval:
    """The multiset [x,y]_n: the integers x..y reduced mod n."""

    x: int
    y: int
    n: int

    def __post_init__(self):
        if self.x > self.y:
            raise ValueError("CyclicInterval needs x <= y")
        if self.n < 1:
            raise ValueError("modulus must be positive")

    def total(self) -> int:
        return self.y - self.x + 1

    def multiplicity(self, r: int) -> int:
        r = resmod(r, self.n)
        # integers k in [x, y] with k ≡ r (mod n)
        return (self.y - r) // self.n - (self.x - 1 - r) // self.n


def cyclic_interval_intersect_count(iv: CyclicInterval, S) -> int:
    """Size of the multiset intersection of [x,y]_n with the set S, counting
    elements of the interval according to their multiplicity."""
    return sum(iv.multiplicity(r) for r in set(resmod(s, iv.n) for s in S))


def interval_intersect_count(x: int, y: int, n: int, S) -> int:
    """Multiset-intersection count that also allows the empty window y = x-1."""
    if y < x:
        return 0
    return cyclic_interval_intersect_count(CyclicInterval(x, y, n), S)
