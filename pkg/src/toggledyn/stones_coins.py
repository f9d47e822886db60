"""Stones sliding on a cycle, coins colliding on a path.

A state is a pair (sigma, t) with sigma a labeling of Path_n.  In the stones
diagram, d stones sit on the cycle vertices t+d, ..., t+1 (stone m on
t+d+1-m) and each replica bold-v_l sits on the cycle vertex sigma(v_l).  The
transition from time t-1 to time t happens through d small steps: the i-th
small step applies the toggle tau_{t+d-i} and moves stone i one vertex
clockwise.  If the toggle swaps (labels on nonadjacent path vertices), the
stone carries its replica; otherwise it slides under the next replica and the
coin of its color moves one path vertex.

Coins are named 1..d left to right; they never pass through each other, so
the naming is timeline-stable.  Collisions come in four flavors: butting-head
transitions between adjacent coins, instantaneous collisions on arrival into
a wall-touching jam, wall collisions on arrival at v_1/v_n, and the
flicker-of-confusion collisions inside wall-touching jams.  The Hasse diagram
of the shares-a-coin precedence order on collisions is a chain-link fence;
edges carry energies (distinct vertices the shared coin visits, inclusive)
whose compositions drive the map onto rotation orbits of compositions.

A Simulation memoizes its own history and is not internally synchronized;
use one per thread.
"""

from __future__ import annotations

import functools
import math
from dataclasses import dataclass

from .core import Graph, inverse_labeling, resmod, toggle, validate_labeling
from .operators import apply_word, phi_word
from .sieving import rot, rot_orbit

LEFT = "left"
RIGHT = "right"

KIND_ORDER = {"left-wall": 0, "two-coins": 1, "right-wall": 2}


class WindowCapError(RuntimeError):
    """The simulation window hit the hard cap without the needed structure."""


def window_cap(n: int, d: int) -> int:
    return 4 * n * n * d * (n - d)


def theta_label(n: int, d: int, k: int) -> int:
    """Toggle index of the k-th global small step: tau_{q+d+1-r} for
    k = q d + r with 1 <= r <= d."""
    q, r0 = divmod(k - 1, d)
    return resmod(q + d + 1 - (r0 + 1), n)


def nu_labels(n: int, d: int, t: int) -> list[int]:
    """Toggle indices applied (in order) while stepping from t-1 to t."""
    return [theta_label(n, d, (t - 1) * d + i) for i in range(1, d + 1)]


class Timeline:
    """The bi-infinite state sequence through (seed, 0), memoized lazily in
    both directions.  Only defined over Path_n."""

    def __init__(self, seed, d: int):
        n = len(seed)
        validate_labeling(seed, n)
        if not 1 <= d <= n - 1:
            raise ValueError("need 1 <= d <= n-1")
        self.n, self.d = n, d
        self.seed = tuple(seed)
        self.graph = Graph.path(n)
        self._states = {0: self.seed}
        self._hi = 0
        self._lo = 0

    def state(self, t: int) -> tuple:
        while self._hi < t:
            s = self._states[self._hi]
            self._hi += 1
            for lab in nu_labels(self.n, self.d, self._hi):
                s = toggle(s, self.graph, lab)
            self._states[self._hi] = s
        while self._lo > t:
            s = self._states[self._lo]
            for lab in reversed(nu_labels(self.n, self.d, self._lo)):
                s = toggle(s, self.graph, lab)
            self._lo -= 1
            self._states[self._lo] = s
        return self._states[t]


def step_timeline(T: Timeline, t: int) -> tuple:
    """The state (sigma_t, t)."""
    return (T.state(t), t)


def stone_vertex_at(n: int, d: int, t: int, m: int) -> int:
    """Cycle vertex of stone m at integer time t."""
    return resmod(t + d + 1 - m, n)


def standardize(seq) -> tuple:
    """The permutation with the same relative order as seq."""
    order = sorted(range(len(seq)), key=lambda i: seq[i])
    out = [0] * len(seq)
    for rank, i in enumerate(order, 1):
        out[i] = rank
    return tuple(out)


def stand_at(sigma, t: int, d: int) -> tuple:
    """Standardization of sigma^{-1}(t+d), ..., sigma^{-1}(t+1): which coin
    name each stone carries."""
    n = len(sigma)
    inv = inverse_labeling(sigma)
    return standardize([inv[resmod(t + d + 1 - m, n) - 1] for m in range(1, d + 1)])


def standbar_at(sigma, t: int, d: int) -> tuple:
    """Standardization of the off-stone replica positions: the sequence
    sigma^{-1}(1), ..., sigma^{-1}(t), sigma^{-1}(t+d+1), ..., sigma^{-1}(n).

    Only defined for 0 <= t <= n-d.  At later times, the reading order of the
    off-stone labels is not the increasing one: each time step replaces the
    label entering the stone block by the label leaving it *in place*, and the
    standardization along that tracked order is the timeline invariant (the
    Simulation maintains it; on 0 <= t <= n-d the two readings coincide).
    """
    n = len(sigma)
    if not 0 <= t <= n - d:
        raise ValueError("standbar_at is defined for 0 <= t <= n-d; "
                         "use Simulation for later times")
    inv = inverse_labeling(sigma)
    window = {resmod(t + j, n) for j in range(1, d + 1)}
    return standardize([inv[l - 1] for l in range(1, n + 1) if l not in window])


def stand(T: Timeline) -> tuple:
    return stand_at(T.seed, 0, T.d)


def standbar(T: Timeline) -> tuple:
    return standbar_at(T.seed, 0, T.d)


# ---------------------------------------------------------------------------
# collisions and small-step records

@dataclass(frozen=True)
class Collision:
    kind: str          # "two-coins" | "left-wall" | "right-wall"
    coins: tuple       # coin names involved, ascending
    time: int          # collision at time t = during a small step between t-1 and t
    small_step: int    # 1..d
    gstep: int
    vertex: int
    via: str           # "move" | "mind" | "arrival" | "flicker"

    @property
    def key(self):
        return (self.kind, self.coins)

    def to_json(self) -> dict:
        return {
            "kind": self.kind,
            "coins": list(self.coins),
            "time": self.time,
            "small_step": self.small_step,
            "vertex": self.vertex,
            "via": self.via,
        }


@dataclass
class StepRecord:
    t: int
    i: int
    gstep: int
    toggle_label: int
    carried: bool                  # stone carried its replica (labels swapped)
    coin_moved: tuple | None       # (coin name, from vertex, to vertex)
    positions: tuple               # after the step; entry c-1 = vertex of coin c
    directions: tuple              # after the step; entry c-1 in {left, right}
    collisions: list

    def to_json(self) -> dict:
        return {
            "t": self.t,
            "i": self.i,
            "stone": self.i,
            "carried": self.carried,
            "coin_moved": None if self.coin_moved is None else {
                "coin": self.coin_moved[0],
                "from": self.coin_moved[1],
                "to": self.coin_moved[2],
            },
            "directions": list(self.directions),
            "collisions": [c.to_json() for c in self.collisions],
        }


def detect_collisions(record: StepRecord) -> list[Collision]:
    """The collisions emitted by a small step (deterministic order:
    movement-rule collisions before flicker collisions, each group ordered
    left-wall, two-coins by increasing pair, right-wall)."""
    return list(record.collisions)


class Simulation:
    """Forward small-step engine from the state (seed, 0).

    With strict=True every step also asserts the structural invariants:
    coin-name order stability, stand/standbar time-invariance, and the
    bidirectional mind-change characterization.
    """

    def __init__(self, seed, d: int, strict: bool = True):
        n = len(seed)
        validate_labeling(seed, n)
        if not 1 <= d <= n - 1:
            raise ValueError("need 1 <= d <= n-1")
        self.n, self.d = n, d
        self.seed = tuple(seed)
        self.strict = strict
        self.img = list(seed)
        self.inv = [0] * (n + 1)
        for v, lab in enumerate(seed, 1):
            self.inv[lab] = v
        # stone m sits on cycle vertex d+1-m at time 0
        self.stone_vertex = [0] * (d + 1)
        for m in range(1, d + 1):
            self.stone_vertex[m] = resmod(d + 1 - m, n)
        by_pos = sorted(range(1, d + 1), key=lambda m: self.inv[self.stone_vertex[m]])
        self.stone_of_coin = [0] * (d + 1)
        self.coin_of_stone = [0] * (d + 1)
        for name, m in enumerate(by_pos, 1):
            self.stone_of_coin[name] = m
            self.coin_of_stone[m] = name
        pos0 = tuple(self.inv[self.stone_vertex[self.stone_of_coin[c]]]
                     for c in range(1, d + 1))
        self.pos_history = [pos0]
        self.exp = self._expected(pos0)
        self.records: list[StepRecord] = []
        self.collisions: list[Collision] = []
        self._stand = stand_at(self.seed, 0, d)
        self._standbar = standbar_at(self.seed, 0, d)
        # off-stone labels in tracked reading order (see standbar_at)
        self._offstone = list(range(d + 1, n + 1))
        if strict:
            assert tuple(self.coin_of_stone[1:]) == self._stand

    @property
    def t_done(self) -> int:
        return len(self.records) // self.d

    def labeling(self) -> tuple:
        return tuple(self.img)

    def _jams(self, positions) -> list[tuple]:
        """Jam bounds (r, s) per coin name (entry c-1), from the left-to-right
        coin positions."""
        d = self.d
        bounds = [None] * d
        c = 0
        while c < d:
            start = c
            while c + 1 < d and positions[c + 1] == positions[c] + 1:
                c += 1
            r, s = positions[start], positions[c]
            for k in range(start, c + 1):
                bounds[k] = (r, s)
            c += 1
        return bounds

    def _expected(self, positions) -> tuple:
        """Expected directions: a coin in a wall-touching jam expects away
        from the wall; otherwise it reads clockwise from its stone and turns
        toward whichever jam-boundary replica it sees first."""
        n, d = self.n, self.d
        bounds = self._jams(positions)
        out = [None] * d
        for c in range(1, d + 1):
            r, s = bounds[c - 1]
            if r == 1:
                out[c - 1] = RIGHT
            elif s == n:
                out[c - 1] = LEFT
            else:
                w = self.stone_vertex[self.stone_of_coin[c]]
                while True:
                    w = w % n + 1
                    rep = self.inv[w]
                    if rep == r - 1:
                        out[c - 1] = LEFT
                        break
                    if rep == s + 1:
                        out[c - 1] = RIGHT
                        break
        return tuple(out)

    def small_step(self) -> StepRecord:
        n, d = self.n, self.d
        g = len(self.records) + 1
        t = (g - 1) // d + 1
        i = (g - 1) % d + 1
        a = resmod(t + d - i, n)
        b = resmod(t + d - i + 1, n)
        assert self.stone_vertex[i] == a
        u = self.inv[a]
        u2 = self.inv[b]
        pos_before = self.pos_history[-1]
        exp_before = self.exp
        bounds_before = self._jams(pos_before)
        carried = abs(u - u2) != 1
        moved = None
        if carried:
            self.img[u - 1], self.img[u2 - 1] = b, a
            self.inv[a], self.inv[b] = u2, u
        else:
            name = self.coin_of_stone[i]
            moved = (name, u, u2)
        self.stone_vertex[i] = b

        if moved is None:
            pos_after = pos_before
        else:
            pos_list = list(pos_before)
            pos_list[moved[0] - 1] = moved[2]
            pos_after = tuple(pos_list)
        exp_after = self._expected(pos_after)
        bounds_after = self._jams(pos_after)

        primary: list[Collision] = []
        flicker: list[Collision] = []

        def emit(group, kind, coins, vertex, via):
            group.append(Collision(kind, tuple(coins), t, i, g, vertex, via))

        if moved is not None:
            name, frm, to = moved
            r, s = bounds_after[name - 1]
            if to < frm and r == 1:
                if r == s:
                    emit(primary, "left-wall", (name,), 1, "arrival")
                else:
                    emit(primary, "two-coins", (name - 1, name), to - 1, "move")
            elif to > frm and s == n:
                if r == s:
                    emit(primary, "right-wall", (name,), n, "arrival")
                else:
                    emit(primary, "two-coins", (name, name + 1), to, "move")

        for c in range(1, d):
            butt_after = (pos_after[c] == pos_after[c - 1] + 1
                          and exp_after[c - 1] == RIGHT and exp_after[c] == LEFT)
            butt_before = (pos_before[c] == pos_before[c - 1] + 1
                           and exp_before[c - 1] == RIGHT and exp_before[c] == LEFT)
            if butt_after and not butt_before:
                emit(primary, "two-coins", (c, c + 1), pos_after[c - 1],
                     "move" if moved is not None else "mind")

        if carried:
            name = self.coin_of_stone[i]
            j = pos_after[name - 1]
            r, s = bounds_after[name - 1]
            if r == 1 and j < s and u2 == s + 1:
                if name == 1:
                    emit(flicker, "left-wall", (1,), 1, "flicker")
                else:
                    emit(flicker, "two-coins", (name - 1, name), j - 1, "flicker")
            elif s == n and j > r and u2 == r - 1:
                if name == d:
                    emit(flicker, "right-wall", (d,), n, "flicker")
                else:
                    emit(flicker, "two-coins", (name, name + 1), j, "flicker")

        primary.sort(key=lambda col: (KIND_ORDER[col.kind], col.coins))
        flicker.sort(key=lambda col: (KIND_ORDER[col.kind], col.coins))
        cols, seen = [], set()
        for col in primary + flicker:
            if col.key not in seen:
                seen.add(col.key)
                cols.append(col)

        if self.strict:
            self._check_step(i, carried, moved, u2, pos_before, pos_after,
                             exp_before, exp_after, bounds_before, bounds_after, t)

        record = StepRecord(t, i, g, a, carried, moved, pos_after, exp_after, cols)
        self.records.append(record)
        self.pos_history.append(pos_after)
        self.collisions.extend(cols)
        self.exp = exp_after
        return record

    def _check_step(self, i, carried, moved, u2, pos_before, pos_after,
                    exp_before, exp_after, bounds_before, bounds_after, t):
        n, d = self.n, self.d
        assert all(pos_after[c] < pos_after[c + 1] for c in range(d - 1)), \
            "coin order not stable"
        for c in range(1, d + 1):
            flip = exp_before[c - 1] != exp_after[c - 1]
            r0, s0 = bounds_before[c - 1]
            cond1 = (carried and self.stone_of_coin[c] == i
                     and u2 in (r0 - 1, s0 + 1) and r0 != 1 and s0 != n)
            r1, s1 = bounds_after[c - 1]
            cond2 = (moved is not None and moved[0] == c and (r1 == 1 or s1 == n))
            assert flip == (cond1 or cond2), \
                f"mind-change law violated at t={t}, coin {c}"

    def extend_to_time(self, t_end: int) -> None:
        cap = window_cap(self.n, self.d)
        if t_end * self.d > cap:
            raise WindowCapError(
                f"window of {t_end} time steps exceeds the cap {cap} small steps")
        n, d = self.n, self.d
        while self.t_done < t_end:
            self.small_step()
            if len(self.records) % d == 0:
                tt = self.t_done
                # label res(tt) left the stone block, res(tt+d) entered it
                self._offstone[self._offstone.index(resmod(tt + d, n))] = resmod(tt, n)
                if self.strict:
                    assert stand_at(self.labeling(), tt, d) == self._stand, \
                        "stand not time-invariant"
                    bar = standardize([self.inv[l] for l in self._offstone])
                    assert bar == self._standbar, "standbar not time-invariant"

    def first_recurrence(self, t_cap: int | None = None) -> int:
        """Smallest T > 0 with (sigma_T, T mod n) = (sigma_0, 0): the period
        of the state sequence."""
        n, d = self.n, self.d
        cap_steps = window_cap(n, d)
        cap = cap_steps // d if t_cap is None else t_cap
        t = 0
        while True:
            t += 1
            if t > cap:
                raise WindowCapError(f"no recurrence within {cap} time steps")
            self.extend_to_time(t)
            if t % n == 0 and self.labeling() == self.seed:
                return t

    def positions_at_gstep(self, g: int) -> tuple:
        return self.pos_history[g]


def phi_orbit(sigma, n: int, d: int) -> list[tuple]:
    """The forward orbit of sigma under the composite shift-and-stack map
    Phi_{n,d}."""
    G = Graph.path(n)
    w = phi_word(n, d)
    orbit = [tuple(sigma)]
    cur = apply_word(w, sigma, G)
    while cur != orbit[0]:
        orbit.append(cur)
        cur = apply_word(w, cur, G)
    return orbit


def small_steps(T: Timeline, t: int) -> list[StepRecord]:
    """The d small-step records of the transition from time t-1 to time t
    (t >= 1; runs a fresh simulation from the seed)."""
    if t < 1:
        raise ValueError("small steps are recorded forward from the seed")
    sim = Simulation(T.seed, T.d)
    sim.extend_to_time(t)
    return sim.records[(t - 1) * T.d: t * T.d]


# ---------------------------------------------------------------------------
# diagram views

def stones_diagram(sigma, t: int, d: int) -> dict:
    """Cycle-vertex view of the state (sigma, t): each vertex carries one
    replica and possibly one stone."""
    n = len(sigma)
    inv = inverse_labeling(sigma)
    stones = {stone_vertex_at(n, d, t, m): m for m in range(1, d + 1)}
    return {
        w: {"replica": inv[w - 1], "stone": stones.get(w)}
        for w in range(1, n + 1)
    }


def coins_diagram(sigma, t: int, d: int) -> dict:
    """Path view of the state: coin names (left to right), their vertices,
    the stone carrying each coin, and the jam structure."""
    n = len(sigma)
    inv = inverse_labeling(sigma)
    stone_pos = [(m, inv[stone_vertex_at(n, d, t, m) - 1]) for m in range(1, d + 1)]
    stone_pos.sort(key=lambda pair: pair[1])
    return {
        "positions": {name: v for name, (m, v) in enumerate(stone_pos, 1)},
        "stone_of_coin": {name: m for name, (m, v) in enumerate(stone_pos, 1)},
    }


# ---------------------------------------------------------------------------
# the Hasse fence

@dataclass
class HasseFence:
    n: int
    d: int
    sim: Simulation
    nodes: list[Collision]
    covers: dict          # (lo, hi) node indices -> energy
    ups: dict             # node index -> sorted upward cover targets
    phi_next: dict        # node index -> node index (same kind+coins)
    horizon_time: int     # nodes at time <= horizon are fully checkable

    def node_index(self, col: Collision) -> int:
        return self.nodes.index(col)

    def coin_energy(self, lo: int, hi: int, coin: int) -> int:
        """Distinct vertices the coin occupies between the two collisions,
        inclusive of both endpoints."""
        g0, g1 = self.nodes[lo].gstep, self.nodes[hi].gstep
        hist = self.sim.pos_history
        return len({hist[g][coin - 1] for g in range(g0, g1 + 1)})

    def transversal(self) -> list[int]:
        """A saturated left-wall-to-right-wall chain: the earliest left-wall
        collision whose rightward chain completes inside the window."""
        chains = _coin_chains(self)
        for start in range(len(self.nodes)):
            if self.nodes[start].kind != "left-wall":
                continue
            chain = [start]
            cur = start
            ok = True
            for coin in range(1, self.d + 1):
                nxt = _next_of_coin(chains, self, coin, cur)
                if nxt is None:
                    ok = False
                    break
                chain.append(nxt)
                cur = nxt
            if not ok:
                continue
            inner = [self.nodes[idx] for idx in chain]
            if inner[-1].kind != "right-wall":
                raise AssertionError("transversal did not end at the right wall")
            for k in range(1, self.d):
                assert inner[k].kind == "two-coins" and inner[k].coins == (k, k + 1)
            for lo, hi in zip(chain, chain[1:]):
                assert (lo, hi) in self.covers, "transversal chain is not saturated"
            return chain
        raise WindowCapError("no complete transversal inside the window")

    def energy_composition(self, chain: list[int]) -> tuple:
        return tuple(self.covers[lo, hi] for lo, hi in zip(chain, chain[1:]))

    def phi_chain(self, chain: list[int]) -> list[int]:
        out = []
        for idx in chain:
            nxt = self.phi_next.get(idx)
            if nxt is None:
                raise WindowCapError("phi successor outside the window")
            out.append(nxt)
        for lo, hi in zip(out, out[1:]):
            assert (lo, hi) in self.covers, "phi image of a chain is not saturated"
        return out

    def verify_laws(self) -> list[str]:
        """Check every diamond and half-diamond law (and the chain-link
        regularity) for all collisions inside the horizon."""
        n, d = self.n, self.d
        problems = []
        for u, col in enumerate(self.nodes):
            if col.time > self.horizon_time:
                continue
            w = self.phi_next.get(u)
            if w is None:
                problems.append(f"node {col} has no phi successor in window")
                continue
            ups_u = self.ups.get(u, [])
            if col.kind == "two-coins":
                if len(ups_u) != 2:
                    problems.append(f"two-coins node {col} has covers {ups_u}")
                    continue
                v1, v2 = ups_u
                if (v1, w) not in self.covers or (v2, w) not in self.covers:
                    problems.append(f"diamond over {col} does not close at phi")
                    continue
                if self.covers[u, v1] != self.covers[v2, w] or \
                   self.covers[u, v2] != self.covers[v1, w]:
                    problems.append(f"diamond law fails over {col}")
            else:
                if len(ups_u) != 1:
                    problems.append(f"wall node {col} has covers {ups_u}")
                    continue
                v = ups_u[0]
                if (v, w) not in self.covers:
                    problems.append(f"half-diamond over {col} does not close")
                    continue
                m1, m2 = self.covers[u, v], self.covers[v, w]
                if m1 != m2:
                    problems.append(f"half-diamond law fails over {col}: {m1} != {m2}")
                elif self.nodes[w].time - col.time != m1 * (n - d):
                    problems.append(
                        f"half-diamond timing fails over {col}: gap "
                        f"{self.nodes[w].time - col.time} != {m1}*({n}-{d})")
        return problems

    def period(self) -> int:
        """Smallest p with all edge energies invariant under phi^p; equals
        the rotation-orbit size of any transversal's energy composition."""
        chain = self.transversal()
        comp = self.energy_composition(chain)
        p = len(rot_orbit(comp))
        cur, expected = chain, comp
        for _ in range(p):
            cur = self.phi_chain(cur)
            expected = rot(expected)
            if self.energy_composition(cur) != expected:
                raise AssertionError("energy compositions do not rotate")
        return p


def _coin_chains(fence: HasseFence) -> dict:
    chains = {c: [] for c in range(1, fence.d + 1)}
    for idx, col in enumerate(fence.nodes):
        for c in col.coins:
            chains[c].append(idx)
    return chains


def _next_of_coin(chains, fence: HasseFence, coin: int, after_idx: int):
    for idx in chains[coin]:
        if idx > after_idx:
            return idx
    return None


def build_fence(seed, d: int, strict: bool = True,
                extra_time: int = 0) -> HasseFence:
    """Simulate the timeline of (seed, 0) long enough to hold the full
    periodic fence structure, then assemble collisions, covers, energies and
    the phi-successor map."""
    n = len(seed)
    orbit_len = len(phi_orbit(seed, n, d))
    t_end = 2 * orbit_len * (n - d) + 3 * n * (n - d) + 2 * n + extra_time
    sim = Simulation(seed, d, strict=strict)
    sim.extend_to_time(t_end)
    nodes = list(sim.collisions)
    chains = {c: [] for c in range(1, d + 1)}
    for idx, col in enumerate(nodes):
        for c in col.coins:
            chains[c].append(idx)
    candidates = set()
    succs = {idx: set() for idx in range(len(nodes))}
    for c, chain in chains.items():
        for lo, hi in zip(chain, chain[1:]):
            candidates.add((lo, hi))
            succs[lo].add(hi)

    @functools.lru_cache(maxsize=None)
    def reachable(frm: int, to: int) -> bool:
        if frm >= to:
            return frm == to
        return any(reachable(mid, to) for mid in succs[frm] if mid <= to)

    covers = {}
    ups = {}
    for lo, hi in sorted(candidates):
        if any(mid != hi and reachable(mid, hi) for mid in succs[lo]):
            continue  # implied transitively: not a cover
        shared = set(nodes[lo].coins) & set(nodes[hi].coins)
        fence_energy = None
        for coin in sorted(shared):
            g0, g1 = nodes[lo].gstep, nodes[hi].gstep
            e = len({sim.pos_history[g][coin - 1] for g in range(g0, g1 + 1)})
            if fence_energy is None:
                fence_energy = e
            else:
                assert fence_energy == e, "shared coins disagree on energy"
        covers[lo, hi] = fence_energy
        ups.setdefault(lo, []).append(hi)
    for lo in ups:
        ups[lo].sort()

    by_key = {}
    phi_next = {}
    for idx in range(len(nodes) - 1, -1, -1):
        key = nodes[idx].key
        if key in by_key:
            phi_next[idx] = by_key[key]
        by_key[key] = idx

    horizon = t_end - (2 * n * (n - d) + n)
    return HasseFence(n, d, sim, nodes, covers, ups, phi_next, horizon)


# ---------------------------------------------------------------------------
# the map Omega onto rotation orbits of compositions

def energy_composition_of(sigma, d: int) -> tuple:
    fence = build_fence(sigma, d)
    return fence.energy_composition(fence.transversal())


def omega(sigma, n: int, d: int) -> frozenset:
    """The rotation orbit of the energy composition of (any transversal of)
    the fence of the timeline through sigma.  Constant on Phi-orbits."""
    if len(sigma) != n:
        raise ValueError("labeling size mismatch")
    return rot_orbit(energy_composition_of(sigma, d))


# ---------------------------------------------------------------------------
# rendering and traces

def _coin_letter(c: int) -> str:
    return chr(ord("a") + c - 1)


def render_stones_ascii(sigma, t: int, d: int) -> str:
    """One line per state: cycle vertices clockwise, each as
    vertex:replica with [x] marking the stone of coin x."""
    n = len(sigma)
    view = stones_diagram(sigma, t, d)
    coins = coins_diagram(sigma, t, d)
    letter_of_stone = {m: _coin_letter(c) for c, m in coins["stone_of_coin"].items()}
    cells = []
    for w in range(1, n + 1):
        cell = f"{w}:v{view[w]['replica']}"
        if view[w]["stone"] is not None:
            cell += f"[{letter_of_stone[view[w]['stone']]}]"
        cells.append(cell)
    return "( " + " ".join(cells) + " )"


def render_coins_ascii(sigma, t: int, d: int, directions=None) -> str:
    """Path row: a coin letter (with an expectation arrow when supplied) or
    a dot per vertex, then the labeling."""
    n = len(sigma)
    coins = coins_diagram(sigma, t, d)
    row = ["."] * n
    for name, v in coins["positions"].items():
        cell = _coin_letter(name)
        if directions is not None:
            cell = ("<" + cell) if directions[name - 1] == LEFT else (cell + ">")
        row[v - 1] = cell
    labels = ",".join(str(x) for x in sigma)
    return " ".join(f"{c:>2}" for c in row) + f"   labels: {labels}"


def render_state_ascii(sigma, t: int, d: int, directions=None) -> str:
    return (f"t={t}\n  stones: " + render_stones_ascii(sigma, t, d)
            + "\n  coins:  " + render_coins_ascii(sigma, t, d, directions))


def render_state_svg(sigma, t: int, d: int) -> str:
    """Static SVG with the same content as the ASCII views."""
    _math = math
    n = len(sigma)
    view = stones_diagram(sigma, t, d)
    coins = coins_diagram(sigma, t, d)
    palette = ["#d4a017", "#1f77b4", "#2ca02c", "#d62728", "#9467bd",
               "#8c564b", "#e377c2", "#7f7f7f"]
    color_of_stone = {m: palette[(c - 1) % len(palette)]
                      for c, m in coins["stone_of_coin"].items()}
    cx, cy, radius = 150, 130, 90
    parts = [
        '<svg xmlns="http://www.w3.org/2000/svg" width="320" height="320" '
        'viewBox="0 0 320 320">',
        f'<text x="10" y="20" font-size="12">t={t}</text>',
        f'<circle cx="{cx}" cy="{cy}" r="{radius}" fill="none" stroke="#999"/>',
    ]
    for w in range(1, n + 1):
        ang = 2 * _math.pi * (w - 1) / n - _math.pi / 2
        x = cx + radius * _math.cos(ang)
        y = cy + radius * _math.sin(ang)
        stone = view[w]["stone"]
        if stone is not None:
            parts.append(f'<circle cx="{x:.1f}" cy="{y:.1f}" r="12" '
                         f'fill="{color_of_stone[stone]}"/>')
        parts.append(f'<circle cx="{x:.1f}" cy="{y:.1f}" r="6" fill="#fff" '
                     'stroke="#333"/>')
        parts.append(f'<text x="{x:.1f}" y="{y + 3:.1f}" font-size="8" '
                     f'text-anchor="middle">v{view[w]["replica"]}</text>')
        lx = cx + (radius + 18) * _math.cos(ang)
        ly = cy + (radius + 18) * _math.sin(ang)
        parts.append(f'<text x="{lx:.1f}" y="{ly + 3:.1f}" font-size="9" '
                     f'text-anchor="middle" fill="#555">{w}</text>')
    y0 = 280
    pos_to_coin = {v: name for name, v in coins["positions"].items()}
    for v in range(1, n + 1):
        x = 30 + (v - 1) * (260 / max(1, n - 1))
        parts.append(f'<circle cx="{x:.1f}" cy="{y0}" r="5" fill="#fff" '
                     'stroke="#333"/>')
        if v in pos_to_coin:
            stone = coins["stone_of_coin"][pos_to_coin[v]]
            parts.append(f'<circle cx="{x:.1f}" cy="{y0 - 14}" r="8" '
                         f'fill="{color_of_stone[stone]}"/>')
        parts.append(f'<text x="{x:.1f}" y="{y0 + 16}" font-size="8" '
                     f'text-anchor="middle">{sigma[v - 1]}</text>')
    parts.append("</svg>")
    return "".join(parts)


def trace_records(seed, d: int, t_end: int) -> list[dict]:
    """JSON-ready small-step trace of the timeline of (seed, 0)."""
    sim = Simulation(seed, d)
    sim.extend_to_time(t_end)
    return [rec.to_json() for rec in sim.records]
