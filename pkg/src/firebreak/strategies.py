"""Named defence strategies.

Each scripted strategy is tied to the orientation family it was designed for
and reads the construction details from ``Orientation.meta``; on any other
orientation it degrades to the greedy baseline.
"""

from __future__ import annotations

from typing import Optional

from .graphs import GraphError, Orientation, bits, popcount
from .game import FireState, Strategy


class GreedyOutdeg(Strategy):
    """Protect frontier vertices with the largest unprotected out-reach."""

    name = "greedy-outdeg"

    def decide(self, state: FireState) -> list[int]:
        frontier = state.frontier()
        if not frontier:
            return []
        om = state.orientation.out_mask
        free = state.free()
        ranked = sorted(bits(frontier), key=lambda v: (-popcount(om[v] & free), v))
        return ranked[: state.f]


class LayerStrategy(Strategy):
    """Protect one vertex at distance t from the start at each time t, which
    saves at least ecc(start) vertices overall."""

    name = "layer"

    def __init__(self):
        self._dist: Optional[list[float]] = None

    def decide(self, state: FireState) -> list[int]:
        if self._dist is None:
            from .graphs import metrics

            self._dist = metrics(state.orientation).dist[state.start]
        layer = [
            v
            for v in bits(state.free())
            if self._dist[v] == state.time
        ]
        return layer[: state.f]


class ScriptedStrategy(Strategy):
    """Explicit per-time protect sets."""

    name = "scripted"

    def __init__(self, script: dict[int, list[int]]):
        self.script = {int(t): list(vs) for t, vs in script.items()}

    def decide(self, state: FireState) -> list[int]:
        return self.script.get(state.time, [])


class _ScriptOnFirstCall(Strategy):
    """Base for strategies that build a script once the start is known."""

    def __init__(self):
        self._script: Optional[dict[int, list[int]]] = None
        self._fallback: Optional[Strategy] = None

    def build(self, state: FireState) -> Optional[dict[int, list[int]]]:
        raise NotImplementedError

    def decide(self, state: FireState) -> list[int]:
        if self._fallback is not None:
            return self._fallback.decide(state)
        if self._script is None:
            self._script = self.build(state)
            if self._script is None:
                self._fallback = GreedyOutdeg()
                return self._fallback.decide(state)
        chosen = [
            v for v in self._script.get(state.time, [])
            if not ((state.burnt | state.protected) >> v) & 1
        ]
        return chosen[: state.f]


class CompleteCyclic(_ScriptOnFirstCall):
    """The three-wave blocking schedule for the cyclic tournament on K_n.

    With h = (n-1)/2 outgoing arcs per vertex, protect the top f consecutive
    out-neighbours, then the top f of the second wave, then the f vertices
    that close the ring; 1, 1 + (h-f), or n - 3f vertices burn depending on
    how f compares with h/2 and h.
    """

    name = "complete-cyclic"

    def build(self, state):
        meta = state.orientation.meta
        if meta.get("scheme") != "complete":
            return None
        order = list(meta["order"])
        sink = meta.get("sink")
        f = state.f
        start = state.start
        if sink is not None:
            if start == sink:
                return {}
            ring = [v for v in order if v != sink]
            if f >= len(order) // 2:
                # f covers the cyclic outs and the sink: stop at once
                h = (len(ring) - 1) // 2
                pos = ring.index(start)
                first = [ring[(pos + j) % len(ring)] for j in range(1, h + 1)]
                return {1: sorted(first + [sink])}
            return self._odd_script(ring, ring.index(start), f)
        return self._odd_script(order, order.index(start), f)

    @staticmethod
    def _odd_script(ring: list[int], pos: int, f: int) -> dict[int, list[int]]:
        n = len(ring)
        h = (n - 1) // 2
        rel = lambda lo, hi: [ring[(pos + j) % n] for j in range(lo, hi + 1)]
        if f >= h:
            return {1: rel(1, h)}
        if 2 * f >= h:
            return {1: rel(h - f + 1, h), 2: rel(h + 1, 2 * h - f)}
        return {
            1: rel(h - f + 1, h),
            2: rel(2 * h - 2 * f + 1, 2 * h - f),
            3: rel(2 * h - f + 1, 2 * h),
        }


class KTreeAnticipate(Strategy):
    """Protect the burn wave that is ceil(k/f) units away instead of the
    vertices next to the fire; by the time that wave is reached it is fully
    protected and the fire dies against it."""

    name = "ktree-anticipate"

    def __init__(self):
        self._queue: Optional[list[int]] = None
        self._fallback: Optional[Strategy] = None

    def decide(self, state: FireState) -> list[int]:
        if self._fallback is not None:
            return self._fallback.decide(state)
        if self._queue is None:
            meta = state.orientation.meta
            if meta.get("scheme") != "ktree":
                self._fallback = GreedyOutdeg()
                return self._fallback.decide(state)
            k = meta["k"]
            waves = _unobstructed_waves(state.orientation, state.start)
            arrival = -(-k // state.f)  # ceil(k/f)
            target = waves[arrival] if arrival < len(waves) else 0
            self._queue = sorted(bits(target))
        chosen = [
            v for v in self._queue
            if not ((state.burnt | state.protected) >> v) & 1
        ][: state.f]
        return chosen


def _unobstructed_waves(o: Orientation, start: int) -> list[int]:
    """Burn sets per time unit with no defence: waves[i] burns at time i+1."""
    om = o.out_mask
    burnt = 1 << start
    waves = [burnt]
    frontier = om[start] & ~burnt
    while frontier:
        waves.append(frontier)
        burnt |= frontier
        nxt = 0
        for v in bits(frontier):
            nxt |= om[v]
        frontier = nxt & ~burnt
    return waves


class SubcubicBlock(Strategy):
    """Block the outgoing cycle arc first; the path or bridge arc then leads
    to a vertex of outdegree at most one, which is blocked next."""

    name = "subcubic"

    def __init__(self):
        self._fallback: Optional[Strategy] = None

    def decide(self, state: FireState) -> list[int]:
        if self._fallback is None and state.orientation.meta.get("labels") is None:
            self._fallback = GreedyOutdeg()
        if self._fallback is not None:
            return self._fallback.decide(state)
        o = state.orientation
        labels = o.meta["labels"]
        free = state.free()
        if state.time == 1:
            outs = [h for h in o.out[state.start] if (free >> h) & 1]
            if len(outs) <= state.f:
                return sorted(outs)
            cycle_heads = [
                h for i, (t, h) in enumerate(o.arcs)
                if t == state.start and labels[i] == "cycle" and (free >> h) & 1
            ]
            return sorted(cycle_heads)[: state.f] or sorted(outs)[: state.f]
        targets = 0
        for v in bits(state.last_burned):
            targets |= o.out_mask[v]
        return sorted(bits(targets & free))[: state.f]


class BipartiteBlock(Strategy):
    """Protect f out-neighbours of the start; on the one-way orientation the
    remaining out-neighbours are sinks."""

    name = "bipartite"

    def __init__(self):
        self._greedy = GreedyOutdeg()

    def decide(self, state: FireState) -> list[int]:
        if state.time == 1:
            free = state.free()
            outs = [h for h in state.orientation.out[state.start] if (free >> h) & 1]
            return sorted(outs)[: state.f]
        return self._greedy.decide(state)


class GridRect(_ScriptOnFirstCall):
    """Steer the fire of a rectangular grid into the first protected vertex:
    block the row arc, then the column arc two ahead, then the row arc of the
    third burning vertex, whose column arc points at the first block."""

    name = "grid-rect"

    def build(self, state):
        meta = state.orientation.meta
        if meta.get("scheme") != "grid-rect":
            return None
        w = meta["w"]
        o = state.orientation
        start = state.start

        def row_out(v):
            return next((x for x in o.out[v] if x // w == v // w), None)

        def col_out(v):
            return next((x for x in o.out[v] if x % w == v % w), None)

        h1 = row_out(start)
        v1 = col_out(start)
        if h1 is None or v1 is None:
            return None
        v2 = col_out(v1)
        x = row_out(v1)
        if v2 is None or x is None:
            return None
        x2 = row_out(x)
        if x2 is None:
            return None
        return {1: [h1], 2: [v2], 3: [x2]}


class GridTri(_ScriptOnFirstCall):
    """Triangular grid schedule: block the row arc, then outrun the burning
    pairs in the two sink rows one step ahead of their spread."""

    name = "grid-tri"

    def build(self, state):
        meta = state.orientation.meta
        if meta.get("scheme") != "grid-tri":
            return None
        w, h = meta["w"], meta["h"]
        start = state.start
        r, c = divmod(start, w)
        if r % 2 == 0:
            # sink row: single out-neighbour along the row
            return {1: [start + 1]} if c + 1 < w else {}
        if not (0 < r < h - 1 and c + 3 < w):
            return None
        up_right = (r - 1) * w + (c + 2)
        down_right = (r + 1) * w + (c + 3)
        return {1: [start + 1], 2: [up_right], 3: [down_right]}


def make_strategy(name: str, **params) -> Strategy:
    """Instantiate a registered strategy by name."""
    try:
        factory = STRATEGIES[name]
    except KeyError:
        raise GraphError(f"unknown strategy '{name}'") from None
    return factory(**params)


STRATEGIES = {
    "greedy-outdeg": GreedyOutdeg,
    "layer": LayerStrategy,
    "complete-cyclic": CompleteCyclic,
    "ktree-anticipate": KTreeAnticipate,
    "subcubic": SubcubicBlock,
    "bipartite": BipartiteBlock,
    "grid-rect": GridRect,
    "grid-tri": GridTri,
    "scripted": ScriptedStrategy,
}
