"""Core graph and orientation types.

Vertices are dense integer ids 0..n-1 and every vertex set in the package is
an int bitmask, which keeps the game solver's inner loops cheap. Graphs are
immutable after construction. Parallel edges are tolerated internally (the
cubic reduction needs them); the text format and the generators only produce
simple graphs.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Optional, Sequence

INF = float("inf")


class GraphError(ValueError):
    """Structural precondition violated (bad input graph or parameters)."""


class ParseError(GraphError):
    """Malformed graph or orientation text; carries the offending line number."""

    def __init__(self, message: str, line: int):
        super().__init__(f"line {line}: {message}")
        self.line = line


# ---------------------------------------------------------------------------
# bitmask vertex sets


def mask_of(vertices: Iterable[int]) -> int:
    m = 0
    for v in vertices:
        m |= 1 << v
    return m


def bits(mask: int) -> Iterator[int]:
    """Iterate set bit positions in ascending order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def popcount(mask: int) -> int:
    return mask.bit_count()


# ---------------------------------------------------------------------------
# graphs


class Graph:
    """Finite undirected graph on vertices 0..n-1, loops forbidden."""

    __slots__ = ("n", "edges", "meta", "_adj", "_adj_mask")

    def __init__(self, n: int, edges: Sequence[tuple[int, int]], meta: Optional[dict] = None):
        if n < 0:
            raise GraphError("vertex count must be non-negative")
        edges = tuple((int(u), int(v)) for u, v in edges)
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise GraphError(f"edge ({u},{v}) has an endpoint outside 0..{n - 1}")
            if u == v:
                raise GraphError(f"loop edge ({u},{u}) is forbidden")
        self.n = n
        self.edges = edges
        self.meta = dict(meta) if meta else {}
        self._adj: Optional[list[list[tuple[int, int]]]] = None
        self._adj_mask: Optional[list[int]] = None

    @property
    def m(self) -> int:
        return len(self.edges)

    @property
    def adj(self) -> list[list[tuple[int, int]]]:
        """Incidence lists: adj[v] = [(neighbour, edge index), ...]."""
        if self._adj is None:
            adj: list[list[tuple[int, int]]] = [[] for _ in range(self.n)]
            for i, (u, v) in enumerate(self.edges):
                adj[u].append((v, i))
                adj[v].append((u, i))
            self._adj = adj
        return self._adj

    @property
    def adj_mask(self) -> list[int]:
        """Neighbourhood bitmasks (parallel edges collapse)."""
        if self._adj_mask is None:
            am = [0] * self.n
            for u, v in self.edges:
                am[u] |= 1 << v
                am[v] |= 1 << u
            self._adj_mask = am
        return self._adj_mask

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    def degrees(self) -> list[int]:
        return [len(a) for a in self.adj]

    def max_degree(self) -> int:
        return max(self.degrees(), default=0)

    def min_degree(self) -> int:
        return min(self.degrees(), default=0)

    def has_parallel_edges(self) -> bool:
        seen = set()
        for u, v in self.edges:
            key = (u, v) if u < v else (v, u)
            if key in seen:
                return True
            seen.add(key)
        return False

    def is_connected(self) -> bool:
        if self.n <= 1:
            return True
        seen = 1
        stack = [0]
        am = self.adj_mask
        while stack:
            v = stack.pop()
            new = am[v] & ~seen
            seen |= new
            stack.extend(bits(new))
        return popcount(seen) == self.n

    def components(self) -> list[int]:
        """Connected components as vertex bitmasks."""
        remaining = (1 << self.n) - 1
        am = self.adj_mask
        comps = []
        while remaining:
            v = (remaining & -remaining).bit_length() - 1
            seen = 1 << v
            stack = [v]
            while stack:
                u = stack.pop()
                new = am[u] & ~seen
                seen |= new
                stack.extend(bits(new))
            comps.append(seen)
            remaining &= ~seen
        return comps

    def is_acyclic(self) -> bool:
        """True when the edge multiset contains no cycle (parallel edges count)."""
        parent = list(range(self.n))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for u, v in self.edges:
            ru, rv = find(u), find(v)
            if ru == rv:
                return False
            parent[ru] = rv
        return True

    def subgraph(self, vertices: int) -> tuple["Graph", list[int]]:
        """Induced subgraph on a vertex bitmask; returns it with the id map back."""
        vmap = list(bits(vertices))
        index = {v: i for i, v in enumerate(vmap)}
        sub_edges = [
            (index[u], index[v]) for u, v in self.edges if (vertices >> u) & 1 and (vertices >> v) & 1
        ]
        return Graph(len(vmap), sub_edges), vmap

    def __eq__(self, other) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        norm = lambda es: sorted((u, v) if u < v else (v, u) for u, v in es)
        return self.n == other.n and norm(self.edges) == norm(other.edges)

    def __hash__(self):
        norm = tuple(sorted((u, v) if u < v else (v, u) for u, v in self.edges))
        return hash((self.n, norm))

    def __repr__(self):
        return f"Graph(n={self.n}, m={self.m})"


class Orientation:
    """An undirected graph together with one direction per edge.

    ``arcs[i]`` is the edge ``graph.edges[i]`` written as (tail, head).
    ``meta`` carries construction details (scheme name, arc labels, grid
    dimensions) that scripted strategies rely on.
    """

    __slots__ = ("graph", "arcs", "meta", "_out", "_out_mask", "_in_deg")

    def __init__(self, graph: Graph, arcs: Sequence[tuple[int, int]], meta: Optional[dict] = None):
        arcs = tuple((int(t), int(h)) for t, h in arcs)
        if len(arcs) != graph.m:
            raise GraphError("exactly one direction per edge is required")
        for i, (t, h) in enumerate(arcs):
            u, v = graph.edges[i]
            if {t, h} != {u, v}:
                raise GraphError(f"arc {t}->{h} does not orient edge {i} ({u},{v})")
        self.graph = graph
        self.arcs = arcs
        self.meta = dict(meta) if meta else {}
        self._out: Optional[list[list[int]]] = None
        self._out_mask: Optional[list[int]] = None
        self._in_deg: Optional[list[int]] = None

    @property
    def n(self) -> int:
        return self.graph.n

    @property
    def out(self) -> list[list[int]]:
        if self._out is None:
            out: list[list[int]] = [[] for _ in range(self.graph.n)]
            for t, h in self.arcs:
                out[t].append(h)
            self._out = out
        return self._out

    @property
    def out_mask(self) -> list[int]:
        if self._out_mask is None:
            om = [0] * self.graph.n
            for t, h in self.arcs:
                om[t] |= 1 << h
            self._out_mask = om
        return self._out_mask

    def out_degree(self, v: int) -> int:
        return len(self.out[v])

    def in_degree(self, v: int) -> int:
        if self._in_deg is None:
            ind = [0] * self.graph.n
            for _, h in self.arcs:
                ind[h] += 1
            self._in_deg = ind
        return self._in_deg[v]

    def max_out_degree(self) -> int:
        return max((len(o) for o in self.out), default=0)

    def direction_bits(self) -> int:
        """Bitmask with bit i set when edge i runs higher id to lower id."""
        word = 0
        for i, (t, h) in enumerate(self.arcs):
            if t > h:
                word |= 1 << i
        return word

    def __eq__(self, other) -> bool:
        if not isinstance(other, Orientation):
            return NotImplemented
        return self.graph == other.graph and self.arcs == other.arcs

    def __hash__(self):
        return hash((self.graph, self.arcs))

    def __repr__(self):
        return f"Orientation(n={self.n}, m={len(self.arcs)})"


def orientation_from_bits(graph: Graph, word: int, meta: Optional[dict] = None) -> Orientation:
    """Orientation where bit i = 0 orients edge i from its lower id to its higher id."""
    arcs = []
    for i, (u, v) in enumerate(graph.edges):
        lo, hi = (u, v) if u < v else (v, u)
        arcs.append((hi, lo) if (word >> i) & 1 else (lo, hi))
    return Orientation(graph, arcs, meta)


def bidirected_out_masks(graph: Graph) -> list[int]:
    """Out-neighbour masks of the digraph with both arcs per edge."""
    return list(graph.adj_mask)


# ---------------------------------------------------------------------------
# text formats
#
# Graph file:        '#' comments, header "p <n> <m>", then "e <u> <v>" lines.
# Orientation file:  header "o <n> <m>", then "a <u> <v>" lines (arc u->v),
#                    one per underlying edge.


def read_graph(text: str) -> Graph:
    n, edges = _parse_listing(text, header="p", item="e", allow_parallel=False)
    return Graph(n, edges)


def write_graph(g: Graph) -> str:
    lines = [f"p {g.n} {g.m}"]
    lines.extend(f"e {u} {v}" for u, v in g.edges)
    return "\n".join(lines) + "\n"


def read_orientation(text: str) -> Orientation:
    meta = None
    for raw in text.splitlines():
        line = raw.strip()
        if line.startswith("# meta "):
            import json

            try:
                meta = json.loads(line[len("# meta "):])
            except ValueError:
                meta = None
            break
    n, arcs = _parse_listing(text, header="o", item="a", allow_parallel=True)
    edges = [(min(t, h), max(t, h)) for t, h in arcs]
    seen = set()
    for ln, e in enumerate(edges):
        if e in seen:
            raise ParseError(f"parallel edge ({e[0]},{e[1]})", ln + 2)
        seen.add(e)
    graph = Graph(n, edges)
    return Orientation(graph, arcs, meta=meta)


def write_orientation(o: Orientation) -> str:
    lines = [f"o {o.graph.n} {o.graph.m}"]
    if o.meta:
        import json

        lines.insert(0, "# meta " + json.dumps(o.meta, sort_keys=True))
    lines.extend(f"a {t} {h}" for t, h in o.arcs)
    return "\n".join(lines) + "\n"


def _parse_listing(text: str, header: str, item: str, allow_parallel: bool):
    n = None
    m = None
    pairs: list[tuple[int, int]] = []
    seen = set()
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if parts[0] == header:
            if n is not None:
                raise ParseError("duplicate header", lineno)
            if len(parts) != 3:
                raise ParseError(f"header must be '{header} <n> <m>'", lineno)
            try:
                n, m = int(parts[1]), int(parts[2])
            except ValueError:
                raise ParseError("header counts must be integers", lineno) from None
            if n < 0 or m < 0:
                raise ParseError("header counts must be non-negative", lineno)
        elif parts[0] == item:
            if n is None:
                raise ParseError(f"'{item}' line before header", lineno)
            if len(parts) != 3:
                raise ParseError(f"expected '{item} <u> <v>'", lineno)
            try:
                u, v = int(parts[1]), int(parts[2])
            except ValueError:
                raise ParseError("endpoints must be integers", lineno) from None
            if u == v:
                raise ParseError(f"loop edge ({u},{u})", lineno)
            if not (0 <= u < n and 0 <= v < n):
                raise ParseError(f"endpoint out of range in ({u},{v})", lineno)
            if not allow_parallel:
                key = (u, v) if u < v else (v, u)
                if key in seen:
                    raise ParseError(f"parallel edge ({u},{v})", lineno)
                seen.add(key)
            pairs.append((u, v))
        else:
            raise ParseError(f"unknown record '{parts[0]}'", lineno)
    if n is None:
        raise ParseError("missing header", max(1, text.count("\n") + 1))
    if len(pairs) != m:
        raise ParseError(f"header announces {m} lines, found {len(pairs)}", max(1, text.count("\n") + 1))
    return n, pairs


def to_dot(obj: Graph | Orientation, name: str = "g") -> str:
    if isinstance(obj, Orientation):
        lines = [f"digraph {name} {{"]
        lines.extend(f"  {t} -> {h};" for t, h in obj.arcs)
    else:
        lines = [f"graph {name} {{"]
        lines.extend(f"  {u} -- {v};" for u, v in obj.edges)
        for v in range(obj.n):
            if not obj.adj[v]:
                lines.append(f"  {v};")
    lines.append("}")
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# distances


@dataclass
class Metrics:
    """All-pairs BFS distances with eccentricities, radius, and diameter.

    Unreachable pairs have distance inf, and eccentricities account for them;
    diameter is the largest finite pairwise distance.
    """

    dist: list[list[float]]
    ecc: list[float]
    rad: float
    diam: float


def metrics(obj: Graph | Orientation) -> Metrics:
    if isinstance(obj, Orientation):
        n, nbr = obj.graph.n, obj.out_mask
    else:
        n, nbr = obj.n, obj.adj_mask
    dist: list[list[float]] = []
    for s in range(n):
        row: list[float] = [INF] * n
        row[s] = 0
        frontier = 1 << s
        seen = frontier
        d = 0
        while frontier:
            d += 1
            nxt = 0
            for v in bits(frontier):
                nxt |= nbr[v]
            nxt &= ~seen
            for v in bits(nxt):
                row[v] = d
            seen |= nxt
            frontier = nxt
        dist.append(row)
    ecc = [max(row) if n > 1 else 0 for row in dist]
    rad = min(ecc) if n else 0
    finite = [d for row in dist for d in row if d != INF]
    diam = max(finite) if finite else 0
    return Metrics(dist=dist, ecc=ecc, rad=rad, diam=diam)


# ---------------------------------------------------------------------------
# bridges


def bridges(g: Graph) -> tuple[set[int], list[int]]:
    """Bridge edge indices and the 2-edge-connected components they separate.

    An edge is a bridge when its removal disconnects its component; parallel
    edges are never bridges. Components are returned as vertex bitmasks and
    partition V after the bridges are deleted.
    """
    n = g.n
    adj = g.adj
    visited = [False] * n
    disc = [0] * n
    low = [0] * n
    bridge_set: set[int] = set()
    timer = 1
    for root in range(n):
        if visited[root]:
            continue
        # iterative DFS tracking the edge used to enter each vertex
        stack: list[tuple[int, int, int]] = [(root, -1, 0)]
        visited[root] = True
        disc[root] = low[root] = timer
        timer += 1
        while stack:
            v, in_edge, idx = stack[-1]
            if idx < len(adj[v]):
                stack[-1] = (v, in_edge, idx + 1)
                w, eidx = adj[v][idx]
                if eidx == in_edge:
                    continue
                if visited[w]:
                    low[v] = min(low[v], disc[w])
                else:
                    visited[w] = True
                    disc[w] = low[w] = timer
                    timer += 1
                    stack.append((w, eidx, 0))
            else:
                stack.pop()
                if stack:
                    p = stack[-1][0]
                    low[p] = min(low[p], low[v])
                    if low[v] > disc[p]:
                        bridge_set.add(in_edge)
    # components of G minus bridges
    keep = [(u, v) for i, (u, v) in enumerate(g.edges) if i not in bridge_set]
    comps = Graph(n, keep).components() if n else []
    return bridge_set, comps
