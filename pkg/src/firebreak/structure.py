"""Structural subroutines used by the orientation constructions.

Everything here is exhaustive or greedy-deterministic and intended for the
small instances the rest of the package works with.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Optional

from .graphs import Graph, GraphError, bits, mask_of, popcount


def greedy_colouring(g: Graph) -> list[list[int]]:
    """Proper colouring by smallest available colour in ascending id order."""
    colour = [-1] * g.n
    for v in range(g.n):
        used = {colour[w] for w, _ in g.adj[v] if colour[w] >= 0}
        c = 0
        while c in used:
            c += 1
        colour[v] = c
    parts = max(colour, default=-1) + 1
    return [[v for v in range(g.n) if colour[v] == c] for c in range(parts)]


def exact_colouring(g: Graph, k: int) -> Optional[list[list[int]]]:
    """Backtracking proper k-colouring, or None when infeasible.

    Intended for n up to about 20.
    """
    if k < 0 or k > g.n:
        raise GraphError("exact colouring needs 0 <= k <= n")
    colour = [-1] * g.n
    # order vertices by descending degree for earlier failures
    order = sorted(range(g.n), key=lambda v: (-g.degree(v), v))

    def assign(i: int, used: int) -> bool:
        if i == g.n:
            return True
        v = order[i]
        taken = {colour[w] for w, _ in g.adj[v] if colour[w] >= 0}
        for c in range(min(used + 1, k)):
            if c in taken:
                continue
            colour[v] = c
            if assign(i + 1, max(used, c + 1)):
                return True
            colour[v] = -1
        return False

    if not assign(0, 0):
        return None
    return [[v for v in range(g.n) if colour[v] == c] for c in range(max(colour) + 1)]


def is_proper_colouring(g: Graph, parts: list[list[int]]) -> bool:
    colour = {}
    for c, part in enumerate(parts):
        for v in part:
            colour[v] = c
    if len(colour) != g.n:
        return False
    return all(colour[u] != colour[v] for u, v in g.edges)


def forest_peel(g: Graph) -> list[list[int]]:
    """Partition the edges into forests by repeatedly removing a maximal
    depth-first spanning forest.

    Each part is a list of edge indices and is acyclic; the part count is an
    upper estimate of the arboricity. The depth-first walk matters: it leaves
    long paths rather than stars behind, so dense graphs peel in fewer rounds.
    """
    remaining = set(range(g.m))
    parts: list[list[int]] = []
    while remaining:
        inc: list[list[tuple[int, int]]] = [[] for _ in range(g.n)]
        for i in sorted(remaining):
            u, v = g.edges[i]
            inc[u].append((v, i))
            inc[v].append((u, i))
        part: list[int] = []
        seen = [False] * g.n
        for root in range(g.n):
            if seen[root] or not inc[root]:
                continue
            seen[root] = True
            stack = [(root, 0)]
            while stack:
                v, idx = stack[-1]
                descended = False
                while idx < len(inc[v]):
                    w, i = inc[v][idx]
                    idx += 1
                    if not seen[w]:
                        seen[w] = True
                        part.append(i)
                        stack[-1] = (v, idx)
                        stack.append((w, 0))
                        descended = True
                        break
                if not descended:
                    stack.pop()
        remaining.difference_update(part)
        parts.append(sorted(part))
    return parts


def is_forest(g: Graph, edge_indices) -> bool:
    parent = list(range(g.n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for i in edge_indices:
        u, v = g.edges[i]
        ru, rv = find(u), find(v)
        if ru == rv:
            return False
        parent[ru] = rv
    return True


def min_fvs(g: Graph) -> int:
    """Smallest vertex bitmask whose removal leaves a forest, by exhaustive
    search in increasing size; intended for n up to about 20."""
    for size in range(g.n + 1):
        for subset in combinations(range(g.n), size):
            removed = mask_of(subset)
            keep = [(u, v) for u, v in g.edges if not ((removed >> u) | (removed >> v)) & 1]
            if Graph(g.n, keep).is_acyclic():
                return removed
    return (1 << g.n) - 1


def perfect_matching(g: Graph, must_include: Optional[int] = None) -> Optional[list[int]]:
    """Perfect matching of a (multi)graph as edge indices, or None.

    ``must_include`` forces one edge index into the matching. Written for the
    cubic components of the bounded-outdegree construction, where existence
    is guaranteed, but works on any small graph.
    """
    if g.n % 2 != 0:
        return None
    chosen: list[int] = []
    start_mask = 0
    if must_include is not None:
        u, v = g.edges[must_include]
        start_mask = (1 << u) | (1 << v)
        chosen.append(must_include)

    def extend(matched: int) -> bool:
        free = ~matched & ((1 << g.n) - 1)
        if not free:
            return True
        v = (free & -free).bit_length() - 1
        for w, i in g.adj[v]:
            if (matched >> w) & 1:
                continue
            chosen.append(i)
            if extend(matched | (1 << v) | (1 << w)):
                return True
            chosen.pop()
        return False

    return sorted(chosen) if extend(start_mask) else None


@dataclass
class SuppressedCubic:
    """Cubic multigraph obtained by smoothing away degree-2 vertices.

    ``vertex_map[i]`` is the original id of reduced vertex i. ``paths`` maps a
    reduced edge index to the full original vertex path it replaces, kept only
    for edges that absorbed at least one internal degree-2 vertex.
    """

    reduced: Graph
    vertex_map: list[int]
    paths: dict[int, tuple[int, ...]]

    def path(self, edge_index: int) -> tuple[int, ...]:
        """Original vertex path of a reduced edge, endpoints included."""
        if edge_index in self.paths:
            return self.paths[edge_index]
        u, v = self.reduced.edges[edge_index]
        return (self.vertex_map[u], self.vertex_map[v])

    def expand_edges(self) -> list[tuple[int, int]]:
        out = []
        for i in range(self.reduced.m):
            p = self.path(i)
            out.extend(zip(p, p[1:]))
        return out


def suppress_degree2(g: Graph) -> SuppressedCubic:
    """Replace every maximal path whose internal vertices have degree 2 with a
    single edge between its degree-3 endpoints.

    Requires a 2-edge-connected subcubic graph with at least two degree-3
    vertices (a pure cycle has no such reduction).
    """
    deg = g.degrees()
    if any(d not in (2, 3) for d in deg):
        raise GraphError("reduction needs a 2-edge-connected graph with degrees 2 and 3")
    branch = [v for v in range(g.n) if deg[v] == 3]
    if len(branch) < 2:
        raise GraphError("reduction needs at least two degree-3 vertices")
    vertex_map = branch
    index = {v: i for i, v in enumerate(branch)}
    used_edges = set()
    reduced_edges: list[tuple[int, int]] = []
    paths: dict[int, tuple[int, ...]] = {}
    for v in branch:
        for w, eidx in g.adj[v]:
            if eidx in used_edges:
                continue
            # walk the maximal path starting with edge v-w
            trail = [v, w]
            used = [eidx]
            prev_edge = eidx
            cur = w
            while deg[cur] == 2:
                nxt = next((x, i) for x, i in g.adj[cur] if i != prev_edge)
                cur, prev_edge = nxt[0], nxt[1]
                trail.append(cur)
                used.append(prev_edge)
            used_edges.update(used)
            reduced_edges.append((index[trail[0]], index[trail[-1]]))
            if len(trail) > 2:
                paths[len(reduced_edges) - 1] = tuple(trail)
    reduced = Graph(len(branch), reduced_edges)
    if any(d != 3 for d in reduced.degrees()):
        raise GraphError("reduction did not produce a cubic multigraph")
    return SuppressedCubic(reduced=reduced, vertex_map=vertex_map, paths=paths)


@dataclass
class KTreeStructure:
    """Recognition certificate of a k-tree.

    ``order`` lists the vertices outside the central clique in the order they
    can be attached, each with the k-clique it attaches to; reversing it peels
    the graph down to the central clique.
    """

    k: int
    cliques: list[tuple[int, ...]]
    central: tuple[int, ...]
    order: list[tuple[int, tuple[int, ...]]]


def ktree_structure(g: Graph, k: int) -> Optional[KTreeStructure]:
    """Recognise a k-tree and derive a construction order from the clique that
    minimises the largest distance to any vertex (ties: lexicographic)."""
    if k < 1 or g.n < k + 1 or g.m != k * g.n - k * (k + 1) // 2:
        return None
    if g.has_parallel_edges() or not g.is_connected():
        return None
    cliques = _ktree_cliques(g, k)
    if cliques is None:
        return None
    central = _central_clique(g, cliques)
    order = _construction_order(g, k, central)
    if order is None:
        return None
    return KTreeStructure(k=k, cliques=cliques, central=central, order=order)


def _ktree_cliques(g: Graph, k: int) -> Optional[list[tuple[int, ...]]]:
    """All (k+1)-cliques, collected while eliminating simplicial vertices."""
    am = list(g.adj_mask)
    alive = (1 << g.n) - 1
    cliques = set()
    for _ in range(g.n - k - 1):
        v = _simplicial_vertex(am, alive, k, forbidden=0)
        if v is None:
            return None
        hood = am[v] & alive
        cliques.add(tuple(sorted(bits(hood | (1 << v)))))
        alive &= ~(1 << v)
    rest = tuple(sorted(bits(alive)))
    for u in rest:
        if (am[u] & alive) != alive & ~(1 << u):
            return None
    cliques.add(rest)
    return sorted(cliques)


def _simplicial_vertex(am: list[int], alive: int, k: int, forbidden: int) -> Optional[int]:
    for v in bits(alive & ~forbidden):
        hood = am[v] & alive
        if popcount(hood) != k:
            continue
        if all(am[w] & hood == hood & ~(1 << w) for w in bits(hood)):
            return v
    return None


def _central_clique(g: Graph, cliques: list[tuple[int, ...]]) -> tuple[int, ...]:
    from .graphs import metrics

    dist = metrics(g).dist
    best = None
    for clique in cliques:
        radius = max(min(dist[v][w] for w in clique) for v in range(g.n))
        key = (radius, clique)
        if best is None or key < best[0]:
            best = (key, clique)
    return best[1]


def _construction_order(g: Graph, k: int, central: tuple[int, ...]):
    am = list(g.adj_mask)
    alive = (1 << g.n) - 1
    keep = mask_of(central)
    removed = []
    while popcount(alive) > k + 1:
        v = _simplicial_vertex(am, alive, k, forbidden=keep)
        if v is None:
            return None
        hood = tuple(sorted(bits(am[v] & alive)))
        removed.append((v, hood))
        alive &= ~(1 << v)
    if alive != keep:
        return None
    removed.reverse()
    return removed


def regularize(g: Graph, target: int) -> Graph:
    """Embed g in a target-regular supergraph by repeatedly taking two copies
    and joining deficient vertices; g sits on the first n vertex ids."""
    if target < g.max_degree():
        raise GraphError("target degree below the maximum degree")
    cur = g
    while any(d != target for d in cur.degrees()):
        n = cur.n
        edges = list(cur.edges)
        edges.extend((u + n, v + n) for u, v in cur.edges)
        for v in range(n):
            if cur.degree(v) < target:
                edges.append((v, v + n))
        cur = Graph(2 * n, edges)
    return cur
