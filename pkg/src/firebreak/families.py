"""Graph family generators and small-graph enumeration.

Every generator tags the result with its family name and parameters in
``Graph.meta`` so downstream bound evaluation can recognise instances it has
exact formulas for. Random families are deterministic in the seed.
"""

from __future__ import annotations

import random
from itertools import combinations
from typing import Iterator

from .graphs import Graph, GraphError


def generate(family: str, **params) -> Graph:
    """Build a named graph family instance; see FAMILIES for the registry."""
    try:
        builder = FAMILIES[family]
    except KeyError:
        raise GraphError(f"unknown family '{family}'") from None
    return builder(**params)


def _tagged(size, edges, family, **tag) -> Graph:
    return Graph(size, edges, meta={"family": family, **tag})


def complete(n: int) -> Graph:
    if n < 1:
        raise GraphError("complete graph needs n >= 1")
    return _tagged(n, list(combinations(range(n), 2)), "complete", n=n)


def complete_bipartite(p: int, q: int) -> Graph:
    if p < 1 or q < 1:
        raise GraphError("complete bipartite graph needs p, q >= 1")
    edges = [(a, p + b) for a in range(p) for b in range(q)]
    return _tagged(p + q, edges, "complete_bipartite", p=p, q=q)


def path(n: int) -> Graph:
    if n < 1:
        raise GraphError("path needs n >= 1")
    return _tagged(n, [(i, i + 1) for i in range(n - 1)], "path", n=n)


def cycle(n: int) -> Graph:
    if n < 3:
        raise GraphError("cycle needs n >= 3")
    return _tagged(n, [(i, (i + 1) % n) for i in range(n)], "cycle", n=n)


def star(n: int) -> Graph:
    """Star on n vertices: centre 0 joined to n-1 leaves."""
    if n < 1:
        raise GraphError("star needs n >= 1")
    return _tagged(n, [(0, i) for i in range(1, n)], "star", n=n)


def path_power(n: int, k: int) -> Graph:
    """kth power of the path: ids adjacent when at distance at most k."""
    if n < 1 or k < 1:
        raise GraphError("path power needs n >= 1 and k >= 1")
    edges = [(i, j) for i in range(n) for j in range(i + 1, min(i + k, n - 1) + 1)]
    return _tagged(n, edges, "path_power", n=n, k=k)


def petersen() -> Graph:
    edges = [(i, (i + 1) % 5) for i in range(5)]
    edges += [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    edges += [(i, 5 + i) for i in range(5)]
    return _tagged(10, edges, "petersen")


def cube() -> Graph:
    """3-dimensional hypercube Q3."""
    edges = [(u, u ^ (1 << b)) for u in range(8) for b in range(3) if u < u ^ (1 << b)]
    return _tagged(8, edges, "cube")


def prism(n: int = 3) -> Graph:
    """n-prism: two n-cycles joined by a perfect matching."""
    if n < 3:
        raise GraphError("prism needs n >= 3")
    edges = [(i, (i + 1) % n) for i in range(n)]
    edges += [(n + i, n + (i + 1) % n) for i in range(n)]
    edges += [(i, n + i) for i in range(n)]
    return _tagged(2 * n, edges, "prism", n=n)


def k33() -> Graph:
    g = complete_bipartite(3, 3)
    g.meta.update(family="complete_bipartite", p=3, q=3)
    return g


def grid_rect(w: int, h: int) -> Graph:
    """Rectangular grid patch with w columns and h rows; id = r*w + c."""
    if w < 2 or h < 2:
        raise GraphError("rectangular grid needs w, h >= 2")
    edges = []
    for r in range(h):
        for c in range(w):
            v = r * w + c
            if c + 1 < w:
                edges.append((v, v + 1))
            if r + 1 < h:
                edges.append((v, v + w))
    return _tagged(w * h, edges, "grid_rect", w=w, h=h)


def grid_tri(w: int, h: int) -> Graph:
    """Triangular grid patch; odd rows sit half a step to the right.

    Vertex (r, c) has id r*w + c. In-row edges join consecutive columns; the
    diagonal edges make every interior vertex degree 6.
    """
    if w < 2 or h < 2:
        raise GraphError("triangular grid needs w, h >= 2")
    edges = []
    for r in range(h):
        for c in range(w):
            v = r * w + c
            if c + 1 < w:
                edges.append((v, v + 1))
            if r + 1 < h:
                if r % 2 == 0:
                    if c - 1 >= 0:
                        edges.append((v, v + w - 1))
                    edges.append((v, v + w))
                else:
                    edges.append((v, v + w))
                    if c + 1 < w:
                        edges.append((v, v + w + 1))
    return _tagged(w * h, edges, "grid_tri", w=w, h=h)


def grid_hex(w: int, h: int) -> Graph:
    """Hexagonal grid patch in brick-wall form: the rectangular grid with
    vertical edges kept only where row+column is even. Subcubic."""
    if w < 2 or h < 2:
        raise GraphError("hexagonal grid needs w, h >= 2")
    edges = []
    for r in range(h):
        for c in range(w):
            v = r * w + c
            if c + 1 < w:
                edges.append((v, v + 1))
            if r + 1 < h and (r + c) % 2 == 0:
                edges.append((v, v + w))
    return _tagged(w * h, edges, "grid_hex", w=w, h=h)


def random_tree(n: int, seed: int = 0) -> Graph:
    """Uniform labelled tree via a random Pruefer sequence."""
    if n < 1:
        raise GraphError("tree needs n >= 1")
    if n == 1:
        return _tagged(1, [], "random_tree", n=1, seed=seed)
    if n == 2:
        return _tagged(2, [(0, 1)], "random_tree", n=2, seed=seed)
    rng = random.Random(seed)
    seq = [rng.randrange(n) for _ in range(n - 2)]
    degree = [1] * n
    for v in seq:
        degree[v] += 1
    edges = []
    import heapq

    leaves = [v for v in range(n) if degree[v] == 1]
    heapq.heapify(leaves)
    for v in seq:
        leaf = heapq.heappop(leaves)
        edges.append((leaf, v))
        degree[v] -= 1
        if degree[v] == 1:
            heapq.heappush(leaves, v)
    u = heapq.heappop(leaves)
    edges.append((u, heapq.heappop(leaves)))
    return _tagged(n, edges, "random_tree", n=n, seed=seed)


def random_ktree(n: int, k: int, seed: int = 0) -> Graph:
    """k-tree grown by repeatedly attaching a vertex to a random k-clique."""
    if k < 1 or n < k + 1:
        raise GraphError("k-tree needs k >= 1 and n >= k+1")
    rng = random.Random(seed)
    root = list(range(k + 1))
    edges = list(combinations(root, 2))
    cliques = [tuple(c) for c in combinations(root, k)]
    for u in range(k + 1, n):
        host = cliques[rng.randrange(len(cliques))]
        edges.extend((w, u) for w in host)
        for rest in combinations(host, k - 1):
            cliques.append(tuple(sorted(rest + (u,))))
    return _tagged(n, edges, "random_ktree", n=n, k=k, seed=seed)


def random_regular(n: int, d: int, seed: int = 0, connected: bool = True) -> Graph:
    """Random d-regular simple graph by the pairing model with rejection."""
    if n < d + 1 or (n * d) % 2 != 0:
        raise GraphError("d-regular graph needs n >= d+1 and n*d even")
    rng = random.Random(seed)
    stubs = [v for v in range(n) for _ in range(d)]
    for _ in range(10000):
        rng.shuffle(stubs)
        pairs = [(stubs[i], stubs[i + 1]) for i in range(0, len(stubs), 2)]
        seen = set()
        ok = True
        for u, v in pairs:
            key = (u, v) if u < v else (v, u)
            if u == v or key in seen:
                ok = False
                break
            seen.add(key)
        if not ok:
            continue
        g = Graph(n, pairs, meta={"family": "random_regular", "n": n, "d": d, "seed": seed})
        if connected and not g.is_connected():
            continue
        return g
    raise GraphError(f"no {d}-regular graph found for n={n}, seed={seed}")


FAMILIES = {
    "complete": complete,
    "complete_bipartite": complete_bipartite,
    "path": path,
    "cycle": cycle,
    "star": star,
    "path_power": path_power,
    "petersen": petersen,
    "cube": cube,
    "prism": prism,
    "k33": k33,
    "grid_rect": grid_rect,
    "grid_tri": grid_tri,
    "grid_hex": grid_hex,
    "random_tree": random_tree,
    "random_ktree": random_ktree,
    "random_regular": random_regular,
}


def enumerate_connected(n: int) -> Iterator[Graph]:
    """Yield every labelled simple connected graph on n vertices exactly once.

    Runs over all 2^C(n,2) adjacency masks, so n is capped at 6.
    """
    if not 1 <= n <= 6:
        raise GraphError("labelled enumeration supports 1 <= n <= 6")
    pair_list = list(combinations(range(n), 2))
    for word in range(1 << len(pair_list)):
        edges = [pair_list[i] for i in range(len(pair_list)) if (word >> i) & 1]
        if len(edges) < n - 1:
            continue
        g = Graph(n, edges)
        if g.is_connected():
            yield g
