"""Constructive edge orientations with guaranteed outdegree structure.

Each recipe returns an Orientation whose ``meta`` records the scheme and any
labelling the scripted defence strategies need (cycle/path/bridge arc labels,
grid dimensions, cyclic tournament order). Choices left open by the
constructions (tree roots, tie breaks, arc directions called arbitrary) are
fixed to smallest-id variants so identical inputs give identical outputs.
"""

from __future__ import annotations

from typing import Optional, Sequence

from .graphs import Graph, GraphError, Orientation, bits, bridges, mask_of, popcount
from . import families as gen
from .structure import (
    forest_peel,
    greedy_colouring,
    is_forest,
    is_proper_colouring,
    ktree_structure,
    min_fvs,
    perfect_matching,
    suppress_degree2,
)


def _edge_index(g: Graph) -> dict[tuple[int, int], int]:
    idx = {}
    for i, (u, v) in enumerate(g.edges):
        idx[(u, v)] = i
        idx[(v, u)] = i
    return idx


def _orient_forest_edges(g: Graph, edge_subset, arcs, roots: Optional[int] = None) -> None:
    """Orient a forest (given by edge indices) towards per-tree roots.

    Roots default to the smallest id in each tree; a bitmask of preferred
    roots can be supplied instead. Arcs run child to parent.
    """
    inc: list[list[tuple[int, int]]] = [[] for _ in range(g.n)]
    involved = 0
    for i in edge_subset:
        u, v = g.edges[i]
        inc[u].append((v, i))
        inc[v].append((u, i))
        involved |= (1 << u) | (1 << v)
    seen = 0
    order = []
    if roots is not None:
        order.extend(bits(roots & involved))
    order.extend(bits(involved))
    for root in order:
        if (seen >> root) & 1:
            continue
        seen |= 1 << root
        queue = [root]
        while queue:
            v = queue.pop()
            for w, i in inc[v]:
                if not (seen >> w) & 1:
                    seen |= 1 << w
                    arcs[i] = (w, v)
                    queue.append(w)


def _find_cycle(g: Graph, alive: set[int]):
    """A cycle within the given edge indices, as (edge index, tail, head)
    triples following the cycle, or None. Deterministic in id order."""
    state = [0] * g.n
    parent_edge = [-1] * g.n
    parent_vtx = [-1] * g.n
    for s in range(g.n):
        if state[s]:
            continue
        state[s] = 1
        stack = [(s, 0)]
        while stack:
            v, idx = stack[-1]
            advanced = False
            while idx < len(g.adj[v]):
                w, ei = g.adj[v][idx]
                idx += 1
                if ei not in alive or ei == parent_edge[v]:
                    continue
                if state[w] == 1:
                    cycle = [(ei, v, w)]
                    x = v
                    while x != w:
                        cycle.append((parent_edge[x], parent_vtx[x], x))
                        x = parent_vtx[x]
                    cycle.reverse()
                    return cycle
                if state[w] == 0:
                    state[w] = 1
                    parent_edge[w] = ei
                    parent_vtx[w] = v
                    stack[-1] = (v, idx)
                    stack.append((w, 0))
                    advanced = True
                    break
            if not advanced:
                state[v] = 2
                stack.pop()
    return None


def orient_tree(t: Graph, root: int = 0) -> Orientation:
    """Orient every edge of a tree towards the root; max outdegree 1."""
    if not t.is_connected() or not t.is_acyclic():
        raise GraphError("input is not a tree")
    if not 0 <= root < t.n:
        raise GraphError("root out of range")
    arcs: list = [None] * t.m
    _orient_forest_edges(t, range(t.m), arcs, roots=1 << root)
    return Orientation(t, arcs, meta={"scheme": "tree", "root": root})


def orient_half(g: Graph) -> Orientation:
    """Orientation with outdegree at most floor(degree/2) + 1 everywhere.

    Peels edge-disjoint cycles and orients each as a directed cycle, then
    orients the leftover forest towards smallest-id roots.
    """
    arcs: list = [None] * g.m
    alive = set(range(g.m))
    while True:
        cycle = _find_cycle(g, alive)
        if cycle is None:
            break
        for ei, tail, head in cycle:
            arcs[ei] = (tail, head)
            alive.discard(ei)
    _orient_forest_edges(g, sorted(alive), arcs)
    return Orientation(g, arcs, meta={"scheme": "half"})


def orient_unicyclic(g: Graph) -> Orientation:
    """1-outregular orientation of a connected graph with at most one cycle."""
    if not g.is_connected():
        raise GraphError("input must be connected")
    if g.m > g.n:
        raise GraphError("more than one independent cycle")
    if g.m < g.n:
        return orient_tree(g, root=0)
    arcs: list = [None] * g.m
    cycle = _find_cycle(g, set(range(g.m)))
    on_cycle = 0
    for ei, tail, head in cycle:
        arcs[ei] = (tail, head)
        on_cycle |= (1 << tail) | (1 << head)
    rest = [i for i in range(g.m) if arcs[i] is None]
    _orient_forest_edges(g, rest, arcs, roots=on_cycle)
    return Orientation(g, arcs, meta={"scheme": "unicyclic"})


def _complete_arcs(order: Sequence[int], index: dict, arcs: list) -> None:
    """Cyclic tournament on an odd set: position i beats the next half."""
    n = len(order)
    h = (n - 1) // 2
    for i in range(n):
        for step in range(1, h + 1):
            j = (i + step) % n
            arcs[index[(order[i], order[j])]] = (order[i], order[j])


def orient_complete(n: int) -> Orientation:
    """Tournament on K_n: cyclic and (n-1)/2-outregular for odd n; for even n
    one vertex becomes a sink and the rest form the odd tournament."""
    if n < 2:
        raise GraphError("complete orientation needs n >= 2")
    g = gen.complete(n)
    index = _edge_index(g)
    arcs: list = [None] * g.m
    if n % 2 == 1:
        _complete_arcs(list(range(n)), index, arcs)
        sink = None
    else:
        sink = n - 1
        if n > 2:
            _complete_arcs(list(range(n - 1)), index, arcs)
        for v in range(n - 1):
            arcs[index[(v, sink)]] = (v, sink)
    meta = {"scheme": "complete", "n": n, "order": tuple(range(n)), "sink": sink}
    return Orientation(g, arcs, meta=meta)


def bipartition(g: Graph) -> Optional[tuple[int, int]]:
    """Two-colouring by BFS as (side A, side B) bitmasks, or None."""
    colour = [-1] * g.n
    for s in range(g.n):
        if colour[s] >= 0:
            continue
        colour[s] = 0
        queue = [s]
        while queue:
            v = queue.pop()
            for w, _ in g.adj[v]:
                if colour[w] < 0:
                    colour[w] = 1 - colour[v]
                    queue.append(w)
                elif colour[w] == colour[v]:
                    return None
    a = mask_of(v for v in range(g.n) if colour[v] == 0)
    return a, ((1 << g.n) - 1) & ~a


def orient_bipartite(g: Graph) -> Orientation:
    """Orient all edges away from the side whose maximum degree is smaller."""
    sides = bipartition(g)
    if sides is None:
        raise GraphError("input is not bipartite")
    a, b = sides
    deg = g.degrees()
    max_a = max((deg[v] for v in bits(a)), default=0)
    max_b = max((deg[v] for v in bits(b)), default=0)
    source = a if max_a <= max_b else b
    arcs = [(u, v) if (source >> u) & 1 else (v, u) for u, v in g.edges]
    return Orientation(g, arcs, meta={"scheme": "bipartite", "source": source})


def orient_by_colouring(g: Graph, parts: list[list[int]]) -> Orientation:
    """Orient every edge towards the endpoint in the higher colour class;
    the result is acyclic with directed paths of at most len(parts)-1 arcs."""
    if not is_proper_colouring(g, parts):
        raise GraphError("parts are not a proper colouring")
    colour = {}
    for c, part in enumerate(parts):
        for v in part:
            colour[v] = c
    arcs = [(u, v) if colour[u] < colour[v] else (v, u) for u, v in g.edges]
    return Orientation(g, arcs, meta={"scheme": "colouring", "parts": len(parts)})


def orient_by_forests(g: Graph, parts: list[list[int]]) -> Orientation:
    """Orient each forest of an edge partition towards smallest-id roots;
    outdegree is bounded by the number of parts."""
    seen: set[int] = set()
    for part in parts:
        if not is_forest(g, part):
            raise GraphError("a part contains a cycle")
        overlap = seen.intersection(part)
        if overlap:
            raise GraphError("parts overlap")
        seen.update(part)
    if seen != set(range(g.m)):
        raise GraphError("parts do not cover all edges")
    arcs: list = [None] * g.m
    for part in parts:
        _orient_forest_edges(g, part, arcs)
    return Orientation(g, arcs, meta={"scheme": "forests", "parts": len(parts)})


def orient_by_fvs(g: Graph, fvs: int) -> Orientation:
    """Orient the forest outside a feedback vertex set towards per-tree roots,
    everything crossing into the set towards it, and set-internal edges from
    lower to higher id. No arc leaves the set."""
    outside = [i for i, (u, v) in enumerate(g.edges) if not ((fvs >> u) | (fvs >> v)) & 1]
    if not is_forest(g, outside):
        raise GraphError("removing the set does not leave a forest")
    arcs: list = [None] * g.m
    _orient_forest_edges(g, outside, arcs)
    for i, (u, v) in enumerate(g.edges):
        if arcs[i] is not None:
            continue
        u_in = (fvs >> u) & 1
        v_in = (fvs >> v) & 1
        if u_in and v_in:
            arcs[i] = (min(u, v), max(u, v))
        elif v_in:
            arcs[i] = (u, v)
        else:
            arcs[i] = (v, u)
    return Orientation(g, arcs, meta={"scheme": "fvs", "fvs": fvs})


def orient_ktree(g: Graph, k: int) -> Orientation:
    """Orient a k-tree so every attachment points at earlier vertices and the
    fire can only flow towards the central clique, which is oriented as a
    small tournament."""
    info = ktree_structure(g, k)
    if info is None:
        raise GraphError(f"input is not a {k}-tree")
    index = _edge_index(g)
    arcs: list = [None] * g.m
    central = list(info.central)
    if len(central) % 2 == 1:
        _complete_arcs(central, index, arcs)
        sink = None
    else:
        sink = central[-1]
        if len(central) > 2:
            _complete_arcs(central[:-1], index, arcs)
        for v in central[:-1]:
            arcs[index[(v, sink)]] = (v, sink)
    for u, clique in info.order:
        for w in clique:
            arcs[index[(u, w)]] = (u, w)
    meta = {"scheme": "ktree", "k": k, "central": info.central, "sink": sink}
    return Orientation(g, arcs, meta=meta)


# ---------------------------------------------------------------------------
# subcubic construction


def orient_subcubic(g: Graph) -> Orientation:
    """Orientation of a connected subcubic graph with max outdegree 2 in which
    every outdegree-2 vertex has one outgoing cycle arc, one incoming cycle
    arc, and one outgoing path or bridge arc.

    Bridges are oriented by rooting the bridge tree; every other component is
    split into a 2-factor (oriented as directed cycles) and a perfect matching
    (paths oriented end to end), choosing the matching so that a vertex
    feeding an outgoing bridge sits on a cycle.
    """
    if g.max_degree() > 3:
        raise GraphError("input must be subcubic")
    if not g.is_connected():
        raise GraphError("input must be connected")
    index = _edge_index(g)
    bridge_set, comps = bridges(g)
    arcs: list = [None] * g.m
    labels: list = [None] * g.m

    comp_of = [0] * g.n
    for ci, comp in enumerate(comps):
        for v in bits(comp):
            comp_of[v] = ci

    # orient the bridge tree towards the component containing vertex 0
    tree_adj: list[list[tuple[int, int]]] = [[] for _ in range(len(comps))]
    for i in sorted(bridge_set):
        u, v = g.edges[i]
        tree_adj[comp_of[u]].append((comp_of[v], i))
        tree_adj[comp_of[v]].append((comp_of[u], i))
    outgoing_tail: dict[int, int] = {}
    root = comp_of[0]
    seen_comp = {root}
    queue = [root]
    while queue:
        parent = queue.pop()
        for child, ei in tree_adj[parent]:
            if child in seen_comp:
                continue
            seen_comp.add(child)
            u, v = g.edges[ei]
            tail, head = (u, v) if comp_of[u] == child else (v, u)
            arcs[ei] = (tail, head)
            labels[ei] = "bridge"
            outgoing_tail[child] = tail
            queue.append(child)

    for ci, comp in enumerate(comps):
        if popcount(comp) == 1:
            continue
        sub, vmap = g.subgraph(comp)
        if all(d == 2 for d in sub.degrees()):
            for ei, tail, head in _find_cycle(sub, set(range(sub.m))):
                gi = index[(vmap[tail], vmap[head])]
                arcs[gi] = (vmap[tail], vmap[head])
                labels[gi] = "cycle"
            continue
        red = suppress_degree2(sub)
        must = None
        b = outgoing_tail.get(ci)
        if b is not None:
            # the bridge tail has degree 2 here, so it sits inside one absorbed
            # path; forcing an adjacent reduced edge into the matching keeps
            # that path in the 2-factor, giving the tail an outgoing cycle arc
            b_sub = vmap.index(b)
            e_b = _reduced_edge_through(red, b_sub)
            if e_b is not None:
                x, _ = red.reduced.edges[e_b]
                must = next(j for _, j in red.reduced.adj[x] if j != e_b)
        matching = perfect_matching(red.reduced, must_include=must)
        if matching is None:
            raise GraphError("no perfect matching in a bridgeless cubic component")
        matched = set(matching)
        factor = [i for i in range(red.reduced.m) if i not in matched]
        for ei, tail, head in _directed_two_factor(red.reduced, factor):
            _orient_reduced_edge(red, vmap, index, arcs, labels, ei, tail, head, "cycle")
        for i in matching:
            u_red, v_red = red.reduced.edges[i]
            gu = vmap[red.vertex_map[u_red]]
            gv = vmap[red.vertex_map[v_red]]
            tail, head = (u_red, v_red) if gu < gv else (v_red, u_red)
            _orient_reduced_edge(red, vmap, index, arcs, labels, i, tail, head, "path")

    meta = {"scheme": "subcubic", "labels": tuple(labels)}
    return Orientation(g, arcs, meta=meta)


def _reduced_edge_through(red, b_sub: int) -> Optional[int]:
    """Reduced edge whose absorbed path has b_sub as an internal vertex."""
    for i, path in red.paths.items():
        if b_sub in path[1:-1]:
            return i
    return None


def _directed_two_factor(reduced: Graph, factor: list[int]):
    """Walk the 2-factor edges as directed steps (edge index, tail, head)."""
    inc: list[list[tuple[int, int]]] = [[] for _ in range(reduced.n)]
    for i in factor:
        u, v = reduced.edges[i]
        inc[u].append((v, i))
        inc[v].append((u, i))
    used: set[int] = set()
    steps = []
    for start in range(reduced.n):
        for w0, e0 in inc[start]:
            if e0 in used:
                continue
            used.add(e0)
            steps.append((e0, start, w0))
            cur, prev = w0, e0
            while cur != start:
                nxt = next((x, i) for x, i in inc[cur] if i not in used and i != prev)
                used.add(nxt[1])
                steps.append((nxt[1], cur, nxt[0]))
                cur, prev = nxt[0], nxt[1]
            break
    return steps


def _orient_reduced_edge(red, vmap, index, arcs, labels, edge_index, tail, head, label):
    """Expand a reduced edge directed tail->head onto its original path arcs."""
    sub_path = list(red.path(edge_index))
    if sub_path[0] != red.vertex_map[tail]:
        sub_path.reverse()
    g_path = [vmap[s] for s in sub_path]
    for a, b in zip(g_path, g_path[1:]):
        gi = index[(a, b)]
        arcs[gi] = (a, b)
        labels[gi] = label


# ---------------------------------------------------------------------------
# bounded degree


def orient_bounded_degree(g: Graph, d: int) -> Orientation:
    """Orientation for maximum degree d >= 4: peel maximum-degree vertices
    into sink layers level by level until the remainder is subcubic, then
    orient the remainder with the subcubic construction.

    Every peeled vertex receives all its remaining edges as incoming arcs, so
    fire reaching it stops there.
    """
    if d < 4:
        raise GraphError("use the subcubic construction for d <= 3")
    if g.max_degree() > d:
        raise GraphError(f"maximum degree exceeds {d}")
    deg = g.degrees()
    alive = (1 << g.n) - 1
    extraction: list[int] = []
    rank: dict[int, int] = {}
    for level in range(d, 3, -1):
        while True:
            v = next((v for v in bits(alive) if deg[v] == level), None)
            if v is None:
                break
            rank[v] = len(extraction)
            extraction.append(v)
            alive &= ~(1 << v)
            for w, _ in g.adj[v]:
                if (alive >> w) & 1:
                    deg[w] -= 1

    arcs: list = [None] * g.m
    labels: list = [None] * g.m
    for i, (u, v) in enumerate(g.edges):
        ru, rv = rank.get(u), rank.get(v)
        if ru is None and rv is None:
            continue
        if rv is None or (ru is not None and ru < rv):
            arcs[i] = (v, u)
        else:
            arcs[i] = (u, v)
        labels[i] = "sink"

    index = _edge_index(g)
    core = Graph(g.n, [g.edges[i] for i in range(g.m) if arcs[i] is None])
    for comp in core.components():
        if popcount(comp) == 1:
            continue
        sub, vmap = core.subgraph(comp)
        sub_o = orient_subcubic(sub)
        sub_labels = sub_o.meta["labels"]
        for j, (t, h) in enumerate(sub_o.arcs):
            gi = index[(vmap[t], vmap[h])]
            arcs[gi] = (vmap[t], vmap[h])
            labels[gi] = sub_labels[j]

    meta = {
        "scheme": "bounded",
        "d": d,
        "sinks": tuple(extraction),
        "labels": tuple(labels),
    }
    return Orientation(g, arcs, meta=meta)


# ---------------------------------------------------------------------------
# grid patches


def orient_grid(kind: str, w: int, h: int) -> Orientation:
    """Oriented grid patch: rows one way and alternating columns for the
    rectangular grid, source/sink row layering for the triangular grid, and
    the subcubic construction for the hexagonal grid."""
    if w < 4 or h < 4:
        raise GraphError("grid orientation needs w, h >= 4")
    if kind == "rect":
        g = gen.grid_rect(w, h)
        arcs = []
        for u, v in g.edges:
            if v == u + 1:  # row edge: right to left
                arcs.append((v, u))
            else:  # column edge: even columns run bottom to top
                c = u % w
                arcs.append((v, u) if c % 2 == 0 else (u, v))
        return Orientation(g, arcs, meta={"scheme": "grid-rect", "w": w, "h": h})
    if kind == "tri":
        g = gen.grid_tri(w, h)
        arcs = []
        for u, v in g.edges:
            if v == u + 1:  # row edge: left to right
                arcs.append((u, v))
            else:  # diagonal: odd rows are sources, even rows sinks
                r = u // w
                arcs.append((u, v) if r % 2 == 1 else (v, u))
        return Orientation(g, arcs, meta={"scheme": "grid-tri", "w": w, "h": h})
    if kind == "hex":
        o = orient_subcubic(gen.grid_hex(w, h))
        o.meta.update(kind="grid-hex", w=w, h=h)
        return o
    raise GraphError(f"unknown grid kind '{kind}'")


# ---------------------------------------------------------------------------
# recipe registry


def _recipe_tree(graph, **params):
    return orient_tree(graph, root=params.get("root", 0))


def _recipe_complete(graph=None, n=None, **_):
    if n is None:
        if graph is None:
            raise GraphError("complete recipe needs a graph or n")
        n = graph.n
        if graph.m != n * (n - 1) // 2 or graph.has_parallel_edges():
            raise GraphError("input graph is not complete")
    return orient_complete(n)

def _recipe_colouring(graph, k=None, **_):
    if k is not None:
        from .structure import exact_colouring

        parts = exact_colouring(graph, k)
        if parts is None:
            raise GraphError(f"graph admits no proper {k}-colouring")
    else:
        parts = greedy_colouring(graph)
    return orient_by_colouring(graph, parts)


def _recipe_forests(graph, **_):
    return orient_by_forests(graph, forest_peel(graph))


def _recipe_fvs(graph, **_):
    return orient_by_fvs(graph, min_fvs(graph))


def _recipe_ktree(graph, k=None, **_):
    if k is None:
        raise GraphError("ktree recipe needs k")
    return orient_ktree(graph, k)


def _recipe_bounded(graph, k=None, **_):
    d = k if k is not None else max(4, graph.max_degree())
    return orient_bounded_degree(graph, d)


RECIPES = {
    "tree": _recipe_tree,
    "half": lambda graph, **_: orient_half(graph),
    "unicyclic": lambda graph, **_: orient_unicyclic(graph),
    "complete": _recipe_complete,
    "bipartite": lambda graph, **_: orient_bipartite(graph),
    "colouring": _recipe_colouring,
    "forests": _recipe_forests,
    "fvs": _recipe_fvs,
    "ktree": _recipe_ktree,
    "subcubic": lambda graph, **_: orient_subcubic(graph),
    "bounded-degree": _recipe_bounded,
    "grid-rect": lambda graph=None, w=None, h=None, **_: orient_grid("rect", w or 9, h or 9),
    "grid-tri": lambda graph=None, w=None, h=None, **_: orient_grid("tri", w or 9, h or 9),
    "grid-hex": lambda graph=None, w=None, h=None, **_: orient_grid("hex", w or 9, h or 9),
}


def apply_recipe(name: str, graph: Optional[Graph] = None, **params) -> Orientation:
    """Run a named orientation recipe; see RECIPES for the registry."""
    try:
        recipe = RECIPES[name]
    except KeyError:
        raise GraphError(f"unknown recipe '{name}'") from None
    return recipe(graph, **params)
