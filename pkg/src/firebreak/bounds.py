"""Closed-form bound evaluation and burn-class checks.

All arithmetic is exact (fractions.Fraction); floors and ceilings appear
exactly where the source formulas place them. Every rule is emitted whether
or not it applies to the instance, with an explicit applicability flag and
hypothesis, so a bound can never be misused silently.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .graphs import Graph, GraphError, Orientation, bits, metrics, popcount
from .orient import bipartition
from .structure import exact_colouring, forest_peel, greedy_colouring, ktree_structure, min_fvs


@dataclass
class BoundEntry:
    name: str
    kind: str  # "lower" or "upper"
    value: Optional[Fraction]
    applicable: bool
    hypothesis: str
    note: str = ""

    def to_json_obj(self) -> dict:
        obj = {
            "name": self.name,
            "kind": self.kind,
            "value": None if self.value is None else str(self.value),
            "applicable": self.applicable,
            "hypothesis": self.hypothesis,
        }
        if self.note:
            obj["note"] = self.note
        return obj


@dataclass
class BoundHints:
    """Structure facts the caller already knows; missing ones are computed
    when cheap enough."""

    orientation: Optional[Orientation] = None
    k: Optional[int] = None
    fvs: Optional[int] = None
    colouring: Optional[list[list[int]]] = None
    forests: Optional[list[list[int]]] = None
    compute_missing: bool = True


# ---------------------------------------------------------------------------
# wave recurrence and its closed form


def burn_waves(delta: int, f: int, k: int) -> list[Fraction]:
    """Worst-case burn counts per time unit on the layered orientation:
    1, delta - f, then each wave multiplies by delta - 1 and loses f."""
    waves = [Fraction(1)]
    if k >= 2:
        waves.append(Fraction(delta - f))
    for _ in range(3, k + 1):
        waves.append((delta - 1) * waves[-1] - f)
    return waves


def wave_total(delta: int, f: int, k: int) -> Fraction:
    return Fraction(1) + sum(burn_waves(delta, f, k)[1:], Fraction(0))


def refined_colour_bound(delta: int, f: int, k: int) -> Fraction:
    """Closed form of the wave total for delta > 2."""
    if delta <= 2:
        raise GraphError("closed form needs maximum degree above 2")
    d = Fraction(delta)
    return (d * (d - 1) ** (k - 1) - 2) / (d - 2) - f * (
        ((d - 1) ** k - d * k + 2 * k - 1) / (d - 2) ** 2
    )


def beta_d_ladder(d: int, seed4: int = 5) -> int:
    """Worst-case burn bound for maximum degree d with one firefighter:
    the degree recursion max(d, prev*(d-2) + 2) capped by (d-1)!.

    seed4 = 5 uses the dedicated degree-4 bound; seed4 = 6 reproduces the
    pure recursion from the subcubic base.
    """
    if d < 3:
        raise GraphError("ladder starts at degree 3")
    if seed4 not in (5, 6):
        raise GraphError("degree-4 seed must be 5 or 6")
    if d == 3:
        return 2
    value = min(seed4, math.factorial(3))
    for i in range(5, d + 1):
        value = min(max(i, value * (i - 2) + 2), math.factorial(i - 1))
    return value


# ---------------------------------------------------------------------------
# instance recognition helpers


def _is_complete(g: Graph) -> bool:
    return g.n >= 1 and g.m == g.n * (g.n - 1) // 2 and not g.has_parallel_edges()


def _complete_bipartite_sides(g: Graph) -> Optional[tuple[int, int]]:
    sides = bipartition(g)
    if sides is None:
        return None
    p, q = popcount(sides[0]), popcount(sides[1])
    if p >= 1 and q >= 1 and g.m == p * q and not g.has_parallel_edges():
        return p, q
    return None


def greedy_clique(g: Graph) -> int:
    """Size of a clique found greedily; a valid lower-bound witness, exact on
    complete graphs."""
    best = 1 if g.n else 0
    am = g.adj_mask
    for v in range(g.n):
        mask = 1 << v
        for u in range(g.n):
            if (mask >> u) & 1:
                continue
            if mask & ~am[u]:
                continue
            mask |= 1 << u
        best = max(best, popcount(mask))
    return best


def _chromatic_number(g: Graph) -> tuple[int, bool]:
    """(chromatic number or greedy part count, exact flag)."""
    greedy = len(greedy_colouring(g))
    if g.n <= 16:
        for k in range(1, greedy + 1):
            if exact_colouring(g, k) is not None:
                return k, True
    return greedy, False


# ---------------------------------------------------------------------------
# lower bounds


def lower_bounds(g: Graph, f: int = 1) -> list[BoundEntry]:
    entries = [
        BoundEntry("trivial", "lower", Fraction(1), True, "the start vertex always burns")
    ]
    n, m = g.n, g.m
    density = Fraction(m, n) if n else Fraction(0)
    entries.append(
        BoundEntry(
            "density", "lower", density, f == 1,
            "one firefighter; some vertex has outdegree at least m/n in every orientation",
        )
    )
    delta_min = g.min_degree()
    entries.append(
        BoundEntry(
            "min-degree-half", "lower", Fraction(delta_min, 2), f == 1,
            "one firefighter; m >= n*delta_min/2 feeds the density bound",
        )
    )
    omega = g.n if _is_complete(g) else greedy_clique(g)
    clique_value = Fraction(omega - 3) if omega >= 5 else Fraction(2) if omega == 4 else Fraction(1)
    entries.append(
        BoundEntry(
            "clique", "lower", clique_value, f == 1,
            f"one firefighter; contains a clique on {omega} vertices (subgraph monotonicity)",
            note="" if _is_complete(g) else "greedy clique, so possibly undersized",
        )
    )
    sides = _complete_bipartite_sides(g)
    if sides is not None:
        p, q = sides
        ratio = Fraction(p * q, p + q)
        entries.append(
            BoundEntry(
                "biclique-outdegree", "lower", ratio + 1 - f, True,
                f"complete bipartite K_{{{p},{q}}}",
            )
        )
        entries.append(
            BoundEntry(
                "biclique-outdegree-plus", "lower", ratio + 2 - f, f <= ratio - 1,
                f"complete bipartite K_{{{p},{q}}} with f <= pq/(p+q) - 1",
            )
        )
        entries.append(
            BoundEntry(
                "biclique-min-side", "lower", Fraction(min(p, q)),
                f == 1 and min(p, q) >= 6,
                f"complete bipartite K_{{{p},{q}}} with both sides at least 6, one firefighter",
            )
        )
    else:
        for rule in ("biclique-outdegree", "biclique-outdegree-plus", "biclique-min-side"):
            entries.append(BoundEntry(rule, "lower", None, False, "graph is not complete bipartite"))
    return entries


# ---------------------------------------------------------------------------
# upper bounds


def upper_bounds(g: Graph, f: int = 1, hints: Optional[BoundHints] = None) -> list[BoundEntry]:
    hints = hints or BoundHints()
    entries: list[BoundEntry] = []
    n, m = g.n, g.m
    delta = g.max_degree()

    # trees and near-trees
    is_tree = g.is_connected() and g.is_acyclic()
    entries.append(BoundEntry("tree", "upper", Fraction(1), is_tree, "graph is a tree"))
    at_most_one_cycle = g.is_connected() and m <= n
    entries.append(
        BoundEntry(
            "one-cycle", "upper", Fraction(1), at_most_one_cycle and f >= 1,
            "connected with at most one cycle; a 1-outregular orientation exists",
        )
    )

    # complete graphs
    if _is_complete(g) and n >= 1:
        value = complete_upper_bound(n, f)
        entries.append(BoundEntry("complete", "upper", value, True, f"complete graph on {n} vertices"))
    else:
        entries.append(BoundEntry("complete", "upper", None, False, "graph is not complete"))

    # bipartite one-way orientation
    sides = bipartition(g)
    if sides is not None and m > 0:
        deg = g.degrees()
        max_a = max((deg[v] for v in bits(sides[0])), default=0)
        max_b = max((deg[v] for v in bits(sides[1])), default=0)
        small = min(max_a, max_b)
        value = max(Fraction(1), Fraction(1 + small - f))
        entries.append(
            BoundEntry(
                "bipartite-oneway", "upper", value, True,
                f"bipartite; all arcs leave the side with maximum degree {small}",
            )
        )
    else:
        entries.append(BoundEntry("bipartite-oneway", "upper", None, False, "graph is not bipartite"))

    # chromatic bounds
    chromatic, chi_exact = _chromatic_number(g)
    chi_note = "" if chi_exact else "greedy colouring estimate"
    coarse_ok = 1 <= f < delta
    coarse = Fraction(delta**chromatic) if delta >= 1 else None
    entries.append(
        BoundEntry(
            "chromatic-coarse", "upper", coarse, coarse_ok,
            f"f below maximum degree {delta}; colour classes give an acyclic orientation "
            f"of depth {chromatic}",
            note=chi_note,
        )
    )
    if delta > 2 and 1 <= f < delta:
        waves = burn_waves(delta, f, chromatic)
        if all(w > 0 for w in waves):
            refined = refined_colour_bound(delta, f, chromatic)
            trunc_note = ""
        else:
            cut = next(i for i, w in enumerate(waves) if w <= 0)
            refined = Fraction(1) + sum(waves[1:cut], Fraction(0))
            trunc_note = "wave sum truncated where the fire is contained"
        entries.append(
            BoundEntry(
                "chromatic-refined", "upper", refined, True,
                f"maximum degree {delta} > 2 and f < maximum degree",
                note=(chi_note + "; " + trunc_note).strip("; "),
            )
        )
    else:
        entries.append(
            BoundEntry("chromatic-refined", "upper", None, False, "needs maximum degree above 2 and f below it")
        )

    # arboricity estimate
    forests = hints.forests
    if forests is None and hints.compute_missing:
        forests = forest_peel(g)
    if forests is not None:
        a_est = len(forests)
        entries.append(
            BoundEntry(
                "arboricity-cover", "upper", Fraction(1), f >= a_est,
                f"f at least the forest partition size {a_est}",
                note="estimate-based: partition size bounds the arboricity from above",
            )
        )
        rational = Fraction(1) + Fraction(n - 1, a_est) if a_est else None
        entries.append(
            BoundEntry(
                "arboricity-pace", "upper", rational, a_est > 0 and f >= a_est - 1,
                f"f at least {a_est - 1}: one new burn per unit while each unit retires "
                f"{a_est} vertices",
                note="estimate-based",
            )
        )

    # feedback vertex set
    fvs_mask = hints.fvs
    if fvs_mask is None and hints.compute_missing and n <= 18:
        fvs_mask = min_fvs(g)
    if fvs_mask is not None:
        size = popcount(fvs_mask)
        entries.append(
            BoundEntry(
                "fvs", "upper", Fraction(max(1, size - f + 2)), True,
                f"removing the {size} set vertices leaves a forest",
            )
        )
    else:
        entries.append(BoundEntry("fvs", "upper", None, False, "no feedback vertex set supplied"))

    # k-tree bounds
    k = hints.k
    structure = ktree_structure(g, k) if k is not None else None
    if structure is not None:
        diam = metrics(g).diam
        cond = Fraction(2 * k, diam) if diam else None
        if diam and f <= cond:
            v1 = Fraction(1) + (diam // 2) * (k - f) - f
            entries.append(
                BoundEntry(
                    "ktree-walls", "upper", v1, True,
                    f"{k}-tree, f <= 2k/diam: protect while the fire walks to the centre",
                )
            )
        else:
            entries.append(
                BoundEntry("ktree-walls", "upper", None, False, "needs a k-tree and f <= 2k/diam")
            )
        if diam and f > cond:
            v2 = Fraction(1) + k * (k // f - 1)
            entries.append(
                BoundEntry(
                    "ktree-anticipate", "upper", v2, True,
                    f"{k}-tree, f > 2k/diam: protect a full wave ahead of the fire",
                )
            )
        else:
            entries.append(
                BoundEntry("ktree-anticipate", "upper", None, False, "needs a k-tree and f > 2k/diam")
            )
        entries.append(
            BoundEntry(
                "ktree-half", "upper", Fraction(1 + -(-k // 2)), f >= k // 2,
                f"{k}-tree with f >= floor(k/2)",
            )
        )
    else:
        for rule in ("ktree-walls", "ktree-anticipate", "ktree-half"):
            entries.append(BoundEntry(rule, "upper", None, False, "not recognised as a k-tree (supply k)"))

    # degree ladder
    if f == 1 and delta >= 1:
        if delta <= 2:
            ladder = None
            entries.append(
                BoundEntry("degree-ladder", "upper", None, False, "maximum degree below 3: covered by one-cycle")
            )
        else:
            ladder = beta_d_ladder(delta)
            entries.append(
                BoundEntry(
                    "degree-ladder", "upper", Fraction(ladder), True,
                    f"one firefighter, maximum degree {delta}",
                )
            )
    else:
        entries.append(BoundEntry("degree-ladder", "upper", None, False, "one-firefighter bound"))

    # orientation-specific bounds
    o = hints.orientation
    if o is not None and o.graph == g:
        dplus = o.max_out_degree()
        entries.append(
            BoundEntry(
                "outdegree-cover", "upper", Fraction(1), f >= dplus,
                f"f at least the orientation's maximum outdegree {dplus}",
            )
        )
        entries.append(
            BoundEntry(
                "outdegree-pace", "upper",
                Fraction(1) + Fraction(n - 1, dplus) if dplus else None,
                dplus >= 1 and f >= dplus - 1,
                f"f at least {dplus - 1} on an orientation with maximum outdegree {dplus}",
            )
        )
        rad = metrics(o).rad
        entries.append(
            BoundEntry(
                "radius", "upper",
                None if rad == math.inf else Fraction(n - int(rad)),
                f == 1 and rad != math.inf,
                "one firefighter; protect one vertex per distance layer of this orientation",
            )
        )
    else:
        for rule in ("outdegree-cover", "outdegree-pace", "radius"):
            entries.append(BoundEntry(rule, "upper", None, False, "no orientation supplied"))
    return entries


def complete_upper_bound(n: int, f: int) -> Fraction:
    if n % 2 == 1:
        quarter, half = Fraction(n - 1, 4), Fraction(n - 1, 2)
        if f < quarter:
            return Fraction(n - 3 * f)
        if f < half:
            return half - f + 1
        return Fraction(1)
    quarter, half = Fraction(n - 2, 4), Fraction(n - 2, 2)
    if f < quarter:
        return Fraction(n - 3 * f)
    if f < half:
        return Fraction(n, 2) - f + 1
    if f < Fraction(n, 2):
        return Fraction(2)
    return Fraction(1)


# ---------------------------------------------------------------------------
# burn classes


def classify_b1(g: Graph) -> bool:
    """Connected graphs where a single vertex burns under best play: exactly
    those with at most one cycle."""
    if not g.is_connected():
        raise GraphError("classification needs a connected graph")
    return g.m <= g.n


@dataclass
class BkReport:
    density_ok: bool
    degenerate_ok: bool
    verdict: str  # "possible" or "excluded"


def bk_necessary(g: Graph, k: int) -> BkReport:
    """Necessary conditions for burn class k: every peeled core must keep
    m' <= k*n', and the graph must be 2k-degenerate. Failing either excludes
    the graph; passing proves nothing."""
    if k < 1:
        raise GraphError("class index must be at least 1")
    deg = g.degrees()
    alive = (1 << g.n) - 1
    edges_left = g.m
    density_ok = True
    degeneracy = 0
    vertices_left = g.n
    while vertices_left:
        if edges_left > k * vertices_left:
            density_ok = False
        v = min(bits(alive), key=lambda x: (deg[x], x))
        degeneracy = max(degeneracy, deg[v])
        alive &= ~(1 << v)
        vertices_left -= 1
        for w, _ in g.adj[v]:
            if (alive >> w) & 1:
                deg[w] -= 1
                edges_left -= 1
    degenerate_ok = degeneracy <= 2 * k
    verdict = "possible" if (density_ok and degenerate_ok) else "excluded"
    return BkReport(density_ok=density_ok, degenerate_ok=degenerate_ok, verdict=verdict)


# ---------------------------------------------------------------------------
# report assembly


def bound_report(g: Graph, f: int = 1, hints: Optional[BoundHints] = None) -> list[BoundEntry]:
    return lower_bounds(g, f) + upper_bounds(g, f, hints)


# upper-bound rules that hold for the value of one fixed orientation, rather
# than for the best orientation only
_PER_ORIENTATION_RULES = {"outdegree-cover", "outdegree-pace", "radius"}


def check_sandwich(
    g: Graph,
    f: int,
    beta: int,
    hints: Optional[BoundHints] = None,
    mode: str = "best",
) -> list[str]:
    """Violation messages for any applicable bound that contradicts beta.

    mode "best" checks every applicable upper bound against a best-orientation
    value; mode "fixed" is for the value of one constructed orientation, where
    only orientation-derived upper bounds are binding (structural bounds speak
    about the best orientation and the suites assert them separately).
    """
    problems = []
    for entry in lower_bounds(g, f):
        if entry.applicable and entry.value is not None and entry.value > beta:
            problems.append(f"lower bound {entry.name} = {entry.value} exceeds beta = {beta}")
    for entry in upper_bounds(g, f, hints):
        if mode == "fixed" and entry.name not in _PER_ORIENTATION_RULES:
            continue
        if entry.applicable and entry.value is not None and entry.value < beta:
            problems.append(f"upper bound {entry.name} = {entry.value} is below beta = {beta}")
    return problems
