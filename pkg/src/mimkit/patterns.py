"""Induced-subgraph pattern detection and hereditary-class membership.

The class of interest is parameterized by ``(s, t)``: its members contain no
induced complete graph K_t and no induced sP1+P5 (s isolated vertices plus a
5-vertex path).  Detection is exact and deterministic: the witness returned
is always the lexicographically first vertex subset that induces the pattern.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from .bnb import max_clique_size
from .graphs import Graph, complete_graph, disjoint_union, empty_graph, path_graph


@dataclass(frozen=True)
class ClassParams:
    """Parameters (s, t) of the hereditary class: K_t-free and sP1+P5-free."""

    s: int
    t: int

    def __post_init__(self) -> None:
        if self.s < 0:
            raise ValueError("s must be non-negative")
        if self.t < 1:
            raise ValueError("t must be positive")


@dataclass(frozen=True)
class PatternWitness:
    """Vertices inducing a named pattern in some host graph.

    ``vertices`` follows the pattern's own vertex order, so e.g. a path
    witness lists its vertices in path order.
    """

    name: str
    vertices: tuple[int, ...]


def build_pattern_sP1_P5(s: int) -> Graph:
    """s isolated vertices (ids 0..s-1) plus an induced P5 (ids s..s+4)."""
    if s < 0:
        raise ValueError("s must be non-negative")
    return disjoint_union([empty_graph(s), path_graph(5)], relabel=True)


def pattern_name_sP1_P5(s: int) -> str:
    return "P5" if s == 0 else f"{s}P1+P5"


def parse_pattern(name: str) -> Graph:
    """Parse CLI-facing pattern names: ``K<t>``, ``P<n>``, ``<s>P1+P5``."""
    name = name.strip()
    if name.endswith("P1+P5"):
        head = name[: -len("P1+P5")]
        if head and not head.isdigit():
            raise ValueError(f"bad pattern name {name!r}")
        return build_pattern_sP1_P5(int(head) if head else 1)  # "P1+P5" means s=1
    if len(name) > 1 and name[0] == "K" and name[1:].isdigit():
        return complete_graph(int(name[1:]))
    if len(name) > 1 and name[0] == "P" and name[1:].isdigit():
        return path_graph(int(name[1:]))
    raise ValueError(f"unknown pattern name {name!r}")


def _subset_profile(g: Graph, subset: tuple[int, ...]) -> tuple[int, list[int]]:
    """(edge count, sorted degree list) of the subgraph induced on subset."""
    mask = g.vertex_mask(subset)
    bits = g.adj_bits
    idx = g.index
    degs = [(bits[idx[v]] & mask).bit_count() for v in subset]
    return sum(degs) // 2, sorted(degs)


def _match_assignment(g: Graph, subset: tuple[int, ...], pattern: Graph) -> tuple[int, ...] | None:
    """Bijection pattern -> subset preserving adjacency and non-adjacency.

    Backtracks over pattern vertices (highest degree first) with adjacency
    consistency pruning; candidates are scanned in ascending id order so the
    first assignment found is deterministic.  Returns the witness ordered by
    the pattern's own vertex order, or None.
    """
    k = pattern.n
    pat_order = sorted(pattern.vertices, key=lambda v: (-pattern.degree(v), v))
    pat_adj = pattern.adj
    g_adj = g.adj
    subset_set = frozenset(subset)
    deg_in = {v: len(g_adj[v] & subset_set) for v in subset}
    image: dict[int, int] = {}
    used: set[int] = set()

    def extend(i: int) -> bool:
        if i == k:
            return True
        p = pat_order[i]
        want_deg = pattern.degree(p)
        placed_nbrs = [image[q] for q in pat_adj[p] if q in image]
        placed_non = [image[q] for q in pattern.vertices if q in image and q not in pat_adj[p] and q != p]
        for cand in subset:
            if cand in used or deg_in[cand] != want_deg:
                continue
            cadj = g_adj[cand]
            if any(w not in cadj for w in placed_nbrs):
                continue
            if any(w in cadj for w in placed_non):
                continue
            image[p] = cand
            used.add(cand)
            if extend(i + 1):
                return True
            del image[p]
            used.remove(cand)
        return False

    if extend(0):
        return tuple(image[p] for p in pattern.vertices)
    return None


def find_induced(g: Graph, pattern: Graph, name: str | None = None) -> PatternWitness | None:
    """First induced copy of ``pattern`` in ``g``, scanning vertex subsets in
    lexicographic order; None when no copy exists."""
    label = name if name is not None else f"pattern{pattern.n}"
    k = pattern.n
    if k == 0:
        return PatternWitness(label, ())
    if k > g.n:
        return None
    want_m = pattern.m
    want_degs = sorted(pattern.degree(v) for v in pattern.vertices)
    for subset in combinations(g.vertices, k):
        m, degs = _subset_profile(g, subset)
        if m != want_m or degs != want_degs:
            continue
        witness = _match_assignment(g, subset, pattern)
        if witness is not None:
            return PatternWitness(label, witness)
    return None


def class_violation(g: Graph, params: ClassParams) -> PatternWitness | None:
    """A witness for the first violated freeness condition, or None for members.

    Checks K_t first, then sP1+P5; both searches are deterministic.
    """
    w = find_induced(g, complete_graph(params.t), name=f"K{params.t}")
    if w is not None:
        return w
    return find_induced(
        g, build_pattern_sP1_P5(params.s), name=pattern_name_sP1_P5(params.s)
    )


def is_class_member(g: Graph, params: ClassParams) -> bool:
    """True iff g has no induced K_t and no induced sP1+P5."""
    return class_violation(g, params) is None


def max_independent_in(g: Graph, within, target: int) -> frozenset | None:
    """An independent set of size exactly ``target`` inside ``within``, or None.

    Lexicographically first such subset.
    """
    pool = sorted(within)
    for v in pool:
        if not g.has_vertex(v):
            raise ValueError(f"unknown vertex id {v}")
    if target == 0:
        return frozenset()
    adj = g.adj
    for subset in combinations(pool, target):
        if all(v not in adj[u] for u, v in combinations(subset, 2)):
            return frozenset(subset)
    return None


def clique_number(g: Graph) -> int:
    """Size of a largest clique; 0 for the empty graph."""
    if g.n == 0:
        return 0
    return max_clique_size(g.adj_bits, (1 << g.n) - 1)
