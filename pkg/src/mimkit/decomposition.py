"""Branch decompositions, exact cut evaluation, and the exact mim-width oracle.

A branch decomposition is a subcubic tree plus a bijection from graph vertices
to tree leaves.  Each tree edge splits the vertex set in two; the width of the
cut is the size of a maximum induced matching of the bipartite graph of edges
crossing it, and the width of the decomposition is the maximum over all cuts.

The exact oracle enumerates every leaf-labelled tree whose internal nodes all
have degree 3 — there are (2n-5)!! of them — and takes the best.  Cut values
are precomputed per vertex bipartition (there are only 2^n), which keeps the
enumeration cheap at desk scale (n <= 8 by default).
"""

from __future__ import annotations

from collections import namedtuple
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Mapping, Sequence

from .bnb import max_clique_size
from .graphs import Graph

DEFAULT_ORACLE_LIMIT = 8


class OracleSizeError(Exception):
    """Graph too large for exhaustive decomposition enumeration."""


Diagnosis = namedtuple("Diagnosis", ["ok", "reason"])


@dataclass(frozen=True)
class BranchDecomposition:
    """Subcubic tree over nodes 0..n_nodes-1 plus vertex->leaf bijection."""

    n_nodes: int
    tree_edges: frozenset[tuple[int, int]]
    leaf_map: tuple[tuple[int, int], ...]  # (graph vertex, tree node), sorted

    def __init__(
        self,
        n_nodes: int,
        tree_edges: Iterable[Sequence[int]] = (),
        leaf_map: Mapping[int, int] | Iterable[Sequence[int]] = (),
    ):
        edges = set()
        for e in tree_edges:
            a, b = int(e[0]), int(e[1])
            if a == b:
                raise ValueError(f"tree self-loop at node {a}")
            if not (0 <= a < n_nodes and 0 <= b < n_nodes):
                raise ValueError(f"tree edge ({a},{b}) out of range")
            edges.add((a, b) if a < b else (b, a))
        pairs = leaf_map.items() if isinstance(leaf_map, Mapping) else leaf_map
        lm = tuple(sorted((int(v), int(node)) for v, node in pairs))
        for _, node in lm:
            if not (0 <= node < n_nodes):
                raise ValueError(f"leaf_map target {node} out of range")
        object.__setattr__(self, "n_nodes", int(n_nodes))
        object.__setattr__(self, "tree_edges", frozenset(edges))
        object.__setattr__(self, "leaf_map", lm)

    def __repr__(self) -> str:
        return f"BranchDecomposition(nodes={self.n_nodes}, leaves={len(self.leaf_map)})"

    @cached_property
    def leaf_of(self) -> dict[int, int]:
        return dict(self.leaf_map)

    @cached_property
    def node_adj(self) -> tuple[tuple[int, ...], ...]:
        adj: list[list[int]] = [[] for _ in range(self.n_nodes)]
        for a, b in self.tree_edges:
            adj[a].append(b)
            adj[b].append(a)
        return tuple(tuple(sorted(x)) for x in adj)

    @cached_property
    def sorted_tree_edges(self) -> tuple[tuple[int, int], ...]:
        return tuple(sorted(self.tree_edges))

    # --- serialization ---

    @classmethod
    def from_json(cls, data) -> "BranchDecomposition":
        import json

        if isinstance(data, str):
            data = json.loads(data)
        lm = {int(v): int(node) for v, node in data.get("leaf_map", {}).items()}
        return cls(int(data["nodes"]), data.get("tree_edges", []), lm)

    def to_json(self) -> dict:
        return {
            "nodes": self.n_nodes,
            "tree_edges": [list(e) for e in self.sorted_tree_edges],
            "leaf_map": {str(v): node for v, node in self.leaf_map},
        }

    def to_dot(self, name: str = "BD") -> str:
        vertex_at = {node: v for v, node in self.leaf_map}
        lines = [f"graph {name} {{"]
        for node in range(self.n_nodes):
            if node in vertex_at:
                lines.append(f'  n{node} [label="{vertex_at[node]}"];')
            else:
                lines.append(f'  n{node} [shape=point];')
        for a, b in self.sorted_tree_edges:
            lines.append(f"  n{a} -- n{b};")
        lines.append("}")
        return "\n".join(lines) + "\n"


@dataclass(frozen=True)
class CutReport:
    """One tree edge's cut: fixed side, exact matching size, and a witness.

    The witness is the lexicographically smallest maximum induced matching of
    the cut's bipartite graph, as normalized (u, v) edge pairs.
    """

    tree_edge: tuple[int, int]
    side_a: frozenset
    mim_value: int
    matching_witness: tuple[tuple[int, int], ...]


def validate(bd: BranchDecomposition, g: Graph) -> Diagnosis:
    """Check all decomposition invariants against g; names the first failure."""
    n = bd.n_nodes
    if n == 0:
        if bd.tree_edges:
            return Diagnosis(False, "not a tree (edge count)")
        if g.n != 0:
            return Diagnosis(False, "bijection violated: leaf_map missing vertices")
        return Diagnosis(True, None)
    if len(bd.tree_edges) != n - 1:
        return Diagnosis(False, "not a tree (edge count)")
    seen = {0}
    stack = [0]
    adj = bd.node_adj
    while stack:
        v = stack.pop()
        for w in adj[v]:
            if w not in seen:
                seen.add(w)
                stack.append(w)
    if len(seen) != n:
        return Diagnosis(False, "tree disconnected")
    if any(len(adj[v]) > 3 for v in range(n)):
        return Diagnosis(False, "subcubic violated")
    leaves = {v for v in range(n) if len(adj[v]) <= 1}
    mapped_vertices = [v for v, _ in bd.leaf_map]
    mapped_nodes = [node for _, node in bd.leaf_map]
    if len(set(mapped_nodes)) != len(mapped_nodes):
        return Diagnosis(False, "bijection violated: leaf_map not injective")
    if set(mapped_vertices) != set(g.vertices):
        return Diagnosis(False, "bijection violated: leaf_map domain != V(G)")
    if set(mapped_nodes) != leaves:
        return Diagnosis(False, "bijection violated: leaf_map image != tree leaves")
    return Diagnosis(True, None)


def cuts(bd: BranchDecomposition) -> list[tuple[tuple[int, int], frozenset]]:
    """For every tree edge, the vertex set on the smaller endpoint's side."""
    vertex_at = {node: v for v, node in bd.leaf_map}
    adj = bd.node_adj
    out = []
    for a, b in bd.sorted_tree_edges:
        side_nodes = {a}
        stack = [a]
        while stack:
            v = stack.pop()
            for w in adj[v]:
                if v == a and w == b:
                    continue  # the removed edge; the tree has no other a-b path
                if w not in side_nodes:
                    side_nodes.add(w)
                    stack.append(w)
        side = frozenset(vertex_at[x] for x in side_nodes if x in vertex_at)
        out.append(((a, b), side))
    return out


# --- exact induced matching on a cut ---


def _cut_edge_list(g: Graph, side: frozenset) -> list[tuple[int, int]]:
    """Edges crossing the cut, as (inside, outside) vertex-id pairs, in
    normalized-pair lexicographic order."""
    out = []
    for u, v in g.sorted_edges:  # already sorted by normalized pair
        if (u in side) != (v in side):
            out.append((u, v) if u in side else (v, u))
    return out


def _compat_masks(g: Graph, cut: list[tuple[int, int]]) -> list[int]:
    """Pairwise compatibility of cut edges as bitmasks.

    Two cut edges can sit in one induced matching iff they share no endpoint
    and no crossing edge of g joins them.
    """
    adj = g.adj
    k = len(cut)
    compat = [0] * k
    for i in range(k):
        a, b = cut[i]
        for j in range(i + 1, k):
            c, d = cut[j]
            if a != c and b != d and d not in adj[a] and c not in adj[b]:
                compat[i] |= 1 << j
                compat[j] |= 1 << i
    return compat


def _lexmin_witness(cut: list[tuple[int, int]], compat: list[int], size: int) -> tuple[tuple[int, int], ...]:
    """Lexicographically smallest maximum matching as normalized edge pairs.

    Greedy: keep the smallest candidate whose inclusion still allows a
    matching of the target size; candidates shown infeasible are dropped for
    good (no maximum matching contains them under the current prefix).
    """
    k = len(cut)
    chosen: list[int] = []
    cand = (1 << k) - 1
    remaining = size
    while remaining:
        low = cand & -cand
        i = low.bit_length() - 1
        sub = cand & compat[i]
        if max_clique_size(compat, sub) >= remaining - 1:
            chosen.append(i)
            cand = sub
            remaining -= 1
        else:
            cand ^= low
    return tuple(tuple(sorted(cut[i])) for i in chosen)


def _mim_core(g: Graph, side: frozenset) -> tuple[int, tuple[tuple[int, int], ...]]:
    cut = _cut_edge_list(g, side)
    if len(cut) <= 1:
        return len(cut), tuple(tuple(sorted(e)) for e in cut)
    compat = _compat_masks(g, cut)
    size = max_clique_size(compat, (1 << len(cut)) - 1)
    return size, _lexmin_witness(cut, compat, size)


def max_induced_matching_bipartite(cut_graph: Graph, a) -> tuple[int, tuple[tuple[int, int], ...]]:
    """Exact maximum induced matching of a bipartite cut graph, with witness.

    ``cut_graph`` must contain only edges between ``a`` and its complement.
    """
    side = frozenset(a)
    for v in side:
        if not cut_graph.has_vertex(v):
            raise ValueError(f"unknown vertex id {v}")
    for u, v in cut_graph.edges:
        if (u in side) == (v in side):
            raise ValueError(f"edge ({u},{v}) does not cross the given side")
    return _mim_core(cut_graph, side)


def mimw_of(bd: BranchDecomposition, g: Graph) -> tuple[int, list[CutReport]]:
    """Width of the decomposition: max cut matching size over all tree edges."""
    diag = validate(bd, g)
    if not diag.ok:
        raise ValueError(f"invalid decomposition: {diag.reason}")
    reports = []
    width = 0
    for edge, side in cuts(bd):
        value, witness = _mim_core(g, side)
        reports.append(CutReport(edge, side, value, witness))
        if value > width:
            width = value
    return width, reports


# --- exact mim-width oracle ---


def _cutmim_value(g: Graph, side_mask: int) -> int:
    """Cut matching size for a vertex-position bitmask; value only."""
    adj = g.adj_bits
    cut = []
    for iu, iv in g.edge_positions:
        bu = (side_mask >> iu) & 1
        if bu != ((side_mask >> iv) & 1):
            cut.append((iu, iv) if bu else (iv, iu))
    k = len(cut)
    if k <= 1:
        return k
    compat = [0] * k
    for i in range(k):
        a, b = cut[i]
        for j in range(i + 1, k):
            c, d = cut[j]
            if a != c and b != d and not ((adj[a] >> d) & 1) and not ((adj[c] >> b) & 1):
                compat[i] |= 1 << j
                compat[j] |= 1 << i
    return max_clique_size(compat, (1 << k) - 1)


def _cut_table(g: Graph) -> list[int]:
    """Cut matching size for every vertex bipartition, indexed by side mask."""
    n = g.n
    full = (1 << n) - 1
    table = [0] * (1 << n)
    for mask in range(1 << n):
        if not mask & 1:
            table[mask] = _cutmim_value(g, mask)
    for mask in range(1 << n):
        if mask & 1:
            table[mask] = table[mask ^ full]
    return table


_TREE_CACHE: dict[tuple[int, bool], tuple[list, list]] = {}


def _edge_masks(edges: Sequence[tuple[int, int]], n_leaves: int) -> tuple[int, ...]:
    """Per tree edge, the bitmask of leaf labels on one fixed side."""
    adj: dict[int, list[int]] = {}
    for a, b in edges:
        adj.setdefault(a, []).append(b)
        adj.setdefault(b, []).append(a)
    parent: dict[int, int | None] = {edges[0][0]: None}
    order = [edges[0][0]]
    stack = [edges[0][0]]
    while stack:
        v = stack.pop()
        for w in adj[v]:
            if w not in parent:
                parent[w] = v
                order.append(w)
                stack.append(w)
    below = {v: (1 << v) if v < n_leaves else 0 for v in parent}
    mask_of: dict[tuple[int, int], int] = {}
    for v in reversed(order):
        p = parent[v]
        if p is not None:
            below[p] |= below[v]
            mask_of[(v, p) if v < p else (p, v)] = below[v]
    return tuple(mask_of[e] for e in edges)


def _cubic_trees(n: int, reverse: bool) -> tuple[list, list]:
    """All leaf-labelled trees on leaves 0..n-1 with internal degrees 3.

    Standard insert-leaf-into-every-edge recursion, giving each of the
    (2n-5)!! trees exactly once.  ``reverse`` flips the insertion order of the
    leaf labels (same tree set, different enumeration order).  Leaves are
    nodes 0..n-1, internal nodes n..2n-3.  Returns (edge lists, mask tuples).
    """
    key = (n, reverse)
    if key in _TREE_CACHE:
        return _TREE_CACHE[key]
    order = list(range(n - 1, -1, -1)) if reverse else list(range(n))
    first = (min(order[0], order[1]), max(order[0], order[1]))
    trees: list[list[tuple[int, int]]] = [[first]]
    for k in range(2, n):
        leaf = order[k]
        mid = n + k - 2
        new_trees = []
        for t in trees:
            for i in range(len(t)):
                a, b = t[i]
                nt = t[:i] + t[i + 1 :]
                nt.append((a, mid) if a < mid else (mid, a))
                nt.append((b, mid) if b < mid else (mid, b))
                nt.append((leaf, mid))
                new_trees.append(nt)
        trees = new_trees
    edge_lists = [tuple(t) for t in trees]
    mask_lists = [_edge_masks(t, n) for t in edge_lists]
    _TREE_CACHE[key] = (edge_lists, mask_lists)
    return _TREE_CACHE[key]


def single_node_decomposition(vertex: int) -> BranchDecomposition:
    return BranchDecomposition(1, (), {vertex: 0})


def empty_decomposition() -> BranchDecomposition:
    return BranchDecomposition(0, (), ())


def caterpillar_decomposition(vertices) -> BranchDecomposition:
    """Canonical caterpillar with the given vertices as leaves in ascending order."""
    vs = sorted(vertices)
    p = len(vs)
    if p == 0:
        return empty_decomposition()
    if p == 1:
        return single_node_decomposition(vs[0])
    if p == 2:
        return BranchDecomposition(2, [(0, 1)], {vs[0]: 0, vs[1]: 1})
    # leaves 0..p-1, internal path p..2p-3
    edges = [(p + k, p + k + 1) for k in range(p - 3)]
    edges += [(0, p), (1, p)]
    edges += [(j, p + j - 1) for j in range(2, p - 1)]
    edges += [(p - 1, 2 * p - 3)]
    return BranchDecomposition(2 * p - 2, edges, {vs[i]: i for i in range(p)})


def exact_mimw(
    g: Graph, max_n: int | None = None, order: str = "forward"
) -> tuple[int, BranchDecomposition]:
    """Exact mim-width by exhaustive search over all cubic leaf-labelled trees.

    Returns the minimum width and the first optimal decomposition in
    enumeration order.  ``order`` selects the leaf insertion sequence
    ("forward" or "reverse"); both explore the identical tree set.
    """
    limit = DEFAULT_ORACLE_LIMIT if max_n is None else max_n
    n = g.n
    if n > limit:
        raise OracleSizeError(f"graph has {n} vertices; exhaustive limit is {limit}")
    if order not in ("forward", "reverse"):
        raise ValueError(f"unknown enumeration order {order!r}")
    if n <= 1:
        return 0, caterpillar_decomposition(g.vertices)
    if n == 2:
        bd = caterpillar_decomposition(g.vertices)
        return (1 if g.m else 0), bd
    table = _cut_table(g)
    trees, masks = _cubic_trees(n, order == "reverse")
    lower = 1 if g.m else 0
    best_w: int | None = None
    best_i = 0
    for i, mset in enumerate(masks):
        w = 0
        for m in mset:
            v = table[m]
            if v > w:
                w = v
        if best_w is None or w < best_w:
            best_w, best_i = w, i
            if best_w == lower:
                break
    assert best_w is not None
    # leaf label i holds the i-th vertex in ascending id order
    bd = BranchDecomposition(
        2 * n - 2, trees[best_i], {g.vertices[i]: i for i in range(n)}
    )
    return best_w, bd
