"""Immutable simple undirected graphs and the basic operations on them.

Vertices are small integers; every traversal follows ascending vertex id so
that all downstream constructions are deterministic.  Graph values are frozen
after construction and safe to share between threads.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Sequence

VertexSet = frozenset  # subset of a graph's vertex ids


def _normalize_edge(u: int, v: int) -> tuple[int, int]:
    if u == v:
        raise ValueError(f"self-loop at vertex {u}")
    return (u, v) if u < v else (v, u)


@dataclass(frozen=True)
class Graph:
    """Simple undirected graph on integer vertex ids.

    ``vertices`` is kept sorted; ``edges`` holds normalized ``(u, v)`` pairs
    with ``u < v``.  Parallel edges and self-loops are rejected.
    """

    vertices: tuple[int, ...]
    edges: frozenset[tuple[int, int]]

    def __init__(self, vertices: Iterable[int], edges: Iterable[Sequence[int]] = ()):
        vs = tuple(sorted(set(int(v) for v in vertices)))
        vset = set(vs)
        es = set()
        for e in edges:
            u, v = e
            u, v = int(u), int(v)
            if u not in vset or v not in vset:
                raise ValueError(f"edge ({u},{v}) has an endpoint outside the vertex set")
            es.add(_normalize_edge(u, v))
        object.__setattr__(self, "vertices", vs)
        object.__setattr__(self, "edges", frozenset(es))

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.m})"

    @property
    def n(self) -> int:
        return len(self.vertices)

    @property
    def m(self) -> int:
        return len(self.edges)

    @cached_property
    def sorted_edges(self) -> tuple[tuple[int, int], ...]:
        return tuple(sorted(self.edges))

    @cached_property
    def index(self) -> dict[int, int]:
        """Vertex id -> position in the sorted vertex tuple."""
        return {v: i for i, v in enumerate(self.vertices)}

    @cached_property
    def adj(self) -> dict[int, frozenset[int]]:
        nbrs: dict[int, set[int]] = {v: set() for v in self.vertices}
        for u, v in self.edges:
            nbrs[u].add(v)
            nbrs[v].add(u)
        return {v: frozenset(s) for v, s in nbrs.items()}

    @cached_property
    def adj_bits(self) -> tuple[int, ...]:
        """Adjacency as bitmasks over vertex positions (see ``index``)."""
        idx = self.index
        bits = [0] * self.n
        for u, v in self.edges:
            iu, iv = idx[u], idx[v]
            bits[iu] |= 1 << iv
            bits[iv] |= 1 << iu
        return tuple(bits)

    @cached_property
    def edge_positions(self) -> tuple[tuple[int, int], ...]:
        """Edges as sorted pairs of vertex positions, in sorted-edge order."""
        idx = self.index
        return tuple((idx[u], idx[v]) for u, v in self.sorted_edges)

    def has_vertex(self, v: int) -> bool:
        return v in self.index

    def has_edge(self, u: int, v: int) -> bool:
        if u == v:
            return False
        return _normalize_edge(u, v) in self.edges

    def neighbours(self, v: int) -> tuple[int, ...]:
        return tuple(sorted(self.adj[v]))

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    def vertex_mask(self, vs: Iterable[int]) -> int:
        """Bitmask over vertex positions for a subset of vertex ids."""
        idx = self.index
        mask = 0
        for v in vs:
            mask |= 1 << idx[v]
        return mask

    def relabelled(self) -> tuple["Graph", dict[int, int]]:
        """Copy with vertices renamed to 0..n-1 (ascending); returns old->new map."""
        mapping = {v: i for i, v in enumerate(self.vertices)}
        g = Graph(range(self.n), [(mapping[u], mapping[v]) for u, v in self.edges])
        return g, mapping

    # --- serialization ---

    @classmethod
    def from_text(cls, text: str) -> "Graph":
        """Parse the plain text format: first line ``n m``, then m lines ``u v``.

        Blank lines and ``#`` comments are ignored; vertex ids are 0-based.
        """
        lines = []
        for raw in text.splitlines():
            line = raw.split("#", 1)[0].strip()
            if line:
                lines.append(line)
        if not lines:
            raise ValueError("empty graph file")
        head = lines[0].split()
        if len(head) != 2:
            raise ValueError(f"expected header 'n m', got {lines[0]!r}")
        n, m = int(head[0]), int(head[1])
        if len(lines) - 1 != m:
            raise ValueError(f"header promises {m} edges, found {len(lines) - 1}")
        edges = []
        for line in lines[1:]:
            parts = line.split()
            if len(parts) != 2:
                raise ValueError(f"bad edge line {line!r}")
            u, v = int(parts[0]), int(parts[1])
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u},{v}) out of range for n={n}")
            edges.append((u, v))
        return cls(range(n), edges)

    def to_text(self) -> str:
        self._require_canonical_ids()
        out = [f"{self.n} {self.m}"]
        out.extend(f"{u} {v}" for u, v in self.sorted_edges)
        return "\n".join(out) + "\n"

    @classmethod
    def from_json(cls, data) -> "Graph":
        """Build from ``{"n": int, "edges": [[u,v],...]}`` (dict or JSON string)."""
        if isinstance(data, str):
            data = json.loads(data)
        n = int(data["n"])
        return cls(range(n), data.get("edges", []))

    def to_json(self) -> dict:
        self._require_canonical_ids()
        return {"n": self.n, "edges": [list(e) for e in self.sorted_edges]}

    def to_dot(self, name: str = "G") -> str:
        lines = [f"graph {name} {{"]
        for v in self.vertices:
            lines.append(f"  {v};")
        for u, v in self.sorted_edges:
            lines.append(f"  {u} -- {v};")
        lines.append("}")
        return "\n".join(lines) + "\n"

    def _require_canonical_ids(self) -> None:
        if self.vertices != tuple(range(self.n)):
            raise ValueError(
                "serialization needs vertex ids 0..n-1; use relabelled() first"
            )


# --- named building blocks ---


def empty_graph(n: int) -> Graph:
    return Graph(range(n))


def path_graph(n: int) -> Graph:
    return Graph(range(n), [(i, i + 1) for i in range(n - 1)])


def cycle_graph(n: int) -> Graph:
    if n < 3:
        raise ValueError("cycles need at least 3 vertices")
    return Graph(range(n), [(i, (i + 1) % n) for i in range(n)])


def complete_graph(n: int) -> Graph:
    return Graph(range(n), [(i, j) for i in range(n) for j in range(i + 1, n)])


# --- operations ---


def _check_subset(g: Graph, s: Iterable[int]) -> frozenset:
    sub = frozenset(s)
    for v in sub:
        if not g.has_vertex(v):
            raise ValueError(f"unknown vertex id {v}")
    return sub


def induced_subgraph(g: Graph, s: Iterable[int]) -> Graph:
    """Graph on ``s`` with exactly g's edges inside ``s``; vertex ids preserved."""
    sub = _check_subset(g, s)
    return Graph(sub, [e for e in g.edges if e[0] in sub and e[1] in sub])


def cut_bipartite(g: Graph, a: Iterable[int]) -> Graph:
    """Bipartite graph on V(g) keeping exactly the edges crossing (a, V\\a)."""
    side = _check_subset(g, a)
    return Graph(g.vertices, [e for e in g.edges if (e[0] in side) != (e[1] in side)])


def components(g: Graph) -> list[frozenset]:
    """Connected components as vertex sets, ordered by smallest member."""
    seen: set[int] = set()
    out = []
    for start in g.vertices:
        if start in seen:
            continue
        comp = {start}
        stack = [start]
        while stack:
            v = stack.pop()
            for w in g.adj[v]:
                if w not in comp:
                    comp.add(w)
                    stack.append(w)
        seen |= comp
        out.append(frozenset(comp))
    return out


def is_connected(g: Graph) -> bool:
    return len(components(g)) <= 1


def is_dominating(g: Graph, d: Iterable[int]) -> bool:
    """True iff every vertex of g is in d or adjacent to a vertex of d."""
    dom = _check_subset(g, d)
    for v in g.vertices:
        if v in dom or g.adj[v] & dom:
            continue
        return False
    return True


def disjoint_union(gs: Sequence[Graph], relabel: bool = False) -> Graph:
    """Union of vertex and edge sets with no cross edges.

    With ``relabel`` each input is shifted onto a fresh block 0..n_i-1 in
    order; without it, colliding vertex ids raise.
    """
    if relabel:
        verts: list[int] = []
        edges: list[tuple[int, int]] = []
        offset = 0
        for g in gs:
            mapping = {v: offset + i for i, v in enumerate(g.vertices)}
            verts.extend(mapping.values())
            edges.extend((mapping[u], mapping[v]) for u, v in g.edges)
            offset += g.n
        return Graph(verts, edges)
    verts = []
    edges = []
    seen: set[int] = set()
    for g in gs:
        overlap = seen & set(g.vertices)
        if overlap:
            raise ValueError(f"vertex id collision: {sorted(overlap)[:5]}")
        seen |= set(g.vertices)
        verts.extend(g.vertices)
        edges.extend(g.edges)
    return Graph(verts, edges)
