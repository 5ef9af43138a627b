"""Exact maximum-clique search on bitmask adjacency, shared by the induced
matching evaluator and the clique-number computation."""

from __future__ import annotations

from typing import Sequence


def max_clique_size(neigh: Sequence[int], cand: int) -> int:
    """Exact size of a largest clique within the candidate bitmask.

    ``neigh[i]`` is the adjacency bitmask of vertex position i.  Branch and
    bound: candidates are greedily coloured and processed in reverse colour
    order, so a branch is cut as soon as its colour bound cannot beat the
    incumbent.
    """
    best = 0

    def expand(cand_mask: int, size: int) -> None:
        nonlocal best
        if size > best:
            best = size
        if not cand_mask:
            return
        order: list[int] = []
        bounds: list[int] = []
        rest = cand_mask
        colour = 0
        while rest:
            colour += 1
            avail = rest
            while avail:
                low = avail & -avail
                v = low.bit_length() - 1
                order.append(v)
                bounds.append(colour)
                avail &= ~(low | neigh[v])
                rest ^= low
        mask = cand_mask
        for i in range(len(order) - 1, -1, -1):
            if size + bounds[i] <= best:
                return
            v = order[i]
            expand(mask & neigh[v], size + 1)
            mask &= ~(1 << v)

    expand(cand, 0)
    return best
