"""Independent reference implementations used only by the tests.

Nothing here imports the search or enumeration code of ``asymcol``; groups
are plain tuples, closures are naive double loops and colourings are
enumerated exhaustively with numpy.
"""

from __future__ import annotations

import itertools

import networkx as nx
import numpy as np


def closure(degree: int, gens) -> set[tuple[int, ...]]:
    """Naive closure: right-multiply the newest elements by each generator until stable."""
    gens = [tuple(g) for g in gens]
    elems = {tuple(range(degree))}
    fresh = set(elems)
    while fresh:
        new = set()
        for a in fresh:
            for b in gens:
                ab = tuple(a[b[x]] for x in range(degree))
                if ab not in elems:
                    new.add(ab)
        elems |= new
        fresh = new
    return elems


def motion_double_loop(elems) -> int | None:
    best = None
    for e in elems:
        moved = 0
        for x in range(len(e)):
            if e[x] != x:
                moved += 1
        if moved and (best is None or moved < best):
            best = moved
    return best


def asymmetric_mask(colourings: np.ndarray, elems) -> np.ndarray:
    """Row mask of colourings broken by every non-identity element."""
    ok = np.ones(len(colourings), dtype=bool)
    for e in elems:
        e = tuple(e)
        if e == tuple(range(len(e))):
            continue
        preserved = np.all(colourings[:, list(e)] == colourings, axis=1)
        ok &= ~preserved
    return ok


def all_colourings(n: int, k: int) -> np.ndarray:
    if n == 0:
        return np.zeros((1, 0), dtype=np.int8)
    return np.array(list(itertools.product(range(k), repeat=n)), dtype=np.int8)


def exists_asymmetric(n: int, k: int, elems) -> bool:
    if k == 0:
        return n == 0
    return bool(asymmetric_mask(all_colourings(n, k), elems).any())


def distinguishing_number_bruteforce(n: int, elems) -> int:
    for k in range(1, max(n, 1) + 1):
        if exists_asymmetric(n, k, elems):
            return k
    raise AssertionError("unfaithful action")


def graph_automorphisms_vf2(n: int, edges) -> set[tuple[int, ...]]:
    g = nx.Graph()
    g.add_nodes_from(range(n))
    g.add_edges_from(edges)
    matcher = nx.algorithms.isomorphism.GraphMatcher(g, g)
    return {tuple(m[v] for v in range(n)) for m in matcher.isomorphisms_iter()}


def graph_automorphisms_naive(n: int, edges) -> set[tuple[int, ...]]:
    es = {frozenset(e) for e in edges}
    out = set()
    for p in itertools.permutations(range(n)):
        if all(frozenset((p[u], p[v])) in es for u, v in edges):
            out.add(p)
    return out
