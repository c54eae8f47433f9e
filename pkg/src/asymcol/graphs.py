"""Finite simple graphs as a source of permutation groups."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from .colouring import distinguishing_number
from .errors import (
    CapExceeded,
    DuplicateEdge,
    LimitExceeded,
    MalformedHeader,
    SelfLoop,
    VertexOutOfRange,
)
from .perm import DEFAULT_CAP, PermGroup, Permutation

DEFAULT_VERTEX_LIMIT = 64


@dataclass(frozen=True)
class Graph:
    vertex_count: int
    adjacency: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        if len(self.adjacency) != self.vertex_count:
            raise ValueError("adjacency needs one list per vertex")
        for v, nbrs in enumerate(self.adjacency):
            if list(nbrs) != sorted(set(nbrs)):
                raise ValueError(f"neighbours of {v} must be sorted and distinct")
            for u in nbrs:
                if u == v:
                    raise SelfLoop(f"self-loop at {v}")
                if v not in self.adjacency[u]:
                    raise ValueError(f"edge {v}-{u} is not symmetric")

    @classmethod
    def from_edges(cls, n: int, edges) -> Graph:
        adj: list[set[int]] = [set() for _ in range(n)]
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise VertexOutOfRange(f"edge {u} {v} outside 0..{n - 1}")
            if u == v:
                raise SelfLoop(f"self-loop at {u}")
            if v in adj[u]:
                raise DuplicateEdge(f"edge {u} {v} listed twice")
            adj[u].add(v)
            adj[v].add(u)
        return cls(n, tuple(tuple(sorted(a)) for a in adj))

    def edges(self) -> list[tuple[int, int]]:
        return [(u, v) for u in range(self.vertex_count) for v in self.adjacency[u] if u < v]

    def has_edge(self, u: int, v: int) -> bool:
        return v in self.adjacency[u]


def parse_graph(text: str) -> Graph:
    """Parse ``n m`` followed by ``m`` lines ``u v``; ``#`` lines are comments."""
    lines = [
        ln.strip()
        for ln in text.splitlines()
        if ln.strip() and not ln.strip().startswith("#")
    ]
    if not lines:
        raise MalformedHeader("empty graph file")
    head = lines[0].split()
    if len(head) != 2 or not all(t.isdigit() for t in head):
        raise MalformedHeader(f"expected 'n m', got {lines[0]!r}")
    n, m = map(int, head)
    body = lines[1:]
    if len(body) != m:
        raise MalformedHeader(f"header announces {m} edges, found {len(body)}")
    edges = []
    for ln in body:
        toks = ln.split()
        if len(toks) != 2 or not all(t.lstrip("-").isdigit() for t in toks):
            raise MalformedHeader(f"bad edge line {ln!r}")
        edges.append((int(toks[0]), int(toks[1])))
    return Graph.from_edges(n, edges)


def format_graph(g: Graph) -> str:
    edges = g.edges()
    return "\n".join([f"{g.vertex_count} {len(edges)}"] + [f"{u} {v}" for u, v in edges]) + "\n"


# -- small families -------------------------------------------------------


def path_graph(n: int) -> Graph:
    return Graph.from_edges(n, [(i, i + 1) for i in range(n - 1)])


def cycle_graph(n: int) -> Graph:
    return Graph.from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def complete_graph(n: int) -> Graph:
    return Graph.from_edges(n, combinations(range(n), 2))


def petersen_graph() -> Graph:
    outer = [(i, (i + 1) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    return Graph.from_edges(10, outer + spokes + inner)


# -- automorphisms --------------------------------------------------------


def refined_labels(g: Graph, rounds: int = 2) -> list[int]:
    """Degree, then ``rounds`` of (own label, sorted neighbour labels), relabelled densely."""
    labels = [len(a) for a in g.adjacency]
    for _ in range(rounds):
        keys = [(labels[v], tuple(sorted(labels[u] for u in g.adjacency[v]))) for v in range(g.vertex_count)]
        dense = {k: i for i, k in enumerate(sorted(set(keys)))}
        labels = [dense[k] for k in keys]
    return labels


@dataclass
class AutGroupResult:
    group: PermGroup
    node_count_explored: int


def automorphism_group(
    g: Graph, limit: int = DEFAULT_VERTEX_LIMIT, cap: int = DEFAULT_CAP
) -> AutGroupResult:
    """All automorphisms of ``g`` by backtracking over vertex images.

    Vertices are mapped in order; a candidate image must carry the same
    refined label and agree on adjacency with every vertex mapped so far.
    """
    n = g.vertex_count
    if n > limit:
        raise LimitExceeded(f"{n} vertices exceed the limit of {limit}")
    labels = refined_labels(g)
    adj = [set(a) for a in g.adjacency]
    by_label: dict[int, list[int]] = {}
    for v, lab in enumerate(labels):
        by_label.setdefault(lab, []).append(v)

    image = [-1] * n
    used = [False] * n
    found: list[Permutation] = []
    nodes = 0

    def rec(v: int):
        nonlocal nodes
        nodes += 1
        if v == n:
            found.append(Permutation._unchecked(tuple(image)))
            if len(found) > cap:
                raise CapExceeded(cap, "automorphism enumeration")
            return
        for w in by_label[labels[v]]:
            if used[w]:
                continue
            if any((u in adj[v]) != (image[u] in adj[w]) for u in range(v)):
                continue
            image[v] = w
            used[w] = True
            rec(v + 1)
            used[w] = False
        image[v] = -1

    rec(0)
    group = PermGroup.from_elements(n, found, cap)
    return AutGroupResult(group, nodes)


def is_automorphism(g: Graph, p: Permutation) -> bool:
    edges = {frozenset(e) for e in g.edges()}
    return all(frozenset((p(u), p(v))) in edges for u, v in edges) and p.degree == g.vertex_count


def graph_distinguishing_number(
    g: Graph, limit: int = DEFAULT_VERTEX_LIMIT, cap: int = DEFAULT_CAP
) -> int:
    return distinguishing_number(automorphism_group(g, limit, cap).group)
