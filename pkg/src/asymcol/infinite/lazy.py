"""Built-in locally finite graphs, ball truncations and extendable automorphisms.

A window is the BFS ball of radius ``R`` around the root.  Alongside it we
keep the ball of radius ``R + margin``; vertex indices follow BFS order from
the root, so the window is always the index prefix ``0 .. size-1`` of the
outer ball.

An *extendable automorphism* is an induced-subgraph embedding of the window
into the outer ball, stored as a tuple of outer-ball indices.  For the three
built-in families these are exactly the restrictions of automorphisms ``g``
of the infinite graph with ``g(B_R) ⊆ B_{R+margin}``:

* path: embeddings of a segment are translations and reflections.
* regular tree: every isomorphism between subtrees extends, because each
  vertex has the same number of further neighbours on both sides.
* square grid, ``R >= 2``: the unit square through the centre is present,
  so two vertices at distance 2 map to a "diagonal" pair exactly when they
  had two common neighbours; the embedding is therefore a lattice isometry.
  At ``R <= 1`` the window is a star and the statement fails.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from typing import Any, Hashable, Iterator

from ..errors import CapExceeded, InputError, SizeLimitExceeded
from ..perm import DEFAULT_CAP, Permutation

DEFAULT_MAX_VERTICES = 200_000


class LazyGraph:
    """Connected, locally finite graph given by a neighbour oracle."""

    family = ""

    def root(self) -> Hashable:
        raise NotImplementedError

    def neighbours(self, v) -> list:
        raise NotImplementedError

    def name(self, v) -> Any:
        """JSON-friendly canonical name."""
        return v

    def from_name(self, name) -> Hashable:
        return name

    @property
    def spec(self) -> str:
        return self.family


class PathGraph(LazyGraph):
    family = "path"

    def root(self):
        return 0

    def neighbours(self, v):
        return [v - 1, v + 1]


class TreeGraph(LazyGraph):
    """The ``d``-regular tree; vertices are child-index tuples from the root."""

    family = "tree"

    def __init__(self, d: int):
        if d < 3:
            raise InputError(f"tree degree must be at least 3, got {d}")
        self.d = d

    def root(self):
        return ()

    def neighbours(self, v):
        if not v:
            return [(c,) for c in range(self.d)]
        return [v[:-1]] + [v + (c,) for c in range(self.d - 1)]

    def name(self, v):
        return ".".join(["r", *map(str, v)])

    def from_name(self, name):
        parts = name.split(".")
        if parts[0] != "r":
            raise InputError(f"bad tree vertex name {name!r}")
        return tuple(int(p) for p in parts[1:])

    @property
    def spec(self):
        return f"tree:{self.d}"


class GridGraph(LazyGraph):
    family = "grid"

    def root(self):
        return (0, 0)

    def neighbours(self, v):
        x, y = v
        return [(x - 1, y), (x, y - 1), (x, y + 1), (x + 1, y)]

    def name(self, v):
        return list(v)

    def from_name(self, name):
        return tuple(name)

    @property
    def spec(self):
        return "grid:2"


def parse_family(spec: str) -> LazyGraph:
    """``path``, ``tree:<d>`` with ``d >= 3``, or ``grid:2``."""
    if spec == "path":
        return PathGraph()
    if spec.startswith("tree:"):
        try:
            d = int(spec[5:])
        except ValueError:
            raise InputError(f"bad tree degree in {spec!r}") from None
        return TreeGraph(d)
    if spec == "grid:2":
        return GridGraph()
    raise InputError(f"unknown family {spec!r}; expected path, tree:<d> or grid:2")


@dataclass
class BallTruncation:
    graph: LazyGraph
    radius: int
    margin: int
    vertices: list  # outer ball, BFS order
    dist: list[int]
    parent: list[int]
    adjacency: list[tuple[int, ...]]  # induced on the outer ball
    size: int  # number of window vertices
    index: dict = field(repr=False)

    @property
    def inner_radius(self) -> int:
        return self.radius - self.margin

    @property
    def outer_size(self) -> int:
        return len(self.vertices)

    def names(self, indices=None) -> list:
        idx = range(self.size) if indices is None else indices
        return [self.graph.name(self.vertices[i]) for i in idx]

    def index_of(self, name) -> int:
        return self.index[self.graph.from_name(name)]

    def sphere(self, r: int) -> list[int]:
        return [i for i in range(self.size) if self.dist[i] == r]

    @cached_property
    def window_adjacency(self) -> list[frozenset[int]]:
        return [frozenset(u for u in self.adjacency[v] if u < self.size) for v in range(self.size)]

    @cached_property
    def outer_adjacency(self) -> list[frozenset[int]]:
        return [frozenset(a) for a in self.adjacency]


def ball(
    g: LazyGraph, radius: int, margin: int = 0, max_vertices: int = DEFAULT_MAX_VERTICES
) -> BallTruncation:
    """BFS ball of radius ``radius`` plus the ``margin`` shell around it."""
    if radius < 0 or margin < 0:
        raise InputError("radius and margin must be non-negative")
    outer = radius + margin
    root = g.root()
    index = {root: 0}
    vertices = [root]
    dist = [0]
    parent = [-1]
    queue = deque([root])
    while queue:
        v = queue.popleft()
        dv = dist[index[v]]
        if dv == outer:
            continue
        for u in sorted(g.neighbours(v)):
            if u not in index:
                index[u] = len(vertices)
                vertices.append(u)
                dist.append(dv + 1)
                parent.append(index[v])
                if len(vertices) > max_vertices:
                    raise SizeLimitExceeded(
                        f"ball of radius {outer} exceeds {max_vertices} vertices"
                    )
                queue.append(u)
    adjacency = []
    for v in vertices:
        adjacency.append(tuple(sorted(index[u] for u in g.neighbours(v) if u in index)))
    size = sum(1 for d in dist if d <= radius)
    return BallTruncation(g, radius, margin, vertices, dist, parent, adjacency, size, index)


def embeddings(
    t: BallTruncation,
    x0: frozenset[int] | None = None,
    y: frozenset[int] | None = None,
    window_only: bool = False,
    cap: int = DEFAULT_CAP,
) -> Iterator[tuple[int, ...]]:
    """Induced embeddings of the window into the outer ball, in lexicographic order.

    With ``x0``/``y`` given, only embeddings with ``g(x0) = y`` are produced.
    With ``window_only`` the images must stay inside the window, which makes
    the results automorphisms of the window.
    """
    n = t.size
    limit = n if window_only else t.outer_size
    wadj = t.window_adjacency
    oadj = t.outer_adjacency
    parent = t.parent
    constrained = x0 is not None
    x0 = x0 or frozenset()
    y = y or frozenset()
    if constrained and len(x0) != len(y):
        return

    def allowed(v, c):
        return not constrained or ((v in x0) == (c in y))

    if 0 in x0:
        root_cands = sorted(y)
    else:
        reach = t.radius if window_only else t.margin
        root_cands = [c for c in range(limit) if t.dist[c] <= reach]
    root_cands = [c for c in root_cands if c < limit and allowed(0, c)]

    image = [-1] * n
    pre: dict[int, int] = {}
    count = 0

    def candidates(v):
        if v == 0:
            return iter(root_cands)
        return iter(sorted(c for c in oadj[image[parent[v]]] if c < limit))

    def fits(v, c):
        if c in pre or not allowed(v, c):
            return False
        for u in wadj[v]:
            if u < v and image[u] not in oadj[c]:
                return False
        for w in oadj[c]:
            u = pre.get(w)
            if u is not None and u not in wadj[v]:
                return False
        return True

    if n == 0:
        return
    stack = [candidates(0)]
    while stack:
        v = len(stack) - 1
        if image[v] != -1:
            del pre[image[v]]
            image[v] = -1
        for c in stack[-1]:
            if fits(v, c):
                image[v] = c
                pre[c] = v
                break
        else:
            stack.pop()
            continue
        if v + 1 == n:
            count += 1
            if count > cap:
                raise CapExceeded(cap, "extendable automorphism enumeration")
            yield tuple(image)
        else:
            stack.append(candidates(v + 1))


def extendable_automorphisms(t: BallTruncation, cap: int = DEFAULT_CAP) -> list[tuple[int, ...]]:
    """All extendable automorphisms of the window, as tuples of outer-ball indices."""
    return list(embeddings(t, cap=cap))


def window_automorphisms(t: BallTruncation, cap: int = DEFAULT_CAP) -> list[Permutation]:
    """Extendable automorphisms that map the window onto itself."""
    return [Permutation._unchecked(e) for e in embeddings(t, window_only=True, cap=cap)]
