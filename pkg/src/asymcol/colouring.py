"""Asymmetric (distinguishing) colourings of finite permutation groups.

A colouring is asymmetric with respect to a set ``H`` of permutations when
every non-identity ``g`` in ``H`` sends some point to a point of another
colour.  ``H`` need not be a group.

The exact searches share one backtracking core: points are coloured in a
fixed order, and every group element is checked at the moment the last
point of its support receives a colour.  Colours are used in order of first
appearance (the first point always gets colour 0), which is sound because
renaming colours preserves asymmetry.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .errors import (
    ColouringFailed,
    NeedMoreBlocks,
    NestingViolated,
    NoneExists,
    UncolouredPoint,
)
from .perm import PermGroup, Permutation, motion

PROVENANCE_TAGS = ("coset_block", "tower_block", "filler", "search", "random")


@dataclass(frozen=True)
class Colouring:
    """Partial map from points to colours ``0..k-1`` with a provenance tag per point."""

    degree: int
    k: int
    colours: tuple[int | None, ...]
    provenance: tuple[str | None, ...]
    seed: int | None = None

    def __post_init__(self):
        if len(self.colours) != self.degree or len(self.provenance) != self.degree:
            raise ValueError("colours and provenance must have one entry per point")
        for c, tag in zip(self.colours, self.provenance):
            if (c is None) != (tag is None):
                raise ValueError("provenance must be set exactly on coloured points")
            if c is not None and not 0 <= c < self.k:
                raise ValueError(f"colour {c} outside 0..{self.k - 1}")
            if tag is not None and tag not in PROVENANCE_TAGS:
                raise ValueError(f"unknown provenance tag {tag!r}")

    @classmethod
    def from_assignment(
        cls, degree: int, k: int, assignment: dict[int, int], tag: str, seed=None
    ) -> Colouring:
        colours = tuple(assignment.get(p) for p in range(degree))
        prov = tuple(None if c is None else tag for c in colours)
        return cls(degree, k, colours, prov, seed)

    @classmethod
    def total(cls, colours: Sequence[int], k: int = 2, tag: str = "search", seed=None):
        colours = tuple(colours)
        return cls(len(colours), k, colours, (tag,) * len(colours), seed)

    def __getitem__(self, p: int) -> int | None:
        return self.colours[p]

    def is_total(self) -> bool:
        return all(c is not None for c in self.colours)

    def to_json(self) -> dict:
        out = {
            "degree": self.degree,
            "k": self.k,
            "colours": list(self.colours),
            "provenance": list(self.provenance),
        }
        if self.seed is not None:
            out["seed"] = self.seed
        return out

    @classmethod
    def from_json(cls, data: dict) -> Colouring:
        return cls(
            data["degree"],
            data["k"],
            tuple(data["colours"]),
            tuple(data["provenance"]),
            data.get("seed"),
        )


@dataclass
class AsymmetryReport:
    asymmetric: bool
    violator: Permutation | None = None
    witness_map: dict[Permutation, int] = field(default_factory=dict)


def is_asymmetric(c: Colouring | Sequence[int], h: Iterable[Permutation]) -> AsymmetryReport:
    """Check ``c`` against every non-identity element of ``h``.

    ``h`` is scanned in the order given (sets are sorted first), so the
    reported violator is the first colour-preserving element in that order.
    Points outside all supports may stay uncoloured.
    """
    colours = c.colours if isinstance(c, Colouring) else tuple(c)
    elems = sorted(h) if isinstance(h, (set, frozenset)) else list(h)
    witnesses = {}
    for g in elems:
        witness = None
        for x, y in enumerate(g.images):
            if x == y:
                continue
            cx, cy = colours[x], colours[y]
            if cx is None:
                raise UncolouredPoint(x)
            if cy is None:
                raise UncolouredPoint(y)
            if witness is None and cx != cy:
                witness = x
        if witness is None:
            if not g.is_identity():
                return AsymmetryReport(False, g, witnesses)
        else:
            witnesses[g] = witness
    return AsymmetryReport(True, None, witnesses)


def _search(order: Sequence[int], elements: Iterable[Permutation], k: int) -> dict[int, int] | None:
    """Colour ``order`` left to right so that every element in ``elements`` is broken.

    Each element only looks at its support inside ``order`` (the caller
    guarantees that part is invariant).  Returns the lexicographically first
    normalised assignment, or ``None`` when none exists.
    """
    pos = {p: i for i, p in enumerate(order)}
    buckets: list[list[list[tuple[int, int]]]] = [[] for _ in order]
    for e in elements:
        pairs = [(pos[x], pos[y]) for x, y in enumerate(e.images) if x != y and x in pos]
        if not pairs:
            continue
        last = max(a for a, _ in pairs)
        buckets[last].append(pairs)
    for b in buckets:
        b.sort(key=len)
    n = len(order)
    if n == 0:
        return {}
    if k <= 0:
        return None
    col = [0] * n

    def rec(i: int, used: int) -> bool:
        if i == n:
            return True
        for colour in range(min(k, used + 1)):
            col[i] = colour
            ok = True
            for pairs in buckets[i]:
                for a, b in pairs:
                    if col[a] != col[b]:
                        break
                else:
                    ok = False
                    break
            if ok and rec(i + 1, max(used, colour + 1)):
                return True
        return False

    if not rec(0, 0):
        return None
    return {p: col[i] for i, p in enumerate(order)}


def exact_asymmetric_colouring(g: PermGroup, k: int) -> Colouring:
    """First asymmetric ``k``-colouring in canonical order, or ``NoneExists``."""
    elems = g.elements
    found = _search(range(g.degree), elems, k)
    if found is None:
        raise NoneExists(f"no asymmetric {k}-colouring exists")
    return Colouring.from_assignment(g.degree, max(k, 1), found, "search")


def distinguishing_number(g: PermGroup) -> int:
    """Least ``k`` admitting an asymmetric ``k``-colouring (1 for trivial groups)."""
    for k in range(1, max(g.degree, 1) + 1):
        try:
            exact_asymmetric_colouring(g, k)
        except NoneExists:
            continue
        return k
    # unreachable for faithful actions: all-distinct colours always work
    raise NoneExists("group does not act faithfully")


def union_bound(order: int, m: int) -> float:
    """Upper bound on the chance that a uniform 2-colouring is not asymmetric.

    Each non-identity element with support ``s >= m`` has at most ``s/2``
    cycles of length >= 2, hence at most ``n - s/2`` cycles overall, and it
    preserves a uniform colouring with probability ``2**(cycles - n) <=
    2**(-m/2)``.  Summing over the ``order - 1`` non-identity elements gives
    the bound.
    """
    return (order - 1) * 2.0 ** (-m / 2)


def random_motion_colouring(g: PermGroup, seed: int, max_tries: int = 64) -> Colouring:
    """Draw uniform 2-colourings until one is asymmetric.

    Draws come from ``random.Random(seed)`` (Mersenne Twister, identical on
    every platform), one ``getrandbits(1)`` per point in point order.
    """
    elems = [e for e in g.elements if not e.is_identity()]
    motion(g)  # forces enumeration so CapExceeded surfaces before drawing
    pairs = [[(x, y) for x, y in enumerate(e.images) if x != y] for e in elems]
    pairs.sort(key=len)
    rng = random.Random(seed)
    for _ in range(max_tries):
        col = [rng.getrandbits(1) for _ in range(g.degree)]
        if all(any(col[x] != col[y] for x, y in ps) for ps in pairs):
            return Colouring.total(col, 2, "random", seed)
    raise ColouringFailed(f"no asymmetric colouring within {max_tries} tries")


def check_tower(g: PermGroup, blocks: Sequence[Iterable[int]]) -> list[frozenset[int]]:
    """Validate block hypotheses and return the blocks as frozensets.

    Blocks must be disjoint and invariant, and an element fixing block
    ``i+1`` pointwise must fix block ``i`` pointwise.
    """
    bs = [frozenset(b) for b in blocks]
    seen: set[int] = set()
    for b in bs:
        if seen & b:
            raise NestingViolated("blocks overlap")
        seen |= b
    for s in g.generators:
        for i, b in enumerate(bs):
            if any(s.images[p] not in b for p in b):
                raise NestingViolated(f"block {i} is not invariant under {s}")
    for e in g.elements:
        fixed = [all(e.images[p] == p for p in b) for b in bs]
        for i in range(len(bs) - 1):
            if fixed[i + 1] and not fixed[i]:
                raise NestingViolated(
                    f"{e} fixes block {i + 1} pointwise but moves block {i}"
                )
    return bs


def blockwise_colouring(g: PermGroup, blocks: Sequence[Iterable[int]]) -> Colouring:
    """Asymmetric 2-colouring of the union of a nested block sequence.

    Stands in for an existence result that holds for infinite nested
    sequences: on a finite prefix the search may fail, and then
    ``NeedMoreBlocks`` tells the caller to extend the sequence.  Elements
    acting trivially on the union are ignored.  Backtracking runs over points
    block by block, so later blocks are revised before earlier ones.
    """
    bs = check_tower(g, blocks)
    order = [p for b in bs for p in sorted(b)]
    found = _search(order, g.elements, 2)
    if found is None:
        raise NeedMoreBlocks(
            f"no asymmetric 2-colouring of the {len(bs)} given blocks; extend the tower"
        )
    return Colouring.from_assignment(g.degree, 2, found, "tower_block")
