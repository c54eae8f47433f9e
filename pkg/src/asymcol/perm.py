"""Finite permutations and permutation groups given by generators.

Points are ``0 .. degree-1``.  A group is stored as its generators; the full
element list is produced on demand by breadth-first closure and cached.  All
stabilizer and motion queries filter that list, so they are only as cheap as
the group is small.  ``enumeration_cap`` turns runaway closures into a
``CapExceeded`` error instead of a silent truncation.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import (
    CapExceeded,
    DegreeMismatch,
    MalformedHeader,
    NotAPermutation,
    NotFaithful,
    NotInvariant,
)

DEFAULT_CAP = 10**6


@dataclass(frozen=True, order=True, slots=True)
class Permutation:
    """A bijection of ``range(degree)``; ``images[p]`` is the image of ``p``.

    Ordering is lexicographic on ``images``, which is the canonical element
    order used everywhere in the package.
    """

    images: tuple[int, ...]

    def __post_init__(self):
        if sorted(self.images) != list(range(len(self.images))):
            raise NotAPermutation(f"{list(self.images)} is not a permutation")

    @classmethod
    def _unchecked(cls, images: tuple[int, ...]) -> Permutation:
        p = object.__new__(cls)
        object.__setattr__(p, "images", images)
        return p

    @classmethod
    def identity(cls, degree: int) -> Permutation:
        return cls._unchecked(tuple(range(degree)))

    @classmethod
    def from_cycles(cls, degree: int, *cycles: Sequence[int]) -> Permutation:
        images = list(range(degree))
        for cyc in cycles:
            for a, b in zip(cyc, list(cyc[1:]) + [cyc[0]]):
                images[a] = b
        return cls(tuple(images))

    @property
    def degree(self) -> int:
        return len(self.images)

    def __call__(self, x: int) -> int:
        return self.images[x]

    def __len__(self):
        return len(self.images)

    def is_identity(self) -> bool:
        return all(p == x for x, p in enumerate(self.images))

    def inverse(self) -> Permutation:
        inv = [0] * len(self.images)
        for x, p in enumerate(self.images):
            inv[p] = x
        return Permutation._unchecked(tuple(inv))

    def cycles(self) -> list[tuple[int, ...]]:
        seen = set()
        out = []
        for start in range(len(self.images)):
            if start in seen or self.images[start] == start:
                continue
            cyc = [start]
            seen.add(start)
            x = self.images[start]
            while x != start:
                cyc.append(x)
                seen.add(x)
                x = self.images[x]
            out.append(tuple(cyc))
        return out

    def __str__(self):
        cyc = self.cycles()
        if not cyc:
            return "()"
        return "".join("(" + " ".join(map(str, c)) + ")" for c in cyc)


def compose(a: Permutation, b: Permutation) -> Permutation:
    """Return ``a∘b``, i.e. apply ``b`` first and then ``a``."""
    if a.degree != b.degree:
        raise DegreeMismatch(f"degrees {a.degree} and {b.degree} differ")
    ai = a.images
    return Permutation._unchecked(tuple(ai[x] for x in b.images))


def support(p: Permutation) -> frozenset[int]:
    return frozenset(x for x, y in enumerate(p.images) if x != y)


class PermGroup:
    """A permutation group given by generators, with a lazily cached element list.

    Instances are never mutated after construction apart from filling the
    element cache, which does not change any observable result.
    """

    def __init__(
        self,
        degree: int,
        generators: Iterable[Permutation] = (),
        enumeration_cap: int = DEFAULT_CAP,
    ):
        gens = tuple(generators)
        for g in gens:
            if g.degree != degree:
                raise DegreeMismatch(
                    f"generator {g} has degree {g.degree}, expected {degree}"
                )
        if enumeration_cap < 1:
            raise ValueError("enumeration_cap must be at least 1")
        self.degree = degree
        self.generators = gens
        self.enumeration_cap = enumeration_cap
        self._elements: tuple[Permutation, ...] | None = None

    @classmethod
    def from_elements(
        cls,
        degree: int,
        elements: Iterable[Permutation],
        enumeration_cap: int = DEFAULT_CAP,
    ) -> PermGroup:
        """Wrap an element list already known to be closed (e.g. a filtered subgroup)."""
        elems = tuple(sorted(set(elements)))
        if len(elems) > enumeration_cap:
            raise CapExceeded(enumeration_cap)
        group = cls(
            degree,
            [e for e in elems if not e.is_identity()],
            enumeration_cap=enumeration_cap,
        )
        group._elements = elems
        return group

    @property
    def elements(self) -> tuple[Permutation, ...]:
        if self._elements is None:
            self._elements = enumerate_elements(self)
        return self._elements

    def order(self) -> int:
        return len(self.elements)

    def __repr__(self):
        return f"PermGroup(degree={self.degree}, generators={len(self.generators)})"


def enumerate_elements(g: PermGroup) -> tuple[Permutation, ...]:
    """All elements of ``g`` in lexicographic order.

    Breadth-first closure under left multiplication by the generators; in a
    finite group this already yields inverses.
    """
    if g._elements is not None:
        return g._elements
    ident = Permutation.identity(g.degree)
    seen = {ident}
    frontier = [ident]
    gens = [s.images for s in g.generators]
    cap = g.enumeration_cap
    while frontier:
        nxt = []
        for e in frontier:
            ei = e.images
            for s in gens:
                p = Permutation._unchecked(tuple(s[x] for x in ei))
                if p not in seen:
                    seen.add(p)
                    if len(seen) > cap:
                        raise CapExceeded(cap)
                    nxt.append(p)
        frontier = nxt
    return tuple(sorted(seen))


def orbits(g: PermGroup, points: Iterable[int] | None = None) -> list[frozenset[int]]:
    """Orbit partition of ``points`` (default: the whole domain).

    Uses the generators only.  Blocks come out sorted by their least point;
    each block is the full orbit intersected with ``points``.
    """
    parent = list(range(g.degree))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for s in g.generators:
        for x, y in enumerate(s.images):
            rx, ry = find(x), find(y)
            if rx != ry:
                parent[max(rx, ry)] = min(rx, ry)
    pts = range(g.degree) if points is None else sorted(set(points))
    blocks: dict[int, set[int]] = {}
    for x in pts:
        blocks.setdefault(find(x), set()).add(x)
    return [frozenset(b) for b in sorted(blocks.values(), key=min)]


def pointwise_stabilizer(g: PermGroup, y: Iterable[int]) -> PermGroup:
    ys = tuple(set(y))
    keep = [e for e in g.elements if all(e.images[p] == p for p in ys)]
    return PermGroup.from_elements(g.degree, keep, g.enumeration_cap)


def setwise_stabilizer(g: PermGroup, y: Iterable[int]) -> PermGroup:
    ys = frozenset(y)
    keep = [e for e in g.elements if all(e.images[p] in ys for p in ys)]
    return PermGroup.from_elements(g.degree, keep, g.enumeration_cap)


def motion(g: PermGroup) -> int | None:
    """Minimal degree: least support size of a non-identity element.

    ``None`` for the trivial group, where the minimum is over nothing.
    """
    best = None
    for e in g.elements:
        moved = sum(1 for x, y in enumerate(e.images) if x != y)
        if moved and (best is None or moved < best):
            best = moved
    return best


def restrict_action(g: PermGroup, y: Iterable[int]) -> PermGroup:
    """View ``g`` as a permutation group on ``y``, re-indexed in ascending order.

    Requires ``y`` to be invariant and the action on ``y`` to be faithful,
    so that restriction is an isomorphism.
    """
    ys = sorted(set(y))
    index = {p: i for i, p in enumerate(ys)}
    for s in g.generators:
        for p in ys:
            if s.images[p] not in index:
                raise NotInvariant(f"generator {s} maps {p} outside the set")
    restricted = []
    for e in g.elements:
        r = tuple(index[e.images[p]] for p in ys)
        if not e.is_identity() and all(i == j for i, j in enumerate(r)):
            raise NotFaithful(f"non-identity element {e} fixes the set pointwise")
        restricted.append(Permutation._unchecked(r))
    gens = [Permutation._unchecked(tuple(index[s.images[p]] for p in ys)) for s in g.generators]
    out = PermGroup(len(ys), gens, g.enumeration_cap)
    out._elements = tuple(sorted(restricted))
    return out


# -- common groups --------------------------------------------------------


def symmetric_group(n: int, cap: int = DEFAULT_CAP) -> PermGroup:
    gens = []
    if n >= 2:
        gens.append(Permutation.from_cycles(n, (0, 1)))
    if n >= 3:
        gens.append(Permutation.from_cycles(n, tuple(range(n))))
    return PermGroup(n, gens, cap)


def cyclic_group(n: int, cap: int = DEFAULT_CAP) -> PermGroup:
    gens = [Permutation.from_cycles(n, tuple(range(n)))] if n >= 2 else []
    return PermGroup(n, gens, cap)


def dihedral_group(n: int, cap: int = DEFAULT_CAP) -> PermGroup:
    """Symmetries of an ``n``-gon acting on its corners (``n >= 3``)."""
    rot = Permutation(tuple((i + 1) % n for i in range(n)))
    refl = Permutation(tuple((-i) % n for i in range(n)))
    return PermGroup(n, [rot, refl], cap)


# -- generator files ------------------------------------------------------


def parse_generators(text: str, cap: int = DEFAULT_CAP) -> PermGroup:
    """Parse a generator file.

    Line 1 is ``degree n``; every further non-empty line holds one generator
    as ``n`` space-separated 0-indexed images.  ``#`` starts a comment line.
    """
    lines = [
        ln.strip()
        for ln in text.splitlines()
        if ln.strip() and not ln.strip().startswith("#")
    ]
    if not lines:
        raise MalformedHeader("empty generator file")
    head = lines[0].split()
    if len(head) != 2 or head[0] != "degree" or not head[1].isdigit():
        raise MalformedHeader(f"expected 'degree n', got {lines[0]!r}")
    n = int(head[1])
    gens = []
    for ln in lines[1:]:
        try:
            images = tuple(int(tok) for tok in ln.split())
        except ValueError:
            raise NotAPermutation(f"non-integer image in {ln!r}") from None
        if len(images) != n:
            raise DegreeMismatch(f"generator {ln!r} has {len(images)} images, expected {n}")
        gens.append(Permutation(images))
    return PermGroup(n, gens, cap)


def format_generators(g: PermGroup) -> str:
    out = [f"degree {g.degree}"]
    out += [" ".join(map(str, s.images)) for s in g.generators]
    return "\n".join(out) + "\n"


def small_generating_set(g: PermGroup) -> list[Permutation]:
    """Greedy generating set: scan elements in order, keep those not yet generated."""
    target = len(g.elements)
    gens: list[Permutation] = []
    generated = {Permutation.identity(g.degree)}
    for e in g.elements:
        if len(generated) == target:
            break
        if e in generated:
            continue
        gens.append(e)
        generated = set(enumerate_elements(PermGroup(g.degree, gens, g.enumeration_cap)))
    return gens
