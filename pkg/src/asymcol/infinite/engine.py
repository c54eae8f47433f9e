"""The interleaved colouring construction, run inside a finite window.

Vocabulary (all sets are window vertex indices):

* ``X0`` is the base set, ``{root}`` by default.  ``S_1, S_2, ...`` are the
  orbits of its stabilizer on the rest of the window, sorted by
  (distance from ``X0``, least index).
* ``G_n`` is the set of window automorphisms that fix every ``S_i`` with
  ``i >= n`` setwise.  Several ``n`` usually give the same element set; the
  engine handles one representative (the least ``n``) per distinct set.
* A block tower for ``G_n`` starts with ``U_1 = S_n`` and keeps appending
  runs of consecutive suborbits so that an element moving ``U_i`` also
  moves ``U_{i+1}``.
* A coset target ``Y`` is a vertex set of size ``|X0|`` near ``X0`` that an
  extendable automorphism ``g`` maps ``X0`` onto, but that no ``G_n`` does.
  Every element with the same image of ``X0`` maps each ``S_i`` onto the
  same set ``g S_i``, so one representative decides the whole coset.

Each construction step takes the next coset target, reserves a fresh
``Z = S_i ∪ g S_i`` (colour 0 on ``S_i``, 1 on the rest), then hands one
fresh tower block to the scheduled ``n``.  Once the targets run out, the
tower blocks are 2-coloured by ``blockwise_colouring`` and everything left is
filled with colour 0.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable, Iterator, Sequence

from ..colouring import Colouring, blockwise_colouring, is_asymmetric
from ..errors import (
    CapExceeded,
    InputError,
    NeedMoreBlocks,
    NotRealizable,
    OutOfWindow,
    RadiusExhausted,
    UncolouredPoint,
)
from ..perm import DEFAULT_CAP, PermGroup, Permutation, orbits
from .lazy import BallTruncation, TreeGraph, ball, embeddings, parse_family, window_automorphisms

DEFAULT_MARGIN = 2
DEFAULT_COSET_RADIUS = 1


# -- suborbits ------------------------------------------------------------


@dataclass
class SuborbitDecomposition:
    x0: frozenset[int]
    orbits: list[frozenset[int]]
    method: str  # "enumerated" or "structural"
    distance: list[int] = field(repr=False, default_factory=list)

    def __len__(self):
        return len(self.orbits)

    def S(self, i: int) -> frozenset[int]:
        """The ``i``-th suborbit, counting from 1."""
        return self.orbits[i - 1]


def distances_from(t: BallTruncation, x0: Iterable[int]) -> list[int]:
    dist = [-1] * t.size
    frontier = list(x0)
    for v in frontier:
        dist[v] = 0
    while frontier:
        nxt = []
        for v in frontier:
            for u in t.window_adjacency[v]:
                if dist[u] < 0:
                    dist[u] = dist[v] + 1
                    nxt.append(u)
        frontier = nxt
    return dist


def tree_root_stabilizer_order(t: BallTruncation) -> int:
    """``d! * ((d-1)!)**(#vertices strictly between root and boundary)``."""
    d = t.graph.d
    inner = sum(1 for i in range(t.size) if 0 < t.dist[i] < t.radius)
    return math.factorial(d) * math.factorial(d - 1) ** inner if t.radius >= 1 else 1


def is_structural(t: BallTruncation, x0: frozenset[int], cap: int) -> bool:
    """Trees with ``X0 = {root}`` switch to closed forms once enumeration would pass ``cap``."""
    return (
        isinstance(t.graph, TreeGraph)
        and x0 == frozenset({0})
        and tree_root_stabilizer_order(t) > cap
    )


def _check_x0(t: BallTruncation, x0) -> frozenset[int]:
    x0 = frozenset({0} if x0 is None else x0)
    if not x0:
        raise InputError("X0 must be non-empty")
    for v in x0:
        if not 0 <= v < t.size or t.dist[v] > t.inner_radius:
            raise OutOfWindow(f"X0 vertex {v} is not inside the inner ball")
    return x0


def suborbits(t: BallTruncation, x0=None, cap: int = DEFAULT_CAP) -> SuborbitDecomposition:
    """Orbits of the ``X0``-stabilizer on the window minus ``X0``.

    For trees too large to enumerate the orbits are the spheres around the
    root: the root stabilizer is transitive on each sphere.
    """
    x0 = _check_x0(t, x0)
    dist = distances_from(t, x0)
    if is_structural(t, x0, cap):
        blocks = [frozenset(t.sphere(r)) for r in range(1, t.radius + 1)]
        method = "structural"
    else:
        stab = [Permutation._unchecked(e) for e in embeddings(t, x0, x0, window_only=True, cap=cap)]
        rest = [v for v in range(t.size) if v not in x0]
        blocks = orbits(PermGroup(t.size, stab, cap), rest)
        method = "enumerated"
    blocks = [b for b in blocks if b]
    blocks.sort(key=lambda b: (min(dist[v] for v in b), min(b)))
    return SuborbitDecomposition(x0, blocks, method, dist)


# -- the groups G_n -------------------------------------------------------


@dataclass
class StabilizerRestriction:
    n: int
    elements: tuple[Permutation, ...] | None
    structural: str | None = None
    degree: int = 0

    def group(self, cap: int = DEFAULT_CAP) -> PermGroup:
        if self.elements is None:
            raise CapExceeded(cap, f"G_{self.n} ({self.structural})")
        return PermGroup.from_elements(self.degree, self.elements, max(cap, len(self.elements)))

    def nonidentity(self) -> list[Permutation]:
        return [e for e in self.elements or () if not e.is_identity()]


def _fixes_setwise(e: Permutation, block: frozenset[int]) -> bool:
    return all(e.images[p] in block for p in block)


def _moves(e: Permutation, block: Iterable[int]) -> bool:
    return any(e.images[p] != p for p in block)


def stabilizer_restriction(
    t: BallTruncation,
    s: SuborbitDecomposition,
    n: int,
    candidates: Sequence[Permutation] | None = None,
    cap: int = DEFAULT_CAP,
) -> StabilizerRestriction:
    """Window automorphisms fixing each ``S_i``, ``i >= n``, setwise."""
    if not 1 <= n <= len(s):
        raise OutOfWindow(f"S_{n} is not inside the window ({len(s)} suborbits)")
    if s.method == "structural":
        return StabilizerRestriction(n, None, "root stabilizer of the regular tree", t.size)
    if candidates is None:
        candidates = window_automorphisms(t, cap)
    tail = s.orbits[n - 1:]
    keep = tuple(e for e in candidates if all(_fixes_setwise(e, b) for b in tail))
    return StabilizerRestriction(n, keep, None, t.size)


def stabilizer_classes(
    t: BallTruncation, s: SuborbitDecomposition, cap: int = DEFAULT_CAP
) -> list[StabilizerRestriction]:
    """One restriction per distinct element set, represented by its least ``n``."""
    if not len(s):
        return []
    if s.method == "structural":
        return [stabilizer_restriction(t, s, 1, cap=cap)]
    candidates = window_automorphisms(t, cap)
    seen = set()
    out = []
    for n in range(1, len(s) + 1):
        r = stabilizer_restriction(t, s, n, candidates, cap)
        key = r.elements
        if key not in seen:
            seen.add(key)
            out.append(r)
    return out


# -- block towers ---------------------------------------------------------


@dataclass
class BlockTower:
    n: int
    breakpoints: list[int]  # k(1) < k(2) < ...
    blocks: list[frozenset[int]]  # U_1, U_2, ...

    def block(self, i: int) -> frozenset[int]:
        return self.blocks[i - 1]


def build_block_tower(
    r: StabilizerRestriction, s: SuborbitDecomposition, n: int | None = None
) -> BlockTower:
    """Grow ``U_1 = S_n, U_2, ...`` until the window runs out of suborbits.

    After ``U_i`` ends at suborbit ``k``, the next block ends at the least
    ``K`` such that every element moving ``U_i`` moves some ``S_j`` with
    ``k < j <= K``.  The tower stops at the first ``U_i`` for which no such
    ``K`` exists inside the window; only an empty tower is an error.
    """
    n = r.n if n is None else n
    N = len(s)
    if not 1 <= n <= N:
        raise RadiusExhausted(f"S_{n} is not inside the window ({N} suborbits)")
    ks = [n - 1, n]
    blocks = [s.S(n)]
    elems = None if r.elements is None else r.nonidentity()
    while True:
        start = ks[-1]
        if elems is None:
            # a root-fixing tree automorphism moving a vertex moves its children
            K = start + 1 if start < N else None
        else:
            movers = [e for e in elems if _moves(e, blocks[-1])]
            K = None
            for j in range(start + 1, N + 1):
                sj = s.S(j)
                movers = [e for e in movers if not _moves(e, sj)]
                if not movers:
                    K = j
                    break
        if K is None:
            break
        ks.append(K)
        blocks.append(frozenset().union(*(s.S(j) for j in range(start + 1, K + 1))))
    return BlockTower(n, ks, blocks)


# -- cosets ---------------------------------------------------------------


def coset_representative(t: BallTruncation, x0, y) -> tuple[int, ...]:
    """First extendable automorphism (lexicographic) mapping ``X0`` onto ``Y``."""
    x0 = frozenset(x0)
    y = frozenset(y)
    if len(y) != len(x0):
        raise NotRealizable(f"|Y| = {len(y)} differs from |X0| = {len(x0)}")
    for v in y:
        if not 0 <= v < t.size or t.dist[v] > t.inner_radius:
            raise OutOfWindow(f"target vertex {v} is not inside the inner ball")
    for e in embeddings(t, x0, y):
        return e
    raise NotRealizable(f"no extendable automorphism maps X0 onto {sorted(y)}")


def coset_suborbit_image(rep: Sequence[int], s: SuborbitDecomposition, i: int) -> frozenset[int]:
    """``g S_i`` for any ``g`` in the coset of ``rep``; returned in outer-ball indices."""
    block = s.S(i)
    if max(block) >= len(rep):
        raise OutOfWindow(f"S_{i} leaves the representative's domain")
    return frozenset(rep[p] for p in block)


def x_n_images(restrictions: Sequence[StabilizerRestriction], x0: frozenset[int]) -> set[frozenset[int]]:
    """Images of ``X0`` under the ``G_n``; structural tree classes fix the root."""
    out = {x0}
    for r in restrictions:
        for e in r.elements or ():
            out.add(frozenset(e.images[p] for p in x0))
    return out


def coset_targets(
    t: BallTruncation,
    s: SuborbitDecomposition,
    restrictions: Sequence[StabilizerRestriction],
    coset_radius: int = DEFAULT_COSET_RADIUS,
) -> list[tuple[frozenset[int], tuple[int, ...]]]:
    """Realizable targets within ``coset_radius`` of ``X0`` and in the inner ball.

    Ordered by the largest distance from ``X0``, then by sorted indices.
    """
    rho = min(coset_radius, t.inner_radius)
    if rho < 0:
        return []
    region = [v for v in range(t.size) if 0 <= s.distance[v] <= rho and t.dist[v] <= t.inner_radius]
    skip = x_n_images(restrictions, s.x0)
    found = []
    for combo in combinations(region, len(s.x0)):
        y = frozenset(combo)
        if y in skip:
            continue
        try:
            rep = coset_representative(t, s.x0, y)
        except NotRealizable:
            continue
        found.append((max(s.distance[v] for v in y), sorted(y), y, rep))
    found.sort(key=lambda f: (f[0], f[1]))
    return [(y, rep) for _, _, y, rep in found]


# -- tree structure -------------------------------------------------------


def _children(t: BallTruncation, v: int) -> list[int]:
    return [u for u in sorted(t.window_adjacency[v]) if t.dist[u] == t.dist[v] + 1]


def tree_structural_check(t: BallTruncation, colours: Sequence[int]):
    """Is no non-identity root-fixing window automorphism colour-preserving?

    Bottom-up coding: a vertex's code is its colour plus the sorted codes of
    its children.  A colour-preserving root-fixing automorphism other than
    the identity exists exactly when some vertex has two children with equal
    codes.  Returns ``(ok, witness)`` where the witness is
    ``(parent, child, child)`` on failure.
    """
    if not isinstance(t.graph, TreeGraph):
        raise InputError("the structural check only applies to the tree family")
    codes: dict[tuple, int] = {}
    code = [0] * t.size
    for v in sorted(range(t.size), key=lambda v: -t.dist[v]):
        kids = _children(t, v)
        seen = {}
        for u in kids:
            if code[u] in seen:
                return False, (v, seen[code[u]], u)
            seen[code[u]] = u
        key = (colours[v], tuple(sorted(code[u] for u in kids)))
        code[v] = codes.setdefault(key, len(codes))
    return True, None


def tree_block_code_count(t: BallTruncation, blocks: Sequence[frozenset[int]]) -> bool:
    """Can the spheres in ``blocks`` be 2-coloured so no root-fixing element survives?

    All vertices of one depth look alike, so it is enough to count how many
    distinct subtree codes a vertex of each depth can realise and compare
    with the number of children that must receive distinct codes.
    """
    depths = {t.dist[next(iter(b))] for b in blocks}
    deepest = max(depths, default=0)
    d = t.graph.d
    count = 2 if t.radius in depths else 1
    for depth in range(t.radius - 1, -1, -1):
        kids = d if depth == 0 else d - 1
        if depth < deepest:
            if count < kids:
                return False
            count = math.comb(count, kids)
        else:
            count = 1
        count *= 2 if depth in depths else 1
    return True


# -- the construction -----------------------------------------------------


def diagonal_schedule(active: Sequence[int]) -> Iterator[int]:
    """``a1; a1 a2; a1 a2 a3; ...`` over ``active``, so every entry recurs forever."""
    r = 1
    while True:
        for j in range(min(r, len(active))):
            yield active[j]
        r += 1


@dataclass
class Step:
    k: int
    n: int
    target: frozenset[int] | None = None
    representative: tuple[int, ...] | None = None
    suborbit: int | None = None
    z: frozenset[int] = frozenset()
    tower_block: int | None = None


@dataclass
class InterleavePlan:
    steps: list[Step]
    towers: dict[int, BlockTower]
    index_sets: dict[int, list[int]]
    used: frozenset[int]

    def coset_blocks(self) -> list[frozenset[int]]:
        return [st.z for st in self.steps if st.target is not None]

    def tower_blocks(self, n: int) -> list[frozenset[int]]:
        return [self.towers[n].block(i) for i in self.index_sets[n]]


def interleave_construct(
    t: BallTruncation,
    s: SuborbitDecomposition,
    towers: dict[int, BlockTower],
    cosets: Sequence[tuple[frozenset[int], tuple[int, ...]]],
    restrictions: dict[int, StabilizerRestriction],
    cap: int = DEFAULT_CAP,
) -> tuple[Colouring, InterleavePlan]:
    active = sorted(towers)
    schedule = diagonal_schedule(active)
    used: set[int] = set()
    index_sets: dict[int, list[int]] = {n: [] for n in active}
    steps: list[Step] = []
    colours: dict[int, int] = {}
    prov: dict[int, str] = {}

    def add_tower_block(n: int) -> int | None:
        for i, block in enumerate(towers[n].blocks, 1):
            if i not in index_sets[n] and not (block & used):
                index_sets[n].append(i)
                used.update(block)
                return i
        return None

    for k, (y, rep) in enumerate(cosets, 1):
        n = next(schedule) if active else None
        pick = None
        for i in range(1, len(s) + 1):
            si = s.S(i)
            img = coset_suborbit_image(rep, s, i)
            if img == si or max(img) >= t.size:
                continue
            if (si | img) & used:
                continue
            pick = (i, si, img)
            break
        if pick is None:
            raise RadiusExhausted(
                f"no fresh suborbit for coset target {sorted(y)} (step {k}); enlarge the radius"
            )
        i, si, img = pick
        z = si | img
        for p in z:
            colours[p] = 0 if p in si else 1
            prov[p] = "coset_block"
        used.update(z)
        step = Step(k, n, y, rep, i, frozenset(z))
        if n is not None:
            step.tower_block = add_tower_block(n)
            if step.tower_block is None:
                raise RadiusExhausted(
                    f"no fresh block of the tower for n={n} at step {k}; enlarge the radius"
                )
        steps.append(step)

    # targets are exhausted; keep feeding towers until each block colouring succeeds
    k = len(steps)
    for n in active:
        while True:
            if index_sets[n]:
                try:
                    part = _colour_tower(t, restrictions[n], towers[n], index_sets[n], cap)
                    break
                except NeedMoreBlocks:
                    pass
            k += 1
            j = add_tower_block(n)
            if j is None:
                raise NeedMoreBlocks(
                    f"tower for n={n} has no fresh block left in the window; enlarge the radius"
                )
            steps.append(Step(k, n, tower_block=j))
        for p, col in part.items():
            colours[p] = col
            prov[p] = "tower_block"

    for p in range(t.size):
        if p not in colours:
            colours[p] = 0
            prov[p] = "filler"
    colouring = Colouring(
        t.size,
        2,
        tuple(colours[p] for p in range(t.size)),
        tuple(prov[p] for p in range(t.size)),
    )
    plan = InterleavePlan(steps, towers, index_sets, frozenset(used))
    return colouring, plan


def _colour_tower(t, r: StabilizerRestriction, tower: BlockTower, idx, cap) -> dict[int, int]:
    blocks = [tower.block(i) for i in sorted(idx)]
    if r.elements is None:
        if not tree_block_code_count(t, blocks):
            raise NeedMoreBlocks(
                "the chosen spheres cannot separate sibling subtrees with two colours"
            )
        raise CapExceeded(cap, f"explicit colouring of G_{r.n}")
    c = blockwise_colouring(r.group(cap), blocks)
    return {p: col for p, col in enumerate(c.colours) if col is not None}


# -- verification ---------------------------------------------------------


@dataclass
class TruncationReport:
    asymmetric: bool
    violator: Permutation | None = None
    failed_target: frozenset[int] | None = None
    elements_checked: int = 0
    coset_witnesses: dict[frozenset[int], int] = field(default_factory=dict)
    structural: bool = False
    detail: str = ""


def verify_truncation(
    t: BallTruncation,
    c: Colouring | Sequence[int],
    x0=None,
    coset_radius: int = DEFAULT_COSET_RADIUS,
    cap: int = DEFAULT_CAP,
) -> TruncationReport:
    """Check a total window colouring against every ``G_n`` and every coset target.

    Part (a) needs a colour-breaking witness for each non-identity element
    of each ``G_n`` (or the structural tree test).  Part (b) needs, for every
    coset target, a suborbit ``S_i`` whose colour multiset differs from that
    of ``g S_i``; since every element of the coset maps ``S_i`` onto
    ``g S_i``, no element of the coset preserves the colouring.
    """
    colours = list(c.colours if isinstance(c, Colouring) else c)
    if len(colours) != t.size:
        raise InputError(f"colouring has {len(colours)} entries, window has {t.size}")
    for p, col in enumerate(colours):
        if col is None:
            raise UncolouredPoint(p)
    s = suborbits(t, x0, cap)
    classes = stabilizer_classes(t, s, cap)
    report = TruncationReport(True)
    for r in classes:
        if r.elements is None:
            report.structural = True
            ok, witness = tree_structural_check(t, colours)
            if not ok:
                report.asymmetric = False
                report.detail = f"sibling subtrees below vertex {witness[0]} are indistinguishable"
                return report
            continue
        elems = r.nonidentity()
        rep = is_asymmetric(colours, elems)
        report.elements_checked += len(elems)
        if not rep.asymmetric:
            report.asymmetric = False
            report.violator = rep.violator
            report.detail = f"element {rep.violator} of G_{r.n} preserves the colouring"
            return report
    for y, rep in coset_targets(t, s, classes, coset_radius):
        for i in range(1, len(s) + 1):
            img = coset_suborbit_image(rep, s, i)
            if max(img) >= t.size:
                continue
            si = s.S(i)
            if sorted(colours[p] for p in si) != sorted(colours[p] for p in img):
                report.coset_witnesses[y] = i
                break
        else:
            report.asymmetric = False
            report.failed_target = y
            report.detail = f"coset of target {sorted(y)} has no colour-breaking suborbit"
            return report
    return report


def breaks_partial_map(colours: Sequence[int], g: Sequence[int]) -> bool:
    """Some window vertex whose image is also in the window changes colour under ``g``."""
    n = len(colours)
    return any(y < n and colours[x] != colours[y] for x, y in enumerate(g))


# -- end-to-end -----------------------------------------------------------


@dataclass
class WindowRun:
    truncation: BallTruncation
    suborbits: SuborbitDecomposition
    restrictions: list[StabilizerRestriction]
    towers: dict[int, BlockTower]
    cosets: list
    colouring: Colouring
    plan: InterleavePlan
    coset_radius: int


def colour_window(
    family: str,
    radius: int,
    margin: int = DEFAULT_MARGIN,
    x0_names: Sequence | None = None,
    coset_radius: int = DEFAULT_COSET_RADIUS,
    cap: int = DEFAULT_CAP,
) -> WindowRun:
    """Run the whole construction on the window of ``family`` with the given radius."""
    t = ball(parse_family(family), radius, margin)
    x0 = None if x0_names is None else [t.index_of(nm) for nm in x0_names]
    s = suborbits(t, x0, cap)
    if not len(s):
        raise RadiusExhausted("the window holds no suborbit outside X0")
    classes = stabilizer_classes(t, s, cap)
    towers = {r.n: build_block_tower(r, s) for r in classes}
    cosets = coset_targets(t, s, classes, coset_radius)
    colouring, plan = interleave_construct(t, s, towers, cosets, {r.n: r for r in classes}, cap)
    return WindowRun(t, s, classes, towers, cosets, colouring, plan, coset_radius)


def run_to_json(run: WindowRun) -> dict:
    t = run.truncation

    def names(idx):
        return t.names(sorted(idx))

    steps = []
    for st in run.plan.steps:
        steps.append(
            {
                "k": st.k,
                "n": st.n,
                "target": None if st.target is None else names(st.target),
                "suborbit": st.suborbit,
                "z": names(st.z),
                "tower_block": st.tower_block,
            }
        )
    return {
        "family": t.graph.spec,
        "radius": t.radius,
        "margin": t.margin,
        "coset_radius": run.coset_radius,
        "x0": names(run.suborbits.x0),
        "vertex_names": t.names(),
        "colours": list(run.colouring.colours),
        "provenance": list(run.colouring.provenance),
        "plan": {
            "steps": steps,
            "I": {str(n): sorted(v) for n, v in sorted(run.plan.index_sets.items())},
            "towers": {
                str(n): {"breakpoints": tw.breakpoints} for n, tw in sorted(run.towers.items())
            },
        },
    }


def load_window_colouring(data: dict, t: BallTruncation) -> list[int]:
    """Colours re-indexed to ``t`` through the stored canonical vertex names."""
    names = data["vertex_names"]
    cols = data["colours"]
    if len(names) != len(cols):
        raise InputError("vertex_names and colours differ in length")
    out: list[int | None] = [None] * t.size
    for nm, col in zip(names, cols):
        key = t.graph.from_name(nm)
        idx = t.index.get(key)
        if idx is None or idx >= t.size:
            raise OutOfWindow(f"vertex {nm!r} is outside the window")
        out[idx] = col
    for p, col in enumerate(out):
        if col is None:
            raise UncolouredPoint(p)
    return out
