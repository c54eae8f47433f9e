from __future__ import annotations

import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from asymcol.errors import CapExceeded, DegreeMismatch, MalformedHeader, NotAPermutation, NotFaithful, NotInvariant
from asymcol.perm import (
    Permutation,
    PermGroup,
    compose,
    cyclic_group,
    dihedral_group,
    enumerate_elements,
    format_generators,
    motion,
    orbits,
    parse_generators,
    pointwise_stabilizer,
    restrict_action,
    setwise_stabilizer,
    small_generating_set,
    support,
    symmetric_group,
)

import oracles


def P(*images):
    return Permutation(tuple(images))


@st.composite
def perms(draw, degree):
    return Permutation(tuple(draw(st.permutations(range(degree)))))


@st.composite
def small_groups(draw, max_degree=6, max_gens=3):
    n = draw(st.integers(0, max_degree))
    gens = draw(st.lists(perms(n), max_size=max_gens))
    return PermGroup(n, gens)


def test_permutation_rejects_non_bijection():
    with pytest.raises(NotAPermutation):
        P(0, 0, 1)


def test_compose_applies_right_first():
    a = P(1, 0, 2)
    b = P(2, 1, 0)
    assert compose(a, b).images == (2, 0, 1)


def test_compose_degree_mismatch():
    with pytest.raises(DegreeMismatch):
        compose(P(0, 1), P(0, 1, 2))


@given(perms(7))
def test_identity_and_inverse_laws(g):
    e = Permutation.identity(7)
    assert compose(e, g) == g == compose(g, e)
    assert compose(g, g.inverse()).is_identity()


@given(perms(6), perms(6), perms(6))
def test_compose_is_associative(a, b, c):
    assert compose(a, compose(b, c)) == compose(compose(a, b), c)


def test_cycles_round_trip():
    p = Permutation.from_cycles(6, (0, 3, 1), (4, 5))
    assert Permutation.from_cycles(6, *p.cycles()) == p
    assert str(p) == "(0 3 1)(4 5)"


def test_support_examples():
    assert support(Permutation.identity(4)) == frozenset()
    assert support(Permutation.from_cycles(4, (0, 1))) == {0, 1}
    assert support(Permutation.from_cycles(4, (0, 1), (2, 3))) == {0, 1, 2, 3}


def test_enumeration_examples():
    assert len(enumerate_elements(PermGroup(2, [P(1, 0)]))) == 2
    assert len(enumerate_elements(cyclic_group(4))) == 4
    with pytest.raises(CapExceeded):
        enumerate_elements(symmetric_group(5, cap=100))


def test_enumeration_is_sorted_and_deterministic():
    g = dihedral_group(5)
    els = enumerate_elements(g)
    assert list(els) == sorted(els)
    assert els == enumerate_elements(dihedral_group(5))


@settings(max_examples=60)
@given(small_groups())
def test_enumeration_matches_naive_closure_and_is_a_group(g):
    els = set(g.elements)
    assert {e.images for e in els} == oracles.closure(g.degree, [s.images for s in g.generators])
    assert Permutation.identity(g.degree) in els
    for a in els:
        assert a.inverse() in els
    for a, b in itertools.islice(itertools.product(els, els), 400):
        assert compose(a, b) in els


def test_orbit_examples():
    assert orbits(PermGroup(3)) == [{0}, {1}, {2}]
    assert orbits(PermGroup(3, [P(1, 0, 2)])) == [{0, 1}, {2}]
    assert orbits(dihedral_group(4)) == [{0, 1, 2, 3}]


@settings(max_examples=60)
@given(small_groups())
def test_orbits_are_element_images(g):
    for block in orbits(g):
        x = min(block)
        assert block == {e(x) for e in g.elements}


def test_stabilizer_examples():
    g = PermGroup(4, [P(1, 0, 2, 3), P(0, 1, 3, 2)])
    assert pointwise_stabilizer(g, set()).elements == g.elements
    assert set(pointwise_stabilizer(g, {0}).elements) == {
        Permutation.identity(4),
        Permutation.from_cycles(4, (2, 3)),
    }
    s3 = symmetric_group(3)
    assert pointwise_stabilizer(s3, {0, 1}).elements == (Permutation.identity(3),)
    assert setwise_stabilizer(s3, range(3)).elements == s3.elements
    assert set(setwise_stabilizer(s3, {0, 1}).elements) == {
        Permutation.identity(3),
        Permutation.from_cycles(3, (0, 1)),
    }
    c4 = cyclic_group(4)
    assert set(setwise_stabilizer(c4, {0, 2}).elements) == {
        Permutation.identity(4),
        Permutation.from_cycles(4, (0, 2), (1, 3)),
    }


@settings(max_examples=60)
@given(small_groups(), st.data())
def test_pointwise_inside_setwise(g, data):
    y = data.draw(st.sets(st.integers(0, max(g.degree - 1, 0)), max_size=g.degree)) if g.degree else set()
    assert set(pointwise_stabilizer(g, y).elements) <= set(setwise_stabilizer(g, y).elements)


def test_motion_examples():
    for n in range(2, 6):
        assert motion(symmetric_group(n)) == 2
    assert motion(cyclic_group(6)) == 6
    assert motion(PermGroup(3)) is None
    assert motion(PermGroup(0)) is None
    assert motion(PermGroup(1)) is None


@settings(max_examples=80)
@given(small_groups(max_degree=7))
def test_motion_matches_double_loop(g):
    elems = oracles.closure(g.degree, [s.images for s in g.generators])
    assert motion(g) == oracles.motion_double_loop(elems)


def test_restrict_action_examples():
    g = dihedral_group(4)
    assert restrict_action(g, range(4)).elements == g.elements
    with pytest.raises(NotFaithful):
        restrict_action(PermGroup(4, [P(1, 0, 2, 3), P(0, 1, 3, 2)]), {0, 1})
    r = restrict_action(PermGroup(4, [P(1, 0, 3, 2)]), {0, 1})
    assert r.degree == 2 and r.order() == 2
    with pytest.raises(NotInvariant):
        restrict_action(cyclic_group(4), {0, 1})


@settings(max_examples=80)
@given(small_groups(max_degree=5), st.data())
def test_restrict_action_gate(g, data):
    y = data.draw(st.sets(st.integers(0, max(g.degree - 1, 0)), max_size=g.degree)) if g.degree else set()
    invariant = all(e(p) in y for e in g.elements for p in y)
    faithful = all(e.is_identity() or any(e(p) != p for p in y) for e in g.elements)
    if not invariant:
        with pytest.raises(NotInvariant):
            restrict_action(g, y)
    elif not faithful:
        with pytest.raises(NotFaithful):
            restrict_action(g, y)
    else:
        r = restrict_action(g, y)
        assert r.order() == g.order()
        assert set(r.elements) == set(enumerate_elements(PermGroup(r.degree, r.generators)))


def test_generator_file_round_trip():
    g = dihedral_group(5)
    h = parse_generators(format_generators(g))
    assert h.elements == g.elements


def test_generator_file_errors():
    with pytest.raises(MalformedHeader):
        parse_generators("")
    with pytest.raises(MalformedHeader):
        parse_generators("deg 3\n0 1 2\n")
    with pytest.raises(DegreeMismatch):
        parse_generators("degree 3\n0 1\n")
    with pytest.raises(NotAPermutation):
        parse_generators("degree 3\n0 0 1\n")
    g = parse_generators("# six-cycle\ndegree 6\n\n1 2 3 4 5 0\n")
    assert g.order() == 6


@settings(max_examples=40)
@given(small_groups())
def test_small_generating_set_generates(g):
    gens = small_generating_set(g)
    assert enumerate_elements(PermGroup(g.degree, gens)) == g.elements
