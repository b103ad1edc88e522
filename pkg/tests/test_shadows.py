import itertools
import random
from math import factorial

import pytest
from hypothesis import given, strategies as st

from helpers import FIG2, brute_force_store, connect_sum_store, knot_shadows, relabel
from knotshadows.isomorphism import Pdstor, canonical_key
from knotshadows.pdcode import components, faces, genus, validate
from knotshadows.shadows import (
    BadEdgeReference,
    CostGuardExceeded,
    brute_force_shadows,
    build_composite_shadows,
    connect_sum,
    connect_sum_stores,
    filter_knot_shadows,
    hopf,
    is_prime,
    partially_sorted_partitions,
    prime_decompose,
    rooted_planar_maps,
    summand_count,
    twist,
)

SMALL = [c for n in range(1, 5) for c in connect_sum_store(n)]


def brute_force_primes(max_n):
    return {k: [c for c in brute_force_store(k) if is_prime(c)] for k in range(1, max_n + 1)}


def test_twist_sum():
    t = twist()
    s = connect_sum(t, 1, t, 1)
    assert len(faces(s)) == 3 + 3 - 2
    assert genus(s) == 0
    assert len(components(s)) == 1
    assert not is_prime(s)


def test_bad_edge_reference():
    with pytest.raises(BadEdgeReference):
        connect_sum(twist(), 3, twist(), 1)
    with pytest.raises(BadEdgeReference):
        connect_sum(twist(), 1, twist(), 0)


@given(st.sampled_from(SMALL), st.sampled_from(SMALL), st.data())
def test_connect_sum_counts(a, b, data):
    e = data.draw(st.integers(1, a.num_edges))
    f = data.draw(st.integers(1, b.num_edges))
    s = connect_sum(a, e, b, f)
    assert s.n == a.n + b.n
    assert s.num_edges == a.num_edges + b.num_edges
    assert len(faces(s)) == len(faces(a)) + len(faces(b)) - 2
    assert genus(s) == 0
    assert len(components(s)) == len(components(a)) + len(components(b)) - 1


@given(st.sampled_from(SMALL), st.sampled_from(SMALL), st.data())
def test_decomposition_is_additive(a, b, data):
    e = data.draw(st.integers(1, a.num_edges))
    f = data.draw(st.integers(1, b.num_edges))
    s = connect_sum(a, e, b, f)
    keys = sorted(canonical_key(p) for p in prime_decompose(s))
    expected = sorted(canonical_key(p) for p in prime_decompose(a) + prime_decompose(b))
    assert keys == expected
    assert summand_count(s) == summand_count(a) + summand_count(b)


def test_trefoil_with_twist_gives_four_crossing_knot_shadows():
    trefoil = validate(FIG2)
    sums = connect_sum_stores([trefoil], [twist()])
    four = Pdstor(knot_shadows(4))
    assert len(sums) > 0
    assert all(c in four for c in sums)


def test_is_prime_examples():
    assert is_prime(validate(FIG2))
    assert is_prime(twist()) and is_prime(hopf())


@pytest.mark.parametrize("n, count", [(3, 1), (4, 2), (5, 3), (6, 9)])
def test_prime_counts_from_brute_force(n, count):
    assert sum(is_prime(c) for c in brute_force_store(n)) == count


def test_prime_decompose_examples():
    trefoil = validate(FIG2)
    assert [canonical_key(p) for p in prime_decompose(trefoil)] == [canonical_key(trefoil)]
    chain = twist()
    for _ in range(4):
        chain = connect_sum(chain, 1, twist(), 1)
    parts = prime_decompose(chain)
    assert len(parts) == 5
    assert all(canonical_key(p) == canonical_key(twist()) for p in parts)


def test_summand_count_matches_decomposition():
    for n in range(1, 7):
        for c in connect_sum_store(n):
            assert summand_count(c) == len(prime_decompose(c))


def _recompose(factors, cache={}):
    """Classes of all left-folded connect sums of ``factors``, largest first."""
    by_key = {canonical_key(f): f for f in factors}
    keys = tuple(sorted(canonical_key(f) for f in factors))
    if keys in cache:
        return cache[keys]
    out = set()
    for order in set(itertools.permutations(keys)):
        if by_key[order[0]].n != max(f.n for f in factors):
            continue
        store = Pdstor([by_key[order[0]]])
        for k in order[1:]:
            store = connect_sum_stores(store, [by_key[k]])
        out |= store.keys()
    cache[keys] = out
    return out


def test_decompose_then_recompose():
    for n in range(1, 7):
        for c in connect_sum_store(n):
            assert canonical_key(c) in _recompose(prime_decompose(c))


@given(st.sampled_from(SMALL), st.integers(0, 2**32))
def test_decomposition_is_labeling_independent(code, seed):
    other = relabel(code, random.Random(seed))
    assert [canonical_key(p) for p in prime_decompose(other)] == [
        canonical_key(p) for p in prime_decompose(code)
    ]


def test_no_knot_shadow_has_one_summand_fewer_than_crossings():
    # there is no prime two-crossing knot shadow; the Hopf shadow is a link
    for n in range(2, 8):
        assert all(summand_count(c) != n - 1 for c in knot_shadows(n))
    assert any(summand_count(c) == 4 for c in connect_sum_store(5))


def test_partially_sorted_partitions():
    assert partially_sorted_partitions(4) == [
        (4,), (3, 1), (2, 2), (2, 1, 1), (1, 1, 1, 1)
    ]
    parts = partially_sorted_partitions(6)
    assert all(p[0] == max(p) and sum(p) == 6 for p in parts)
    assert len(set(parts)) == len(parts)


@pytest.mark.parametrize("n, links, knots", [(3, 7, 6), (5, 124, 76), (6, 733, 376)])
def test_composite_builder_with_brute_force_primes(n, links, knots):
    store = build_composite_shadows(brute_force_primes(n), n)
    assert len(store) == links
    assert len(filter_knot_shadows(store)) == knots


@pytest.mark.parametrize("n", range(1, 6))
def test_composite_builder_equals_brute_force(n):
    assert connect_sum_store(n).keys() == brute_force_store(n).keys()


def test_brute_force_examples():
    assert len(brute_force_shadows(1)) == 1
    assert len(filter_knot_shadows(brute_force_store(3))) == 6
    assert len(brute_force_store(4)) == 30
    with pytest.raises(CostGuardExceeded):
        brute_force_shadows(7)


@pytest.mark.parametrize("n", range(1, 6))
def test_rooted_map_counts(n):
    # rooted 4-regular planar maps: 2 * 3^n * (2n)! / (n! (n+2)!)
    expected = 2 * 3**n * factorial(2 * n) // (factorial(n) * factorial(n + 2))
    assert sum(1 for _ in rooted_planar_maps(n)) == expected


def test_connect_sum_is_not_associative():
    """Some (A # B) # C cannot be rebuilt as A # (B # C) for any edge choice."""
    pool = [twist(), hopf(), validate(FIG2)]
    found = False
    for a, b, c in itertools.product(pool, repeat=3):
        left = connect_sum_stores(connect_sum_stores([a], [b]), [c]).keys()
        right = connect_sum_stores([a], connect_sum_stores([b], [c])).keys()
        if left - right:
            found = True
            break
    assert found
