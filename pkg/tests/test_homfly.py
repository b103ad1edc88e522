import random

import pytest
from hypothesis import given, strategies as st

from oracles import skein_homfly
from knotshadows.diagrams import (
    Diagram,
    diagram_crossings,
    diagram_from_pd,
    diagram_homfly,
    mirror_diagram,
    read_reference_table,
    reverse_diagram,
)
from knotshadows.homfly import HomflyPoly, homfly, parse_homfly, pd_to_crossings
from knotshadows.shadows import hopf

REFS = read_reference_table()
SMALL = [r for r in REFS if r.crossing_number <= 7]


def test_unknot_is_one():
    assert homfly([]) == HomflyPoly.one()
    assert homfly([], free_loops=2) == HomflyPoly.delta()


def test_kinked_circle_is_unknot():
    assert homfly([(1, 2, 2, 1, 1)]) == HomflyPoly.one()
    assert homfly([(1, 2, 2, 1, -1)]) == HomflyPoly.one()


@pytest.mark.parametrize("ref", REFS, ids=lambda r: r.name)
def test_reference_polynomials(ref):
    assert homfly(pd_to_crossings(ref.pd)) == ref.homfly


@pytest.mark.parametrize("ref", SMALL, ids=lambda r: r.name)
def test_skein_oracle_agrees(ref):
    xs = pd_to_crossings(ref.pd)
    assert skein_homfly(xs, random.Random(ref.name)) == homfly(xs, memo={})


def test_trefoil_is_chiral_and_figure_eight_is_not():
    by = {r.name: r for r in REFS}
    t = diagram_from_pd(by["3_1"].pd)
    assert diagram_homfly(mirror_diagram(t)) != diagram_homfly(t)
    f = diagram_from_pd(by["4_1"].pd)
    p = diagram_homfly(f)
    assert p.mirror() == p
    # a <-> 1/a symmetry of the amphichiral knot
    assert all(p.terms.get((-i, j)) == c for (i, j), c in p.terms.items())


@pytest.mark.parametrize("ref", SMALL, ids=lambda r: r.name)
def test_mirror_substitution(ref):
    d = diagram_from_pd(ref.pd)
    assert diagram_homfly(mirror_diagram(d)) == diagram_homfly(d).mirror()
    assert diagram_homfly(reverse_diagram(d)) == diagram_homfly(d)


def test_hopf_link_diagrams():
    for states in [(0, 0), (1, 1), (0, 1)]:
        for orient in [(0, 0), (0, 1)]:
            d = Diagram(hopf(), states, orient)
            xs = diagram_crossings(d)
            assert diagram_homfly(d) == skein_homfly(xs, random.Random(1))
    polys = [diagram_homfly(Diagram(hopf(), st, (0, 0))) for st in [(0, 0), (0, 1), (1, 0), (1, 1)]]
    # two of the four states pull apart into the unlink
    assert polys.count(HomflyPoly.delta()) == 2


def _shuffled(xs, rng):
    labels = sorted({x for c in xs for x in c[:4]})
    new = dict(zip(labels, rng.sample(range(100, 100 + len(labels)), len(labels))))
    out = [(new[a], new[b], new[c], new[d], s) for a, b, c, d, s in xs]
    rng.shuffle(out)
    return out


@given(st.sampled_from(SMALL), st.integers(0, 2**32), st.booleans())
def test_branching_order_independence(ref, seed, mirrored):
    rng = random.Random(seed)
    d = diagram_from_pd(ref.pd)
    if mirrored:
        d = mirror_diagram(d)
    xs = diagram_crossings(d)
    expected = homfly(xs, memo={})
    assert homfly(_shuffled(xs, rng), memo={}) == expected
    if ref.crossing_number <= 6:
        assert skein_homfly(xs, rng) == expected


@given(st.dictionaries(st.tuples(st.integers(-9, 9), st.integers(-9, 9)), st.integers(-50, 50)))
def test_parse_round_trip(terms):
    p = HomflyPoly(terms)
    assert parse_homfly(str(p)) == p


def test_parse_rejects_garbage():
    with pytest.raises(ValueError):
        parse_homfly("+1*a^2*z^0 junk")


def test_mirror_is_an_involution():
    for r in REFS:
        assert r.homfly.mirror().mirror() == r.homfly
