import random
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from helpers import FIG2, L0, brute_force_store, connect_sum_store, knot_shadows, relabel
from knotshadows.isomorphism import (
    AddResult,
    Pdstor,
    PdstorFormatError,
    apply_isomorphism,
    automorphism_count,
    build_isomorphisms,
    canonical_form,
    canonical_key,
    equal_up_to_rotation,
    map_automorphisms,
    map_isomorphisms,
    pdstor_add,
    pdstor_merge,
    shadow_hash,
)
from knotshadows.pdcode import validate
from knotshadows.shadows import filter_knot_shadows, twist

SMALL = [c for n in range(1, 6) for c in connect_sum_store(n)]


def test_hash_of_twist():
    h = shadow_hash(twist())
    assert tuple(h) == (1, 2, 3, 1, (1, 1, 2), (2,))


def test_hash_of_figure_code():
    h = shadow_hash(validate(FIG2))
    assert (h.vertices, h.edges, h.faces, h.components) == (3, 6, 5, 1)
    assert h.face_degrees == (2, 2, 2, 3, 3)
    assert sum(h.face_degrees) == 12
    assert h.component_lengths == (6,)


def test_identity_is_an_isomorphism():
    a = validate(L0)
    isos = build_isomorphisms(a, a)
    assert any(all(iso.signed(x) == x for x in range(1, 7)) and iso.orientation == 1 for iso in isos)


def test_relabeled_code_is_isomorphic():
    a = validate(L0)
    b = relabel(a, random.Random(3))
    assert shadow_hash(a) == shadow_hash(b)
    isos = build_isomorphisms(a, b)
    assert isos
    assert all(equal_up_to_rotation(apply_isomorphism(a, iso), b) for iso in isos)


def test_non_isomorphic_codes():
    a, b = [c for c in connect_sum_store(4) if shadow_hash(c).components == 1][:2]
    assert build_isomorphisms(a, b) == []
    assert map_isomorphisms(a, b) == []


def test_automorphisms_of_three_crossing_knot_shadows():
    shadows = knot_shadows(3)
    assert len(shadows) == 6
    assert sum(automorphism_count(s) for s in shadows) == 30


@pytest.mark.parametrize("n, mean", [(4, Fraction(64, 19)), (6, Fraction(159, 94))])
def test_mean_automorphisms(n, mean):
    shadows = knot_shadows(n)
    assert Fraction(sum(len(map_automorphisms(s)) for s in shadows), len(shadows)) == mean


def test_both_isomorphism_routes_count_automorphisms_alike():
    for n in range(1, 6):
        for c in connect_sum_store(n):
            assert automorphism_count(c) == len(map_automorphisms(c))


@given(st.sampled_from(SMALL), st.integers(0, 2**32))
def test_isomorphisms_are_sound(code, seed):
    other = relabel(code, random.Random(seed))
    isos = build_isomorphisms(code, other)
    assert isos
    for iso in isos:
        assert iso.orientation in (1, -1)
        assert equal_up_to_rotation(apply_isomorphism(code, iso), other)
    assert len(isos) == automorphism_count(other)


@given(st.sampled_from(SMALL), st.integers(0, 2**32))
def test_canonical_key_is_invariant(code, seed):
    other = relabel(code, random.Random(seed))
    assert canonical_key(other) == canonical_key(code)
    assert canonical_form(other) == canonical_form(code)
    # dart maps carry face structure
    for iso in map_isomorphisms(code, other):
        alpha, beta = code.darts, other.darts
        assert all(iso.darts[alpha[d]] == beta[iso.darts[d]] for d in range(len(alpha)))


@given(st.sampled_from(SMALL), st.sampled_from(SMALL))
def test_routes_agree_on_isomorphism(a, b):
    explicit = bool(build_isomorphisms(a, b, limit=1))
    assert explicit == (canonical_key(a) == canonical_key(b))


def test_pdstor_add_is_idempotent():
    store = Pdstor()
    code = validate(L0)
    assert pdstor_add(store, code) is AddResult.ADDED
    assert pdstor_add(store, code) is AddResult.ALREADY_PRESENT
    assert len(store) == 1


@pytest.mark.parametrize("strategy", ["canonical", "isomorphism"])
def test_pdstor_absorbs_relabelings(strategy):
    rng = random.Random(11)
    base = knot_shadows(4)[5]
    store = Pdstor(strategy=strategy)
    for _ in range(32):
        store.add(relabel(base, rng))
    assert len(store) == 1
    assert base in store


def test_brute_force_five_crossing_knot_shadows():
    store = Pdstor(strategy="isomorphism")
    for c in brute_force_store(5):
        if shadow_hash(c).components == 1:
            store.add(relabel(c, random.Random(len(store))))
    assert len(store) == 76


def test_pdstor_merge_algebra():
    shadows = list(connect_sum_store(5))
    rng = random.Random(5)
    a = Pdstor(rng.sample(shadows, 60))
    b = Pdstor(rng.sample(shadows, 60))
    c = Pdstor(rng.sample(shadows, 60))
    empty = Pdstor()
    assert pdstor_merge(a, empty).keys() == a.keys()
    assert pdstor_merge(a, a).keys() == a.keys()
    assert pdstor_merge(a, b).keys() == pdstor_merge(b, a).keys() == a.keys() | b.keys()
    assert pdstor_merge(pdstor_merge(a, b), c).keys() == pdstor_merge(a, pdstor_merge(b, c)).keys()


def test_merge_of_chunk_stores():
    shadows = knot_shadows(6)
    rng = random.Random(2)
    chunks = [Pdstor(relabel(c, rng) for c in shadows[i::5]) for i in range(5)]
    merged = Pdstor()
    for ch in chunks:
        merged = pdstor_merge(merged, ch)
    assert len(merged) == 376


def test_pdstor_text_round_trip(tmp_path):
    store = connect_sum_store(4)
    path = tmp_path / "s.pdstor"
    store.write(path)
    text = path.read_text()
    assert text.splitlines()[0] == f"pdstor {len(store)} 4"
    again = Pdstor.read(path)
    assert again.keys() == store.keys()
    assert again.to_text() == text
    iso = Pdstor.read(path, strategy="isomorphism")
    assert len(iso) == len(store)


@pytest.mark.parametrize("text", ["", "pdstor x 3\n", "pdstor 2 1\n1: (1,-1,-2,2)\n"])
def test_pdstor_format_errors(text):
    with pytest.raises(PdstorFormatError):
        Pdstor.from_text(text)


def test_knot_filter_keeps_one_component_classes():
    assert len(filter_knot_shadows(connect_sum_store(4))) == 19
    hopf_only = [c for c in connect_sum_store(2) if shadow_hash(c).components == 2]
    assert len(filter_knot_shadows(hopf_only)) == 0
