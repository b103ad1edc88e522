"""Acceptance criteria, one PASS/FAIL line each (printed in the terminal summary).

Counts are exact.  Shadow counts come from two independent pipelines: connect
sums of the bundled prime shadows, and expansion of simple planar graphs from
the networkx atlas.  Expected values are the published census numbers, typed
in here rather than read from the package's reference asset.
"""
import random
from fractions import Fraction as F

import pytest

from helpers import (
    brute_force_store,
    census_record,
    connect_sum_store,
    expansion_store,
    knot_shadows,
    report,
)
from oracles import skein_homfly
from knotshadows.census import unknot_report
from knotshadows.chunked import JobSpec, run_chunked, write_census_files
from knotshadows.diagrams import (
    build_knot_table,
    burnside_count,
    diagram_crossings,
    diagram_homfly,
    enumerate_diagrams,
    orbit_representatives,
    reduce_monogons,
)
from knotshadows.census import analyze_shadow, stats_shadows
from knotshadows.isomorphism import Pdstor, canonical_key, map_automorphisms, pdstor_merge
from knotshadows.pdcode import faces
from knotshadows.shadows import (
    connect_sum,
    filter_knot_shadows,
    is_prime,
    prime_decompose,
    prime_shadows_brute_force,
    summand_count,
)

NS = range(3, 8)
KNOT_SHADOWS = {3: 6, 4: 19, 5: 76, 6: 376, 7: 2194}
LINK_SHADOWS = {3: 7, 4: 30, 5: 124, 6: 733, 7: 4586}
PRIMES = {3: 1, 4: 2, 5: 3, 6: 9, 7: 18}
DIAGRAMS = {3: 36, 4: 276, 5: 2936, 6: 35872, 7: 484088}
MEAN_AUTOS = {3: F(5), 4: F(64, 19), 5: F(44, 19), 6: F(159, 94), 7: F(1447, 1097)}
TYPES = {
    "0_1": {3: 34, 4: 265, 5: 2744, 6: 32456, 7: 422332},
    "3_1": {3: 1, 4: 5, 5: 85, 6: 1466, 7: 25432},
    "3_1^m": {3: 1, 4: 5, 5: 85, 6: 1466, 7: 25432},
    "4_1": {4: 1, 5: 18, 6: 412, 7: 8450},
    "5_2": {5: 1, 6: 24, 7: 730},
    "5_2^m": {5: 1, 6: 24, 7: 730},
    "3_1#3_1^m": {6: 2, 7: 112},
    "6_3": {6: 2, 7: 106},
    "6_2": {6: 1, 7: 58},
    "6_2^m": {6: 1, 7: 58},
    "3_1#3_1": {6: 2, 7: 58},
    "3_1^m#3_1^m": {6: 2, 7: 58},
    "6_1": {6: 1, 7: 34},
    "6_1^m": {6: 1, 7: 34},
    "3_1#4_1": {7: 8},
    "3_1^m#4_1": {7: 8},
    "7_6": {7: 3},
    "7_6^m": {7: 3},
    "7_7": {7: 2},
    "7_5": {7: 2},
    "7_2": {7: 1},
    "7_3": {7: 1},
    "7_4": {7: 1},
}
# the 7-crossing torus knot appears once per chirality
SEVEN_ONE = {"7_1": 1, "7_1^m": 1}
MONOGONS = {
    3: (F(12, 6), F(5, 6), F(6, 6), F(3, 6)),
    4: (F(48, 19), F(18, 19), F(18, 19), F(11, 19)),
    5: (F(213, 76), F(74, 76), F(88, 76), F(52, 76)),
    6: (F(1196, 376), F(371, 376), F(470, 376), F(275, 376)),
    7: (F(7714, 2194), F(2178, 2194), F(3037, 2194), F(1714, 2194)),
}
UNKNOT = {3: F(17, 18), 4: F(265, 276), 5: F(343, 367), 6: F(4057, 4484), 7: F(422332, 484088)}


def test_criterion_1_knot_shadows_both_pipelines():
    checks = []
    for n in NS:
        checks.append((f"connect-sum n={n}", KNOT_SHADOWS[n], len(filter_knot_shadows(connect_sum_store(n)))))
        checks.append((f"expansion n={n}", KNOT_SHADOWS[n], len(filter_knot_shadows(expansion_store(n)))))
    assert report("criterion 1: knot shadows n=3..7, both pipelines", checks)


def test_criterion_2_link_shadows():
    checks = []
    for n in NS:
        checks.append((f"connect-sum n={n}", LINK_SHADOWS[n], len(connect_sum_store(n))))
        checks.append((f"expansion n={n}", LINK_SHADOWS[n], len(expansion_store(n))))
        checks.append((f"same classes n={n}", True, connect_sum_store(n).keys() == expansion_store(n).keys()))
    assert report("criterion 2: link shadows n=3..7", checks)


def test_criterion_3_prime_shadows():
    # counted in the expansion output, which does not use the bundled primes
    checks = [(f"n={n}", PRIMES[n], sum(is_prime(c) for c in expansion_store(n))) for n in NS]
    checks += [(f"brute force n={n}", PRIMES[n], len(prime_shadows_brute_force(n))) for n in range(3, 6)]
    assert report("criterion 3: prime shadows n=3..7", checks)


def test_criterion_4_diagrams():
    checks = [(f"n={n}", DIAGRAMS[n], census_record(n).diagrams) for n in NS]
    assert report("criterion 4: knot diagrams n=3..7", checks)


def test_criterion_5_mean_automorphisms():
    checks = [(f"n={n}", MEAN_AUTOS[n], stats_shadows(census_record(n)).mean_automorphisms) for n in NS]
    assert report("criterion 5: mean automorphisms n=3..7", checks)


def test_criterion_6_knot_types():
    checks = []
    for name, cols in TYPES.items():
        for n in NS:
            checks.append((f"{name} n={n}", cols.get(n, 0), census_record(n).type_counts.get(name, 0)))
    counts7 = census_record(7).type_counts
    for name, want in SEVEN_ONE.items():
        checks.append((f"{name} n=7", want, counts7.get(name, 0)))
    checks += [
        (f"no ambiguity n={n}", [], [k for k in census_record(n).type_counts if k.startswith("{") or k == "Unclassified"])
        for n in NS
    ]
    assert report("criterion 6: knot-type census n<=7", checks)


def test_criterion_7_monogons_and_bigons():
    checks = []
    for n in NS:
        st = stats_shadows(census_record(n))
        got = (st.mean_monogons, st.monogon_fraction, st.mean_bigons, st.bigon_fraction)
        for label, e, c in zip(("mean monogons", "monogon fraction", "mean bigons", "bigon fraction"), MONOGONS[n], got):
            checks.append((f"{label} n={n}", e, c))
    assert report("criterion 7: monogon/bigon statistics n=3..7", checks)


def test_criterion_8_unknot_fractions():
    checks = [(f"n={n}", UNKNOT[n], unknot_report(census_record(n)).unknot_fraction) for n in NS]
    checks.append(("n=6 raw", F(32456, 35872), unknot_report(census_record(6)).unknot_fraction))
    assert report("criterion 8: unknot fractions n=3..7", checks)


# -- criterion 9: property suites -------------------------------------------


def test_criterion_9a_euler_formula():
    checks = []
    for n in range(1, 8):
        for name, store in (("connect-sum", connect_sum_store(n)), ("expansion", expansion_store(n))):
            bad = sum(1 for c in store if c.n - 2 * c.n + len(faces(c)) != 2)
            checks.append((f"{name} n={n} shadows off the sphere", 0, bad))
    assert report("criterion 9a: Euler formula on every generated shadow", checks)


def test_criterion_9b_pipeline_equality():
    checks = []
    for n in range(1, 7):
        cs, ex = connect_sum_store(n).keys(), expansion_store(n).keys()
        checks.append((f"connect-sum = expansion n={n}", True, cs == ex))
        if n <= 5:
            checks.append((f"connect-sum = brute-force n={n}", True, cs == brute_force_store(n).keys()))
    assert report("criterion 9b: pipeline equality", checks)


def test_criterion_9c_burnside():
    checks = []
    for n in range(1, 6):
        bad = 0
        for c in connect_sum_store(n):
            autos = map_automorphisms(c)
            bad += len(orbit_representatives(c, autos)) != burnside_count(c, autos)
        checks.append((f"n={n} shadows with orbit count != Burnside average", 0, bad))
    assert report("criterion 9c: Burnside consistency of diagram orbits", checks)


def test_criterion_9d_homfly_invariance():
    rng = random.Random(2024)
    checks = []
    for n in range(1, 5):
        bad_mono = bad_order = 0
        for c in knot_shadows(n):
            for d in enumerate_diagrams(c):
                p = diagram_homfly(d)
                bad_mono += diagram_homfly(reduce_monogons(d)) != p
                bad_order += skein_homfly(diagram_crossings(d), rng) != p
        checks.append((f"n={n} monogon reduction changes HOMFLY", 0, bad_mono))
        checks.append((f"n={n} random branch order changes HOMFLY", 0, bad_order))
    assert report("criterion 9d: HOMFLY invariance", checks)


def _shares(n, table):
    out = {}
    for c in knot_shadows(n):
        rec = analyze_shadow(c, table)
        out.setdefault(summand_count(c), set()).add(F(rec.unknot_states, 1 << n))
    return out


def test_criterion_9e_tree_like_and_3_almost():
    checks = []
    for n in range(1, 8):
        shares = _shares(n, build_knot_table(n))
        checks.append((f"tree-like n={n}", {F(1)}, shares[n]))
        if n >= 3:
            checks.append((f"3-almost tree-like n={n}", {F(3, 4)}, shares[n - 2]))
        if n <= 6:
            only = {s for s, v in shares.items() if F(1) in v}
            checks.append((f"only tree-like always unknot n={n}", {n}, only))
    assert report("criterion 9e: unknot share 1 (tree-like) and 3/4 (3-almost), n<=7", checks)


@pytest.mark.xfail(strict=True, reason="the figure-eight shadow unknots in 12 of 16 states (two give trefoils), so 4-almost tree-like shadows have share 3/4")
def test_criterion_9f_4_almost_seven_eighths():
    checks = []
    for n in range(4, 8):
        shares = _shares(n, build_knot_table(n))
        checks.append((f"4-almost tree-like n={n}", {F(7, 8)}, shares[n - 3]))
    assert report("criterion 9f: unknot share 7/8 (4-almost), n<=7 [known unattainable]", checks)


def test_criterion_9g_decomposition_additivity():
    rng = random.Random(7)
    pool = [c for n in range(1, 5) for c in knot_shadows(n)]
    checks = []
    bad = 0
    for _ in range(150):
        a, b = rng.choice(pool), rng.choice(pool)
        e, f = rng.randrange(1, 2 * a.n + 1), rng.randrange(1, 2 * b.n + 1)
        s = connect_sum(a, e, b, f)
        want = sorted(canonical_key(p) for p in prime_decompose(a) + prime_decompose(b))
        bad += sorted(canonical_key(p) for p in prime_decompose(s)) != want
    checks.append(("random connect sums with non-additive decomposition", 0, bad))
    assert report("criterion 9g: prime decomposition additive under connect sum", checks)


def test_criterion_9h_pdstor_algebra():
    codes = list(connect_sum_store(5))
    rng = random.Random(3)
    a = Pdstor(rng.sample(codes, 60))
    b = Pdstor(rng.sample(codes, 60))
    c = Pdstor(rng.sample(codes, 60))
    checks = [
        ("idempotent add", len(a), len(Pdstor(list(a) + list(a)))),
        ("a+a = a", a.keys(), pdstor_merge(a, a).keys()),
        ("commutative", pdstor_merge(a, b).keys(), pdstor_merge(b, a).keys()),
        ("associative", pdstor_merge(pdstor_merge(a, b), c).keys(), pdstor_merge(a, pdstor_merge(b, c)).keys()),
        ("text round trip", a.keys(), Pdstor.from_text(a.to_text()).keys()),
    ]
    assert report("criterion 9h: pdstor idempotence and merge algebra", checks)


def test_criterion_9i_chunked_equals_direct(tmp_path):
    path = tmp_path / "shadows_7.pdstor"
    connect_sum_store(7).write(path)
    eight = run_chunked(JobSpec(path, tmp_path / "w8", chunks=8, workers=4))
    one = run_chunked(JobSpec(path, tmp_path / "w1", chunks=1, workers=1))
    j8, c8 = write_census_files(eight, tmp_path / "eight")
    j1, c1 = write_census_files(one, tmp_path / "one")
    direct = census_record(7)
    checks = [
        ("8 vs 1 chunk JSON bytes", j1.read_bytes(), j8.read_bytes()),
        ("8 vs 1 chunk CSV bytes", c1.read_bytes(), c8.read_bytes()),
        ("chunked vs direct type counts", direct.type_counts, eight.type_counts),
        ("chunked vs direct diagrams", direct.diagrams, eight.diagrams),
    ]
    assert report("criterion 9i: chunked census = direct census (n=7)", checks)


# -- extended run (KNOTSHADOWS_EXTENDED=1) ------------------------------------


@pytest.mark.extended
def test_criterion_1_extended_n8():
    from knotshadows.census import census, treelike_stats

    store = connect_sum_store(8)
    knots = filter_knot_shadows(store)
    checks = [
        ("link shadows n=8", 33373, len(store)),
        ("knot shadows n=8", 14614, len(knots)),
        ("prime shadows n=8 (brute force)", 62, len(prime_shadows_brute_force(8))),
    ]
    rec = census(8, knots.sorted_codes())
    tl = treelike_stats(rec)
    checks += [
        ("knot diagrams n=8", 6967942, rec.diagrams),
        ("mean automorphisms n=8", F(8426, 7307), stats_shadows(rec).mean_automorphisms),
        ("tree-like diagram share n=8 (4 places)", "0.4205", f"{float(tl.treelike_diagram_fraction):.4f}"),
        ("no n-1 summands n=8", 0, tl.histogram.get(7, 0)),
    ]
    assert report("criterion 1 (extended): n=8 shadows, primes and diagrams", checks)


@pytest.mark.extended
@pytest.mark.xfail(strict=True, reason="42.05% is a share of diagrams; the shadow share is 6229/14614 = 42.62%")
def test_criterion_1_extended_treelike_shadow_share():
    from knotshadows.census import treelike_stats

    tl = treelike_stats(knot_shadows(8))
    want = round(0.4205 * 14614)
    checks = [("tree-like shadows n=8 (+-1)", True, abs(tl.treelike - want) <= 1)]
    assert report("criterion 1 (extended): tree-like shadow share 42.05% [known unattainable]", checks)
