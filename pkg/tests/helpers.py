"""Shared test utilities: random relabelings and cached pipeline outputs."""
import functools
import random

from knotshadows.census import census
from knotshadows.expansion import expansion_enumerate
from knotshadows.pdcode import components, validate
from knotshadows.pipelines import enumerate_shadows
from knotshadows.shadows import brute_force_shadows, filter_knot_shadows, is_prime

L0 = ((4, -2, -5, 1), (2, -6, -3, 5), (6, -4, -1, 3))
FIG2 = ((1, -5, -2, 4), (2, 5, -3, -6), (-1, -4, 6, 3))


def relabel(code, rng: random.Random, mirror: bool | None = None):
    """A random pd-code of the same shadow.

    Reverses a random set of components, permutes edge labels, rotates every
    quadruple, shuffles the quadruples and optionally reflects the sphere.
    """
    flip = set()
    for c in components(code):
        if rng.random() < 0.5:
            flip.update(c.edges)
    perm = list(range(1, code.num_edges + 1))
    rng.shuffle(perm)
    if mirror is None:
        mirror = rng.random() < 0.5
    quads = []
    for q in code.quads:
        q = [(-x if abs(x) in flip else x) for x in q]
        q = [(1 if x > 0 else -1) * perm[abs(x) - 1] for x in q]
        if mirror:
            q = q[::-1]
        k = rng.randrange(4)
        quads.append(tuple(q[k:] + q[:k]))
    rng.shuffle(quads)
    return validate(quads)


@functools.lru_cache(maxsize=None)
def connect_sum_store(n):
    return enumerate_shadows(n, "connect-sum")


@functools.lru_cache(maxsize=None)
def brute_force_store(n):
    return brute_force_shadows(n)


@functools.lru_cache(maxsize=None)
def expansion_store(n):
    return expansion_enumerate(n)


@functools.lru_cache(maxsize=None)
def knot_shadows(n):
    return filter_knot_shadows(connect_sum_store(n)).sorted_codes()


@functools.lru_cache(maxsize=None)
def census_record(n):
    store = connect_sum_store(n)
    return census(
        n, knot_shadows(n), link_shadows=len(store), prime_shadows=sum(is_prime(c) for c in store)
    )


# lines printed by the acceptance suite at the end of the run
ACCEPTANCE_LINES: list[str] = []


def report(criterion: str, checks) -> bool:
    """Record one PASS/FAIL line for a criterion; ``checks`` holds
    ``(label, expected, computed)`` triples compared with ``==``."""
    bad = [(l, e, c) for l, e, c in checks if e != c]
    if bad:
        detail = "; ".join(f"{l}: expected {e}, computed {c}" for l, e, c in bad[:5])
        line = f"FAIL {criterion} ({len(bad)}/{len(checks)} checks off) {detail}"
    else:
        line = f"PASS {criterion} ({len(checks)} checks)"
    ACCEPTANCE_LINES.append(line)
    print(line)
    return not bad
