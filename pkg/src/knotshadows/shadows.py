"""Shadow enumeration by connect sums of primes, plus a brute-force oracle.

A shadow is *prime* when no two faces share two or more edges.  Every
shadow is a connect sum of primes, so all ``n``-crossing shadows are built
from the prime shadows with at most ``n`` crossings
(:func:`build_composite_shadows`).

:func:`brute_force_shadows` is independent of all of that: it grows every
rooted planar 4-regular map edge by edge, pruning partial maps of positive
genus, and deduplicates the results.
"""
from __future__ import annotations

import itertools
from typing import Callable, Iterable, Iterator, Mapping, Sequence

from .isomorphism import Pdstor, canonical_key
from .pdcode import PdCode, PdCodeError, components, faces, from_darts

__all__ = [
    "BadEdgeReference",
    "CostGuardExceeded",
    "twist",
    "hopf",
    "connect_sum",
    "connect_sum_stores",
    "shared_edge_pairs",
    "is_prime",
    "prime_decompose",
    "summand_count",
    "partially_sorted_partitions",
    "build_composite_shadows",
    "rooted_planar_maps",
    "brute_force_shadows",
    "prime_shadows_brute_force",
    "filter_knot_shadows",
    "relabel_darts",
]


class BadEdgeReference(PdCodeError):
    pass


class CostGuardExceeded(RuntimeError):
    pass


def twist() -> PdCode:
    """The one-crossing shadow (a single kink)."""
    return from_darts((1, 0, 3, 2))


def hopf() -> PdCode:
    """The two-crossing shadow of the Hopf link."""
    return from_darts((6, 5, 4, 7, 2, 1, 0, 3))


# ---------------------------------------------------------------------------
# connect sum


def _edge_darts(code: PdCode, label: int) -> tuple[int, int]:
    """``(tail, head)`` darts of a signed edge, read in the direction of its sign."""
    if label == 0 or abs(label) > code.num_edges:
        raise BadEdgeReference(f"edge {label} does not exist in a {code.n}-crossing code")
    v, s = code.where(label)
    w, t = code.where(-label)
    return 4 * w + t, 4 * v + s


def connect_sum(a: PdCode, e: int, b: PdCode, f: int) -> PdCode:
    """Cut edge ``e`` of ``a`` and edge ``f`` of ``b`` and swap their heads.

    Labels are signed: ``-f`` uses edge ``f`` traversed backwards, which gives
    the other of the two ways of joining the cut edges.
    """
    ta, ha = _edge_darts(a, e)
    tb, hb = _edge_darts(b, f)
    off = 4 * a.n
    alpha = list(a.darts) + [x + off for x in b.darts]
    tb += off
    hb += off
    alpha[ta], alpha[hb] = hb, ta
    alpha[tb], alpha[ha] = ha, tb
    return from_darts(alpha)


def connect_sum_stores(
    left: Iterable[PdCode], right: Iterable[PdCode], store: Pdstor | None = None
) -> Pdstor:
    """All connect sums ``a # b`` over every pair of positive edge labels.

    Joining ``e`` to ``-f`` instead of ``f`` gives an isomorphic shadow (turn
    ``b`` half around the midpoint of ``f``), so positive labels suffice.
    """
    out = Pdstor() if store is None else store
    right = list(right)
    for a in left:
        for e in range(1, a.num_edges + 1):
            for b in right:
                for g in range(1, b.num_edges + 1):
                    out.add(connect_sum(a, e, b, g))
    return out


# ---------------------------------------------------------------------------
# primes and decomposition


def shared_edge_pairs(code: PdCode) -> list[tuple[int, int, list[int]]]:
    """Face pairs ``(i, j, shared edges)`` sharing at least two edges.

    Shared edges are listed in the order they occur along face ``i``.
    """
    fs = faces(code)
    out = []
    for i, j in itertools.combinations(range(len(fs)), 2):
        common = fs[i].edges & fs[j].edges
        if len(common) >= 2:
            order = []
            for x in fs[i].labels:
                if abs(x) in common and abs(x) not in order:
                    order.append(abs(x))
            out.append((i, j, order))
    return out


def is_prime(code: PdCode) -> bool:
    return not shared_edge_pairs(code)


def relabel_darts(alpha: Sequence[int], vertices: Sequence[int]) -> list[int]:
    """Restrict a dart involution to ``vertices`` (closed under alpha) and renumber."""
    new = {v: i for i, v in enumerate(vertices)}
    out = [0] * (4 * len(vertices))
    for v in vertices:
        for s in range(4):
            p = alpha[4 * v + s]
            out[4 * new[v] + s] = 4 * new[p >> 2] + (p & 3)
    return out


def _pieces(alpha: Sequence[int]) -> list[list[int]]:
    n = len(alpha) // 4
    seen = [False] * n
    out = []
    for v0 in range(n):
        if seen[v0]:
            continue
        seen[v0] = True
        stack = [v0]
        comp = []
        while stack:
            v = stack.pop()
            comp.append(v)
            for s in range(4):
                w = alpha[4 * v + s] >> 2
                if not seen[w]:
                    seen[w] = True
                    stack.append(w)
        out.append(sorted(comp))
    return out


def _split(code: PdCode, e1: int, e2: int) -> tuple[PdCode, PdCode]:
    t1, h1 = _edge_darts(code, e1)
    t2, h2 = _edge_darts(code, e2)
    for x1, y1, x2, y2 in ((t1, h1, t2, h2), (t1, h1, h2, t2)):
        alpha = list(code.darts)
        # reconnect x1-y2 and x2-y1, leaving the rest untouched
        alpha[x1], alpha[y2] = y2, x1
        alpha[x2], alpha[y1] = y1, x2
        parts = _pieces(alpha)
        if len(parts) == 2:
            return tuple(from_darts(relabel_darts(alpha, p)) for p in parts)
    raise PdCodeError(f"edges {e1} and {e2} do not separate the shadow")


def prime_decompose(code: PdCode) -> list[PdCode]:
    """Prime summands of a shadow, each in canonical form.

    Repeatedly picks the first face pair sharing several edges, cuts two of
    the shared edges that are consecutive along the first face, and reconnects
    the four loose ends so that the shadow falls into two pieces.
    """
    out = []
    stack = [code]
    while stack:
        c = stack.pop()
        pairs = shared_edge_pairs(c)
        if not pairs:
            out.append(from_darts(canonical_key(c)))
            continue
        _, _, shared = pairs[0]
        a, b = _split(c, shared[0], shared[1])
        stack.extend((a, b))
    out.sort(key=lambda p: (p.n, canonical_key(p)))
    return out


def summand_count(code: PdCode) -> int:
    """Number of prime summands, from face pairs alone (no cutting).

    Two faces sharing ``k`` edges are separated by ``k - 1`` independent cuts.
    """
    return 1 + sum(len(shared) - 1 for _, _, shared in shared_edge_pairs(code))


# ---------------------------------------------------------------------------
# composite shadows from primes


def partially_sorted_partitions(n: int) -> list[tuple[int, ...]]:
    """Compositions of ``n`` whose first part is at least every other part."""
    out = []

    def rec(prefix, rest, cap):
        if rest == 0:
            out.append(tuple(prefix))
            return
        for k in range(min(rest, cap), 0, -1):
            prefix.append(k)
            rec(prefix, rest - k, cap)
            prefix.pop()

    for k1 in range(n, 0, -1):
        rec([k1], n - k1, k1)
    return out


def build_composite_shadows(
    primes: Mapping[int, Iterable[PdCode]],
    n: int,
    progress: Callable[[tuple[int, ...], int], None] | None = None,
) -> Pdstor:
    """All ``n``-crossing shadows from prime shadows with at most ``n`` crossings.

    ``primes[k]`` holds the prime shadows with ``k`` crossings.  For every
    partially sorted partition ``(k1, ..., kl)`` the connect sums are folded
    from the left, reusing shared prefixes.  Partitions with the same sorted
    parts can yield the same shadows, so they are deduplicated together;
    different multisets of prime sizes never produce isomorphic shadows, so
    their results are concatenated without comparison.
    """
    prime_lists = {k: list(primes.get(k, ())) for k in range(1, n + 1)}
    memo: dict[tuple[int, ...], Pdstor] = {}

    def fold(parts: tuple[int, ...]) -> Pdstor:
        if parts in memo:
            return memo[parts]
        if len(parts) == 1:
            store = Pdstor(prime_lists[parts[0]])
        else:
            store = connect_sum_stores(fold(parts[:-1]), prime_lists[parts[-1]])
        memo[parts] = store
        return store

    groups: dict[tuple[int, ...], list[tuple[int, ...]]] = {}
    for p in partially_sorted_partitions(n):
        groups.setdefault(tuple(sorted(p, reverse=True)), []).append(p)
    result = Pdstor()
    for key in sorted(groups):
        group = Pdstor()
        for p in groups[key]:
            for c in fold(p):
                group.add(c)
        if progress is not None:
            progress(key, len(group))
        for key_c, c in group._keys.items():
            result.add_unchecked(c, key_c)
    return result


# ---------------------------------------------------------------------------
# brute force


def _partial_genus_ok(alpha: list[int], nv: int, matched: int) -> bool:
    """Genus of the partial map is 0 (dangling darts count as leaves)."""
    size = 4 * nv
    seen = bytearray(size)
    f = 0
    for d0 in range(size):
        if seen[d0]:
            continue
        f += 1
        d = d0
        while not seen[d]:
            seen[d] = 1
            x = alpha[d]
            if x < 0:
                x = d
            d = (x & ~3) | ((x + 1) & 3)
    return 2 - nv + matched - f == 0


def rooted_planar_maps(n: int) -> Iterator[tuple[int, ...]]:
    """Every rooted connected planar 4-regular map with ``n`` vertices, once.

    The smallest unmatched dart is always paired next, either with another
    open dart or with slot 0 of a fresh vertex, so each rooted map arises from
    exactly one sequence of choices.
    """
    alpha = [-1] * (4 * n)

    def rec(nv: int, matched: int):
        d = 0
        size = 4 * nv
        while d < size and alpha[d] >= 0:
            d += 1
        if d == size:
            if nv == n:
                yield tuple(alpha)
            return
        for d2 in range(d + 1, size):
            if alpha[d2] < 0:
                alpha[d], alpha[d2] = d2, d
                if _partial_genus_ok(alpha, nv, matched + 1):
                    yield from rec(nv, matched + 1)
                alpha[d] = alpha[d2] = -1
        if nv < n:
            w = 4 * nv
            alpha[d], alpha[w] = w, d
            if _partial_genus_ok(alpha, nv + 1, matched + 1):
                yield from rec(nv + 1, matched + 1)
            alpha[d] = alpha[w] = -1

    yield from rec(1, 0)


def brute_force_shadows(n: int, max_n: int = 6) -> Pdstor:
    """All ``n``-crossing link shadows by exhaustive rooted-map generation."""
    if n > max_n:
        raise CostGuardExceeded(
            f"brute force at n={n} exceeds the configured limit {max_n}"
        )
    store = Pdstor()
    for alpha in rooted_planar_maps(n):
        store.add(from_darts(alpha))
    return store


def prime_shadows_brute_force(n: int, max_n: int = 8) -> Pdstor:
    """Prime ``n``-crossing shadows filtered out of :func:`rooted_planar_maps`."""
    if n > max_n:
        raise CostGuardExceeded(
            f"brute force at n={n} exceeds the configured limit {max_n}"
        )
    store = Pdstor()
    for alpha in rooted_planar_maps(n):
        code = from_darts(alpha)
        if is_prime(code):
            store.add(code)
    return store


def filter_knot_shadows(store: Iterable[PdCode]) -> Pdstor:
    out = Pdstor()
    for c in store:
        if len(components(c)) == 1:
            out.add_unchecked(c)
    return out
