"""Isomorphism of shadows and the deduplicating store (pdstor).

Two routes decide whether two pd-codes describe the same shadow on the
unoriented sphere:

* :func:`build_isomorphisms` enumerates explicit isomorphisms
  ``(gamma, epsilon, nu)``: a permutation of components, a cyclic or
  reversed-cyclic edge map on each component, and the induced crossing map,
  kept when it preserves or reverses every quadruple's cyclic order.
* :func:`canonical_key` computes a complete invariant by traversing the map
  from every root dart in both sphere orientations and keeping the smallest
  code.  It is much faster and is the default for :class:`Pdstor`.

The tests cross-check the two routes against each other.
"""
from __future__ import annotations

import enum
import itertools
from collections import Counter
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Iterator, NamedTuple, Sequence

from .pdcode import PdCode, components, faces, from_darts, parse, serialize

__all__ = [
    "ShadowHash",
    "IsoMap",
    "MapIso",
    "shadow_hash",
    "build_isomorphisms",
    "apply_isomorphism",
    "equal_up_to_rotation",
    "automorphism_count",
    "canonical_key",
    "canonical_form",
    "map_isomorphisms",
    "map_automorphisms",
    "face_degrees_of_darts",
    "AddResult",
    "Pdstor",
    "PdstorFormatError",
    "pdstor_add",
    "pdstor_merge",
]


class ShadowHash(NamedTuple):
    vertices: int
    edges: int
    faces: int
    components: int
    face_degrees: tuple[int, ...]
    component_lengths: tuple[int, ...]


def shadow_hash(code: PdCode) -> ShadowHash:
    fs = faces(code)
    cs = components(code)
    return ShadowHash(
        code.n,
        code.num_edges,
        len(fs),
        len(cs),
        tuple(sorted(f.degree for f in fs)),
        tuple(sorted(c.length for c in cs)),
    )


# ---------------------------------------------------------------------------
# explicit isomorphisms


@dataclass(frozen=True)
class IsoMap:
    """An isomorphism between two pd-codes.

    ``gamma[i]`` is the image component of component ``i`` (both indexed as in
    :func:`components`), ``epsilon`` maps each edge to its image edge and
    ``edge_reversed`` tells whether the edge is traversed backwards, which
    holds for all edges of a component listed in ``reversed_components``.
    ``nu[v]`` is the image crossing of crossing ``v`` and ``orientation`` is
    ``+1`` when quadruples keep their cyclic order and ``-1`` when reversed.
    """

    gamma: tuple[int, ...]
    epsilon: dict
    edge_reversed: dict
    reversed_components: tuple[bool, ...]
    nu: tuple[int, ...]
    orientation: int

    def signed(self, label: int) -> int:
        """Image of a signed label."""
        img = self.epsilon[abs(label)]
        if self.edge_reversed[abs(label)]:
            img = -img
        return img if label > 0 else -img


def _cyclic_equal(a: Sequence[int], b: Sequence[int]) -> bool:
    return any(tuple(a[k:]) + tuple(a[:k]) == tuple(b) for k in range(len(a)))


def build_isomorphisms(a: PdCode, b: PdCode, limit: int | None = None) -> list[IsoMap]:
    """All isomorphisms from ``a`` to ``b`` (at most ``limit`` of them)."""
    if shadow_hash(a) != shadow_hash(b):
        return []
    ca = components(a)
    cb = components(b)
    by_len: dict[int, list[int]] = {}
    for j, c in enumerate(cb):
        by_len.setdefault(c.length, []).append(j)
    src_by_len: dict[int, list[int]] = {}
    for i, c in enumerate(ca):
        src_by_len.setdefault(c.length, []).append(i)
    lengths = sorted(by_len)
    blocks = [itertools.permutations(by_len[m]) for m in lengths]
    bq = [tuple(q) for q in b.quads]
    out: list[IsoMap] = []
    for choice in itertools.product(*[list(p) for p in blocks]):
        gamma = [0] * len(ca)
        for m, targets in zip(lengths, choice):
            for i, j in zip(src_by_len[m], targets):
                gamma[i] = j
        dihedral = []
        for i, c in enumerate(ca):
            m = c.length
            dihedral.append([(t, r) for r in (False, True) for t in range(m)])
        for eps_choice in itertools.product(*dihedral):
            epsilon = {}
            flip = {}
            for i, (t, r) in enumerate(eps_choice):
                src = ca[i].edges
                dst = cb[gamma[i]].edges
                m = len(src)
                for k, e in enumerate(src):
                    epsilon[e] = dst[(t - k) % m] if r else dst[(t + k) % m]
                    flip[e] = r
            iso = _complete(a, b, bq, epsilon, flip, gamma, eps_choice)
            if iso is not None:
                out.append(iso)
                if limit is not None and len(out) >= limit:
                    return out
    return out


def _complete(a, b, bq, epsilon, flip, gamma, eps_choice):
    def img(x):
        e = epsilon[abs(x)]
        y = -e if flip[abs(x)] else e
        return y if x > 0 else -y

    nu = []
    for q in a.quads:
        targets = {b.where(img(x))[0] for x in q}
        if len(targets) != 1:
            return None
        nu.append(targets.pop())
    if len(set(nu)) != len(nu):
        return None
    orientation = 0
    for v, q in enumerate(a.quads):
        image = [img(x) for x in q]
        target = bq[nu[v]]
        # labels are distinct, so a quadruple never equals its own reversal
        if _cyclic_equal(image, target):
            o = 1
        elif _cyclic_equal(image[::-1], target):
            o = -1
        else:
            return None
        if orientation and orientation != o:
            return None
        orientation = o
    return IsoMap(
        tuple(gamma),
        dict(epsilon),
        dict(flip),
        tuple(r for _, r in eps_choice),
        tuple(nu),
        orientation,
    )


def apply_isomorphism(a: PdCode, iso: IsoMap) -> PdCode:
    """Image of ``a`` under ``iso``: quadruple ``v`` lands at position ``nu[v]``.

    Quadruples are only determined up to rotation; compare with
    :func:`equal_up_to_rotation`.
    """
    quads: list = [None] * a.n
    for v, q in enumerate(a.quads):
        image = tuple(iso.signed(x) for x in q)
        quads[iso.nu[v]] = image if iso.orientation > 0 else image[::-1]
    return PdCode(quads)


def equal_up_to_rotation(a: PdCode, b: PdCode) -> bool:
    """Same quadruples in the same order, each up to cyclic rotation."""
    return a.n == b.n and all(_cyclic_equal(p, q) for p, q in zip(a.quads, b.quads))


def automorphism_count(code: PdCode) -> int:
    """Number of isomorphisms from ``code`` to itself."""
    return len(build_isomorphisms(code, code))


# ---------------------------------------------------------------------------
# canonical form by rooted traversal


def face_degrees_of_darts(alpha: Sequence[int]) -> list[int]:
    """Degree of the face orbit ``d -> rot(alpha(d))`` through each dart."""
    size = len(alpha)
    deg = [0] * size
    for d0 in range(size):
        if deg[d0]:
            continue
        orbit = []
        d = d0
        while True:
            orbit.append(d)
            x = alpha[d]
            d = (x & ~3) | ((x + 1) & 3)
            if d == d0:
                break
        for d in orbit:
            deg[d] = len(orbit)
    return deg


def _component_lengths_of_darts(alpha: Sequence[int]) -> list[int]:
    size = len(alpha)
    comp = [0] * size
    for d0 in range(size):
        if comp[d0]:
            continue
        orbit = []
        d = d0
        while True:
            orbit.append(d)
            orbit.append(alpha[d])
            d = alpha[d] ^ 2
            if d == d0:
                break
        for d in orbit:
            comp[d] = len(orbit) // 2
    return comp


def _root_classes(alpha: Sequence[int]) -> list[tuple[int, int]]:
    """Roots ``(dart, step)`` with the smallest local signature.

    The signature (faces on both sides of the dart, length of its strand) is
    preserved by every isomorphism, so restricting to the minimal class keeps
    the canonical code an invariant while trying far fewer roots.
    """
    deg = face_degrees_of_darts(alpha)
    comp = _component_lengths_of_darts(alpha)
    best = None
    roots: list[tuple[int, int]] = []
    for d in range(len(alpha)):
        after = deg[(d & ~3) | ((d + 1) & 3)]
        before = deg[d]
        for step, sig in ((1, (after, before, comp[d])), (-1, (before, after, comp[d]))):
            if best is None or sig < best:
                best = sig
                roots = [(d, step)]
            elif sig == best:
                roots.append((d, step))
    return roots


def _rooted_code(alpha, n, root, step, best):
    """Traversal code from ``root``; ``None`` once it exceeds ``best``."""
    num = [-1] * n
    base = [0] * n
    v0 = root >> 2
    num[v0] = 0
    base[v0] = root & 3
    order = [v0]
    code = []
    equal = best is not None
    i = 0
    while i < len(order):
        v = order[i]
        b = base[v]
        for k in range(4):
            p = alpha[4 * v + ((b + step * k) & 3)]
            w = p >> 2
            if num[w] < 0:
                num[w] = len(order)
                base[w] = p & 3
                order.append(w)
            x = 4 * num[w] + (((p & 3) - base[w]) * step & 3)
            if equal:
                y = best[len(code)]
                if x > y:
                    return None, None
                if x < y:
                    equal = False
            code.append(x)
        i += 1
    return code, (order, base)


def _canonical(alpha: Sequence[int]):
    n = len(alpha) // 4
    best = None
    winners = []
    for root, step in _root_classes(alpha):
        code, lab = _rooted_code(alpha, n, root, step, best)
        if code is None:
            continue
        if best is None or code < best:
            best = code
            winners = [(root, step, lab)]
        else:
            winners.append((root, step, lab))
    return tuple(best), winners


def canonical_key(code: PdCode | Sequence[int]) -> tuple[int, ...]:
    """Complete isomorphism invariant of a connected shadow."""
    alpha = code.darts if isinstance(code, PdCode) else code
    return _canonical(alpha)[0]


def canonical_form(code: PdCode | Sequence[int]) -> PdCode:
    """The normalized pd-code of the canonically relabeled shadow."""
    key = canonical_key(code)
    return from_darts(key)


@dataclass(frozen=True)
class MapIso:
    """Dart bijection between two shadows; ``step=-1`` reverses the sphere."""

    darts: tuple[int, ...]
    step: int


def _dart_map(lab_a, step_a, lab_b, step_b, n):
    order_a, base_a = lab_a
    order_b, base_b = lab_b
    out = [0] * (4 * n)
    for i in range(n):
        va, vb = order_a[i], order_b[i]
        for k in range(4):
            da = 4 * va + ((base_a[va] + step_a * k) & 3)
            db = 4 * vb + ((base_b[vb] + step_b * k) & 3)
            out[da] = db
    return tuple(out)


def map_isomorphisms(a: PdCode | Sequence[int], b: PdCode | Sequence[int]) -> list[MapIso]:
    """All isomorphisms from shadow ``a`` to shadow ``b`` as dart maps."""
    alpha_a = a.darts if isinstance(a, PdCode) else a
    alpha_b = b.darts if isinstance(b, PdCode) else b
    if len(alpha_a) != len(alpha_b):
        return []
    key_a, win_a = _canonical(alpha_a)
    key_b, win_b = _canonical(alpha_b)
    if key_a != key_b:
        return []
    n = len(alpha_a) // 4
    _, step_a, lab_a = win_a[0]
    return [
        MapIso(_dart_map(lab_a, step_a, lab_b, step_b, n), step_a * step_b)
        for _, step_b, lab_b in win_b
    ]


def map_automorphisms(code: PdCode | Sequence[int]) -> list[MapIso]:
    return map_isomorphisms(code, code)


# ---------------------------------------------------------------------------
# pdstor


class AddResult(enum.Enum):
    ADDED = "added"
    ALREADY_PRESENT = "already present"


class PdstorFormatError(ValueError):
    pass


class Pdstor:
    """A set of pairwise non-isomorphic shadows bucketed by :class:`ShadowHash`.

    ``strategy="canonical"`` stores the canonical form of each class and
    compares canonical keys.  ``strategy="isomorphism"`` keeps the first code
    of each class and compares against every code in the hash bucket with
    :func:`build_isomorphisms`.
    """

    def __init__(self, codes: Iterable[PdCode] = (), strategy: str = "canonical"):
        if strategy not in ("canonical", "isomorphism"):
            raise ValueError(f"unknown strategy {strategy!r}")
        self.strategy = strategy
        self.buckets: dict[ShadowHash, list[PdCode]] = {}
        self._keys: dict[tuple, PdCode] = {}
        self._order: list[PdCode] = []
        for c in codes:
            self.add(c)

    def add(self, code: PdCode) -> AddResult:
        if self.strategy == "canonical":
            key = canonical_key(code)
            if key in self._keys:
                return AddResult.ALREADY_PRESENT
            rep = from_darts(key)
            self._keys[key] = rep
            self.buckets.setdefault(shadow_hash(rep), []).append(rep)
            self._order.append(rep)
            return AddResult.ADDED
        h = shadow_hash(code)
        bucket = self.buckets.setdefault(h, [])
        for other in bucket:
            if build_isomorphisms(code, other, limit=1):
                return AddResult.ALREADY_PRESENT
        bucket.append(code)
        self._order.append(code)
        return AddResult.ADDED

    def add_unchecked(self, code: PdCode, key: tuple | None = None) -> None:
        """Insert a code known to be new (used when classes are disjoint a priori)."""
        if self.strategy == "canonical":
            key = canonical_key(code) if key is None else key
            code = from_darts(key)
            self._keys[key] = code
        self.buckets.setdefault(shadow_hash(code), []).append(code)
        self._order.append(code)

    def __contains__(self, code: PdCode) -> bool:
        if self.strategy == "canonical":
            return canonical_key(code) in self._keys
        return any(
            build_isomorphisms(code, other, limit=1)
            for other in self.buckets.get(shadow_hash(code), ())
        )

    def __len__(self):
        return len(self._order)

    def __iter__(self) -> Iterator[PdCode]:
        return iter(self._order)

    def keys(self) -> set[tuple]:
        """Canonical keys of all stored classes."""
        if self.strategy == "canonical":
            return set(self._keys)
        return {canonical_key(c) for c in self._order}

    def by_crossings(self) -> Counter:
        return Counter(c.n for c in self._order)

    # -- text format --------------------------------------------------------

    def sorted_codes(self) -> list[PdCode]:
        return sorted(self._order, key=lambda c: (shadow_hash(c), serialize(c)))

    def to_text(self) -> str:
        codes = self.sorted_codes()
        crossings = max((c.n for c in codes), default=0)
        lines = [f"pdstor {len(codes)} {crossings}"]
        lines += [serialize(c) for c in codes]
        return "\n".join(lines) + "\n"

    def write(self, path) -> None:
        Path(path).write_text(self.to_text())

    @classmethod
    def from_text(cls, text: str, strategy: str = "canonical") -> "Pdstor":
        lines = text.splitlines()
        if not lines or not lines[0].startswith("pdstor "):
            raise PdstorFormatError("missing 'pdstor <count> <crossings>' header")
        try:
            _, count, _crossings = lines[0].split()
            count = int(count)
        except ValueError:
            raise PdstorFormatError(f"bad header {lines[0]!r}") from None
        store = cls(strategy=strategy)
        seen = 0
        for i, raw in enumerate(lines[1:], start=2):
            if not raw.strip():
                continue
            store.add(parse(raw, line=i))
            seen += 1
        if seen != count:
            raise PdstorFormatError(f"header announces {count} codes, found {seen}")
        return store

    @classmethod
    def read(cls, path, strategy: str = "canonical") -> "Pdstor":
        return cls.from_text(Path(path).read_text(), strategy=strategy)


def pdstor_add(store: Pdstor, code: PdCode) -> AddResult:
    return store.add(code)


def pdstor_merge(a: Pdstor, b: Pdstor) -> Pdstor:
    """Union of two stores; shared classes are kept once."""
    out = Pdstor(strategy=a.strategy)
    for c in a:
        out.add_unchecked(c)
    for c in b:
        out.add(c)
    return out
