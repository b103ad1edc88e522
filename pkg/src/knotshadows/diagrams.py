"""Knot diagrams over shadows and their classification by HOMFLY-PT.

A diagram is a shadow with a crossing state at every vertex and an
orientation for every component.  State 0 puts the strand through slots 0
and 2 on top, state 1 the strand through slots 1 and 3.  Orientation 0
follows the pd-code's edge directions, 1 reverses them.

Two diagrams are equal when a shadow isomorphism carries one onto the other.
An isomorphism that reverses the sphere also exchanges over and under: the
reflection of the sphere composed with turning it inside out is a rotation
of space, so the knot type is kept.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from importlib import resources
from itertools import combinations_with_replacement
from pathlib import Path
from typing import Sequence

from .homfly import Crossing, HomflyPoly, homfly, parse_homfly, pd_to_crossings
from .isomorphism import MapIso, map_automorphisms, map_isomorphisms
from .pdcode import PdCode, components, from_darts
from .shadows import relabel_darts

__all__ = [
    "Diagram",
    "KnotType",
    "AmbiguityClass",
    "Unclassified",
    "UNCLASSIFIED",
    "KnotTable",
    "IndivisibleCount",
    "ReferenceValidationFailure",
    "diagram_action",
    "enumerate_diagrams",
    "orbit_representatives",
    "burnside_count",
    "diagram_crossings",
    "diagram_homfly",
    "reduce_monogons",
    "monogon_core",
    "diagram_isomorphic",
    "diagram_from_pd",
    "mirror_diagram",
    "reverse_diagram",
    "read_reference_table",
    "build_knot_table",
    "classify",
    "split_symmetry_counts",
    "parse_pd",
]


@dataclass(frozen=True)
class Diagram:
    """``shadow`` is ``None`` for the crossingless circle."""

    shadow: PdCode | None
    states: tuple[int, ...]
    orientation: tuple[int, ...]

    @property
    def n(self) -> int:
        return 0 if self.shadow is None else self.shadow.n

    def encode(self) -> int:
        x = 0
        for v, s in enumerate(self.states):
            x |= s << v
        for i, o in enumerate(self.orientation):
            x |= o << (len(self.states) + i)
        return x

    @classmethod
    def decode(cls, shadow: PdCode, x: int, ncomp: int | None = None) -> "Diagram":
        n = shadow.n
        if ncomp is None:
            ncomp = len(components(shadow))
        states = tuple((x >> v) & 1 for v in range(n))
        orient = tuple((x >> (n + i)) & 1 for i in range(ncomp))
        return cls(shadow, states, orient)


def _component_data(code: PdCode):
    """Component index of every dart and one tail dart per component."""
    comp_of_label = {}
    tails = []
    for i, c in enumerate(components(code)):
        for e in c.edges:
            comp_of_label[e] = i
        v, s = code.where(-c.edges[0])
        tails.append(4 * v + s)
    comp = [comp_of_label[abs(code.label_at(d))] for d in range(4 * code.n)]
    return comp, tails


def diagram_action(a: PdCode, b: PdCode, iso: MapIso):
    """Bit action of a shadow isomorphism ``a -> b`` on encoded assignments.

    Returns ``(targets, masks)``: bit ``k`` of an ``a``-assignment moves to
    bit ``targets[k]`` of the ``b``-assignment and is flipped when
    ``masks[k]`` is set.
    """
    n = a.n
    comp_a, tails_a = _component_data(a)
    comp_b, _ = _component_data(b)
    flip = 1 if iso.step < 0 else 0
    targets = []
    masks = []
    for v in range(n):
        img = iso.darts[4 * v]
        targets.append(img >> 2)
        masks.append((img & 1) ^ flip)
    for t in tails_a:
        img = iso.darts[t]
        targets.append(n + comp_b[img])
        masks.append(1 if b.label_at(img) > 0 else 0)
    return targets, masks


def _apply(action, x: int) -> int:
    targets, masks = action
    y = 0
    for k, (t, m) in enumerate(zip(targets, masks)):
        y |= (((x >> k) & 1) ^ m) << t
    return y


def orbit_representatives(code: PdCode, autos: Sequence[MapIso] | None = None) -> list[int]:
    """Smallest encoded assignment of every orbit under the automorphisms."""
    if autos is None:
        autos = map_automorphisms(code)
    ncomp = len(components(code))
    size = 1 << (code.n + ncomp)
    actions = [diagram_action(code, code, g) for g in autos]
    actions = [a for a in actions if a != (list(range(len(a[0]))), [0] * len(a[0]))]
    if not actions:
        return list(range(size))
    reps = []
    for x in range(size):
        if all(_apply(act, x) >= x for act in actions):
            reps.append(x)
    return reps


def burnside_count(code: PdCode, autos: Sequence[MapIso] | None = None) -> Fraction:
    """Orbit count as the average number of fixed assignments."""
    if autos is None:
        autos = map_automorphisms(code)
    ncomp = len(components(code))
    size = 1 << (code.n + ncomp)
    total = 0
    for g in autos:
        act = diagram_action(code, code, g)
        total += sum(1 for x in range(size) if _apply(act, x) == x)
    return Fraction(total, len(autos))


def enumerate_diagrams(shadow: PdCode) -> list[Diagram]:
    """One diagram per isomorphism class over ``shadow``."""
    ncomp = len(components(shadow))
    return [Diagram.decode(shadow, x, ncomp) for x in orbit_representatives(shadow)]


def diagram_isomorphic(a: Diagram, b: Diagram) -> bool:
    if a.shadow is None or b.shadow is None:
        return a.shadow is None and b.shadow is None and len(a.orientation) == len(b.orientation)
    xa, xb = a.encode(), b.encode()
    for iso in map_isomorphisms(a.shadow, b.shadow):
        if _apply(diagram_action(a.shadow, b.shadow, iso), xa) == xb:
            return True
    return False


# ---------------------------------------------------------------------------
# oriented crossings


def _outgoing(code: PdCode, orientation: Sequence[int]) -> list[bool]:
    comp, _ = _component_data(code)
    return [
        (code.label_at(d) < 0) != bool(orientation[comp[d]]) for d in range(4 * code.n)
    ]


def diagram_crossings(d: Diagram) -> list[Crossing]:
    """Crossings ``(under_in, under_out, over_in, over_out, sign)``.

    Edges are named by their outgoing dart.  A crossing is positive when the
    under strand leaves one slot counterclockwise after the over strand.
    """
    if d.shadow is None:
        return []
    alpha = d.shadow.darts
    out = _outgoing(d.shadow, d.orientation)
    res = []
    for v, p in enumerate(d.states):
        over = (4 * v + p, 4 * v + p + 2)
        under = (4 * v + 1 - p, 4 * v + 3 - p)
        oo, oin = over if out[over[0]] else over[::-1]
        uo, uin = under if out[under[0]] else under[::-1]
        sign = 1 if ((uo & 3) - (oo & 3)) % 4 == 1 else -1
        res.append((alpha[uin], uo, alpha[oin], oo, sign))
    return res


def diagram_homfly(d: Diagram) -> HomflyPoly:
    if d.shadow is None:
        return homfly([], free_loops=max(len(d.orientation), 1))
    return homfly(diagram_crossings(d))


def mirror_diagram(d: Diagram) -> Diagram:
    return Diagram(d.shadow, tuple(1 - s for s in d.states), d.orientation)


def reverse_diagram(d: Diagram) -> Diagram:
    return Diagram(d.shadow, d.states, tuple(1 - o for o in d.orientation))


def diagram_from_pd(xs: Sequence[Sequence[int]]) -> Diagram:
    """Diagram of a knot PD code in the ``X[i,j,k,l]`` convention."""
    quads = []
    m = 2 * len(xs)
    for i, j, k, l in xs:
        if (l - j) % m == 1:
            quads.append((i, j, -k, -l))
        else:
            quads.append((i, -j, -k, l))
    code = PdCode(quads)
    return Diagram(code, tuple(1 for _ in xs), tuple(0 for _ in components(code)))


# ---------------------------------------------------------------------------
# monogons


def monogon_core(code: PdCode):
    """Remove all monogon crossings from a shadow.

    Returns ``(core_alpha, kept)`` where ``kept`` lists the surviving
    crossings of ``code`` in order; ``core_alpha`` is empty when nothing
    survives (the shadow was a chain of kinks).
    """
    alpha = list(code.darts)
    alive = [True] * code.n
    changed = True
    while changed:
        changed = False
        for v in range(code.n):
            if not alive[v]:
                continue
            for s in range(4):
                if alpha[4 * v + s] == 4 * v + ((s + 1) & 3):
                    x, y = 4 * v + ((s + 2) & 3), 4 * v + ((s + 3) & 3)
                    a, b = alpha[x], alpha[y]
                    alive[v] = False
                    if a != y:
                        alpha[a], alpha[b] = b, a
                    changed = True
                    break
    kept = [v for v in range(code.n) if alive[v]]
    if not kept:
        return [], []
    return relabel_darts(alpha, kept), kept


def reduce_monogons(d: Diagram) -> Diagram:
    """Undo every kink (Reidemeister I); the knot type is unchanged."""
    if d.shadow is None:
        return d
    core, kept = monogon_core(d.shadow)
    if not kept:
        return Diagram(None, (), (0,) * len(d.orientation))
    code = from_darts(core)
    out_old = _outgoing(d.shadow, d.orientation)
    comp_new, tails_new = _component_data(code)
    orient = []
    for t in tails_new:
        v, s = kept[t >> 2], t & 3
        # the new code leaves through dart t; compare with the old direction
        orient.append(0 if out_old[4 * v + s] else 1)
    return Diagram(code, tuple(d.states[v] for v in kept), tuple(orient))


# ---------------------------------------------------------------------------
# knot table


class IndivisibleCount(ValueError):
    pass


class ReferenceValidationFailure(ValueError):
    pass


@dataclass(frozen=True)
class KnotType:
    name: str
    crossing_number: int
    symmetry: str
    factors: tuple[str, ...] = ()


@dataclass(frozen=True)
class AmbiguityClass:
    members: tuple[str, ...]

    @property
    def name(self) -> str:
        return "{" + "|".join(self.members) + "}"


@dataclass(frozen=True)
class _Unclassified:
    name: str = "Unclassified"


UNCLASSIFIED = _Unclassified()
Unclassified = _Unclassified


@dataclass
class KnotTable:
    entries: dict  # HomflyPoly -> list[KnotType]
    max_crossings: int

    def lookup(self, poly: HomflyPoly):
        types = self.entries.get(poly)
        if not types:
            return UNCLASSIFIED
        if len(types) == 1:
            return types[0]
        return AmbiguityClass(tuple(sorted(t.name for t in types)))

    def types(self) -> list[KnotType]:
        return [t for ts in self.entries.values() for t in ts]


@dataclass(frozen=True)
class ReferenceKnot:
    name: str
    symmetry: str
    pd: tuple[tuple[int, int, int, int], ...]
    homfly: HomflyPoly | None

    @property
    def crossing_number(self) -> int:
        return int(self.name.split("_")[0])


_X = re.compile(r"X\[([^\]]*)\]")


def parse_pd(text: str) -> list[tuple[int, int, int, int]]:
    """``X[1,5,2,4] X[3,1,4,6] ...`` as a list of quadruples."""
    xs = [tuple(int(x) for x in q.split(",")) for q in _X.findall(text)]
    if not xs or any(len(q) != 4 for q in xs):
        raise ValueError(f"not a PD code: {text!r}")
    return xs


def read_reference_table(source=None) -> list[ReferenceKnot]:
    """Parse ``name | symmetry | X[..] X[..] | HOMFLY`` lines (bundled table by default)."""
    if source is None:
        text = resources.files("knotshadows").joinpath("data/knot_table.txt").read_text()
    elif isinstance(source, Path) or (isinstance(source, str) and "\n" not in source):
        text = Path(source).read_text()
    else:
        text = source
    out = []
    for line in text.splitlines():
        if not line.strip() or line.lstrip().startswith("#"):
            continue
        parts = [p.strip() for p in line.split("|")]
        if len(parts) not in (3, 4):
            raise ValueError(f"bad reference line {line!r}")
        xs = tuple(tuple(int(x) for x in q.split(",")) for q in _X.findall(parts[2]))
        poly = parse_homfly(parts[3]) if len(parts) == 4 and parts[3] else None
        out.append(ReferenceKnot(parts[0], parts[1], xs, poly))
    return out


def build_knot_table(max_total_crossings: int, reference=None) -> KnotTable:
    """HOMFLY lookup table of knots with crossing number up to the budget.

    Prime knots come from the reference diagrams (their polynomials are
    computed and compared with the stored ones); mirrors are added when the
    polynomial changes, and composite knots are products of prime ones.
    """
    refs = reference if isinstance(reference, list) else read_reference_table(reference)
    primes: list[tuple[KnotType, HomflyPoly]] = []
    for r in refs:
        if r.crossing_number > max_total_crossings:
            continue
        poly = homfly(pd_to_crossings(r.pd))
        if r.homfly is not None and poly != r.homfly:
            raise ReferenceValidationFailure(
                f"{r.name}: computed {poly} but the table stores {r.homfly}"
            )
        primes.append((KnotType(r.name, r.crossing_number, r.symmetry, (r.name,)), poly))
        mirror = poly.mirror()
        if mirror != poly:
            m = r.name + "^m"
            primes.append((KnotType(m, r.crossing_number, r.symmetry, (m,)), mirror))
    entries: dict = {HomflyPoly.one(): [KnotType("0_1", 0, "full", ())]}

    def add(t, p):
        entries.setdefault(p, []).append(t)

    for t, p in primes:
        add(t, p)
    order = sorted(range(len(primes)), key=lambda i: _factor_key(primes[i][0].name))
    for k in range(2, max_total_crossings // 3 + 1):
        for combo in combinations_with_replacement(order, k):
            total = sum(primes[i][0].crossing_number for i in combo)
            if total > max_total_crossings:
                continue
            names = [primes[i][0].name for i in combo]
            poly = HomflyPoly.one()
            for i in combo:
                poly = poly * primes[i][1]
            add(KnotType("#".join(names), total, _composite_symmetry(names, primes), tuple(names)), poly)
    return KnotTable(entries, max_total_crossings)


def _factor_key(name: str):
    base = name.replace("^m", "")
    c, idx = base.split("_")
    return (int(c), int(idx), name.endswith("^m"))


def _composite_symmetry(names, primes) -> str:
    sym = {t.name: t.symmetry for t, _ in primes}
    if any(sym[x] not in ("reversible", "full") for x in names):
        return "none"
    mirrored = sorted(
        (x[:-2] if x.endswith("^m") else (x if sym[x] == "full" else x + "^m")) for x in names
    )
    return "full" if mirrored == sorted(names) else "reversible"


def classify(x, table: KnotTable):
    """Knot type, ambiguity class or :data:`UNCLASSIFIED` of a diagram or polynomial."""
    poly = x if isinstance(x, HomflyPoly) else diagram_homfly(x)
    return table.lookup(poly)


def split_symmetry_counts(name: str, symmetry: str, count: int) -> dict[str, int]:
    """Split a count over the knot types a HOMFLY value cannot tell apart.

    Reversal ``K -> K^r`` preserves the polynomial.  The types sharing a value
    occur equally often because swapping every crossing and reversing the
    orientation permute diagrams bijectively.
    """
    if symmetry in ("reversible", "full"):
        return {name: count}
    if symmetry in ("amphichiral", "mirror"):
        parts = [name, name + "^r"]
    elif symmetry == "none":
        parts = [name, name + "^r", name + "^m", name + "^mr"]
    else:
        raise ValueError(f"unknown symmetry class {symmetry!r}")
    if count % len(parts):
        raise IndivisibleCount(f"{count} diagrams of {name} cannot split {len(parts)} ways")
    return {p: count // len(parts) for p in parts}
