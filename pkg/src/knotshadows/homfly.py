"""HOMFLY-PT polynomial of oriented link diagrams by a skein tree.

Normalization: the unknot has polynomial 1 and

    a * P(L+) - a^-1 * P(L-) = z * P(L0),

so a split unknot multiplies by ``delta = (a - a^-1) / z``.  Polynomials are
Laurent polynomials in ``a`` and ``z`` stored as ``{(i, j): coeff}`` for the
monomial ``a^i z^j``.

A diagram is a list of crossings ``(under_in, under_out, over_in, over_out,
sign)`` over edge labels, each label leaving one crossing and entering one.
The evaluator walks every component from a base point, first along the
component with the smallest label.  The first crossing met for the first
time along its under strand is switched, giving one switched and one smoothed
child.  A diagram where every crossing is first met from above is a stack of
unknotted components and evaluates to ``delta**(components - 1)``.
"""
from __future__ import annotations

import re
from typing import Iterable, Sequence

__all__ = [
    "HomflyPoly",
    "Crossing",
    "homfly",
    "parse_homfly",
    "pd_to_crossings",
    "knot_key",
]

Crossing = tuple[int, int, int, int, int]


class HomflyPoly:
    """Immutable Laurent polynomial in ``a`` and ``z`` with integer coefficients."""

    __slots__ = ("terms", "_hash")

    def __init__(self, terms: dict | Iterable = ()):
        items = terms.items() if isinstance(terms, dict) else terms
        clean = {}
        for k, c in items:
            if c:
                clean[k] = clean.get(k, 0) + c
                if not clean[k]:
                    del clean[k]
        self.terms: dict[tuple[int, int], int] = clean
        self._hash = None

    @classmethod
    def one(cls) -> "HomflyPoly":
        return cls({(0, 0): 1})

    @classmethod
    def delta(cls) -> "HomflyPoly":
        return cls({(1, -1): 1, (-1, -1): -1})

    def __add__(self, other):
        out = dict(self.terms)
        for k, c in other.terms.items():
            out[k] = out.get(k, 0) + c
        return HomflyPoly(out)

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        return HomflyPoly({k: -c for k, c in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, int):
            return HomflyPoly({k: c * other for k, c in self.terms.items()})
        return HomflyPoly(_mul(self.terms, other.terms))

    __rmul__ = __mul__

    def __pow__(self, k: int):
        out = HomflyPoly.one()
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other):
        return isinstance(other, HomflyPoly) and self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self.terms.items()))
        return self._hash

    def mirror(self) -> "HomflyPoly":
        """Polynomial of the mirror image: ``a -> -1/a``."""
        return HomflyPoly({(-i, j): c * (-1) ** (i % 2) for (i, j), c in self.terms.items()})

    def __str__(self):
        if not self.terms:
            return "0"
        return " ".join(f"{c:+d}*a^{i}*z^{j}" for (i, j), c in sorted(self.terms.items()))

    def __repr__(self):
        return f"HomflyPoly({str(self)!r})"


_TERM = re.compile(r"([+-]\d+)\*a\^(-?\d+)\*z\^(-?\d+)")


def parse_homfly(text: str) -> HomflyPoly:
    """Inverse of ``str(HomflyPoly)``."""
    text = text.strip()
    if text == "0":
        return HomflyPoly()
    terms = {}
    pos = 0
    for m in _TERM.finditer(text):
        if text[pos : m.start()].strip():
            raise ValueError(f"cannot parse HOMFLY term near {text[pos:m.start()]!r}")
        terms[(int(m.group(2)), int(m.group(3)))] = int(m.group(1))
        pos = m.end()
    if text[pos:].strip():
        raise ValueError(f"cannot parse HOMFLY term near {text[pos:]!r}")
    return HomflyPoly(terms)


def _mul(p: dict, q: dict) -> dict:
    out: dict = {}
    for (i, j), c in p.items():
        for (k, l), d in q.items():
            key = (i + k, j + l)
            out[key] = out.get(key, 0) + c * d
    return {k: c for k, c in out.items() if c}


def _add_into(acc: dict, p: dict, shift: tuple[int, int], scale: int) -> None:
    di, dj = shift
    for (i, j), c in p.items():
        key = (i + di, j + dj)
        v = acc.get(key, 0) + c * scale
        if v:
            acc[key] = v
        else:
            acc.pop(key, None)


_DELTA = {(1, -1): 1, (-1, -1): -1}
_delta_pows: list[dict] = [{(0, 0): 1}]


def _delta_pow(k: int) -> dict:
    while len(_delta_pows) <= k:
        _delta_pows.append(_mul(_delta_pows[-1], _DELTA))
    return _delta_pows[k]


# ---------------------------------------------------------------------------
# skein evaluation


def _rename(crossings: list[list[int]], old: int, new: int) -> None:
    """Replace the inlet label ``old`` by ``new`` (outlets are never renamed)."""
    for c in crossings:
        if c[0] == old:
            c[0] = new
        if c[2] == old:
            c[2] = new


def _remove_kinks(crossings: list[list[int]], free: int) -> int:
    """Delete Reidemeister-I kinks in place; return the updated free loop count."""
    changed = True
    while changed:
        changed = False
        for i, (ui, uo, oi, oo, _) in enumerate(crossings):
            if oo == ui:
                keep_in, drop_out = oi, uo
            elif uo == oi:
                keep_in, drop_out = ui, oo
            else:
                continue
            del crossings[i]
            if keep_in == drop_out:
                free += 1
            else:
                _rename(crossings, drop_out, keep_in)
            changed = True
            break
    return free


def _relabel(crossings: list[list[int]]) -> tuple:
    """Relabel edges by order of first appearance along the traversal."""
    arrive = {}
    for idx, c in enumerate(crossings):
        arrive[c[0]] = (idx, 1)
        arrive[c[2]] = (idx, 3)
    labels = sorted(arrive)
    new = {}
    order = []
    for start in labels:
        if start in new:
            continue
        e = start
        while e not in new:
            new[e] = len(new)
            idx, slot = arrive[e]
            order.append(idx)
            e = crossings[idx][slot]
    return tuple(
        sorted((new[c[0]], new[c[1]], new[c[2]], new[c[3]], c[4]) for c in crossings)
    )


def _evaluate(crossings: list[list[int]], free: int, memo: dict) -> dict:
    free = _remove_kinks(crossings, free)
    if not crossings:
        return _delta_pow(free - 1) if free else {(0, 0): 1}
    key = (_relabel(crossings), free)
    if key in memo:
        return memo[key]
    arrive = {}
    for idx, c in enumerate(crossings):
        arrive[c[0]] = (idx, True)
        arrive[c[2]] = (idx, False)
    visited = [False] * len(crossings)
    seen_edges = set()
    comps = 0
    bad = None
    for start in sorted(arrive):
        if start in seen_edges:
            continue
        comps += 1
        e = start
        while e not in seen_edges:
            seen_edges.add(e)
            idx, under = arrive[e]
            if not visited[idx]:
                visited[idx] = True
                if under:
                    bad = idx
                    break
            c = crossings[idx]
            e = c[1] if under else c[3]
        if bad is not None:
            break
    if bad is None:
        result = _delta_pow(comps + free - 1)
        memo[key] = result
        return result
    ui, uo, oi, oo, sign = crossings[bad]
    switched = [list(c) for c in crossings]
    switched[bad] = [oi, oo, ui, uo, -sign]
    smoothed = [list(c) for i, c in enumerate(crossings) if i != bad]
    sfree = free
    # smoothing joins under_in -> over_out and over_in -> under_out
    if oo == ui:
        sfree += 1
    else:
        _rename(smoothed, oo, ui)
    if uo == oi:
        sfree += 1
    else:
        _rename(smoothed, uo, oi)
    p_switch = _evaluate(switched, free, memo)
    p_smooth = _evaluate(smoothed, sfree, memo)
    acc: dict = {}
    if sign > 0:
        _add_into(acc, p_switch, (-2, 0), 1)
        _add_into(acc, p_smooth, (-1, 1), 1)
    else:
        _add_into(acc, p_switch, (2, 0), 1)
        _add_into(acc, p_smooth, (1, 1), -1)
    memo[key] = acc
    return acc


_GLOBAL_MEMO: dict = {}


def homfly(crossings: Sequence[Crossing], free_loops: int = 0, memo: dict | None = None) -> HomflyPoly:
    """HOMFLY-PT polynomial of an oriented diagram.

    ``free_loops`` counts extra crossingless components.  A crossingless
    diagram with no loops is taken to be the unknot.
    """
    cs = [list(c) for c in crossings]
    if not cs and free_loops == 0:
        free_loops = 1
    return HomflyPoly(_evaluate(cs, free_loops, _GLOBAL_MEMO if memo is None else memo))


def pd_to_crossings(xs: Sequence[Sequence[int]]) -> list[Crossing]:
    """Crossings of a knot PD code in the ``X[i,j,k,l]`` convention.

    ``i`` enters along the under strand, ``k`` leaves it, and the labels run
    counterclockwise.  Labels are numbered consecutively along the knot, so
    the over strand runs from ``j`` to ``l`` when ``l = j + 1`` (mod ``2n``).
    With counterclockwise slots the crossing is positive exactly when the
    under strand leaves one slot after the over strand leaves.
    """
    m = 2 * len(xs)
    out = []
    for i, j, k, l in xs:
        if (l - j) % m == 1:
            out.append((i, k, j, l, -1))
        elif (j - l) % m == 1:
            out.append((i, k, l, j, 1))
        else:
            raise ValueError(f"over strand labels {j}, {l} are not consecutive")
    return out


def knot_key(crossings: Sequence[Crossing]) -> tuple:
    """Relabeling-invariant key of a one-component diagram (minimal Gauss code)."""
    arrive = {}
    for idx, c in enumerate(crossings):
        arrive[c[0]] = (idx, True)
        arrive[c[2]] = (idx, False)
    best = None
    for start in arrive:
        num = {}
        code = []
        e = start
        for _ in range(len(arrive)):
            idx, under = arrive[e]
            if idx not in num:
                num[idx] = len(num)
            code.append((num[idx], under, crossings[idx][4]))
            c = crossings[idx]
            e = c[1] if under else c[3]
        code = tuple(code)
        if best is None or code < best:
            best = code
    return best or ()
