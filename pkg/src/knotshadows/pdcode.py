"""Planar diagram codes for link shadows.

A shadow with ``n`` crossings is stored as ``n`` quadruples of signed edge
labels.  Each label ``1..2n`` appears once with each sign.  ``+i`` marks the
head of edge ``i`` at that crossing (the strand arrives), ``-i`` its tail (the
strand leaves).  The four entries of a quadruple are listed counterclockwise
and a strand entering at slot ``k`` leaves at slot ``k + 2``.

Internally many routines work on *darts*: dart ``4*v + s`` is slot ``s`` of
crossing ``v``.  A shadow is then described by the involution ``alpha`` that
pairs the two darts joined by an edge.  Rotation around a crossing is
``s -> s + 1 (mod 4)``.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Sequence

__all__ = [
    "PdCode",
    "Face",
    "Component",
    "PdCodeError",
    "EmptyCode",
    "DuplicateLabel",
    "MissingLabel",
    "NonAdjacentSignViolation",
    "DisconnectedCode",
    "UnknownEdge",
    "NonIntegerGenus",
    "PdSyntaxError",
    "validate",
    "successor",
    "faces",
    "genus",
    "components",
    "serialize",
    "parse",
    "parse_many",
    "to_darts",
    "from_darts",
    "normalize",
]


class PdCodeError(ValueError):
    """Base class for malformed pd-codes."""


class EmptyCode(PdCodeError):
    pass


class DuplicateLabel(PdCodeError):
    pass


class MissingLabel(PdCodeError):
    pass


class NonAdjacentSignViolation(PdCodeError):
    pass


class DisconnectedCode(PdCodeError):
    pass


class UnknownEdge(PdCodeError):
    pass


class NonIntegerGenus(PdCodeError):
    pass


class PdSyntaxError(PdCodeError):
    """Raised by :func:`parse` with the offending line and column (1-based)."""

    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"line {line}, column {column}: {message}")
        self.line = line
        self.column = column


class PdCode:
    """An immutable pd-code.  Use :func:`validate` to build one from raw data."""

    __slots__ = ("quads", "_where", "_darts")

    def __init__(self, quads: Iterable[Sequence[int]]):
        self.quads: tuple[tuple[int, int, int, int], ...] = tuple(
            tuple(int(x) for x in q) for q in quads
        )
        self._where: dict[int, tuple[int, int]] | None = None
        self._darts: tuple[int, ...] | None = None

    @property
    def n(self) -> int:
        """Number of crossings."""
        return len(self.quads)

    @property
    def num_edges(self) -> int:
        return 2 * len(self.quads)

    def where(self, label: int) -> tuple[int, int]:
        """Return ``(crossing, slot)`` holding the signed ``label``."""
        if self._where is None:
            self._where = {
                x: (v, s) for v, q in enumerate(self.quads) for s, x in enumerate(q)
            }
        try:
            return self._where[label]
        except KeyError:
            raise UnknownEdge(f"label {label} does not occur in the code") from None

    def label_at(self, dart: int) -> int:
        return self.quads[dart >> 2][dart & 3]

    @property
    def darts(self) -> tuple[int, ...]:
        if self._darts is None:
            self._darts = to_darts(self)
        return self._darts

    def __eq__(self, other):
        return isinstance(other, PdCode) and self.quads == other.quads

    def __hash__(self):
        return hash(self.quads)

    def __len__(self):
        return len(self.quads)

    def __repr__(self):
        return f"PdCode({serialize(self)!r})"

    def __str__(self):
        return serialize(self)


@dataclass(frozen=True)
class Face:
    """A face as the cyclic sequence of signed labels met by :func:`successor`."""

    labels: tuple[int, ...]

    @property
    def degree(self) -> int:
        return len(self.labels)

    @property
    def edges(self) -> frozenset[int]:
        return frozenset(abs(x) for x in self.labels)

    def __len__(self):
        return len(self.labels)


@dataclass(frozen=True)
class Component:
    """A closed strand, as the edge labels in traversal order."""

    edges: tuple[int, ...]

    @property
    def length(self) -> int:
        return len(self.edges)

    def __len__(self):
        return len(self.edges)


def validate(raw: Iterable[Sequence[int]]) -> PdCode:
    """Check a raw list of quadruples and return a :class:`PdCode`.

    Besides the label and sign rules, the code has to describe a connected
    curve arrangement; a disconnected code would give a meaningless genus.
    """
    quads = [tuple(q) for q in raw]
    if not quads:
        raise EmptyCode("a pd-code needs at least one quadruple")
    n = len(quads)
    seen: dict[int, tuple[int, int]] = {}
    for v, q in enumerate(quads):
        if len(q) != 4:
            raise PdCodeError(f"quadruple {v} has {len(q)} entries, expected 4")
        for s, x in enumerate(q):
            if isinstance(x, bool) or int(x) != x:
                raise PdCodeError(f"label {x!r} in quadruple {v} is not an integer")
            x = int(x)
            if x in seen:
                raise DuplicateLabel(
                    f"label {x:+d} appears in quadruples {seen[x][0]} and {v}"
                )
            seen[x] = (v, s)
    for i in range(1, 2 * n + 1):
        for x in (i, -i):
            if x not in seen:
                raise MissingLabel(f"label {x:+d} is missing (n={n})")
    for v, q in enumerate(quads):
        for s in (0, 1):
            if (q[s] > 0) == (q[s + 2] > 0):
                raise NonAdjacentSignViolation(
                    f"quadruple {v}: opposite labels {q[s]:+d} and {q[s + 2]:+d} "
                    "have the same sign"
                )
    code = PdCode(quads)
    if not _is_connected(code.darts):
        raise DisconnectedCode("the quadruples split into several connected pieces")
    return code


def _is_connected(alpha: Sequence[int]) -> bool:
    n = len(alpha) // 4
    seen = [False] * n
    seen[0] = True
    stack = [0]
    count = 1
    while stack:
        v = stack.pop()
        for s in range(4):
            w = alpha[4 * v + s] >> 2
            if not seen[w]:
                seen[w] = True
                count += 1
                stack.append(w)
    return count == n


def successor(code: PdCode, label: int) -> int:
    """Next label along a face: minus the cyclic predecessor of ``label``."""
    v, s = code.where(label)
    return -code.quads[v][(s - 1) % 4]


def faces(code: PdCode) -> list[Face]:
    """All faces, each rotated to start at its smallest label, sorted by it."""
    labels = [x for q in code.quads for x in q]
    seen: set[int] = set()
    out = []
    for start in labels:
        if start in seen:
            continue
        cyc = []
        x = start
        while x not in seen:
            seen.add(x)
            cyc.append(x)
            x = successor(code, x)
        k = cyc.index(min(cyc))
        out.append(Face(tuple(cyc[k:] + cyc[:k])))
    out.sort(key=lambda f: f.labels[0])
    return out


def genus(code: PdCode) -> int:
    """Genus of the surface obtained by gluing the faces (0 for a planar shadow)."""
    chi = code.n - 2 * code.n + len(faces(code))
    if chi % 2:
        raise NonIntegerGenus(f"Euler characteristic {chi} is odd")
    return (2 - chi) // 2


def components(code: PdCode) -> list[Component]:
    """Closed strands, each starting at its smallest edge, sorted by that edge."""
    seen: set[int] = set()
    out = []
    for i in range(1, code.num_edges + 1):
        if i in seen:
            continue
        edges = []
        e = i
        while e not in seen:
            seen.add(e)
            edges.append(e)
            v, s = code.where(e)
            e = -code.quads[v][(s + 2) % 4]
        out.append(Component(tuple(edges)))
    return out


# ---------------------------------------------------------------------------
# text format

def serialize(code: PdCode) -> str:
    body = " ".join("(" + ",".join(str(x) for x in q) + ")" for q in code.quads)
    return f"{code.n}: {body}"


_INT = re.compile(r"[+-]?\d+")


def parse(text: str, line: int = 1) -> PdCode:
    """Parse one ``"n: (a,b,c,d) (...)"`` line and validate it."""
    pos = 0

    def fail(msg, at):
        raise PdSyntaxError(msg, line, at + 1)

    def skip_ws(p):
        while p < len(text) and text[p] in " \t\r\n":
            p += 1
        return p

    pos = skip_ws(pos)
    m = _INT.match(text, pos)
    if not m:
        fail("expected the crossing count", pos)
    count = int(m.group())
    pos = skip_ws(m.end())
    if pos >= len(text) or text[pos] != ":":
        fail("expected ':' after the crossing count", pos)
    pos = skip_ws(pos + 1)
    quads = []
    while pos < len(text):
        if text[pos] != "(":
            fail("expected '('", pos)
        pos += 1
        quad = []
        for k in range(4):
            pos = skip_ws(pos)
            m = _INT.match(text, pos)
            if not m:
                fail("expected an integer label", pos)
            quad.append(int(m.group()))
            pos = skip_ws(m.end())
            want = ")" if k == 3 else ","
            if pos >= len(text) or text[pos] != want:
                fail(f"expected '{want}'", pos)
            pos += 1
        quads.append(quad)
        pos = skip_ws(pos)
    if len(quads) != count:
        fail(f"header announces {count} quadruples but {len(quads)} were given", 0)
    return validate(quads)


def parse_many(text: str) -> list[PdCode]:
    """Parse one code per non-empty line, ignoring ``#`` comment lines."""
    out = []
    for i, raw in enumerate(text.splitlines(), start=1):
        if raw.strip() and not raw.lstrip().startswith("#"):
            out.append(parse(raw, line=i))
    return out


# ---------------------------------------------------------------------------
# dart form

def to_darts(code: PdCode) -> tuple[int, ...]:
    """Edge involution on darts ``4*v + s``."""
    pos = {}
    for v, q in enumerate(code.quads):
        for s, x in enumerate(q):
            pos[x] = 4 * v + s
    return tuple(pos[-x] for q in code.quads for x in q)


def from_darts(alpha: Sequence[int]) -> PdCode:
    """Build the normalized pd-code of a dart involution.

    Darts are scanned in increasing order; each unlabeled dart starts a new
    component oriented so that it leaves through that dart, and edges are
    numbered consecutively along the traversal.
    """
    size = len(alpha)
    labels = [0] * size
    k = 0
    for start in range(size):
        if labels[start]:
            continue
        d = start
        while True:
            k += 1
            labels[d] = -k
            h = alpha[d]
            labels[h] = k
            d = h ^ 2
            if d == start:
                break
    return PdCode(tuple(labels[i : i + 4]) for i in range(0, size, 4))


def normalize(code: PdCode) -> PdCode:
    """Relabel edges ``1..2n`` along the components (see :func:`from_darts`)."""
    return from_darts(code.darts)
