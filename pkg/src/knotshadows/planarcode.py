"""The planar_code binary format and quadrangulation duality.

A planar_code stream starts with ``>>planar_code<<``.  Each graph is the
vertex count followed, for every vertex, by its neighbours (1-based) in
clockwise order and a terminating 0.  Entries are single bytes; a graph
whose first byte is 0 switches to little-endian 16-bit entries.

Prime shadows are dual to simple quadrangulations of the sphere: the faces
of the shadow become the vertices of the quadrangulation.
"""
from __future__ import annotations

import struct
from pathlib import Path
from typing import Iterable, Sequence

from .pdcode import PdCode, PdCodeError, from_darts

__all__ = [
    "PlanarCodeError",
    "BadMagicHeader",
    "TruncatedRecord",
    "NonQuadFace",
    "MAGIC",
    "read_planar_code",
    "write_planar_code",
    "rotation_faces",
    "quadrangulation_to_shadow",
    "shadow_to_quadrangulation",
    "ingest_planar_code",
    "write_prime_shadows",
]

MAGIC = b">>planar_code<<"


class PlanarCodeError(ValueError):
    pass


class BadMagicHeader(PlanarCodeError):
    pass


class TruncatedRecord(PlanarCodeError):
    pass


class NonQuadFace(PlanarCodeError):
    pass


Rotation = list[list[int]]


def read_planar_code(data: bytes) -> list[Rotation]:
    """Decode a planar_code stream into 0-based clockwise neighbour lists."""
    if data.startswith(b">>planar_code le<<"):
        pos = len(b">>planar_code le<<")
    elif data.startswith(MAGIC):
        pos = len(MAGIC)
    else:
        raise BadMagicHeader("stream does not start with >>planar_code<<")
    graphs = []
    while pos < len(data):
        start = pos
        wide = data[pos] == 0
        if wide:
            if pos + 3 > len(data):
                raise TruncatedRecord(f"graph at byte {start} is cut short")
            n = struct.unpack_from("<H", data, pos + 1)[0]
            pos += 3
        else:
            n = data[pos]
            pos += 1
        rot: Rotation = []
        for _ in range(n):
            nbrs = []
            while True:
                if wide:
                    if pos + 2 > len(data):
                        raise TruncatedRecord(f"graph at byte {start} is cut short")
                    x = struct.unpack_from("<H", data, pos)[0]
                    pos += 2
                else:
                    if pos >= len(data):
                        raise TruncatedRecord(f"graph at byte {start} is cut short")
                    x = data[pos]
                    pos += 1
                if x == 0:
                    break
                if x > n:
                    raise PlanarCodeError(
                        f"graph at byte {start}: neighbour {x} exceeds vertex count {n}"
                    )
                nbrs.append(x - 1)
            rot.append(nbrs)
        graphs.append(rot)
    return graphs


def write_planar_code(graphs: Iterable[Sequence[Sequence[int]]]) -> bytes:
    out = bytearray(MAGIC)
    for rot in graphs:
        n = len(rot)
        if n < 255:
            out.append(n)
            for nbrs in rot:
                out.extend(x + 1 for x in nbrs)
                out.append(0)
        else:
            out.append(0)
            out += struct.pack("<H", n)
            for nbrs in rot:
                for x in nbrs:
                    out += struct.pack("<H", x + 1)
                out += struct.pack("<H", 0)
    return bytes(out)


def rotation_faces(rot: Sequence[Sequence[int]]) -> list[list[tuple[int, int]]]:
    """Faces of a simple embedded graph as lists of directed edges ``(u, v)``."""
    index = [{w: i for i, w in enumerate(nbrs)} for nbrs in rot]
    seen = set()
    out = []
    for u, nbrs in enumerate(rot):
        for v in nbrs:
            if (u, v) in seen:
                continue
            face = []
            a, b = u, v
            while (a, b) not in seen:
                seen.add((a, b))
                face.append((a, b))
                nb = rot[b]
                a, b = b, nb[(index[b][a] + 1) % len(nb)]
            out.append(face)
    return out


def quadrangulation_to_shadow(rot: Sequence[Sequence[int]]) -> PdCode:
    """The 4-regular map dual to a quadrangulation."""
    fs = rotation_faces(rot)
    where = {}
    for f, face in enumerate(fs):
        if len(face) != 4:
            raise NonQuadFace(f"face {f} has {len(face)} sides")
        for k, de in enumerate(face):
            where[de] = 4 * f + k
    alpha = [0] * (4 * len(fs))
    for (u, v), d in where.items():
        alpha[d] = where[(v, u)]
    return from_darts(alpha)


def shadow_to_quadrangulation(code: PdCode) -> Rotation:
    """Face graph of a shadow: one vertex per face, one edge per shadow edge."""
    alpha = code.darts
    size = len(alpha)
    face_of = [-1] * size
    orbits = []
    for d0 in range(size):
        if face_of[d0] >= 0:
            continue
        orbit = []
        d = d0
        while face_of[d] < 0:
            face_of[d] = len(orbits)
            orbit.append(d)
            x = alpha[d]
            d = (x & ~3) | ((x + 1) & 3)
        orbits.append(orbit)
    rot = [[face_of[alpha[d]] for d in orbit] for orbit in orbits]
    for f, nbrs in enumerate(rot):
        if len(set(nbrs)) != len(nbrs) or f in nbrs:
            raise PdCodeError("the face graph of a non-prime shadow is not simple")
    return rot


def ingest_planar_code(source) -> list[PdCode]:
    """Read quadrangulations (bytes or a path) and return their dual shadows."""
    data = source if isinstance(source, (bytes, bytearray)) else Path(source).read_bytes()
    return [quadrangulation_to_shadow(rot) for rot in read_planar_code(bytes(data))]


def write_prime_shadows(codes: Iterable[PdCode]) -> bytes:
    """Encode prime shadows as planar_code quadrangulations."""
    return write_planar_code(shadow_to_quadrangulation(c) for c in codes)
