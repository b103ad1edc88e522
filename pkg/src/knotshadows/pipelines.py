"""Shadow enumeration front end: bundled prime assets and pipeline selection."""
from __future__ import annotations

from dataclasses import dataclass
from importlib import resources
from pathlib import Path
from typing import Iterable, Mapping

from .expansion import expansion_enumerate, graph_from_rotation, simple_planar_seeds
from .isomorphism import Pdstor
from .pdcode import PdCode
from .planarcode import ingest_planar_code, read_planar_code
from .shadows import (
    CostGuardExceeded,
    brute_force_shadows,
    build_composite_shadows,
    hopf,
    twist,
)

__all__ = [
    "METHODS",
    "CostGuards",
    "bundled_primes",
    "load_primes",
    "load_seeds",
    "enumerate_shadows",
    "PipelineComparison",
    "compare_pipelines",
]

METHODS = ("connect-sum", "brute-force", "expansion")
BUNDLED_PRIME_RANGE = range(3, 9)


@dataclass(frozen=True)
class CostGuards:
    """Largest crossing numbers each method may be asked for."""

    brute_force: int = 6
    connect_sum: int = 8
    expansion: int = 7


def bundled_primes(max_n: int) -> dict[int, list[PdCode]]:
    """Prime shadows with up to ``max_n`` crossings from the package data."""
    if max_n > BUNDLED_PRIME_RANGE.stop - 1:
        raise CostGuardExceeded(
            f"prime shadows are bundled up to {BUNDLED_PRIME_RANGE.stop - 1} crossings"
        )
    out: dict[int, list[PdCode]] = {1: [twist()], 2: [hopf()]}
    data = resources.files("knotshadows").joinpath("data")
    for k in range(3, max_n + 1):
        out[k] = ingest_planar_code(data.joinpath(f"primes_{k}.planar").read_bytes())
    return {k: v for k, v in out.items() if k <= max_n}


def load_primes(path, max_n: int) -> dict[int, list[PdCode]]:
    """Prime shadows from a pdstor text file or a planar_code file.

    The one- and two-crossing primes (twist and Hopf shadow) are not
    quadrangulations and are always supplied.
    """
    data = Path(path).read_bytes()
    if data.startswith(b">>planar_code"):
        codes: Iterable[PdCode] = ingest_planar_code(data)
    else:
        codes = Pdstor.from_text(data.decode())
    out: dict[int, list[PdCode]] = {1: [twist()], 2: [hopf()]}
    for c in codes:
        if 3 <= c.n <= max_n:
            out.setdefault(c.n, []).append(c)
    return out


def load_seeds(path):
    """Seed graphs for the expansion method from a planar_code file."""
    return [graph_from_rotation(rot) for rot in read_planar_code(Path(path).read_bytes())]


def enumerate_shadows(
    n: int,
    method: str = "connect-sum",
    primes: Mapping[int, Iterable[PdCode]] | None = None,
    seeds=None,
    guards: CostGuards = CostGuards(),
) -> Pdstor:
    """All ``n``-crossing link shadows by the chosen method."""
    if method == "connect-sum":
        if n > guards.connect_sum:
            raise CostGuardExceeded(f"connect-sum limited to n <= {guards.connect_sum}")
        return build_composite_shadows(bundled_primes(n) if primes is None else primes, n)
    if method == "brute-force":
        return brute_force_shadows(n, max_n=guards.brute_force)
    if method == "expansion":
        if seeds is None:
            if n > guards.expansion:
                raise CostGuardExceeded(f"expansion limited to n <= {guards.expansion}")
            seeds = simple_planar_seeds(n)
        return expansion_enumerate(n, seeds)
    raise ValueError(f"unknown method {method!r}; choose from {', '.join(METHODS)}")


@dataclass(frozen=True)
class PipelineComparison:
    n: int
    counts: dict[str, int]
    missing: dict[str, int]  # classes found by some other method but not this one

    @property
    def ok(self) -> bool:
        return not any(self.missing.values())

    def __str__(self):
        flag = "PASS" if self.ok else "FAIL"
        parts = ", ".join(f"{m}={c}" for m, c in self.counts.items())
        extra = "" if self.ok else f" missing {self.missing}"
        return f"{flag} n={self.n}: {parts}{extra}"


def compare_pipelines(n: int, methods: Iterable[str], **kwargs) -> PipelineComparison:
    """Run several methods and compare their isomorphism class sets."""
    keys = {m: enumerate_shadows(n, m, **kwargs).keys() for m in methods}
    union = set().union(*keys.values())
    return PipelineComparison(
        n,
        {m: len(k) for m, k in keys.items()},
        {m: len(union - k) for m, k in keys.items()},
    )
