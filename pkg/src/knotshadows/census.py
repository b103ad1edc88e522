"""Knot diagram census: per-shadow analysis, statistics and verification.

For every knot shadow the census enumerates the diagram classes, classifies
each by HOMFLY-PT and records shadow statistics (monogons, bigons,
automorphisms, prime summands).  Per-shadow results add up, which is what
makes the chunked runner in :mod:`knotshadows.chunked` possible.
"""
from __future__ import annotations

import csv
import io
import json
import statistics
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from importlib import resources
from typing import Iterable, Mapping

from .diagrams import (
    KnotTable,
    UNCLASSIFIED,
    build_knot_table,
    monogon_core,
    orbit_representatives,
    split_symmetry_counts,
)
from .homfly import homfly
from .isomorphism import map_automorphisms
from .pdcode import PdCode, components, faces, from_darts
from .shadows import summand_count

__all__ = [
    "IncompleteCensus",
    "ShadowRecord",
    "CensusRecord",
    "analyze_shadow",
    "census",
    "ShadowStats",
    "stats_shadows",
    "TreelikeStats",
    "treelike_stats",
    "UnknotReport",
    "unknot_report",
    "rank_frequency_rows",
    "rank_frequency_csv",
    "census_csv",
    "reference_values",
    "VerificationLine",
    "verify_reference_tables",
    "linear_fit",
]


class IncompleteCensus(ValueError):
    pass


@dataclass
class ShadowRecord:
    """Everything the census needs from one knot shadow."""

    n: int
    automorphisms: int
    monogons: int
    bigons: int
    summands: int
    diagrams: int
    type_counts: Counter
    unknot_states: int  # crossing-state assignments (orientation ignored) giving 0_1


def _core_crossings(core_alpha, kept, states_bits):
    """Oriented crossings of the monogon-free core for one state assignment."""
    code = from_darts(core_alpha)
    alpha = code.darts
    out = []
    for v in range(code.n):
        p = (states_bits >> kept[v]) & 1
        over = (4 * v + p, 4 * v + p + 2)
        under = (4 * v + 1 - p, 4 * v + 3 - p)
        oo, oin = over if code.label_at(over[0]) < 0 else over[::-1]
        uo, uin = under if code.label_at(under[0]) < 0 else under[::-1]
        sign = 1 if ((uo & 3) - (oo & 3)) % 4 == 1 else -1
        out.append((alpha[uin], uo, alpha[oin], oo, sign))
    return out


def analyze_shadow(code: PdCode, table: KnotTable) -> ShadowRecord:
    """Classify every diagram class over a knot shadow.

    Kinks do not change the knot type, so the HOMFLY polynomial only depends
    on the states at the crossings surviving monogon removal, and the
    orientation does not matter for knots.  Polynomials are cached per core
    state.
    """
    n = code.n
    if len(components(code)) != 1:
        raise ValueError("the census only covers knot shadows")
    autos = map_automorphisms(code)
    reps = orbit_representatives(code, autos)
    core, kept = monogon_core(code)
    cache: dict[int, str] = {}

    def type_of(x: int) -> str:
        if not kept:
            return "0_1"
        key = 0
        for i, v in enumerate(kept):
            key |= ((x >> v) & 1) << i
        name = cache.get(key)
        if name is None:
            poly = homfly(_core_crossings(core, kept, x))
            name = table.lookup(poly).name
            cache[key] = name
        return name

    counts = Counter(type_of(x & ((1 << n) - 1)) for x in reps)
    unknot_states = sum(1 for x in range(1 << n) if type_of(x) == "0_1")
    fs = faces(code)
    return ShadowRecord(
        n=n,
        automorphisms=len(autos),
        monogons=sum(1 for f in fs if f.degree == 1),
        bigons=sum(1 for f in fs if f.degree == 2),
        summands=summand_count(code),
        diagrams=len(reps),
        type_counts=counts,
        unknot_states=unknot_states,
    )


@dataclass
class CensusRecord:
    """Totals over all knot shadows with ``n`` crossings."""

    n: int
    knot_shadows: int = 0
    diagrams: int = 0
    automorphisms: int = 0
    monogons: int = 0
    shadows_with_monogon: int = 0
    bigons: int = 0
    shadows_with_bigon: int = 0
    summand_histogram: Counter = field(default_factory=Counter)
    treelike_diagrams: int = 0
    unknot_states: int = 0
    treelike_bound: Fraction = Fraction(0)
    type_counts: Counter = field(default_factory=Counter)
    link_shadows: int | None = None
    prime_shadows: int | None = None

    def add(self, r: ShadowRecord) -> None:
        self.knot_shadows += 1
        self.diagrams += r.diagrams
        self.automorphisms += r.automorphisms
        self.monogons += r.monogons
        self.shadows_with_monogon += r.monogons > 0
        self.bigons += r.bigons
        self.shadows_with_bigon += r.bigons > 0
        self.summand_histogram[r.summands] += 1
        if r.summands == r.n:
            self.treelike_diagrams += r.diagrams
        self.unknot_states += r.unknot_states
        self.treelike_bound += _treelike_weight(r.n, r.summands)
        self.type_counts.update(r.type_counts)

    def merge(self, other: "CensusRecord") -> "CensusRecord":
        if other.n != self.n:
            raise ValueError("cannot merge census records of different crossing numbers")
        out = CensusRecord(self.n)
        for rec in (self, other):
            for name in (
                "knot_shadows", "diagrams", "automorphisms", "monogons",
                "shadows_with_monogon", "bigons", "shadows_with_bigon", "unknot_states",
                "treelike_diagrams",
            ):
                setattr(out, name, getattr(out, name) + getattr(rec, name))
            out.treelike_bound += rec.treelike_bound
            out.summand_histogram.update(rec.summand_histogram)
            out.type_counts.update(rec.type_counts)
        out.link_shadows = self.link_shadows if self.link_shadows is not None else other.link_shadows
        out.prime_shadows = self.prime_shadows if self.prime_shadows is not None else other.prime_shadows
        return out

    def refined_type_counts(self, table: KnotTable) -> dict[str, int]:
        """Type counts with the classes HOMFLY cannot split divided evenly.

        Non-invertible knots are split into ``K`` and ``K^r``; the published
        tables list the pooled class.
        """
        sym = {t.name: t.symmetry for t in table.types()}
        out: Counter = Counter()
        pooled: Counter = Counter()
        for name, count in self.type_counts.items():
            s = sym.get(name)
            if s in ("none", "mirror", "amphichiral") and "#" not in name:
                base = name[:-2] if name.endswith("^m") else name
                pooled[(base, s)] += count
            else:
                out[name] += count
        for (base, s), count in pooled.items():
            out.update(split_symmetry_counts(base, s, count))
        return dict(out)

    # -- serialization ------------------------------------------------------

    def to_json(self) -> str:
        d = {
            "n": self.n,
            "knot_shadows": self.knot_shadows,
            "diagrams": self.diagrams,
            "automorphisms": self.automorphisms,
            "monogons": self.monogons,
            "shadows_with_monogon": self.shadows_with_monogon,
            "bigons": self.bigons,
            "shadows_with_bigon": self.shadows_with_bigon,
            "summand_histogram": {str(k): v for k, v in sorted(self.summand_histogram.items())},
            "treelike_diagrams": self.treelike_diagrams,
            "unknot_states": self.unknot_states,
            "treelike_bound": str(self.treelike_bound),
            "type_counts": dict(sorted(self.type_counts.items())),
            "link_shadows": self.link_shadows,
            "prime_shadows": self.prime_shadows,
        }
        return json.dumps(d, indent=1, sort_keys=True)

    @classmethod
    def from_json(cls, text: str) -> "CensusRecord":
        d = json.loads(text)
        rec = cls(d["n"])
        for name in (
            "knot_shadows", "diagrams", "automorphisms", "monogons",
            "shadows_with_monogon", "bigons", "shadows_with_bigon", "unknot_states",
            "treelike_diagrams", "link_shadows", "prime_shadows",
        ):
            setattr(rec, name, d[name])
        rec.summand_histogram = Counter({int(k): v for k, v in d["summand_histogram"].items()})
        rec.treelike_bound = Fraction(d["treelike_bound"])
        rec.type_counts = Counter(d["type_counts"])
        return rec


def _treelike_weight(n: int, summands: int) -> Fraction:
    """Guaranteed unknot share of the state assignments of one shadow.

    Tree-like shadows (``n`` summands) are always unknotted; with ``n - 2``
    summands the shadow carries one trefoil shadow and 6 of its 8 states
    unknot it; with ``n - 3`` it carries the figure-eight shadow (14 of 16).
    The summand count pins the factor sizes down: a summand with ``k``
    crossings removes ``k - 1`` summands and no prime knot shadow has two
    crossings.
    """
    if summands == n:
        return Fraction(1)
    if summands == n - 2:
        return Fraction(3, 4)
    if summands == n - 3:
        return Fraction(7, 8)
    return Fraction(0)


def census(
    n: int,
    knot_shadows: Iterable[PdCode],
    table: KnotTable | None = None,
    link_shadows: int | None = None,
    prime_shadows: int | None = None,
) -> CensusRecord:
    if table is None:
        table = build_knot_table(n)
    rec = CensusRecord(n, link_shadows=link_shadows, prime_shadows=prime_shadows)
    for code in knot_shadows:
        rec.add(analyze_shadow(code, table))
    return rec


# ---------------------------------------------------------------------------
# statistics


@dataclass(frozen=True)
class ShadowStats:
    n: int
    shadows: int
    mean_monogons: Fraction
    monogon_fraction: Fraction
    mean_bigons: Fraction
    bigon_fraction: Fraction
    mean_automorphisms: Fraction


def stats_shadows(shadows: Iterable[PdCode] | CensusRecord) -> ShadowStats:
    if isinstance(shadows, CensusRecord):
        r = shadows
        k = r.knot_shadows
        return ShadowStats(
            r.n, k,
            Fraction(r.monogons, k), Fraction(r.shadows_with_monogon, k),
            Fraction(r.bigons, k), Fraction(r.shadows_with_bigon, k),
            Fraction(r.automorphisms, k),
        )
    shadows = list(shadows)
    if not shadows:
        raise IncompleteCensus("no shadows given")
    mono = bi = mono_sh = bi_sh = auts = 0
    for c in shadows:
        deg = Counter(f.degree for f in faces(c))
        mono += deg[1]
        bi += deg[2]
        mono_sh += deg[1] > 0
        bi_sh += deg[2] > 0
        auts += len(map_automorphisms(c))
    k = len(shadows)
    return ShadowStats(
        shadows[0].n, k,
        Fraction(mono, k), Fraction(mono_sh, k),
        Fraction(bi, k), Fraction(bi_sh, k),
        Fraction(auts, k),
    )


@dataclass(frozen=True)
class TreelikeStats:
    n: int
    histogram: dict[int, int]  # number of prime summands -> shadows
    treelike: int
    three_almost: int
    four_almost: int
    total: int
    treelike_diagrams: int | None = None
    diagrams: int | None = None

    @property
    def treelike_fraction(self) -> Fraction:
        """Share of shadows that are tree-like."""
        return Fraction(self.treelike, self.total)

    @property
    def treelike_diagram_fraction(self) -> Fraction | None:
        """Share of diagrams whose shadow is tree-like."""
        if not self.diagrams:
            return None
        return Fraction(self.treelike_diagrams, self.diagrams)


def treelike_stats(shadows: Iterable[PdCode] | CensusRecord) -> TreelikeStats:
    """Prime summand histogram; tree-like shadows have ``n`` summands.

    No shadow has ``n - 1`` summands since there is no prime two-crossing
    knot shadow.
    """
    tl_diagrams = diagrams = None
    if isinstance(shadows, CensusRecord):
        n, hist = shadows.n, Counter(shadows.summand_histogram)
        tl_diagrams, diagrams = shadows.treelike_diagrams, shadows.diagrams
    else:
        shadows = list(shadows)
        n = shadows[0].n
        hist = Counter(summand_count(c) for c in shadows)
    return TreelikeStats(
        n, dict(sorted(hist.items())), hist[n], hist[n - 2], hist[n - 3], sum(hist.values()),
        tl_diagrams, diagrams,
    )


@dataclass(frozen=True)
class UnknotReport:
    n: int
    unknot_diagrams: int
    diagrams: int
    unknot_states: int
    states: int
    predicted_lower_bound: Fraction  # weights 1, 3/4, 7/8
    measured_lower_bound: Fraction  # weights 1, 3/4, 3/4 (the figure-eight shadow's true share)

    @property
    def unknot_fraction(self) -> Fraction:
        return Fraction(self.unknot_diagrams, self.diagrams)

    @property
    def state_unknot_fraction(self) -> Fraction:
        return Fraction(self.unknot_states, self.states)


def unknot_report(record: CensusRecord) -> UnknotReport:
    """Unknot share of diagrams and of raw state assignments, with the
    lower bound predicted from tree-like and almost tree-like shadows.

    The predicted bound gives 4-almost tree-like shadows weight 7/8.  Their
    actual unknot share is 3/4, because the figure-eight shadow also carries
    two trefoil states; the measured bound uses that value.
    """
    k = record.knot_shadows
    n, hist = record.n, record.summand_histogram
    measured = hist.get(n, 0) + Fraction(3, 4) * (
        hist.get(n - 2, 0) + (hist.get(n - 3, 0) if n >= 4 else 0)
    )
    return UnknotReport(
        record.n,
        record.type_counts.get("0_1", 0),
        record.diagrams,
        record.unknot_states,
        k << record.n,
        record.treelike_bound / k,
        measured / k,
    )


def _is_ambiguous(name: str) -> bool:
    return name.startswith("{") or name == UNCLASSIFIED.name


def rank_frequency_rows(record: CensusRecord) -> list[tuple[int, str, int, Fraction]]:
    """``(rank, knot_type, count, probability)`` in descending count order.

    Ties break by type name.  Ambiguous and unclassified diagrams are left
    out; the probabilities are relative to the rows that remain.
    """
    items = [(k, v) for k, v in record.type_counts.items() if not _is_ambiguous(k) and v]
    total = sum(v for _, v in items)
    items.sort(key=lambda kv: (-kv[1], kv[0]))
    return [(i + 1, k, v, Fraction(v, total)) for i, (k, v) in enumerate(items)]


def rank_frequency_csv(record: CensusRecord) -> str:
    """CSV export of :func:`rank_frequency_rows`.

    Ambiguous classes, if any, follow in a second block headed
    ``ambiguous_class,count``.
    """
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["rank", "knot_type", "count", "probability"])
    for rank, name, count, prob in rank_frequency_rows(record):
        w.writerow([rank, name, count, str(prob)])
    amb = sorted((k, v) for k, v in record.type_counts.items() if _is_ambiguous(k) and v)
    if amb:
        w.writerow([])
        w.writerow(["ambiguous_class", "count"])
        w.writerows(amb)
    return buf.getvalue()


def census_csv(records: Iterable[CensusRecord]) -> str:
    """CSV ``crossings,knot_type,diagram_count``, ambiguity classes included."""
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["crossings", "knot_type", "diagram_count"])
    for rec in sorted(records, key=lambda r: r.n):
        for name, count in sorted(rec.type_counts.items(), key=lambda kv: (-kv[1], kv[0])):
            w.writerow([rec.n, name, count])
    return buf.getvalue()


def linear_fit(xs, ys) -> tuple[float, float]:
    """Least-squares ``(intercept, slope)``."""
    slope, intercept = statistics.linear_regression([float(x) for x in xs], [float(y) for y in ys])
    return intercept, slope


# ---------------------------------------------------------------------------
# verification against published reference values


def reference_values() -> dict:
    text = resources.files("knotshadows").joinpath("data/reference_values.json").read_text()
    return json.loads(text)


@dataclass(frozen=True)
class VerificationLine:
    quantity: str
    n: int
    expected: str
    computed: str

    @property
    def ok(self) -> bool:
        return self.expected == self.computed

    def __str__(self):
        flag = "PASS" if self.ok else "FAIL"
        return f"{flag} {self.quantity} n={self.n}: expected {self.expected}, computed {self.computed}"


def verify_reference_tables(
    records: Mapping[int, CensusRecord], crossings: Iterable[int] | None = None
) -> list[VerificationLine]:
    """Compare census records cell by cell with the bundled reference values.

    Fractions are compared as exact values; the reference values keep the
    shadow count as denominator, which is irrelevant for equality.
    """
    ref = reference_values()
    ns = sorted(records) if crossings is None else sorted(crossings)
    missing = [n for n in ns if n not in records]
    if missing:
        raise IncompleteCensus(f"no census record for n={missing}")
    out: list[VerificationLine] = []

    def frac(s):
        return str(Fraction(s))

    for n in ns:
        r = records[n]
        key = str(n)
        sc = ref["shadow_counts"]
        if r.prime_shadows is not None:
            out.append(VerificationLine("prime shadows", n, str(sc["prime"][key]), str(r.prime_shadows)))
        if r.link_shadows is not None:
            out.append(VerificationLine("link shadows", n, str(sc["link"][key]), str(r.link_shadows)))
        out.append(VerificationLine("knot shadows", n, str(sc["knot"][key]), str(r.knot_shadows)))
        out.append(VerificationLine("knot diagrams", n, str(sc["knot_diagrams"][key]), str(r.diagrams)))
        st = stats_shadows(r)
        out.append(VerificationLine("mean automorphisms", n, frac(ref["mean_automorphisms"][key]), str(st.mean_automorphisms)))
        out.append(VerificationLine("mean monogons", n, frac(ref["monogons"]["mean"][key]), str(st.mean_monogons)))
        out.append(VerificationLine("monogon fraction", n, frac(ref["monogons"]["fraction"][key]), str(st.monogon_fraction)))
        out.append(VerificationLine("mean bigons", n, frac(ref["bigons"]["mean"][key]), str(st.mean_bigons)))
        out.append(VerificationLine("bigon fraction", n, frac(ref["bigons"]["fraction"][key]), str(st.bigon_fraction)))
        out.append(VerificationLine("unknot fraction", n, frac(ref["unknot_fraction"][key]), str(unknot_report(r).unknot_fraction)))
        if n == 8:
            frac8 = treelike_stats(r).treelike_diagram_fraction
            out.append(VerificationLine(
                "tree-like diagram fraction (4 places)", n,
                f"{ref['treelike_fraction_8']:.4f}", f"{float(frac8):.4f}",
            ))
        for name, cols in ref["knot_types"].items():
            if key in cols:
                out.append(VerificationLine(f"diagrams of {name}", n, str(cols[key]), str(r.type_counts.get(name, 0))))
    return out
