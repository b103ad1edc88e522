"""Command line interface: ``knotshadows <subcommand> ...``.

Exit codes: 0 success, 1 verification mismatch, 2 bad input.
"""
from __future__ import annotations

import argparse
import csv
import logging
import sys
from pathlib import Path

from .census import (
    CensusRecord,
    IncompleteCensus,
    analyze_shadow,
    census,
    census_csv,
    rank_frequency_csv,
    stats_shadows,
    treelike_stats,
    unknot_report,
    verify_reference_tables,
)
from .chunked import JobSpec, read_config, run_chunked, write_census_files
from .diagrams import build_knot_table, classify, diagram_from_pd, orbit_representatives, parse_pd
from .isomorphism import Pdstor, PdstorFormatError, map_automorphisms
from .pdcode import PdCodeError
from .pipelines import (
    METHODS,
    CostGuards,
    compare_pipelines,
    enumerate_shadows,
    load_primes,
    load_seeds,
)
from .planarcode import PlanarCodeError
from .shadows import CostGuardExceeded, filter_knot_shadows, is_prime

EXIT_OK, EXIT_MISMATCH, EXIT_INPUT = 0, 1, 2

INPUT_ERRORS = (
    PdCodeError, PdstorFormatError, PlanarCodeError, CostGuardExceeded,
    IncompleteCensus, FileNotFoundError, ValueError,
)


def _guards(cfg: dict) -> CostGuards:
    base = CostGuards()
    return CostGuards(
        brute_force=int(cfg.get("brute_force_max", base.brute_force)),
        connect_sum=int(cfg.get("connect_sum_max", base.connect_sum)),
        expansion=int(cfg.get("expansion_max", base.expansion)),
    )


def _writer(path):
    fh = sys.stdout if path in (None, "-") else open(path, "w", newline="")
    return fh, csv.writer(fh, lineterminator="\n")


def _shadows_for(n, args, cfg) -> Pdstor:
    primes_path = getattr(args, "primes", None) or cfg.get("primes")
    seeds_path = getattr(args, "seeds", None) or cfg.get("seeds")
    return enumerate_shadows(
        n,
        getattr(args, "method", "connect-sum"),
        primes=load_primes(primes_path, n) if primes_path else None,
        seeds=load_seeds(seeds_path) if seeds_path else None,
        guards=_guards(cfg),
    )


def cmd_enumerate_shadows(args, cfg) -> int:
    outdir = Path(args.output_dir) if args.output_dir else None
    if outdir:
        outdir.mkdir(parents=True, exist_ok=True)
    fh, w = _writer(args.summary)
    w.writerow(["crossings", "link_shadows", "knot_shadows", "prime_shadows"])
    for n in range(args.min_crossings, args.max_crossings + 1):
        store = _shadows_for(n, args, cfg)
        knots = filter_knot_shadows(store)
        w.writerow([n, len(store), len(knots), sum(is_prime(c) for c in store)])
        if outdir:
            store.write(outdir / f"shadows_{n}.pdstor")
            knots.write(outdir / f"knot_shadows_{n}.pdstor")
    if fh is not sys.stdout:
        fh.close()
    return EXIT_OK


def cmd_enumerate_diagrams(args, cfg) -> int:
    store = Pdstor.read(args.shadows)
    fh, w = _writer(args.output)
    w.writerow(["shadow", "crossings", "automorphisms", "diagrams"])
    total = 0
    for i, c in enumerate(store.sorted_codes()):
        autos = map_automorphisms(c)
        d = len(orbit_representatives(c, autos))
        total += d
        w.writerow([i, c.n, len(autos), d])
    w.writerow(["total", "", "", total])
    if fh is not sys.stdout:
        fh.close()
    return EXIT_OK


def cmd_classify(args, cfg) -> int:
    fh, w = _writer(args.output)
    if args.shadows:
        store = filter_knot_shadows(Pdstor.read(args.shadows))
        codes = store.sorted_codes()
        if not codes:
            raise ValueError("no knot shadows in the input")
        n = codes[0].n
        table = build_knot_table(args.table_crossings or n)
        rec = CensusRecord(n)
        for c in codes:
            rec.add(analyze_shadow(c, table))
        if args.census:
            Path(args.census).write_text(rec.to_json() + "\n")
        fh.write(census_csv([rec]))
    else:
        lines = [args.pd] if args.pd else Path(args.pd_file).read_text().splitlines()
        table = build_knot_table(args.table_crossings or 8)
        w.writerow(["diagram", "knot_type"])
        for line in lines:
            if not line.strip():
                continue
            w.writerow([line.strip(), classify(diagram_from_pd(parse_pd(line)), table).name])
    if fh is not sys.stdout:
        fh.close()
    return EXIT_OK


def _fmt(q) -> list:
    return [str(q), f"{float(q):.6f}"]


def cmd_stats(args, cfg) -> int:
    if args.census:
        src = CensusRecord.from_json(Path(args.census).read_text())
    else:
        src = filter_knot_shadows(Pdstor.read(args.shadows)).sorted_codes()
    st = stats_shadows(src)
    tl = treelike_stats(src)
    fh, w = _writer(args.output)
    w.writerow(["quantity", "exact", "decimal"])
    w.writerow(["crossings", st.n, st.n])
    w.writerow(["knot_shadows", st.shadows, st.shadows])
    w.writerow(["mean_automorphisms", *_fmt(st.mean_automorphisms)])
    w.writerow(["mean_monogons", *_fmt(st.mean_monogons)])
    w.writerow(["monogon_fraction", *_fmt(st.monogon_fraction)])
    w.writerow(["mean_bigons", *_fmt(st.mean_bigons)])
    w.writerow(["bigon_fraction", *_fmt(st.bigon_fraction)])
    w.writerow(["treelike_shadows", tl.treelike, tl.treelike])
    w.writerow(["treelike_shadow_fraction", *_fmt(tl.treelike_fraction)])
    for k, v in tl.histogram.items():
        w.writerow([f"shadows_with_{k}_summands", v, v])
    if isinstance(src, CensusRecord):
        rep = unknot_report(src)
        w.writerow(["knot_diagrams", src.diagrams, src.diagrams])
        w.writerow(["treelike_diagram_fraction", *_fmt(tl.treelike_diagram_fraction)])
        w.writerow(["unknot_fraction", *_fmt(rep.unknot_fraction)])
        w.writerow(["unknot_fraction_raw", f"{rep.unknot_diagrams}/{rep.diagrams}", ""])
        w.writerow(["unknot_state_fraction", *_fmt(rep.state_unknot_fraction)])
        w.writerow(["treelike_unknot_lower_bound", *_fmt(rep.predicted_lower_bound)])
        w.writerow(["treelike_unknot_lower_bound_measured", *_fmt(rep.measured_lower_bound)])
    if fh is not sys.stdout:
        fh.close()
    return EXIT_OK


def cmd_verify_pipelines(args, cfg) -> int:
    ok = True
    for n in range(args.min_crossings, args.max_crossings + 1):
        methods = args.methods or [m for m in METHODS if not (m == "brute-force" and n > _guards(cfg).brute_force)]
        cmp = compare_pipelines(n, methods, guards=_guards(cfg))
        print(cmp)
        ok &= cmp.ok
    return EXIT_OK if ok else EXIT_MISMATCH


def cmd_verify_published(args, cfg) -> int:
    records = {}
    for n in range(args.min_crossings, args.max_crossings + 1):
        path = Path(args.census_dir) / f"census_{n}.json" if args.census_dir else None
        if path is not None and path.exists():
            records[n] = CensusRecord.from_json(path.read_text())
            continue
        store = _shadows_for(n, args, cfg)
        rec = census(n, filter_knot_shadows(store).sorted_codes(),
                     link_shadows=len(store), prime_shadows=sum(is_prime(c) for c in store))
        records[n] = rec
        if path is not None:
            path.parent.mkdir(parents=True, exist_ok=True)
            path.write_text(rec.to_json() + "\n")
    lines = verify_reference_tables(records)
    bad = [l for l in lines if not l.ok]
    for l in lines:
        if args.verbose or not l.ok:
            print(l)
    print(f"{len(lines) - len(bad)}/{len(lines)} published values reproduced")
    return EXIT_OK if not bad else EXIT_MISMATCH


def cmd_export_rank_frequency(args, cfg) -> int:
    rec = CensusRecord.from_json(Path(args.census).read_text())
    fh, _ = _writer(args.output)
    fh.write(rank_frequency_csv(rec))
    if fh is not sys.stdout:
        fh.close()
    return EXIT_OK


def cmd_run_chunked(args, cfg) -> int:
    spec = JobSpec(
        Path(args.shadows),
        Path(args.workdir),
        chunks=args.chunks or int(cfg.get("chunks", 8)),
        workers=args.workers or int(cfg.get("workers", 2)),
        lease_timeout=float(cfg.get("lease_timeout", 3600)),
    )
    rec = run_chunked(spec)
    j, c = write_census_files(rec, args.output)
    print(f"wrote {j} and {c}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="knotshadows", description="Knot shadow and knot diagram census tools.")
    p.add_argument("--config", help="key = value file (workers, chunks, lease_timeout, "
                   "brute_force_max, connect_sum_max, expansion_max, primes, seeds)")
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", required=True)

    def crossings(sp, default_max=None):
        sp.add_argument("--max-crossings", type=int, required=default_max is None, default=default_max)
        sp.add_argument("--min-crossings", type=int, default=1)

    s = sub.add_parser("enumerate-shadows", help="enumerate link shadows up to isomorphism")
    crossings(s)
    s.add_argument("--method", choices=METHODS, default="connect-sum")
    s.add_argument("--primes", help="prime shadows (pdstor or planar_code) for connect-sum")
    s.add_argument("--seeds", help="seed graphs (planar_code) for expansion")
    s.add_argument("--output-dir", help="write shadows_<n>.pdstor and knot_shadows_<n>.pdstor here")
    s.add_argument("--summary", help="CSV summary path (default stdout)")
    s.set_defaults(func=cmd_enumerate_shadows)

    s = sub.add_parser("enumerate-diagrams", help="count knot diagram classes per shadow")
    s.add_argument("--shadows", required=True, help="pdstor file")
    s.add_argument("--output", help="CSV path (default stdout)")
    s.set_defaults(func=cmd_enumerate_diagrams)

    s = sub.add_parser("classify", help="classify diagrams by HOMFLY-PT polynomial")
    g = s.add_mutually_exclusive_group(required=True)
    g.add_argument("--pd", help="one diagram as X[i,j,k,l] ...")
    g.add_argument("--pd-file", help="one diagram per line")
    g.add_argument("--shadows", help="classify every diagram over the knot shadows of a pdstor file")
    s.add_argument("--table-crossings", type=int, help="crossing budget of the knot table")
    s.add_argument("--census", help="also write the census record (JSON) here")
    s.add_argument("--output", help="CSV path (default stdout)")
    s.set_defaults(func=cmd_classify)

    s = sub.add_parser("stats", help="shadow statistics, tree-like analysis and unknot fractions")
    g = s.add_mutually_exclusive_group(required=True)
    g.add_argument("--shadows", help="pdstor file")
    g.add_argument("--census", help="census record JSON")
    s.add_argument("--output", help="CSV path (default stdout)")
    s.set_defaults(func=cmd_stats)

    s = sub.add_parser("verify-pipelines", help="compare shadow class sets across methods")
    crossings(s)
    s.add_argument("--methods", nargs="+", choices=METHODS)
    s.set_defaults(func=cmd_verify_pipelines)

    s = sub.add_parser("verify-paper", aliases=["verify-published"], help="check census results against the bundled published values")
    crossings(s, default_max=7)
    s.set_defaults(min_crossings=3)
    s.add_argument("--census-dir", help="reuse or store census_<n>.json files here")
    s.add_argument("--primes", help="prime shadows for connect-sum")
    s.set_defaults(func=cmd_verify_published)

    s = sub.add_parser("export-rank-frequency", help="rank-frequency CSV from a census record")
    s.add_argument("--census", required=True)
    s.add_argument("--output", help="CSV path (default stdout)")
    s.set_defaults(func=cmd_export_rank_frequency)

    s = sub.add_parser("run-chunked", help="census of a pdstor file in restartable chunks")
    s.add_argument("--shadows", required=True)
    s.add_argument("--workdir", required=True, help="directory for per-chunk result files")
    s.add_argument("--output", required=True, help="prefix for <prefix>.json and <prefix>.csv")
    s.add_argument("--chunks", type=int)
    s.add_argument("--workers", type=int)
    s.set_defaults(func=cmd_run_chunked)
    return p


def main(argv=None) -> int:
    p = build_parser()
    args = p.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(message)s")
    try:
        cfg = read_config(args.config) if args.config else {}
        return args.func(args, cfg)
    except INPUT_ERRORS as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
