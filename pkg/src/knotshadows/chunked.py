"""Chunked, restartable census runs on a local process pool.

A job splits the knot shadows of a pdstor file into contiguous chunks.  The
coordinator leases chunks to worker processes; a worker that outlives its
lease is killed and its chunk goes back to the queue.  Each finished chunk
leaves a JSON result file named after the chunk id, so a rerun only redoes
missing or corrupt chunks.  The merge folds results in chunk-id order.
"""
from __future__ import annotations

import configparser
import hashlib
import json
import logging
import multiprocessing as mp
import os
import time
from dataclasses import dataclass
from pathlib import Path
from typing import Callable

from .census import CensusRecord, analyze_shadow, rank_frequency_csv
from .diagrams import build_knot_table
from .isomorphism import Pdstor
from .shadows import filter_knot_shadows

__all__ = [
    "ChunkTimeout",
    "CorruptResultFile",
    "JobSpec",
    "WorkChunk",
    "read_config",
    "plan_chunks",
    "run_chunk",
    "run_chunked",
    "merge_results",
    "write_census_files",
]

log = logging.getLogger(__name__)


class ChunkTimeout(RuntimeError):
    pass


class CorruptResultFile(ValueError):
    pass


@dataclass
class JobSpec:
    shadows: Path  # pdstor file with the shadows of one crossing number
    workdir: Path
    chunks: int = 8
    workers: int = 2
    lease_timeout: float = 3600.0
    max_attempts: int = 3


@dataclass
class WorkChunk:
    chunk_id: int
    start: int
    stop: int
    status: str = "pending"  # pending, leased, done
    lease_deadline: float | None = None
    attempts: int = 0

    @property
    def result_name(self) -> str:
        return f"chunk-{self.chunk_id:05d}.json"


def read_config(path) -> dict:
    """Plain ``key = value`` file; a ``[section]`` header is optional."""
    text = Path(path).read_text()
    cp = configparser.ConfigParser()
    if not text.lstrip().startswith("["):
        text = "[census]\n" + text
    cp.read_string(text)
    out = {}
    for section in cp.sections():
        out.update(cp[section])
    return out


def plan_chunks(total: int, chunks: int) -> list[WorkChunk]:
    """Contiguous slices of near-equal size covering ``range(total)``."""
    chunks = max(1, min(chunks, total)) if total else 1
    bounds = [total * i // chunks for i in range(chunks + 1)]
    return [WorkChunk(i, bounds[i], bounds[i + 1]) for i in range(chunks)]


def _digest(payload: str) -> str:
    return hashlib.sha256(payload.encode()).hexdigest()


def _load_shadows(path) -> list:
    return filter_knot_shadows(Pdstor.read(path)).sorted_codes()


def run_chunk(spec: JobSpec, chunk: WorkChunk) -> Path:
    """Census of one chunk, written atomically to its result file."""
    codes = _load_shadows(spec.shadows)[chunk.start : chunk.stop]
    if not codes:
        raise ValueError(f"chunk {chunk.chunk_id} is empty")
    n = codes[0].n
    table = build_knot_table(n)
    rec = CensusRecord(n)
    for c in codes:
        rec.add(analyze_shadow(c, table))
    payload = rec.to_json()
    body = json.dumps(
        {"chunk": chunk.chunk_id, "start": chunk.start, "stop": chunk.stop,
         "sha256": _digest(payload), "record": payload}
    )
    out = Path(spec.workdir) / chunk.result_name
    tmp = out.with_suffix(f".tmp{os.getpid()}")
    tmp.write_text(body)
    os.replace(tmp, out)
    return out


def _read_result(path: Path, chunk: WorkChunk) -> CensusRecord:
    try:
        d = json.loads(path.read_text())
        payload = d["record"]
        ok = (
            d["chunk"] == chunk.chunk_id
            and (d["start"], d["stop"]) == (chunk.start, chunk.stop)
            and d["sha256"] == _digest(payload)
        )
    except (OSError, ValueError, KeyError, TypeError) as exc:
        raise CorruptResultFile(f"{path}: {exc}") from exc
    if not ok:
        raise CorruptResultFile(f"{path}: checksum or chunk bounds do not match")
    return CensusRecord.from_json(payload)


def _worker_entry(spec, chunk, hook):
    if hook is not None:
        hook(chunk)
    run_chunk(spec, chunk)


def run_chunked(
    spec: JobSpec,
    worker_hook: Callable[[WorkChunk], None] | None = None,
    poll: float = 0.05,
) -> CensusRecord:
    """Run all chunks that lack a valid result file, then merge.

    ``worker_hook`` runs inside each worker before the chunk is processed;
    tests use it to simulate stalled workers.
    """
    workdir = Path(spec.workdir)
    workdir.mkdir(parents=True, exist_ok=True)
    total = len(_load_shadows(spec.shadows))
    chunks = plan_chunks(total, spec.chunks)
    for ch in chunks:
        path = workdir / ch.result_name
        if path.exists():
            try:
                _read_result(path, ch)
                ch.status = "done"
            except CorruptResultFile as exc:
                log.warning("requeueing chunk %d: %s", ch.chunk_id, exc)
                path.unlink()

    ctx = mp.get_context("fork")
    running: dict[int, mp.Process] = {}
    queue = [ch for ch in chunks if ch.status == "pending"]
    while queue or running:
        while queue and len(running) < max(1, spec.workers):
            ch = queue.pop(0)
            if ch.attempts >= spec.max_attempts:
                raise ChunkTimeout(f"chunk {ch.chunk_id} failed {ch.attempts} times")
            ch.attempts += 1
            ch.status = "leased"
            ch.lease_deadline = time.monotonic() + spec.lease_timeout
            p = ctx.Process(target=_worker_entry, args=(spec, ch, worker_hook))
            p.start()
            running[ch.chunk_id] = p
        time.sleep(poll)
        for cid, p in list(running.items()):
            ch = chunks[cid]
            if p.is_alive():
                if time.monotonic() > ch.lease_deadline:
                    p.kill()
                    p.join()
                    del running[cid]
                    log.warning("chunk %d lease expired; requeued", cid)
                    ch.status = "pending"
                    queue.append(ch)
                continue
            p.join()
            del running[cid]
            path = workdir / ch.result_name
            if p.exitcode == 0 and path.exists():
                ch.status = "done"
            else:
                log.warning("chunk %d worker exited with %s; requeued", cid, p.exitcode)
                ch.status = "pending"
                queue.append(ch)
    return merge_results(workdir, chunks)


def merge_results(workdir, chunks: list[WorkChunk]) -> CensusRecord:
    records = [_read_result(Path(workdir) / ch.result_name, ch) for ch in chunks]
    out = records[0]
    for r in records[1:]:
        out = out.merge(r)
    return out


def write_census_files(record: CensusRecord, prefix) -> tuple[Path, Path]:
    """Write ``<prefix>.json`` (the record) and ``<prefix>.csv`` (rank-frequency)."""
    prefix = Path(prefix)
    j = prefix.with_name(prefix.name + ".json")
    c = prefix.with_name(prefix.name + ".csv")
    j.write_text(record.to_json() + "\n")
    c.write_text(rank_frequency_csv(record))
    return j, c
