"""Exhaustive verification sweep over small (m|n)."""

from __future__ import annotations

import logging
import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field

import numpy as np

from .kw import SCHEMA_VERSION, verify_instance
from .partitions import PartitionPair, all_partition_pairs
from .pchar import check_levi_identities, random_levi_instance
from .superalgebra import AlgebraContext

__all__ = ["SweepConfig", "InvalidBound", "run_sweep", "worker_count"]

log = logging.getLogger(__name__)


class InvalidBound(ValueError):
    pass


@dataclass
class SweepConfig:
    max_size: int = 4
    primes: tuple[int, ...] = (3, 5, 7)
    kinds: tuple[str, ...] = ("gl", "sl")
    seed: int = 0
    levi_random: int = 0
    out_path: str | None = None

    def __post_init__(self):
        if self.max_size < 1:
            raise InvalidBound(f"max_size must be >= 1, got {self.max_size}")
        if not self.primes or any(p <= 2 for p in self.primes):
            raise InvalidBound("primes must all be odd")
        if not self.kinds or set(self.kinds) - {"gl", "sl"}:
            raise InvalidBound(f"kinds must be a nonempty subset of gl, sl: {self.kinds}")


def worker_count() -> int:
    try:
        return max(1, int(os.environ.get("KWMOD_THREADS", "1")))
    except ValueError:
        return 1


def _nilpotent_job(job):
    m, n, p, kind, r, q = job
    pp = PartitionPair.of(r, q)
    if kind == "sl" and (m - n) % p == 0:
        return {
            "schema": SCHEMA_VERSION,
            "instance": {"m": m, "n": n, "p": p, "kind": kind, "r": list(r), "q": list(q)},
            "status": "skipped",
            "reason": "p | m-n",
        }
    rep = verify_instance(AlgebraContext(m, n, p, kind), pp)
    out = rep.to_json()
    out["status"] = "pass" if rep.passed else "fail"
    return out


def _levi_job(job):
    m, n, p, kind, s, per_block = job
    rep = check_levi_identities(AlgebraContext(m, n, p, kind), s, per_block)
    out = rep.to_json()
    out["status"] = "pass" if rep.passed else "fail"
    return out


def nilpotent_jobs(cfg: SweepConfig) -> list[tuple]:
    jobs = []
    for pp in all_partition_pairs(cfg.max_size):
        for p in cfg.primes:
            for kind in cfg.kinds:
                jobs.append((pp.m, pp.n, p, kind, pp.r.parts, pp.q.parts))
    return jobs


def levi_jobs(cfg: SweepConfig) -> list[tuple]:
    rng = np.random.default_rng(cfg.seed)
    jobs = []
    for size in range(1, cfg.max_size + 1):
        for _ in range(cfg.levi_random):
            m = int(rng.integers(0, size + 1))
            n = size - m
            p = int(cfg.primes[rng.integers(len(cfg.primes))])
            kinds = [k for k in cfg.kinds if k == "gl" or (m - n) % p]
            kind = kinds[rng.integers(len(kinds))] if kinds else "gl"
            s, per_block = random_levi_instance(rng, m, n, p)
            jobs.append((m, n, p, kind, s, per_block))
    return jobs


def _map(fn, jobs, workers: int):
    if workers <= 1 or len(jobs) < 2:
        return [fn(job) for job in jobs]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, jobs, chunksize=8))


def run_sweep(cfg: SweepConfig, workers: int | None = None) -> dict:
    """Run every instance; the result is deterministic for a given config."""
    workers = worker_count() if workers is None else workers
    t0 = time.perf_counter()
    nil = _map(_nilpotent_job, nilpotent_jobs(cfg), workers)
    levi = _map(_levi_job, levi_jobs(cfg), workers)
    elapsed = time.perf_counter() - t0
    summary = {
        "instances": len(nil),
        "passed": sum(r["status"] == "pass" for r in nil),
        "failed": sum(r["status"] == "fail" for r in nil),
        "skipped": sum(r["status"] == "skipped" for r in nil),
        "levi_instances": len(levi),
        "levi_failed": sum(r["status"] == "fail" for r in levi),
    }
    log.info("sweep finished in %.1fs: %s", elapsed, summary)
    config = asdict(cfg)
    config["primes"] = list(cfg.primes)
    config["kinds"] = list(cfg.kinds)
    return {
        "schema": SCHEMA_VERSION,
        "config": config,
        "summary": summary,
        "instances": nil,
        "levi": levi,
    }
