"""Timing of incremental maintenance against from-scratch elimination."""

from __future__ import annotations

import csv
import time
from dataclasses import asdict, dataclass
from pathlib import Path
from statistics import fmean
from typing import List, Optional

from .changelog import ChangeOp, Options, open_session
from .modp import rank_mod_p


@dataclass
class Timing:
    step: int
    op: str
    incremental_s: float
    scratch_s: Optional[float] = None


def recompute_from_scratch(session) -> int:
    """Rank of every maintained matrix by fresh elimination; returns the sum (kept so the work is used)."""
    total = 0
    for stack in session.stacks:
        for k in range(stack.size):
            total += rank_mod_p(stack.A[k], int(stack.p[k]))
    return total


def warm_up() -> None:
    """Compile (or load from cache) the native kernels so the first timed step is not a JIT step."""
    from . import rank_core

    if rank_core._compiled is not None:
        rank_core._compiled.warm_up()


def run_bench(mode: str, header: ChangeOp, ops: List[ChangeOp], options: Options, baseline: bool = True) -> List[Timing]:
    warm_up()
    session = open_session(mode, header, options)
    clock = time.perf_counter
    out: List[Timing] = []
    for step, op in enumerate(ops, 1):
        t0 = clock()
        session.apply(op)
        t1 = clock()
        rec = Timing(step, op.op, t1 - t0)
        if baseline and not op.is_query:
            t2 = clock()
            recompute_from_scratch(session)
            rec.scratch_s = clock() - t2
        out.append(rec)
    return out


def summarize(timings: List[Timing]) -> dict:
    updates = [t for t in timings if not t.op.endswith("?")]
    queries = [t for t in timings if t.op.endswith("?")]
    inc = fmean(t.incremental_s for t in updates) if updates else 0.0
    scratch_vals = [t.scratch_s for t in updates if t.scratch_s is not None]
    scratch = fmean(scratch_vals) if scratch_vals else 0.0
    return {
        "updates": len(updates),
        "queries": len(queries),
        "incremental_mean_s": inc,
        "scratch_mean_s": scratch,
        "ratio": scratch / inc if inc > 0 and scratch_vals else None,
        "query_mean_s": fmean(t.incremental_s for t in queries) if queries else 0.0,
    }


def write_csv(timings: List[Timing], path: Path) -> None:
    with open(path, "w", newline="") as fh:
        writer = csv.DictWriter(fh, fieldnames=["step", "op", "incremental_s", "scratch_s"])
        writer.writeheader()
        for t in timings:
            writer.writerow(asdict(t))
