"""Random change logs, for benchmarks and replay tests."""

from __future__ import annotations

import random
from typing import List


def random_log(mode: str, size: int, steps: int, seed: int = 0, bound: int = 8, query_every: int = 1) -> str:
    rng = random.Random(seed)
    lines: List[str] = [f"# random {mode} log, seed {seed}"]
    present = set()

    def query():
        if mode == "matrix":
            return "rank?"
        if mode == "reach":
            return "reach?"
        if mode == "allpairs":
            return f"reach? {rng.randint(1, size)} {rng.randint(1, size)}"
        if mode == "2sat":
            return "sat?"
        if mode == "rpq":
            return "match?"
        return rng.choice(["size?", "pm?"])

    if mode == "matrix":
        lines.append(f"init {size} {size} {bound}")
    elif mode in ("reach", "rpq"):
        lines.append(f"init {size} 1 {size}")
    elif mode in ("allpairs", "2sat", "matching"):
        lines.append(f"init {size}")
    else:
        raise ValueError(f"unknown mode {mode!r}")

    for step in range(1, steps + 1):
        if mode == "matrix":
            lines.append(f"set {rng.randint(1, size)} {rng.randint(1, size)} {rng.randint(-bound, bound)}")
        elif mode in ("reach", "allpairs", "matching"):
            u, v = rng.sample(range(1, size + 1), 2)
            if mode == "matching":
                u, v = min(u, v), max(u, v)
            key = (u, v)
            verb = ("dedge" if key in present else "edge") if mode == "matching" else ("delete" if key in present else "insert")
            present.symmetric_difference_update({key})
            lines.append(f"{verb} {u} {v}")
        elif mode == "2sat":
            a = rng.choice([-1, 1]) * rng.randint(1, size)
            b = rng.choice([-1, 1]) * rng.randint(1, size)
            key = (min(a, b), max(a, b))
            verb = "declause" if key in present else "clause"
            present.symmetric_difference_update({key})
            lines.append(f"{verb} {a:+d} {b:+d}")
        else:
            u, v = rng.randint(1, size), rng.randint(1, size)
            a = rng.choice("ab")
            key = (u, a, v)
            verb = "dledge" if key in present else "ledge"
            present.symmetric_difference_update({key})
            lines.append(f"{verb} {u} {a} {v}")
        if query_every and step % query_every == 0:
            lines.append(query())
    return "\n".join(lines) + "\n"
