"""Figures for benchmark reports."""

from __future__ import annotations

from pathlib import Path
from typing import List

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

plt.rc("axes", linewidth=1.2)
plt.rc("lines", linewidth=1.2)
plt.rc("font", size=10)


def plot_timings(timings: List, path: Path, title: str = "") -> Path:
    """Per-update cost of incremental maintenance vs. from-scratch elimination.

    Left panel: time per update over the replay.  Right panel: the two
    distributions side by side.
    """
    updates = [t for t in timings if not t.op.endswith("?")]
    steps = [t.step for t in updates]
    inc = [t.incremental_s * 1e6 for t in updates]
    scratch = [t.scratch_s * 1e6 for t in updates if t.scratch_s is not None]

    fig, (ax, bx) = plt.subplots(1, 2, figsize=(10, 4), gridspec_kw={"width_ratios": [3, 1]})
    ax.plot(steps, inc, ".", ms=2, label="incremental")
    if scratch:
        ax.plot(steps, scratch, ".", ms=2, label="from scratch")
    ax.set_yscale("log")
    ax.set_xlabel("step")
    ax.set_ylabel("time per update [us]")
    ax.legend(loc="best", frameon=False)

    data, labels = [inc], ["incremental"]
    if scratch:
        data.append(scratch)
        labels.append("from scratch")
    if inc:
        bx.boxplot(data, showfliers=False)
        bx.set_xticks(range(1, len(labels) + 1), labels)
    bx.set_yscale("log")
    if title:
        fig.suptitle(title)
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)
    return Path(path)
