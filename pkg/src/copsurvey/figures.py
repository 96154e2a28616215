"""Matplotlib figures rendered next to the delimited survey reports."""
from __future__ import annotations

import json
import math
import os
from collections import Counter

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

plt.rcParams.update({
    "figure.dpi": 120,
    "axes.grid": True,
    "grid.alpha": 0.3,
    "font.size": 9,
})


def _load(jsonl_path: str) -> list[dict]:
    with open(jsonl_path) as f:
        return [json.loads(line) for line in f if line.strip()]


def render_survey_figures(jsonl_path: str, out_dir: str) -> list[str]:
    """Render verdict/girth/cost figures for one survey report.

    Returns the list of files written.
    """
    records = _load(jsonl_path)
    os.makedirs(out_dir, exist_ok=True)
    written = []

    verdicts = Counter()
    for r in records:
        if "cop_number" in r:
            verdicts[f"c={r['cop_number']}"] += 1
        else:
            verdicts[r["pruned_by"]] += 1
    fig, ax = plt.subplots(figsize=(7, 3.2))
    keys = sorted(verdicts)
    ax.barh(keys, [verdicts[k] for k in keys], color="steelblue")
    ax.set_xlabel("isomorphism classes")
    ax.set_title(f"verdicts ({os.path.basename(jsonl_path)})")
    if max(verdicts.values(), default=1) / max(min(verdicts.values(), default=1), 1) > 50:
        ax.set_xscale("log")
    fig.tight_layout()
    p = os.path.join(out_dir, "verdicts.png")
    fig.savefig(p)
    plt.close(fig)
    written.append(p)

    girths = Counter(str(r["girth"]) for r in records)
    fig, ax = plt.subplots(figsize=(5, 3))
    keys = sorted(girths, key=lambda s: (s == "inf", s))
    ax.bar(keys, [girths[k] for k in keys], color="darkseagreen")
    ax.set_xlabel("girth")
    ax.set_ylabel("classes")
    fig.tight_layout()
    p = os.path.join(out_dir, "girth.png")
    fig.savefig(p)
    plt.close(fig)
    written.append(p)

    states = [r["states_explored"] for r in records if r.get("states_explored")]
    if states:
        fig, ax = plt.subplots(figsize=(5, 3))
        ax.hist(states, bins=min(40, max(5, int(math.sqrt(len(states))))),
                color="indianred")
        ax.set_xlabel("solver states enumerated")
        ax.set_ylabel("classes")
        fig.tight_layout()
        p = os.path.join(out_dir, "solver_states.png")
        fig.savefig(p)
        plt.close(fig)
        written.append(p)
    return written
