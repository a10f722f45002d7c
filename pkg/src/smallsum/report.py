"""Figures and report files for verification sweeps."""

from __future__ import annotations

import json
from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

from smallsum.verify import VerificationReport  # noqa: E402


def _bar(ax, counts: dict[str, int], title: str) -> None:
    labels = sorted(counts)
    values = [counts[k] for k in labels]
    bars = ax.bar(labels, values, color="#4c72b0")
    ax.bar_label(bars, fontsize=8)
    ax.set_title(title)
    ax.set_ylabel("instances")
    ax.tick_params(axis="x", labelrotation=30)


def plot_report(report: VerificationReport, plot_dir: str | Path) -> list[Path]:
    """Bar charts of the first-case tally and of every case that held."""
    out_dir = Path(plot_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    paths = []
    fig, axes = plt.subplots(1, 2, figsize=(9, 3.6), constrained_layout=True)
    _bar(axes[0], report.tally or {"none": 0}, "first case")
    _bar(axes[1], report.hits or {"none": 0}, "cases holding")
    status = "pass" if report.passed else f"{len(report.violations)} violations"
    fig.suptitle(f"{report.theorem}: {report.checked} checked, {status}")
    path = out_dir / f"{report.theorem}_cases.png"
    fig.savefig(path, dpi=120)
    plt.close(fig)
    paths.append(path)
    if report.violations:
        clauses: dict[str, int] = {}
        for v in report.violations:
            clauses[v.clause] = clauses.get(v.clause, 0) + 1
        fig, ax = plt.subplots(figsize=(5, 3.6), constrained_layout=True)
        _bar(ax, clauses, f"{report.theorem}: violations by clause")
        path = out_dir / f"{report.theorem}_violations.png"
        fig.savefig(path, dpi=120)
        plt.close(fig)
        paths.append(path)
    return paths


def write_jsonl(records: list[dict], path: str | Path) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with path.open("w") as fh:
        for r in records:
            fh.write(json.dumps(r, sort_keys=True) + "\n")
    return path
