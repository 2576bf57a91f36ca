"""Report emission: summary/curve CSV files and per-policy SVG charts.

All output is a pure function of the report contents: fixed seeds produce
byte-identical files. Numbers render with six significant digits; SVG is
plain text with no external assets.
"""
from __future__ import annotations

import csv
from pathlib import Path

import numpy as np

from .core import ConfigurationError
from .harness import ExperimentReport
from .scenarios import TerrainScenarioConfig

__all__ = ["emit_csv", "emit_plot", "render_curve_svg", "format_table"]

_SUMMARY_HEADER = (
    "policy", "avg_ticks", "avg_cost", "avg_utility_per_tick",
    "walk_trials", "fly_trials", "fail_trials",
)

# Light fills for the terrain background bands, cycled by terrain index.
_BAND_FILLS = ("#f5f5f5", "#e3ecf7", "#efe3f0", "#e7f2e3", "#f7efda")


def _num(value: float) -> str:
    return f"{value:.6g}"


def emit_csv(report: ExperimentReport, out_dir: str | Path) -> list[Path]:
    """Write ``summary.csv`` plus one ``curve_<policy>.csv`` per curve."""
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    written: list[Path] = []

    path = out / "summary.csv"
    with open(path, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(_SUMMARY_HEADER)
        for policy, m in report.entries:
            writer.writerow([
                policy.key, _num(m.avg_ticks), _num(m.avg_cost),
                _num(m.avg_utility_per_tick),
                m.walk_trials, m.fly_trials, m.fail_trials,
            ])
    written.append(path)

    for policy, m in report.entries:
        if m.ticks_per_step_curve.size == 0:
            continue
        path = out / f"curve_{policy.key}.csv"
        with open(path, "w", encoding="utf-8", newline="") as fh:
            writer = csv.writer(fh, lineterminator="\n")
            writer.writerow(("step_index", "mean_ticks"))
            for step, ticks in enumerate(report.metrics_for(policy.key).ticks_per_step_curve):
                writer.writerow((step, _num(float(ticks))))
        written.append(path)
    return written


def render_curve_svg(report: ExperimentReport, policy_key: str) -> str:
    """SVG chart of one policy's mean ticks per step.

    The track's terrain sequence appears twice: as shaded background bands
    and as a step-function trace along the bottom of the plot.
    """
    metrics = report.metrics_for(policy_key)
    curve = np.asarray(metrics.ticks_per_step_curve, dtype=float)
    if curve.size == 0:
        raise ConfigurationError(f"policy {policy_key} has no per-step curve")
    scenario = report.scenario
    if not isinstance(scenario, TerrainScenarioConfig):
        raise ConfigurationError("per-step curves exist only for walking runs")
    track = scenario.track

    width, height = 720.0, 320.0
    left, right, top, bottom = 52.0, 704.0, 20.0, 284.0
    n = curve.size
    y_max = max(float(curve.max()) * 1.08, 1.0)

    def sx(step: float) -> float:
        return left + (right - left) * step / max(n - 1, 1)

    def sy(value: float) -> float:
        return bottom - (bottom - top) * value / y_max

    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width:g}" height="{height:g}" '
        f'viewBox="0 0 {width:g} {height:g}">',
        f'<rect x="0" y="0" width="{width:g}" height="{height:g}" fill="#ffffff"/>',
    ]

    def bx(step_count: int) -> float:
        """Segment-boundary x coordinate (step counts tile the plot width)."""
        return left + (right - left) * step_count / n

    # terrain background bands
    start = 0
    for terrain, length in track.segments:
        fill = _BAND_FILLS[terrain % len(_BAND_FILLS)]
        parts.append(
            f'<rect x="{bx(start):.2f}" y="{top:.2f}" '
            f'width="{bx(start + length) - bx(start):.2f}" '
            f'height="{bottom - top:.2f}" fill="{fill}"/>'
        )
        start += length

    # terrain step-function trace along the bottom quarter of the plot
    n_terrains = track.n_terrains
    band = (bottom - top) * 0.22
    points = []
    start = 0
    for terrain, length in track.segments:
        level = bottom - band * (terrain + 1) / n_terrains
        points.append(f"{bx(start):.2f},{level:.2f}")
        points.append(f"{bx(start + length):.2f},{level:.2f}")
        start += length
    parts.append(
        f'<polyline points="{" ".join(points)}" fill="none" stroke="#cc3333" '
        f'stroke-width="1.4"/>'
    )

    # tick curve
    curve_points = " ".join(
        f"{sx(step):.2f},{sy(float(v)):.2f}" for step, v in enumerate(curve)
    )
    parts.append(
        f'<polyline points="{curve_points}" fill="none" stroke="#2b5fa3" '
        f'stroke-width="1.6"/>'
    )

    # axes and labels
    parts.append(
        f'<line x1="{left:.2f}" y1="{bottom:.2f}" x2="{right:.2f}" y2="{bottom:.2f}" '
        f'stroke="#222222" stroke-width="1"/>'
    )
    parts.append(
        f'<line x1="{left:.2f}" y1="{top:.2f}" x2="{left:.2f}" y2="{bottom:.2f}" '
        f'stroke="#222222" stroke-width="1"/>'
    )
    for frac in (0.0, 0.5, 1.0):
        value = y_max * frac
        y = sy(value)
        parts.append(
            f'<text x="{left - 6:.2f}" y="{y + 4:.2f}" text-anchor="end" '
            f'font-family="sans-serif" font-size="11">{value:.3g}</text>'
        )
        step = int(round((n - 1) * frac))
        parts.append(
            f'<text x="{sx(step):.2f}" y="{bottom + 16:.2f}" text-anchor="middle" '
            f'font-family="sans-serif" font-size="11">{step}</text>'
        )
    parts.append(
        f'<text x="{(left + right) / 2:.2f}" y="{height - 6:.2f}" text-anchor="middle" '
        f'font-family="sans-serif" font-size="12">track step</text>'
    )
    parts.append(
        f'<text x="{left:.2f}" y="{top - 6:.2f}" font-family="sans-serif" '
        f'font-size="12">{policy_key}: mean leaf ticks per step</text>'
    )
    parts.append("</svg>")
    return "\n".join(parts) + "\n"


def emit_plot(report: ExperimentReport, out_dir: str | Path) -> list[Path]:
    """Write one ``curve_<policy>.svg`` per policy with a per-step curve."""
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    written: list[Path] = []
    for policy, metrics in report.entries:
        if metrics.ticks_per_step_curve.size == 0:
            continue
        path = out / f"curve_{policy.key}.svg"
        path.write_text(render_curve_svg(report, policy.key), encoding="utf-8")
        written.append(path)
    return written


def format_table(report: ExperimentReport) -> str:
    """Aligned text table of the per-policy summary metrics."""
    rows = [("policy", "avg_ticks", "avg_cost", "util/tick", "walk", "fly", "fail")]
    for policy, m in report.entries:
        rows.append((
            policy.key, _num(m.avg_ticks), _num(m.avg_cost),
            _num(m.avg_utility_per_tick),
            str(m.walk_trials), str(m.fly_trials), str(m.fail_trials),
        ))
    widths = [max(len(row[i]) for row in rows) for i in range(len(rows[0]))]
    lines = [
        "  ".join(cell.rjust(widths[i]) if i else cell.ljust(widths[i])
                  for i, cell in enumerate(row))
        for row in rows
    ]
    return "\n".join(lines)
