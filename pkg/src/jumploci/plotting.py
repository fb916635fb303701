"""Render a configuration and its determinant components on the chart z = 1.

Floats appear only here, for drawing. matplotlib and numpy are imported lazily
so the exact core never depends on them.
"""
from __future__ import annotations

from fractions import Fraction


def _affine(points):
    out = []
    for P in points:
        if P[2]:
            out.append((float(Fraction(P[0]) / Fraction(P[2])), float(Fraction(P[1]) / Fraction(P[2]))))
    return out


def _float_eval(poly, X, Y):
    scale = max(abs(Fraction(c)) for _, c in poly.terms)
    Z = 0.0 * X
    for (e0, e1, e2), c in poly.terms:
        Z = Z + float(Fraction(c) / scale) * X ** e0 * Y ** e1
    return Z


def render_report(path: str, config, report, margin: float = 1.5, resolution: int = 600) -> str:
    """Write a figure with the points of Z, each detected component and the residual curve."""
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt
    import numpy as np

    pts = _affine(config.points)
    xs = [p[0] for p in pts] or [0.0]
    ys = [p[1] for p in pts] or [0.0]
    span = max(max(xs) - min(xs), max(ys) - min(ys), 1.0)
    cx, cy = (max(xs) + min(xs)) / 2, (max(ys) + min(ys)) / 2
    half = span * margin / 2 + 0.5
    grid = np.linspace(-half, half, resolution)
    X, Y = np.meshgrid(grid + cx, grid + cy)

    fig, ax = plt.subplots(figsize=(7, 7))
    colors = plt.rcParams["axes.prop_cycle"].by_key()["color"]
    handles = []
    for k, f in enumerate(report.findings):
        color = colors[k % len(colors)]
        ax.contour(X, Y, _float_eval(f.curve.poly, X, Y), levels=[0], colors=[color], linewidths=1.2)
        handles.append(plt.Line2D([], [], color=color,
                                  label=f"{f.curve.label or 'curve'} {f.curve.poly}  (mult {f.observed_multiplicity})"))
    if report.residual.degree:
        ax.contour(X, Y, _float_eval(report.residual, X, Y), levels=[0], colors=["0.55"], linewidths=0.8,
                   linestyles="dashed")
        handles.append(plt.Line2D([], [], color="0.55", linestyle="dashed",
                                  label=f"residual (degree {report.residual.degree})"))
    ax.scatter(xs, ys, color="black", zorder=3, s=18)
    handles.append(plt.Line2D([], [], color="black", marker="o", linestyle="", label=f"Z ({len(config)} points)"))
    ax.set_xlim(cx - half, cx + half)
    ax.set_ylim(cy - half, cy + half)
    ax.set_aspect("equal")
    ax.set_xlabel("a0 / a2")
    ax.set_ylabel("a1 / a2")
    ax.set_title(f"{config.label or 'configuration'}: (d, m) = ({report.d}, {report.m}), deg F = {report.F_degree}")
    ax.legend(handles=handles, loc="upper left", fontsize=7)
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)
    return path
