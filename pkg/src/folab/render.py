"""SVG figures via matplotlib: d=2 configurations and suite summaries.

Output is byte-reproducible: the SVG hash salt is fixed and no date is written.
"""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402
from matplotlib.patches import Circle, Wedge  # noqa: E402

from .colored import sorted_ids  # noqa: E402
from .swiss_cheese import FB, F, H, HB, SCElement  # noqa: E402

SIZE_PX = 512
DPI = 72  # one SVG user unit per pixel


def _figure():
    plt.rcParams["svg.hashsalt"] = "folab"
    fig = plt.figure(figsize=(SIZE_PX / DPI, SIZE_PX / DPI), dpi=DPI)
    return fig


def _save(fig, path):
    fig.savefig(path, format="svg", metadata={"Date": None})
    plt.close(fig)


def draw_root(ax, local: dict, root_color: str, label=None):
    ax.set_aspect("equal")
    ax.set_xlim(-1.05, 1.05)
    ax.set_ylim(-1.05, 1.05)
    ax.axis("off")
    if root_color in (H, HB):
        ax.add_patch(Wedge((0, 0), 1, 0, 180, fill=False, lw=1.5))
        # boundary hyperplane
        ax.axhline(0, color="0.4", lw=0.8)
    else:
        ax.add_patch(Circle((0, 0), 1, fill=False, lw=1.5))
    for i in sorted_ids(local):
        D = local[i]
        if D.color == F:
            ax.add_patch(Circle(D.c, D.r, fc="#9ecae1", ec="#08519c"))
        elif D.color == H:
            ax.add_patch(Wedge(D.c, D.r, 0, 180, fc="#fdd0a2", ec="#a63603"))
        elif D.color == FB and D.q is not None:
            ax.plot([D.q[0]], [D.q[1]], "o", color="black", ms=4)
        elif D.color == HB and D.q is not None:
            ax.plot([D.q[0], D.q[0]], [-0.04, 0.04], color="black", lw=2)
        if D.color in (F, H):
            at = D.c if D.color == F else (D.c[0], D.r / 2)
            ax.annotate(str(i), at, ha="center", va="center", fontsize=8)
    if label is not None:
        ax.set_title(str(label), fontsize=9)


def render_sc(e: SCElement, path, root=None):
    """Draw one root of a d=2 element (the first root by default) into a 512×512 SVG."""
    if e.d != 2:
        raise ValueError("only d=2 configurations can be drawn")
    roots = sorted_ids(e.shape.outputs)
    j = roots[0] if root is None else root
    fig = _figure()
    ax = fig.add_axes([0, 0, 1, 1])
    draw_root(ax, e.data[j], e.shape.outputs.color(j))
    _save(fig, path)


def render_report(report, path):
    """One mark per case: green for pass, red for the failing indices."""
    fig = _figure()
    ax = fig.add_axes([0.12, 0.15, 0.83, 0.75])
    bad = {k for k, _, _ in report.failures}
    last = report.count if not bad else max(bad) + 1
    xs = list(range(last))
    ax.scatter(xs, [0 if k in bad else 1 for k in xs], c=["#d62728" if k in bad else "#2ca02c" for k in xs], s=8)
    ax.set_yticks([0, 1], ["fail", "pass"])
    ax.set_ylim(-0.5, 1.5)
    ax.set_xlabel("case index")
    ax.set_title(f"{report.name} seed={report.seed}: {len(bad)} failing of {last} run")
    _save(fig, path)
