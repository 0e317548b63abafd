"""Figure rendering for paths and verification reports.

matplotlib is imported lazily with the Agg backend so the CLI stays headless
and pays nothing unless a figure is actually requested.
"""
from __future__ import annotations

from .paths import Path, vertices, wt
from .verify import CheckResult


def _pyplot():
    import matplotlib

    matplotlib.use("Agg", force=False)
    import matplotlib.pyplot as plt

    return plt


def plot_path(path: Path, outfile: str) -> None:
    """Draw the height profile over its band structure.

    Odd bands are shaded darker; scoring vertices are marked with filled
    circles and annotated with their contribution.
    """
    plt = _pyplot()
    params = path.params
    fig, ax = plt.subplots(figsize=(max(6.0, 0.35 * path.L + 2), 4.0))
    for h in range(1, params.p_prime - 1):
        shade = 0.55 if params.band_is_odd(h) else 0.92
        ax.axhspan(h, h + 1, color=str(shade), zorder=0)
    xs = list(range(path.L + 1))
    ax.plot(xs, path.heights, color="tab:blue", lw=2, zorder=2)
    ax.plot([path.L, path.L + 1], [path.b, path.c], color="tab:blue",
            lw=1.2, ls="--", zorder=2)
    score_x, score_y, labels = [], [], []
    for v in vertices(path):
        if v.scoring:
            score_x.append(v.index)
            score_y.append(path.heights[v.index])
            labels.append(str(v.score))
    ax.scatter(score_x, score_y, color="tab:red", s=36, zorder=3)
    for x, y, text in zip(score_x, score_y, labels):
        ax.annotate(text, (x, y), textcoords="offset points", xytext=(0, 7),
                    ha="center", fontsize=8)
    ax.set_xlim(-0.5, path.L + 1.5)
    ax.set_ylim(0.5, params.p_prime - 0.5)
    ax.set_yticks(range(1, params.p_prime))
    ax.set_xlabel("position")
    ax.set_ylabel("height")
    ax.set_title(
        f"({params.p},{params.p_prime}) path, a={path.a}, b={path.b}, "
        f"c={path.c}, L={path.L}, wt={wt(path)}"
    )
    fig.tight_layout()
    fig.savefig(outfile, dpi=150)
    plt.close(fig)


def plot_verify_summary(results: list[CheckResult], outfile: str) -> None:
    """One horizontal bar per check, green for pass, red for fail."""
    plt = _pyplot()
    names = [f"{r.group}: {r.name}" for r in results]
    seconds = [max(r.seconds, 1e-3) for r in results]
    colors = ["tab:green" if r.passed else "tab:red" for r in results]
    height = max(3.0, 0.28 * len(results) + 1.2)
    fig, ax = plt.subplots(figsize=(9.0, height))
    ypos = range(len(results))
    ax.barh(ypos, seconds, color=colors)
    ax.set_yticks(list(ypos))
    ax.set_yticklabels(names, fontsize=7)
    ax.invert_yaxis()
    ax.set_xscale("log")
    ax.set_xlabel("seconds (log scale)")
    n_pass = sum(1 for r in results if r.passed)
    ax.set_title(f"identity verification: {n_pass}/{len(results)} checks passed")
    fig.tight_layout()
    fig.savefig(outfile, dpi=150)
    plt.close(fig)
