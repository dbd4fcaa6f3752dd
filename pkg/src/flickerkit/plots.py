"""Figure rendering for the report paths.

Each CLI report command can drop a PNG next to its CSV/JSON output; these
helpers do the drawing. The Agg backend keeps everything headless.
"""

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402


def plot_pair_ratios(report, path, title="Flicker ratio per frame pair"):
    """Per-pair detection ratios with the aggregate as a reference line."""
    indices = [p["index"] for p in report["pairs"]]
    ratios = [p["ratio"] for p in report["pairs"]]
    fig, ax = plt.subplots(figsize=(8, 4.5))
    ax.bar(indices, ratios, color="#4878a8", label="pair ratio")
    ax.axhline(report["aggregate_ratio"], color="#b04a4a", linestyle="--",
               label=f"aggregate = {report['aggregate_ratio']:.4f}")
    ax.set_xlabel("frame pair index")
    ax.set_ylabel("flicker ratio")
    ax.set_title(title)
    ax.legend()
    ax.grid(alpha=0.3)
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)
    return path


def plot_reduction(report, path, title="Flicker ratio before vs after reduction"):
    """Before/after per-pair ratio curves plus the step-size summary."""
    fig, (ax1, ax2) = plt.subplots(1, 2, figsize=(10, 4.5))
    ax1.plot(report["pairs_before"], marker="o", label="before")
    ax1.plot(report["pairs_after"], marker="s", label="after")
    ax1.set_xlabel("frame pair index")
    ax1.set_ylabel("flicker ratio")
    ax1.set_title(title)
    ax1.legend()
    ax1.grid(alpha=0.3)

    labels = ["before", "after"]
    ax2.bar(labels, [report["max_step_before"], report["max_step_after"]],
            color=["#4878a8", "#6aa84f"])
    ax2.set_ylabel("max channel step at flagged pixels")
    ax2.set_title(f"reduction: {report['percent_reduction']:.1f}%")
    ax2.grid(alpha=0.3, axis="y")
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)
    return path


def plot_amp_curves(header, rows, path, title="Amplitude coefficient vs refresh rate"):
    """One curve per phosphor over the refresh sweep."""
    freqs = [row[0] for row in rows]
    fig, ax = plt.subplots(figsize=(8, 4.5))
    for k, name in enumerate(header[1:], start=1):
        ax.plot(freqs, [row[k] for row in rows], label=name)
    ax.set_xlabel("refresh rate (Hz)")
    ax.set_ylabel("amplitude coefficient")
    ax.set_title(title)
    ax.legend()
    ax.grid(alpha=0.3)
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)
    return path


def plot_visual_angles(header, rows, path, title="Visual angle vs resolution"):
    """Visual angle against diagonal resolution at fixed pitch."""
    diag = [row[2] for row in rows]
    angles = [row[4] for row in rows]
    labels = [f"{int(row[0])}x{int(row[1])}" for row in rows]
    fig, ax = plt.subplots(figsize=(8, 4.5))
    ax.plot(diag, angles, marker="o")
    for x, y, text in zip(diag, angles, labels):
        ax.annotate(text, (x, y), textcoords="offset points", xytext=(4, 4), fontsize=8)
    ax.set_xlabel("diagonal resolution (px)")
    ax.set_ylabel("visual angle (degrees)")
    ax.set_title(title)
    ax.grid(alpha=0.3)
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)
    return path
