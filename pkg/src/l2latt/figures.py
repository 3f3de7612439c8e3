"""Figure rendering for density estimates (file output only)."""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402


def render_density_figure(estimate, path: str, fit: dict | None = None) -> str:
    """Log-log plot of the estimated density function, written to path."""
    fig, ax = plt.subplots(figsize=(6, 4))
    ax.loglog(estimate.grid, estimate.F, drawstyle="steps-post", label="F estimate")
    if estimate.b_hat > 0:
        ax.axhline(estimate.b_hat, color="gray", linestyle=":", label="Betti estimate")
    if fit and not fit.get("gap_candidate") and "exponent" in fit:
        lo, hi = fit["window"]
        import numpy as np

        xs = np.geomspace(lo, hi, 50)
        anchor_idx = int(np.argmin(np.abs(estimate.grid - lo)))
        anchor = max(estimate.F[anchor_idx] - estimate.b_hat, 1e-300)
        ax.loglog(
            xs,
            estimate.b_hat + anchor * (xs / lo) ** fit["exponent"],
            "r--",
            label=f"slope {fit['exponent']:.3f}",
        )
    ax.set_xlabel("lambda")
    ax.set_ylabel("F(lambda)")
    ax.set_title(f"spectral density, degree {estimate.degree}")
    ax.legend()
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)
    return path
