"""SVG rendering of a decomposition: real part, imaginary part, complex-plane curve."""

from __future__ import annotations

import io

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

from .evolution import RevivalDecomposition  # noqa: E402


def decomposition_svg(decomp: RevivalDecomposition, title: str = "") -> bytes:
    x = decomp.x
    u = decomp.solution.values
    r = decomp.revival_part.values
    with plt.rc_context({"svg.hashsalt": "revival", "svg.fonttype": "none"}):
        fig, axes = plt.subplots(1, 3, figsize=(13, 3.8))
        for ax, part, label in ((axes[0], "real", "Re"), (axes[1], "imag", "Im")):
            ax.plot(x, getattr(u, part), color="tab:blue", lw=1.0, label="u")
            ax.plot(x, getattr(r, part), color="tab:orange", lw=1.0, ls="--", label="revival")
            ax.set_xlabel("x")
            ax.set_title(f"{label} u(x, t)")
            ax.set_xlim(0, x[-1])
        axes[0].legend(loc="upper right", fontsize=8)
        axes[2].plot(u.real, u.imag, color="black", lw=0.8)
        axes[2].set_xlabel("Re u")
        axes[2].set_ylabel("Im u")
        axes[2].set_title("complex plane")
        axes[2].set_aspect("equal", adjustable="datalim")
        if title:
            fig.suptitle(title)
        fig.tight_layout()
        buf = io.BytesIO()
        fig.savefig(buf, format="svg", metadata={"Date": None})
        plt.close(fig)
    return buf.getvalue()
