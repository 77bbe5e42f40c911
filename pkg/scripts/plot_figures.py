"""Plot the scaled associated polynomials at n = 28 against their limits.

    python3 scripts/plot_figures.py [outdir]

Writes charlier.png and meixner.png (default outdir: figures/). Needs
matplotlib (the ``plot`` extra).
"""

import sys
from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np

from mehler_heine import asymptotics as asy
from mehler_heine.families import Charlier, Meixner, PolyKind

N = 28
XS = np.linspace(-1.0, 10.0, 551)
PANELS = [
    ("charlier", Charlier(1.23), r"$-\gamma^*(-x,-a)$, $a=1.23$"),
    ("meixner", Meixner(1.23, 0.36), r"${}_2F_1$ limit, $\beta=1.23$, $c=0.36$"),
]


def curves(family):
    t = np.array([asy.scaled_poly(family, PolyKind.ASSOCIATED, N, x).value.real for x in XS])
    lim = np.array([asy.mh_limit(family, PolyKind.ASSOCIATED, x).real for x in XS])
    return t, lim


def main(outdir="figures"):
    out = Path(outdir)
    out.mkdir(parents=True, exist_ok=True)
    for name, family, label in PANELS:
        t, lim = curves(family)
        fig, ax = plt.subplots(figsize=(6, 4))
        ax.plot(XS, lim, label=label)
        ax.plot(XS, t, "--", label=f"scaled associated, n={N}")
        ax.set_yscale("symlog", linthresh=1.0)
        ax.set_xlabel("x")
        ax.legend()
        fig.tight_layout()
        fig.savefig(out / f"{name}.png", dpi=120)
        plt.close(fig)
        print(f"{name}: max |t - limit| = {np.max(np.abs(t - lim)):.6g}")


if __name__ == "__main__":
    main(*sys.argv[1:])
