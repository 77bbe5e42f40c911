"""Print convergence tables: Mehler-Heine errors, Markov approximant errors
and distances between polynomial zeros and limit zeros.

    python3 scripts/convergence_table.py
"""

from mehler_heine import asymptotics as asy
from mehler_heine import zeros as zr
from mehler_heine.families import Charlier, Meixner, PolyKind

NS = [50, 100, 200, 400]
FAMILIES = [("charlier", Charlier(1.23)), ("meixner", Meixner(1.23, 0.36))]


def mh_table():
    print("Mehler-Heine: |t_n(x) - limit(x)|")
    print(f"{'family':9} {'kind':11} {'x':>12} " + " ".join(f"{'n=' + str(n):>10}" for n in NS))
    for name, family in FAMILIES:
        for kind in (PolyKind.MONIC, PolyKind.ASSOCIATED):
            for x in (-1.5, -0.5 + 0.5j, 2.5):
                lim = asy.mh_limit(family, kind, x)
                errs = [abs(asy.scaled_poly(family, kind, n, x).value - lim) for n in NS]
                print(f"{name:9} {kind.value:11} {str(x):>12} " + " ".join(f"{e:10.3e}" for e in errs))


def markov_table():
    print("\nMarkov approximants of S(-1), Charlier a = 1.23")
    family = Charlier(1.23)
    s = asy.stieltjes(family, -1.0)
    for n in (1, 2, 4, 8, 16, 32, 64):
        print(f"n={n:3d}  |ratio - S| = {abs(asy.markov_ratio(family, -1.0, n) - s):.3e}")


def zeros_table():
    print("\nZeros of the associated Charlier polynomials vs limit zeros")
    ns = [6, 9, 12, 15, 18, 24, 50, 100]
    for k in (1, 2, 3):
        rep = zr.zero_convergence(Charlier(1.23), PolyKind.ASSOCIATED, k, ns)
        print(f"k={k}  " + " ".join(f"{e:9.2e}" for e in rep.errors))
    print("(n = " + ", ".join(map(str, ns)) + "; binary64 resolution is reached near n = 20)")


if __name__ == "__main__":
    mh_table()
    markov_table()
    zeros_table()
