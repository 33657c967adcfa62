#!/usr/bin/env python3
"""Tabulate the decomposition of each n-gon over its vertex subdivision
target: the apex cell absorbs exactly the (n-3)d excess of the inequality
c^2 + (n-2)d >= c^2 + d.

Usage: python scripts/ngon_decomposition_table.py [max_n]
"""

import sys

from posetlab import constructions as cons
from posetlab import flags, subdivision
from posetlab.ncpoly import to_text


def main():
    max_n = int(sys.argv[1]) if len(sys.argv) > 1 else 10
    print(f"{'n':>3} {'Psi(n-gon)':<16} {'Psi(target)':<12} nonzero Phi terms")
    for m in range(3, max_n + 1):
        L = cons.polygon(m)
        T, phi = cons.subdivision_target_and_map(L, 1)
        dec = subdivision.decompose(phi)
        terms = ", ".join(f"Phi[{T.label(s)}]={to_text(p)}"
                          for s, p in dec.terms.items() if not p.is_zero())
        print(f"{m:>3} {to_text(flags.cd_index(L)):<16} "
              f"{to_text(flags.cd_index(T)):<12} {terms}")


if __name__ == "__main__":
    main()
