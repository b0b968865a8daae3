#!/usr/bin/env python3
"""Counting lower bounds next to exact brute-force values.

For tiny r the exhaustive oracle settles f(r, C4) outright, and the
counting bound C(r,2) <= C (rk)^{3/2} shows how much of that value pure
counting already forces.  The second half prints the admissible-pair
data driving the K_{2,d+1} upper-bound coefficients for d just above
the hand-tuned range.
"""

from __future__ import annotations

from fractions import Fraction

from splitforge.bounds import (
    TuranEnvelope,
    admissible_pair_for,
    k2d_upper_coeff,
    min_k_lower,
    small_d_table,
)
from splitforge.forbidden import parse_pattern
from splitforge.oracle import OracleQuery, exact_f


def main() -> None:
    env = TuranEnvelope(Fraction(29, 50), Fraction(3, 2), 2)
    C4 = parse_pattern("C_4")
    print("r  counting-lb  exact  nodes")
    for r in (3, 4):
        res = exact_f(OracleQuery(r=r, m=2, k_max=3, pattern=C4))
        lb = min_k_lower(r, 2, env)
        print(f"{r}  {lb:11d}  {res.value:5d}  {res.nodes_total}")

    print()
    print("admissible pairs for K_{2,d+1}, d = 12..16:")
    for d in range(12, 17):
        pair = admissible_pair_for(d)
        print(f"  d={d}: (D1,D2)=({pair.d1},{pair.d2}), x0={pair.x0} "
              f"mod {pair.modulus}, primes={pair.primes[:3]}..., "
              f"coeff={pair.coefficient} ({float(pair.coefficient):.4f})")

    table = small_d_table()
    print()
    print("upper-bound coefficient per d (table where it beats the formula):")
    for d in (2, 6, 12, 13, 14, 50, 1000):
        formula = k2d_upper_coeff(d) if d >= 12 else None
        best = table.get(d, formula)
        if d in table and formula is not None and formula < table[d]:
            best = formula
        shown = f"{best:.4f}" if best is not None else "n/a"
        print(f"  d={d}: table={table.get(d)}, formula="
              f"{f'{formula:.4f}' if formula is not None else 'n/a'}, best={shown}")


if __name__ == "__main__":
    main()
