#!/usr/bin/env python3
"""Run the reduced-space circle simulation on a few synthetic actions and
print the area ledgers.

Each row of the table is one full counterclockwise loop; the tracked column
is the exact area of the transported exceptional class at the base level,
whose strict growth is what forces the HAMILTONIAN verdict.
"""

from fractions import Fraction

from hjtoric.circle import FixedPointDatum, run_loop


CASES = {
    "matched (2,1) pair": [
        FixedPointDatum(Fraction(0), +1, 2, 1),
        FixedPointDatum(Fraction(1, 2), -1, 2, 1),
    ],
    "semifree (1,1) pair": [
        FixedPointDatum(Fraction(0), +1, 1, 1),
        FixedPointDatum(Fraction(1, 2), -1, 1, 1),
    ],
    "two pairs (7,4) and (3,2)": [
        FixedPointDatum(Fraction(0), +1, 7, 4),
        FixedPointDatum(Fraction(1, 4), +1, 3, 2),
        FixedPointDatum(Fraction(1, 2), -1, 7, 4),
        FixedPointDatum(Fraction(3, 4), -1, 3, 2),
    ],
}


def main() -> None:
    for name, data in CASES.items():
        print(f"== {name} ==")
        for bound in (1, 2, 3):
            res = run_loop(data, loops=12, bound=bound)
            ledger = ", ".join(str(x) for x in res.ledger)
            print(f"  bound {bound}: {res.verdict} at loop "
                  f"{res.loop_of_contradiction}; ledger [{ledger}]")
        res = run_loop(data, loops=6)
        print(f"  default bound {res.bound}: {res.verdict} at loop "
              f"{res.loop_of_contradiction}")
        print(f"  lattice classes at end: {', '.join(res.final_lattice.classes)}")
        print()


if __name__ == "__main__":
    main()
