#!/usr/bin/env python3
"""Write the cut-cascade diagram of a (p, q)-weighted blowup as SVG.

The default reproduces the (7, 4) case: multiplicities 4, 3, 1, 1, 1 and
cut labels (1,1), (1,2), (2,3), (3,5), (4,7).
"""

import argparse

from hjtoric.blowup import mcduff_sequence
from hjtoric.svg import cut_diagram_svg


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--p", type=int, default=7)
    ap.add_argument("--q", type=int, default=4)
    ap.add_argument("--scale", type=int, default=40)
    ap.add_argument("--out", default=None, help="default: cuts_P_Q.svg")
    args = ap.parse_args()

    seq = mcduff_sequence(args.q, args.p)
    print(f"multiplicities: {seq.multiplicities}")
    print(f"cuts:           {seq.cut_directions}")
    out = args.out or f"cuts_{args.p}_{args.q}.svg"
    with open(out, "w") as fh:
        fh.write(cut_diagram_svg(args.p, args.q, scale=args.scale))
    print(f"wrote {out}")


if __name__ == "__main__":
    main()
