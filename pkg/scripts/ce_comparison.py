"""Compare Omega(UL)^v with Chevalley-Eilenberg cochains for abelian and Heisenberg L."""
import argparse

from s2cobar.lie import abelian, heisenberg, run_all
from s2cobar.rings import parse_ring


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--ring", type=parse_ring, default=parse_ring("q"))
    ap.add_argument("--cutoff", type=int, default=8)
    args = ap.parse_args()
    for L in (abelian(args.ring, {"xi": 2}), heisenberg(args.ring)):
        rep = run_all(L, args.cutoff)
        print(f"{L.name} over {args.ring}: {'ok' if rep.ok else 'FAILED'}")
        print(f"  betti (degree: cobar side, CE side): {rep.betti}")
        for name, (checked, failed) in rep.summary().items():
            print(f"  {name}: {checked} checked, {failed} failed")


if __name__ == "__main__":
    main()
