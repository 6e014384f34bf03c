"""Products t1*tn and tn*t1 in the bar constructions of the circle's cochains and cohomology."""
import argparse

from s2cobar.rings import parse_ring
from s2cobar.suites import s1_products


def show(v):
    return " + ".join(f"{c}*[x]^{len(w)}" for w, c in sorted(v.items(), key=lambda t: len(t[0]))) or "0"


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--n", type=int, default=6)
    ap.add_argument("--ring", type=parse_ring, default=parse_ring("z"))
    args = ap.parse_args()
    cochains, cohom = s1_products(args.n, args.ring)
    for n in range(1, args.n + 1):
        a, b = cochains[n]
        print(f"n={n}:  t1 tn = {show(a)}   tn t1 = {show(b)}   t'1 t'n = {show(cohom[n])}")


if __name__ == "__main__":
    main()
