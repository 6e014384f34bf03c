"""Where the insertion homotopy identity dh + hd = 1 + t breaks, and where it holds."""
from s2cobar import surjection as sj
from s2cobar.rings import ZZ, IntegersMod
from s2cobar.suites import homotopy_law_cases


def main():
    for ring in (ZZ, IntegersMod(2)):
        cases, bad = homotopy_law_cases(3, 3, ring)
        print(f"over {ring}: {len(bad)} of {cases} cases fail")
        for u, j, S, e in bad[:5]:
            print(f"  u={sj.fmt(u)} j={j} S={sorted(S)}  (dh+hd) - (1+t) = {sj.fmt_element(e)}")
        cases, bad = homotopy_law_cases(3, 3, ring, domain="initial")
        print(f"  S = leading entries of u only: {len(bad)} of {cases} fail")


if __name__ == "__main__":
    main()
