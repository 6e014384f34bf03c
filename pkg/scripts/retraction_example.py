"""The homotopy on (1,2,3,1)(c1,c2,c3) and a full retraction check, over Z and Z/2."""
from s2cobar import surjection as sj
from s2cobar.hopf import tensor_hopf_algebra
from s2cobar.rings import ZZ, IntegersMod
from s2cobar.tildecobar import PrimitiveModel, worked_example, verify_retraction


def main():
    for ring in (IntegersMod(2), ZZ):
        M, x, hx, rec = worked_example(ring)
        print(f"over {ring}:")
        print(f"  j = {rec.j}, S = {sorted(rec.S)}")
        print(f"  o_alpha = {sj.fmt_element(rec.o_alpha)}")
        print(f"  b_alpha = {sj.fmt_element(rec.b_alpha)}")
        print(f"  h(x)    = {hx!r}")
        print(f"  dh + hd = 1 - p on x: {M.d(hx) + M.h(M.d(x)) == x - M.p(x)}")
        model = PrimitiveModel(tensor_hopf_algebra(ring, {"c1": 2, "c2": 2, "c3": 2}))
        rep = verify_retraction(model, max_arity=3, max_op_degree=4)
        print(f"  retraction equations, arity <= 3: {'ok' if rep.ok else 'FAILED'}")
        for name, (checked, failed) in rep.summary().items():
            print(f"    {name}: {checked} checked, {failed} failed")


if __name__ == "__main__":
    main()
