"""Scratch verification of the sign conventions (not part of the package)."""
from coderiv import *
from coderiv.ainfinity import ainfty_defect, check_weak_counit
from coderiv.resolutions import xn_resolution, bar_resolution, bar_structure
from coderiv.complexes import GradedBimoduleMap, TensorElement, amplified_compose

Q = Rationals()

# ---- xn:2 preset ----
P, S = xn_resolution(Q, 2, 8)
print("d^2:", end=" ")
P.validate_differential()
print("ok")
P.validate_augmentation()
print("mu d = 0 ok")

print("delta2(e1):", S.delta(2).on_gen((0, 0)).render())

defects = ainfty_defect(S, 4)
for N, r in defects.items():
    print(f"xn2 defect N={N}: zero={r.is_zero()}")
    if not r.is_zero():
        for gid, v in sorted(r.values.items()):
            print("   ", P.gen_label(gid), "->", v.render())

rep = check_weak_counit(S)
print("xn2 weak counit:", rep["ok"], rep["failures"][:2])

# Example family on k[x]/(x^2): a0(e1)=x, a1(e_i) = -i e_i
from coderiv.coderivations import MapTuple, coderivation_defect  # noqa


# build alpha manually without coderivations module (not written yet)
def build_alpha_x2(P, S):
    f = P.algebra.field
    a0 = GradedBimoduleMap(P, 0, 0)
    a0.values[(0, 0)] = TensorElement(P, 0, 0, {(1,): f.one})
    a1 = GradedBimoduleMap(P, 1, 0)
    for i in range(0, 9):
        gid = (1 - i, 0)
        if i == 0:
            continue
        a1.values[gid] = TensorElement(P, 1, 1 - i,
                                       {(0, gid, 0): f.of(-i)})
    return a0, a1
