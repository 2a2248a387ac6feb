"""Standard bases in a local ring.

Under a local ordering the leading term is the *lowest* degree part, so
x - x^2 is a unit multiple of x and the ideal (x - x^2, y^2) has the same
colength as (x, y^2).  The staircase of the leading ideal counts the
dimension of the quotient.
"""

from germlab import IdealHandle, is_member, local_ring, mora_normal_form, parse_poly, std_basis, vs_dimension
from germlab.stdbasis import standard_monomials

R = local_ring("x, y")
I = IdealHandle(R, [parse_poly("x - x^2", R), parse_poly("y^2 - x^3", R)])

print("generators:    ", ", ".join(str(g) for g in I.gens))
print("standard basis:", ", ".join(str(g) for g in std_basis(I).gens))
print("dim O/I       =", vs_dimension(I))
print("staircase     :", [e for _, e in standard_monomials(I)])

# x is in the local ideal although x - x^2 alone does not divide it globally
x, y = R.gens()
print("x in I?        ", is_member(x, I))
print("NF(x*y + y^3) =", mora_normal_form(x * y + y**3, I))

# a non-isolated ideal has infinite colength
print("dim O/(xy)    =", vs_dimension(IdealHandle(R, [x * y])))
