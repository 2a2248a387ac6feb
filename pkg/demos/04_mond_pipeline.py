"""The full pipeline on a map from a singular surface into C^3.

X = V(x^3 + y^3 - z^2) is a D4 surface and f = (x, y, z^3 + xz + y^2).  The
report ties together three numbers: the Jacobian module M(g), the torsion
K(g) of the image equation and the A_e-codimension of (X, f).  They satisfy
dim M(g) = dim K(g) + codim.  Independently the Samuel multiplicity of the
relative Jacobian module of a stable unfolding gives the image Milnor number.
"""

from germlab import local_ring, make_problem, mond_report, parse_poly

R = local_ring("x, y, z")
eq = parse_poly("x^3 + y^3 - z^2", R)
comps = [parse_poly(s, R) for s in ("x", "y", "z^3 + x*z + y^2")]
p = make_problem(R, comps, [eq], target_names=("X", "Y", "Z"))

r = mond_report(p)
print("image equation:", r.g)
print("lambda        :", r.lam)
print(f"dim M(g) = {r.dim_Mg}, dim K(g) = {r.dim_Kg}, codim_Ae(X,f) = {r.codim_Ae_Xf}")
print(f"mu_I = {r.mu_I}, verdict: {r.verdict}")
c = r.cm_certificate
print(f"Samuel multiplicity e = {c.e}, agrees with dim M(g): {c.passed}")
for w in r.warnings:
    print("warning:", w)
