"""Image equation, conductor and first Fitting ideal of the cross-cap.

The cross-cap (x, y^2, xy) parametrizes the Whitney umbrella Z^2 = X^2 Y.
The conductor of the image ring in the source ring is generated by a
single function lambda; pulling back the conductor gives the first Fitting
ideal, whose zero set is the double-point line X = Z = 0.
"""

from germlab import (
    conductor_lambda,
    fitting_first,
    image_equation,
    is_member,
    jacobian_module_Mg,
    local_ring,
    make_problem,
)

R = local_ring("x, y")
x, y = R.gens()
p = make_problem(R, [x, y**2, x * y], target_names=("X", "Y", "Z"))
g, ghat = image_equation(p)
print("image equation g =", g)

lam = conductor_lambda(p, ghat)
print("conductor generator lambda =", lam)

F1 = fitting_first(p, lam)
print("F1 generators:", ", ".join(str(h) for h in F1.ideal.gens))
X, Y, Z = p.fhat.target.gens()
print("X in F1:", is_member(X, F1.ideal), " Y in F1:", is_member(Y, F1.ideal))
print("Krull dimension of the double-point locus:", F1.krull_dimension)

# the cross-cap is stable, so the Jacobian module vanishes
print("dim M(g) =", jacobian_module_Mg(p).dim)
