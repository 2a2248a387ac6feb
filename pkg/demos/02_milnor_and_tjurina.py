"""Milnor and Tjurina numbers of complete intersections.

The curve V(x^2 + y^2 + z^2, xy) in C^3 is an ICIS.  Its Milnor number is
computed by the Le-Greuel recursion after a random linear change of the
equations; the chain records the dimensions met on the way down.  The
result does not depend on the seed.
"""

from germlab import (
    MapGerm,
    codim_Ke,
    local_ring,
    milnor_hypersurface,
    milnor_icis,
    parse_poly,
    tjurina_hypersurface,
    tjurina_icis,
    validate_icis,
    weighted_homogeneous_weights,
)

R = local_ring("x, y, z")
x, y, z = R.gens()
X = validate_icis([x**2 + y**2 + z**2, x * y], R)
print(f"ICIS of dimension {X.dimension}, isolated: {X.has_isolated_singularity}")

for seed in range(3):
    res = milnor_icis(X, seed=seed)
    print(f"seed {seed}: mu = {res.mu}, chain dims = {[s['dim'] for s in res.chain]}")

print("tau =", tjurina_icis(X))
f = MapGerm(R, local_ring("A, B"), (x**2 + y**2 + z**2, x * y))
d, basis = codim_Ke(f)
print(f"codim K_e = {d}, basis of the normal space: {', '.join(str(v) for v in basis)}")
print("weights:", weighted_homogeneous_weights([x**2 + y**2 + z**2, x * y]))

# a curve that is not weighted homogeneous has tau < mu
P = local_ring("x, y")
g = parse_poly("x^4 + y^5 + x^2*y^3", P)
print(f"\n{g}: mu = {milnor_hypersurface(g).mu}, tau = {tjurina_hypersurface(g)}")
