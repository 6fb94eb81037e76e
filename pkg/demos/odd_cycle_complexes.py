"""Hom(C5, K_n): homology, the Z/2 action that reverses the cycle, and the
height of its first Stiefel-Whitney class.

The height of w on Hom(C5, K_n) is at most n - 3.  This is exactly
what lets an odd-cycle test certify chi(G) >= h + 3.  We compare with
Hom(K2, K_n), whose quotient is real projective (n-2)-space and whose height
is the full n - 2.
"""
from homcx import build_hom, complete, cycle, homology, sw_height
from homcx.chains import induced_map_homology
from homcx.equivariant import equivariant_model, quotient_induced_map
from homcx.hom import complete_involution, cycle_involution, induced_map, restriction_to_edge

for n in (3, 4, 5):
    cap = 4 if n == 5 else None
    X = build_hom(cycle(5), complete(n), cap)
    HZ = homology(X.chain_complex("Z"))
    sigma = cycle_involution(2, complete(n), X)
    top = min(X.dimension, 3)
    h = sw_height(X, sigma, top, allow_disconnected=True)
    Y = build_hom(complete(2), complete(n))
    h2 = sw_height(Y, complete_involution(2, complete(n), Y), Y.dimension)
    trunc = f" (cells through dimension {cap}, homology trusted through {cap - 1})" if cap else ""
    print(f"Hom(C5,K{n}) f={X.f_vector()}{trunc}")
    print(f"  integral homology: {HZ}")
    print(f"  height of w: {h}   versus Hom(K2,K{n}): {h2}")

# Restricting a cell of Hom(C5,K5) to one edge of the cycle gives an
# equivariant map to Hom(K2,K5).  On the mod 2 homology of the quotients in
# degree 3 it is zero, which forces w^3 to vanish upstairs.
X = build_hom(cycle(5), complete(5), 4)
Y = build_hom(complete(2), complete(5))
s, t = cycle_involution(2, complete(5), X), complete_involution(2, complete(5), Y)
f = induced_map(restriction_to_edge(2), "contravariant", complete(5), X, Y)
maps = quotient_induced_map(f, equivariant_model(X, s, "cellular"), equivariant_model(Y, t, "cellular"), [3])
print(f"\nrestriction on quotient H3: {maps[3].matrix}")

# The reflection acts on H2(Hom(C5,K5); Z) = Z by a sign.
on_h2 = induced_map_homology(s.cellular_map().chain_map("Z"), [2])[2].matrix
print(f"reflection on H2(Hom(C5,K5); Z): {on_h2}")
