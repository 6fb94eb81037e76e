"""Two ways Hom complexes simplify.

Folding: deleting a vertex whose neighborhood is contained in another's does
not change Hom(-, K_n) up to homotopy, so every tree behaves like an edge.

Neighborhoods: Hom(K2, G) has the homology of the neighborhood complex N(G).
"""
from homcx import build_hom, complete, cycle, fold_reduce, homology, kneser, neighborhood_complex, path, star
from homcx.chains import simplicial_chain

for T in (path(4), star(3)):
    R, deleted = fold_reduce(T)
    print(f"{T.name}: folds away vertices {deleted}, leaving {R.n} vertices")
    for n in (3, 4):
        print(f"  Hom({T.name},K{n}): {homology(build_hom(T, complete(n)).chain_complex('Z'))}"
              f"   Hom(K2,K{n}): {homology(build_hom(complete(2), complete(n)).chain_complex('Z'))}")

for G in (cycle(5), kneser(5, 2)):
    a = homology(build_hom(complete(2), G).chain_complex("Z"))
    b = homology(simplicial_chain(neighborhood_complex(G), "Z"))
    print(f"{G.name}: Hom(K2,G) {a}   N(G) {b}")
