"""The support filtration of Hom_+(C5, K_n) and its first two pages.

F_s collects the simplices whose lists are nonempty on at most s+1 vertices
of C5.  Each layer F_s / F_{s-1} splits as a sum over (s+1)-subsets S of
shifted cellular chains of Hom(C5[S], K_n), which we check cell by cell.
"""
from homcx import cycle
from homcx.filtration import (abutment_check, e1_page, e2_row, support_filtration, tableau_csv,
                              verify_e1_splitting)

for n in (3, 4):
    F = support_filtration(cycle(5), n)
    print(f"Hom_+(C5,K{n}): f={F.complex.f_vector()}")
    print("  splitting holds for s = 0..4:", [verify_e1_splitting(cycle(5), n, s, F) for s in range(5)])
    E1 = e1_page(F)
    print("  E^1 tableau:")
    for line in tableau_csv(E1).splitlines():
        print("    " + line)
    row = e2_row(E1, 0)
    print("  E^2 along d = s:", {s: str(g) for (d, s), g in row.items()})
    print("  d1 squares to zero:", E1.check_d1_squared())

# For n = 3 the top corner E^1_{4,4} is Z^2: Hom(C5,K3) has two components.
# The E^2 row still leaves a single Z there.  For n = 4 the corner is Z.
print("\nabutment check on Hom_+(C5,K3) over F2:", abutment_check(support_filtration(cycle(5), 3)))
