"""Staircase fillings as k-triangulations, reverse staircase fillings as Dyck fans."""

from moonpipes import enumerate_maximal, filling_to_diagonals, filling_to_fan, ktriangulation_count
from moonpipes.shape import reverse_staircase, staircase

for n, k in [(5, 1), (6, 1), (7, 2)]:
    tri = [filling_to_diagonals(F) for F in enumerate_maximal(staircase(n), k)]
    fans = [filling_to_fan(F, k) for F in enumerate_maximal(reverse_staircase(n), k)]
    print(f"n={n}, k={k}: {len(tri)} k-triangulations, {len(fans)} fans, product formula {ktriangulation_count(n, k)}")

print("\nthe five triangulations of the pentagon:")
for D in (filling_to_diagonals(F) for F in enumerate_maximal(staircase(5), 1)):
    print("  ", sorted(D.diagonals))

print("\nfans of two Dyck paths for the heptagon:")
for fan in sorted((filling_to_fan(F, 2) for F in enumerate_maximal(reverse_staircase(7), 2)), key=lambda f: f.paths)[:5]:
    print("  ", " / ".join(fan.paths))
print("   ...")
