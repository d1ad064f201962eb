"""Edelman-Greene tableaux on a moon shape that is not a stack shape.

The Q tableaux of the two extreme fillings bound a set of candidate
tableaux, but not every candidate comes from a filling.
"""

from moonpipes.eg import COUNTEREXAMPLE_SHAPE, check_counterexample

rep = check_counterexample()
print("shape (rows, first column, last column):", COUNTEREXAMPLE_SHAPE.rows)
print("P =", rep.P.rows)
print("Q of d_top =", rep.Q_top.rows)
print("Q of d_bot =", rep.Q_bot.rows)
print(f"{len(rep.between)} tableaux lie entrywise between them, {len(rep.image)} come from maximal fillings")
for T in sorted(rep.between - rep.image, key=lambda T: T.rows):
    print("between but never attained:", T.rows)
for D, outside in zip(rep.witness_preimages, rep.preimages_outside):
    print(f"  its pipe dream {D.label()} has crosses outside the shape: {outside}")
