"""The ten maximal 1-fillings of a small moon shape and where they sit among pipe dreams.

    python demos/ten_fillings.py [out.dot]
"""

import sys

from moonpipes import MoonShape, d_bot, d_top, enumerate_maximal, from_filling, rc_poset, shape_permutation

M = MoonShape(((1, 2, 3), (2, 1, 4), (3, 1, 4), (4, 2, 3)))
k = 1

fillings = enumerate_maximal(M, k)
print(f"{len(fillings)} maximal fillings with no NE chain longer than {k}\n")
for F in fillings:
    print(F.render(), end="\n\n")

w = shape_permutation(M, k)
P = rc_poset(w)
print(f"every filling is a reduced pipe dream of w = {w}")
print(f"RC(w) has {len(P)} pipe dreams; the fillings are the interval between")
print(d_bot(M, k).render(), "(bottom)", sep="\n")
print(d_top(M, k).render(), "(top)", sep="\n")

if len(sys.argv) > 1:
    dreams = [from_filling(F).with_ambient(len(w)) for F in fillings]
    with open(sys.argv[1], "w") as fh:
        fh.write(P.to_dot(highlight=dreams))
    print(f"wrote the Hasse diagram to {sys.argv[1]}")
