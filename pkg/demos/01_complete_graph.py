"""
Entanglement inside a complete graph
====================================

Every node of K_N talks to every other node, so a cut into |A| = m and
|B| = N - m nodes keeps a single nonzero Schmidt coefficient.  The
entropy grows with the size of the smaller side.
"""

import numpy as np

from netentangle import corollary1_d, entropy, make_family, potential_matrix

N, g = 8, 1.0
v = potential_matrix(make_family("complete", N), g)

print(f"K_{N} at g = {g}")
print(" m   S (nats)    d_max      closed-form d   rank")
for m in range(1, N // 2 + 1):
    res = entropy(v, range(m))
    print(
        f"{m:2d}   {res.total:.6f}   {res.spectrum.d[0]:.9f}   "
        f"{corollary1_d(m, N - m, g):.9f}     {res.spectrum.rank}"
    )

# weak coupling switches the network off, strong coupling drives S up like log g / 2
for g in np.geomspace(1e-3, 1e3, 7):
    s = entropy(potential_matrix(make_family("complete", N), g), range(N // 2)).total
    print(f"g = {g:8.3g}   S = {s:.6f}")
