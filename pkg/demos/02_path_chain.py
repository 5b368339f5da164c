"""
The long path and its continued fraction
========================================

Cutting P_2n at the middle leaves one coefficient.  Folding each half of
the chain onto the cut gives a continued fraction, equivalently a ratio of
shifted Chebyshev polynomials.  Adding length far from the cut barely
matters: the coefficient settles quickly.
"""

from netentangle import entropy, make_family, path_d, path_d_polynomial, potential_matrix

for g in (0.1, 1.0, 10.0):
    print(f"g = {g}")
    for n in (1, 2, 4, 8, 16, 32):
        numeric = entropy(potential_matrix(make_family("path", 2 * n), g), range(n))
        print(
            f"  n = {n:2d}  d = {path_d(n, g):.12f}  "
            f"polynomial = {path_d_polynomial(n, g):.12f}  "
            f"SVD = {numeric.spectrum.d[0]:.12f}  S = {numeric.total:.6f}"
        )

# the fixed point of C(k) = 1 + 4g - 4g^2 / C(k-1) sets the limit
g = 1.0
c_inf = (1 + 4 * g + (1 + 8 * g) ** 0.5) / 2
print(f"limit at g = 1: {2 * g / c_inf:.12f} vs n = 50: {path_d(50, g):.12f}")
