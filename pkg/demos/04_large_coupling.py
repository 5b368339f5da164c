"""
Strong coupling
===============

For a chain of fully linked blocks the single coefficient approaches 1
as g grows and the entropy behaves like log(g) / 2 plus a constant that
depends only on the block sizes.  Two estimates of that constant are
compared with the exact value; only one converges.
"""

import numpy as np

from netentangle import large_coupling_report, theorem1_d
from netentangle.reduction import entropy_from_d

sizes = (2, 3, 3, 2)
print(f"block sizes {sizes}")
print("     g       exact      two-term    rel.err    N/(4g m2 n2)  rel.err")
for row in large_coupling_report(sizes, gs=(1e1, 1e2, 1e3, 1e4, 1e5)):
    print(
        f"{row['g']:8.0e}  {row['exact']:.6f}  {row['sum']:.6f}  {row['sum_rel_error']:.2e}"
        f"   {row['collapsed']:.6f}      {row['collapsed_rel_error']:.2e}"
    )

print("S - log(g)/2:")
for g in np.geomspace(1e2, 1e6, 5):
    print(f"  g = {g:8.0e}   {entropy_from_d(theorem1_d(*sizes, g)) - 0.5 * np.log(g):.8f}")
