"""Where the continuous q-Jacobi weights are real and positive.

For M = 1 the closed trigonometric form gives positive weights over the
whole square -1 < alpha, beta < 1.  The script prints the smallest weight
on a coarse grid, then the two named cases with constant and sine weights.
"""

import numpy as np

from qunity.families.cqjacobi import theorem3_weights

N = 9
grid = np.linspace(-0.9, 0.9, 7)
print("min_s w_s for N = 9 (rows alpha, columns beta)")
for alpha in grid:
    row = [theorem3_weights(alpha, beta, N).w.min() for beta in grid]
    print(f"{alpha:+.2f} " + " ".join(f"{v:.1e}" for v in row))

print("alpha = beta = -1/2:", np.round(theorem3_weights(-0.5, -0.5, N).w, 6))
print("alpha = beta = 0:   ", np.round(theorem3_weights(0.0, 0.0, N).w, 6))
