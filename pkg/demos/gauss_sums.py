"""Quadratic Gauss sums recovered from a truncated q-series.

For odd M the sum of (-1)^k q^(-k^2/2) has a closed form involving sqrt(N)
and a Jacobi symbol.  The script tabulates both sides for a few roots.
"""

from qunity import check_gauss_sum, make_root

for M, N in [(1, 3), (1, 4), (3, 7), (5, 12), (7, 15)]:
    rep = check_gauss_sum(make_root(M, N), "gauss")
    print(f"M={M:2d} N={N:2d}  direct {rep.lhs:.6f}  closed {rep.rhs:.6f}  "
          f"residual {rep.rel_residual:.1e}")
