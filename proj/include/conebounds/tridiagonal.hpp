#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <span>
#include <vector>

#include "conebounds/error.hpp"

namespace conebounds {

/// Symmetric tridiagonal matrix: `diag` of size n, `off` of size n-1.
struct SymTridiagonal {
  std::vector<double> diag;
  std::vector<double> off;

  std::size_t size() const noexcept { return diag.size(); }
};

/// Number of eigenvalues strictly below x (Sturm sequence via the LDLᵀ pivots).
inline std::size_t sturm_count(const SymTridiagonal& t, double x) {
  const std::size_t n = t.size();
  const double tiny = std::numeric_limits<double>::min();
  std::size_t count = 0;
  double q = t.diag[0] - x;
  if (q < 0.0) ++count;
  for (std::size_t i = 1; i < n; ++i) {
    if (std::abs(q) < tiny) q = -tiny;
    q = t.diag[i] - x - t.off[i - 1] * t.off[i - 1] / q;
    if (q < 0.0) ++count;
  }
  return count;
}

/// The k smallest eigenvalues in ascending order, by bisection on Gershgorin bounds.
inline std::vector<double> smallest_eigenvalues(const SymTridiagonal& t, std::size_t k,
                                                double rel_tol = 1e-15) {
  const std::size_t n = t.size();
  if (n == 0 || t.off.size() + 1 != n) throw UsageError("malformed tridiagonal matrix");
  if (k == 0 || k > n) throw UsageError("requested eigenvalue count out of range");
  double lo = std::numeric_limits<double>::max(), hi = std::numeric_limits<double>::lowest();
  for (std::size_t i = 0; i < n; ++i) {
    const double r = (i > 0 ? std::abs(t.off[i - 1]) : 0.0) + (i + 1 < n ? std::abs(t.off[i]) : 0.0);
    lo = std::min(lo, t.diag[i] - r);
    hi = std::max(hi, t.diag[i] + r);
  }
  const double scale = std::max(std::abs(lo), std::abs(hi));
  std::vector<double> out(k);
  double left = lo;
  for (std::size_t j = 0; j < k; ++j) {
    // the (j+1)-th eigenvalue is the smallest x with sturm_count(x) > j
    double a = left, b = hi;
    while (b - a > rel_tol * scale + 2.0 * std::numeric_limits<double>::min()) {
      const double m = 0.5 * (a + b);
      if (m <= a || m >= b) break;
      if (sturm_count(t, m) > j)
        b = m;
      else
        a = m;
    }
    out[j] = 0.5 * (a + b);
    left = a;
  }
  return out;
}

}  // namespace conebounds
