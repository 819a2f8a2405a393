#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <numbers>
#include <string_view>
#include <utility>
#include <vector>

#include "conebounds/error.hpp"
#include "conebounds/geometry.hpp"

namespace conebounds {

struct MagneticField {
  double B1 = 0.0, B2 = 0.0, B3 = 0.0;

  double norm() const { return std::sqrt(B1 * B1 + B2 * B2 + B3 * B3); }
  Vec3 vec() const { return {B1, B2, B3}; }
  MagneticField scaled(double t) const { return {t * B1, t * B2, t * B3}; }
};

/// Linear plane potential A'(x) = [[a, b], [c, d]] x. Admissible gauges have c - b = 1.
struct TransverseGauge {
  double a = 0.0, b = 0.0, c = 0.0, d = 0.0;

  double curl() const { return c - b; }
  std::array<double, 2> apply(double x1, double x2) const {
    return {a * x1 + b * x2, c * x1 + d * x2};
  }
  TransverseGauge scaled(double t) const { return {t * a, t * b, t * c, t * d}; }
};

/// ∫_ω |G x|² written through the raw second moments (the integrand is a quadratic form).
inline double gauge_norm_sq(const TransverseGauge& g, const Moments& m) {
  return (g.a * g.a + g.c * g.c) * m.M2 + 2.0 * (g.a * g.b + g.c * g.d) * m.M1 +
         (g.b * g.b + g.d * g.d) * m.M0;
}

/// Minimum of ∫_ω |A'|² over A' with unit curl: (M0 M2 - M1²) / (M0 + M2).
inline double transverse_norm_sq(const Moments& m) {
  const double s = m.M0 + m.M2;
  if (!(s > 0.0)) throw DomainError("section has vanishing second moments");
  return (m.M0 * m.M2 - m.M1 * m.M1) / s;
}

/// Unique minimizer of ‖A'‖_{L²(ω)} among linear potentials with unit curl:
/// (1/(M0+M2)) [[M1, -M2], [M0, -M1]].
inline TransverseGauge optimal_transverse_gauge(const Moments& m) {
  const double s = m.M0 + m.M2;
  if (!(s > 0.0)) throw DomainError("section has vanishing second moments");
  return {m.M1 / s, -m.M2 / s, m.M0 / s, -m.M1 / s};
}

/// Independent route to the optimal gauge: the objective F(α, β, γ) = ‖[[α, β], [1+β, γ]]‖² is
/// probed at a stencil of points, its gradient and Hessian recovered by polarization, and the
/// 3×3 normal equations solved by Gaussian elimination with partial pivoting.
inline TransverseGauge brute_force_gauge(const Moments& m) {
  auto objective = [&](const std::array<double, 3>& p) {
    return gauge_norm_sq({p[0], p[1], 1.0 + p[1], p[2]}, m);
  };
  const double f0 = objective({0.0, 0.0, 0.0});
  std::array<double, 3> grad{};
  double hess[3][3];
  for (int i = 0; i < 3; ++i) {
    std::array<double, 3> ep{}, em{};
    ep[i] = 1.0;
    em[i] = -1.0;
    const double fp = objective(ep), fm = objective(em);
    grad[i] = 0.5 * (fp - fm);
    hess[i][i] = fp + fm - 2.0 * f0;
  }
  for (int i = 0; i < 3; ++i) {
    for (int j = i + 1; j < 3; ++j) {
      std::array<double, 3> eij{}, ei{}, ej{};
      eij[i] = eij[j] = 1.0;
      ei[i] = 1.0;
      ej[j] = 1.0;
      // F(ei+ej) - F(ei) - F(ej) + F(0) = H_ij for a quadratic F
      hess[i][j] = hess[j][i] = objective(eij) - objective(ei) - objective(ej) + f0;
    }
  }
  double aug[3][4];
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) aug[i][j] = hess[i][j];
    aug[i][3] = -grad[i];
  }
  double scale = 0.0;
  for (auto& row : hess)
    for (double v : row) scale = std::max(scale, std::abs(v));
  for (int col = 0; col < 3; ++col) {
    int piv = col;
    for (int r = col + 1; r < 3; ++r)
      if (std::abs(aug[r][col]) > std::abs(aug[piv][col])) piv = r;
    if (!(std::abs(aug[piv][col]) > 1e-14 * scale)) throw DomainError("singular normal equations");
    for (int j = 0; j < 4; ++j) std::swap(aug[col][j], aug[piv][j]);
    for (int r = col + 1; r < 3; ++r) {
      const double f = aug[r][col] / aug[col][col];
      for (int j = col; j < 4; ++j) aug[r][j] -= f * aug[col][j];
    }
  }
  std::array<double, 3> p{};
  for (int i = 2; i >= 0; --i) {
    double s = aug[i][3];
    for (int j = i + 1; j < 3; ++j) s -= aug[i][j] * p[j];
    p[i] = s / aug[i][i];
  }
  return {p[0], p[1], 1.0 + p[1], p[2]};
}

/// e(B, ω) from the normalized moments.
inline double e_constant(const MagneticField& B, const Moments& m) {
  const double s = m.m0 + m.m2;
  if (!(s > 0.0)) throw DomainError("section has vanishing second moments");
  const double q = B.B3 * B.B3 * (m.m0 * m.m2 - m.m1 * m.m1) / s + B.B2 * B.B2 * m.m2 +
                   B.B1 * B.B1 * m.m0 - 2.0 * B.B1 * B.B2 * m.m1;
  return std::sqrt(std::max(0.0, q));
}

struct BoundResult {
  double eConstant = 0.0;
  std::vector<std::pair<int, double>> bounds;  // (n, (4n-1) e)
  TransverseGauge optimalGauge;
  double transverseNormSq = 0.0;
};

/// Upper bounds (4n-1) e(B, ω) on the first nMax Rayleigh quotients of the cone over ω.
inline BoundResult rayleigh_upper_bounds(const MagneticField& B, const Moments& m, int nMax) {
  if (nMax < 1) throw UsageError("nMax must be at least 1");
  BoundResult r;
  r.eConstant = e_constant(B, m);
  r.optimalGauge = optimal_transverse_gauge(m);
  r.transverseNormSq = transverse_norm_sq(m);
  r.bounds.reserve(static_cast<std::size_t>(nMax));
  for (int n = 1; n <= nMax; ++n) r.bounds.emplace_back(n, (4.0 * n - 1.0) * r.eConstant);
  return r;
}

// ---------------------------------------------------------------------------
// Leading terms of known small-angle asymptotics, for comparison.

enum class AsymptoticKind { Sector, CircularCone, Wedge, CircularConeNth };

struct AsymptoticParams {
  double alpha = 0.0;  // opening
  double beta = 0.0;   // angle between B and the cone axis
  double Bnorm = 1.0;
  int n = 1;
};

inline AsymptoticKind parse_asymptotic_kind(std::string_view s) {
  if (s == "sector") return AsymptoticKind::Sector;
  if (s == "circularCone") return AsymptoticKind::CircularCone;
  if (s == "wedge") return AsymptoticKind::Wedge;
  if (s == "circularConeNth") return AsymptoticKind::CircularConeNth;
  throw UsageError("unknown asymptotic kind '" + std::string(s) + "'");
}

inline double reference_asymptotics(AsymptoticKind kind, const AsymptoticParams& p) {
  const double sb = std::sin(p.beta);
  switch (kind) {
    case AsymptoticKind::Sector:
    case AsymptoticKind::Wedge:
      return p.Bnorm * p.alpha / std::sqrt(3.0);
    case AsymptoticKind::CircularCone:
      return p.Bnorm * std::sqrt(1.0 + sb * sb) * 3.0 * p.alpha / (4.0 * std::numbers::sqrt2);
    case AsymptoticKind::CircularConeNth:
      if (p.n < 1) throw UsageError("eigenvalue index must be at least 1");
      return p.Bnorm * (4.0 * p.n - 1.0) / std::pow(2.0, 2.5) * std::sqrt(1.0 + sb * sb) * p.alpha;
  }
  throw UsageError("unknown asymptotic kind");
}

inline double reference_asymptotics(std::string_view kind, const AsymptoticParams& p) {
  return reference_asymptotics(parse_asymptotic_kind(kind), p);
}

}  // namespace conebounds
