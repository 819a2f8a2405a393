#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <functional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "conebounds/error.hpp"
#include "conebounds/gauge_opt.hpp"
#include "conebounds/geometry.hpp"
#include "conebounds/quadrature.hpp"
#include "conebounds/tridiagonal.hpp"

namespace conebounds {

/// Coefficient λ of the weighted half-line form p[λ](u) = ∫(|u'|² + λx²|u|²) x² dx.
class ReducedProblem {
 public:
  explicit ReducedProblem(double lambda) : lambda_(lambda) {
    if (!(lambda > 0.0) || !std::isfinite(lambda))
      throw DomainError("reduced problem needs lambda > 0");
  }
  double lambda() const noexcept { return lambda_; }

 private:
  double lambda_;
};

struct GridSpec {
  double xMax = 12.0;
  std::size_t n = 4000;  // interior points

  void validate() const {
    if (!(xMax > 0.0)) throw UsageError("grid xMax must be positive");
    if (n < 16) throw UsageError("grid needs at least 16 interior points");
  }
};

/// xMax = 12 λ^{-1/4}, n = 4000.
inline GridSpec default_grid(double lambda) { return {12.0 * std::pow(lambda, -0.25), 4000}; }

/// Linear, x3-independent potential A(x) = (G (x1, x2), c1 x1 + c2 x2).
struct FullGauge {
  TransverseGauge planar;
  double c1 = 0.0, c2 = 0.0;

  MagneticField curl() const { return {c2, -c1, planar.curl()}; }

  /// Gauge in 𝒜(B) built from a unit-curl plane potential.
  static FullGauge from_field(const MagneticField& B, const TransverseGauge& unit) {
    return {unit.scaled(B.B3), -B.B2, B.B1};
  }

  std::array<double, 3> apply(double x1, double x2) const {
    const auto t = planar.apply(x1, x2);
    return {t[0], t[1], c1 * x1 + c2 * x2};
  }

  FullGauge scaled(double s) const { return {planar.scaled(s), s * c1, s * c2}; }
};

/// ‖A‖²_{L²(ω)} / |ω| for a linear gauge, exact through the second moments. Zero is allowed.
inline double gauge_mean_square(const FullGauge& A, const Moments& m) {
  const double a3 = A.c1 * A.c1 * m.M2 + 2.0 * A.c1 * A.c2 * m.M1 + A.c2 * A.c2 * m.M0;
  return (gauge_norm_sq(A.planar, m) + a3) / m.area;
}

inline double lambda_from_gauge(const FullGauge& A, const Moments& m) {
  const double lambda = gauge_mean_square(A, m);
  if (!(lambda > 0.0)) throw DomainError("gauge gives lambda = 0; the reduced problem needs lambda > 0");
  return lambda;
}

/// Same, additionally checking that curl A equals the expected field.
inline double lambda_from_gauge(const FullGauge& A, const MagneticField& B, const Moments& m) {
  const MagneticField c = A.curl();
  const double scale = std::max({1.0, B.norm(), c.norm()});
  if (std::abs(c.B1 - B.B1) > 1e-12 * scale || std::abs(c.B2 - B.B2) > 1e-12 * scale ||
      std::abs(c.B3 - B.B3) > 1e-12 * scale)
    throw UsageError("gauge curl does not match the magnetic field");
  return lambda_from_gauge(A, m);
}

inline double lambda_from_gauge(const FullGauge& A, const Section& s) {
  return lambda_from_gauge(A, moments(s));
}

/// λ^{1/2}(4n - 1), n = 1..nMax.
inline std::vector<double> exact_reduced_spectrum(double lambda, int nMax) {
  const ReducedProblem p(lambda);
  if (nMax < 1) throw UsageError("nMax must be at least 1");
  std::vector<double> out;
  for (int n = 1; n <= nMax; ++n) out.push_back(std::sqrt(p.lambda()) * (4.0 * n - 1.0));
  return out;
}

struct FdSpectrum {
  std::vector<double> values;
  double h = 0.0;
  std::vector<std::string> warnings;
};

/// Smallest eigenvalues of -U'' + λx²U, U(0) = U(xMax) = 0, by second-order central
/// differences (the substitution U = x u removes the weight).
inline FdSpectrum fd_halfline_spectrum(double lambda, const GridSpec& grid, int nMax) {
  const ReducedProblem p(lambda);
  grid.validate();
  if (nMax < 1 || static_cast<std::size_t>(nMax) > grid.n)
    throw UsageError("nMax out of range for the grid");
  const double h = grid.xMax / static_cast<double>(grid.n + 1);
  SymTridiagonal t;
  t.diag.resize(grid.n);
  t.off.assign(grid.n - 1, -1.0 / (h * h));
  for (std::size_t j = 0; j < grid.n; ++j) {
    const double x = h * static_cast<double>(j + 1);
    t.diag[j] = 2.0 / (h * h) + p.lambda() * x * x;
  }
  FdSpectrum out{smallest_eigenvalues(t, static_cast<std::size_t>(nMax)), h, {}};
  const double ground = 3.0 * std::sqrt(p.lambda());
  if (std::abs(out.values.front() - ground) / ground > 0.1)
    out.warnings.push_back("grid too coarse: ground level off by more than 10%");
  return out;
}

inline FdSpectrum fd_halfline_spectrum(double lambda, int nMax) {
  return fd_halfline_spectrum(lambda, default_grid(lambda), nMax);
}

namespace detail {

// Fourth-order finite-difference derivative of uniformly spaced samples.
inline std::vector<double> derivative4(std::span<const double> u, double h) {
  const std::size_t n = u.size();
  std::vector<double> d(n);
  const double s = 1.0 / (12.0 * h);
  for (std::size_t j = 2; j + 2 < n; ++j)
    d[j] = (u[j - 2] - 8.0 * u[j - 1] + 8.0 * u[j + 1] - u[j + 2]) * s;
  d[0] = (-25.0 * u[0] + 48.0 * u[1] - 36.0 * u[2] + 16.0 * u[3] - 3.0 * u[4]) * s;
  d[1] = (-3.0 * u[0] - 10.0 * u[1] + 18.0 * u[2] - 6.0 * u[3] + u[4]) * s;
  d[n - 1] = -(-25.0 * u[n - 1] + 48.0 * u[n - 2] - 36.0 * u[n - 3] + 16.0 * u[n - 4] - 3.0 * u[n - 5]) * s;
  d[n - 2] = -(-3.0 * u[n - 1] - 10.0 * u[n - 2] + 18.0 * u[n - 3] - 6.0 * u[n - 4] + u[n - 5]) * s;
  return d;
}

}  // namespace detail

/// p[λ](u) / ‖u‖²_w for u sampled at x_j = j·xMax/(N-1), N odd. Composite Simpson on the
/// samples with a fourth-order derivative; u must have decayed by xMax.
inline double rayleigh_quotient_1d(std::span<const double> u, double xMax, double lambda) {
  if (u.size() < 5 || u.size() % 2 == 0) throw UsageError("need an odd number (>= 5) of samples");
  if (!(xMax > 0.0)) throw UsageError("xMax must be positive");
  if (!(lambda >= 0.0)) throw DomainError("lambda must be nonnegative");
  const double h = xMax / static_cast<double>(u.size() - 1);
  const auto du = detail::derivative4(u, h);
  std::vector<double> num(u.size()), den(u.size());
  for (std::size_t j = 0; j < u.size(); ++j) {
    const double x = h * static_cast<double>(j);
    num[j] = (du[j] * du[j] + lambda * x * x * u[j] * u[j]) * x * x;
    den[j] = u[j] * u[j] * x * x;
  }
  const double d = quad::simpson(den, h);
  if (!(d > 0.0)) throw DomainError("zero function has no Rayleigh quotient");
  return quad::simpson(num, h) / d;
}

/// Samples f on the uniform grid used by rayleigh_quotient_1d.
template <class F>
std::vector<double> sample_uniform(F&& f, double xMax, std::size_t count) {
  std::vector<double> u(count);
  for (std::size_t j = 0; j < count; ++j)
    u[j] = f(xMax * static_cast<double>(j) / static_cast<double>(count - 1));
  return u;
}

/// Radial profile φ(x3) with its derivative.
struct Profile {
  std::function<double(double)> value;
  std::function<double(double)> derivative;
};

struct QuotientPair {
  double cone = 0.0;     // 3D quadrature over the truncated cone
  double reduced = 0.0;  // weighted 1D quotient with λ from the moments
};

/// Evaluates q[A, C_ω](φ)/‖φ‖² by 3D quadrature over {0 < x3 < T, x' ∈ x3 ω} and the reduced
/// quotient p[λ](φ)/‖φ‖²_w by 1D quadrature on (0, T). λ = 0 (A = 0) is accepted.
inline QuotientPair cone_quotient_consistency(const Profile& phi, const FullGauge& A, const Section& omega,
                                              double truncation, double rel_tol = 1e-4) {
  if (!(truncation > 0.0)) throw UsageError("truncation must be positive");
  const quad::Rule outer = quad::gauss_legendre(10);
  const quad::Rule inner = quad::gauss_legendre(4);

  auto cone_quotient = [&](std::size_t panels) {
    double num = 0.0, den = 0.0;
    const double h = truncation / static_cast<double>(panels);
    for (std::size_t p = 0; p < panels; ++p) {
      const double mid = h * (static_cast<double>(p) + 0.5);
      for (std::size_t k = 0; k < outer.nodes.size(); ++k) {
        const double x3 = mid + 0.5 * h * outer.nodes[k];
        const double w = 0.5 * h * outer.weights[k];
        const double f = phi.value(x3), df = phi.derivative(x3);
        const Section slice = scale_section(omega, x3);
        auto energy = [&](double x1, double x2) {
          const auto a = A.apply(x1, x2);
          return (a[0] * a[0] + a[1] * a[1] + a[2] * a[2]) * f * f + df * df;
        };
        auto mass = [&](double, double) { return f * f; };
        if (const auto* poly = std::get_if<Polygon>(&slice)) {
          num += w * quad::polygon(energy, *poly, inner);
          den += w * quad::polygon(mass, *poly, inner);
        } else {
          num += w * quad::disc(energy, std::get<Disc>(slice), inner, 4);
          den += w * quad::disc(mass, std::get<Disc>(slice), inner, 4);
        }
      }
    }
    if (!(den > 0.0)) throw DomainError("profile vanishes on the truncated cone");
    return num / den;
  };

  const double lambda = gauge_mean_square(A, moments(omega));
  auto reduced_quotient = [&](std::size_t panels) {
    auto num = [&](double x) {
      const double f = phi.value(x), df = phi.derivative(x);
      return (df * df + lambda * x * x * f * f) * x * x;
    };
    auto den = [&](double x) {
      const double f = phi.value(x);
      return f * f * x * x;
    };
    return quad::composite_gauss(num, 0.0, truncation, panels, outer) /
           quad::composite_gauss(den, 0.0, truncation, panels, outer);
  };

  const double coarse = cone_quotient(24), fine = cone_quotient(48);
  if (std::abs(coarse - fine) > 0.1 * rel_tol * std::abs(fine))
    throw AccuracyError("cone quadrature did not converge");
  return {fine, reduced_quotient(48)};
}

}  // namespace conebounds
