#pragma once

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "conebounds/geometry.hpp"
#include "conebounds/quadrature.hpp"

namespace testsupport {

using namespace conebounds;

inline constexpr unsigned kSeed = 20240601;

inline Polygon square(double h = 1.0) { return Polygon({{-h, -h}, {h, -h}, {h, h}, {-h, h}}); }
inline Polygon rectangle(double l, double L) { return Polygon({{-l, -L}, {l, -L}, {l, L}, {-l, L}}); }
inline Polygon unit_triangle() { return Polygon({{0, 0}, {1, 0}, {0, 1}}); }
inline Polygon hexagon(double r = 1.0) {
  std::vector<Vec2> v;
  for (int k = 0; k < 6; ++k) v.push_back({r * std::cos(k * std::numbers::pi / 3), r * std::sin(k * std::numbers::pi / 3)});
  return Polygon(v);
}
inline Disc unit_disc() { return Disc({0, 0}, 1.0); }

/// Star-shaped polygon around a random centre with sorted random angles.
inline Polygon random_star_polygon(std::mt19937& rng, bool convex = false) {
  std::uniform_int_distribution<int> count(3, 9);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const int n = count(rng);
  std::vector<double> gaps(n);
  double total = 0.0;
  do {
    total = 0.0;
    for (auto& g : gaps) total += (g = 0.2 + unit(rng));
  } while (*std::max_element(gaps.begin(), gaps.end()) / total > 0.45);
  std::vector<double> angles;
  double a = 2.0 * std::numbers::pi * unit(rng);
  for (double g : gaps) angles.push_back(a += 2.0 * std::numbers::pi * g / total);
  const Vec2 c{2.0 * unit(rng) - 1.0, 2.0 * unit(rng) - 1.0};
  const double ax = 0.5 + unit(rng), ay = 0.5 + unit(rng);
  std::vector<Vec2> v;
  for (double a : angles) {
    const double r = convex ? 1.0 : 0.5 + unit(rng);
    v.push_back({c.x + ax * r * std::cos(a), c.y + ay * r * std::sin(a)});
  }
  return Polygon(v);
}

/// Polar Gauss rule around the disc centre.
template <class F>
double disc_oracle(F&& f, const Disc& d, int n = 64) {
  const auto r = quad::gauss_legendre(static_cast<std::size_t>(n));
  double s = 0.0;
  for (std::size_t i = 0; i < r.nodes.size(); ++i) {
    const double rho = 0.5 * d.radius * (r.nodes[i] + 1.0);
    for (int k = 0; k < 4 * n; ++k) {
      const double phi = 2.0 * std::numbers::pi * (k + 0.5) / (4 * n);
      s += 0.5 * d.radius * r.weights[i] * rho * (2.0 * std::numbers::pi / (4 * n)) *
           f(d.center.x + rho * std::cos(phi), d.center.y + rho * std::sin(phi));
    }
  }
  return s;
}

/// ∫_ω f over a signed fan of collapsed Gauss rules.
template <class F>
double polygon_oracle(F&& f, const Polygon& p, int order = 16) {
  return quad::polygon(f, p, quad::gauss_legendre(static_cast<std::size_t>(order)), 2);
}

}  // namespace testsupport
