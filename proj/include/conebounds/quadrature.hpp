#pragma once

#include <cmath>
#include <cstddef>
#include <numbers>
#include <span>
#include <utility>
#include <vector>

#include "conebounds/error.hpp"
#include "conebounds/geometry.hpp"

namespace conebounds::quad {

struct Rule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// n-point Gauss-Legendre rule on [-1, 1], nodes by Newton iteration on P_n.
inline Rule gauss_legendre(std::size_t n) {
  if (n == 0) throw UsageError("Gauss-Legendre rule needs at least one node");
  Rule r{std::vector<double>(n), std::vector<double>(n)};
  for (std::size_t i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(std::numbers::pi * (static_cast<double>(i) + 0.75) /
                        (static_cast<double>(n) + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      for (std::size_t k = 2; k <= n; ++k) {
        const double pk = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / static_cast<double>(k);
        p0 = p1;
        p1 = pk;
      }
      dp = static_cast<double>(n) * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    r.nodes[i] = -x;
    r.nodes[n - 1 - i] = x;
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    r.weights[i] = w;
    r.weights[n - 1 - i] = w;
  }
  return r;
}

/// Composite Gauss-Legendre on [a, b] split into `panels` equal pieces.
template <class F>
double composite_gauss(F&& f, double a, double b, std::size_t panels, const Rule& rule) {
  const double h = (b - a) / static_cast<double>(panels);
  double s = 0.0;
  for (std::size_t p = 0; p < panels; ++p) {
    const double lo = a + h * static_cast<double>(p);
    const double mid = lo + 0.5 * h;
    for (std::size_t k = 0; k < rule.nodes.size(); ++k)
      s += rule.weights[k] * f(mid + 0.5 * h * rule.nodes[k]);
  }
  return 0.5 * h * s;
}

namespace detail {

// Gauss-Kronrod 7/15 abscissae and weights.
inline constexpr double xgk[8] = {0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
                                  0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
                                  0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
                                  0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
inline constexpr double wgk[8] = {0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
                                  0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
                                  0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
                                  0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
inline constexpr double wg[4] = {0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
                                 0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

template <class F>
std::pair<double, double> gk15(F& f, double a, double b) {
  const double c = 0.5 * (a + b), h = 0.5 * (b - a);
  const double fc = f(c);
  double k = wgk[7] * fc, g = wg[3] * fc;
  for (int j = 0; j < 7; ++j) {
    const double dx = h * xgk[j];
    const double s = f(c - dx) + f(c + dx);
    k += wgk[j] * s;
    if (j % 2 == 1) g += wg[j / 2] * s;
  }
  return {k * h, std::abs((k - g) * h)};
}

template <class F>
double adapt(F& f, double a, double b, double tol, int depth, double whole, double err) {
  if (err <= tol || depth <= 0) return whole;
  const double m = 0.5 * (a + b);
  auto [l, el] = gk15(f, a, m);
  auto [r, er] = gk15(f, m, b);
  return adapt(f, a, m, 0.5 * tol, depth - 1, l, el) + adapt(f, m, b, 0.5 * tol, depth - 1, r, er);
}

}  // namespace detail

/// Recursive bisection with a Gauss-Kronrod 7/15 pair. The integrand must be smooth on [a, b];
/// callers split at known kinks.
template <class F>
double adaptive_gk(F&& f, double a, double b, double abs_tol = 1e-12, int max_depth = 40) {
  if (a == b) return 0.0;
  auto [v, e] = detail::gk15(f, a, b);
  return detail::adapt(f, a, b, abs_tol, max_depth, v, e);
}

/// Composite Simpson on uniformly spaced samples; needs an odd sample count ≥ 3.
inline double simpson(std::span<const double> y, double h) {
  if (y.size() < 3 || y.size() % 2 == 0)
    throw UsageError("Simpson rule needs an odd number (>= 3) of samples");
  double s = y.front() + y.back();
  for (std::size_t i = 1; i + 1 < y.size(); ++i) s += (i % 2 == 1 ? 4.0 : 2.0) * y[i];
  return s * h / 3.0;
}

/// Integrates f over a triangle with an n×n collapsed (Duffy) Gauss rule; signed by orientation.
template <class F>
double triangle(F&& f, Vec2 a, Vec2 b, Vec2 c, const Rule& rule) {
  const double jac = cross(b - a, c - a);
  double s = 0.0;
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
    const double u = 0.5 * (rule.nodes[i] + 1.0);
    const double wu = 0.5 * rule.weights[i];
    for (std::size_t j = 0; j < rule.nodes.size(); ++j) {
      const double v = 0.5 * (rule.nodes[j] + 1.0);
      const double wv = 0.5 * rule.weights[j];
      // (u, v) in the square -> (u, (1-u) v) in the reference triangle
      const double r = u, t = (1.0 - u) * v;
      const Vec2 p = a + r * (b - a) + t * (c - a);
      s += wu * wv * (1.0 - u) * f(p.x, p.y);
    }
  }
  return s * jac;
}

/// Integral over a polygon as a signed fan of triangles from the origin (valid for any simple
/// polygon), each refined into `sub`×`sub` pieces.
template <class F>
double polygon(F&& f, const Polygon& poly, const Rule& rule, std::size_t sub = 1) {
  const Vec2 o{0.0, 0.0};
  double s = 0.0;
  for (std::size_t e = 0; e < poly.size(); ++e) {
    const Vec2 a = o, b = poly[e], c = poly.next(e);
    if (std::abs(cross(b - a, c - a)) == 0.0) continue;
    // uniform refinement of triangle (a, b, c) into sub² congruent pieces
    const double inv = 1.0 / static_cast<double>(sub);
    const Vec2 db = inv * (b - a), dc = inv * (c - a);
    for (std::size_t i = 0; i < sub; ++i) {
      for (std::size_t j = 0; i + j < sub; ++j) {
        const Vec2 p = a + static_cast<double>(i) * db + static_cast<double>(j) * dc;
        s += triangle(f, p, p + db, p + dc, rule);
        if (i + j + 1 < sub) s += triangle(f, p + db, p + db + dc, p + dc, rule);
      }
    }
  }
  return s;
}

/// Integral over a disc in polar coordinates, Gauss in radius and angle.
template <class F>
double disc(F&& f, const Disc& d, const Rule& radial, std::size_t angular_panels) {
  auto ring = [&](double r) {
    return composite_gauss(
               [&](double phi) {
                 return f(d.center.x + r * std::cos(phi), d.center.y + r * std::sin(phi));
               },
               0.0, 2.0 * std::numbers::pi, angular_panels, radial) *
           r;
  };
  return composite_gauss(ring, 0.0, d.radius, 1, radial);
}

/// Integral of f(x1, x2) over a section.
template <class F>
double section(F&& f, const Section& s, std::size_t order = 12, std::size_t sub = 2) {
  const Rule rule = gauss_legendre(order);
  if (const auto* p = std::get_if<Polygon>(&s)) return polygon(f, *p, rule, sub);
  return disc(f, std::get<Disc>(s), rule, 4 * sub);
}

}  // namespace conebounds::quad
