#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <numbers>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include <Eigen/Dense>

#include "conebounds/error.hpp"

namespace conebounds {

struct Vec2 {
  double x = 0.0;
  double y = 0.0;

  friend Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
  friend Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
  friend Vec2 operator*(double s, Vec2 a) { return {s * a.x, s * a.y}; }
  friend bool operator==(Vec2 a, Vec2 b) = default;
};

inline double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
inline double cross(Vec2 a, Vec2 b) { return a.x * b.y - a.y * b.x; }
inline double norm(Vec2 a) { return std::hypot(a.x, a.y); }

using Vec3 = Eigen::Vector3d;
using Mat3 = Eigen::Matrix3d;

/// Simple polygon stored counterclockwise.
class Polygon {
 public:
  /// Validates the vertex list; clockwise input is reversed and `reversed()` reports it.
  explicit Polygon(std::vector<Vec2> vertices) : vertices_(std::move(vertices)) {
    if (vertices_.size() < 3) throw GeometryError("polygon needs at least 3 vertices");
    for (const auto& v : vertices_) {
      if (!std::isfinite(v.x) || !std::isfinite(v.y))
        throw GeometryError("polygon vertex is not finite");
    }
    const double diam = diameter();
    if (!(diam > 0.0)) throw GeometryError("polygon has zero diameter");
    const std::size_t n = vertices_.size();
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) {
        if (norm(vertices_[i] - vertices_[j]) <= 1e-12 * diam)
          throw GeometryError("polygon has repeated vertices " + std::to_string(i) + " and " +
                              std::to_string(j));
      }
    }
    check_simple();
    double a = signed_area();
    if (std::abs(a) <= 1e-14 * diam * diam) throw GeometryError("polygon has zero area");
    if (a < 0.0) {
      std::reverse(vertices_.begin(), vertices_.end());
      reversed_ = true;
    }
  }

  const std::vector<Vec2>& vertices() const noexcept { return vertices_; }
  std::size_t size() const noexcept { return vertices_.size(); }
  const Vec2& operator[](std::size_t i) const { return vertices_[i % vertices_.size()]; }
  const Vec2& prev(std::size_t i) const { return (*this)[i + vertices_.size() - 1]; }
  const Vec2& next(std::size_t i) const { return (*this)[i + 1]; }
  bool reversed() const noexcept { return reversed_; }

  double signed_area() const {
    double s = 0.0;
    for (std::size_t i = 0; i < vertices_.size(); ++i) s += cross((*this)[i], next(i));
    return 0.5 * s;
  }

  double diameter() const {
    double d = 0.0;
    for (const auto& a : vertices_)
      for (const auto& b : vertices_) d = std::max(d, norm(a - b));
    return d;
  }

 private:
  static bool segments_intersect(Vec2 p1, Vec2 p2, Vec2 q1, Vec2 q2) {
    auto orient = [](Vec2 a, Vec2 b, Vec2 c) { return cross(b - a, c - a); };
    auto on_segment = [](Vec2 a, Vec2 b, Vec2 c) {
      return std::min(a.x, b.x) <= c.x && c.x <= std::max(a.x, b.x) &&
             std::min(a.y, b.y) <= c.y && c.y <= std::max(a.y, b.y);
    };
    const double d1 = orient(q1, q2, p1), d2 = orient(q1, q2, p2);
    const double d3 = orient(p1, p2, q1), d4 = orient(p1, p2, q2);
    if (((d1 > 0 && d2 < 0) || (d1 < 0 && d2 > 0)) && ((d3 > 0 && d4 < 0) || (d3 < 0 && d4 > 0)))
      return true;
    if (d1 == 0 && on_segment(q1, q2, p1)) return true;
    if (d2 == 0 && on_segment(q1, q2, p2)) return true;
    if (d3 == 0 && on_segment(p1, p2, q1)) return true;
    if (d4 == 0 && on_segment(p1, p2, q2)) return true;
    return false;
  }

  void check_simple() const {
    const std::size_t n = vertices_.size();
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) {
        const bool adjacent = (j == i + 1) || (i == 0 && j == n - 1);
        if (adjacent) continue;
        if (segments_intersect((*this)[i], next(i), (*this)[j], next(j)))
          throw GeometryError("polygon is self-intersecting (edges " + std::to_string(i) + ", " +
                              std::to_string(j) + ")");
      }
    }
  }

  std::vector<Vec2> vertices_;
  bool reversed_ = false;
};

struct Disc {
  Vec2 center;
  double radius = 1.0;

  Disc(Vec2 c, double r) : center(c), radius(r) {
    if (!(r > 0.0) || !std::isfinite(r)) throw GeometryError("disc radius must be positive");
  }
};

/// Plane section of a cone, given in the plane x3 = 1.
using Section = std::variant<Polygon, Disc>;

/// Second moments of a section: M0 = ∫x2², M1 = ∫x1 x2, M2 = ∫x1², and their area-normalized
/// counterparts.
struct Moments {
  double area = 0.0;
  double M0 = 0.0, M1 = 0.0, M2 = 0.0;
  double m0 = 0.0, m1 = 0.0, m2 = 0.0;

  static Moments from_raw(double area, double M0, double M1, double M2) {
    if (!(area > 0.0)) throw GeometryError("section has non-positive area");
    return {area, M0, M1, M2, M0 / area, M1 / area, M2 / area};
  }

  /// m0 m2 - m1², nonnegative by Cauchy-Schwarz.
  double gram() const { return m0 * m2 - m1 * m1; }
};

// Per-edge Green's theorem antiderivatives; exact for straight edges.
inline Moments polygon_moments(const Polygon& poly) {
  double a = 0.0, sxx = 0.0, syy = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < poly.size(); ++i) {
    const Vec2 p = poly[i], q = poly.next(i);
    const double c = p.x * q.y - q.x * p.y;
    a += c;
    sxx += c * (p.x * p.x + p.x * q.x + q.x * q.x);
    syy += c * (p.y * p.y + p.y * q.y + q.y * q.y);
    sxy += c * (p.x * q.y + 2.0 * p.x * p.y + 2.0 * q.x * q.y + q.x * p.y);
  }
  return Moments::from_raw(0.5 * a, syy / 12.0, sxy / 24.0, sxx / 12.0);
}

inline Moments disc_moments(const Disc& disc) {
  if (!(disc.radius > 0.0)) throw GeometryError("disc radius must be positive");
  const double r2 = disc.radius * disc.radius;
  const double area = std::numbers::pi * r2;
  const double c1 = disc.center.x, c2 = disc.center.y;
  // parallel-axis shift of the centred values m0 = m2 = R²/4, m1 = 0
  return Moments::from_raw(area, area * (0.25 * r2 + c2 * c2), area * c1 * c2,
                           area * (0.25 * r2 + c1 * c1));
}

inline Moments moments(const Section& s) {
  return std::visit(
      [](const auto& sec) {
        if constexpr (std::is_same_v<std::decay_t<decltype(sec)>, Polygon>)
          return polygon_moments(sec);
        else
          return disc_moments(sec);
      },
      s);
}

inline double area(const Section& s) { return moments(s).area; }

inline Vec2 centroid(const Polygon& poly) {
  double a = 0.0, cx = 0.0, cy = 0.0;
  for (std::size_t i = 0; i < poly.size(); ++i) {
    const Vec2 p = poly[i], q = poly.next(i);
    const double c = cross(p, q);
    a += c;
    cx += (p.x + q.x) * c;
    cy += (p.y + q.y) * c;
  }
  return {cx / (3.0 * a), cy / (3.0 * a)};
}

/// Centroid of the section; the library never recentres sections on its own.
inline Vec2 centroid(const Section& s) {
  if (const auto* p = std::get_if<Polygon>(&s)) return centroid(*p);
  return std::get<Disc>(s).center;
}

inline Section scale_section(const Section& s, double eps) {
  if (!(eps > 0.0)) throw DomainError("scale factor must be positive");
  if (const auto* p = std::get_if<Polygon>(&s)) {
    std::vector<Vec2> v;
    v.reserve(p->size());
    for (const auto& q : p->vertices()) v.push_back(eps * q);
    return Polygon(std::move(v));
  }
  const auto& d = std::get<Disc>(s);
  return Disc(eps * d.center, eps * d.radius);
}

/// Rotates every point of the section about the origin by `angle`.
inline Section rotate_section(const Section& s, double angle) {
  const double c = std::cos(angle), sn = std::sin(angle);
  auto rot = [&](Vec2 v) { return Vec2{c * v.x - sn * v.y, sn * v.x + c * v.y}; };
  if (const auto* p = std::get_if<Polygon>(&s)) {
    std::vector<Vec2> v;
    for (const auto& q : p->vertices()) v.push_back(rot(q));
    return Polygon(std::move(v));
  }
  const auto& d = std::get<Disc>(s);
  return Disc(rot(d.center), d.radius);
}

inline Section translate_section(const Section& s, Vec2 shift) {
  if (const auto* p = std::get_if<Polygon>(&s)) {
    std::vector<Vec2> v;
    for (const auto& q : p->vertices()) v.push_back(q + shift);
    return Polygon(std::move(v));
  }
  const auto& d = std::get<Disc>(s);
  return Disc(d.center + shift, d.radius);
}

// ---------------------------------------------------------------------------
// Tangent substructures of the cylinder ω × ℝ

enum class SubstructureKind { Interior, Side, Vertex };

struct TangentSubstructure {
  SubstructureKind kind = SubstructureKind::Interior;
  std::size_t index = 0;           // edge index (Side) or vertex index (Vertex)
  Vec3 outwardNormal = Vec3::Zero();  // Side only
  std::optional<double> sideAngle;    // Side only; filled once a field is known
  double opening = 0.0;               // Vertex only
};

/// Interior angle of the polygon at vertex i, in (0, 2π).
inline double plane_corner_angle(const Polygon& poly, std::size_t i) {
  const Vec2 v = poly[i];
  const Vec2 to_next = poly.next(i) - v;
  const Vec2 to_prev = poly.prev(i) - v;
  double a = std::atan2(cross(to_next, to_prev), dot(to_next, to_prev));
  if (a < 0.0) a += 2.0 * std::numbers::pi;
  return a;
}

inline void check_corner(double angle, std::size_t i) {
  constexpr double tol = 1e-12;
  if (angle < tol || std::abs(angle - std::numbers::pi) < tol ||
      angle > 2.0 * std::numbers::pi - tol)
    throw GeometryError("degenerate corner at vertex " + std::to_string(i));
}

inline Vec2 outward_edge_normal(const Polygon& poly, std::size_t i) {
  const Vec2 e = poly.next(i) - poly[i];
  const double len = norm(e);
  return {e.y / len, -e.x / len};
}

inline std::vector<TangentSubstructure> tangent_substructures(const Polygon& poly) {
  std::vector<TangentSubstructure> out;
  out.push_back({SubstructureKind::Interior, 0, Vec3::Zero(), std::nullopt, 0.0});
  for (std::size_t i = 0; i < poly.size(); ++i) {
    const Vec2 n = outward_edge_normal(poly, i);
    out.push_back({SubstructureKind::Side, i, Vec3(n.x, n.y, 0.0), std::nullopt, 0.0});
  }
  for (std::size_t i = 0; i < poly.size(); ++i) {
    const double a = plane_corner_angle(poly, i);
    check_corner(a, i);
    out.push_back({SubstructureKind::Vertex, i, Vec3::Zero(), std::nullopt, a});
  }
  return out;
}

// ---------------------------------------------------------------------------
// Spherical projection P(x', t) = t (x', 1) / |(x', 1)|

inline Vec3 project_P(Vec2 xp, double t) {
  const Vec3 v(xp.x, xp.y, 1.0);
  return t * v / v.norm();
}

/// Analytic differential of P at (x', t), columns ordered (x1, x2, t).
inline Mat3 projection_jacobian(Vec2 xp, double t) {
  const Vec3 v(xp.x, xp.y, 1.0);
  const double r = v.norm();
  Mat3 j;
  for (int k = 0; k < 2; ++k) {
    Vec3 e = Vec3::Zero();
    e[k] = 1.0;
    j.col(k) = t * (e / r - v * v[k] / (r * r * r));
  }
  j.col(2) = v / r;
  return j;
}

/// Spectral norm of a 3×3 matrix.
inline double spectral_norm(const Mat3& m) {
  Eigen::SelfAdjointEigenSolver<Mat3> es(m.transpose() * m, Eigen::EigenvaluesOnly);
  return std::sqrt(std::max(0.0, es.eigenvalues().maxCoeff()));
}

namespace detail {

inline Vec3 lift(Vec2 v, double eps) { return Vec3(eps * v.x, eps * v.y, 1.0); }

}  // namespace detail

/// Opening of the wedge tangent to the cone over εω along the edge generated by vertex i.
/// Measured in the plane orthogonal to the edge; tends to the plane corner angle as ε → 0.
inline double spherical_vertex_opening(const Polygon& poly, std::size_t i, double eps) {
  if (i >= poly.size()) throw UsageError("vertex index out of range");
  if (!(eps > 0.0)) throw DomainError("scale factor must be positive");
  check_corner(plane_corner_angle(poly, i), i);
  const Vec3 d = detail::lift(poly[i], eps).normalized();
  auto perp = [&](const Vec3& w) { return Vec3(w - w.dot(d) * d); };
  const Vec3 u_prev = perp(detail::lift(poly.prev(i), eps));
  const Vec3 u_next = perp(detail::lift(poly.next(i), eps));
  if (u_prev.norm() == 0.0 || u_next.norm() == 0.0)
    throw GeometryError("degenerate adjacent edges at vertex " + std::to_string(i));
  double a = std::atan2(d.dot(u_next.cross(u_prev)), u_next.dot(u_prev));
  if (a < 0.0) a += 2.0 * std::numbers::pi;
  return a;
}

/// Outward unit normal of the lateral cone face spanned by edge i of εω.
inline Vec3 cone_face_normal(const Polygon& poly, std::size_t i, double eps) {
  const Vec3 n = detail::lift(poly.next(i), eps).cross(detail::lift(poly[i], eps));
  return n.normalized();
}

/// Dihedral angle, inside the truncated cone {x3 < 1}, between lateral face i and the cap x3 = 1.
inline double cap_edge_opening(const Polygon& poly, std::size_t i, double eps) {
  if (!(eps > 0.0)) throw DomainError("scale factor must be positive");
  const Vec3 n = cone_face_normal(poly, i, eps);
  return std::numbers::pi - std::acos(std::clamp(n.z(), -1.0, 1.0));
}

}  // namespace conebounds
