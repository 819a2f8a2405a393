#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <numbers>
#include <optional>
#include <string_view>
#include <vector>

#include "conebounds/error.hpp"
#include "conebounds/geometry.hpp"
#include "conebounds/quadrature.hpp"

namespace conebounds {

enum class RobinModel { HalfSpace, Wedge };

inline RobinModel parse_robin_model(std::string_view s) {
  if (s == "halfSpace") return RobinModel::HalfSpace;
  if (s == "wedge") return RobinModel::Wedge;
  throw UsageError("unknown Robin model '" + std::string(s) + "'");
}

/// Ground energy of the Robin Laplacian (parameter 1) on a half-space or a wedge of opening α.
inline double robin_model_energy(RobinModel kind, double alpha = std::numbers::pi) {
  if (kind == RobinModel::HalfSpace) return -1.0;
  if (!(alpha > 0.0 && alpha < 2.0 * std::numbers::pi)) throw DomainError("wedge opening must lie in (0, 2pi)");
  if (alpha >= std::numbers::pi) return -1.0;
  // -1/sin²(α/2) = -(1 + cot²(α/2))
  const double c = std::cos(0.5 * alpha) / std::sin(0.5 * alpha);
  return -(1.0 + c * c);
}

/// Polar description ρ = b(φ) of a cone section in the plane tangent to the unit sphere at the
/// axis direction. Polygonal sections give one piece per face; discs give a single smooth piece.
class BoundaryProfile {
 public:
  struct Piece {
    double start = 0.0;  // break angles, start < end
    double end = 0.0;
    Vec3 normal;         // outward face normal (planar pieces)
  };

  /// Profile of the cone over `omega` seen from the axis through (axis, 1).
  BoundaryProfile(const Section& omega, Vec2 axis, double angular_origin = 0.0) {
    axis_ = Vec3(axis.x, axis.y, 1.0).normalized();
    Vec3 ref = Vec3::UnitX() - Vec3::UnitX().dot(axis_) * axis_;
    e1_ = ref.normalized();
    e2_ = axis_.cross(e1_);
    // rotating the angular origin
    const Vec3 r1 = std::cos(angular_origin) * e1_ + std::sin(angular_origin) * e2_;
    const Vec3 r2 = -std::sin(angular_origin) * e1_ + std::cos(angular_origin) * e2_;
    e1_ = r1;
    e2_ = r2;

    if (const auto* poly = std::get_if<Polygon>(&omega)) {
      build_planar(*poly);
    } else {
      build_quadric(std::get<Disc>(omega));
    }
  }

  /// Default axis: the section centroid.
  explicit BoundaryProfile(const Section& omega) : BoundaryProfile(omega, centroid(omega)) {}

  const std::vector<Piece>& pieces() const noexcept { return pieces_; }
  bool smooth() const noexcept { return quadric_.has_value(); }

  double b(std::size_t piece, double phi) const {
    const Vec3 u = dir(phi);
    if (quadric_) return quadric_root(u);
    const Vec3& n = pieces_[piece].normal;
    return -n.dot(axis_) / n.dot(u);
  }

  double db(std::size_t piece, double phi) const {
    const Vec3 u = dir(phi), du = ddir(phi);
    if (quadric_) {
      const Eigen::Matrix3d& K = *quadric_;
      const double rho = quadric_root(u);
      const double f_rho = 2.0 * rho * u.dot(K * u) + 2.0 * axis_.dot(K * u);
      const double f_phi = 2.0 * rho * rho * u.dot(K * du) + 2.0 * rho * axis_.dot(K * du);
      return -f_phi / f_rho;
    }
    const Vec3& n = pieces_[piece].normal;
    const double nu = n.dot(u);
    return n.dot(axis_) * n.dot(du) / (nu * nu);
  }

 private:
  Vec3 dir(double phi) const { return std::cos(phi) * e1_ + std::sin(phi) * e2_; }
  Vec3 ddir(double phi) const { return -std::sin(phi) * e1_ + std::cos(phi) * e2_; }

  double angle_of(const Vec3& w) const {
    const double s = w.dot(axis_);
    if (!(s > 0.0)) throw DomainError("section leaves the half-space around the axis");
    const Vec3 p = w / s - axis_;
    return std::atan2(p.dot(e2_), p.dot(e1_));
  }

  void build_planar(const Polygon& poly) {
    const std::size_t n = poly.size();
    for (std::size_t i = 0; i < n; ++i) {
      const Vec3 normal = cone_face_normal(poly, i, 1.0);
      if (!(normal.dot(axis_) < 0.0)) throw DomainError("section is not star-shaped around the axis");
      pieces_.push_back({0.0, 0.0, normal});
    }
    double start = angle_of(detail::lift(poly[0], 1.0));
    double total = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double a = angle_of(detail::lift(poly[i], 1.0));
      const double b = angle_of(detail::lift(poly.next(i), 1.0));
      double sweep = b - a;
      while (sweep <= 0.0) sweep += 2.0 * std::numbers::pi;
      if (sweep >= std::numbers::pi) throw DomainError("section is not star-shaped around the axis");
      pieces_[i].start = start + total;
      total += sweep;
      pieces_[i].end = start + total;
    }
    if (std::abs(total - 2.0 * std::numbers::pi) > 1e-9)
      throw DomainError("section is not star-shaped around the axis");
  }

  void build_quadric(const Disc& d) {
    // cone |x' - c x3|² < R² x3², written xᵀ K x < 0
    Eigen::Matrix3d K = Eigen::Matrix3d::Zero();
    const double c1 = d.center.x, c2 = d.center.y, r = d.radius;
    K(0, 0) = 1.0;
    K(1, 1) = 1.0;
    K(0, 2) = K(2, 0) = -c1;
    K(1, 2) = K(2, 1) = -c2;
    K(2, 2) = c1 * c1 + c2 * c2 - r * r;
    if (!(axis_.dot(K * axis_) < 0.0)) throw DomainError("axis does not pass through the section");
    quadric_ = K;
    const double s = std::atan2(0.0, 1.0);
    pieces_.push_back({s, s + 2.0 * std::numbers::pi, Vec3::Zero()});
  }

  double quadric_root(const Vec3& u) const {
    const Eigen::Matrix3d& K = *quadric_;
    const double a = u.dot(K * u), b = axis_.dot(K * u), c = axis_.dot(K * axis_);
    // a ρ² + 2 b ρ + c = 0 with c < 0; the positive root
    if (a <= 0.0) throw DomainError("section is unbounded in the tangent plane");
    return (-b + std::sqrt(b * b - a * c)) / a;
  }

  Vec3 axis_, e1_, e2_;
  std::vector<Piece> pieces_;
  std::optional<Eigen::Matrix3d> quadric_;
};

/// Upper bound -(∫σ b² dφ / ∫b² dφ)² with σ = √(1 + b⁻² + b'² b⁻⁴), integrated piecewise.
inline double robin_cone_upper_bound(const BoundaryProfile& profile, double abs_tol = 1e-12) {
  double num = 0.0, den = 0.0;
  const auto& pieces = profile.pieces();
  for (std::size_t i = 0; i < pieces.size(); ++i) {
    auto weighted = [&](double phi) {
      const double b = profile.b(i, phi), db = profile.db(i, phi);
      const double b2 = b * b;
      return std::sqrt(1.0 + 1.0 / b2 + db * db / (b2 * b2)) * b2;
    };
    auto plain = [&](double phi) {
      const double b = profile.b(i, phi);
      return b * b;
    };
    num += quad::adaptive_gk(weighted, pieces[i].start, pieces[i].end, abs_tol);
    den += quad::adaptive_gk(plain, pieces[i].start, pieces[i].end, abs_tol);
  }
  const double q = num / den;
  return -q * q;
}

/// Log-log slope of |bound(εω)| against ε; the axis is the centroid of each scaled section
/// unless `axis` is given (then scaled with ε).
inline double robin_scaling_exponent(const Section& omega, const std::vector<double>& eps,
                                     std::optional<Vec2> axis = std::nullopt) {
  if (eps.size() < 3) throw UsageError("scaling regression needs at least 3 epsilon values");
  double lo = eps.front(), hi = eps.front();
  for (double e : eps) {
    if (!(e > 0.0)) throw UsageError("epsilon values must be positive");
    lo = std::min(lo, e);
    hi = std::max(hi, e);
  }
  if (hi < 10.0 * lo * (1.0 - 1e-12)) throw UsageError("epsilon ladder must span at least one decade");
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  for (double e : eps) {
    const Section s = scale_section(omega, e);
    const BoundaryProfile p = axis ? BoundaryProfile(s, e * *axis) : BoundaryProfile(s);
    const double x = std::log(e), y = std::log(std::abs(robin_cone_upper_bound(p)));
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  const double n = static_cast<double>(eps.size());
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

struct AxisScan {
  Vec2 axis;
  double bound = 0.0;
  std::size_t evaluated = 0;
};

/// Smallest bound over axis points on a grid×grid lattice of the bounding box; points where
/// the section is not star-shaped are skipped.
inline AxisScan robin_axis_scan(const Section& omega, int grid) {
  if (grid < 2) throw UsageError("axis scan needs a grid of at least 2");
  double x0, x1, y0, y1;
  if (const auto* p = std::get_if<Polygon>(&omega)) {
    x0 = x1 = p->vertices().front().x;
    y0 = y1 = p->vertices().front().y;
    for (const auto& v : p->vertices()) {
      x0 = std::min(x0, v.x);
      x1 = std::max(x1, v.x);
      y0 = std::min(y0, v.y);
      y1 = std::max(y1, v.y);
    }
  } else {
    const auto& d = std::get<Disc>(omega);
    x0 = d.center.x - d.radius;
    x1 = d.center.x + d.radius;
    y0 = d.center.y - d.radius;
    y1 = d.center.y + d.radius;
  }
  AxisScan best{centroid(omega), std::numeric_limits<double>::infinity(), 0};
  auto consider = [&](Vec2 a) {
    try {
      const double b = robin_cone_upper_bound(BoundaryProfile(omega, a));
      ++best.evaluated;
      if (b < best.bound) {
        best.axis = a;
        best.bound = b;
      }
    } catch (const DomainError&) {
    }
  };
  consider(centroid(omega));
  for (int i = 1; i < grid; ++i)
    for (int j = 1; j < grid; ++j) consider({x0 + (x1 - x0) * i / grid, y0 + (y1 - y0) * j / grid});
  if (best.evaluated == 0) throw DomainError("section is not star-shaped around any scanned axis");
  return best;
}

}  // namespace conebounds
