#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <map>
#include <numbers>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/SparseCholesky>
#include <Eigen/SparseCore>

#include "conebounds/error.hpp"
#include "conebounds/gauge_opt.hpp"
#include "conebounds/geometry.hpp"
#include "conebounds/tridiagonal.hpp"

namespace conebounds {

// ---------------------------------------------------------------------------
// de Gennes operator -d²/dt² + (t - ξ)² on t > 0, Neumann at 0

struct DeGennesGrid {
  double h = 0.005;       // cell width
  double tail = 12.0;     // truncation beyond max(0, ξ)
};

struct DeGennesResult {
  double xi = 0.0;
  double mu = 0.0;
  std::vector<std::string> warnings;
};

/// Lowest eigenvalue on a cell-centred grid (reflecting ghost at t = 0, Dirichlet at the cut).
inline DeGennesResult degennes_mu(double xi, const DeGennesGrid& grid = {}) {
  if (!(grid.h > 0.0) || !(grid.tail > 0.0)) throw UsageError("invalid de Gennes grid");
  const double length = std::max(0.0, xi) + grid.tail;
  const auto n = static_cast<std::size_t>(std::ceil(length / grid.h));
  if (n < 16) throw UsageError("de Gennes grid has fewer than 16 cells");
  const double h = length / static_cast<double>(n);
  SymTridiagonal t;
  t.diag.resize(n);
  t.off.assign(n - 1, -1.0 / (h * h));
  for (std::size_t j = 0; j < n; ++j) {
    const double x = h * (static_cast<double>(j) + 0.5) - xi;
    t.diag[j] = 2.0 / (h * h) + x * x;
  }
  t.diag.front() -= 1.0 / (h * h);
  t.diag.back() += 1.0 / (h * h);
  DeGennesResult r{xi, smallest_eigenvalues(t, 1).front(), {}};
  if (h > 0.05) r.warnings.push_back("de Gennes grid is coarse (h > 0.05)");
  if (grid.tail < 6.0) r.warnings.push_back("de Gennes truncation is short (tail < 6)");
  return r;
}

struct Theta0Result {
  double theta0 = 0.0;
  double xiStar = 0.0;
};

/// Θ₀ = min over ξ of the de Gennes ground energy, by golden-section search.
inline Theta0Result theta0_with_minimizer(const DeGennesGrid& grid = {}) {
  double a = 0.2, b = 1.5;
  const double g = 0.5 * (std::sqrt(5.0) - 1.0);
  auto mu = [&](double xi) { return degennes_mu(xi, grid).mu; };
  double x1 = b - g * (b - a), x2 = a + g * (b - a);
  double f1 = mu(x1), f2 = mu(x2);
  while (b - a > 1e-8) {
    if (f1 < f2) {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - g * (b - a);
      f1 = mu(x1);
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + g * (b - a);
      f2 = mu(x2);
    }
  }
  const double xi = 0.5 * (a + b);
  if (xi < 0.2 + 1e-6 || xi > 1.5 - 1e-6) throw SolverError("Θ₀ minimizer hit the search bracket");
  return {mu(xi), xi};
}

inline double theta0(const DeGennesGrid& grid = {}) { return theta0_with_minimizer(grid).theta0; }

// ---------------------------------------------------------------------------
// Half-space ground energy σ(θ) for a unit field at angle θ to the boundary

struct HalfPlaneGrid {
  double box = 20.0;     // side of the truncation box, oscillator units
  std::size_t n = 160;   // cells per side
  double thetaMin = 0.1; // below this angle σ is interpolated from Θ₀
};

namespace detail {

// Ground energy of -Δ + (t cosθ - s sinθ)² on (s, t) in a box, Neumann at t = 0, Dirichlet on the
// artificial sides; shift-invert Lanczos on a sparse Cholesky factor.
inline double half_plane_ground(double theta, const HalfPlaneGrid& grid, double xi_star) {
  const double st = std::sin(theta), ct = std::cos(theta);
  const double stretch = std::max(1.0, 1.0 / std::sqrt(st));
  const double ls = grid.box * stretch, lt = grid.box;
  const double s0 = xi_star * ct / st - 0.5 * ls;
  const std::size_t n = grid.n;
  const double hs = ls / static_cast<double>(n), ht = lt / static_cast<double>(n);
  const double is2 = 1.0 / (hs * hs), it2 = 1.0 / (ht * ht);
  const auto N = static_cast<Eigen::Index>(n * n);
  auto idx = [n](std::size_t i, std::size_t j) { return static_cast<Eigen::Index>(i * n + j); };

  std::vector<Eigen::Triplet<double>> trip;
  trip.reserve(5 * n * n);
  for (std::size_t i = 0; i < n; ++i) {
    const double s = s0 + hs * (static_cast<double>(i) + 0.5);
    for (std::size_t j = 0; j < n; ++j) {
      const double t = ht * (static_cast<double>(j) + 0.5);
      const double pot = t * ct - s * st;
      double d = pot * pot + 2.0 * is2 + 2.0 * it2;
      if (i == 0 || i + 1 == n) d += is2;  // Dirichlet ghost in s
      if (j == 0) d -= it2;                 // Neumann ghost at t = 0
      if (j + 1 == n) d += it2;             // Dirichlet ghost at the cut
      trip.emplace_back(idx(i, j), idx(i, j), d);
      if (i + 1 < n) {
        trip.emplace_back(idx(i, j), idx(i + 1, j), -is2);
        trip.emplace_back(idx(i + 1, j), idx(i, j), -is2);
      }
      if (j + 1 < n) {
        trip.emplace_back(idx(i, j), idx(i, j + 1), -it2);
        trip.emplace_back(idx(i, j + 1), idx(i, j), -it2);
      }
    }
  }
  Eigen::SparseMatrix<double> A(N, N);
  A.setFromTriplets(trip.begin(), trip.end());
  Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> chol(A);
  if (chol.info() != Eigen::Success) throw SolverError("half-plane factorization failed");

  constexpr int max_steps = 120;
  std::vector<Eigen::VectorXd> basis;
  basis.reserve(max_steps + 1);
  Eigen::VectorXd q = Eigen::VectorXd::Ones(N).normalized();
  basis.push_back(q);
  std::vector<double> alpha, beta;
  double prev = 0.0;
  for (int k = 0; k < max_steps; ++k) {
    Eigen::VectorXd w = chol.solve(basis.back());
    alpha.push_back(basis.back().dot(w));
    for (int pass = 0; pass < 2; ++pass)
      for (const auto& v : basis) w -= v.dot(w) * v;
    const double b = w.norm();
    const auto m = static_cast<Eigen::Index>(alpha.size());
    Eigen::MatrixXd T = Eigen::MatrixXd::Zero(m, m);
    for (Eigen::Index i = 0; i < m; ++i) {
      T(i, i) = alpha[static_cast<std::size_t>(i)];
      if (i + 1 < m) T(i, i + 1) = T(i + 1, i) = beta[static_cast<std::size_t>(i)];
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(T);
    const double top = es.eigenvalues()(m - 1);
    const double resid = b * std::abs(es.eigenvectors()(m - 1, m - 1));
    if (resid < 1e-12 * top || b < 1e-14) return 1.0 / top;
    if (k > 4 && std::abs(top - prev) < 1e-14 * top && resid < 1e-8 * top) return 1.0 / top;
    prev = top;
    beta.push_back(b);
    basis.push_back(w / b);
  }
  throw SolverError("half-plane Lanczos did not converge");
}

}  // namespace detail

/// σ(θ) for θ ∈ [0, π/2]. σ(0) = Θ₀ comes from the de Gennes path; angles below
/// grid.thetaMin are linearly interpolated between Θ₀ and σ(thetaMin), where the box model
/// loses resolution.
inline double halfspace_sigma(double theta, const HalfPlaneGrid& grid, const Theta0Result& t0) {
  const double half_pi = 0.5 * std::numbers::pi;
  if (!(theta >= 0.0 && theta <= half_pi))
    throw DomainError("half-space angle must lie in [0, pi/2]");
  if (grid.n < 16 || !(grid.box > 0.0)) throw UsageError("invalid half-plane grid");
  if (theta == 0.0) return t0.theta0;
  if (theta < grid.thetaMin) {
    const double at_min = detail::half_plane_ground(grid.thetaMin, grid, t0.xiStar);
    return t0.theta0 + (at_min - t0.theta0) * theta / grid.thetaMin;
  }
  return detail::half_plane_ground(theta, grid, t0.xiStar);
}

inline double halfspace_sigma(double theta, const HalfPlaneGrid& grid = {}) {
  return halfspace_sigma(theta, grid, theta0_with_minimizer());
}

// ---------------------------------------------------------------------------
// Energy estimates on tangent substructures

enum class EstimateKind { UpperBound, LowerBound, TwoSided };

inline std::string to_string(EstimateKind k) {
  switch (k) {
    case EstimateKind::UpperBound: return "upper-bound";
    case EstimateKind::LowerBound: return "lower-bound";
    case EstimateKind::TwoSided: return "two-sided";
  }
  return "unknown";
}

struct Contribution {
  std::string what;   // "interior", "side i", "vertex i"
  double lower = 0.0;
  double upper = 0.0;
  std::string source;
};

struct EnergyEstimate {
  EstimateKind kind = EstimateKind::UpperBound;
  double value = 0.0;
  double lower = 0.0;
  double upper = 0.0;
  std::string source;
  bool degenerate = false;
  std::vector<Contribution> contributions;
};

/// Leading small-angle term ‖B‖α/√3; valid only for B in the bisector plane or tangent to a face.
inline EnergyEstimate wedge_energy_upper(double alpha, double Bnorm) {
  if (!(alpha > 0.0 && alpha < 2.0 * std::numbers::pi)) throw DomainError("wedge opening must lie in (0, 2pi)");
  if (!(Bnorm >= 0.0)) throw DomainError("field norm must be nonnegative");
  const double v = Bnorm * alpha / std::sqrt(3.0);
  return {EstimateKind::UpperBound, v, 0.0, v,
          "wedge small-angle leading term; orientation-restricted (B in bisector plane or tangent to a face)",
          Bnorm == 0.0, {}};
}

struct ModelSettings {
  HalfPlaneGrid halfPlane;
  DeGennesGrid deGennes;
};

namespace detail {

struct Face {
  Vec3 normal;  // outward unit normal
};

struct Edge {
  double opening;
  Vec3 n_prev, n_next;  // outward normals of the two adjacent faces
};

inline void check_cfloor(double c) {
  if (!(c > 0.0 && c <= 1.0)) throw UsageError("cFloor must lie in (0, 1]");
}

// min over interior, faces and edges, with edges floored by cFloor for the lower estimate.
inline EnergyEstimate assemble(const MagneticField& B, const std::vector<Face>& faces,
                               const std::vector<Edge>& edges, double cFloor, const ModelSettings& settings,
                               const Theta0Result& t0) {
  const double bn = B.norm();
  EnergyEstimate e;
  e.kind = EstimateKind::TwoSided;
  if (bn == 0.0) {
    e.degenerate = true;
    e.source = "zero field";
    return e;
  }
  const Vec3 b = B.vec();
  double lower = bn, upper = bn;
  e.contributions.push_back({"interior", bn, bn, "exact: E(B, R^3) = |B|"});
  std::map<double, double> sigma_memo;
  for (std::size_t i = 0; i < faces.size(); ++i) {
    const double s = std::clamp(std::abs(b.dot(faces[i].normal)) / bn, 0.0, 1.0);
    const double theta = std::asin(s);
    auto it = sigma_memo.find(theta);
    if (it == sigma_memo.end()) it = sigma_memo.emplace(theta, halfspace_sigma(theta, settings.halfPlane, t0)).first;
    const double v = it->second * bn;
    lower = std::min(lower, v);
    upper = std::min(upper, v);
    e.contributions.push_back({"side " + std::to_string(i), v, v,
                               "FD: half-space sigma(theta), theta = " + std::to_string(theta)});
  }
  const double tol = 1e-12 * bn;
  for (std::size_t i = 0; i < edges.size(); ++i) {
    const auto& ed = edges[i];
    const bool tangent = std::abs(b.dot(ed.n_prev)) <= tol || std::abs(b.dot(ed.n_next)) <= tol;
    const bool bisector = std::abs(b.dot(ed.n_prev - ed.n_next)) <= tol;
    const double floor = cFloor * bn;
    lower = std::min(lower, floor);
    Contribution c{"vertex " + std::to_string(i), floor, std::numeric_limits<double>::infinity(),
                   "lower-bound: user floor c(beta0)|B|"};
    if (tangent || bisector) {
      const double w = wedge_energy_upper(ed.opening, bn).upper;
      c.upper = w;
      upper = std::min(upper, w);
      c.source += "; upper-bound: wedge leading term";
    }
    e.contributions.push_back(c);
  }
  e.source = "assembled from interior (exact), faces (FD sigma), edges (user floor / wedge leading term)";
  if (lower > upper) {
    lower = upper;
    e.source += "; floor clamped to the upper estimate";
  }
  e.lower = lower;
  e.upper = upper;
  e.value = upper;
  return e;
}

inline std::vector<Edge> cylinder_edges(const Polygon& poly) {
  std::vector<Edge> edges;
  for (std::size_t i = 0; i < poly.size(); ++i) {
    const Vec2 np = outward_edge_normal(poly, i + poly.size() - 1);
    const Vec2 nn = outward_edge_normal(poly, i);
    const double a = plane_corner_angle(poly, i);
    check_corner(a, i);
    edges.push_back({a, Vec3(np.x, np.y, 0.0), Vec3(nn.x, nn.y, 0.0)});
  }
  return edges;
}

}  // namespace detail

/// Two-sided estimate of ℰ(B, ω × ℝ), the infimum of ground energies over the tangent
/// substructures of the cylinder.
inline EnergyEstimate cylinder_energy(const MagneticField& B, const Polygon& poly, double cFloor,
                                      const ModelSettings& settings = {}) {
  detail::check_cfloor(cFloor);
  const auto t0 = theta0_with_minimizer(settings.deGennes);
  std::vector<detail::Face> faces;
  for (const auto& sub : tangent_substructures(poly))
    if (sub.kind == SubstructureKind::Side) faces.push_back({sub.outwardNormal});
  return detail::assemble(B, faces, detail::cylinder_edges(poly), cFloor, settings, t0);
}

/// Same assembly for the tangent substructures of the cone over εω, at each ε.
inline std::vector<std::pair<double, EnergyEstimate>> essential_spectrum_limit(const MagneticField& B,
                                                                               const Polygon& poly,
                                                                               const std::vector<double>& eps,
                                                                               double cFloor,
                                                                               const ModelSettings& settings = {}) {
  detail::check_cfloor(cFloor);
  if (eps.empty()) throw UsageError("empty epsilon list");
  for (std::size_t i = 0; i < eps.size(); ++i) {
    if (!(eps[i] > 0.0)) throw UsageError("epsilon values must be positive");
    if (i > 0 && !(eps[i] < eps[i - 1])) throw UsageError("epsilon values must be decreasing");
  }
  const auto t0 = theta0_with_minimizer(settings.deGennes);
  std::vector<std::pair<double, EnergyEstimate>> out;
  for (double e : eps) {
    std::vector<detail::Face> faces;
    for (std::size_t i = 0; i < poly.size(); ++i) faces.push_back({cone_face_normal(poly, i, e)});
    std::vector<detail::Edge> edges;
    for (std::size_t i = 0; i < poly.size(); ++i)
      edges.push_back({spherical_vertex_opening(poly, i, e), faces[(i + poly.size() - 1) % poly.size()].normal,
                       faces[i].normal});
    out.emplace_back(e, detail::assemble(B, faces, edges, cFloor, settings, t0));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Corner concentration threshold

struct ConcentrationVerdict {
  double epsilon = 0.0;
  double epsilonStar = 0.0;
  double floorUsed = 0.0;
  double vertexBound = 0.0;
  bool holds = false;
  bool degenerate = false;
};

/// Compares the vertex bound 3ε e(B, ω) with the floor min{cFloor, 1/2}‖B‖ on the rest of the
/// truncated sharp cone.
class ConcentrationThreshold {
 public:
  ConcentrationThreshold(const MagneticField& B, const Moments& m, double cFloor)
      : e_(e_constant(B, m)), floor_(std::min(cFloor, 0.5) * B.norm()) {
    detail::check_cfloor(cFloor);
    if (e_ > 0.0) {
      epsilon_star_ = floor_ / (3.0 * e_);
    } else {
      epsilon_star_ = std::numeric_limits<double>::infinity();
      degenerate_ = true;
    }
  }

  double epsilonStar() const noexcept { return epsilon_star_; }
  double floorUsed() const noexcept { return floor_; }
  double eConstant() const noexcept { return e_; }
  bool degenerate() const noexcept { return degenerate_; }

  ConcentrationVerdict operator()(double eps) const {
    if (!(eps > 0.0)) throw DomainError("epsilon must be positive");
    ConcentrationVerdict v{eps, epsilon_star_, floor_, 3.0 * eps * e_, false, degenerate_};
    v.holds = degenerate_ ? true : (v.vertexBound < v.floorUsed);
    return v;
  }

 private:
  double e_;
  double floor_;
  double epsilon_star_ = 0.0;
  bool degenerate_ = false;
};

inline ConcentrationThreshold concentration_threshold(const MagneticField& B, const Section& omega,
                                                      double cFloor) {
  return ConcentrationThreshold(B, moments(omega), cFloor);
}

struct TruncatedEdges {
  std::vector<double> lateral;  // edges of the cone over εω
  std::vector<double> cap;      // edges in the plane x3 = 1
  double beta0 = 0.0;           // requested bound
  double beta0Max = 0.0;        // largest bound the openings satisfy
  bool certified = false;
};

/// Edge openings of C_{εω} ∩ {x3 < 1} and the check β₀ ≤ α ≤ 2π - β₀.
inline TruncatedEdges truncated_domain_edges(const Polygon& poly, double eps, double beta0) {
  if (!(beta0 > 0.0 && beta0 < std::numbers::pi)) throw UsageError("beta0 must lie in (0, pi)");
  TruncatedEdges r;
  r.beta0 = beta0;
  double margin = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < poly.size(); ++i) {
    r.lateral.push_back(spherical_vertex_opening(poly, i, eps));
    r.cap.push_back(cap_edge_opening(poly, i, eps));
  }
  for (double a : r.lateral) margin = std::min({margin, a, 2.0 * std::numbers::pi - a});
  for (double a : r.cap) margin = std::min({margin, a, 2.0 * std::numbers::pi - a});
  r.beta0Max = margin;
  r.certified = margin >= beta0;
  return r;
}

}  // namespace conebounds
