#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "conebounds/model_ops.hpp"
#include "support.hpp"

using namespace conebounds;
using namespace testsupport;

namespace {

constexpr double pi = std::numbers::pi;

const Theta0Result& t0() {
  static const Theta0Result r = theta0_with_minimizer();
  return r;
}

}  // namespace

TEST(DeGennes, KnownValues) {
  EXPECT_NEAR(degennes_mu(0.0).mu, 1.0, 1e-4);
  EXPECT_GT(degennes_mu(-5.0).mu, 25.0);
  EXPECT_TRUE(degennes_mu(0.0).warnings.empty());
  EXPECT_FALSE(degennes_mu(0.0, {0.1, 12.0}).warnings.empty());
  EXPECT_THROW(degennes_mu(0.0, {-0.1, 12.0}), UsageError);
}

TEST(DeGennes, StationaryAtMinimizer) {
  const double xi = t0().xiStar, h = 1e-3;
  const double slope = (degennes_mu(xi + h).mu - degennes_mu(xi - h).mu) / (2 * h);
  EXPECT_NEAR(slope, 0.0, 1e-4);
  for (double d : {-0.2, 0.2}) EXPECT_GT(degennes_mu(xi + d).mu, t0().theta0);
}

TEST(DeGennes, Lipschitz) {
  for (double xi = -1.0; xi < 3.0; xi += 0.5) {
    const double d = std::abs(degennes_mu(xi + 0.01).mu - degennes_mu(xi).mu);
    EXPECT_LE(d, 0.01 * 2 * (std::abs(xi) + 2.0));
  }
}

TEST(Theta0, Value) {
  EXPECT_GT(t0().theta0, 0.5900);
  EXPECT_LT(t0().theta0, 0.5903);
  EXPECT_NEAR(t0().theta0, t0().xiStar * t0().xiStar, 1e-4);
  EXPECT_DOUBLE_EQ(theta0(), t0().theta0);
}

TEST(Sigma, EndpointsAndMonotone) {
  EXPECT_DOUBLE_EQ(halfspace_sigma(0.0, {}, t0()), t0().theta0);
  EXPECT_NEAR(halfspace_sigma(pi / 2, {}, t0()), 1.0, 1e-2);
  double prev = 0.0;
  for (int k = 0; k <= 8; ++k) {
    const double s = halfspace_sigma(k * pi / 16, {}, t0());
    EXPECT_GE(s, prev);
    EXPECT_GE(s, t0().theta0 - 1e-12);
    EXPECT_LE(s, 1.0 + 1e-2);
    prev = s;
  }
}

TEST(Sigma, SmallAngleInterpolation) {
  const double a = halfspace_sigma(0.05, {}, t0()), b = halfspace_sigma(0.1, {}, t0());
  EXPECT_NEAR(a, 0.5 * (t0().theta0 + b), 1e-12);
}

TEST(Sigma, Errors) {
  EXPECT_THROW(halfspace_sigma(-0.1, {}, t0()), DomainError);
  EXPECT_THROW(halfspace_sigma(2.0, {}, t0()), DomainError);
  EXPECT_THROW(halfspace_sigma(1.0, HalfPlaneGrid{20.0, 4, 0.1}, t0()), UsageError);
}

TEST(Wedge, Examples) {
  EXPECT_NEAR(wedge_energy_upper(pi / 3, 1.0).upper, 0.604600, 1e-6);
  EXPECT_NEAR(wedge_energy_upper(std::sqrt(3.0), 2.5).upper, 2.5, 1e-15);
  EXPECT_TRUE(wedge_energy_upper(1.0, 0.0).degenerate);
  EXPECT_EQ(wedge_energy_upper(1.0, 1.0).kind, EstimateKind::UpperBound);
  EXPECT_THROW(wedge_energy_upper(0.0, 1.0), DomainError);
  EXPECT_THROW(wedge_energy_upper(7.0, 1.0), DomainError);
  EXPECT_THROW(wedge_energy_upper(1.0, -1.0), DomainError);
}

TEST(Cylinder, AxialFieldOnSquare) {
  const auto e = cylinder_energy({0, 0, 1}, square(), 0.5);
  EXPECT_EQ(e.kind, EstimateKind::TwoSided);
  EXPECT_LE(e.upper, t0().theta0 + 1e-12);
  EXPECT_DOUBLE_EQ(e.lower, 0.5);
  EXPECT_LE(e.lower, e.upper);
  EXPECT_EQ(e.contributions.size(), 9u);
}

TEST(Cylinder, FloorClampedAndHomogeneous) {
  const auto e = cylinder_energy({0, 0, 1}, square(), 1.0);
  EXPECT_DOUBLE_EQ(e.lower, e.upper);
  const MagneticField B{1, 2, 0.5};
  const auto a = cylinder_energy(B, hexagon(), 0.5);
  const auto b = cylinder_energy(B.scaled(3.0), hexagon(), 0.5);
  EXPECT_NEAR(b.upper, 3.0 * a.upper, 1e-12 * b.upper);
  EXPECT_NEAR(b.lower, 3.0 * a.lower, 1e-12 * b.lower);
  EXPECT_LE(a.upper, B.norm() + 1e-12);
}

TEST(Cylinder, Errors) {
  EXPECT_THROW(cylinder_energy({0, 0, 1}, square(), 0.0), UsageError);
  EXPECT_THROW(cylinder_energy({0, 0, 1}, square(), 1.5), UsageError);
  EXPECT_TRUE(cylinder_energy({0, 0, 0}, square(), 0.5).degenerate);
}

TEST(Essential, ConvergesToCylinder) {
  const MagneticField B{0, 0, 1};
  const auto cyl = cylinder_energy(B, square(), 0.5);
  const auto ladder = essential_spectrum_limit(B, square(), {0.5, 0.2, 0.1, 0.05}, 0.5);
  ASSERT_EQ(ladder.size(), 4u);
  double prev = 1e300;
  for (const auto& [eps, est] : ladder) {
    const double gap = std::abs(est.upper - cyl.upper);
    EXPECT_LT(gap, prev);
    prev = gap;
  }
  EXPECT_LT(prev, 0.05);
}

TEST(Essential, Errors) {
  EXPECT_THROW(essential_spectrum_limit({0, 0, 1}, square(), {}, 0.5), UsageError);
  EXPECT_THROW(essential_spectrum_limit({0, 0, 1}, square(), {0.1, 0.2}, 0.5), UsageError);
  EXPECT_THROW(essential_spectrum_limit({0, 0, 1}, square(), {0.0}, 0.5), UsageError);
  const auto z = essential_spectrum_limit({0, 0, 0}, square(), {0.1}, 0.5);
  EXPECT_TRUE(z.front().second.degenerate);
}

TEST(Concentration, DiscExample) {
  const auto c = concentration_threshold({0, 0, 1}, Section{unit_disc()}, 0.5);
  EXPECT_NEAR(c.epsilonStar(), std::sqrt(2.0) / 3.0, 1e-15);
  EXPECT_TRUE(c(0.4).holds);
  EXPECT_FALSE(c(0.5).holds);
  EXPECT_NEAR(c(0.4).vertexBound, 1.2 / (2 * std::sqrt(2.0)), 1e-15);
  EXPECT_THROW(c(0.0), DomainError);
}

TEST(Concentration, FieldScaleInvarianceAndFloor) {
  const auto a = concentration_threshold({0.2, 0.1, 1}, Section{square()}, 0.5);
  const auto b = concentration_threshold({0.4, 0.2, 2}, Section{square()}, 0.5);
  EXPECT_NEAR(a.epsilonStar(), b.epsilonStar(), 1e-15);
  const auto c = concentration_threshold({0, 0, 1}, Section{unit_disc()}, 0.4);
  EXPECT_NEAR(c.epsilonStar(), 0.4 / (3.0 / (2 * std::sqrt(2.0))), 1e-15);
  const auto d = concentration_threshold({0, 0, 1}, Section{unit_disc()}, 0.9);
  EXPECT_DOUBLE_EQ(d.floorUsed(), 0.5);
  EXPECT_THROW(concentration_threshold({0, 0, 1}, Section{unit_disc()}, 0.0), UsageError);
}

TEST(Concentration, ZeroField) {
  const auto c = concentration_threshold({0, 0, 0}, Section{square()}, 0.5);
  EXPECT_TRUE(c.degenerate());
  EXPECT_TRUE(std::isinf(c.epsilonStar()));
}

TEST(TruncatedEdges, SquareCertified) {
  const auto r = truncated_domain_edges(square(), 0.3, 0.3);
  EXPECT_TRUE(r.certified);
  EXPECT_EQ(r.lateral.size(), 4u);
  EXPECT_EQ(r.cap.size(), 4u);
  EXPECT_GE(r.beta0Max, 0.3);
  EXPECT_FALSE(truncated_domain_edges(square(), 0.3, 1.5).certified);
  EXPECT_THROW(truncated_domain_edges(square(), 0.3, 0.0), UsageError);
}

TEST(TruncatedEdges, SmallEpsilonLimits) {
  const auto r = truncated_domain_edges(square(), 1e-4, 0.3);
  for (double a : r.lateral) EXPECT_NEAR(a, pi / 2, 1e-6);
  for (double a : r.cap) EXPECT_NEAR(a, pi / 2, 1e-3);
  const auto t = truncated_domain_edges(unit_triangle(), 1e-4, 0.3);
  EXPECT_NEAR(t.lateral[0], pi / 2, 1e-6);
  EXPECT_NEAR(t.lateral[1], pi / 4, 1e-6);
  EXPECT_NEAR(t.lateral[2], pi / 4, 1e-6);
}
