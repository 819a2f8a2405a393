#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "conebounds/robin.hpp"
#include "support.hpp"

using namespace conebounds;
using namespace testsupport;

namespace {

constexpr double pi = std::numbers::pi;

Polygon l_shape() { return Polygon({{0, 0}, {2, 0}, {2, 0.2}, {0.2, 0.2}, {0.2, 2}, {0, 2}}); }

}  // namespace

TEST(RobinModels, Values) {
  EXPECT_DOUBLE_EQ(robin_model_energy(RobinModel::HalfSpace), -1.0);
  EXPECT_DOUBLE_EQ(robin_model_energy(RobinModel::Wedge, pi / 2), -2.0);
  EXPECT_NEAR(robin_model_energy(RobinModel::Wedge, pi / 3), -4.0, 1e-14);
  EXPECT_DOUBLE_EQ(robin_model_energy(RobinModel::Wedge, 1.5 * pi), -1.0);
  EXPECT_THROW(robin_model_energy(RobinModel::Wedge, 0.0), DomainError);
  EXPECT_THROW(robin_model_energy(RobinModel::Wedge, 2 * pi), DomainError);
  EXPECT_EQ(parse_robin_model("wedge"), RobinModel::Wedge);
  EXPECT_EQ(parse_robin_model("halfSpace"), RobinModel::HalfSpace);
  EXPECT_THROW(parse_robin_model("cone"), UsageError);
}

TEST(RobinCone, CircularClosedForm) {
  for (double alpha : {pi / 6, pi / 3, pi / 2}) {
    const BoundaryProfile p(Section{Disc({0, 0}, std::tan(alpha / 2))});
    EXPECT_TRUE(p.smooth());
    const double expect = -1.0 / std::pow(std::sin(alpha / 2), 2);
    EXPECT_NEAR(robin_cone_upper_bound(p), expect, 1e-10 * std::abs(expect));
    EXPECT_NEAR(robin_cone_upper_bound(p), robin_model_energy(RobinModel::Wedge, alpha), 1e-10 * std::abs(expect));
  }
}

TEST(RobinCone, Square) {
  const BoundaryProfile p(Section{square()});
  EXPECT_FALSE(p.smooth());
  EXPECT_EQ(p.pieces().size(), 4u);
  EXPECT_NEAR(robin_cone_upper_bound(p), -2.0, 1e-12);
}

TEST(RobinCone, BelowHalfSpace) {
  std::mt19937 rng(kSeed);
  for (int k = 0; k < 30; ++k) {
    const Polygon poly = random_star_polygon(rng, true);
    const Polygon small = std::get<Polygon>(scale_section(Section{poly}, 0.3));
    EXPECT_LE(robin_cone_upper_bound(BoundaryProfile(Section{small})), -1.0);
  }
}

TEST(RobinCone, Invariance) {
  const Disc off({0.3, -0.2}, 0.5);
  const double ref = robin_cone_upper_bound(BoundaryProfile(Section{off}));
  EXPECT_NEAR(robin_cone_upper_bound(BoundaryProfile(Section{off}, off.center, 1.3)), ref, 1e-12 * std::abs(ref));
  const Section tri{unit_triangle()};
  const double t = robin_cone_upper_bound(BoundaryProfile(tri));
  for (double th : {0.4, 2.1, -1.0}) {
    EXPECT_NEAR(robin_cone_upper_bound(BoundaryProfile(rotate_section(tri, th))), t, 1e-12 * std::abs(t));
    EXPECT_NEAR(robin_cone_upper_bound(BoundaryProfile(rotate_section(Section{off}, th))), ref, 1e-12 * std::abs(ref));
  }
}

TEST(RobinCone, DiscDerivativeMatchesDifference) {
  const BoundaryProfile p(Section{Disc({0.3, -0.2}, 0.5)});
  for (double phi : {0.1, 1.0, 2.5, 4.0}) {
    const double h = 1e-6;
    EXPECT_NEAR(p.db(0, phi), (p.b(0, phi + h) - p.b(0, phi - h)) / (2 * h), 1e-7);
  }
}

TEST(RobinCone, NotStarShaped) {
  EXPECT_THROW(BoundaryProfile(Section{l_shape()}), DomainError);
  EXPECT_THROW(BoundaryProfile(Section{l_shape()}, {1.9, 0.1}), DomainError);
  EXPECT_THROW(BoundaryProfile(Section{square()}, {5, 0}), DomainError);
  EXPECT_THROW(BoundaryProfile(Section{unit_disc()}, {3, 0}), DomainError);
  EXPECT_NO_THROW(BoundaryProfile(Section{l_shape()}, {0.1, 0.1}));
}

TEST(RobinScaling, SmallSectionsScaleLikeEpsMinusTwo) {
  const std::vector<double> eps{1, 0.5, 0.25, 0.1};
  EXPECT_NEAR(robin_scaling_exponent(Section{Disc({0, 0}, 0.1)}, eps), -2.0, 0.05);
  EXPECT_NEAR(robin_scaling_exponent(Section{square(0.1)}, eps), -2.0, 0.05);
  EXPECT_NEAR(robin_scaling_exponent(Section{square(0.1)}, eps, Vec2{0.02, 0.01}), -2.0, 0.05);
}

TEST(RobinScaling, UnitDiscIsPreAsymptotic) {
  const double s = robin_scaling_exponent(Section{unit_disc()}, {1, 0.5, 0.25, 0.1});
  EXPECT_GT(s, -2.0);
  EXPECT_LT(s, -1.5);
}

TEST(RobinScaling, Errors) {
  EXPECT_THROW(robin_scaling_exponent(Section{unit_disc()}, {1, 0.1}), UsageError);
  EXPECT_THROW(robin_scaling_exponent(Section{unit_disc()}, {1, 0.5, 0.2}), UsageError);
  EXPECT_THROW(robin_scaling_exponent(Section{unit_disc()}, {1, 0.5, -0.1}), UsageError);
}

TEST(RobinAxisScan, SquareOptimumAtCentre) {
  const auto s = robin_axis_scan(Section{square()}, 6);
  EXPECT_NEAR(s.bound, -2.0, 1e-12);
  EXPECT_NEAR(s.axis.x, 0.0, 1e-15);
  EXPECT_NEAR(s.axis.y, 0.0, 1e-15);
  EXPECT_GT(s.evaluated, 1u);
  EXPECT_THROW(robin_axis_scan(Section{square()}, 1), UsageError);
}

TEST(RobinAxisScan, SkipsInvalidAxes) {
  const auto s = robin_axis_scan(Section{l_shape()}, 20);
  EXPECT_GE(s.evaluated, 1u);
  EXPECT_LE(s.bound, -1.0);
  EXPECT_THROW(robin_axis_scan(Section{l_shape()}, 8), DomainError);
}
