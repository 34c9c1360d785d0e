#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <numbers>

#include "gpi/error.hpp"
#include "gpi/moments.hpp"
#include "test_util.hpp"

namespace gpi {
namespace {

using testing::Gen;
using testing::rel_err;

// Reference values are from mpmath at 40 digits.

TEST(AbsMoment1d, MatchesHighPrecisionValues) {
  EXPECT_LT(rel_err(abs_moment_1d(1.0, -0.9), 8.0413584219659847908), 1e-14);
  EXPECT_LT(rel_err(abs_moment_1d(2.0, 3.5), 24.325604285150405662), 1e-14);
  EXPECT_LT(rel_err(abs_moment_1d(0.5, -0.5), 2.4325604285150405662), 1e-14);
  EXPECT_LT(rel_err(abs_moment_1d(1.0, 40.0), 3.1983098677287777082e+23), 1e-15);
}

TEST(AbsMoment1d, ClosedFormsAtSmallIntegers) {
  EXPECT_EQ(abs_moment_1d(1.0, 0.0), 1.0);
  EXPECT_LT(rel_err(abs_moment_1d(1.0, 1.0), std::sqrt(2.0 / std::numbers::pi)), 1e-15);
  EXPECT_EQ(abs_moment_1d(3.0, 2.0), 9.0);
  EXPECT_EQ(abs_moment_1d(1.0, 4.0), 3.0);
}

TEST(AbsMoment1d, RejectsBadArguments) {
  EXPECT_THROW(abs_moment_1d(0.0, 1.0), Error);
  EXPECT_THROW(abs_moment_1d(1.0, -1.0), Error);
  EXPECT_THROW(abs_moment_1d(-1.0, 1.0), Error);
}

TEST(ProductMoment, IndependentCaseIsProductOfMarginals) {
  EXPECT_LT(rel_err(product_moment({1, 1, 1, 1, 0}), 2.0 / std::numbers::pi), 1e-15);
}

TEST(ProductMoment, MatchesHighPrecisionValues) {
  const struct { MomentSpec s; double moment, gap; } cases[] = {
      {{1, 1, 1, 1, 0.5}, 0.71799556208845871618, 0.081375789720877373102},
      {{2, 0.5, 1.5, 2.5, -0.75}, 1.0825513213728294313, 0.552221235482918788},
      {{1, 1, -0.9, -0.9, 0.95}, 165.46622537675662533, 100.80278010623335222},
      {{0.5, 2, -0.5, 3, 0.25}, 29.617897544791294603, -1.4365410013231548319},
      {{1, 1, 2, 3, 0.3}, 2.0266267844392780039, 0.43085766283354729218},
      {{1, 1, -0.5, 2, 0.5}, 1.5050699778179091869, -0.21500999683112988384},
  };
  for (const auto& c : cases) {
    EXPECT_LT(rel_err(product_moment(c.s), c.moment), 1e-13) << c.s.alpha1 << " " << c.s.alpha2;
    EXPECT_LT(rel_err(gap(c.s), c.gap), 1e-12) << c.s.alpha1 << " " << c.s.alpha2;
  }
}

TEST(ProductMoment, NearUnitCorrelationNeedsALargerTermBudget) {
  const MomentSpec s{1, 1, -0.3, -0.2, 0.999999};
  SeriesOptions wide;
  wide.max_terms = 10'000'000;
  EXPECT_LT(rel_err(product_moment(s, wide), 1.7117337234367156336), 1e-9);
  EXPECT_LT(rel_err(gap(s, wide), 0.20002235769854452659), 1e-8);
}

TEST(ProductMoment, RequiresOpenCorrelationInterval) {
  EXPECT_THROW(product_moment({1, 1, 1, 1, 1.0}), Error);
  EXPECT_THROW(product_moment({1, 1, 1, 1, 1.5}), Error);
  EXPECT_THROW(product_moment({1, 1, -1.2, 1, 0.5}), Error);
}

TEST(RhoOne, EqualSigmasGiveSingleMoment) {
  EXPECT_EQ(product_moment_rho_one({1, 1, 1, 1, 1}), 1.0);
  EXPECT_EQ(product_moment_rho_one({1, 1, 1, 1, -1}), 1.0);
  EXPECT_LT(rel_err(product_moment_rho_one({1, 1, 2, 3, 1}), 6.383076486422922847), 1e-14);
  EXPECT_LT(rel_err(product_moment_rho_one({1, 1, -0.3, -0.2, 1}), 1.7200799746490390708), 1e-14);
  EXPECT_LT(rel_err(product_moment_rho_one({2, 2, 1.5, 0.5, 1}), 4.0), 1e-15);
}

TEST(RhoOne, NonIntegrableSumIsInfinite) {
  EXPECT_TRUE(std::isinf(product_moment_rho_one({1, 1, -0.5, -0.5, 1})));
  EXPECT_TRUE(std::isinf(product_moment_rho_one({1, 1, -0.6, -0.7, 1})));
}

TEST(RhoOne, RejectsUnequalSigmasAndInteriorRho) {
  EXPECT_THROW(product_moment_rho_one({1, 2, 1, 1, 1}), Error);
  EXPECT_THROW(product_moment_rho_one({1, 1, 1, 1, 0.5}), Error);
}

TEST(Gap, ZeroAtZeroCorrelation) {
  EXPECT_EQ(gap({2, 0.5, 1.5, -0.3, 0.0}), 0.0);
}

TEST(Gap, UnitCorrelationUsesLimitMoment) {
  const MomentSpec s{1, 1, 2, 3, 1};
  EXPECT_LT(rel_err(gap(s), 6.383076486422922847 - product_of_marginals(s)), 1e-14);
}

TEST(Gap, SmallCorrelationStaysAccurate) {
  // Leading term: prefactor * a1 a2 rho^2 / 2 for the (-a1/2, -a2/2; 1/2) series.
  const MomentSpec s{1, 1, 1, 1, 1e-7};
  const double lead = std::exp(log_prefactor(s)) * 0.5 * 1e-14;
  EXPECT_LT(rel_err(gap(s), lead), 1e-6);
}

// Properties.

TEST(Properties, GapPathsAgree) {
  Gen g(201);
  for (int i = 0; i < 300; ++i) {
    const MomentSpec s{g.uniform(0.3, 3), g.uniform(0.3, 3), g.exponent(), g.exponent(),
                       g.uniform(-0.95, 0.95)};
    EXPECT_LT(rel_err(gap_via_3f2(s), gap(s)), 1e-10)
        << s.alpha1 << " " << s.alpha2 << " " << s.rho;
  }
}

TEST(Properties, MomentIsEvenInRho) {
  Gen g(202);
  for (int i = 0; i < 200; ++i) {
    MomentSpec s{g.uniform(0.3, 3), g.uniform(0.3, 3), g.exponent(), g.exponent(),
                 g.uniform(0, 0.95)};
    const double plus = product_moment(s);
    s.rho = -s.rho;
    EXPECT_EQ(product_moment(s), plus);
  }
}

TEST(Properties, MomentScalesWithSigmas) {
  Gen g(203);
  for (int i = 0; i < 200; ++i) {
    MomentSpec s{1, 1, g.exponent(), g.exponent(), g.uniform(-0.95, 0.95)};
    const double base = product_moment(s);
    s.sigma1 = g.uniform(0.2, 4);
    s.sigma2 = g.uniform(0.2, 4);
    const double want = base * std::pow(s.sigma1, s.alpha1) * std::pow(s.sigma2, s.alpha2);
    EXPECT_LT(rel_err(product_moment(s), want), 1e-13);
  }
}

TEST(Properties, SwappingCoordinatesIsSymmetric) {
  Gen g(204);
  for (int i = 0; i < 200; ++i) {
    const MomentSpec s{g.uniform(0.3, 3), g.uniform(0.3, 3), g.exponent(), g.exponent(),
                       g.uniform(-0.95, 0.95)};
    const MomentSpec t{s.sigma2, s.sigma1, s.alpha2, s.alpha1, s.rho};
    EXPECT_LT(rel_err(product_moment(t), product_moment(s)), 1e-14);
  }
}

TEST(Properties, IsserlisAtEvenIntegers) {
  // E X^2 Y^2 = s1^2 s2^2 (1 + 2 rho^2);  E X^4 Y^2 = 3 s1^4 s2^2 (1 + 4 rho^2).
  Gen g(205);
  for (int i = 0; i < 100; ++i) {
    const double s1 = g.uniform(0.3, 3), s2 = g.uniform(0.3, 3), r = g.uniform(-1, 1);
    EXPECT_LT(rel_err(product_moment({s1, s2, 2, 2, r * 0.999}),
                      s1 * s1 * s2 * s2 * (1 + 2 * r * r * 0.999 * 0.999)),
              1e-14);
    EXPECT_LT(rel_err(product_moment({s1, s2, 4, 2, r * 0.999}),
                      3 * std::pow(s1, 4) * s2 * s2 * (1 + 4 * r * r * 0.999 * 0.999)),
              1e-14);
  }
}

TEST(Properties, SameSignGapIsNonNegative) {
  Gen g(206);
  for (int i = 0; i < 300; ++i) {
    double a1 = g.exponent(), a2 = g.exponent();
    if ((a1 < 0) != (a2 < 0)) a2 = -a2 * (a2 < 0 ? 1 : 0.1);
    const MomentSpec s{g.uniform(0.3, 3), g.uniform(0.3, 3), a1, a2, g.uniform(-0.95, 0.95)};
    EXPECT_GE(gap(s), 0.0) << a1 << " " << a2;
  }
}

TEST(Properties, ApproachesUnitCorrelationLimit) {
  for (const auto& [a1, a2] : {std::pair{1.0, 1.0}, std::pair{2.0, 3.0}, std::pair{1.5, 0.5}}) {
    const double limit = product_moment_rho_one({1, 1, a1, a2, 1});
    double prev = std::numeric_limits<double>::infinity();
    for (int k = 2; k <= 6; ++k) {
      const double dev = std::abs(product_moment({1, 1, a1, a2, 1 - std::pow(10.0, -k)}) - limit);
      EXPECT_LT(dev, prev);
      prev = dev;
    }
    EXPECT_LT(prev, 1e-3);
  }
}

}  // namespace
}  // namespace gpi
