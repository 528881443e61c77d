#include <gtest/gtest.h>

#include <boost/math/special_functions/expint.hpp>

#include "ergo/numeric.hpp"

using ergo::cplx;

TEST(Numeric, Expm1MatchesSeriesAndLibrary) {
  EXPECT_NEAR(std::abs(ergo::expm1(cplx(1e-12, 0)) - std::expm1(1e-12)), 0.0, 1e-28);
  const cplx w(0.3, -0.2);
  EXPECT_NEAR(std::abs(ergo::expm1(w) - (std::exp(w) - 1.0)), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(ergo::expm1(cplx(2, 3)) - (std::exp(cplx(2, 3)) - 1.0)), 0.0, 1e-13);
}

TEST(Numeric, Phi1RemovableSingularity) {
  EXPECT_EQ(ergo::phi1(cplx(0, 0)), cplx(1, 0));
  EXPECT_NEAR(std::abs(ergo::phi1(cplx(1e-9, 0)) - cplx(1.0 + 5e-10, 0)), 0.0, 1e-17);
  const cplx w(-2.0, 0.5);
  EXPECT_NEAR(std::abs(ergo::phi1(w) - (std::exp(w) - 1.0) / w), 0.0, 1e-15);
}

TEST(Numeric, LogOverZm1) {
  EXPECT_EQ(ergo::log_over_zm1(cplx(1, 0)), cplx(1, 0));
  EXPECT_NEAR(ergo::log_over_zm1(cplx(2, 0)).real(), 0.69314718055994531, 1e-15);
  EXPECT_NEAR(ergo::log_over_zm1(cplx(ergo::constants::e, 0)).real(), 0.58197670686932642, 1e-15);
  // Series branch against the direct formula just outside it.
  const cplx near(1.0 + 9e-5, 3e-5);
  const cplx far(1.0 + 2e-4, 0);
  EXPECT_NEAR(std::abs(ergo::log_over_zm1(near) - (1.0 - (near - 1.0) / 2.0)), 0.0, 1e-8);
  EXPECT_NEAR(std::abs(ergo::log_over_zm1(far) - std::log(far) / (far - 1.0)), 0.0, 1e-11);
}

TEST(Numeric, ExpintAgainstBoost) {
  for (double x : {1e-6, 0.1, 0.5, 1.0, 2.0, 10.0, 40.0}) {
    const double ref = boost::math::expint(1, x);
    EXPECT_NEAR(ergo::expint_e1(x) / ref, 1.0, 1e-13) << x;
    EXPECT_NEAR(ergo::scaled_expint_e1(x) / (std::exp(x) * ref), 1.0, 1e-12) << x;
  }
  // Large arguments stay finite where e^x overflows.
  EXPECT_NEAR(ergo::scaled_expint_e1(1e6) * 1e6, 1.0, 1e-5);
}

TEST(Numeric, RichardsonRemovesLinearError) {
  // F(h) = 2 + 3h + h^2 sampled at h = 1, 1/2, 1/4, 1/8.
  std::vector<double> s;
  for (double h = 1.0; h > 0.1; h /= 2) s.push_back(2 + 3 * h + h * h);
  EXPECT_NEAR(ergo::richardson(s, 2.0, 1), 2.0, 1e-12);
}

TEST(Numeric, Grids) {
  const auto g = ergo::log_grid(1e-2, 1e2, 5);
  ASSERT_EQ(g.size(), 5u);
  EXPECT_DOUBLE_EQ(g.front(), 1e-2);
  EXPECT_DOUBLE_EQ(g.back(), 1e2);
  EXPECT_NEAR(g[2], 1.0, 1e-14);
  const auto l = ergo::linear_grid(-1, 1, 3);
  EXPECT_DOUBLE_EQ(l[1], 0.0);
}

TEST(Numeric, NegativeAxis) {
  EXPECT_TRUE(ergo::on_negative_axis(cplx(0, 0)));
  EXPECT_TRUE(ergo::on_negative_axis(cplx(-3, 0)));
  EXPECT_FALSE(ergo::on_negative_axis(cplx(-3, 1e-300)));
  EXPECT_FALSE(ergo::on_negative_axis(cplx(2, 0)));
}

TEST(Numeric, RemovableSingularityPatch) {
  auto f = [](cplx z) { return (std::exp(z) - std::exp(cplx(1.0, 0))) / (z - 1.0); };
  ergo::RemovableSingularityPatch patch(f, cplx(1, 0), 1e-2, 4);
  EXPECT_NEAR(std::abs(patch(cplx(1, 0)) - ergo::constants::e), 0.0, 1e-12);
  const cplx z(1 + 5e-5, -2e-5);
  // e^z expanded about 1: derivative quotient = e (1 + w/2 + w^2/6 + ...)
  const cplx w = z - 1.0;
  EXPECT_NEAR(std::abs(patch(z) - ergo::constants::e * (1.0 + w / 2.0 + w * w / 6.0)), 0.0, 1e-12);
}
