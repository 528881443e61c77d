#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "ergo/error.hpp"
#include "ergo/measure.hpp"
#include "ergo/quadrature.hpp"
#include "oracle.hpp"

using namespace ergo;
namespace d = ergo::density;

namespace {

const double kSqrtPi = std::sqrt(M_PI);

// One member of every closed-form family, each a Levy measure.
std::vector<RadonMeasure> levy_zoo() {
  return {
      RadonMeasure::point(1.0),
      RadonMeasure({{0.5, 2.0}, {3.0, 0.25}}, {}),
      RadonMeasure::with_density(d::PowerLaw{0.5 / kSqrtPi, 0.5}),
      RadonMeasure::with_density(d::PowerLaw{0.3, 0.8}),
      RadonMeasure::with_density(d::ExpDecay{1.0, 1.0}),
      RadonMeasure::with_density(d::ExpDecay{2.0, 0.3}),
      RadonMeasure::with_density(d::Uniform{0.7, 0.2, 1.5}),
      RadonMeasure::with_density(d::LogKernel{}),
      RadonMeasure::with_density(d::Tabulated{{0.1, 0.5, 2.0, 4.0}, {0.0, 1.0, 0.5, 0.0}}),
      RadonMeasure::with_density(d::GammaKernel{1.0, 0.5, 2.0}),
      RadonMeasure({{2.0, 1.0}}, {d::ExpDecay{0.5, 2.0}, d::PowerLaw{0.1, 0.3}}),
  };
}

}  // namespace

TEST(Measure, RejectsInvalidAtoms) {
  EXPECT_THROW(RadonMeasure({{0.0, 1.0}}, {}), DomainError);
  EXPECT_THROW(RadonMeasure({{1.0, -1.0}}, {}), DomainError);
  EXPECT_THROW(RadonMeasure({{1.0, 0.0}}, {}), DomainError);
  EXPECT_THROW(RadonMeasure::with_density(d::PowerLaw{1.0, 1.0}), DomainError);
  EXPECT_THROW(RadonMeasure::with_density(d::Uniform{1.0, 2.0, 1.0}), DomainError);
  EXPECT_THROW(RadonMeasure::with_density(d::Tabulated{{1.0, 0.5}, {1.0, 1.0}}), DomainError);
  EXPECT_THROW(RadonMeasure::with_density(d::Tabulated{{0.5, 1.0}, {1.0, -1.0}}), DomainError);
}

TEST(Measure, TailMassExamples) {
  EXPECT_DOUBLE_EQ(tail_mass(RadonMeasure::point(1.0), 0.5), 1.0);
  EXPECT_DOUBLE_EQ(tail_mass(RadonMeasure::point(1.0), 2.0), 0.0);
  // c s^{-3/2} has tail 2c r^{-1/2}.
  const auto unit = RadonMeasure::with_density(d::PowerLaw{1.0 / kSqrtPi, 0.5});
  EXPECT_NEAR(tail_mass(unit, 4.0), 0.56418958354775629, 1e-15);
  const auto frac = RadonMeasure::with_density(d::PowerLaw{0.5 / kSqrtPi, 0.5});
  EXPECT_NEAR(tail_mass(frac, 4.0), 0.28209479177387814, 1e-15);
  EXPECT_THROW(tail_mass(unit, 0.0), DomainError);
}

TEST(Measure, TruncatedFirstMomentExamples) {
  EXPECT_DOUBLE_EQ(truncated_first_moment(RadonMeasure::point(1.0), 2.0), 1.0);
  EXPECT_DOUBLE_EQ(truncated_first_moment(RadonMeasure::point(1.0), 0.5), 0.0);
  const auto unit = RadonMeasure::with_density(d::PowerLaw{1.0 / kSqrtPi, 0.5});
  EXPECT_NEAR(truncated_first_moment(unit, 1.0), 1.1283791670955126, 1e-14);
  EXPECT_NEAR(truncated_first_moment(unit, 1.0, EvalMode::quadrature), 1.1283791670955126, 1e-9);
}

TEST(Measure, LevyIntegralExamples) {
  EXPECT_DOUBLE_EQ(levy_integral(RadonMeasure::point(1.0)), 0.5);
  EXPECT_DOUBLE_EQ(levy_integral(RadonMeasure::point(3.0, 2.0)), 1.5);
  const auto e = RadonMeasure::with_density(d::ExpDecay{1.0, 1.0});
  EXPECT_NEAR(levy_integral(e), 0.40365263767680593, 1e-14);
  EXPECT_NEAR(levy_integral(e, EvalMode::quadrature), 0.40365263767680593, 1e-10);
}

TEST(Measure, ExpIntegralExamples) {
  const auto atom = RadonMeasure::point(1.0);
  EXPECT_NEAR(exp_integral(atom, 1.0, Kernel::one_minus_exp).real(), 0.63212055882855768, 1e-15);
  for (const auto& mu : levy_zoo())
    EXPECT_EQ(exp_integral(mu, 0.0, Kernel::one_minus_exp), cplx(0.0, 0.0));
  const auto frac = RadonMeasure::with_density(d::PowerLaw{0.5 / kSqrtPi, 0.5});
  EXPECT_NEAR(std::abs(exp_integral(frac, 1.0, Kernel::one_minus_exp) - 1.0), 0.0, 1e-14);
  EXPECT_NEAR(std::abs(exp_integral(frac, 1.0, Kernel::one_minus_exp, EvalMode::quadrature) - 1.0),
              0.0, 1e-9);
}

TEST(Measure, ExpKernelDivergence) {
  const auto frac = RadonMeasure::with_density(d::PowerLaw{1.0, 0.5});
  EXPECT_THROW(exp_integral(frac, 1.0, Kernel::exp), DivergenceError);
  const auto lebesgue = RadonMeasure::with_density(d::GammaKernel{1.0, 1.0, 0.0});
  EXPECT_THROW(exp_integral(lebesgue, cplx(0.0, 1.0), Kernel::exp), DivergenceError);
  EXPECT_NEAR(std::abs(exp_integral(lebesgue, 2.0, Kernel::exp) - 0.5), 0.0, 1e-15);
  // Finite mass: re z = 0 is fine.
  const auto e = RadonMeasure::with_density(d::ExpDecay{1.0, 1.0});
  EXPECT_NEAR(std::abs(exp_integral(e, cplx(0.0, 1.0), Kernel::exp) - 1.0 / cplx(1.0, 1.0)), 0.0, 1e-15);
}

TEST(Measure, ClosedFormsAgreeWithQuadrature) {
  const std::vector<cplx> zs{{0.5, 0.0}, {1.0, 2.0}, {3.0, -1.0}, {0.0, 1.5}};
  for (const auto& mu : levy_zoo()) {
    for (double r : {0.05, 0.7, 2.5, 10.0}) {
      EXPECT_TRUE(oracle::rel_close(tail_mass(mu, r, EvalMode::quadrature), tail_mass(mu, r), 1e-8) ||
                  std::abs(tail_mass(mu, r)) < 1e-14);
      EXPECT_NEAR(truncated_first_moment(mu, r, EvalMode::quadrature), truncated_first_moment(mu, r),
                  1e-8 * (1.0 + truncated_first_moment(mu, r)));
    }
    EXPECT_NEAR(levy_integral(mu, EvalMode::quadrature), levy_integral(mu), 1e-8 * levy_integral(mu));
    for (cplx z : zs) {
      const cplx closed = exp_integral(mu, z, Kernel::one_minus_exp);
      const cplx numeric = exp_integral(mu, z, Kernel::one_minus_exp, EvalMode::quadrature);
      EXPECT_LE(std::abs(closed - numeric), 1e-8 * std::abs(closed)) << z;
    }
  }
}

TEST(Measure, BoostOracleForFamilies) {
  // Independent route: Boost tanh-sinh / exp-sinh on the raw densities.
  const double c = 0.5 / kSqrtPi;
  auto frac = [&](double s) { return c * std::pow(s, -1.5); };
  const auto mu = RadonMeasure::with_density(d::PowerLaw{c, 0.5});
  const double t = 3.0;
  const double ref_tfm = oracle::finite([&](double s) { return c / std::sqrt(s); }, 0.0, t);
  EXPECT_NEAR(truncated_first_moment(mu, t), ref_tfm, 1e-12);
  const double ref_tail = oracle::half_line(frac, t);
  EXPECT_NEAR(tail_mass(mu, t), ref_tail, 1e-12);

  auto logk = [](double s) { return std::exp(-s) / s; };
  const auto lk = RadonMeasure::with_density(d::LogKernel{});
  const double ref_levy = oracle::positive_axis([](double s) { return std::exp(-s) / (1 + s); });
  EXPECT_NEAR(levy_integral(lk), ref_levy, 1e-12);
  const double ref_om = oracle::positive_axis([&](double s) { return s > 0.0 ? -std::expm1(-2.0 * s) * logk(s) : 2.0; });
  EXPECT_NEAR(exp_integral(lk, 2.0, Kernel::one_minus_exp).real(), ref_om, 1e-12);
}

TEST(Measure, StieltjesAndMoments) {
  const auto shifted = RadonMeasure::with_density(d::ShiftedReciprocal{1.0, 1.0});
  // Integral of 1/((2+s)(1+s)) over (0, inf) is ln 2.
  EXPECT_NEAR(stieltjes_transform(shifted, 2.0).real(), std::log(2.0), 1e-14);
  EXPECT_NEAR(stieltjes_transform(shifted, 2.0, EvalMode::quadrature).real(), std::log(2.0), 1e-9);
  const auto lebesgue = RadonMeasure::with_density(d::GammaKernel{1.0, 1.0, 0.0});
  for (int n = 0; n < 6; ++n)
    EXPECT_NEAR(laplace_moment(lebesgue, n, 2.0) / std::tgamma(n + 1.0), std::pow(2.0, -(n + 1)), 1e-14);
  const auto atom = RadonMeasure::point(1.0);
  EXPECT_NEAR(laplace_moment(atom, 3, 1.0), std::exp(-1.0), 1e-15);
}

TEST(Measure, TailIsNonincreasingOnRandomGrids) {
  std::mt19937_64 rng(20261018);
  std::uniform_real_distribution<double> logr(-4.0, 3.0);
  for (const auto& mu : levy_zoo()) {
    std::vector<double> rs(60);
    for (double& r : rs) r = std::pow(10.0, logr(rng));
    std::sort(rs.begin(), rs.end());
    for (std::size_t i = 1; i < rs.size(); ++i) EXPECT_LE(tail_mass(mu, rs[i]), tail_mass(mu, rs[i - 1]));
  }
}

TEST(Measure, FubiniIdentities) {
  constexpr double kInf = std::numeric_limits<double>::infinity();
  for (const auto& mu : levy_zoo()) {
    for (double t : {0.1, 1.0, 7.0}) {
      const double lhs = truncated_first_moment(mu, t) / t + tail_mass(mu, t);
      // Direct: integral of min(s/t, 1) against mu, atoms summed by hand.
      double direct = 0.0;
      for (const auto& a : mu.atoms()) direct += std::min(a.location / t, 1.0) * a.weight;
      std::vector<double> cuts = mu.scales();
      cuts.push_back(t);
      std::sort(cuts.begin(), cuts.end());
      direct += ergo::quad::integrate([&](double s) { return std::min(s / t, 1.0) * mu.density(s); }, 0.0,
                                      kInf, cuts, {1e-12, 0.0, 1'000'000})
                    .value;
      EXPECT_NEAR(lhs, direct, 1e-8 * lhs);
      // Average of the tail over (0, t).
      std::vector<double> inner;
      for (double s : mu.scales())
        if (s < t) inner.push_back(s);
      const double avg =
          ergo::quad::integrate([&](double r) { return tail_mass(mu, r); }, 0.0, t, inner, {1e-12, 0.0, 1'000'000})
              .value /
          t;
      EXPECT_NEAR(avg, lhs, 1e-8 * lhs);
    }
  }
}

TEST(Measure, LevyIntegralFiniteForConstructibleMeasures) {
  for (const auto& mu : levy_zoo()) EXPECT_TRUE(std::isfinite(levy_integral(mu)));
  const auto lebesgue = RadonMeasure::with_density(d::GammaKernel{1.0, 1.0, 0.0});
  EXPECT_EQ(levy_integral(lebesgue), infinite_mass);
  EXPECT_EQ(tail_mass(RadonMeasure::with_density(d::ShiftedReciprocal{1.0, 1.0}), 1.0), infinite_mass);
}

TEST(Measure, Combination) {
  const auto a = RadonMeasure::point(1.0);
  const auto b = RadonMeasure::with_density(d::ExpDecay{1.0, 1.0});
  const auto sum = (a + b).scaled(2.0);
  EXPECT_NEAR(tail_mass(sum, 0.5), 2.0 * (1.0 + std::exp(-0.5)), 1e-15);
  EXPECT_NEAR(interval_mass(sum, 0.5, 1.0), 2.0 * (1.0 + std::exp(-0.5) - std::exp(-1.0)), 1e-15);
  EXPECT_NEAR(total_mass(b), 1.0, 1e-15);
}
