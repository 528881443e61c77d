#include <gtest/gtest.h>

#include "ergo/catalog.hpp"
#include "ergo/error.hpp"
#include "ergo/stieltjes.hpp"

using namespace ergo;

TEST(Stieltjes, EvaluateExamples) {
  const StieltjesFunction inv(1.0, 0.0, {});
  EXPECT_NEAR(std::abs(evaluate_stieltjes(inv, cplx(0, 2)) - cplx(0, -0.5)), 0.0, 1e-15);
  EXPECT_NEAR(evaluate_stieltjes(log_example(), 2.0).real(), 0.69314718055994531, 1e-14);
  EXPECT_NEAR(evaluate_stieltjes(log_example(), 2.0, EvalMode::quadrature).real(), 0.69314718055994531, 1e-9);
  const StieltjesFunction b(0.0, 3.5, {});
  EXPECT_EQ(evaluate_stieltjes(b, cplx(-1, 4)), cplx(3.5, 0.0));
  EXPECT_THROW(evaluate_stieltjes(b, -2.0), BranchCutError);
  EXPECT_THROW(evaluate_stieltjes(b, 0.0), BranchCutError);
}

TEST(Stieltjes, ConstructorValidates) {
  const auto lebesgue = RadonMeasure::with_density(density::GammaKernel{1.0, 1.0, 0.0});
  EXPECT_THROW(StieltjesFunction(0.0, 0.0, lebesgue), DomainError);
  EXPECT_THROW(StieltjesFunction(-1.0, 0.0, {}), DomainError);
}

TEST(Stieltjes, LogRatio) {
  EXPECT_EQ(log_ratio(1.0), cplx(1.0, 0.0));
  EXPECT_NEAR(log_ratio(2.0).real(), 0.69314718055994531, 1e-15);
  EXPECT_NEAR(log_ratio(constants::e).real(), 0.58197670686932642, 1e-15);
  EXPECT_THROW(log_ratio(-1.0), BranchCutError);
}

TEST(Stieltjes, LogExampleAgreesWithClosedFormOnCutPlane) {
  const auto grid = polar_grid(1e-3, 1e3, 10, -3.0, 3.0, 13);
  for (cplx z : grid) {
    const cplx closed = log_ratio(z);
    EXPECT_LE(std::abs(evaluate_stieltjes(log_example(), z, EvalMode::quadrature) - closed), 1e-7 * std::abs(closed)) << z;
  }
}

TEST(Stieltjes, HerglotzCheck) {
  const auto grid = polar_grid(1e-2, 1e2, 20, -3.1, 3.1, 10);
  EXPECT_TRUE(herglotz_check([](cplx z) { return 1.0 / z; }, grid).pass);
  EXPECT_FALSE(herglotz_check([](cplx z) { return z; }, grid).pass);
  EXPECT_TRUE(herglotz_check(log_ratio, grid).pass);
}

TEST(Stieltjes, CbfToStieltjes) {
  const auto grid = polar_grid(1e-2, 1e2, 15, -M_PI / 2, M_PI / 2, 9);
  const auto from_log = cbf_to_stieltjes(catalog::log1p());
  for (cplx z : grid) EXPECT_LE(std::abs(from_log(z) - log_ratio(z)), 1e-7 * std::abs(log_ratio(z))) << z;
  // Near the removable singularity.
  for (cplx z : {cplx(1.0, 0.0), cplx(1.0 + 5e-5, 2e-5), cplx(1.0 - 3e-6, 0.0)})
    EXPECT_LE(std::abs(from_log(z) - log_ratio(z)), 1e-9) << z;

  const auto from_sqrt = cbf_to_stieltjes(catalog::frac_power(0.5));
  for (cplx z : grid) EXPECT_LE(std::abs(from_sqrt(z) - 1.0 / std::sqrt(z)), 1e-12 * std::abs(1.0 / std::sqrt(z)));
  const auto from_ratio = cbf_to_stieltjes(catalog::z_over_z_plus_1());
  for (cplx z : grid) EXPECT_LE(std::abs(from_ratio(z) - 1.0 / (1.0 + z)), 1e-12);

  for (const auto& f : {from_log, from_sqrt, from_ratio}) {
    EXPECT_TRUE(herglotz_check(f, grid).pass);
    double prev = 1e300;
    for (double t : log_grid(1e-3, 1e3, 50)) {
      const double v = f(t).real();
      EXPECT_GT(v, 0.0);
      EXPECT_LE(v, prev * (1 + 1e-12));
      prev = v;
    }
  }
  EXPECT_THROW(cbf_to_stieltjes(catalog::drift()), DomainError);
  EXPECT_THROW(cbf_to_stieltjes(catalog::atom()), DomainError);
}

TEST(Stieltjes, HirschProbe) {
  const auto lebesgue = RadonMeasure::with_density(density::GammaKernel{1.0, 1.0, 0.0});
  const auto v = hirsch_logconvexity_probe(lebesgue, 0.0, 2.0, 8);
  EXPECT_TRUE(v.pass);
  for (int n = 0; n <= 8; ++n) EXPECT_NEAR(v.alpha[n], std::pow(2.0, -(n + 1)), 1e-14);
  const auto atom = hirsch_logconvexity_probe(RadonMeasure::point(1.0), 0.0, 1.0, 6);
  EXPECT_FALSE(atom.pass);
  EXPECT_EQ(atom.order, 1);
  const auto e = RadonMeasure::with_density(density::ExpDecay{1.0, 1.0});
  const auto ev = hirsch_logconvexity_probe(e, 0.0, 0.5, 8);
  EXPECT_TRUE(ev.pass);
  for (int n = 0; n <= 8; ++n) EXPECT_NEAR(ev.alpha[n], std::pow(1.5, -(n + 1)), 1e-14);
  // A constant only raises alpha_0, which keeps log-convexity.
  EXPECT_TRUE(hirsch_logconvexity_probe(lebesgue, 1.0, 2.0, 8).pass);
  EXPECT_THROW(hirsch_logconvexity_probe(lebesgue, 0.0, 0.0, 8), DomainError);
}

TEST(Stieltjes, Potentials) {
  EXPECT_NEAR(potential_of(catalog::drift(), 4.0).real(), 0.25, 1e-15);
  EXPECT_NEAR(potential_of(catalog::frac_power(0.5), 4.0).real(), 0.5, 1e-14);
  EXPECT_EQ(potential_of(catalog::constant(1.0), cplx(2, 7)), cplx(1.0, 0.0));
  EXPECT_THROW(potential_of(catalog::drift(), 0.0), DomainError);
  // f(0+) is finite exactly when a > 0.
  EXPECT_NEAR(potential_of(catalog::constant(2.0), 1e-8).real(), 0.5, 1e-15);
  for (const auto& g : catalog::all()) {
    if (g.killing() > 0) continue;
    EXPECT_GT(potential_of(g, 1e-8).real(), 10.0) << g.name();
  }
}
