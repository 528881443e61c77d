#include <gtest/gtest.h>

#include <random>

#include "ergo/catalog.hpp"
#include "ergo/error.hpp"
#include "ergo/semigroup.hpp"

using namespace ergo;

namespace {

Vector ones(std::size_t n) { return Vector::Ones(static_cast<Eigen::Index>(n)); }

Vector random_unit(std::size_t n, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  Vector x(static_cast<Eigen::Index>(n));
  for (auto& v : x) v = cplx(g(rng), g(rng));
  return x / x.norm();
}

DiagonalGenerator random_generator(std::size_t n, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> phase(-M_PI / 2, M_PI / 2);
  std::vector<double> phases(n);
  for (double& p : phases) p = phase(rng);
  return DiagonalGenerator::log_spaced(1e-3, 1.0, n, phases);
}

}  // namespace

TEST(Semigroup, GeneratorValidation) {
  EXPECT_THROW(DiagonalGenerator(std::vector<cplx>{}), DomainError);
  EXPECT_THROW(DiagonalGenerator({cplx(-1e-3, 0)}), DomainError);
  EXPECT_NO_THROW(DiagonalGenerator({cplx(0, 5)}));
  Eigen::MatrixXcd v(2, 2);
  v << 1, 1, 0, 1;
  const DiagonalGenerator gen({cplx(1, 0), cplx(2, 0)}, v);
  EXPECT_NEAR(gen.bound(), (3.0 + std::sqrt(5.0)) / 2.0, 1e-12);
}

TEST(Semigroup, ApplyExamples) {
  const DiagonalGenerator one({cplx(1, 0)});
  const Vector x = ones(1);
  EXPECT_EQ(semigroup_apply(one, 0.0, x), x);
  EXPECT_NEAR(semigroup_apply(one, 1.0, x)(0).real(), 0.36787944117144233, 1e-15);
  const DiagonalGenerator rot({cplx(0, 1)});
  const Vector y = semigroup_apply(rot, M_PI, x);
  EXPECT_NEAR(std::abs(y(0) - cplx(-1, 0)), 0.0, 1e-15);
  EXPECT_NEAR(y.norm(), 1.0, 1e-15);
  EXPECT_THROW(semigroup_apply(one, -1.0, x), DomainError);
}

TEST(Semigroup, SemigroupLaw) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(0.0, 20.0);
  const auto gen = random_generator(30, rng);
  const Vector x = random_unit(30, rng);
  for (int k = 0; k < 50; ++k) {
    const double s = u(rng), t = u(rng);
    EXPECT_LE((semigroup_apply(gen, s + t, x) - semigroup_apply(gen, s, semigroup_apply(gen, t, x))).norm(), 1e-14);
  }
}

TEST(Semigroup, CesaroMean) {
  const DiagonalGenerator gen({cplx(0, 0), cplx(1, 0)});
  const Vector x = ones(2);
  for (double t : {0.1, 1.0, 1e6}) EXPECT_EQ(cesaro_mean(gen, t, x)(0), cplx(1, 0));
  EXPECT_NEAR(cesaro_mean(gen, 1.0, x)(1).real(), 0.63212055882855768, 1e-15);
  // O(1/t) decay on ran(A).
  EXPECT_NEAR(cesaro_mean(gen, 1e6, x)(1).real() * 1e6, 1.0, 1e-9);
  std::mt19937_64 rng(5);
  const auto g = random_generator(40, rng);
  const Vector y = random_unit(40, rng);
  for (double t : {0.01, 1.0, 100.0}) EXPECT_LE(cesaro_mean(g, t, y).norm(), 1.0 + 1e-14);
}

TEST(Semigroup, PhillipsExamples) {
  const DiagonalGenerator gen({cplx(4, 0), cplx(0.5, 2.0)});
  const Vector x = ones(2);
  const Vector ax = phillips_apply(gen, catalog::drift(), x);
  EXPECT_EQ(ax(0), cplx(4, 0));
  EXPECT_EQ(ax(1), cplx(0.5, 2.0));
  EXPECT_EQ(phillips_apply(gen, catalog::constant(1.0), x), x);
  const Vector r = phillips_apply(DiagonalGenerator({cplx(4, 0)}), catalog::frac_power(0.5), ones(1));
  EXPECT_NEAR(std::abs(r(0) - 2.0), 0.0, 1e-8);
  EXPECT_THROW(phillips_apply(gen, catalog::log_rate(), x), MeasureUnavailableError);
}

TEST(Semigroup, PhillipsMatchesSpectralShortcut) {
  std::mt19937_64 rng(17);
  for (int k = 0; k < 3; ++k) {
    const auto gen = random_generator(20, rng);
    const Vector x = random_unit(20, rng);
    for (const auto& g : catalog::with_measure()) {
      const Vector a = phillips_apply(gen, g, x);
      const Vector b = spectral_apply(gen, g, x);
      EXPECT_LE((a - b).norm(), 1e-7 * b.norm()) << g.name();
    }
  }
}

TEST(Semigroup, RateBoundExamples) {
  const auto t_grid = log_grid(0.01, 1e4, 20);
  std::mt19937_64 rng(23);
  const DiagonalGenerator gen = random_generator(50, rng);
  const Vector x = random_unit(50, rng);
  const auto drift = rate_bound_check(gen, catalog::drift(), x, t_grid);
  EXPECT_TRUE(drift.pass);
  EXPECT_LE(drift.max_ratio, 1.0);
  const auto frac = rate_bound_check(DiagonalGenerator::log_spaced(1e-3, 1.0, 50), catalog::frac_power(0.5),
                                     random_unit(50, rng), t_grid);
  EXPECT_TRUE(frac.pass);
  EXPECT_LT(frac.max_ratio, 1.0);
  const std::vector<double> coarse{1.0, 10.0, 100.0};
  EXPECT_TRUE(rate_bound_check(DiagonalGenerator({cplx(0, 1)}), catalog::atom(), ones(1), coarse).pass);
  EXPECT_THROW(rate_bound_check(gen, catalog::drift(), Vector::Zero(50), coarse), DomainError);
}

TEST(Semigroup, RateBoundWithSimilarity) {
  std::mt19937_64 rng(29);
  std::normal_distribution<double> n;
  Eigen::MatrixXcd v(6, 6);
  for (auto& e : v.reshaped()) e = cplx(n(rng), n(rng));
  v += 4.0 * Eigen::MatrixXcd::Identity(6, 6);
  const DiagonalGenerator gen({cplx(0.1, 0), cplx(0.5, 2), cplx(1, -1), cplx(0, 3), cplx(2, 0), cplx(1e-3, 0)}, v);
  EXPECT_GT(gen.bound(), 1.0);
  const auto t_grid = log_grid(0.1, 1e3, 10);
  for (const auto& g : catalog::with_measure())
    EXPECT_TRUE(rate_bound_check(gen, g, random_unit(6, rng), t_grid).pass) << g.name();
}

TEST(Semigroup, DecayProfile) {
  // Ratio decreases once t lambda exceeds the maximiser of (1 - e^{-x})/sqrt(x).
  const auto gen = DiagonalGenerator::log_spaced(1.3, 10.0, 20);
  const auto rows = decay_profile(gen, catalog::frac_power(0.5), ones(20), log_grid(1.0, 1e4, 30));
  for (std::size_t i = 1; i < rows.size(); ++i) EXPECT_LT(rows[i].ratio, rows[i - 1].ratio);
  // Drift: r(t) = 1/t and the ratio tends to a constant.
  const auto d = decay_profile(DiagonalGenerator({cplx(1, 0)}), catalog::drift(), ones(1), log_grid(100.0, 1e4, 5));
  for (const auto& row : d) EXPECT_NEAR(row.ratio, 1.0, 0.02);
  // Invertible one-dimensional A: ratio -> 0.
  const auto one = decay_profile(DiagonalGenerator({cplx(1, 0)}), catalog::frac_power(0.5), ones(1),
                                 std::vector<double>{1e2, 1e6});
  EXPECT_LT(one[1].ratio, one[0].ratio * 1e-1);
}

TEST(Semigroup, SpectralInclusion) {
  EXPECT_TRUE(spectral_inclusion_check(DiagonalGenerator({cplx(0, 0)}), [](cplx z) { return cesaro_symbol(1.0, z); }).pass);
  const auto atom = catalog::atom();
  const auto h = [&](cplx z) { return cesaro_symbol(1.0, z) * evaluate(atom, z); };
  EXPECT_TRUE(spectral_inclusion_check(DiagonalGenerator({cplx(0, 1), cplx(2, 0)}), h).pass);
  const auto res = spectral_inclusion_check(DiagonalGenerator({cplx(1, 0)}), [](cplx z) { return 1.0 / (1.0 + z); });
  EXPECT_TRUE(res.pass);
  EXPECT_EQ(res.max_distance, 0.0);
  Eigen::MatrixXcd v(2, 2);
  v << 1, 2, 0, 1;
  EXPECT_TRUE(spectral_inclusion_check(DiagonalGenerator({cplx(0, 1), cplx(2, 0)}, v), h).pass);
}

TEST(Semigroup, OptimalityDelta) {
  const double delta = optimality_delta();
  EXPECT_NEAR(delta, 1.0 - std::exp(-1.0), 1e-12);
  EXPECT_NEAR(std::abs(one_minus_exp(std::polar(1.0, M_PI / 2))), 2.0 * std::sin(0.5), 1e-15);
}

TEST(Semigroup, OptimalityProbe) {
  const auto gen = DiagonalGenerator::accumulating(1.0, 10);
  const auto eps = [](double t) { return 1.0 / std::log(2.0 + t); };
  const auto report = optimality_probe(gen, catalog::frac_power(0.5), eps);
  ASSERT_EQ(report.rows.size(), 10u);
  EXPECT_TRUE(report.lower_bound_holds);
  for (std::size_t i = 1; i < report.rows.size(); ++i) {
    EXPECT_GT(report.rows[i].ratio, report.rows[i - 1].ratio);
    EXPECT_NEAR(report.rows[i].t, std::pow(4.0, i + 1), 1e-9);
  }
  EXPECT_NEAR(report.rows[3].lower_bound, report.delta / (3 * constants::e * constants::e) * rate(catalog::frac_power(0.5), 256.0), 1e-15);
  EXPECT_THROW(optimality_probe(gen, catalog::atom(), eps), DomainError);
  const auto single = optimality_probe(DiagonalGenerator({cplx(1, 0)}), catalog::frac_power(0.5), eps);
  EXPECT_FALSE(single.diverges);
}

TEST(Semigroup, AbelTransform) {
  const std::vector<double> alphas{1e-2, 1e-3, 1e-4, 1e-5};
  const auto lebesgue = catalog::potential_measure(catalog::drift());
  const auto r1 = abel_transform(DiagonalGenerator({cplx(2, 0)}), lebesgue, ones(1), alphas, catalog::drift());
  EXPECT_NEAR(std::abs(r1.y(0) - 0.5), 0.0, 1e-8);
  EXPECT_LE(r1.residual, 1e-6);
  const auto half = catalog::frac_power(0.5);
  const auto r2 = abel_transform(DiagonalGenerator({cplx(4, 0)}), catalog::potential_measure(half), ones(1), alphas, half);
  EXPECT_NEAR(std::abs(r2.y(0) - 0.5), 0.0, 1e-8);
  EXPECT_LE(r2.residual, 1e-6);
  const auto lr = catalog::log_rate();
  const auto r3 = abel_transform(DiagonalGenerator({cplx(2, 0)}), catalog::potential_measure(lr), ones(1), alphas, lr);
  EXPECT_NEAR(std::abs(r3.y(0) - std::log(2.0)), 0.0, 1e-8);
  EXPECT_LE(r3.residual, 1e-7);
  EXPECT_THROW(abel_transform(DiagonalGenerator({cplx(0, 2)}), lebesgue, ones(1), alphas, catalog::drift()), DomainError);
  EXPECT_THROW(abel_transform(DiagonalGenerator({cplx(1, 0)}), lebesgue, ones(1), std::vector<double>{1e-3, 1e-2}, catalog::drift()), DomainError);
}

TEST(Semigroup, GeneralRateCheck) {
  const auto gen = DiagonalGenerator::log_spaced(1e-4, 1.0, 30);
  const auto report = general_rate_check(gen, "log", 1.0, ones(30), log_grid(10.0, 1e4, 25));
  EXPECT_LE(report.constant, 10.0);
  EXPECT_GT(report.constant, 0.0);
  const auto one = general_rate_check(DiagonalGenerator({cplx(1, 0)}), "log", 1.0, ones(1), log_grid(10.0, 1e6, 10));
  EXPECT_LE(one.constant, 1.0);
  EXPECT_THROW(general_rate_check(gen, "sqrt", 0.0, ones(30), log_grid(10.0, 1e4, 5)), DomainError);
  EXPECT_THROW(general_rate_check(DiagonalGenerator({cplx(0, 0)}), "log", 1.0, ones(1), log_grid(10.0, 1e4, 5)), DomainError);
}

TEST(Semigroup, LogResolvent) {
  const auto a = log_resolvent_apply(DiagonalGenerator({cplx(1, 0)}), cplx(0, 2 * M_PI), ones(1));
  EXPECT_NEAR(std::abs(a(0) - cplx(0, -0.15915494309189535)), 0.0, 1e-15);
  const auto b = log_resolvent_apply(DiagonalGenerator({cplx(constants::e, 0)}), cplx(0, 4), ones(1));
  EXPECT_NEAR(std::abs(b(0) - cplx(-1.0 / 17.0, -4.0 / 17.0)), 0.0, 1e-15);
  for (double z : {0.1, 1.0, constants::e, 50.0})
    for (cplx lam : {cplx(0, 4), cplx(1, -5), cplx(0, 2 * M_PI)})
      EXPECT_LE(std::abs(log_resolvent_kernel(lam, z) - 1.0 / (lam - std::log(z))), 1e-6 * std::abs(1.0 / (lam - std::log(z))));
  const double mass = log_resolvent_kernel_mass(cplx(0, 4));
  EXPECT_TRUE(std::isfinite(mass));
  EXPECT_GT(mass, 0.0);
  EXPECT_THROW(log_resolvent_apply(DiagonalGenerator({cplx(1, 0)}), cplx(0, 3), ones(1)), DomainError);
  EXPECT_THROW(log_resolvent_apply(DiagonalGenerator({cplx(0, 0)}), cplx(0, 4), ones(1)), DomainError);
}
