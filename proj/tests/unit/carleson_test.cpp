#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numbers>

#include "bz/carleson.hpp"
#include "bz/errors.hpp"
#include "support.hpp"

namespace {

using namespace bz;
constexpr double kPi = std::numbers::pi;

const ScaleFunction one = ScaleFunction::constant(1.0);

CarlesonContext power_ctx(double alpha, double t, double p, double q) {
  return CarlesonContext::make(RadialWeight::power(alpha), one, one,
                               DiscMeasure::area(RadialWeight::power(t)), p, q);
}

CarlesonContext identity_ctx(double alpha, double beta, double p) {
  const auto psi = ScaleFunction::log_power(beta);
  return CarlesonContext::make(RadialWeight::power(alpha), psi, psi,
                               DiscMeasure::area(RadialWeight::power(alpha)), p, p);
}

SweepOptions fast() {
  SweepOptions o;
  o.test_functions = false;
  return o;
}

TEST(Context, ValidatesConstruction) {
  const auto w = RadialWeight::power(0.0);
  const auto mu = DiscMeasure::area(w);
  EXPECT_THROW(CarlesonContext::make(w, one, one, mu, 2.0, 1.0), ParameterError);
  EXPECT_THROW(CarlesonContext::make(w, one, one, mu, 0.0, 1.0), ParameterError);
  EXPECT_THROW(CarlesonContext::make(w, one, one, mu, 1.0, 1.0, 1.0), ParameterError);
  EXPECT_THROW(CarlesonContext::make(w, one, one, DiscMeasure(), 1.0, 1.0), ParameterError);
  const auto flat = RadialWeight::custom("exp(-1/u)", [](double u) { return std::exp(-1.0 / u); });
  EXPECT_THROW(CarlesonContext::make(flat, one, one, mu, 1.0, 1.0), ParameterError);
  const auto ex = ScaleFunction::custom("exp", [](double t) { return std::exp(t); }, Monotonicity::increasing);
  EXPECT_THROW(CarlesonContext::make(w, ex, one, mu, 1.0, 1.0), NotInClassError);
}

TEST(Characteristic, IdentityIsOne) {
  test::Rng rng(101);
  for (const auto& ctx : {identity_ctx(1.0, 1.0, 2.0), identity_ctx(-0.5, -1.0, 1.0), identity_ctx(0.0, 0.0, 3.0)}) {
    for (int i = 0; i < 100; ++i) {
      const Complex a = rng.in_disc(1.0 - 1e-9);
      EXPECT_NEAR(characteristic(ctx, a), 1.0, 1e-12);
    }
    EXPECT_NEAR(characteristic_disc(ctx, Complex(0.0)), 1.0, 1e-12);
  }
}

TEST(Characteristic, AtomAtTheOrigin) {
  const auto ctx = CarlesonContext::make(RadialWeight::power(0.0), one, one, DiscMeasure::atom(Complex(0.0), 3.0),
                                         2.0, 2.0);
  EXPECT_EQ(characteristic(ctx, Complex(0.0)), 3.0);
  EXPECT_EQ(characteristic(ctx, Complex(0.3, -0.1)), 0.0);
}

TEST(CharacteristicDisc, Examples) {
  const auto unit = CarlesonContext::make(RadialWeight::power(0.0), one, one,
                                          DiscMeasure::area(RadialWeight::power(0.0)), 2.0, 2.0, 0.5);
  EXPECT_NEAR(characteristic_disc(unit, Complex(0.0)), 1.0, 1e-13);
  const auto atom = CarlesonContext::make(RadialWeight::power(0.0), one, one, DiscMeasure::atom(Complex(0.4), 2.0),
                                          2.0, 2.0, 0.5);
  EXPECT_NEAR(characteristic_disc(atom, Complex(0.5)), 2.0 / 0.16, 1e-11);
}

TEST(CharacteristicDisc, ScaleArgumentUsesTheSquare) {
  const auto psi = ScaleFunction::log_power(1.0);
  const auto phi = ScaleFunction::log_power(2.0);
  const auto w = RadialWeight::power(1.0);
  const auto mu = DiscMeasure::area(RadialWeight::power(0.5));
  const auto ctx = CarlesonContext::make(w, psi, phi, mu, 1.0, 2.0, 0.7);
  const Complex a = std::polar(0.9, 1.0);
  const double ws = carleson_mass(w, a);
  const double wd = weight_disc_mass(w, a, 0.7);
  const double expected = mu.mass_on_disc(a, 0.7) * phi(1.0 / ws) / std::pow(wd * psi(1.0 / ws), 2.0);
  EXPECT_LT(test::rel_err(characteristic_disc(ctx, a), expected), 1e-12);
}

TEST(Characteristic, PowerFamilySlopes) {
  for (double alpha : {-0.5, 0.0, 1.0}) {
    for (double t : {-0.5, 1.0, 2.0}) {
      for (const auto& [p, q] : {std::pair{2.0, 2.0}, std::pair{1.0, 2.0}}) {
        const auto rep = sweep(power_ctx(alpha, t, p, q), 14, fast());
        const double exponent = t + 2.0 - q / p * (alpha + 2.0);
        EXPECT_NEAR(rep.boundary_exponent, exponent, 0.05) << alpha << " " << t << " " << p << " " << q;
        const auto disc = rep.disc_maxima;
        std::vector<double> x;
        std::vector<double> y;
        for (const auto& m : disc) {
          if (m.level >= 8) {
            x.push_back(-m.level * std::numbers::ln2);
            y.push_back(std::log(m.value));
          }
        }
        double mx = 0, my = 0;
        for (std::size_t i = 0; i < x.size(); ++i) mx += x[i] / x.size(), my += y[i] / y.size();
        double sxy = 0, sxx = 0;
        for (std::size_t i = 0; i < x.size(); ++i) sxy += (x[i] - mx) * (y[i] - my), sxx += (x[i] - mx) * (x[i] - mx);
        EXPECT_NEAR(sxy / sxx, exponent, 0.05);
      }
    }
  }
}

TEST(Sweep, IdentityIsFlat) {
  const auto rep = sweep(identity_ctx(1.0, 1.0, 2.0), 10);
  for (const auto& e : rep.entries) {
    EXPECT_NEAR(e.rho_square, 1.0, 1e-3);
    ASSERT_FALSE(e.failed);
  }
  EXPECT_EQ(rep.verdict_bounded, BoundedVerdict::bounded);
  EXPECT_EQ(rep.verdict_vanishing, VanishingVerdict::not_vanishing);
  EXPECT_EQ(rep.error_count, 0);
}

TEST(Sweep, ExampleVerdicts) {
  const auto vanishing = sweep(power_ctx(0.0, 1.0, 2.0, 2.0), 12, fast());
  EXPECT_EQ(vanishing.verdict_bounded, BoundedVerdict::bounded);
  EXPECT_EQ(vanishing.verdict_vanishing, VanishingVerdict::vanishing);
  const auto unbounded = sweep(power_ctx(1.0, 0.0, 2.0, 2.0), 12, fast());
  EXPECT_EQ(unbounded.verdict_bounded, BoundedVerdict::unbounded);
  EXPECT_EQ(unbounded.verdict_vanishing, VanishingVerdict::not_vanishing);
  EXPECT_THROW(sweep(power_ctx(0.0, 0.0, 2.0, 2.0), 7, fast()), ParameterError);
}

TEST(Sweep, AnnulusMaximaMatchEntries) {
  const auto ctx = CarlesonContext::make(RadialWeight::power(0.0), one, one,
                                         DiscMeasure::area(RadialWeight::power(1.0), Sector{0.0, 1.0}), 2.0, 2.0);
  const auto rep = sweep(ctx, 9, fast());
  double sup = 0.0;
  for (const auto& m : rep.annulus_maxima) {
    double best = 0.0;
    for (const auto& e : rep.entries) {
      if (e.level == m.level) best = std::max(best, e.rho_square);
    }
    EXPECT_EQ(m.value, best);
    sup = std::max(sup, best);
  }
  EXPECT_EQ(rep.global_sup_estimate, sup);
}

TEST(Sweep, ScalingTheMeasure) {
  const auto w = RadialWeight::power(0.0);
  DiscMeasure mu = DiscMeasure::area(RadialWeight::power(1.5), Sector{1.0, 2.5});
  mu.add_atom(std::polar(0.97, 0.3), 0.01);
  const auto a = CarlesonContext::make(w, one, one, mu, 1.0, 1.5);
  const auto b = CarlesonContext::make(w, one, one, mu.scaled(3.0), 1.0, 1.5);
  const auto ra = sweep(a, 10, fast());
  const auto rb = sweep(b, 10, fast());
  ASSERT_EQ(ra.entries.size(), rb.entries.size());
  for (std::size_t i = 0; i < ra.entries.size(); ++i) {
    EXPECT_NEAR(rb.entries[i].rho_square, 3.0 * ra.entries[i].rho_square, 1e-12 * rb.entries[i].rho_square);
  }
  EXPECT_EQ(ra.verdict_bounded, rb.verdict_bounded);
  EXPECT_EQ(ra.verdict_vanishing, rb.verdict_vanishing);
  EXPECT_NEAR(ra.boundary_exponent, rb.boundary_exponent, 1e-10);
}

TEST(Sweep, RotatingASectorPermutesLevels) {
  const auto w = RadialWeight::power(1.0);
  const auto mu = DiscMeasure::area(RadialWeight::power(1.0), Sector{0.3, 2.0});
  const auto a = CarlesonContext::make(w, one, one, mu, 2.0, 2.0);
  const auto b = CarlesonContext::make(w, one, one, mu.rotated(kPi), 2.0, 2.0);
  const auto ra = sweep(a, 10, fast());
  const auto rb = sweep(b, 10, fast());
  for (std::size_t j = 1; j < ra.annulus_maxima.size(); ++j) {
    EXPECT_NEAR(ra.annulus_maxima[j].value, rb.annulus_maxima[j].value, 1e-12 * ra.annulus_maxima[j].value);
  }
}

TEST(TestFunction, Examples) {
  const auto unit = power_ctx(0.0, 0.0, 2.0, 2.0);
  const auto f0 = test_function(unit, Complex(0.0), 4.0);
  EXPECT_NEAR(std::abs(f0(Complex(0.3, 0.5))), 1.0, 1e-15);
  EXPECT_NEAR(quasinorm(f0, DiscMeasure::area(RadialWeight::power(0.0)), one, 2.0), 1.0, 1e-12);
  const auto f = test_function(unit, Complex(0.5), 6.0);
  const double factor = std::sqrt(std::pow(0.5, 6.0) / (3.0 / (16.0 * kPi)));
  EXPECT_NEAR(f(Complex(0.0)).real(), factor, 1e-13);
  ASSERT_TRUE(f.is_kernel_power());
  EXPECT_DOUBLE_EQ(f.kernel()->exponent, 3.0);
  EXPECT_THROW(test_function(unit, Complex(0.5), 0.0), ParameterError);
}

TEST(TestFunction, NormsAreFlatAlongTheRay) {
  const auto ctx = identity_ctx(1.0, 1.0, 2.0);
  double lo = 1e300;
  double hi = 0.0;
  for (int j = 0; j <= 16; ++j) {
    const double n = test_function_norm_power(ctx, Complex(1.0 - std::ldexp(1.0, -j)), 12.0);
    lo = std::min(lo, n);
    hi = std::max(hi, n);
  }
  EXPECT_LE(hi / lo, 10.0);
}

// ||f_a||^2 for omega = (1-s), Psi = 1, gamma = 12 from the power series of (1 - conj(a) z)^{-6}:
// int |z|^{2n} (1 - |z|) dA = 2 / ((2n + 2)(2n + 3)).
TEST(TestFunction, UnitScaleNormMatchesSeriesOracle) {
  const auto w = RadialWeight::power(1.0);
  const auto ctx = CarlesonContext::make(w, one, one, DiscMeasure::area(w), 2.0, 2.0);
  std::vector<double> oracles;
  for (int j : {0, 4, 8, 12, 16}) {
    const double r = 1.0 - std::ldexp(1.0, -j);
    const long double x = static_cast<long double>(r) * r;
    long double c = 1.0L;
    long double xn = 1.0L;
    long double sum = 0.0L;
    for (long n = 0; n < 8000000; ++n) {
      sum += c * c * xn * 2.0L / ((2.0L * n + 2.0L) * (2.0L * n + 3.0L));
      c *= (n + 6.0L) / (n + 1.0L);
      xn *= x;
      if (xn < 1e-300L) break;
    }
    const double oracle = std::pow(1.0 - r, 12.0) / carleson_mass(w, Complex(r)) * static_cast<double>(sum);
    oracles.push_back(oracle);
    EXPECT_LT(test::rel_err(test_function_norm_power(ctx, Complex(r), 12.0), oracle), 1e-6) << "j=" << j;
  }
  const auto [lo, hi] = std::minmax_element(oracles.begin(), oracles.end());
  EXPECT_GT(*hi / *lo, 10.0);
}

TEST(TestFunction, DefaultGammaMakesNormsFlat) {
  for (double alpha : {-0.5, 0.0, 1.0}) {
    for (double beta : {-1.0, 1.0}) {
      const auto ctx = identity_ctx(alpha, beta, 2.0);
      const double g = default_gamma(ctx.omega, ctx.psi);
      EXPECT_GT(g, alpha + 1.0);
      double lo = 1e300;
      double hi = 0.0;
      for (int j = 0; j <= 14; j += 2) {
        const double n = test_function_norm_power(ctx, std::polar(1.0 - std::ldexp(1.0, -j), 0.4), g);
        lo = std::min(lo, n);
        hi = std::max(hi, n);
      }
      EXPECT_LE(hi / lo, 10.0) << alpha << " " << beta;
    }
  }
}

TEST(EmbeddingLowerRatio, Examples) {
  EXPECT_NEAR(embedding_lower_ratio(identity_ctx(0.0, 0.0, 2.0), Complex(0.0), 4.0), 1.0, 1e-12);
  // Atom at the origin with logarithmic scales, closed form.
  const auto psi = ScaleFunction::log_power(1.0);
  const auto phi = ScaleFunction::log_power(2.0);
  const double m = 0.5;
  const double p = 1.0;
  const double q = 2.0;
  const auto ctx = CarlesonContext::make(RadialWeight::power(0.0), psi, phi, DiscMeasure::atom(Complex(0.0), m), p, q);
  const double rho = m * phi(1.0) / std::pow(psi(1.0), q / p);
  const double f0 = std::pow(1.0 / psi(1.0), 1.0 / p);
  const double norm = m * std::pow(f0, q) * phi(f0);
  EXPECT_LT(test::rel_err(embedding_lower_ratio(ctx, Complex(0.0), 3.0), rho / norm), 1e-13);
}

TEST(EmbeddingLowerRatio, BoundedOnBoundedScenarios) {
  for (const auto& ctx : {identity_ctx(1.0, 1.0, 2.0), power_ctx(0.0, 1.0, 2.0, 2.0), power_ctx(-0.5, 2.0, 1.0, 2.0)}) {
    const double g = sweep_gamma(ctx);
    double hi = 0.0;
    for (int j = 0; j <= 14; ++j) {
      hi = std::max(hi, embedding_lower_ratio(ctx, std::polar(1.0 - std::ldexp(1.0, -j), 2.0), g));
    }
    EXPECT_LT(hi, 20.0);
  }
}

TEST(EmbeddingNorm, IdentityCorpusRatiosAreOne) {
  const auto ctx = identity_ctx(1.0, 1.0, 2.0);
  std::vector<AnalyticFunction> corpus = {AnalyticFunction::polynomial({1.0, -2.0, 0.5}),
                                          AnalyticFunction::kernel_power(Complex(0.0, 0.9), 2.0, 1.0)};
  EXPECT_NEAR(embedding_norm_estimate(ctx, corpus), 1.0, 1e-9);
  EXPECT_NEAR(embedding_ratio(ctx, corpus.front()), 1.0, 1e-12);
}

TEST(EmbeddingNorm, GrowsAlongTestFunctionsWhenUnbounded) {
  const auto ctx = power_ctx(1.0, 0.0, 2.0, 2.0);
  const double g = sweep_gamma(ctx);
  std::vector<double> r;
  for (int j = 10; j <= 14; ++j) {
    r.push_back(embedding_ratio(ctx, test_function(ctx, Complex(1.0 - std::ldexp(1.0, -j)), g)));
  }
  for (std::size_t i = 1; i < r.size(); ++i) EXPECT_GE(r[i] / r[i - 1], 1.2);
  EXPECT_GE(r.back() / r[1], 1.5);
}

TEST(Sweep, TestFunctionColumns) {
  const auto radial = sweep(identity_ctx(0.0, 0.0, 2.0), 8);
  for (const auto& e : radial.entries) {
    EXPECT_TRUE(std::isfinite(e.fa_norm_p));
    EXPECT_TRUE(std::isfinite(e.embed_lb_ratio));
  }
  const auto ctx = CarlesonContext::make(RadialWeight::power(0.0), one, one,
                                         DiscMeasure::area(RadialWeight::power(1.0), Sector{0.0, 1.0}), 2.0, 2.0);
  const auto sector = sweep(ctx, 8);
  for (int j = 0; j <= 8; ++j) {
    int finite = 0;
    for (const auto& e : sector.entries) finite += e.level == j && std::isfinite(e.fa_norm_p);
    EXPECT_EQ(finite, 1) << j;
  }
}

TEST(Sweep, DeterministicAcrossRuns) {
  const auto ctx = CarlesonContext::make(RadialWeight::power(0.0), one, one,
                                         DiscMeasure::area(RadialWeight::power(1.0), Sector{0.0, 1.0}), 2.0, 2.0);
  EXPECT_EQ(sweep(ctx, 9).csv(), sweep(ctx, 9).csv());
}

}  // namespace
