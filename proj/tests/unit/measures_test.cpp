#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "bz/errors.hpp"
#include "bz/geometry.hpp"
#include "bz/measures.hpp"
#include "support.hpp"

namespace {

using namespace bz;
constexpr double kPi = std::numbers::pi;

// Normalized area integral of (1 - |z|)^t over D(A, R), in polar coordinates about A.
double disc_oracle(double t, Complex a, double r) {
  const auto d = pseudo_disc(a, r);
  const auto ring = [&](double rho) {
    return rho * test::gl_integrate(
                     [&](double phi) {
                       return std::pow(1.0 - std::abs(d.euclid_center + std::polar(rho, phi)), t);
                     },
                     0.0, 2.0 * kPi, 64);
  };
  return test::gl_integrate(ring, 0.0, d.euclid_radius, 16) / kPi;
}

TEST(SquareMass, Examples) {
  const auto unit = DiscMeasure::area(RadialWeight::power(0.0));
  EXPECT_DOUBLE_EQ(unit.mass_on_square(Complex(0.0, 0.5)), 3.0 / (16.0 * kPi));
  const auto atom = DiscMeasure::atom(Complex(0.0), 3.0);
  EXPECT_EQ(atom.mass_on_square(Complex(0.0)), 3.0);
  EXPECT_EQ(atom.mass_on_square(Complex(0.1, 0.2)), 0.0);
  // (1 - |z|) area part: closed form 0.1 (0.1^2/2 - 0.1^3/3) / pi.
  const auto lin = DiscMeasure::area(RadialWeight::power(1.0));
  EXPECT_LT(test::rel_err(lin.mass_on_square(Complex(0.9)), 0.1 * (0.01 / 2 - 0.001 / 3) / kPi), 1e-13);
}

TEST(SquareMass, OriginGivesTotalMass) {
  DiscMeasure mu = DiscMeasure::area(RadialWeight::power(1.0));
  mu.add_area(RadialWeight::power(0.0), Sector{0.0, 1.0}, 2.0).add_atom(Complex(0.9), 0.25);
  EXPECT_EQ(mu.mass_on_square(Complex(0.0)), mu.total_mass());
  EXPECT_NEAR(mu.total_mass(), 1.0 / 3.0 + 2.0 / kPi * 0.5 + 0.25, 1e-14);
}

TEST(SquareMass, ComplementarySectorsAdd) {
  test::Rng rng(4);
  const auto w = RadialWeight::power(0.5);
  for (int i = 0; i < 200; ++i) {
    const double cut = rng.uniform(0.0, 2.0 * kPi);
    const double start = rng.uniform(-4.0, 4.0);
    const auto first = DiscMeasure::area(w, Sector{start, start + cut});
    const auto second = DiscMeasure::area(w, Sector{start + cut, start + 2.0 * kPi});
    const auto full = DiscMeasure::area(w);
    const Complex a = rng.in_disc(0.999);
    EXPECT_NEAR(first.mass_on_square(a) + second.mass_on_square(a), full.mass_on_square(a),
                1e-13 * full.mass_on_square(a) + 1e-300);
  }
}

TEST(SquareMass, DisjointSquaresAdd) {
  // Two adjacent squares at the same radius make up one sector of the annulus.
  const auto w = RadialWeight::power(2.0);
  const double r = 0.75;
  const double h = 0.5 * (1.0 - r);
  const auto whole = DiscMeasure::area(w);
  const double sum = whole.mass_on_square(std::polar(r, -h)) + whole.mass_on_square(std::polar(r, h));
  const double annular_sector = w.weighted_tail(r) * 4.0 * h / kPi;
  EXPECT_LT(test::rel_err(sum, annular_sector), 1e-14);
}

TEST(SquareMass, MonotoneAlongRays) {
  test::Rng rng(8);
  DiscMeasure mu = DiscMeasure::area(RadialWeight::log_inverse_square(), Sector{0.2, 2.0});
  mu.add_atom(std::polar(0.95, 0.5), 1.0).add_area(RadialWeight::power(-0.5));
  for (int i = 0; i < 200; ++i) {
    const double theta = rng.uniform(0.0, 2.0 * kPi);
    const double r1 = rng.uniform(0.0, 0.99);
    const double r2 = r1 + (1.0 - r1) * rng.uniform();
    EXPECT_LE(mu.mass_on_square(std::polar(r2, theta)), mu.mass_on_square(std::polar(r1, theta)) * (1 + 1e-14));
  }
}

TEST(DiscMass, Examples) {
  const auto unit = DiscMeasure::area(RadialWeight::power(0.0));
  EXPECT_NEAR(unit.mass_on_disc(Complex(0.0), 0.5), 0.25, 1e-14);
  EXPECT_NEAR(unit.mass_on_disc(Complex(0.5), 0.5), 0.16, 1e-13);
  const auto atom = DiscMeasure::atom(Complex(0.4), 2.0);
  EXPECT_DOUBLE_EQ(pseudo_distance(Complex(0.5), Complex(0.4)), 0.125);
  EXPECT_EQ(atom.mass_on_disc(Complex(0.5), 0.5), 2.0);
  EXPECT_EQ(atom.mass_on_disc(Complex(-0.5), 0.5), 0.0);
}

TEST(DiscMass, UnitDensityIsSquaredRadius) {
  test::Rng rng(12);
  const auto unit = DiscMeasure::area(RadialWeight::power(0.0));
  for (int i = 0; i < 200; ++i) {
    const Complex a = rng.in_disc(0.9999);
    const double r = rng.uniform(0.05, 0.95);
    const double big_r = pseudo_disc(a, r).euclid_radius;
    EXPECT_LT(test::rel_err(unit.mass_on_disc(a, r), big_r * big_r), 1e-10) << a << " " << r;
  }
}

TEST(DiscMass, MatchesBruteForceOracle) {
  for (double t : {1.0, 2.0, 0.5}) {
    const auto w = RadialWeight::power(t);
    for (const Complex a : {Complex(0.3, 0.1), Complex(0.0, -0.9), std::polar(0.99, 2.0)}) {
      for (double r : {0.5, 0.7, 0.9}) {
        EXPECT_LT(test::rel_err(weight_disc_mass(w, a, r), disc_oracle(t, a, r)), 1e-7)
            << t << " " << a << " " << r;
      }
    }
  }
}

TEST(DiscMass, SectorsSplitTheDisc) {
  const auto w = RadialWeight::power(1.0);
  const Complex a = std::polar(0.9, 0.05);
  const double both = weight_disc_mass(w, a, 0.7, Sector{0.0, 0.5}) +
                      weight_disc_mass(w, a, 0.7, Sector{0.5, 2.0 * kPi});
  EXPECT_NEAR(both, weight_disc_mass(w, a, 0.7), 1e-12);
}

TEST(Measure, ScalingAndRotation) {
  DiscMeasure mu = DiscMeasure::area(RadialWeight::power(1.0), Sector{0.0, 1.0});
  mu.add_atom(std::polar(0.9, 0.3), 0.5);
  const auto scaled = mu.scaled(3.0);
  const auto rotated = mu.rotated(1.2);
  test::Rng rng(21);
  for (int i = 0; i < 100; ++i) {
    const Complex a = rng.in_disc(0.99);
    EXPECT_NEAR(scaled.mass_on_square(a), 3.0 * mu.mass_on_square(a), 1e-14);
    EXPECT_NEAR(rotated.mass_on_square(a * std::polar(1.0, 1.2)), mu.mass_on_square(a), 1e-13);
  }
  EXPECT_FALSE(mu.rotation_invariant());
  EXPECT_TRUE(DiscMeasure::area(RadialWeight::power(1.0)).rotation_invariant());
}

TEST(Measure, RejectsInvalidComponents) {
  EXPECT_THROW(DiscMeasure::atom(Complex(1.0), 1.0), ParameterError);
  EXPECT_THROW(DiscMeasure::atom(Complex(0.1), 0.0), ParameterError);
  DiscMeasure mu;
  EXPECT_TRUE(mu.empty());
  EXPECT_THROW(mu.add_area(RadialWeight::power(0.0), std::nullopt, -1.0), ParameterError);
}

TEST(ArcOverlap, WrapsAroundTheCircle) {
  EXPECT_NEAR(arc_overlap(0.0, 0.1, Sector{6.2, 6.4}), 2.0 * kPi + 0.1 - 6.2, 1e-12);
  EXPECT_NEAR(arc_overlap(kPi, 0.5, Sector{0.0, 2.0 * kPi}), 1.0, 1e-15);
  EXPECT_EQ(arc_overlap(0.0, 0.1, Sector{1.0, 2.0}), 0.0);
}

}  // namespace
