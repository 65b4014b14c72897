#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "bz/errors.hpp"
#include "bz/geometry.hpp"
#include "support.hpp"

namespace {

using namespace bz;
using namespace std::complex_literals;

TEST(Square, Examples) {
  EXPECT_TRUE(square_contains(Complex(0.0), 0.9i));
  EXPECT_TRUE(square_contains(Complex(0.5), Complex(0.75)));
  EXPECT_FALSE(square_contains(Complex(0.5), std::polar(0.75, 0.3)));
  EXPECT_FALSE(square_contains(Complex(0.5), Complex(0.4)));
  EXPECT_THROW(square_contains(Complex(1.0), Complex(0.0)), DomainError);
}

TEST(Square, WrapsAroundTheNegativeAxis) {
  const Complex a = std::polar(0.9, std::numbers::pi - 0.01);
  EXPECT_TRUE(square_contains(a, std::polar(0.95, -std::numbers::pi + 0.02)));
  EXPECT_FALSE(square_contains(a, std::polar(0.95, -std::numbers::pi + 0.05)));
}

TEST(Square, StrictAngularBoundary) {
  const Complex a(0.5);
  EXPECT_FALSE(square_contains(a, std::polar(0.8, 0.2501)));
  EXPECT_TRUE(square_contains(a, std::polar(0.8, 0.2499)));
  EXPECT_TRUE(square_contains(a, Complex(0.5)));
}

TEST(WrappedAngle, RangeIsHalfOpen) {
  EXPECT_DOUBLE_EQ(wrapped_angle(std::numbers::pi), std::numbers::pi);
  EXPECT_DOUBLE_EQ(wrapped_angle(-std::numbers::pi), std::numbers::pi);
  EXPECT_NEAR(wrapped_angle(7.0), 7.0 - 2.0 * std::numbers::pi, 1e-15);
}

TEST(PseudoDisc, Examples) {
  const auto d0 = pseudo_disc(Complex(0.0), 0.7);
  EXPECT_EQ(d0.euclid_center, Complex(0.0));
  EXPECT_DOUBLE_EQ(d0.euclid_radius, 0.7);
  const auto d1 = pseudo_disc(Complex(0.5), 0.5);
  EXPECT_DOUBLE_EQ(d1.euclid_center.real(), 0.4);
  EXPECT_DOUBLE_EQ(d1.euclid_radius, 0.4);
  const auto d2 = pseudo_disc(0.5i, 0.5);
  EXPECT_NEAR(d2.euclid_center.imag(), 0.4, 1e-16);
  EXPECT_EQ(d2.euclid_center.real(), 0.0);
  EXPECT_THROW(pseudo_disc(Complex(0.5), 1.0), DomainError);
  EXPECT_THROW(pseudo_disc(Complex(0.5), 0.0), DomainError);
}

TEST(PseudoDistance, Examples) {
  EXPECT_EQ(pseudo_distance(Complex(0.3, 0.2), Complex(0.3, 0.2)), 0.0);
  EXPECT_DOUBLE_EQ(pseudo_distance(Complex(0.0), Complex(0.3)), 0.3);
  EXPECT_DOUBLE_EQ(pseudo_distance(Complex(0.5), Complex(-0.5)), 0.8);
}

TEST(PseudoDisc, EuclideanFormIsEquivalent) {
  test::Rng rng(2024);
  int inside = 0;
  for (int i = 0; i < 10000; ++i) {
    const Complex a = rng.in_disc(0.999);
    const double r = rng.uniform(0.01, 0.99);
    const auto d = pseudo_disc(a, r);
    ASSERT_LT(std::abs(d.euclid_center) + d.euclid_radius, 1.0);
    // Sample z near the disc so both outcomes occur.
    const Complex z = d.euclid_center + std::polar(d.euclid_radius * rng.uniform(0.0, 1.5),
                                                   rng.uniform(0.0, 2.0 * std::numbers::pi));
    if (!(std::abs(z) < 1.0)) continue;
    const double delta = pseudo_distance(a, z) - r;
    const double e = std::abs(z - d.euclid_center) - d.euclid_radius;
    if (std::abs(delta) < 1e-12 || std::abs(e) < 1e-12) continue;
    EXPECT_EQ(delta < 0.0, e < 0.0) << a << " " << r << " " << z;
    inside += delta < 0.0;
  }
  EXPECT_GT(inside, 3000);
}

TEST(PseudoDistance, SymmetricAndRotationInvariant) {
  test::Rng rng(77);
  for (int i = 0; i < 2000; ++i) {
    const Complex a = rng.in_disc(0.99);
    const Complex z = rng.in_disc(0.99);
    const Complex u = std::polar(1.0, rng.uniform(0.0, 6.3));
    EXPECT_NEAR(pseudo_distance(a, z), pseudo_distance(z, a), 1e-14);
    EXPECT_NEAR(pseudo_distance(a, z), pseudo_distance(u * a, u * z), 1e-13);
    const double r = rng.uniform(0.1, 0.9);
    const auto d = pseudo_disc(a, r);
    const auto du = pseudo_disc(u * a, r);
    EXPECT_LT(std::abs(du.euclid_center - u * d.euclid_center), 1e-14);
    EXPECT_NEAR(du.euclid_radius, d.euclid_radius, 1e-14);
  }
}

TEST(PseudoDistance, MobiusInvariance) {
  test::Rng rng(31);
  for (int i = 0; i < 2000; ++i) {
    const Complex a = rng.in_disc(0.95);
    const Complex z = rng.in_disc(0.95);
    const Complex b = rng.in_disc(0.9);
    const auto phi = [b](Complex w) { return (b - w) / (1.0 - std::conj(b) * w); };
    EXPECT_NEAR(pseudo_distance(phi(a), phi(z)), pseudo_distance(a, z), 1e-11);
  }
}

}  // namespace
