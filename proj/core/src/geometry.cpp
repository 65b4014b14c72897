#include "bz/geometry.hpp"

#include <cmath>
#include <numbers>

#include "bz/errors.hpp"

namespace bz {

namespace {

void require_inside(Complex z, const char* what) {
  if (!(std::abs(z) < 1.0)) throw DomainError(std::string(what) + " must lie in the unit disc");
}

}  // namespace

double wrapped_angle(double angle) {
  constexpr double two_pi = 2.0 * std::numbers::pi;
  double a = std::remainder(angle, two_pi);
  if (a <= -std::numbers::pi) a += two_pi;
  return a;
}

bool square_contains(Complex a, Complex z) {
  require_inside(a, "square apex");
  require_inside(z, "point");
  const double ma = std::abs(a);
  if (ma == 0.0) return true;
  if (std::abs(z) < ma) return false;
  const double half_width = 0.5 * (1.0 - ma);
  const double diff = std::arg(a) - std::arg(z);
  constexpr double two_pi = 2.0 * std::numbers::pi;
  return std::abs(diff) < half_width || std::abs(diff - two_pi) < half_width ||
         std::abs(diff + two_pi) < half_width;
}

PseudoDisc pseudo_disc(Complex a, double r) {
  require_inside(a, "disc center");
  if (!(r > 0.0 && r < 1.0)) throw DomainError("pseudohyperbolic radius must lie in (0, 1)");
  const double a2 = std::norm(a);
  const double r2 = r * r;
  const double den = 1.0 - r2 * a2;
  PseudoDisc d;
  d.center = a;
  d.radius = r;
  d.euclid_center = (1.0 - r2) * a / den;
  d.euclid_radius = (1.0 - a2) * r / den;
  return d;
}

double pseudo_distance(Complex a, Complex z) {
  require_inside(a, "point");
  require_inside(z, "point");
  return std::abs(a - z) / std::abs(1.0 - std::conj(a) * z);
}

bool disc_contains(const PseudoDisc& disc, Complex z) {
  return pseudo_distance(disc.center, z) < disc.radius;
}

}  // namespace bz
