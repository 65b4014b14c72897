#include "bz/measures.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "bz/errors.hpp"
#include "bz/geometry.hpp"
#include "bz/quadrature.hpp"

namespace bz {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;

double overlap(double a0, double a1, double b0, double b1) {
  return std::max(0.0, std::min(a1, b1) - std::max(a0, b0));
}

}  // namespace

double Sector::length() const {
  const double d = end - begin;
  if (d >= kTwoPi) return kTwoPi;
  if (d > 0.0) return d;
  const double w = d + kTwoPi;
  return w > 0.0 ? w : kTwoPi;
}

bool Sector::full() const { return end - begin >= kTwoPi; }

double arc_overlap(double center, double half_width, const Sector& sector) {
  const double h = std::min(half_width, kPi);
  if (sector.full()) return 2.0 * h;
  const double len = sector.length();
  double d = std::fmod(center - sector.begin, kTwoPi);
  if (d < 0.0) d += kTwoPi;
  const double lo = d - h;
  const double hi = d + h;
  return overlap(lo, hi, 0.0, len) + overlap(lo, hi, kTwoPi, kTwoPi + len) +
         overlap(lo, hi, -kTwoPi, -kTwoPi + len);
}

DiscMeasure DiscMeasure::area(RadialWeight weight, std::optional<Sector> sector) {
  DiscMeasure m;
  m.add_area(std::move(weight), sector);
  return m;
}

DiscMeasure DiscMeasure::atom(Complex location, double mass) {
  DiscMeasure m;
  m.add_atom(location, mass);
  return m;
}

DiscMeasure& DiscMeasure::add_area(RadialWeight weight, std::optional<Sector> sector,
                                   double factor) {
  if (!(factor > 0.0) || !std::isfinite(factor)) {
    throw ParameterError("area component factor must be positive");
  }
  if (sector && sector->full()) sector.reset();
  area_.push_back(AreaComponent{std::move(weight), sector, factor});
  return *this;
}

DiscMeasure& DiscMeasure::add_atom(Complex location, double mass) {
  if (!(std::abs(location) < 1.0)) throw ParameterError("atoms must lie inside the unit disc");
  if (!(mass > 0.0) || !std::isfinite(mass)) throw ParameterError("atom mass must be positive");
  atoms_.push_back(Atom{location, mass});
  return *this;
}

double sector_square_mass(const RadialWeight& omega, Complex a,
                          const std::optional<Sector>& sector) {
  if (!sector) return carleson_mass(omega, a);
  const double m = std::abs(a);
  if (!(m < 1.0)) throw DomainError("Carleson square apex must lie in the unit disc");
  if (m == 0.0) return omega.weighted_tail_at_gap(1.0) * sector->length() / kPi;
  return omega.weighted_tail(m) * arc_overlap(std::arg(a), 0.5 * (1.0 - m), *sector) / kPi;
}

double weight_disc_mass(const RadialWeight& omega, Complex a, double r,
                        const std::optional<Sector>& sector) {
  const PseudoDisc d = pseudo_disc(a, r);
  const double c = std::abs(d.euclid_center);
  const double big_r = d.euclid_radius;
  const double phi_a = std::arg(d.euclid_center);
  const double full_len = sector ? sector->length() : kTwoPi;
  double total = 0.0;
  if (big_r > c) {
    const double inner = big_r - c;
    total += full_len / kPi * (omega.weighted_tail_at_gap(1.0) - omega.weighted_tail(inner));
  }
  if (c > 0.0) {
    const double lo = std::abs(c - big_r);
    const double hi = c + big_r;
    const double mid = 0.5 * (lo + hi);
    const double half = 0.5 * (hi - lo);
    const auto& rule = quad::gauss_legendre(16);
    const int panels = 32;
    auto f = [&](double t) {
      const double s = mid - half * std::cos(t);
      if (!(s > 0.0)) return 0.0;
      const double cosv = std::clamp((s * s + c * c - big_r * big_r) / (2.0 * s * c), -1.0, 1.0);
      const double phi = std::acos(cosv);
      const double ang = sector ? arc_overlap(phi_a, phi, *sector) : 2.0 * phi;
      if (ang == 0.0) return 0.0;
      return omega.density_at_gap(1.0 - s) * s * ang * half * std::sin(t);
    };
    double sum = 0.0;
    for (int k = 0; k < panels; ++k) {
      sum += quad::integrate(rule, f, kPi * k / panels, kPi * (k + 1) / panels);
    }
    total += sum / kPi;
  }
  return total;
}

double DiscMeasure::total_mass() const {
  double m = 0.0;
  for (const auto& c : area_) m += c.factor * sector_square_mass(c.weight, Complex(0.0), c.sector);
  for (const auto& at : atoms_) m += at.mass;
  return m;
}

double DiscMeasure::mass_on_square(Complex a) const {
  double m = 0.0;
  for (const auto& c : area_) m += c.factor * sector_square_mass(c.weight, a, c.sector);
  for (const auto& at : atoms_) {
    if (square_contains(a, at.location)) m += at.mass;
  }
  return m;
}

double DiscMeasure::mass_on_disc(Complex a, double r) const {
  double m = 0.0;
  for (const auto& c : area_) m += c.factor * weight_disc_mass(c.weight, a, r, c.sector);
  for (const auto& at : atoms_) {
    if (pseudo_distance(a, at.location) < r) m += at.mass;
  }
  return m;
}

bool DiscMeasure::rotation_invariant() const {
  if (!atoms_.empty()) return false;
  return std::all_of(area_.begin(), area_.end(), [](const AreaComponent& c) { return !c.sector; });
}

DiscMeasure DiscMeasure::scaled(double c) const {
  if (!(c > 0.0) || !std::isfinite(c)) throw ParameterError("measure scale must be positive");
  DiscMeasure out = *this;
  for (auto& comp : out.area_) comp.factor *= c;
  for (auto& at : out.atoms_) at.mass *= c;
  return out;
}

DiscMeasure DiscMeasure::rotated(double angle) const {
  DiscMeasure out = *this;
  const Complex rot = std::polar(1.0, angle);
  for (auto& comp : out.area_) {
    if (comp.sector) {
      comp.sector->begin += angle;
      comp.sector->end += angle;
    }
  }
  for (auto& at : out.atoms_) at.location *= rot;
  return out;
}

std::string DiscMeasure::description() const {
  std::ostringstream os;
  os.precision(12);
  bool first = true;
  for (const auto& c : area_) {
    if (!first) os << " + ";
    first = false;
    if (c.factor != 1.0) os << c.factor << "*";
    os << "area[" << c.weight.description();
    if (c.sector) os << " sector=" << c.sector->begin << "," << c.sector->end;
    os << "]";
  }
  for (const auto& at : atoms_) {
    if (!first) os << " + ";
    first = false;
    os << "atom[" << at.location.real() << "," << at.location.imag() << " mass=" << at.mass
       << "]";
  }
  return first ? "zero" : os.str();
}

}  // namespace bz
