#pragma once

#include <complex>
#include <optional>
#include <string>
#include <vector>

#include "bz/weights.hpp"

namespace bz {

// Counterclockwise arc of angles from begin to end; a span of 2 pi or more is
// the full circle.
struct Sector {
  double begin = 0.0;
  double end = 0.0;

  double length() const;
  bool full() const;
};

// Measure of the arc [center - half_width, center + half_width] inside the sector.
double arc_overlap(double center, double half_width, const Sector& sector);

struct AreaComponent {
  RadialWeight weight;
  std::optional<Sector> sector;
  double factor = 1.0;
};

struct Atom {
  Complex location;
  double mass = 0.0;
};

// Finite positive measure: radial densities (optionally restricted to a
// sector) times normalized area, plus finitely many atoms.
class DiscMeasure {
 public:
  DiscMeasure() = default;

  static DiscMeasure area(RadialWeight weight, std::optional<Sector> sector = std::nullopt);
  static DiscMeasure atom(Complex location, double mass);

  DiscMeasure& add_area(RadialWeight weight, std::optional<Sector> sector = std::nullopt,
                        double factor = 1.0);
  DiscMeasure& add_atom(Complex location, double mass);

  const std::vector<AreaComponent>& area_components() const { return area_; }
  const std::vector<Atom>& atoms() const { return atoms_; }
  bool empty() const { return area_.empty() && atoms_.empty(); }

  double total_mass() const;
  double mass_on_square(Complex a) const;
  double mass_on_disc(Complex a, double r) const;

  // True when every part is an unrestricted radial density.
  bool rotation_invariant() const;

  DiscMeasure scaled(double c) const;
  DiscMeasure rotated(double angle) const;
  std::string description() const;

 private:
  std::vector<AreaComponent> area_;
  std::vector<Atom> atoms_;
};

// omega(S(a)) restricted to a sector.
double sector_square_mass(const RadialWeight& omega, Complex a, const std::optional<Sector>& sector);

// Mass of omega dA (restricted to a sector) on the pseudohyperbolic disc Delta(a, r).
double weight_disc_mass(const RadialWeight& omega, Complex a, double r,
                        const std::optional<Sector>& sector = std::nullopt);

}  // namespace bz
