#pragma once

#include <string>
#include <vector>

namespace bz {

enum class BoundedVerdict { bounded, unbounded, inconclusive };
enum class VanishingVerdict { vanishing, not_vanishing, inconclusive };

const char* to_string(BoundedVerdict v);
const char* to_string(VanishingVerdict v);

struct VerdictThresholds {
  int window = 4;
  // Bounded: the last `window` maxima within this factor of each other.
  double flat_factor = 2.0;
  // Unbounded: each of the last maxima at least this multiple of the previous.
  double growth_factor = 2.0;
  // Unbounded: strictly increasing maxima with log M growing at least like
  // this power of log(1 / (1 - r)).
  double log_growth_exponent = 0.5;
  // Vanishing: last maximum below this fraction of the global sup.
  double vanish_fraction = 0.1;
  // Not vanishing: last maximum at least this fraction of the global sup.
  double persist_fraction = 0.5;
};

struct SweepEntry {
  int level = 0;
  double radius = 0.0;
  double theta = 0.0;
  double rho_square = 0.0;
  double rho_disc = 0.0;
  double fa_norm_p = 0.0;
  double embed_lb_ratio = 0.0;
  bool failed = false;
};

struct LevelMaximum {
  int level = 0;
  double value = 0.0;
  double theta = 0.0;
};

struct SweepReport {
  std::vector<SweepEntry> entries;
  std::vector<LevelMaximum> annulus_maxima;
  std::vector<LevelMaximum> disc_maxima;
  double global_sup_estimate = 0.0;
  double disc_sup_estimate = 0.0;
  // Slope of log max against log(1 - r) over the deepest half of the levels.
  double boundary_exponent = 0.0;
  // Slope of log max against log log(1 / (1 - r)) over the same levels.
  double log_growth_exponent = 0.0;
  BoundedVerdict verdict_bounded = BoundedVerdict::inconclusive;
  VanishingVerdict verdict_vanishing = VanishingVerdict::inconclusive;
  int error_count = 0;
  std::vector<std::string> warnings;

  std::string csv() const;
};

// a = (1 - 2^{-j}) e^{i theta} with theta on a uniform set of size min(2^j, cap).
std::vector<double> level_angles(int level, int angular_cap);
double level_radius(int level);

// Fills maxima, sup, exponents and verdicts from the entries.
void finalize_report(SweepReport& report, const VerdictThresholds& thresholds);

// Verdicts of a sequence of level maxima (index = level).
BoundedVerdict bounded_verdict(const std::vector<double>& maxima, double log_growth,
                               const VerdictThresholds& thresholds);
VanishingVerdict vanishing_verdict(const std::vector<double>& maxima, double sup,
                                   BoundedVerdict bounded, const VerdictThresholds& thresholds);

// Shortest round-trip decimal form; "nan" and "inf" for non-finite values.
std::string format_number(double v);

}  // namespace bz
