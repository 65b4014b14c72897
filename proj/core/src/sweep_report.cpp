#include "bz/sweep_report.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <map>
#include <numbers>
#include <sstream>

#include "bz/quadrature.hpp"

namespace bz {

const char* to_string(BoundedVerdict v) {
  switch (v) {
    case BoundedVerdict::bounded:
      return "bounded";
    case BoundedVerdict::unbounded:
      return "unbounded";
    case BoundedVerdict::inconclusive:
      return "inconclusive";
  }
  return "unknown";
}

const char* to_string(VanishingVerdict v) {
  switch (v) {
    case VanishingVerdict::vanishing:
      return "vanishing";
    case VanishingVerdict::not_vanishing:
      return "not-vanishing";
    case VanishingVerdict::inconclusive:
      return "inconclusive";
  }
  return "unknown";
}

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

double level_radius(int level) { return 1.0 - std::ldexp(1.0, -level); }

std::vector<double> level_angles(int level, int angular_cap) {
  const long n = std::min<long>(1L << std::min(level, 30), std::max(angular_cap, 1));
  std::vector<double> out(static_cast<std::size_t>(n));
  for (long k = 0; k < n; ++k) out[k] = 2.0 * std::numbers::pi * static_cast<double>(k) / n;
  return out;
}

BoundedVerdict bounded_verdict(const std::vector<double>& m, double log_growth,
                               const VerdictThresholds& th) {
  const std::size_t w = static_cast<std::size_t>(th.window);
  if (m.size() < w + 1) return BoundedVerdict::inconclusive;
  const std::size_t n = m.size();
  bool geometric = true;
  bool increasing = true;
  bool non_increasing = true;
  double lo = m[n - w];
  double hi = m[n - w];
  for (std::size_t k = n - w + 1; k < n; ++k) {
    if (!(m[k] >= th.growth_factor * m[k - 1]) || !(m[k] > 0.0)) geometric = false;
    if (!(m[k] > m[k - 1])) increasing = false;
    if (m[k] > m[k - 1]) non_increasing = false;
    lo = std::min(lo, m[k]);
    hi = std::max(hi, m[k]);
  }
  if (geometric || (increasing && log_growth >= th.log_growth_exponent)) {
    return BoundedVerdict::unbounded;
  }
  if (non_increasing || (lo > 0.0 && hi <= th.flat_factor * lo) || hi == 0.0) {
    return BoundedVerdict::bounded;
  }
  return BoundedVerdict::inconclusive;
}

VanishingVerdict vanishing_verdict(const std::vector<double>& m, double sup, BoundedVerdict bounded,
                                   const VerdictThresholds& th) {
  if (bounded == BoundedVerdict::unbounded) return VanishingVerdict::not_vanishing;
  const std::size_t w = static_cast<std::size_t>(th.window);
  if (m.size() < w) return VanishingVerdict::inconclusive;
  if (sup == 0.0) return VanishingVerdict::vanishing;
  const std::size_t n = m.size();
  const double last = m[n - 1];
  bool non_increasing = true;
  for (std::size_t k = n - w + 1; k < n; ++k) {
    if (m[k] > m[k - 1]) non_increasing = false;
  }
  if (non_increasing && last < th.vanish_fraction * sup) return VanishingVerdict::vanishing;
  if (last >= th.persist_fraction * sup) return VanishingVerdict::not_vanishing;
  return VanishingVerdict::inconclusive;
}

namespace {

std::vector<LevelMaximum> maxima_of(const std::vector<SweepEntry>& entries, bool disc) {
  std::map<int, LevelMaximum> by_level;
  for (const auto& e : entries) {
    if (e.failed) continue;
    const double v = disc ? e.rho_disc : e.rho_square;
    if (std::isnan(v)) continue;
    auto it = by_level.find(e.level);
    if (it == by_level.end()) {
      by_level.emplace(e.level, LevelMaximum{e.level, v, e.theta});
    } else if (v > it->second.value) {
      it->second.value = v;
      it->second.theta = e.theta;
    }
  }
  std::vector<LevelMaximum> out;
  for (const auto& [lvl, m] : by_level) out.push_back(m);
  return out;
}

}  // namespace

void finalize_report(SweepReport& report, const VerdictThresholds& th) {
  report.error_count = static_cast<int>(
      std::count_if(report.entries.begin(), report.entries.end(), [](const SweepEntry& e) {
        return e.failed;
      }));
  report.annulus_maxima = maxima_of(report.entries, false);
  report.disc_maxima = maxima_of(report.entries, true);
  report.global_sup_estimate = 0.0;
  for (const auto& m : report.annulus_maxima) {
    report.global_sup_estimate = std::max(report.global_sup_estimate, m.value);
  }
  report.disc_sup_estimate = 0.0;
  for (const auto& m : report.disc_maxima) {
    report.disc_sup_estimate = std::max(report.disc_sup_estimate, m.value);
  }

  std::vector<double> values;
  for (const auto& m : report.annulus_maxima) values.push_back(m.value);
  const int top = report.annulus_maxima.empty() ? 0 : report.annulus_maxima.back().level;
  std::vector<double> xb;
  std::vector<double> xl;
  std::vector<double> y;
  for (const auto& m : report.annulus_maxima) {
    if (m.level < (top + 1) / 2 || m.level < 1 || !(m.value > 0.0) || !std::isfinite(m.value)) {
      continue;
    }
    xb.push_back(-m.level * std::numbers::ln2);
    xl.push_back(std::log(m.level * std::numbers::ln2));
    y.push_back(std::log(m.value));
  }
  report.boundary_exponent = xb.size() >= 2 ? quad::fit_line(xb, y).slope : 0.0;
  report.log_growth_exponent = xl.size() >= 2 ? quad::fit_line(xl, y).slope : 0.0;
  report.verdict_bounded = bounded_verdict(values, report.log_growth_exponent, th);
  report.verdict_vanishing =
      vanishing_verdict(values, report.global_sup_estimate, report.verdict_bounded, th);
  if (report.error_count > 0) {
    report.warnings.push_back(std::to_string(report.error_count) +
                              " grid points excluded after numerical errors");
  }
}

std::string SweepReport::csv() const {
  std::ostringstream os;
  os << "j,radius,theta,rho_square,rho_disc,fa_norm_p,embed_lb_ratio\n";
  for (const auto& e : entries) {
    const double nan = std::nan("");
    os << e.level << ',' << format_number(e.radius) << ',' << format_number(e.theta) << ','
       << format_number(e.failed ? nan : e.rho_square) << ','
       << format_number(e.failed ? nan : e.rho_disc) << ',' << format_number(e.fa_norm_p) << ','
       << format_number(e.embed_lb_ratio) << '\n';
  }
  return os.str();
}

}  // namespace bz
