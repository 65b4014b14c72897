#include "bz/scale.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "bz/errors.hpp"
#include "bz/quadrature.hpp"

namespace bz {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

std::string format_double(double v) {
  std::ostringstream os;
  os.precision(12);
  os << v;
  return os.str();
}

}  // namespace

const char* to_string(Monotonicity m) {
  switch (m) {
    case Monotonicity::increasing:
      return "increasing";
    case Monotonicity::decreasing:
      return "decreasing";
    case Monotonicity::constant:
      return "constant";
  }
  return "unknown";
}

const char* to_string(ScaleKind k) {
  switch (k) {
    case ScaleKind::constant:
      return "constant";
    case ScaleKind::log_power:
      return "log-power";
    case ScaleKind::tabulated:
      return "tabulated";
    case ScaleKind::custom:
      return "custom";
  }
  return "unknown";
}

double log_log_e_plus(double t) {
  if (t == kNegInf) return 0.0;
  double l = 0.0;
  if (t > 30.0) {
    l = t + std::log1p(std::exp(1.0 - t));
  } else {
    l = std::log(std::numbers::e + std::exp(t));
  }
  return std::log(l);
}

struct ScaleFunction::Impl {
  ScaleKind kind = ScaleKind::constant;
  Monotonicity direction = Monotonicity::constant;
  double beta = 0.0;
  std::string name;
  LogShape log_shape;
  std::vector<double> tab_t;
  std::vector<double> tab_logv;
  double tail_slope = 0.0;

  double shape(double t) const {
    switch (kind) {
      case ScaleKind::constant:
        return 0.0;
      case ScaleKind::log_power:
        return beta == 0.0 ? 0.0 : beta * log_log_e_plus(t);
      case ScaleKind::tabulated:
        return tabulated_shape(t);
      case ScaleKind::custom:
        return log_shape(t);
    }
    return 0.0;
  }

  double tabulated_shape(double t) const {
    if (t <= tab_t.front()) return tab_logv.front();
    if (t >= tab_t.back()) {
      return tab_logv.back() + tail_slope * (log_log_e_plus(t) - log_log_e_plus(tab_t.back()));
    }
    const auto it = std::upper_bound(tab_t.begin(), tab_t.end(), t);
    const std::size_t i = static_cast<std::size_t>(it - tab_t.begin());
    const double w = (t - tab_t[i - 1]) / (tab_t[i] - tab_t[i - 1]);
    return (1.0 - w) * tab_logv[i - 1] + w * tab_logv[i];
  }
};

ScaleFunction::ScaleFunction(std::shared_ptr<const Impl> impl, double log_factor)
    : impl_(std::move(impl)), log_factor_(log_factor) {}

ScaleFunction ScaleFunction::constant(double c) {
  if (!(c > 0.0) || !std::isfinite(c)) {
    throw ParameterError("constant scale function needs c > 0, got " + format_double(c));
  }
  auto impl = std::make_shared<Impl>();
  impl->kind = ScaleKind::constant;
  impl->direction = Monotonicity::constant;
  return ScaleFunction(std::move(impl), std::log(c));
}

ScaleFunction ScaleFunction::log_power(double beta) {
  if (!std::isfinite(beta)) throw ParameterError("log-power exponent must be finite");
  auto impl = std::make_shared<Impl>();
  impl->kind = ScaleKind::log_power;
  impl->beta = beta;
  impl->direction = beta > 0.0   ? Monotonicity::increasing
                    : beta < 0.0 ? Monotonicity::decreasing
                                 : Monotonicity::constant;
  return ScaleFunction(std::move(impl), 0.0);
}

ScaleFunction ScaleFunction::tabulated(std::vector<double> x, std::vector<double> values) {
  if (x.size() < 2 || x.size() != values.size()) {
    throw ParameterError("tabulated scale function needs at least two (x, value) pairs");
  }
  auto impl = std::make_shared<Impl>();
  impl->kind = ScaleKind::tabulated;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!(x[i] > 0.0) || !(values[i] > 0.0) || !std::isfinite(x[i]) ||
        !std::isfinite(values[i])) {
      throw ParameterError("tabulated scale function needs positive finite x and values");
    }
    if (i > 0 && !(x[i] > x[i - 1])) {
      throw ParameterError("tabulated scale function needs strictly increasing x");
    }
    impl->tab_t.push_back(std::log(x[i]));
    impl->tab_logv.push_back(std::log(values[i]));
  }
  const std::size_t n = x.size();
  const double dl = log_log_e_plus(impl->tab_t[n - 1]) - log_log_e_plus(impl->tab_t[n - 2]);
  impl->tail_slope = dl > 0.0 ? (impl->tab_logv[n - 1] - impl->tab_logv[n - 2]) / dl : 0.0;
  impl->name = "table(" + std::to_string(n) + " nodes)";
  ScaleFunction probe(impl, 0.0);
  impl->direction = check_essential_monotone(probe).direction;
  return ScaleFunction(std::move(impl), 0.0);
}

ScaleFunction ScaleFunction::custom(std::string name, LogShape log_shape,
                                    Monotonicity declared) {
  if (!log_shape) throw ParameterError("custom scale function needs a shape");
  auto impl = std::make_shared<Impl>();
  impl->kind = ScaleKind::custom;
  impl->name = std::move(name);
  impl->log_shape = std::move(log_shape);
  impl->direction = declared;
  return ScaleFunction(std::move(impl), 0.0);
}

double ScaleFunction::operator()(double x) const { return std::exp(log_value(x)); }

double ScaleFunction::log_value(double x) const {
  if (!(x >= 0.0)) throw DomainError("scale function argument must be >= 0");
  return log_value_at_log(x == 0.0 ? kNegInf : std::log(x));
}

double ScaleFunction::log_value_at_log(double t) const {
  return log_factor_ + impl_->shape(t);
}

double ScaleFunction::log_shape_at_log(double t) const { return impl_->shape(t); }

double ScaleFunction::factor() const { return std::exp(log_factor_); }

ScaleFunction ScaleFunction::scaled(double lambda) const {
  if (!(lambda > 0.0) || !std::isfinite(lambda)) {
    throw ParameterError("scale factor must be positive");
  }
  return ScaleFunction(impl_, log_factor_ + std::log(lambda));
}

ScaleKind ScaleFunction::kind() const { return impl_->kind; }

Monotonicity ScaleFunction::direction() const { return impl_->direction; }

std::optional<double> ScaleFunction::log_power_exponent() const {
  if (impl_->kind == ScaleKind::constant) return 0.0;
  if (impl_->kind == ScaleKind::log_power) return impl_->beta;
  return std::nullopt;
}

bool ScaleFunction::is_unit_constant() const {
  return (impl_->kind == ScaleKind::constant ||
          (impl_->kind == ScaleKind::log_power && impl_->beta == 0.0)) &&
         log_factor_ == 0.0;
}

std::string ScaleFunction::description() const {
  std::string base;
  switch (impl_->kind) {
    case ScaleKind::constant:
      return "const c=" + format_double(factor());
    case ScaleKind::log_power:
      base = "logpow beta=" + format_double(impl_->beta);
      break;
    default:
      base = impl_->name;
  }
  if (log_factor_ != 0.0) return format_double(factor()) + "*" + base;
  return base;
}

std::vector<double> scale_log_grid(const ScaleGrid& grid, std::span<const double> extra) {
  std::vector<double> t;
  t.push_back(kNegInf);
  for (int k = 0; k <= grid.tower_height; ++k) {
    t.push_back(std::ldexp(std::numbers::ln2, k));
  }
  const double lo = std::log(grid.fill_lo);
  const double hi = std::log(grid.fill_hi);
  for (int i = 0; i < grid.fill_points; ++i) {
    const double w = grid.fill_points == 1 ? 0.0 : static_cast<double>(i) / (grid.fill_points - 1);
    t.push_back(lo + w * (hi - lo));
  }
  t.insert(t.end(), extra.begin(), extra.end());
  std::sort(t.begin(), t.end());
  t.erase(std::unique(t.begin(), t.end()), t.end());
  return t;
}

namespace {

struct LogBand {
  double lo = 0.0;
  double hi = 0.0;
  bool empty = true;

  void add(double v) {
    if (empty) {
      lo = hi = v;
      empty = false;
    } else {
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
  }
  RatioBand band() const { return empty ? RatioBand{} : RatioBand{std::exp(lo), std::exp(hi)}; }
};

struct DoublingPass {
  LogBand band;
  int levels = 0;
  bool truncated = false;
};

DoublingPass doubling_pass(const ScaleFunction& psi, int height) {
  DoublingPass pass;
  pass.band.add(psi.log_value_at_log(kNegInf) - psi.log_value_at_log(kNegInf));
  const int fill = 64;
  const double lo = std::log(1e-3);
  const double hi = std::log(4.0);
  for (int i = 0; i < fill; ++i) {
    const double t = lo + (hi - lo) * i / (fill - 1);
    const double a = psi.log_value_at_log(t);
    const double b = psi.log_value_at_log(2.0 * t);
    if (std::isfinite(a) && std::isfinite(b)) pass.band.add(a - b);
  }
  for (int k = 0; k <= height; ++k) {
    const double t = std::ldexp(std::numbers::ln2, k);
    const double a = psi.log_value_at_log(t);
    const double b = psi.log_value_at_log(2.0 * t);
    if (!std::isfinite(a) || !std::isfinite(b)) {
      pass.truncated = true;
      break;
    }
    pass.band.add(a - b);
    pass.levels = k + 1;
  }
  return pass;
}

bool inside(const RatioBand& b, const ClassThresholds& th) {
  return b.min >= th.doubling_lo && b.max <= th.doubling_hi;
}

}  // namespace

SquareDoublingReport check_square_doubling(const ScaleFunction& psi, int tower_height,
                                           const ClassThresholds& thresholds) {
  if (tower_height < 8) throw ParameterError("tower height must be at least 8");
  const DoublingPass base = doubling_pass(psi, tower_height);
  const DoublingPass extra = doubling_pass(psi, tower_height + 1);
  SquareDoublingReport report;
  report.band = base.band.band();
  report.levels_used = base.levels;
  const RatioBand eb = extra.band.band();
  const bool stable = eb.min >= report.band.min / 2.0 && eb.max <= 2.0 * report.band.max;
  report.member = inside(report.band, thresholds) && inside(eb, thresholds) && stable;
  if (base.truncated) {
    report.diagnostic = "tower truncated at level " + std::to_string(base.levels) +
                        " (non-finite value)";
  }
  if (!report.member) {
    if (!report.diagnostic.empty()) report.diagnostic += "; ";
    report.diagnostic += stable ? "ratio band outside thresholds" : "ratio band not stable";
  }
  return report;
}

MonotoneReport check_essential_monotone(const ScaleFunction& psi,
                                        const ClassThresholds& thresholds,
                                        std::span<const double> extra, const ScaleGrid& grid) {
  const std::vector<double> t = scale_log_grid(grid, extra);
  double run_max = kNegInf;
  double run_min = std::numeric_limits<double>::infinity();
  double up = 0.0;
  double down = 0.0;
  for (double ti : t) {
    const double v = psi.log_shape_at_log(ti);
    if (!std::isfinite(v)) {
      throw NotInClassError("scale function is not finite on the evaluation grid");
    }
    run_max = std::max(run_max, v);
    run_min = std::min(run_min, v);
    up = std::max(up, run_max - v);
    down = std::max(down, v - run_min);
  }
  MonotoneReport report;
  report.constant_up = std::exp(up);
  report.constant_down = std::exp(down);
  if (report.constant_up <= thresholds.constant_threshold &&
      report.constant_down <= thresholds.constant_threshold) {
    report.direction = Monotonicity::constant;
    report.constant = std::max(report.constant_up, report.constant_down);
    return report;
  }
  const bool inc = report.constant_up <= report.constant_down;
  const double c = inc ? report.constant_up : report.constant_down;
  if (!(c <= thresholds.monotone_threshold)) {
    throw NotInClassError("scale function is not essentially monotone: C_up = " +
                          format_double(report.constant_up) +
                          ", C_down = " + format_double(report.constant_down));
  }
  report.direction = inc ? Monotonicity::increasing : Monotonicity::decreasing;
  report.constant = c;
  return report;
}

GrowthEnvelope growth_envelope(const ScaleFunction& psi, const ScaleGrid& grid) {
  std::vector<double> x;
  std::vector<double> y;
  for (int k = 0; k <= grid.tower_height; ++k) {
    const double t = std::ldexp(std::numbers::ln2, k);
    const double v = psi.log_value_at_log(t);
    if (!std::isfinite(v)) throw NotInClassError("growth envelope: non-finite value on tower");
    x.push_back(log_log_e_plus(t));
    y.push_back(v);
  }
  bool all_equal = std::all_of(y.begin(), y.end(), [&](double v) { return v == y.front(); });
  const double slope = all_equal ? 0.0 : quad::fit_line(x, y).slope;
  if (!std::isfinite(slope)) throw NotInClassError("growth envelope: no finite fit");
  double rmin = std::numeric_limits<double>::infinity();
  double rmax = -rmin;
  for (double t : scale_log_grid(grid)) {
    const double v = psi.log_value_at_log(t);
    if (!std::isfinite(v)) throw NotInClassError("growth envelope: non-finite value");
    const double r = slope == 0.0 ? v : v - slope * log_log_e_plus(t);
    rmin = std::min(rmin, r);
    rmax = std::max(rmax, r);
  }
  return GrowthEnvelope{std::exp(rmin), slope, std::exp(rmax), slope};
}

ThetaConstants theta_monotone_check(const ScaleFunction& psi, double p, double beta,
                                    const ScaleGrid& grid) {
  if (!(p > 0.0) || !(beta > 0.0)) throw ParameterError("theta check needs p, beta > 0");
  ThetaConstants out;
  double run_max = kNegInf;
  double up = 0.0;
  for (double t : scale_log_grid(grid)) {
    if (t == kNegInf) continue;
    const double h = p * t + psi.log_shape_at_log(t);
    run_max = std::max(run_max, h);
    up = std::max(up, run_max - h);
  }
  out.constant_up = std::exp(up);

  // Radius grid in tau = -log(1 - x), increasing in x.
  std::vector<double> tau;
  const int n = 2048;
  for (int i = 0; i < n; ++i) tau.push_back(40.0 * i / (n - 1));
  for (int k = 0; k <= grid.tower_height; ++k) tau.push_back(std::ldexp(std::numbers::ln2, k));
  std::sort(tau.begin(), tau.end());
  double run_min = std::numeric_limits<double>::infinity();
  double down = 0.0;
  for (double s : tau) {
    const double k = -beta * s + psi.log_shape_at_log(s);
    run_min = std::min(run_min, k);
    down = std::max(down, k - run_min);
  }
  out.constant_down = std::exp(down);
  return out;
}

RatioProperties ratio_properties_check(const ScaleFunction& psi, const ScaleFunction& phi,
                                       double p, const ScaleGrid& grid) {
  if (!(p > 0.0)) throw ParameterError("ratio check needs p > 0");
  LogBand a;
  LogBand b;
  LogBand c;
  const int shifts = 33;
  for (double t : scale_log_grid(grid)) {
    const double v = psi.log_value_at_log(t);
    if (t == kNegInf) {
      b.add(0.0);
      c.add(0.0);
      continue;
    }
    for (int i = 0; i < shifts; ++i) {
      const double s = -1.0 + 2.0 * i / (shifts - 1);
      a.add(v - psi.log_value_at_log(t + s * std::numbers::ln2));
    }
    b.add(v - psi.log_value_at_log(p * t));
    const double q = t - phi.log_value_at_log(t);
    if (!std::isfinite(q)) throw DomainError("x / Phi(x) is undefined");
    c.add(psi.log_value_at_log(q) - v);
  }
  return RatioProperties{a.band(), b.band(), c.band()};
}

ClassReport require_class_l(const ScaleFunction& psi, const ClassThresholds& thresholds) {
  ClassReport report;
  report.doubling = check_square_doubling(psi, 32, thresholds);
  if (!report.doubling.member) {
    throw NotInClassError("scale function " + psi.description() +
                          " fails the square doubling check: " + report.doubling.diagnostic);
  }
  report.monotone = check_essential_monotone(psi, thresholds);
  return report;
}

}  // namespace bz
