#include "bz/weights.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "bz/errors.hpp"
#include "bz/quadrature.hpp"

namespace bz {

namespace {

// Panels [2^{-j-1}, 2^{-j}] for j < kLevels; below 2^{-kLevels} the tail is
// extrapolated.
constexpr int kLevels = 1000;
constexpr int kPanelNodes = 16;

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(12);
  os << v;
  return os.str();
}

}  // namespace

const char* to_string(WeightKind k) {
  switch (k) {
    case WeightKind::power:
      return "power";
    case WeightKind::log_inverse_square:
      return "log-inverse-square";
    case WeightKind::tabulated:
      return "tabulated";
    case WeightKind::product_with_scale:
      return "product-with-scale";
    case WeightKind::shifted:
      return "shifted";
    case WeightKind::custom:
      return "custom";
  }
  return "unknown";
}

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::member:
      return "member";
    case Verdict::non_member:
      return "non-member";
    case Verdict::inconclusive:
      return "inconclusive";
  }
  return "unknown";
}

struct RadialWeight::Impl {
  WeightKind kind = WeightKind::custom;
  std::string name;
  double alpha = 0.0;
  GapDensity density;
  std::function<double(double)> closed_tail;
  std::function<double(double)> closed_weighted_tail;
  std::vector<double> breakpoints;
  // tail[j] = int_0^{2^{-j}} omega(u) du, moment[j] = int_0^{2^{-j}} omega(u) u du
  std::vector<double> tail;
  std::vector<double> moment;
  double inv_k = 0.0;
  std::shared_ptr<const Impl> shift_base;
  double shift = 0.0;

  // int_lo^hi omega(u) du and int_lo^hi omega(u) u du, split at breakpoints.
  std::pair<double, double> integrate(double lo, double hi) const {
    const auto& rule = quad::gauss_legendre(kPanelNodes);
    double a = 0.0;
    double b = 0.0;
    auto piece = [&](double l, double h) {
      const double half = 0.5 * (h - l);
      const double mid = 0.5 * (h + l);
      for (int i = 0; i < rule.size(); ++i) {
        const double u = mid + half * rule.nodes[i];
        const double d = density(u);
        a += rule.weights[i] * half * d;
        b += rule.weights[i] * half * d * u;
      }
    };
    double l = lo;
    auto it = std::upper_bound(breakpoints.begin(), breakpoints.end(), lo);
    for (; it != breakpoints.end() && *it < hi; ++it) {
      piece(l, *it);
      l = *it;
    }
    piece(l, hi);
    return {a, b};
  }

  void build_tables() {
    std::sort(breakpoints.begin(), breakpoints.end());
    std::vector<double> pa(kLevels);
    std::vector<double> pb(kLevels);
    for (int j = 0; j < kLevels; ++j) {
      const auto [a, b] = integrate(quad::dyadic_gap_lo(j), quad::dyadic_gap_hi(j));
      if (!std::isfinite(a) || !std::isfinite(b) || a < 0.0) {
        throw IntegrabilityError("weight " + name + ": non-finite or negative integral on panel " +
                                 std::to_string(j));
      }
      pa[j] = a;
      pb[j] = b;
    }
    double rest = 0.0;
    if (closed_tail) {
      rest = closed_tail(quad::dyadic_gap_hi(kLevels));
    } else {
      const double last = pa[kLevels - 1];
      if (last > 0.3 * pa[kLevels / 2]) {
        throw IntegrabilityError("weight " + name +
                                 ": tail integral does not converge near the boundary");
      }
      const double t2 = kLevels * std::numbers::ln2;
      const double t1 = 0.5 * t2;
      const double s1 = log_slope(t1);
      const double s2 = log_slope(t2);
      if (std::isfinite(s1) && std::isfinite(s2)) {
        if (!(s1 > 0.0) || !(s2 > 0.0)) {
          throw IntegrabilityError("weight " + name +
                                   ": tail integral does not converge near the boundary");
        }
        inv_k = std::max(0.0, (1.0 / s2 - 1.0 / s1) / (t2 - t1));
        if (inv_k >= 1.0) {
          throw IntegrabilityError("weight " + name +
                                   ": tail integral does not converge near the boundary");
        }
        rest = deep_tail(quad::dyadic_gap_hi(kLevels), false);
      }
    }
    tail.assign(kLevels + 1, 0.0);
    moment.assign(kLevels + 1, 0.0);
    tail[kLevels] = rest;
    for (int j = kLevels - 1; j >= 0; --j) {
      tail[j] = tail[j + 1] + pa[j];
      moment[j] = moment[j + 1] + pb[j];
    }
    if (!(tail[0] > 0.0) || !std::isfinite(tail[0])) {
      throw IntegrabilityError("weight " + name + ": tail(0) is not a positive finite number");
    }
  }

  // Minus the derivative of log(u omega(u)) in t = log(1/u).
  double log_slope(double t) const {
    constexpr double h = 1e-2;
    const double lo = std::exp(-t - h);
    const double hi = std::exp(-t + h);
    const double g_lo = lo * density(lo);
    const double g_hi = hi * density(hi);
    if (!(g_lo > 0.0) || !(g_hi > 0.0)) return std::numeric_limits<double>::quiet_NaN();
    return (std::log(g_hi) - std::log(g_lo)) / (2.0 * h);
  }

  // Beyond the tables u omega(u) is modelled as C (t + c)^{-k}, which covers
  // both power densities (k, c -> infinity) and inverse log powers.
  double deep_tail(double u, bool with_moment) const {
    const double g = u * density(u);
    if (!(g > 0.0)) return 0.0;
    const double s = log_slope(-std::log(u));
    if (!(s > 0.0)) return 0.0;
    if (with_moment) return u * g / (s + 1.0);
    return g / (s * (1.0 - inv_k));
  }

  double table_lookup(const std::vector<double>& table, double u, bool with_moment) const {
    if (u >= 1.0) return table[0];
    if (u <= 0.0) return 0.0;
    const double deepest = quad::dyadic_gap_hi(kLevels);
    if (u < deepest && !closed_tail) return deep_tail(u, with_moment);
    if (u < deepest) {
      const double d0 = density(deepest);
      const double d1 = density(u);
      if (!(d0 > 0.0)) return 0.0;
      const double scale = with_moment ? (u * u * d1) / (deepest * deepest * d0)
                                       : (u * d1) / (deepest * d0);
      return table[kLevels] * scale;
    }
    const int j = quad::dyadic_level(u);
    const double lo = quad::dyadic_gap_lo(j);
    if (u == lo) return table[j + 1];
    const auto [a, b] = integrate(lo, u);
    return table[j + 1] + (with_moment ? b : a);
  }

  double tail_at_gap(double u) const {
    if (closed_tail) return u <= 0.0 ? 0.0 : closed_tail(std::min(u, 1.0));
    return table_lookup(tail, u, false);
  }

  double weighted_tail_at_gap(double u) const {
    if (closed_weighted_tail) return u <= 0.0 ? 0.0 : closed_weighted_tail(std::min(u, 1.0));
    if (u <= 0.0) return 0.0;
    return std::max(0.0, tail_at_gap(u) - table_lookup(moment, u, true));
  }
};

RadialWeight::RadialWeight(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}

RadialWeight RadialWeight::power(double alpha) {
  if (!std::isfinite(alpha)) throw ParameterError("power weight exponent must be finite");
  if (!(alpha > -1.0)) {
    throw IntegrabilityError("power weight (1-s)^" + fmt(alpha) + " is not integrable");
  }
  auto impl = std::make_shared<Impl>();
  impl->kind = WeightKind::power;
  impl->name = "power alpha=" + fmt(alpha);
  impl->alpha = alpha;
  if (alpha == 0.0) {
    impl->density = [](double) { return 1.0; };
  } else {
    impl->density = [alpha](double u) { return std::pow(u, alpha); };
  }
  const double a1 = alpha + 1.0;
  const double a2 = alpha + 2.0;
  impl->closed_tail = [a1](double u) { return std::pow(u, a1) / a1; };
  impl->closed_weighted_tail = [a1, a2](double u) {
    return std::pow(u, a1) * (1.0 / a1 - u / a2);
  };
  impl->build_tables();
  return RadialWeight(std::move(impl));
}

RadialWeight RadialWeight::log_inverse_square() {
  auto impl = std::make_shared<Impl>();
  impl->kind = WeightKind::log_inverse_square;
  impl->name = "loginvsq";
  impl->density = [](double u) {
    const double l = 1.0 - std::log(u);
    return 1.0 / (u * l * l);
  };
  impl->closed_tail = [](double u) { return 1.0 / (1.0 - std::log(u)); };
  impl->build_tables();
  return RadialWeight(std::move(impl));
}

RadialWeight RadialWeight::tabulated(std::vector<double> s, std::vector<double> values) {
  if (s.size() < 2 || s.size() != values.size()) {
    throw ParameterError("tabulated weight needs at least two (s, value) pairs");
  }
  std::vector<double> lg;
  std::vector<double> lv;
  std::vector<double> gaps;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (!(s[i] >= 0.0 && s[i] < 1.0)) throw ParameterError("tabulated weight needs s in [0, 1)");
    if (!(values[i] > 0.0) || !std::isfinite(values[i])) {
      throw ParameterError("tabulated weight needs positive finite values");
    }
    if (i > 0 && !(s[i] > s[i - 1])) {
      throw ParameterError("tabulated weight needs strictly increasing s");
    }
  }
  for (std::size_t i = s.size(); i-- > 0;) {
    const double g = 1.0 - s[i];
    gaps.push_back(g);
    lg.push_back(std::log(g));
    lv.push_back(std::log(values[i]));
  }
  const std::size_t n = lg.size();
  const double slope_lo = (lv[1] - lv[0]) / (lg[1] - lg[0]);
  const double slope_hi = (lv[n - 1] - lv[n - 2]) / (lg[n - 1] - lg[n - 2]);
  auto impl = std::make_shared<Impl>();
  impl->kind = WeightKind::tabulated;
  impl->name = "table(" + std::to_string(n) + " nodes)";
  impl->density = [lg, lv, slope_lo, slope_hi](double u) {
    const double x = std::log(u);
    const std::size_t m = lg.size();
    if (x <= lg.front()) return std::exp(lv.front() + slope_lo * (x - lg.front()));
    if (x >= lg.back()) return std::exp(lv.back() + slope_hi * (x - lg.back()));
    const auto it = std::upper_bound(lg.begin(), lg.end(), x);
    const std::size_t i = std::min<std::size_t>(static_cast<std::size_t>(it - lg.begin()), m - 1);
    const double w = (x - lg[i - 1]) / (lg[i] - lg[i - 1]);
    return std::exp((1.0 - w) * lv[i - 1] + w * lv[i]);
  };
  impl->breakpoints = gaps;
  impl->build_tables();
  return RadialWeight(std::move(impl));
}

RadialWeight RadialWeight::custom(std::string name, GapDensity density_at_gap,
                                  std::vector<double> breakpoints) {
  if (!density_at_gap) throw ParameterError("custom weight needs a density");
  auto impl = std::make_shared<Impl>();
  impl->kind = WeightKind::custom;
  impl->name = std::move(name);
  impl->density = std::move(density_at_gap);
  impl->breakpoints = std::move(breakpoints);
  impl->build_tables();
  return RadialWeight(std::move(impl));
}

WeightKind RadialWeight::kind() const { return impl_->kind; }

std::string RadialWeight::description() const { return impl_->name; }

std::optional<double> RadialWeight::power_exponent() const {
  if (impl_->kind == WeightKind::power) return impl_->alpha;
  return std::nullopt;
}

double RadialWeight::density(double s) const {
  if (!(s >= 0.0 && s < 1.0)) throw DomainError("weight density needs s in [0, 1)");
  return impl_->density(1.0 - s);
}

double RadialWeight::density_at_gap(double u) const { return impl_->density(u); }

const std::vector<double>& RadialWeight::breakpoints() const { return impl_->breakpoints; }

double RadialWeight::tail(double r) const {
  if (!(r >= 0.0 && r < 1.0)) throw DomainError("tail needs r in [0, 1), got " + fmt(r));
  return impl_->tail_at_gap(1.0 - r);
}

double RadialWeight::tail_at_gap(double u) const { return impl_->tail_at_gap(u); }

double RadialWeight::weighted_tail(double r) const {
  if (!(r >= 0.0 && r < 1.0)) throw DomainError("weighted tail needs r in [0, 1)");
  return impl_->weighted_tail_at_gap(1.0 - r);
}

double RadialWeight::weighted_tail_at_gap(double u) const {
  return impl_->weighted_tail_at_gap(u);
}

double carleson_mass(const RadialWeight& omega, Complex a) {
  const double m = std::abs(a);
  if (!(m < 1.0)) throw DomainError("Carleson square apex must lie in the unit disc");
  if (m == 0.0) return 2.0 * omega.weighted_tail_at_gap(1.0);
  return (1.0 - m) / std::numbers::pi * omega.weighted_tail(m);
}

double fit_tail_exponent(const RadialWeight& omega, int grid_depth) {
  std::vector<double> x;
  std::vector<double> y;
  for (int j = (grid_depth + 1) / 2; j <= grid_depth; ++j) {
    const double t = omega.tail_at_gap(std::ldexp(1.0, -j));
    if (!(t > 0.0) || !std::isfinite(t)) continue;
    x.push_back(-j * std::numbers::ln2);
    y.push_back(std::log(t));
  }
  if (x.size() < 2) return 0.0;
  return quad::fit_line(x, y).slope;
}

namespace {

bool blows_up(const std::vector<double>& r, double factor) {
  if (r.size() < 5) return false;
  const std::size_t n = r.size();
  for (std::size_t k = n - 4; k < n; ++k) {
    if (!(r[k] > factor * r[k - 1])) return false;
  }
  return true;
}

}  // namespace

DoublingReport check_dhat(const RadialWeight& omega, int grid_depth,
                          const DoublingThresholds& thresholds) {
  if (grid_depth < 4) throw ParameterError("Dhat check needs grid_depth >= 4");
  DoublingReport report;
  report.class_name = "Dhat";
  std::vector<double> ratios;
  bool underflow = false;
  int underflow_level = -1;
  double prev = omega.tail_at_gap(1.0);
  for (int j = 0; j <= grid_depth + 1; ++j) {
    const double next = omega.tail_at_gap(std::ldexp(1.0, -j - 1));
    if (!(next > 0.0) || !std::isfinite(next) || !std::isfinite(prev)) {
      underflow = true;
      underflow_level = j + 1;
      break;
    }
    ratios.push_back(prev / next);
    prev = next;
  }
  const std::size_t in_grid = std::min<std::size_t>(ratios.size(), grid_depth + 1);
  report.ratios.assign(ratios.begin(), ratios.begin() + in_grid);
  if (!report.ratios.empty()) {
    report.grid_max_ratio = *std::max_element(report.ratios.begin(), report.ratios.end());
    report.grid_min_ratio = *std::min_element(report.ratios.begin(), report.ratios.end());
    report.constant_C = report.grid_max_ratio;
  }
  if (blows_up(report.ratios, thresholds.growth_factor)) {
    report.verdict = Verdict::non_member;
    report.diagnostic = "ratios grow geometrically toward the boundary";
    if (underflow) report.diagnostic += "; tail underflow at level " + std::to_string(underflow_level);
    return report;
  }
  if (underflow) {
    report.verdict = Verdict::inconclusive;
    report.diagnostic = "tail underflow at level " + std::to_string(underflow_level);
    return report;
  }
  report.exponent_beta = fit_tail_exponent(omega, grid_depth);
  const double with_extra = std::max(report.grid_max_ratio, ratios.back());
  report.verdict = with_extra <= thresholds.stability_factor * report.grid_max_ratio
                       ? Verdict::member
                       : Verdict::inconclusive;
  if (report.verdict == Verdict::inconclusive) {
    report.diagnostic = "max ratio not stable under one extra level";
  }
  return report;
}

DoublingReport check_dcheck(const RadialWeight& omega, int grid_depth,
                            const std::vector<double>& k_candidates,
                            const DoublingThresholds& thresholds) {
  if (grid_depth < 4) throw ParameterError("Dcheck check needs grid_depth >= 4");
  if (k_candidates.empty()) throw ParameterError("Dcheck check needs K candidates");
  DoublingReport report;
  report.class_name = "Dcheck";
  report.verdict = Verdict::non_member;
  double best_min = -1.0;
  for (double k : k_candidates) {
    if (!(k > 1.0)) throw ParameterError("Dcheck K candidates must exceed 1");
    std::vector<double> ratios;
    bool underflow = false;
    for (int j = 0; j <= grid_depth; ++j) {
      const double u = std::ldexp(1.0, -j);
      const double num = omega.tail_at_gap(u);
      const double den = omega.tail_at_gap(u / k);
      if (!(num > 0.0) || !std::isfinite(num)) {
        underflow = true;
        break;
      }
      ratios.push_back(den > 0.0 ? num / den : std::numeric_limits<double>::infinity());
    }
    if (underflow) {
      report.verdict = Verdict::inconclusive;
      report.diagnostic = "tail underflow";
      return report;
    }
    const double mn = *std::min_element(ratios.begin(), ratios.end());
    const double mx = *std::max_element(ratios.begin(), ratios.end());
    if (mn > best_min) {
      best_min = mn;
      report.constant_K = k;
      report.constant_C = mn;
      report.grid_min_ratio = mn;
      report.grid_max_ratio = mx;
      report.ratios = ratios;
    }
    if (mn >= 1.0 + thresholds.dcheck_margin) {
      report.verdict = Verdict::member;
      report.constant_K = k;
      report.constant_C = mn;
      report.grid_min_ratio = mn;
      report.grid_max_ratio = mx;
      report.ratios = ratios;
      break;
    }
  }
  if (report.verdict == Verdict::non_member) {
    report.diagnostic = "no K gives a min ratio of at least 1 + margin";
  }
  report.exponent_beta = fit_tail_exponent(omega, grid_depth);
  return report;
}

namespace {

// (1/2pi) int_0^{2pi} |1 - x e^{i theta}|^{-(lambda + 1)} d theta, 0 <= x < 1.
double circle_kernel_mean(double x, double lambda) {
  if (x == 0.0) return 1.0;
  const auto& rule = quad::gauss_legendre(16);
  const double e = -(lambda + 1.0) / 2.0;
  const double gap = 1.0 - x;
  auto f = [&](double th) {
    const double s = std::sin(0.5 * th);
    return std::pow(gap * gap + 4.0 * x * s * s, e);
  };
  double sum = 0.0;
  double lo = 0.0;
  double w = std::max(gap / 4.0, 1e-300);
  while (lo < std::numbers::pi) {
    const double hi = std::min(std::numbers::pi, lo + w);
    sum += quad::integrate(rule, f, lo, hi);
    lo = hi;
    if (lo >= w) w *= 2.0;
  }
  return sum / std::numbers::pi;
}

}  // namespace

KernelBand kernel_integral_check(const RadialWeight& omega, double lambda,
                                 const std::vector<Complex>& zeta_grid) {
  if (!(lambda >= 0.0)) throw ParameterError("kernel check needs lambda >= 0");
  if (zeta_grid.empty()) throw ParameterError("kernel check needs a non-empty grid");
  KernelBand band;
  const auto& rule = quad::gauss_legendre(16);
  for (const Complex& zeta : zeta_grid) {
    const double rho = std::abs(zeta);
    if (!(rho < 1.0)) throw DomainError("kernel check needs |zeta| < 1");
    const int depth = std::max(40, (rho > 0.0 ? quad::dyadic_level(1.0 - rho) : 0) + 30);
    double sum = 0.0;
    for (int j = 0; j < depth; ++j) {
      auto f = [&](double u) {
        const double d = omega.density_at_gap(u);
        if (d == 0.0) return 0.0;
        const double s = 1.0 - u;
        return d * s * circle_kernel_mean(rho * s, lambda);
      };
      sum += quad::integrate(rule, f, quad::dyadic_gap_lo(j), quad::dyadic_gap_hi(j));
    }
    const double u_last = std::ldexp(1.0, -depth);
    sum += circle_kernel_mean(rho * (1.0 - 0.5 * u_last), lambda) *
           omega.weighted_tail_at_gap(u_last);
    const double integral = 2.0 * sum;
    const double value = integral * std::pow(1.0 - rho, lambda) / omega.tail(rho);
    if (!std::isfinite(value) || !(value > 0.0)) {
      std::ostringstream os;
      os << "kernel integral did not converge at zeta = " << zeta.real() << "+" << zeta.imag()
         << "i";
      throw QuadratureError(os.str());
    }
    band.values.push_back(value);
  }
  band.min = *std::min_element(band.values.begin(), band.values.end());
  band.max = *std::max_element(band.values.begin(), band.values.end());
  return band;
}

RadialWeight zygmund_transform(const RadialWeight& omega, const ScaleFunction& psi) {
  if (psi.is_unit_constant()) return omega;
  auto impl = std::make_shared<RadialWeight::Impl>();
  impl->kind = WeightKind::product_with_scale;
  impl->name = "W[" + omega.description() + "; " + psi.description() + "]";
  impl->breakpoints = omega.impl().breakpoints;
  impl->density = [omega, psi](double u) {
    const double w = omega.density_at_gap(u);
    if (w == 0.0) return 0.0;
    const double v = std::exp(psi.log_value_at_log(-std::log(u)) + std::log(w));
    if (!std::isfinite(v)) {
      throw DomainError("scale function overflow in weight transform at s = " + fmt(1.0 - u));
    }
    return v;
  };
  impl->build_tables();
  return RadialWeight(std::move(impl));
}

PsiTailBands psi_tail_compare(const RadialWeight& omega, const ScaleFunction& psi,
                              const std::vector<double>& r_grid) {
  if (r_grid.empty()) throw ParameterError("tail comparison needs a non-empty grid");
  const RadialWeight big_w = zygmund_transform(omega, psi);
  const RadialWeight left = RadialWeight::custom(
      "L[" + omega.description() + "; " + psi.description() + "]",
      [omega, psi](double u) {
        return std::exp(psi.log_value_at_log(-std::log(u))) * omega.tail_at_gap(u) / u;
      },
      omega.impl().breakpoints);
  PsiTailBands out;
  bool first = true;
  for (double r : r_grid) {
    const double l = left.tail(r);
    const double rr = big_w.tail(r);
    const double a = l / rr;
    const double b = rr / (psi(1.0 / (1.0 - r)) * omega.tail(r));
    if (!std::isfinite(a) || !std::isfinite(b)) {
      throw QuadratureError("tail comparison failed at r = " + fmt(r));
    }
    if (first) {
      out.lemma = {a, a};
      out.afternote = {b, b};
      first = false;
    } else {
      out.lemma = {std::min(out.lemma.min, a), std::max(out.lemma.max, a)};
      out.afternote = {std::min(out.afternote.min, b), std::max(out.afternote.max, b)};
    }
  }
  return out;
}

RadialWeight power_shift(const RadialWeight& omega, double x) {
  if (!std::isfinite(x)) throw ParameterError("power shift must be finite");
  if (x == 0.0) return omega;
  const auto& src = omega.impl();
  if (src.kind == WeightKind::power) return RadialWeight::power(src.alpha + x);
  std::shared_ptr<const RadialWeight::Impl> base;
  double total = x;
  if (src.kind == WeightKind::shifted) {
    base = src.shift_base;
    total = src.shift + x;
    if (total == 0.0) return RadialWeight(base);
  } else {
    base = omega.shared_impl();
  }
  auto impl = std::make_shared<RadialWeight::Impl>();
  impl->kind = WeightKind::shifted;
  impl->name = base->name + " shift=" + fmt(total);
  impl->shift_base = base;
  impl->shift = total;
  impl->breakpoints = base->breakpoints;
  impl->density = [base, total](double u) {
    const double w = base->density(u);
    if (w == 0.0) return 0.0;
    return w * std::pow(u, total);
  };
  impl->build_tables();
  return RadialWeight(std::move(impl));
}

}  // namespace bz
