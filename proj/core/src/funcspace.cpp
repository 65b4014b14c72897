#include "bz/funcspace.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "bz/errors.hpp"
#include "bz/quadrature.hpp"

namespace bz {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;

struct Interval {
  double lo;
  double hi;
};

class CircleRule {
 public:
  CircleRule(const IntegrandShape& shape, const QuadratureBudget& budget,
             std::vector<Interval> domains)
      : shape_(shape),
        budget_(budget),
        rule_(quad::gauss_legendre(budget.gauss_nodes)),
        domains_(std::move(domains)) {}

  // int over the domains of exp(F(s e^{i theta})) d theta.
  double integrate(double s, const std::function<double(Complex)>& log_integrand) const {
    const double u = 1.0 - s;
    const double bw = shape_.bandwidth ? shape_.bandwidth(s) : 0.0;
    const double h_max = std::min(kPi / 8.0, 6.0 / (bw + 1.0)) / budget_.angular_density;
    double total = 0.0;
    std::vector<double> cuts;
    for (const auto& dom : domains_) {
      cuts.clear();
      cuts.push_back(dom.lo);
      cuts.push_back(dom.hi);
      for (const auto& f : shape_.features) {
        const double w0 = std::max(std::max(f.width, u) / 4.0, 1e-300);
        add_cut(cuts, f.angle, dom);
        for (double w = w0; w < kPi; w *= 2.0) {
          add_cut(cuts, f.angle + w, dom);
          add_cut(cuts, f.angle - w, dom);
        }
      }
      std::sort(cuts.begin(), cuts.end());
      for (std::size_t k = 0; k + 1 < cuts.size(); ++k) {
        const double a = cuts[k];
        const double b = cuts[k + 1];
        if (!(b > a)) continue;
        const int pieces = std::max(1, static_cast<int>(std::ceil((b - a) / h_max)));
        const double step = (b - a) / pieces;
        for (int m = 0; m < pieces; ++m) {
          const double lo = a + m * step;
          const double hi = m + 1 == pieces ? b : lo + step;
          total += quad::integrate(
              rule_,
              [&](double th) { return std::exp(log_integrand(std::polar(s, th))); }, lo, hi);
        }
      }
    }
    return total;
  }

 private:
  static void add_cut(std::vector<double>& cuts, double angle, const Interval& dom) {
    double a = dom.lo + std::fmod(angle - dom.lo, kTwoPi);
    if (a < dom.lo) a += kTwoPi;
    if (a > dom.lo && a < dom.hi) cuts.push_back(a);
  }

  const IntegrandShape& shape_;
  const QuadratureBudget& budget_;
  const quad::GaussRule& rule_;
  std::vector<Interval> domains_;
};

int feature_level(const IntegrandShape& shape) {
  int level = 0;
  for (const auto& f : shape.features) {
    if (f.width > 0.0 && f.width < 1.0) level = std::max(level, quad::dyadic_level(f.width));
  }
  return level;
}

double integrate_component(const AreaComponent& comp,
                           const std::function<double(Complex)>& log_integrand,
                           const IntegrandShape& shape, const QuadratureBudget& budget) {
  std::vector<Interval> domains;
  if (comp.sector) {
    domains.push_back({comp.sector->begin, comp.sector->begin + comp.sector->length()});
  } else {
    const double center = shape.features.empty() ? 0.0 : shape.features.front().angle;
    domains.push_back({center - kPi, center + kPi});
  }
  const CircleRule circle(shape, budget, std::move(domains));
  const auto& rule = quad::gauss_legendre(budget.gauss_nodes);
  const auto& breaks = comp.weight.breakpoints();
  const int depth = std::max(budget.radial_depth, feature_level(shape) + budget.extra_depth);

  double sum = 0.0;
  auto radial = [&](double u) {
    const double d = comp.weight.density_at_gap(u);
    if (d == 0.0) return 0.0;
    const double s = 1.0 - u;
    return d * s * circle.integrate(s, log_integrand);
  };
  for (int j = 0; j < depth; ++j) {
    double lo = quad::dyadic_gap_lo(j);
    const double hi = quad::dyadic_gap_hi(j);
    auto it = std::upper_bound(breaks.begin(), breaks.end(), lo);
    for (; it != breaks.end() && *it < hi; ++it) {
      sum += quad::integrate(rule, radial, lo, *it);
      lo = *it;
    }
    sum += quad::integrate(rule, radial, lo, hi);
  }
  const double u_last = std::ldexp(1.0, -depth);
  sum += circle.integrate(1.0 - 0.5 * u_last, log_integrand) *
         comp.weight.weighted_tail_at_gap(u_last);
  return comp.factor * sum / kPi;
}

}  // namespace

QuadratureBudget QuadratureBudget::doubled() const {
  QuadratureBudget b = *this;
  b.gauss_nodes = std::min(2 * gauss_nodes, 256);
  b.radial_depth = radial_depth + 2;
  b.extra_depth = extra_depth + 2;
  b.angular_density = 2.0 * angular_density;
  return b;
}

IntegrandShape shape_of(const AnalyticFunction& f, double p) {
  IntegrandShape shape;
  shape.features = f.features();
  const double m = std::max(1.0, p);
  shape.bandwidth = [f, m](double s) { return m * f.bandwidth(s); };
  return shape;
}

double integrate_exp(const DiscMeasure& mu, const std::function<double(Complex)>& log_integrand,
                     const IntegrandShape& shape, const QuadratureBudget& budget) {
  double total = 0.0;
  for (const auto& comp : mu.area_components()) {
    total += integrate_component(comp, log_integrand, shape, budget);
  }
  for (const auto& at : mu.atoms()) total += at.mass * std::exp(log_integrand(at.location));
  return total;
}

double integral_mean(const AnalyticFunction& f, double r, double p) {
  if (!(r > 0.0 && r < 1.0)) throw DomainError("integral mean needs 0 < r < 1");
  if (!(p > 0.0)) throw ParameterError("integral mean needs p > 0");
  if (std::isinf(p)) {
    const int n = 4096;
    double best = -1.0;
    int arg = 0;
    for (int k = 0; k < n; ++k) {
      const double v = std::abs(f(std::polar(r, kTwoPi * k / n)));
      if (v > best) {
        best = v;
        arg = k;
      }
    }
    double a = kTwoPi * (arg - 1) / n;
    double b = kTwoPi * (arg + 1) / n;
    const double g = 0.5 * (std::sqrt(5.0) - 1.0);
    for (int it = 0; it < 80; ++it) {
      const double c = b - g * (b - a);
      const double d = a + g * (b - a);
      if (std::abs(f(std::polar(r, c))) > std::abs(f(std::polar(r, d)))) {
        b = d;
      } else {
        a = c;
      }
    }
    return std::max(best, std::abs(f(std::polar(r, 0.5 * (a + b)))));
  }
  auto mean = [&](int n) {
    double acc = 0.0;
    for (int k = 0; k < n; ++k) acc += std::pow(std::abs(f(std::polar(r, kTwoPi * k / n))), p);
    return acc / n;
  };
  int n = 64;
  double prev = mean(n);
  while (n < (1 << 22)) {
    n *= 2;
    const double cur = mean(n);
    const bool done = std::abs(cur - prev) <= 1e-8 * std::abs(cur);
    prev = cur;
    if (done) break;
  }
  return std::pow(prev, 1.0 / p);
}

double quasinorm_power(const AnalyticFunction& f, const DiscMeasure& mu, const ScaleFunction& psi,
                       double p, const QuadratureBudget& budget) {
  if (!(p > 0.0)) throw ParameterError("quasinorm needs p > 0");
  auto log_integrand = [&](Complex z) {
    const double l = f.log_abs(z);
    if (l == -HUGE_VAL) return -HUGE_VAL;
    return p * l + psi.log_value_at_log(l);
  };
  const double v = integrate_exp(mu, log_integrand, shape_of(f, p), budget);
  if (!std::isfinite(v) || v < 0.0) {
    throw QuadratureError("quasinorm integral is not finite for " + f.description(), v, v);
  }
  return v;
}

double quasinorm(const AnalyticFunction& f, const DiscMeasure& mu, const ScaleFunction& psi,
                 double p, const QuadratureBudget& budget) {
  return std::pow(quasinorm_power(f, mu, psi, p, budget), 1.0 / p);
}

double quasinorm_verified(const AnalyticFunction& f, const DiscMeasure& mu,
                          const ScaleFunction& psi, double p, const QuadratureBudget& budget,
                          double rel_tol) {
  const double a = quasinorm(f, mu, psi, p, budget);
  const double b = quasinorm(f, mu, psi, p, budget.doubled());
  if (std::abs(a - b) > rel_tol * std::max(std::abs(b), 1e-300)) {
    throw QuadratureError("quasinorm did not converge under budget doubling", a, b);
  }
  return b;
}

AnalyticFunction add(const AnalyticFunction& f, const AnalyticFunction& g) {
  if (f.is_polynomial() && g.is_polynomial()) {
    return AnalyticFunction::polynomial(f.to_polynomial() + g.to_polynomial());
  }
  return AnalyticFunction::scaled_sum({{Complex(1.0), f}, {Complex(1.0), g}});
}

AnalyticFunction scale(Complex c, const AnalyticFunction& f) {
  if (f.is_polynomial()) return AnalyticFunction::polynomial(c * f.to_polynomial());
  return AnalyticFunction::scaled_sum({{c, f}});
}

double quasi_triangle_check(const AnalyticFunction& f, const AnalyticFunction& g,
                            const DiscMeasure& mu, const ScaleFunction& psi, double p,
                            const QuadratureBudget& budget) {
  const double nf = quasinorm(f, mu, psi, p, budget);
  const double ng = quasinorm(g, mu, psi, p, budget);
  const double ns = quasinorm(add(f, g), mu, psi, p, budget);
  if (nf + ng == 0.0) throw DegenerateInputError("quasi-triangle check with two zero functions");
  return ns / (nf + ng);
}

double growth_check(const AnalyticFunction& f, const RadialWeight& omega, const ScaleFunction& psi,
                    double p, const std::vector<Complex>& z_grid) {
  if (!(p > 0.0)) throw ParameterError("growth check needs p > 0");
  double best = 0.0;
  for (const Complex& z : z_grid) {
    const double l = f.log_abs(z);
    if (l == -HUGE_VAL) continue;
    const double ws = carleson_mass(omega, z);
    const double v = std::exp(p * l + std::log(ws) + psi.log_value(1.0 / ws));
    best = std::max(best, v);
  }
  return best;
}

}  // namespace bz
