#include "bz/operators.hpp"

#include <cmath>
#include <string>

#include "bz/errors.hpp"
#include "bz/measures.hpp"
#include "bz/parallel.hpp"

namespace bz {

namespace {

void require_doubling(const RadialWeight& w, const char* role) {
  if (check_dhat(w, 16).verdict != Verdict::member || check_dcheck(w, 16).verdict != Verdict::member) {
    throw ParameterError(std::string(role) + " weight " + w.description() +
                         " is not in both doubling classes");
  }
}

Polynomial product_with_derivative(const AnalyticFunction& g, const AnalyticFunction& f,
                                   const TgOptions& options) {
  const Polynomial fp = f.taylor_polynomial(options.taylor_radius, 1e-9, options.degree_cap);
  const Polynomial gp = g.taylor_polynomial(options.taylor_radius, 1e-9, options.degree_cap + 1);
  return fp * gp.derivative();
}

// (1 - r) (Phi(1/omega(S)) nu(X))^{1/q} / (Psi(1/omega(S)) omega(X))^{1/p}, with X
// the square or the disc at radius r.
double level_factor(const OperatorContext& ctx, double r, double omega_x, double nu_x) {
  const double ws = carleson_mass(ctx.omega, Complex(r));
  if (!(ws > 0.0) || !(omega_x > 0.0)) throw DomainError("weight has zero mass on the test set");
  const double x = 1.0 / ws;
  const double gap = 1.0 - r;
  const double direct =
      gap * std::pow(ctx.phi(x) * nu_x, 1.0 / ctx.q) / std::pow(ctx.psi(x) * omega_x, 1.0 / ctx.p);
  if (std::isfinite(direct)) return direct;
  const double lx = std::log(x);
  return std::exp(std::log(gap) + (ctx.phi.log_value_at_log(lx) + std::log(nu_x)) / ctx.q -
                  (ctx.psi.log_value_at_log(lx) + std::log(omega_x)) / ctx.p);
}

double square_factor(const OperatorContext& ctx, double r) {
  return level_factor(ctx, r, carleson_mass(ctx.omega, Complex(r)),
                      carleson_mass(ctx.nu, Complex(r)));
}

double disc_factor(const OperatorContext& ctx, double r, double disc_radius) {
  return level_factor(ctx, r, weight_disc_mass(ctx.omega, Complex(r), disc_radius),
                      weight_disc_mass(ctx.nu, Complex(r), disc_radius));
}

}  // namespace

OperatorContext OperatorContext::make(RadialWeight omega, RadialWeight nu, ScaleFunction psi,
                                      ScaleFunction phi, double p, double q, AnalyticFunction g) {
  if (!(p > 0.0) || !std::isfinite(p)) throw ParameterError("p must be positive");
  if (!(q >= p) || !std::isfinite(q)) throw ParameterError("q must satisfy p <= q < inf");
  require_doubling(omega, "source");
  require_doubling(nu, "target");
  require_class_l(psi);
  require_class_l(phi);
  return OperatorContext{std::move(omega), std::move(nu), std::move(psi), std::move(phi),
                         p, q, std::move(g)};
}

AnalyticFunction apply_tg(const AnalyticFunction& g, const AnalyticFunction& f,
                          const TgOptions& options) {
  const Polynomial prod = product_with_derivative(g, f, options);
  if (prod.degree() + 1 > options.degree_cap) {
    double tail = 0.0;
    const auto& c = prod.coefficients();
    for (std::size_t n = static_cast<std::size_t>(options.degree_cap); n < c.size(); ++n) {
      tail += std::abs(c[n]) / static_cast<double>(n + 1);
    }
    throw TruncationError("T_g result degree " + std::to_string(prod.degree() + 1) +
                              " exceeds cap " + std::to_string(options.degree_cap),
                          tail);
  }
  return AnalyticFunction::polynomial(prod.antiderivative());
}

double tg_characteristic(const OperatorContext& ctx, Complex a) {
  const double r = std::abs(a);
  if (!(r < 1.0)) throw DomainError("characteristic needs |a| < 1");
  const double gd = std::abs(ctx.g.derivative_at(a));
  if (gd == 0.0) return 0.0;
  return gd * square_factor(ctx, r);
}

double tg_characteristic_disc(const OperatorContext& ctx, Complex a, double disc_radius) {
  const double r = std::abs(a);
  if (!(r < 1.0)) throw DomainError("characteristic needs |a| < 1");
  if (!(disc_radius > 0.0 && disc_radius < 1.0)) throw ParameterError("disc radius must lie in (0, 1)");
  const double gd = std::abs(ctx.g.derivative_at(a));
  if (gd == 0.0) return 0.0;
  return gd * disc_factor(ctx, r, disc_radius);
}

SweepReport tg_sweep(const OperatorContext& ctx, int max_level, const TgSweepOptions& options) {
  if (max_level < 8) throw ParameterError("sweep needs at least 8 levels");
  if (max_level > 40) throw ParameterError("sweep depth is limited to 40 levels");
  if (!(options.disc_radius > 0.0 && options.disc_radius < 1.0)) {
    throw ParameterError("disc radius must lie in (0, 1)");
  }
  const double nan = std::nan("");
  const std::size_t levels = static_cast<std::size_t>(max_level) + 1;
  std::vector<std::vector<SweepEntry>> rows(levels);
  parallel_for(levels, [&](std::size_t j) {
    const int level = static_cast<int>(j);
    const double r = level_radius(level);
    double fs = nan;
    double fd = nan;
    bool failed = false;
    try {
      fs = square_factor(ctx, r);
      fd = disc_factor(ctx, r, options.disc_radius);
    } catch (const Error&) {
      failed = true;
    }
    for (double th : level_angles(level, options.angular_cap)) {
      SweepEntry e;
      e.level = level;
      e.radius = r;
      e.theta = th;
      e.fa_norm_p = nan;
      e.embed_lb_ratio = nan;
      e.failed = failed;
      if (!failed) {
        const double gd = std::abs(ctx.g.derivative_at(std::polar(r, th)));
        if (std::isfinite(gd)) {
          e.rho_square = gd == 0.0 ? 0.0 : gd * fs;
          e.rho_disc = gd == 0.0 ? 0.0 : gd * fd;
        } else {
          e.failed = true;
        }
      }
      if (e.failed) {
        e.rho_square = nan;
        e.rho_disc = nan;
      }
      rows[j].push_back(e);
    }
  });
  SweepReport report;
  for (auto& level_rows : rows) {
    report.entries.insert(report.entries.end(), level_rows.begin(), level_rows.end());
  }
  finalize_report(report, options.thresholds);
  return report;
}

double littlewood_paley_ratio(const OperatorContext& ctx, const AnalyticFunction& f,
                              const QuadratureBudget& budget) {
  const TgOptions options;
  const Polynomial prod = product_with_derivative(ctx.g, f, options);
  if (prod.is_zero()) throw DegenerateInputError("f g' vanishes identically");
  const AnalyticFunction tgf = apply_tg(ctx.g, f, options);
  const double num = quasinorm_power(tgf, DiscMeasure::area(ctx.nu), ctx.phi, ctx.q, budget);

  const RadialWeight nu = ctx.nu;
  const ScaleFunction phi = ctx.phi;
  const double q = ctx.q;
  const RadialWeight lp_weight = RadialWeight::custom(
      "littlewood-paley(" + nu.description() + ")",
      [nu, phi, q](double u) { return std::pow(u, q - 1.0) * nu.tail_at_gap(u) * phi(1.0 / u); },
      nu.breakpoints());
  const double den = quasinorm_power(AnalyticFunction::polynomial(prod),
                                     DiscMeasure::area(lp_weight), ScaleFunction::constant(1.0),
                                     q, budget);
  if (!(den > 0.0)) throw DegenerateInputError("Littlewood-Paley denominator vanishes");
  return num / den;
}

}  // namespace bz
