#include "bz/carleson.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "bz/errors.hpp"
#include "bz/parallel.hpp"

namespace bz {

namespace {

void require_doubling(const RadialWeight& omega) {
  const auto hat = check_dhat(omega, 16);
  if (hat.verdict != Verdict::member) {
    throw ParameterError("weight " + omega.description() + " is not upper doubling: " +
                         hat.diagnostic);
  }
  const auto check = check_dcheck(omega, 16);
  if (check.verdict != Verdict::member) {
    throw ParameterError("weight " + omega.description() + " is not lower doubling: " +
                         check.diagnostic);
  }
}

void require_point(Complex a) {
  if (!(std::abs(a) < 1.0)) throw DomainError("characteristic needs |a| < 1");
}

double square_mass(const RadialWeight& omega, Complex a) {
  const double m = carleson_mass(omega, a);
  if (!(m > 0.0)) throw DomainError("weight has zero mass on the Carleson square");
  return m;
}

// num * Phi(x) / (den * Psi(x))^{q/p}, falling back to logs on overflow.
double ratio(double num, double den, double x, const ScaleFunction& psi, const ScaleFunction& phi,
             double p, double q) {
  if (num == 0.0) return 0.0;
  if (!(den > 0.0)) throw DomainError("weight has zero mass on the test set");
  const double e = q / p;
  const double direct = num * phi(x) / std::pow(den * psi(x), e);
  if (std::isfinite(direct) && direct > 0.0) return direct;
  const double lx = std::log(x);
  return std::exp(std::log(num) + phi.log_value_at_log(lx) -
                  e * (std::log(den) + psi.log_value_at_log(lx)));
}

double max_area_exponent(const DiscMeasure& mu) {
  double beta = -HUGE_VAL;
  for (const auto& c : mu.area_components()) {
    beta = std::max(beta, fit_tail_exponent(c.weight, 16));
  }
  return beta;
}

}  // namespace

CarlesonContext CarlesonContext::make(RadialWeight omega, ScaleFunction psi, ScaleFunction phi,
                                      DiscMeasure mu, double p, double q, double disc_radius) {
  if (!(p > 0.0) || !std::isfinite(p)) throw ParameterError("p must be positive");
  if (!(q >= p) || !std::isfinite(q)) throw ParameterError("q must satisfy p <= q < inf");
  if (!(disc_radius > 0.0 && disc_radius < 1.0)) {
    throw ParameterError("disc radius must lie in (0, 1)");
  }
  if (mu.empty()) throw ParameterError("measure has no components");
  require_doubling(omega);
  require_class_l(psi);
  require_class_l(phi);
  return CarlesonContext{std::move(omega), std::move(psi), std::move(phi), std::move(mu),
                         p, q, disc_radius};
}

double characteristic(const CarlesonContext& ctx, Complex a) {
  require_point(a);
  const double ws = square_mass(ctx.omega, a);
  return ratio(ctx.mu.mass_on_square(a), ws, 1.0 / ws, ctx.psi, ctx.phi, ctx.p, ctx.q);
}

double characteristic_disc(const CarlesonContext& ctx, Complex a) {
  require_point(a);
  const double ws = square_mass(ctx.omega, a);
  const double wd = weight_disc_mass(ctx.omega, a, ctx.disc_radius);
  return ratio(ctx.mu.mass_on_disc(a, ctx.disc_radius), wd, 1.0 / ws, ctx.psi, ctx.phi, ctx.p,
               ctx.q);
}

double default_gamma(const RadialWeight& omega, const ScaleFunction& psi) {
  const double beta = fit_tail_exponent(omega, 16);
  const double c2 = growth_envelope(psi).C2;
  return beta + 2.0 + std::max(0.0, -c2);
}

double sweep_gamma(const CarlesonContext& ctx) {
  double gamma = default_gamma(ctx.omega, ctx.psi);
  const double beta_mu = max_area_exponent(ctx.mu);
  if (std::isfinite(beta_mu)) gamma = std::max(gamma, ctx.p / ctx.q * (beta_mu + 2.0));
  return gamma;
}

AnalyticFunction test_function(const CarlesonContext& ctx, Complex a, double gamma) {
  if (!(gamma > 0.0) || !std::isfinite(gamma)) throw ParameterError("gamma must be positive");
  require_point(a);
  const double ws = square_mass(ctx.omega, a);
  const double log_factor =
      (gamma * std::log1p(-std::abs(a)) - std::log(ws) - ctx.psi.log_value(1.0 / ws)) / ctx.p;
  return AnalyticFunction::kernel_power(a, gamma / ctx.p, std::exp(log_factor));
}

double test_function_norm_power(const CarlesonContext& ctx, Complex a, double gamma,
                                const QuadratureBudget& budget) {
  return quasinorm_power(test_function(ctx, a, gamma), DiscMeasure::area(ctx.omega), ctx.psi,
                         ctx.p, budget);
}

double embedding_lower_ratio(const CarlesonContext& ctx, Complex a, double gamma,
                             const QuadratureBudget& budget) {
  const double den = quasinorm_power(test_function(ctx, a, gamma), ctx.mu, ctx.phi, ctx.q, budget);
  if (!(den > 0.0)) throw DegenerateInputError("test function has zero norm against the measure");
  return characteristic(ctx, a) / den;
}

double embedding_ratio(const CarlesonContext& ctx, const AnalyticFunction& f,
                       const QuadratureBudget& budget) {
  const double src = quasinorm(f, DiscMeasure::area(ctx.omega), ctx.psi, ctx.p, budget);
  if (!(src > 0.0) || !std::isfinite(src)) {
    throw DegenerateInputError("source norm of " + f.description() + " is not finite and positive");
  }
  return quasinorm(f, ctx.mu, ctx.phi, ctx.q, budget) / src;
}

double embedding_norm_estimate(const CarlesonContext& ctx,
                               const std::vector<AnalyticFunction>& corpus,
                               const QuadratureBudget& budget) {
  if (corpus.empty()) throw ParameterError("empty corpus");
  std::vector<double> ratios(corpus.size());
  parallel_for(corpus.size(), [&](std::size_t i) { ratios[i] = embedding_ratio(ctx, corpus[i], budget); });
  return *std::max_element(ratios.begin(), ratios.end());
}

SweepReport sweep(const CarlesonContext& ctx, int max_level, const SweepOptions& options) {
  if (max_level < 8) throw ParameterError("sweep needs at least 8 levels");
  if (max_level > 40) throw ParameterError("sweep depth is limited to 40 levels");
  const double nan = std::nan("");
  SweepReport report;
  std::vector<std::size_t> level_start;
  for (int j = 0; j <= max_level; ++j) {
    level_start.push_back(report.entries.size());
    const double r = level_radius(j);
    for (double th : level_angles(j, options.angular_cap)) {
      SweepEntry e;
      e.level = j;
      e.radius = r;
      e.theta = th;
      e.fa_norm_p = nan;
      e.embed_lb_ratio = nan;
      report.entries.push_back(e);
    }
  }
  level_start.push_back(report.entries.size());

  auto fill = [&](SweepEntry& e) {
    try {
      const Complex a = std::polar(e.radius, e.theta);
      e.rho_square = characteristic(ctx, a);
      e.rho_disc = characteristic_disc(ctx, a);
    } catch (const Error&) {
      e.failed = true;
      e.rho_square = nan;
      e.rho_disc = nan;
    }
  };

  const bool radial = ctx.mu.rotation_invariant();
  const std::size_t levels = static_cast<std::size_t>(max_level) + 1;
  if (radial) {
    parallel_for(levels, [&](std::size_t j) {
      SweepEntry probe = report.entries[level_start[j]];
      probe.theta = 0.0;
      fill(probe);
      for (std::size_t k = level_start[j]; k < level_start[j + 1]; ++k) {
        auto& e = report.entries[k];
        e.rho_square = probe.rho_square;
        e.rho_disc = probe.rho_disc;
        e.failed = probe.failed;
      }
    });
  } else {
    parallel_for(report.entries.size(), [&](std::size_t k) { fill(report.entries[k]); });
  }

  if (options.test_functions) {
    const double gamma = options.gamma ? *options.gamma : sweep_gamma(ctx);
    parallel_for(levels, [&](std::size_t j) {
      std::size_t at = level_start[j];
      for (std::size_t k = level_start[j]; k < level_start[j + 1]; ++k) {
        const auto& e = report.entries[k];
        if (!e.failed && (report.entries[at].failed || e.rho_square > report.entries[at].rho_square)) {
          at = k;
        }
      }
      const Complex a = std::polar(report.entries[at].radius, radial ? 0.0 : report.entries[at].theta);
      double fa = nan;
      double lb = nan;
      try {
        fa = test_function_norm_power(ctx, a, gamma, options.budget);
        lb = embedding_lower_ratio(ctx, a, gamma, options.budget);
      } catch (const Error&) {
      }
      if (radial) {
        for (std::size_t k = level_start[j]; k < level_start[j + 1]; ++k) {
          report.entries[k].fa_norm_p = fa;
          report.entries[k].embed_lb_ratio = lb;
        }
      } else {
        report.entries[at].fa_norm_p = fa;
        report.entries[at].embed_lb_ratio = lb;
      }
    });
  }

  finalize_report(report, options.thresholds);
  return report;
}

}  // namespace bz
