#pragma once

#include <optional>
#include <vector>

#include "bz/analytic.hpp"
#include "bz/funcspace.hpp"
#include "bz/measures.hpp"
#include "bz/scale.hpp"
#include "bz/sweep_report.hpp"
#include "bz/weights.hpp"

namespace bz {

struct CarlesonContext {
  RadialWeight omega;
  ScaleFunction psi;
  ScaleFunction phi;
  DiscMeasure mu;
  double p = 2.0;
  double q = 2.0;
  double disc_radius = 0.7;

  // Checks 0 < p <= q, 0 < r < 1, a non-empty measure, omega in both doubling
  // classes and psi, phi in class L. Throws ParameterError or NotInClassError.
  static CarlesonContext make(RadialWeight omega, ScaleFunction psi, ScaleFunction phi,
                              DiscMeasure mu, double p, double q, double disc_radius = 0.7);
};

// mu(S(a)) Phi(1/omega(S(a))) / (omega(S(a)) Psi(1/omega(S(a))))^{q/p}
double characteristic(const CarlesonContext& ctx, Complex a);

// Same with mu and omega measured on Delta(a, r); the scale functions keep the
// argument 1/omega(S(a)).
double characteristic_disc(const CarlesonContext& ctx, Complex a);

// Exponent of omega(S(a)) against 1 - |a| plus the decay margin needed by Psi.
double default_gamma(const RadialWeight& omega, const ScaleFunction& psi);

// default_gamma, raised so that f_a also has finite L^q_{mu, Phi} norm.
double sweep_gamma(const CarlesonContext& ctx);

// ((1 - |a|)^gamma / (omega(S(a)) Psi(1/omega(S(a)))))^{1/p} (1 - conj(a) z)^{-gamma/p}
AnalyticFunction test_function(const CarlesonContext& ctx, Complex a, double gamma);

// ||f_a||^p in A^p_{omega, Psi}
double test_function_norm_power(const CarlesonContext& ctx, Complex a, double gamma,
                                const QuadratureBudget& budget = {});

// rho(a) / ||f_a||^q_{L^q_{mu, Phi}}
double embedding_lower_ratio(const CarlesonContext& ctx, Complex a, double gamma,
                             const QuadratureBudget& budget = {});

// ||f||_{L^q_{mu, Phi}} / ||f||_{A^p_{omega, Psi}}
double embedding_ratio(const CarlesonContext& ctx, const AnalyticFunction& f,
                       const QuadratureBudget& budget = {});

// Maximum of embedding_ratio over the corpus.
double embedding_norm_estimate(const CarlesonContext& ctx,
                               const std::vector<AnalyticFunction>& corpus,
                               const QuadratureBudget& budget = {});

struct SweepOptions {
  int angular_cap = 4096;
  // Fill fa_norm_p and embed_lb_ratio.
  bool test_functions = true;
  std::optional<double> gamma;
  VerdictThresholds thresholds;
  QuadratureBudget budget;
};

// Both characteristics at a = (1 - 2^{-j}) e^{i theta}, j = 0..max_level.
// Test-function columns are evaluated once per level: for rotation invariant
// measures the value is shared by the whole level, otherwise it is attached to
// the level maximum of rho_square and the other rows hold nan.
SweepReport sweep(const CarlesonContext& ctx, int max_level, const SweepOptions& options = {});

}  // namespace bz
