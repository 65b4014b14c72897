#pragma once

#include "bz/analytic.hpp"
#include "bz/carleson.hpp"
#include "bz/funcspace.hpp"
#include "bz/scale.hpp"
#include "bz/sweep_report.hpp"
#include "bz/weights.hpp"

namespace bz {

struct OperatorContext {
  RadialWeight omega;
  RadialWeight nu;
  ScaleFunction psi;
  ScaleFunction phi;
  double p = 2.0;
  double q = 2.0;
  AnalyticFunction g;

  // Checks 0 < p <= q, omega and nu in both doubling classes, psi and phi in class L.
  static OperatorContext make(RadialWeight omega, RadialWeight nu, ScaleFunction psi,
                              ScaleFunction phi, double p, double q, AnalyticFunction g);
};

struct TgOptions {
  int degree_cap = 4096;
  // Kernel powers are replaced by their Taylor polynomial on this radius.
  double taylor_radius = 1.0 - 1.0 / 65536.0;
};

// int_0^z f g'. Throws TruncationError when the result degree exceeds the cap.
AnalyticFunction apply_tg(const AnalyticFunction& g, const AnalyticFunction& f,
                          const TgOptions& options = {});

// |g'(a)| (1 - |a|) (Phi(1/omega(S(a))) nu(S(a)))^{1/q} / (Psi(1/omega(S(a))) omega(S(a)))^{1/p}
double tg_characteristic(const OperatorContext& ctx, Complex a);

// Same with nu and omega measured on Delta(a, r).
double tg_characteristic_disc(const OperatorContext& ctx, Complex a, double r);

struct TgSweepOptions {
  int angular_cap = 4096;
  double disc_radius = 0.7;
  VerdictThresholds thresholds;
};

SweepReport tg_sweep(const OperatorContext& ctx, int max_level, const TgSweepOptions& options = {});

// ||T_g f||^q in A^q_{nu, Phi} divided by
// int |f g'|^q (1 - |z|)^{q - 1} Phi(1/(1 - |z|)) nu_hat(|z|) dA(z).
double littlewood_paley_ratio(const OperatorContext& ctx, const AnalyticFunction& f,
                              const QuadratureBudget& budget = {});

}  // namespace bz
