#pragma once

#include <functional>
#include <limits>
#include <vector>

#include "bz/analytic.hpp"
#include "bz/measures.hpp"
#include "bz/scale.hpp"
#include "bz/weights.hpp"

namespace bz {

struct QuadratureBudget {
  int radial_depth = 14;
  int gauss_nodes = 16;
  double angular_density = 1.0;
  // Extra dyadic levels below the narrowest angular feature.
  int extra_depth = 10;

  QuadratureBudget doubled() const;
};

// Description of an integrand for the disc quadrature.
struct IntegrandShape {
  std::vector<AngularFeature> features;
  // Angular frequency content on the circle of radius s.
  std::function<double(double)> bandwidth;
};

IntegrandShape shape_of(const AnalyticFunction& f, double p);

// int exp(log_integrand(z)) dmu(z). Area parts use dyadic radial panels in
// 1 - |z| and graded angular panels around the features; atoms are summed.
double integrate_exp(const DiscMeasure& mu, const std::function<double(Complex)>& log_integrand,
                     const IntegrandShape& shape, const QuadratureBudget& budget = {});

inline constexpr double kInfinityExponent = std::numeric_limits<double>::infinity();

// M_p(r, f); p = kInfinityExponent gives the maximum modulus.
double integral_mean(const AnalyticFunction& f, double r, double p);

// int |f|^p Psi(|f|) dmu
double quasinorm_power(const AnalyticFunction& f, const DiscMeasure& mu, const ScaleFunction& psi,
                       double p, const QuadratureBudget& budget = {});

// (int |f|^p Psi(|f|) dmu)^{1/p}
double quasinorm(const AnalyticFunction& f, const DiscMeasure& mu, const ScaleFunction& psi,
                 double p, const QuadratureBudget& budget = {});

// quasinorm with the budget doubled once; throws QuadratureError carrying both
// estimates when they differ by more than rel_tol.
double quasinorm_verified(const AnalyticFunction& f, const DiscMeasure& mu,
                          const ScaleFunction& psi, double p, const QuadratureBudget& budget = {},
                          double rel_tol = 1e-3);

AnalyticFunction add(const AnalyticFunction& f, const AnalyticFunction& g);
AnalyticFunction scale(Complex c, const AnalyticFunction& f);

// ||f + g|| / (||f|| + ||g||)
double quasi_triangle_check(const AnalyticFunction& f, const AnalyticFunction& g,
                            const DiscMeasure& mu, const ScaleFunction& psi, double p,
                            const QuadratureBudget& budget = {});

// max over the grid of |f(z)|^p omega(S(z)) Psi(1 / omega(S(z))).
double growth_check(const AnalyticFunction& f, const RadialWeight& omega, const ScaleFunction& psi,
                    double p, const std::vector<Complex>& z_grid);

}  // namespace bz
