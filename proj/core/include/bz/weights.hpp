#pragma once

#include <complex>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "bz/scale.hpp"

namespace bz {

using Complex = std::complex<double>;

enum class WeightKind { power, log_inverse_square, tabulated, product_with_scale, shifted, custom };

const char* to_string(WeightKind k);

// Radial density on [0, 1). Internally everything is parametrized by the gap
// u = 1 - s so that the boundary behaviour is resolved in relative precision.
// Tail and first-moment tables over the dyadic panels [2^{-j-1}, 2^{-j}] are
// built at construction.
class RadialWeight {
 public:
  using GapDensity = std::function<double(double)>;

  // (1 - s)^alpha, alpha > -1.
  static RadialWeight power(double alpha);
  // 1 / ((1 - s) log^2(e / (1 - s))).
  static RadialWeight log_inverse_square();
  // (s_i, value_i) with s strictly increasing in [0, 1) and positive values.
  static RadialWeight tabulated(std::vector<double> s, std::vector<double> values);
  // Density given as a function of the gap u = 1 - s; breakpoints are gaps
  // where the density is not smooth.
  static RadialWeight custom(std::string name, GapDensity density_at_gap,
                             std::vector<double> breakpoints = {});

  WeightKind kind() const;
  std::string description() const;
  // alpha for the power kind.
  std::optional<double> power_exponent() const;

  double density(double s) const;
  double density_at_gap(double u) const;
  // Sorted gaps where the density is not smooth.
  const std::vector<double>& breakpoints() const;

  // int_r^1 omega(s) ds
  double tail(double r) const;
  double tail_at_gap(double u) const;
  // int_r^1 omega(s) s ds
  double weighted_tail(double r) const;
  double weighted_tail_at_gap(double u) const;

  // Identity of the underlying density (shared by copies).
  const void* identity() const { return impl_.get(); }

  struct Impl;
  explicit RadialWeight(std::shared_ptr<const Impl> impl);
  const Impl& impl() const { return *impl_; }
  const std::shared_ptr<const Impl>& shared_impl() const { return impl_; }

 private:
  std::shared_ptr<const Impl> impl_;
};

// omega(S(a)) with normalized area measure; S(0) is the whole disc.
double carleson_mass(const RadialWeight& omega, Complex a);

enum class Verdict { member, non_member, inconclusive };
const char* to_string(Verdict v);

struct DoublingThresholds {
  // Dhat: bounded when one extra level changes the max ratio by at most this factor.
  double stability_factor = 2.0;
  // Dhat: blow-up when each of the last four ratios exceeds this multiple of the previous one.
  double growth_factor = 2.0;
  // Dcheck: required min ratio is 1 + margin.
  double dcheck_margin = 0.05;
};

struct DoublingReport {
  std::string class_name;
  double constant_C = 0.0;
  double constant_K = 0.0;
  double exponent_beta = 0.0;
  double grid_max_ratio = 0.0;
  double grid_min_ratio = 0.0;
  Verdict verdict = Verdict::inconclusive;
  std::vector<double> ratios;
  std::string diagnostic;
};

// Ratios tail(r_j)/tail((1 + r_j)/2) on r_j = 1 - 2^{-j}, j = 0..grid_depth.
DoublingReport check_dhat(const RadialWeight& omega, int grid_depth = 16,
                          const DoublingThresholds& thresholds = {});

// min_j tail(r_j)/tail(1 - (1 - r_j)/K) for each K; the first K clearing the
// margin is reported.
DoublingReport check_dcheck(const RadialWeight& omega, int grid_depth = 16,
                            const std::vector<double>& k_candidates = {2.0, 4.0, 8.0, 16.0},
                            const DoublingThresholds& thresholds = {});

// Least squares slope of log tail(r_j) against log(1 - r_j) over the deepest
// half of j = 0..grid_depth.
double fit_tail_exponent(const RadialWeight& omega, int grid_depth);

struct KernelBand {
  double min = 0.0;
  double max = 0.0;
  std::vector<double> values;
};

// I(zeta) (1 - |zeta|)^lambda / tail(|zeta|) with
// I(zeta) = int omega(z) / |1 - conj(zeta) z|^{lambda + 1} dA(z).
KernelBand kernel_integral_check(const RadialWeight& omega, double lambda,
                                 const std::vector<Complex>& zeta_grid);

// W(s) = Psi(1 / (1 - s)) omega(s).
RadialWeight zygmund_transform(const RadialWeight& omega, const ScaleFunction& psi);

struct PsiTailBands {
  RatioBand lemma;      // L(r) / R(r)
  RatioBand afternote;  // R(r) / (Psi(1/(1-r)) tail(r))
};

PsiTailBands psi_tail_compare(const RadialWeight& omega, const ScaleFunction& psi,
                              const std::vector<double>& r_grid);

// omega(s) (1 - s)^x
RadialWeight power_shift(const RadialWeight& omega, double x);

}  // namespace bz
