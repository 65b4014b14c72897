#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace bz {

enum class Monotonicity { increasing, decreasing, constant };
enum class ScaleKind { constant, log_power, tabulated, custom };

const char* to_string(Monotonicity m);
const char* to_string(ScaleKind k);

// Positive function on [0, inf), stored as factor * shape with the shape
// evaluated in the log domain: log_value_at_log(t) = log Psi(e^t).
// t = -inf stands for x = 0.
class ScaleFunction {
 public:
  using LogShape = std::function<double(double)>;

  static ScaleFunction constant(double c);
  // (log(e + x))^beta
  static ScaleFunction log_power(double beta);
  // Nodes x_i > 0 strictly increasing, values > 0; log-linear between nodes,
  // flat below the first node, log-power continuation above the last.
  static ScaleFunction tabulated(std::vector<double> x, std::vector<double> values);
  static ScaleFunction custom(std::string name, LogShape log_shape,
                              Monotonicity declared);

  double operator()(double x) const;
  double log_value(double x) const;
  double log_value_at_log(double t) const;
  // Same without the constant factor.
  double log_shape_at_log(double t) const;

  double factor() const;
  ScaleFunction scaled(double lambda) const;

  ScaleKind kind() const;
  Monotonicity direction() const;
  // Exponent of a log-power (0 for constants); empty for other kinds.
  std::optional<double> log_power_exponent() const;
  bool is_unit_constant() const;
  std::string description() const;

 private:
  struct Impl;
  ScaleFunction(std::shared_ptr<const Impl> impl, double log_factor);

  std::shared_ptr<const Impl> impl_;
  double log_factor_ = 0.0;
};

// log(log(e + e^t)), accurate for large t and equal to 0 at t = -inf.
double log_log_e_plus(double t);

struct ClassThresholds {
  double doubling_lo = 1e-6;
  double doubling_hi = 1e6;
  double monotone_threshold = 1e6;
  // Both one-sided constants at most this: classified constant.
  double constant_threshold = 2.0;
};

struct ScaleGrid {
  int tower_height = 32;
  int fill_points = 512;
  double fill_lo = 1e-6;
  double fill_hi = 1e12;
};

// Sorted log-domain evaluation grid: tower t_k = 2^k log 2, k <= height, the
// log-uniform fill, x = 0 (t = -inf) and any extra points.
std::vector<double> scale_log_grid(const ScaleGrid& grid,
                                   std::span<const double> extra_log_points = {});

struct RatioBand {
  double min = 1.0;
  double max = 1.0;
  double spread() const { return max / min; }
};

struct SquareDoublingReport {
  RatioBand band;
  bool member = false;
  int levels_used = 0;
  std::string diagnostic;
};

// Psi(x)/Psi(x^2) on the tower x_k = 2^{2^k} and a fill grid on [0, 4].
SquareDoublingReport check_square_doubling(const ScaleFunction& psi,
                                           int tower_height = 32,
                                           const ClassThresholds& thresholds = {});

struct MonotoneReport {
  Monotonicity direction = Monotonicity::constant;
  double constant = 1.0;
  double constant_up = 1.0;
  double constant_down = 1.0;
};

// Throws NotInClassError when neither one-sided constant is acceptable.
MonotoneReport check_essential_monotone(const ScaleFunction& psi,
                                        const ClassThresholds& thresholds = {},
                                        std::span<const double> extra_log_points = {},
                                        const ScaleGrid& grid = {});

struct GrowthEnvelope {
  double c1 = 1.0;
  double c2 = 0.0;
  double C1 = 1.0;
  double C2 = 0.0;
};

// c1 (log(e+x))^c2 <= Psi(x) <= C1 (log(e+x))^C2 on the evaluation grid.
GrowthEnvelope growth_envelope(const ScaleFunction& psi, const ScaleGrid& grid = {});

struct ThetaConstants {
  double constant_up = 1.0;
  double constant_down = 1.0;
};

ThetaConstants theta_monotone_check(const ScaleFunction& psi, double p, double beta,
                                    const ScaleGrid& grid = {});

struct RatioProperties {
  RatioBand comparable_args;  // Psi(x)/Psi(y), x/y in [1/2, 2]
  RatioBand power_args;       // Psi(x)/Psi(x^p)
  RatioBand quotient_args;    // Psi(x/Phi(x))/Psi(x)
};

RatioProperties ratio_properties_check(const ScaleFunction& psi, const ScaleFunction& phi,
                                       double p, const ScaleGrid& grid = {});

struct ClassReport {
  SquareDoublingReport doubling;
  MonotoneReport monotone;
};

// Both class checks; throws NotInClassError on failure.
ClassReport require_class_l(const ScaleFunction& psi, const ClassThresholds& thresholds = {});

}  // namespace bz
