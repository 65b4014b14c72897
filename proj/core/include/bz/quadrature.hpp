#pragma once

#include <cmath>
#include <vector>

namespace bz::quad {

// Gauss-Legendre rule on [-1, 1].
struct GaussRule {
  std::vector<double> nodes;
  std::vector<double> weights;

  int size() const { return static_cast<int>(nodes.size()); }
};

// Cached rule with n nodes; safe to call concurrently.
const GaussRule& gauss_legendre(int n);

template <class F>
double integrate(const GaussRule& rule, F&& f, double lo, double hi) {
  const double half = 0.5 * (hi - lo);
  const double mid = 0.5 * (hi + lo);
  double sum = 0.0;
  for (int i = 0; i < rule.size(); ++i) {
    sum += rule.weights[i] * f(mid + half * rule.nodes[i]);
  }
  return sum * half;
}

// Panel [2^{-j-1}, 2^{-j}] in the gap variable u = 1 - s.
inline double dyadic_gap_hi(int j) { return std::ldexp(1.0, -j); }
inline double dyadic_gap_lo(int j) { return std::ldexp(1.0, -j - 1); }

// Index j with u in [2^{-j-1}, 2^{-j}); u must be in (0, 1).
int dyadic_level(double u);

// Least squares slope and intercept of y against x.
struct LineFit {
  double slope = 0.0;
  double intercept = 0.0;
};
LineFit fit_line(const std::vector<double>& x, const std::vector<double>& y);

// Neumaier compensated sum.
class CompensatedSum {
 public:
  void add(double v) {
    const double t = sum_ + v;
    if (std::abs(sum_) >= std::abs(v)) {
      comp_ += (sum_ - t) + v;
    } else {
      comp_ += (v - t) + sum_;
    }
    sum_ = t;
  }
  double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

}  // namespace bz::quad
