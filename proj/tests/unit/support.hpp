#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <functional>
#include <numbers>
#include <vector>

namespace bz::test {

// SplitMix64; fixed seeds keep every property test reproducible.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  int integer(int lo, int hi) { return lo + static_cast<int>(next() % static_cast<std::uint64_t>(hi - lo + 1)); }
  std::complex<double> in_disc(double max_radius) {
    const double r = max_radius * std::sqrt(uniform());
    return std::polar(r, uniform(0.0, 2.0 * std::numbers::pi));
  }

 private:
  std::uint64_t state_;
};

// Composite Gauss-Legendre with 20 nodes per panel; independent of the library rules.
inline double gl_integrate(const std::function<double(double)>& f, double lo, double hi, int panels) {
  static const double x[10] = {0.0765265211334973, 0.2277858511416451, 0.3737060887154195,
                               0.5108670019508271, 0.6360536807265150, 0.7463319064601508,
                               0.8391169718222188, 0.9122344282513258, 0.9639719272779138,
                               0.9931285991850949};
  static const double w[10] = {0.1527533871307258, 0.1491729864726037, 0.1420961093183819,
                               0.1316886384491765, 0.1181945319615182, 0.1019301198172403,
                               0.0832767415767047, 0.0626720483341094, 0.0406014298003862,
                               0.0176140071391533};
  double total = 0.0;
  const double h = (hi - lo) / panels;
  for (int k = 0; k < panels; ++k) {
    const double a = lo + k * h;
    const double mid = a + 0.5 * h;
    double acc = 0.0;
    for (int i = 0; i < 10; ++i) acc += w[i] * (f(mid - 0.5 * h * x[i]) + f(mid + 0.5 * h * x[i]));
    total += 0.5 * h * acc;
  }
  return total;
}

// Same on geometric panels toward the right end point: [lo, hi) split at hi - (hi - lo) 2^{-k}.
inline double gl_integrate_graded(const std::function<double(double)>& f, double lo, double hi,
                                  int levels, int panels) {
  double total = 0.0;
  double a = lo;
  for (int k = 1; k <= levels; ++k) {
    const double b = hi - (hi - lo) * std::ldexp(1.0, -k);
    total += gl_integrate(f, a, b, panels);
    a = b;
  }
  return total + gl_integrate(f, a, hi, panels);
}

// Same on geometric panels toward 0: [0, hi) split at hi 2^{-k}, remainder below 2^{-levels} hi dropped.
inline double gl_integrate_graded_at_zero(const std::function<double(double)>& f, double hi, int levels,
                                          int panels) {
  double total = 0.0;
  for (int k = 0; k < levels; ++k) total += gl_integrate(f, std::ldexp(hi, -k - 1), std::ldexp(hi, -k), panels);
  return total;
}

inline double rel_err(double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

}  // namespace bz::test
