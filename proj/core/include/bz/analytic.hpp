#pragma once

#include <complex>
#include <memory>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace bz {

using Complex = std::complex<double>;

class Polynomial {
 public:
  Polynomial() : coeffs_{Complex(0.0)} {}
  explicit Polynomial(std::vector<Complex> coeffs);

  const std::vector<Complex>& coefficients() const { return coeffs_; }
  int degree() const;
  bool is_zero() const;

  Complex operator()(Complex z) const;
  Complex derivative_at(Complex z) const;

  Polynomial derivative() const;
  // Antiderivative vanishing at 0.
  Polynomial antiderivative() const;

  friend Polynomial operator+(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator*(Complex c, const Polynomial& p);
  // Cauchy product; compensated summation once the result degree exceeds 512.
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);

 private:
  std::vector<Complex> coeffs_;
};

enum class SymbolKind { logsym, cauchy, lacunary };

const char* to_string(SymbolKind k);

// Angular location and width of a peak of |f| near the boundary.
struct AngularFeature {
  double angle = 0.0;
  double width = 1.0;
};

class AnalyticFunction {
 public:
  struct KernelPower {
    Complex base;
    double exponent = 1.0;
    double factor = 1.0;
  };
  // logsym: sum_{n=1}^N z^n/n; cauchy: sum_{n=0}^N z^n; lacunary: sum_{k=0}^K z^{2^k}.
  struct NamedSymbol {
    SymbolKind kind = SymbolKind::logsym;
    long truncation = 0;
    int lacunary_k = 0;
  };
  using Term = std::pair<Complex, AnalyticFunction>;
  struct ScaledSum {
    std::shared_ptr<const std::vector<Term>> terms;
  };

  AnalyticFunction() : rep_(Polynomial()) {}

  static AnalyticFunction polynomial(std::vector<Complex> coeffs);
  static AnalyticFunction polynomial(Polynomial p);
  // factor * (1 - conj(base) z)^{-exponent}
  static AnalyticFunction kernel_power(Complex base, double exponent, double factor);
  static AnalyticFunction log_symbol(long truncation);
  static AnalyticFunction cauchy_symbol(long truncation);
  static AnalyticFunction lacunary_symbol(int k);
  static AnalyticFunction scaled_sum(std::vector<Term> terms);

  Complex operator()(Complex z) const;
  Complex derivative_at(Complex z) const;
  double log_abs(Complex z) const;

  bool is_polynomial() const;
  bool is_kernel_power() const;
  const KernelPower* kernel() const;
  const NamedSymbol* symbol() const;

  // Exact coefficients for polynomials, named symbols and sums of those.
  Polynomial to_polynomial() const;
  // Taylor polynomial with tail below tol on |z| <= radius; kernel powers and
  // sums of them allowed. Throws TruncationError past max_degree.
  Polynomial taylor_polynomial(double radius, double tol = 1e-9, int max_degree = 4096) const;

  // Peaks of |f| that need angular refinement.
  std::vector<AngularFeature> features() const;
  // Angular frequency content on the circle of radius s.
  double bandwidth(double s) const;
  std::string description() const;

 private:
  using Rep = std::variant<Polynomial, KernelPower, NamedSymbol, ScaledSum>;
  explicit AnalyticFunction(Rep rep) : rep_(std::move(rep)) {}

  Rep rep_;
};

// Truncation order N for logsym or cauchy so that the tail of g' is below tol
// on |z| <= 1 - 2^{-level-1}.
long symbol_truncation(SymbolKind kind, int level, double tol = 1e-9);

}  // namespace bz
