#include "bz/analytic.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "bz/errors.hpp"
#include "bz/quadrature.hpp"

namespace bz {

namespace {

constexpr long kMaterializeCap = 1L << 20;

Complex power_n(Complex z, double n) {
  if (z == Complex(0.0)) return Complex(0.0);
  return std::exp(n * std::log(z));
}

}  // namespace

Polynomial::Polynomial(std::vector<Complex> coeffs) : coeffs_(std::move(coeffs)) {
  if (coeffs_.empty()) coeffs_.push_back(Complex(0.0));
}

int Polynomial::degree() const {
  for (std::size_t i = coeffs_.size(); i-- > 0;) {
    if (coeffs_[i] != Complex(0.0)) return static_cast<int>(i);
  }
  return 0;
}

bool Polynomial::is_zero() const {
  return std::all_of(coeffs_.begin(), coeffs_.end(), [](Complex c) { return c == Complex(0.0); });
}

Complex Polynomial::operator()(Complex z) const {
  Complex acc(0.0);
  for (std::size_t i = coeffs_.size(); i-- > 0;) acc = acc * z + coeffs_[i];
  return acc;
}

Complex Polynomial::derivative_at(Complex z) const {
  Complex acc(0.0);
  for (std::size_t i = coeffs_.size(); i-- > 1;) acc = acc * z + static_cast<double>(i) * coeffs_[i];
  return acc;
}

Polynomial Polynomial::derivative() const {
  if (coeffs_.size() <= 1) return Polynomial();
  std::vector<Complex> d(coeffs_.size() - 1);
  for (std::size_t i = 1; i < coeffs_.size(); ++i) d[i - 1] = static_cast<double>(i) * coeffs_[i];
  return Polynomial(std::move(d));
}

Polynomial Polynomial::antiderivative() const {
  std::vector<Complex> a(coeffs_.size() + 1, Complex(0.0));
  for (std::size_t i = 0; i < coeffs_.size(); ++i) a[i + 1] = coeffs_[i] / static_cast<double>(i + 1);
  return Polynomial(std::move(a));
}

Polynomial operator+(const Polynomial& a, const Polynomial& b) {
  std::vector<Complex> c(std::max(a.coeffs_.size(), b.coeffs_.size()), Complex(0.0));
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i) c[i] += a.coeffs_[i];
  for (std::size_t i = 0; i < b.coeffs_.size(); ++i) c[i] += b.coeffs_[i];
  return Polynomial(std::move(c));
}

Polynomial operator*(Complex s, const Polynomial& p) {
  std::vector<Complex> c = p.coeffs_;
  for (auto& v : c) v *= s;
  return Polynomial(std::move(c));
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  const std::size_t na = a.coeffs_.size();
  const std::size_t nb = b.coeffs_.size();
  std::vector<Complex> c(na + nb - 1, Complex(0.0));
  if (na + nb - 2 <= 512) {
    for (std::size_t i = 0; i < na; ++i) {
      for (std::size_t j = 0; j < nb; ++j) c[i + j] += a.coeffs_[i] * b.coeffs_[j];
    }
    return Polynomial(std::move(c));
  }
  for (std::size_t k = 0; k < c.size(); ++k) {
    quad::CompensatedSum re;
    quad::CompensatedSum im;
    const std::size_t lo = k >= nb ? k - nb + 1 : 0;
    const std::size_t hi = std::min(k, na - 1);
    for (std::size_t i = lo; i <= hi; ++i) {
      const Complex t = a.coeffs_[i] * b.coeffs_[k - i];
      re.add(t.real());
      im.add(t.imag());
    }
    c[k] = Complex(re.value(), im.value());
  }
  return Polynomial(std::move(c));
}

const char* to_string(SymbolKind k) {
  switch (k) {
    case SymbolKind::logsym:
      return "logsym";
    case SymbolKind::cauchy:
      return "cauchy";
    case SymbolKind::lacunary:
      return "lacunary";
  }
  return "unknown";
}

AnalyticFunction AnalyticFunction::polynomial(std::vector<Complex> coeffs) {
  return AnalyticFunction(Rep(Polynomial(std::move(coeffs))));
}

AnalyticFunction AnalyticFunction::polynomial(Polynomial p) { return AnalyticFunction(Rep(std::move(p))); }

AnalyticFunction AnalyticFunction::kernel_power(Complex base, double exponent, double factor) {
  if (!(std::abs(base) < 1.0)) throw ParameterError("kernel power base must lie in the unit disc");
  if (!(exponent > 0.0) || !std::isfinite(exponent)) {
    throw ParameterError("kernel power exponent must be positive");
  }
  if (!(factor >= 0.0) || !std::isfinite(factor)) {
    throw ParameterError("kernel power factor must be non-negative");
  }
  return AnalyticFunction(Rep(KernelPower{base, exponent, factor}));
}

AnalyticFunction AnalyticFunction::log_symbol(long truncation) {
  if (truncation < 1) throw ParameterError("logsym truncation must be at least 1");
  return AnalyticFunction(Rep(NamedSymbol{SymbolKind::logsym, truncation, 0}));
}

AnalyticFunction AnalyticFunction::cauchy_symbol(long truncation) {
  if (truncation < 1) throw ParameterError("cauchy truncation must be at least 1");
  return AnalyticFunction(Rep(NamedSymbol{SymbolKind::cauchy, truncation, 0}));
}

AnalyticFunction AnalyticFunction::lacunary_symbol(int k) {
  if (k < 0 || k > 20) throw ParameterError("lacunary K must be in [0, 20]");
  return AnalyticFunction(Rep(NamedSymbol{SymbolKind::lacunary, 1L << k, k}));
}

AnalyticFunction AnalyticFunction::scaled_sum(std::vector<Term> terms) {
  if (terms.empty()) return AnalyticFunction();
  return AnalyticFunction(Rep(ScaledSum{std::make_shared<const std::vector<Term>>(std::move(terms))}));
}

namespace {

Complex symbol_value(const AnalyticFunction::NamedSymbol& s, Complex z) {
  const double n = static_cast<double>(s.truncation);
  switch (s.kind) {
    case SymbolKind::logsym: {
      const double m = std::abs(z);
      const double bound = std::pow(m, n + 1.0) / ((n + 1.0) * (1.0 - m));
      if (m < 1.0 && bound < 1e-15) return -std::log(1.0 - z);
      Complex acc(0.0);
      for (long k = s.truncation; k >= 1; --k) acc = acc * z + 1.0 / static_cast<double>(k);
      return acc * z;
    }
    case SymbolKind::cauchy: {
      if (std::abs(1.0 - z) < 1e-6) {
        Complex acc(0.0);
        for (long k = 0; k <= s.truncation; ++k) acc = acc * z + 1.0;
        return acc;
      }
      return (1.0 - power_n(z, n + 1.0)) / (1.0 - z);
    }
    case SymbolKind::lacunary: {
      Complex acc(0.0);
      Complex p = z;
      for (int k = 0; k <= s.lacunary_k; ++k) {
        acc += p;
        p *= p;
      }
      return acc;
    }
  }
  return Complex(0.0);
}

Complex symbol_derivative(const AnalyticFunction::NamedSymbol& s, Complex z) {
  const double n = static_cast<double>(s.truncation);
  switch (s.kind) {
    case SymbolKind::logsym: {
      if (std::abs(1.0 - z) < 1e-6) {
        Complex acc(0.0);
        for (long k = 0; k < s.truncation; ++k) acc = acc * z + 1.0;
        return acc;
      }
      return (1.0 - power_n(z, n)) / (1.0 - z);
    }
    case SymbolKind::cauchy: {
      if (std::abs(1.0 - z) < 1e-6) {
        Complex acc(0.0);
        for (long k = s.truncation; k >= 1; --k) acc = acc * z + static_cast<double>(k);
        return acc;
      }
      const Complex w = 1.0 - z;
      const Complex zn = power_n(z, n);
      return ((1.0 - zn * z) - (n + 1.0) * zn * w) / (w * w);
    }
    case SymbolKind::lacunary: {
      Complex acc(0.0);
      Complex q(1.0);
      double mult = 1.0;
      for (int k = 0; k <= s.lacunary_k; ++k) {
        acc += mult * q;
        q = q * q * z;
        mult *= 2.0;
      }
      return acc;
    }
  }
  return Complex(0.0);
}

}  // namespace

Complex AnalyticFunction::operator()(Complex z) const {
  return std::visit(
      [&](const auto& r) -> Complex {
        using T = std::decay_t<decltype(r)>;
        if constexpr (std::is_same_v<T, Polynomial>) {
          return r(z);
        } else if constexpr (std::is_same_v<T, KernelPower>) {
          return r.factor * std::exp(-r.exponent * std::log(1.0 - std::conj(r.base) * z));
        } else if constexpr (std::is_same_v<T, NamedSymbol>) {
          return symbol_value(r, z);
        } else {
          Complex acc(0.0);
          for (const auto& [c, f] : *r.terms) acc += c * f(z);
          return acc;
        }
      },
      rep_);
}

Complex AnalyticFunction::derivative_at(Complex z) const {
  return std::visit(
      [&](const auto& r) -> Complex {
        using T = std::decay_t<decltype(r)>;
        if constexpr (std::is_same_v<T, Polynomial>) {
          return r.derivative_at(z);
        } else if constexpr (std::is_same_v<T, KernelPower>) {
          const Complex ab = std::conj(r.base);
          return r.factor * r.exponent * ab *
                 std::exp(-(r.exponent + 1.0) * std::log(1.0 - ab * z));
        } else if constexpr (std::is_same_v<T, NamedSymbol>) {
          return symbol_derivative(r, z);
        } else {
          Complex acc(0.0);
          for (const auto& [c, f] : *r.terms) acc += c * f.derivative_at(z);
          return acc;
        }
      },
      rep_);
}

double AnalyticFunction::log_abs(Complex z) const {
  if (const auto* k = std::get_if<KernelPower>(&rep_)) {
    if (k->factor == 0.0) return -HUGE_VAL;
    return std::log(k->factor) - k->exponent * std::log(std::abs(1.0 - std::conj(k->base) * z));
  }
  const double m = std::abs((*this)(z));
  return m == 0.0 ? -HUGE_VAL : std::log(m);
}

bool AnalyticFunction::is_polynomial() const { return std::holds_alternative<Polynomial>(rep_); }

bool AnalyticFunction::is_kernel_power() const { return std::holds_alternative<KernelPower>(rep_); }

const AnalyticFunction::KernelPower* AnalyticFunction::kernel() const {
  return std::get_if<KernelPower>(&rep_);
}

const AnalyticFunction::NamedSymbol* AnalyticFunction::symbol() const {
  return std::get_if<NamedSymbol>(&rep_);
}

Polynomial AnalyticFunction::to_polynomial() const {
  return std::visit(
      [&](const auto& r) -> Polynomial {
        using T = std::decay_t<decltype(r)>;
        if constexpr (std::is_same_v<T, Polynomial>) {
          return r;
        } else if constexpr (std::is_same_v<T, KernelPower>) {
          throw ParameterError("kernel powers have no exact coefficients; use taylor_polynomial");
        } else if constexpr (std::is_same_v<T, NamedSymbol>) {
          if (r.truncation > kMaterializeCap) {
            throw TruncationError("symbol truncation too large to materialize", 0.0);
          }
          std::vector<Complex> c(static_cast<std::size_t>(r.truncation) + 1, Complex(0.0));
          switch (r.kind) {
            case SymbolKind::logsym:
              for (long n = 1; n <= r.truncation; ++n) c[n] = 1.0 / static_cast<double>(n);
              break;
            case SymbolKind::cauchy:
              for (auto& v : c) v = 1.0;
              break;
            case SymbolKind::lacunary:
              for (int k = 0; k <= r.lacunary_k; ++k) c[std::size_t{1} << k] = 1.0;
              break;
          }
          return Polynomial(std::move(c));
        } else {
          Polynomial acc;
          for (const auto& [c, f] : *r.terms) acc = acc + c * f.to_polynomial();
          return acc;
        }
      },
      rep_);
}

Polynomial AnalyticFunction::taylor_polynomial(double radius, double tol, int max_degree) const {
  if (!(radius >= 0.0 && radius < 1.0)) throw ParameterError("Taylor radius must lie in [0, 1)");
  if (const auto* k = kernel()) {
    const Complex ab = std::conj(k->base);
    const double q = std::abs(ab) * radius;
    std::vector<Complex> c;
    Complex cn(k->factor);
    double rn = 1.0;
    for (int n = 0;; ++n) {
      const double ratio_n = (k->exponent + n) / (n + 1.0) * q;
      const double r_star = std::max(ratio_n, q);
      if (r_star < 1.0) {
        const double bound = std::abs(cn) * rn / (1.0 - r_star);
        if (bound < tol) break;
      }
      if (n >= max_degree) {
        const double bound = r_star < 1.0 ? std::abs(cn) * rn / (1.0 - r_star) : HUGE_VAL;
        throw TruncationError("kernel power Taylor series needs degree above cap", bound);
      }
      c.push_back(cn);
      cn *= (k->exponent + n) / (n + 1.0) * ab;
      rn *= radius;
    }
    return Polynomial(std::move(c));
  }
  if (const auto* s = std::get_if<ScaledSum>(&rep_)) {
    Polynomial acc;
    const double n = static_cast<double>(s->terms->size());
    for (const auto& [c, f] : *s->terms) {
      const double w = std::max(std::abs(c), 1e-300);
      acc = acc + c * f.taylor_polynomial(radius, tol / (w * n), max_degree);
    }
    return acc;
  }
  Polynomial p = to_polynomial();
  if (p.degree() > max_degree) {
    double bound = 0.0;
    const auto& c = p.coefficients();
    for (std::size_t n = static_cast<std::size_t>(max_degree) + 1; n < c.size(); ++n) {
      bound += std::abs(c[n]) * std::pow(radius, static_cast<double>(n));
    }
    throw TruncationError("polynomial degree " + std::to_string(p.degree()) + " exceeds cap", bound);
  }
  return p;
}

std::vector<AngularFeature> AnalyticFunction::features() const {
  std::vector<AngularFeature> out;
  if (const auto* k = kernel()) {
    const double m = std::abs(k->base);
    if (m > 0.0) out.push_back({std::arg(k->base), 1.0 - m});
  } else if (const auto* s = symbol()) {
    if (s->kind != SymbolKind::lacunary) {
      out.push_back({0.0, 1.0 / static_cast<double>(s->truncation)});
    }
  } else if (const auto* sum = std::get_if<ScaledSum>(&rep_)) {
    for (const auto& [c, f] : *sum->terms) {
      const auto sub = f.features();
      out.insert(out.end(), sub.begin(), sub.end());
    }
  }
  return out;
}

double AnalyticFunction::bandwidth(double s) const {
  const double cap = s < 1.0 ? 40.0 / (1.0 - s) : HUGE_VAL;
  return std::visit(
      [&](const auto& r) -> double {
        using T = std::decay_t<decltype(r)>;
        if constexpr (std::is_same_v<T, Polynomial>) {
          return r.degree();
        } else if constexpr (std::is_same_v<T, KernelPower>) {
          return 0.0;
        } else if constexpr (std::is_same_v<T, NamedSymbol>) {
          return std::min(static_cast<double>(r.truncation), cap);
        } else {
          double b = 0.0;
          for (const auto& [c, f] : *r.terms) b = std::max(b, f.bandwidth(s));
          return b;
        }
      },
      rep_);
}

std::string AnalyticFunction::description() const {
  std::ostringstream os;
  os.precision(10);
  std::visit(
      [&](const auto& r) {
        using T = std::decay_t<decltype(r)>;
        if constexpr (std::is_same_v<T, Polynomial>) {
          os << "poly degree=" << r.degree();
        } else if constexpr (std::is_same_v<T, KernelPower>) {
          os << "kernel a=" << r.base.real() << "," << r.base.imag() << " exponent=" << r.exponent
             << " factor=" << r.factor;
        } else if constexpr (std::is_same_v<T, NamedSymbol>) {
          os << to_string(r.kind);
          if (r.kind == SymbolKind::lacunary) {
            os << " K=" << r.lacunary_k;
          } else {
            os << " N=" << r.truncation;
          }
        } else {
          os << "sum of " << r.terms->size() << " terms";
        }
      },
      rep_);
  return os.str();
}

long symbol_truncation(SymbolKind kind, int level, double tol) {
  if (kind == SymbolKind::lacunary) throw ParameterError("lacunary symbols are not truncated");
  if (level < 0) throw ParameterError("truncation level must be non-negative");
  const double rho = 1.0 - std::ldexp(1.0, -level - 1);
  auto tail = [&](double n) {
    if (kind == SymbolKind::logsym) return std::pow(rho, n) / (1.0 - rho);
    const double m = n + 1.0;
    return std::pow(rho, m - 1.0) * (m / (1.0 - rho) + rho / ((1.0 - rho) * (1.0 - rho)));
  };
  long hi = 1;
  while (tail(static_cast<double>(hi)) >= tol) {
    hi *= 2;
    if (hi > (1L << 40)) throw TruncationError("symbol truncation does not converge", tail(hi));
  }
  long lo = hi / 2;
  while (hi - lo > 1) {
    const long mid = lo + (hi - lo) / 2;
    if (tail(static_cast<double>(mid)) < tol) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return hi;
}

}  // namespace bz
