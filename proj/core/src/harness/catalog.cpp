#include "bz/harness/catalog.hpp"

#include <sstream>

#include "bz/sweep_report.hpp"

namespace bz::harness {

namespace {

std::string power_family() {
  std::ostringstream os;
  os << "# Power weights against power measures; bounded iff t + 2 >= (q/p)(alpha + 2).\n";
  for (double alpha : {-0.5, 0.0, 1.0}) {
    for (double t : {-0.5, 0.0, 1.0, 2.0}) {
      for (const auto& [p, q] : {std::pair{2.0, 2.0}, std::pair{1.0, 2.0}}) {
        const double exponent = t + 2.0 - q / p * (alpha + 2.0);
        os << "\n[scenario.power-a" << format_number(alpha) << "-t" << format_number(t) << "-p"
           << format_number(p) << "q" << format_number(q) << "]\n"
           << "weight = power alpha=" << format_number(alpha) << "\n"
           << "scale = const c=1\n"
           << "measure.component = area weight=power alpha=" << format_number(t) << "\n"
           << "p = " << format_number(p) << "\nq = " << format_number(q) << "\nJ = 14\n"
           << "expect.bounded = " << (exponent >= 0.0 ? "true" : "false") << "\n"
           << "expect.vanishing = " << (exponent > 0.0 ? "true" : "false") << "\n"
           << "expect.slope = " << format_number(exponent) << " tol = 0.05\n";
        if (exponent >= 0.0) os << "expect.lb_band = 20\n";
      }
    }
  }
  return os.str();
}

std::string zygmund_boundary() {
  std::ostringstream os;
  os << "# Critical exponents t = alpha with logarithmic scales; bounded iff gamma <= beta.\n";
  for (double beta : {-1.0, 0.0, 1.0}) {
    for (double gamma : {-1.0, 0.0, 1.0}) {
      os << "\n[scenario.zygmund-b" << format_number(beta) << "-g" << format_number(gamma) << "]\n"
         << "weight = power alpha=1\n"
         << "scale = logpow beta=" << format_number(beta) << "\n"
         << "target_scale = logpow beta=" << format_number(gamma) << "\n"
         << "measure.component = area weight=power alpha=1\n"
         << "p = 2\nq = 2\nJ = 14\ntest_functions = false\n"
         << "expect.bounded = " << (gamma <= beta ? "true" : "false") << "\n";
    }
  }
  return os.str();
}

const char* const kIdentity = R"(# mu = omega dA with equal scales and exponents: rho is identically 1.
[scenario.identity]
weight = power alpha=1
scale = logpow beta=1
measure.component = area weight=power alpha=1
p = 2
q = 2
J = 12
expect.bounded = true
expect.vanishing = false
expect.sup = 1 tol = 1e-3
)";

const char* const kAtom = R"(# Point masses: only the squares and discs holding the atom see it.
[scenario.atom-origin]
weight = power alpha=0
scale = const c=1
measure.component = atom re=0 im=0 mass=2
p = 2
q = 2
J = 10
expect.bounded = true
expect.vanishing = true
expect.sup = 2 tol = 1e-9

[scenario.atom-interior]
weight = power alpha=0
scale = const c=1
measure.component = atom re=0.4 im=0 mass=2
p = 2
q = 2
J = 10
expect.bounded = true
expect.vanishing = true
)";

const char* const kSector = R"(# Area measure restricted to a quadrant behaves like the full measure near its arc.
[scenario.sector-quadrant]
weight = power alpha=0
scale = const c=1
measure.component = area weight=power alpha=1 sector=0,1.5707963267948966
p = 2
q = 2
J = 12
expect.bounded = true
expect.vanishing = true
expect.slope = 1 tol = 0.05

[scenario.sector-mixed]
weight = power alpha=0
scale = const c=1
measure.component = area weight=power alpha=0 sector=3.141592653589793,4.71238898038469
measure.component = area weight=power alpha=2
p = 2
q = 2
J = 12
expect.bounded = true
expect.vanishing = false
)";

const char* const kBloch = R"(# T_g with equal weights, exponents and constant scales: the Bloch and little Bloch tests.
[scenario.bloch-logsym]
weight = power alpha=1
scale = const c=1
g = logsym
p = 2
q = 2
J = 10
expect.bounded = true
expect.vanishing = false
expect.sup = 1 tol = 0.1

[scenario.bloch-poly]
weight = power alpha=1
scale = const c=1
g = poly coeffs=0,1,0.5,0.25
p = 2
q = 2
J = 10
expect.bounded = true
expect.vanishing = true

[scenario.bloch-cauchy]
weight = power alpha=1
scale = const c=1
g = cauchy
p = 2
q = 2
J = 10
expect.bounded = false
expect.vanishing = false
expect.slope = -1 tol = 0.05
)";

const char* const kLacunary = R"(# Lacunary symbol: Bloch but not little Bloch.
[scenario.lacunary-k10]
weight = power alpha=1
scale = const c=1
g = lacunary K=10
p = 2
q = 2
J = 10
expect.bounded = true
expect.vanishing = false
)";

const char* const kZoo = R"(# Doubling classes of the built-in weights and class checks of the built-in scales.
[scenario.zoo-power-neg-half]
kind = weight-check
weight = power alpha=-0.5
expect.dhat = member
expect.dcheck = member

[scenario.zoo-power-0]
kind = weight-check
weight = power alpha=0
expect.dhat = member
expect.dcheck = member

[scenario.zoo-power-1]
kind = weight-check
weight = power alpha=1
expect.dhat = member
expect.dcheck = member

[scenario.zoo-loginvsq]
kind = weight-check
weight = loginvsq
depth = 128
expect.dhat = member
expect.dcheck = non-member

[scenario.zoo-loginvsq-regularized]
kind = weight-check
weight = loginvsq shift=1
expect.dhat = member
expect.dcheck = member

[scenario.zoo-scale-const]
kind = scale-check
scale = const c=3
expect.class = member

[scenario.zoo-scale-logpow-1]
kind = scale-check
scale = logpow beta=1
expect.class = member

[scenario.zoo-scale-logpow-neg-1]
kind = scale-check
scale = logpow beta=-1
expect.class = member

[scenario.zoo-scale-logpow-3]
kind = scale-check
scale = logpow beta=3
expect.class = member
)";

std::vector<CatalogEntry> build() {
  return {
      {"identity", "mu = omega dA, equal scales, p = q: rho = 1 everywhere", kIdentity},
      {"power-family", "24 power weight / power measure pairs with closed-form verdicts",
       power_family()},
      {"zygmund-boundary", "critical exponent with logarithmic scales, 3 x 3 grid",
       zygmund_boundary()},
      {"atom", "atomic measures", kAtom},
      {"sector", "area measures restricted to sectors", kSector},
      {"bloch-tg", "T_g with logsym, polynomial and Cauchy symbols", kBloch},
      {"lacunary-tg", "T_g with a lacunary symbol", kLacunary},
      {"weight-class-zoo", "doubling and class L checks of the built-in weights and scales", kZoo},
  };
}

}  // namespace

const std::vector<CatalogEntry>& catalog() {
  static const std::vector<CatalogEntry> entries = build();
  return entries;
}

std::vector<const CatalogEntry*> catalog_filter(std::string_view filter) {
  std::vector<const CatalogEntry*> out;
  for (const auto& e : catalog()) {
    if (e.name.find(filter) != std::string::npos) out.push_back(&e);
  }
  return out;
}

const CatalogEntry* catalog_find(std::string_view name) {
  for (const auto& e : catalog()) {
    if (e.name == name) return &e;
  }
  return nullptr;
}

}  // namespace bz::harness
