#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "bz/analytic.hpp"
#include "bz/carleson.hpp"
#include "bz/measures.hpp"
#include "bz/scale.hpp"
#include "bz/weights.hpp"

namespace bz {

// "head key=value key=value"; every key must be consumed before finish().
class SpecArgs {
 public:
  static SpecArgs parse(std::string_view text);

  const std::string& head() const { return head_; }
  bool has(const std::string& key) const;
  std::string take(const std::string& key);
  double take_number(const std::string& key);
  double take_number(const std::string& key, double fallback);
  long take_integer(const std::string& key);
  void finish() const;

 private:
  std::string text_;
  std::string head_;
  std::map<std::string, std::string> values_;
};

double parse_number(std::string_view text);
long parse_integer(std::string_view text);
// "c0,c1,..." with entries "x" or "re:im".
std::vector<Complex> parse_coefficients(std::string_view text);
// Two whitespace separated columns; '#' starts a comment.
void read_table(const std::filesystem::path& path, std::vector<double>& x, std::vector<double>& y);

// power alpha=<f> | loginvsq | table path=<file>, each optionally followed by
// shift=<x> for the power shifted weight omega(s) (1 - s)^x.
RadialWeight parse_weight(std::string_view spec, const std::filesystem::path& base_dir = {});

// const c=<f> | logpow beta=<f> | table path=<file>
ScaleFunction parse_scale(std::string_view spec, const std::filesystem::path& base_dir = {});

// area weight=<weight-spec> [sector=<t1>,<t2>] [factor=<f>] | atom re=<f> im=<f> mass=<f>
void add_measure_component(DiscMeasure& mu, std::string_view spec,
                           const std::filesystem::path& base_dir = {});

// poly coeffs=... | logsym [N=<int>] | cauchy [N=<int>] | lacunary K=<int>.
// Without N the truncation keeps the tail of g' below 1e-9 up to level max_level.
AnalyticFunction parse_symbol(std::string_view spec, int max_level);

// poly coeffs=... | testfn a_re=<f> a_im=<f> gamma=<f>
struct FunctionSpec {
  enum class Kind { poly, testfn };
  Kind kind = Kind::poly;
  Polynomial poly;
  Complex a;
  double gamma = 0.0;
  std::string text;

  AnalyticFunction resolve(const CarlesonContext& ctx) const;
};

FunctionSpec parse_function(std::string_view spec);

}  // namespace bz
