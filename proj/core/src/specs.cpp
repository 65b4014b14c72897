#include "bz/specs.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include "bz/errors.hpp"

namespace bz {

namespace {

std::vector<std::string> split_ws(std::string_view text) {
  std::vector<std::string> out;
  std::istringstream is{std::string(text)};
  std::string tok;
  while (is >> tok) out.push_back(tok);
  return out;
}

std::vector<std::string> split(std::string_view text, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = text.find(sep, start);
    out.emplace_back(text.substr(start, pos == std::string_view::npos ? text.npos : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

std::filesystem::path resolve_path(const std::string& p, const std::filesystem::path& base) {
  const std::filesystem::path path(p);
  if (path.is_absolute() || base.empty()) return path;
  return base / path;
}

}  // namespace

double parse_number(std::string_view text) {
  double v = 0.0;
  const char* end = text.data() + text.size();
  const auto res = std::from_chars(text.data(), end, v);
  if (text.empty() || res.ec != std::errc() || res.ptr != end) {
    throw ParseError("not a number: '" + std::string(text) + "'", 0);
  }
  return v;
}

long parse_integer(std::string_view text) {
  long v = 0;
  const char* end = text.data() + text.size();
  const auto res = std::from_chars(text.data(), end, v);
  if (text.empty() || res.ec != std::errc() || res.ptr != end) {
    throw ParseError("not an integer: '" + std::string(text) + "'", 0);
  }
  return v;
}

std::vector<Complex> parse_coefficients(std::string_view text) {
  std::vector<Complex> out;
  for (const auto& item : split(text, ',')) {
    const auto parts = split(item, ':');
    if (parts.size() == 1) {
      out.emplace_back(parse_number(parts[0]), 0.0);
    } else if (parts.size() == 2) {
      out.emplace_back(parse_number(parts[0]), parse_number(parts[1]));
    } else {
      throw ParseError("bad coefficient '" + item + "'", 0);
    }
  }
  return out;
}

void read_table(const std::filesystem::path& path, std::vector<double>& x, std::vector<double>& y) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open table " + path.string(), 0);
  x.clear();
  y.clear();
  std::string line;
  int n = 0;
  while (std::getline(in, line)) {
    ++n;
    if (const auto h = line.find('#'); h != std::string::npos) line.erase(h);
    const auto tok = split_ws(line);
    if (tok.empty()) continue;
    if (tok.size() != 2) {
      throw ParseError(path.string() + ":" + std::to_string(n) + ": expected two columns", 0);
    }
    x.push_back(parse_number(tok[0]));
    y.push_back(parse_number(tok[1]));
  }
}

SpecArgs SpecArgs::parse(std::string_view text) {
  SpecArgs args;
  args.text_ = std::string(text);
  const auto tok = split_ws(text);
  if (tok.empty()) throw ParseError("empty specification", 0);
  args.head_ = tok[0];
  for (std::size_t i = 1; i < tok.size(); ++i) {
    const auto eq = tok[i].find('=');
    if (eq == std::string::npos || eq == 0) {
      throw ParseError("expected key=value in '" + args.text_ + "', got '" + tok[i] + "'", 0);
    }
    const std::string key = tok[i].substr(0, eq);
    if (!args.values_.emplace(key, tok[i].substr(eq + 1)).second) {
      throw ParseError("duplicate key '" + key + "' in '" + args.text_ + "'", 0);
    }
  }
  return args;
}

bool SpecArgs::has(const std::string& key) const { return values_.count(key) > 0; }

std::string SpecArgs::take(const std::string& key) {
  const auto it = values_.find(key);
  if (it == values_.end()) throw ParseError("missing '" + key + "' in '" + text_ + "'", 0);
  std::string v = it->second;
  values_.erase(it);
  return v;
}

double SpecArgs::take_number(const std::string& key) { return parse_number(take(key)); }

double SpecArgs::take_number(const std::string& key, double fallback) {
  return has(key) ? take_number(key) : fallback;
}

long SpecArgs::take_integer(const std::string& key) { return parse_integer(take(key)); }

void SpecArgs::finish() const {
  if (!values_.empty()) {
    throw ParseError("unknown key '" + values_.begin()->first + "' in '" + text_ + "'", 0);
  }
}

RadialWeight parse_weight(std::string_view spec, const std::filesystem::path& base_dir) {
  SpecArgs args = SpecArgs::parse(spec);
  const double shift = args.take_number("shift", 0.0);
  RadialWeight w = [&] {
    if (args.head() == "power") return RadialWeight::power(args.take_number("alpha"));
    if (args.head() == "loginvsq") return RadialWeight::log_inverse_square();
    if (args.head() == "table") {
      std::vector<double> s;
      std::vector<double> v;
      read_table(resolve_path(args.take("path"), base_dir), s, v);
      return RadialWeight::tabulated(std::move(s), std::move(v));
    }
    throw ParseError("unknown weight kind '" + args.head() + "'", 0);
  }();
  args.finish();
  return shift == 0.0 ? w : power_shift(w, shift);
}

ScaleFunction parse_scale(std::string_view spec, const std::filesystem::path& base_dir) {
  SpecArgs args = SpecArgs::parse(spec);
  ScaleFunction psi = [&] {
    if (args.head() == "const") return ScaleFunction::constant(args.take_number("c", 1.0));
    if (args.head() == "logpow") return ScaleFunction::log_power(args.take_number("beta"));
    if (args.head() == "table") {
      std::vector<double> x;
      std::vector<double> v;
      read_table(resolve_path(args.take("path"), base_dir), x, v);
      return ScaleFunction::tabulated(std::move(x), std::move(v));
    }
    throw ParseError("unknown scale kind '" + args.head() + "'", 0);
  }();
  args.finish();
  return psi;
}

void add_measure_component(DiscMeasure& mu, std::string_view spec,
                           const std::filesystem::path& base_dir) {
  const auto tok = split_ws(spec);
  if (tok.empty()) throw ParseError("empty measure component", 0);
  if (tok[0] == "atom") {
    SpecArgs args = SpecArgs::parse(spec);
    const Complex z(args.take_number("re"), args.take_number("im", 0.0));
    const double m = args.take_number("mass");
    args.finish();
    mu.add_atom(z, m);
    return;
  }
  if (tok[0] != "area") throw ParseError("unknown measure component '" + tok[0] + "'", 0);
  std::string weight;
  std::optional<Sector> sector;
  double factor = 1.0;
  bool in_weight = false;
  for (std::size_t i = 1; i < tok.size(); ++i) {
    const std::string& t = tok[i];
    if (t.rfind("weight=", 0) == 0) {
      weight = t.substr(7);
      in_weight = true;
    } else if (t.rfind("sector=", 0) == 0) {
      const auto ends = split(t.substr(7), ',');
      if (ends.size() != 2) throw ParseError("sector needs two angles", 0);
      sector = Sector{parse_number(ends[0]), parse_number(ends[1])};
      in_weight = false;
    } else if (t.rfind("factor=", 0) == 0) {
      factor = parse_number(t.substr(7));
      in_weight = false;
    } else if (in_weight) {
      weight += " " + t;
    } else {
      throw ParseError("unexpected '" + t + "' in area component", 0);
    }
  }
  if (weight.empty()) throw ParseError("area component needs weight=<weight-spec>", 0);
  if (!(factor > 0.0)) throw ParseError("area factor must be positive", 0);
  mu.add_area(parse_weight(weight, base_dir), sector, factor);
}

AnalyticFunction parse_symbol(std::string_view spec, int max_level) {
  SpecArgs args = SpecArgs::parse(spec);
  AnalyticFunction g = [&] {
    if (args.head() == "poly") {
      return AnalyticFunction::polynomial(parse_coefficients(args.take("coeffs")));
    }
    if (args.head() == "logsym" || args.head() == "cauchy") {
      const SymbolKind kind = args.head() == "logsym" ? SymbolKind::logsym : SymbolKind::cauchy;
      const long n = args.has("N") ? args.take_integer("N") : symbol_truncation(kind, max_level);
      return kind == SymbolKind::logsym ? AnalyticFunction::log_symbol(n)
                                        : AnalyticFunction::cauchy_symbol(n);
    }
    if (args.head() == "lacunary") {
      return AnalyticFunction::lacunary_symbol(static_cast<int>(args.take_integer("K")));
    }
    throw ParseError("unknown symbol kind '" + args.head() + "'", 0);
  }();
  args.finish();
  return g;
}

FunctionSpec parse_function(std::string_view spec) {
  SpecArgs args = SpecArgs::parse(spec);
  FunctionSpec out;
  out.text = std::string(spec);
  if (args.head() == "poly") {
    out.kind = FunctionSpec::Kind::poly;
    out.poly = Polynomial(parse_coefficients(args.take("coeffs")));
  } else if (args.head() == "testfn") {
    out.kind = FunctionSpec::Kind::testfn;
    out.a = Complex(args.take_number("a_re"), args.take_number("a_im", 0.0));
    out.gamma = args.take_number("gamma");
  } else {
    throw ParseError("unknown function kind '" + args.head() + "'", 0);
  }
  args.finish();
  return out;
}

AnalyticFunction FunctionSpec::resolve(const CarlesonContext& ctx) const {
  if (kind == Kind::poly) return AnalyticFunction::polynomial(poly);
  return test_function(ctx, a, gamma);
}

}  // namespace bz
