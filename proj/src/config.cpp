#include "mocover/config.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <map>
#include <sstream>
#include <vector>

#include "mocover/io.hpp"

namespace mocover {
namespace {

struct Entry {
  std::string value;
  int line = 0;
};

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

class Reader {
 public:
  Reader(std::string source, std::map<std::string, Entry> entries)
      : source_(std::move(source)), entries_(std::move(entries)) {}

  bool has(const std::string& key) const { return entries_.count(key) != 0; }
  int line(const std::string& key) const { return has(key) ? entries_.at(key).line : 0; }

  [[noreturn]] void fail(const std::string& key, const std::string& message) const {
    throw ConfigError(source_, line(key), key.empty() ? message : key + ": " + message);
  }

  std::string text(const std::string& key, std::string fallback) const {
    return has(key) ? entries_.at(key).value : fallback;
  }

  double real(const std::string& key, double fallback) const {
    if (!has(key)) return fallback;
    return parse_real(key, entries_.at(key).value);
  }

  template <class Int>
  Int integer(const std::string& key, Int fallback) const {
    if (!has(key)) return fallback;
    const std::string& v = entries_.at(key).value;
    Int out{};
    const auto res = std::from_chars(v.data(), v.data() + v.size(), out);
    if (res.ec != std::errc{} || res.ptr != v.data() + v.size()) fail(key, "expected an integer, got '" + v + "'");
    return out;
  }

  bool boolean(const std::string& key, bool fallback) const {
    if (!has(key)) return fallback;
    const std::string& v = entries_.at(key).value;
    if (v == "true") return true;
    if (v == "false") return false;
    fail(key, "expected true or false, got '" + v + "'");
  }

  Vector vector(const std::string& key) const {
    std::string_view v = entries_.at(key).value;
    if (v.size() < 2 || v.front() != '[' || v.back() != ']') {
      fail(key, "expected a vector literal like [1, 2]");
    }
    v = trim(v.substr(1, v.size() - 2));
    std::vector<double> values;
    while (!v.empty()) {
      const auto comma = v.find(',');
      const auto item = trim(v.substr(0, comma));
      values.push_back(parse_real(key, std::string(item)));
      if (comma == std::string_view::npos) break;
      v = v.substr(comma + 1);
    }
    return Eigen::Map<const Vector>(values.data(), static_cast<Eigen::Index>(values.size()));
  }

 private:
  double parse_real(const std::string& key, const std::string& v) const {
    double out = 0.0;
    const auto res = std::from_chars(v.data(), v.data() + v.size(), out);
    if (res.ec != std::errc{} || res.ptr != v.data() + v.size() || !std::isfinite(out)) {
      fail(key, "expected a finite number, got '" + v + "'");
    }
    return out;
  }

  std::string source_;
  std::map<std::string, Entry> entries_;
};

const std::vector<std::string>& known_keys() {
  static const std::vector<std::string> keys = {
      "name",  "problem", "dim",  "lower", "upper", "mode", "steps", "xi",
      "eps",   "seed",    "points_per_axis", "inner_iterations", "max_descent_rounds",
      "c1",    "h0",      "backtrack_factor", "h_min", "production_form", "output",
      "reference", "save_steps", "threads"};
  return keys;
}

std::string vector_text(const Vector& v) {
  std::string out = "[";
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (i) out += ", ";
    out += format_double(v[i]);
  }
  return out + "]";
}

}  // namespace

ConfigError::ConfigError(std::string source, int line, const std::string& message)
    : std::runtime_error(source + ":" + std::to_string(line) + ": " + message), line_(line) {}

bool RunConfig::operator==(const RunConfig& o) const {
  auto same = [](const Vector& a, const Vector& b) { return a.size() == b.size() && a == b; };
  return name == o.name && problem == o.problem && dim == o.dim && same(lower, o.lower) &&
         same(upper, o.upper) && mode == o.mode && steps == o.steps && same(xi, o.xi) &&
         same(eps, o.eps) && seed == o.seed && points_per_axis == o.points_per_axis &&
         inner_iterations == o.inner_iterations && max_descent_rounds == o.max_descent_rounds &&
         linesearch.c1 == o.linesearch.c1 && linesearch.h0 == o.linesearch.h0 &&
         linesearch.backtrack_factor == o.linesearch.backtrack_factor &&
         linesearch.h_min == o.linesearch.h_min && production_form == o.production_form &&
         output == o.output && reference == o.reference && save_steps == o.save_steps &&
         threads == o.threads;
}

std::string_view mode_name(SolverMode mode) {
  switch (mode) {
    case SolverMode::Gradient: return "gradient";
    case SolverMode::Sampling: return "sampling";
    case SolverMode::Combined: return "combined";
  }
  return "gradient";
}

RunConfig parse_config(std::string_view text, const std::string& source) {
  std::map<std::string, Entry> entries;
  int line_no = 0;
  std::istringstream in{std::string(text)};
  std::string raw;
  while (std::getline(in, raw)) {
    ++line_no;
    std::string_view line = raw;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw ConfigError(source, line_no, "expected 'key = value'");
    }
    const std::string key{trim(line.substr(0, eq))};
    const std::string value{trim(line.substr(eq + 1))};
    if (std::find(known_keys().begin(), known_keys().end(), key) == known_keys().end()) {
      throw ConfigError(source, line_no, "unknown key '" + key + "'");
    }
    if (entries.count(key)) throw ConfigError(source, line_no, "duplicate key '" + key + "'");
    if (value.empty()) throw ConfigError(source, line_no, key + ": missing value");
    entries[key] = Entry{value, line_no};
  }

  const Reader r(source, std::move(entries));
  RunConfig c;
  if (!r.has("problem")) throw ConfigError(source, 0, "missing required key 'problem'");
  c.problem = r.text("problem", "");
  const auto names = builtin_names();
  if (std::find(names.begin(), names.end(), c.problem) == names.end()) {
    r.fail("problem", "unknown problem '" + c.problem + "'");
  }
  c.name = r.text("name", c.problem);
  c.dim = r.integer<int>("dim", builtin_default_dim(c.problem));
  try {
    builtin(c.problem, c.dim);
  } catch (const std::invalid_argument& e) {
    r.fail("dim", e.what());
  }
  const int k = builtin_objectives(c.problem);

  const HyperBox region = *builtin(c.problem, c.dim).default_region();
  c.lower = r.has("lower") ? r.vector("lower") : region.lower();
  c.upper = r.has("upper") ? r.vector("upper") : region.upper();
  if (c.lower.size() != c.dim) r.fail("lower", "expected " + std::to_string(c.dim) + " entries");
  if (c.upper.size() != c.dim) r.fail("upper", "expected " + std::to_string(c.dim) + " entries");
  if (!(c.lower.array() < c.upper.array()).all()) r.fail("upper", "must exceed lower on every axis");

  const std::string mode = r.text("mode", "gradient");
  if (mode == "gradient") c.mode = SolverMode::Gradient;
  else if (mode == "sampling") c.mode = SolverMode::Sampling;
  else if (mode == "combined") c.mode = SolverMode::Combined;
  else r.fail("mode", "expected gradient, sampling or combined");

  c.steps = r.integer<int>("steps", 1);
  if (c.steps < 1 || c.steps > BoxCollection::kMaxDepth) r.fail("steps", "must lie in [1, 62]");

  c.xi = r.has("xi") ? r.vector("xi") : Vector::Zero(k);
  c.eps = r.has("eps") ? r.vector("eps") : Vector::Zero(k);
  if (c.xi.size() != k) r.fail("xi", "expected " + std::to_string(k) + " entries");
  if (c.eps.size() != k) r.fail("eps", "expected " + std::to_string(k) + " entries");
  if ((c.xi.array() < 0.0).any()) r.fail("xi", "entries must be non-negative");
  if ((c.eps.array() < 0.0).any()) r.fail("eps", "entries must be non-negative");

  c.seed = r.integer<std::uint64_t>("seed", 0);
  c.points_per_axis = r.integer<int>("points_per_axis", 2);
  if (c.points_per_axis < 1) r.fail("points_per_axis", "must be >= 1");
  c.inner_iterations = r.integer<int>("inner_iterations", 5);
  if (c.inner_iterations < 1) r.fail("inner_iterations", "must be >= 1");
  c.max_descent_rounds = r.integer<int>("max_descent_rounds", 50);
  if (c.max_descent_rounds < 1) r.fail("max_descent_rounds", "must be >= 1");

  c.linesearch.c1 = r.real("c1", c.linesearch.c1);
  if (!(c.linesearch.c1 > 0.0 && c.linesearch.c1 < 1.0)) r.fail("c1", "must lie in (0, 1)");
  c.linesearch.h0 = r.real("h0", c.linesearch.h0);
  if (!(c.linesearch.h0 > 0.0)) r.fail("h0", "must be positive");
  c.linesearch.backtrack_factor = r.real("backtrack_factor", c.linesearch.backtrack_factor);
  if (!(c.linesearch.backtrack_factor > 0.0 && c.linesearch.backtrack_factor < 1.0)) {
    r.fail("backtrack_factor", "must lie in (0, 1)");
  }
  c.linesearch.h_min = r.real("h_min", c.linesearch.h_min);
  if (!(c.linesearch.h_min > 0.0)) r.fail("h_min", "must be positive");

  const std::string form = r.text("production_form", "product");
  if (form == "product") c.production_form = ProductionForm::Product;
  else if (form == "verbatim_sum") c.production_form = ProductionForm::VerbatimSum;
  else r.fail("production_form", "expected product or verbatim_sum");

  c.output = r.text("output", "runs");
  c.reference = r.text("reference", "");
  c.save_steps = r.boolean("save_steps", true);
  c.threads = r.integer<unsigned>("threads", 0);
  return c;
}

RunConfig load_config(const std::filesystem::path& path) {
  std::string text;
  try {
    text = read_file(path);
  } catch (const std::runtime_error& e) {
    throw ConfigError(path.string(), 0, e.what());
  }
  return parse_config(text, path.string());
}

std::string serialize_config(const RunConfig& c) {
  std::ostringstream out;
  out << "name = " << c.name << "\n"
      << "problem = " << c.problem << "\n"
      << "dim = " << c.dim << "\n"
      << "lower = " << vector_text(c.lower) << "\n"
      << "upper = " << vector_text(c.upper) << "\n"
      << "mode = " << mode_name(c.mode) << "\n"
      << "steps = " << c.steps << "\n"
      << "xi = " << vector_text(c.xi) << "\n"
      << "eps = " << vector_text(c.eps) << "\n"
      << "seed = " << c.seed << "\n"
      << "points_per_axis = " << c.points_per_axis << "\n"
      << "inner_iterations = " << c.inner_iterations << "\n"
      << "max_descent_rounds = " << c.max_descent_rounds << "\n"
      << "c1 = " << format_double(c.linesearch.c1) << "\n"
      << "h0 = " << format_double(c.linesearch.h0) << "\n"
      << "backtrack_factor = " << format_double(c.linesearch.backtrack_factor) << "\n"
      << "h_min = " << format_double(c.linesearch.h_min) << "\n"
      << "production_form = "
      << (c.production_form == ProductionForm::Product ? "product" : "verbatim_sum") << "\n"
      << "output = " << c.output << "\n";
  if (!c.reference.empty()) out << "reference = " << c.reference << "\n";
  out << "save_steps = " << (c.save_steps ? "true" : "false") << "\n"
      << "threads = " << c.threads << "\n";
  return out.str();
}

std::string config_hash(const RunConfig& config) {
  // FNV-1a over the solver-relevant canonical text (output location excluded)
  RunConfig canonical = config;
  canonical.output.clear();
  canonical.threads = 0;
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (const unsigned char ch : serialize_config(canonical)) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

UncertainProblem make_problem(const RunConfig& c) {
  BuiltinOptions options;
  options.production_form = c.production_form;
  return builtin(c.problem, c.dim, options).with_errors(c.xi, c.eps).with_seed(c.seed);
}

HyperBox make_region(const RunConfig& c) { return HyperBox::from_bounds(c.lower, c.upper); }

SolverConfig make_solver_config(const RunConfig& c) {
  SolverConfig s;
  s.steps = c.steps;
  s.points_per_axis = c.points_per_axis;
  s.mode = c.mode;
  s.inner_iterations = c.inner_iterations;
  s.seed = c.seed;
  s.linesearch = c.linesearch;
  s.max_descent_rounds = c.max_descent_rounds;
  s.threads = c.threads;
  return s;
}

}  // namespace mocover
