#include "lomo/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "lomo/grid.hpp"

namespace lomo {

namespace {

using json = nlohmann::json;

std::string fmt(double x) {
  std::ostringstream out;
  out << x;
  return out.str();
}

[[noreturn]] void fail(const std::string& message) { throw ConfigError(message); }

bool contains(const std::vector<std::string>& v, const std::string& s) {
  return std::find(v.begin(), v.end(), s) != v.end();
}

/// Visits every (key, member) pair once so reading and writing stay in sync.
template <class Config, class Fn>
void for_each_field(Config& c, Fn&& fn) {
  fn("subcommand", c.subcommand);
  fn("dim", c.dim);
  fn("grid", c.grid);
  fn("side", c.side);
  fn("seed", c.seed);
  fn("corpus_size", c.corpus_size);
  fn("radii_count", c.radii_count);
  fn("input", c.input);
  fn("member", c.member);
  fn("output", c.output);
  fn("alpha", c.alpha);
  fn("space", c.space);
  fn("p", c.p);
  fn("q", c.q);
  fn("lambda", c.lambda);
  fn("delta", c.delta);
  fn("radius", c.radius);
  fn("maximal", c.maximal);
  fn("mode", c.mode);
  fn("gamma", c.gamma);
  fn("beta", c.beta);
  fn("potential", c.potential);
  fn("suites", c.suites);
  fn("p_values", c.p_values);
  fn("report", c.report);
  fn("format", c.format);
}

void validate_verify(const RunConfig& c) {
  if (c.suites.empty()) fail("verify: empty suite selection");
  for (const auto& s : c.suites) {
    if (s != "all" && !contains(suite_names(), s)) fail("verify: unknown suite '" + s + "'");
  }
  for (double p : c.p_values) {
    if (!(p > 1.0) || !std::isfinite(p)) {
      fail("verify: --p " + fmt(p) + " violates the hypothesis 1 < p < inf of the maximal operator bound (thm31)");
    }
  }
  if (c.format != "json" && c.format != "csv") fail("verify: --format must be json or csv");
}

}  // namespace

const std::vector<std::string>& subcommand_names() {
  static const std::vector<std::string> names{"rearrange", "maximal",     "norm",
                                              "bochner-riesz", "schrodinger", "verify"};
  return names;
}

void validate(const RunConfig& c) {
  if (!contains(subcommand_names(), c.subcommand)) fail("unknown subcommand '" + c.subcommand + "'");
  try {
    make_domain(c.dim, c.side, c.grid);
  } catch (const std::invalid_argument& e) {
    fail(e.what());
  }
  if (c.radii_count < 16) fail("--radii must be at least 16");
  if (c.corpus_size == 0) fail("--corpus-size must be positive");
  if (c.input.empty() && c.member >= c.corpus_size && c.subcommand != "verify") {
    fail("--member must be below --corpus-size");
  }
  const int n = c.dim;

  if (c.subcommand == "maximal") {
    if (!(c.alpha >= 0.0 && c.alpha < n)) fail("maximal: requires 0 <= alpha < n, got alpha = " + fmt(c.alpha));
  } else if (c.subcommand == "norm") {
    static const std::vector<std::string> spaces{"lorentz", "lorentz-double-star", "morrey", "lorentz-morrey"};
    if (!contains(spaces, c.space)) fail("norm: --space must be one of lorentz, lorentz-double-star, morrey, lorentz-morrey");
    if (!(c.p >= 1.0) || !std::isfinite(c.p)) fail("norm: requires 1 <= p < inf, got p = " + fmt(c.p));
    if (!(c.q > 0.0)) fail("norm: requires 0 < q <= inf, got q = " + fmt(c.q));
    if (c.space == "lorentz-double-star" && !(c.p > 1.0)) fail("norm: the f** functional requires 1 < p");
    if ((c.space == "morrey" || c.space == "lorentz-morrey") && !(c.lambda >= 0.0 && c.lambda <= n)) {
      fail("norm: requires 0 <= lambda <= n, got lambda = " + fmt(c.lambda));
    }
  } else if (c.subcommand == "bochner-riesz") {
    if (!(c.delta > 0.5 * (n - 1))) fail("bochner-riesz: requires delta > (n-1)/2, got delta = " + fmt(c.delta));
    if (!(c.radius > 0.0)) fail("bochner-riesz: requires r > 0");
  } else if (c.subcommand == "schrodinger") {
    if (c.mode == "t1") {
      if (!(0.0 <= c.gamma && c.gamma <= c.beta && c.beta <= 1.0)) fail("schrodinger t1: requires 0 <= gamma <= beta <= 1");
    } else if (c.mode == "t2") {
      if (!(0.0 <= c.gamma && c.gamma <= 0.5 && 0.5 <= c.beta && c.beta <= 1.0 && c.beta - c.gamma >= 0.5)) {
        fail("schrodinger t2: requires 0 <= gamma <= 1/2 <= beta <= 1 and beta - gamma >= 1/2");
      }
    } else {
      fail("schrodinger: --mode must be t1 or t2");
    }
  } else if (c.subcommand == "verify") {
    validate_verify(c);
  }
  if (c.subcommand != "verify" && c.format != "json") fail("--format csv applies to verify reports only");
}

VerifyOptions verify_options(const RunConfig& c) {
  VerifyOptions o;
  o.dim = c.dim;
  o.grid = c.grid;
  o.seed = c.seed;
  o.corpus_size = c.corpus_size;
  o.radii_count = c.radii_count;
  o.side = c.side;
  o.p_values = c.p_values;
  return o;
}

void to_json(json& j, const RunConfig& c) {
  j = json::object();
  for_each_field(c, [&j](const char* key, const auto& value) { j[key] = value; });
}

void from_json(const json& j, RunConfig& c) {
  if (!j.is_object()) fail("config: expected a JSON object");
  std::set<std::string> known;
  for_each_field(c, [&known](const char* key, const auto&) { known.insert(key); });
  for (const auto& [key, value] : j.items()) {
    if (!known.count(key)) fail("config: unknown key '" + key + "'");
  }
  RunConfig out;
  for_each_field(out, [&j](const char* key, auto& member) {
    if (!j.contains(key)) return;
    try {
      j.at(key).get_to(member);
    } catch (const json::exception& e) {
      fail(std::string("config: bad value for '") + key + "': " + e.what());
    }
  });
  c = std::move(out);
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config " + path);
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    fail(path + ": " + e.what());
  }
  return j.get<RunConfig>();
}

void save_config(const std::string& path, const RunConfig& config) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  out << json(config).dump(2) << '\n';
  if (!out) throw std::runtime_error("failed writing " + path);
}

}  // namespace lomo
