// lomo: command-line front end for rearrangements, maximal operators,
// Lorentz-Morrey norms, spectral multipliers and the verification suites.
//
// Exit codes: 0 success (verify: every selected suite passed), 1 a suite
// failed, 2 usage or input error.

#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "lomo/config.hpp"
#include "lomo/corpus.hpp"
#include "lomo/io.hpp"
#include "lomo/maximal.hpp"
#include "lomo/multiplier.hpp"
#include "lomo/norms.hpp"
#include "lomo/rearrangement.hpp"
#include "lomo/verify.hpp"

namespace {

using json = nlohmann::json;
using lomo::RunConfig;

constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;

void emit_text(const std::string& path, const std::string& text) {
  if (path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  out << text;
  if (!out) throw std::runtime_error("failed writing " + path);
}

void emit_function(const std::string& path, const lomo::GridFunction& f) {
  if (path.empty()) {
    lomo::write_grid_function(std::cout, f);
  } else {
    lomo::save_grid_function(path, f);
  }
}

lomo::GridFunction input_function(const RunConfig& c) {
  if (!c.input.empty()) return lomo::load_grid_function(c.input);
  const auto corpus = lomo::generate_corpus(c.dim, c.side, c.seed, c.corpus_size);
  return corpus.at(c.member).sample(lomo::make_domain(c.dim, c.side, c.grid));
}

lomo::GridFunction potential_for(const RunConfig& c, const lomo::Domain& d) {
  if (c.potential == "one") return lomo::GridFunction(d, std::vector<double>(d.size(), 1.0));
  if (c.potential == "smooth") {
    return lomo::sample(d, [&](const lomo::Point& x) {
      const double v = std::cos(2.0 * 3.14159265358979323846 * x[0] / d.side);
      return 1.0 + v * v;
    });
  }
  lomo::GridFunction v = lomo::load_grid_function(c.potential);
  if (!(v.domain() == d)) throw lomo::ConfigError("potential " + c.potential + " lives on a different grid than the input");
  return v;
}

int run_rearrange(const RunConfig& c) {
  const auto f = input_function(c);
  const auto profile = lomo::decreasing_rearrangement(f);
  json out = profile;
  out["support_measure"] = profile.support_measure();
  out["total_mass"] = profile.total_mass();
  emit_text(c.output, out.dump(2) + "\n");
  return kExitPass;
}

int run_maximal(const RunConfig& c) {
  const auto f = input_function(c);
  const auto radii = lomo::RadiusGrid::for_domain(f.domain(), c.radii_count);
  emit_function(c.output, lomo::fractional_maximal(f, c.alpha, radii));
  return kExitPass;
}

int run_norm(const RunConfig& c) {
  const auto f = input_function(c);
  json out{{"space", c.space}, {"p", c.p}, {"q", c.q}};
  if (c.space == "lorentz") {
    out["value"] = lomo::lorentz_norm(f, c.p, c.q);
  } else if (c.space == "lorentz-double-star") {
    out["value"] = lomo::lorentz_norm_double_star(lomo::decreasing_rearrangement(f), c.p, c.q);
  } else {
    const auto sweep = lomo::SweepSpec::strided(f, 0, c.radii_count);
    const auto res = c.space == "morrey" ? lomo::morrey_norm(f, c.p, c.lambda, sweep)
                                         : lomo::lorentz_morrey_norm(f, c.p, c.q, c.lambda, sweep);
    out["lambda"] = c.lambda;
    out["value"] = res.value;
    out["argmax_center"] = f.domain().cell_center(res.argmax_center);
    out["argmax_radius"] = res.argmax_radius;
    out["balls_evaluated"] = res.balls_evaluated;
  }
  emit_text(c.output, out.dump(2) + "\n");
  return kExitPass;
}

int run_bochner_riesz(const RunConfig& c) {
  const auto f = input_function(c);
  if (c.maximal) {
    const auto radii = lomo::RadiusGrid::for_domain(f.domain(), c.radii_count);
    emit_function(c.output, lomo::maximal_bochner_riesz(f, c.delta, radii));
  } else {
    emit_function(c.output, lomo::bochner_riesz(f, lomo::MultiplierSpec::make(f.domain().dim, c.delta, c.radius)));
  }
  return kExitPass;
}

int run_schrodinger(const RunConfig& c) {
  const auto f = input_function(c);
  const auto mode = c.mode == "t1" ? lomo::SchrodingerMode::t1 : lomo::SchrodingerMode::t2;
  const auto spec = lomo::SchrodingerSpec::make(potential_for(c, f.domain()), c.gamma, c.beta, mode);
  emit_function(c.output, mode == lomo::SchrodingerMode::t1 ? lomo::t1_apply(f, spec) : lomo::t2_apply(f, spec));
  return kExitPass;
}

int run_verify(const RunConfig& c) {
  const auto run = lomo::run_suites(c.suites, lomo::verify_options(c));
  for (const auto& suite : run.report.at("suites")) {
    std::cout << (suite.at("passed").get<bool>() ? "PASS " : "FAIL ") << suite.at("id").get<std::string>() << '\n';
  }
  if (!c.report.empty()) {
    const bool csv = c.format == "csv" || c.report.ends_with(".csv");
    emit_text(c.report, csv ? lomo::report_csv(run.report) : run.report.dump(2) + "\n");
  }
  return run.passed ? kExitPass : kExitFail;
}

int run(const RunConfig& c) {
  lomo::validate(c);
  if (c.subcommand == "rearrange") return run_rearrange(c);
  if (c.subcommand == "maximal") return run_maximal(c);
  if (c.subcommand == "norm") return run_norm(c);
  if (c.subcommand == "bochner-riesz") return run_bochner_riesz(c);
  if (c.subcommand == "schrodinger") return run_schrodinger(c);
  return run_verify(c);
}

/// Flags bound to a scratch RunConfig; after parsing, the ones actually given
/// are copied over the config file values (or the defaults).
class Binder {
 public:
  explicit Binder(RunConfig& scratch) : scratch_(scratch) {}

  template <class T>
  CLI::Option* add(CLI::App* app, const std::string& flags, T RunConfig::*field, const std::string& help) {
    CLI::Option* opt = app->add_option(flags, scratch_.*field, help);
    bindings_.push_back({opt, [field](RunConfig& dst, const RunConfig& src) { dst.*field = src.*field; }});
    return opt;
  }

  CLI::Option* flag(CLI::App* app, const std::string& flags, bool RunConfig::*field, const std::string& help) {
    CLI::Option* opt = app->add_flag(flags, scratch_.*field, help);
    bindings_.push_back({opt, [field](RunConfig& dst, const RunConfig& src) { dst.*field = src.*field; }});
    return opt;
  }

  void apply(RunConfig& dst) const {
    for (const auto& [opt, copy] : bindings_) {
      if (opt->count() > 0) copy(dst, scratch_);
    }
  }

 private:
  struct Binding {
    CLI::Option* option;
    std::function<void(RunConfig&, const RunConfig&)> copy;
  };
  RunConfig& scratch_;
  std::vector<Binding> bindings_;
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Rearrangement, maximal-operator and Lorentz-Morrey norm toolkit"};
  app.require_subcommand(1);
  app.set_version_flag("--version", LOMO_VERSION);

  RunConfig scratch;
  Binder bind(scratch);
  std::string config_path;
  std::string dump_path;

  auto common = [&](CLI::App* sub) {
    sub->add_option("--config", config_path, "JSON RunConfig file; explicit flags override it");
    sub->add_option("--dump-config", dump_path, "Write the resolved RunConfig as JSON and exit");
    bind.add(sub, "--n,--dim", &RunConfig::dim, "Dimension (1, 2 or 3)");
    bind.add(sub, "--grid", &RunConfig::grid, "Points per axis (power of two >= 8)");
    bind.add(sub, "--side", &RunConfig::side, "Box side L");
    bind.add(sub, "--seed", &RunConfig::seed, "Corpus seed");
    bind.add(sub, "--corpus-size", &RunConfig::corpus_size, "Corpus members");
    bind.add(sub, "--radii", &RunConfig::radii_count, "Radii in the geometric sup family (>= 16)");
  };
  auto function_io = [&](CLI::App* sub) {
    bind.add(sub, "-i,--input", &RunConfig::input, "Input GridFunction file (default: corpus member)");
    bind.add(sub, "--member", &RunConfig::member, "Corpus member used when no input is given");
    bind.add(sub, "-o,--output", &RunConfig::output, "Output file (default: stdout)");
  };

  auto* rearrange = app.add_subcommand("rearrange", "Decreasing rearrangement f* as a step profile");
  common(rearrange);
  function_io(rearrange);

  auto* maximal = app.add_subcommand("maximal", "Fractional maximal function M_alpha f");
  common(maximal);
  function_io(maximal);
  bind.add(maximal, "--alpha", &RunConfig::alpha, "Order, 0 <= alpha < n");

  auto* norm = app.add_subcommand("norm", "Lorentz, Morrey or Lorentz-Morrey norm");
  common(norm);
  function_io(norm);
  bind.add(norm, "--space", &RunConfig::space, "lorentz | lorentz-double-star | morrey | lorentz-morrey");
  bind.add(norm, "--p", &RunConfig::p, "Exponent p >= 1");
  bind.add(norm, "--q", &RunConfig::q, "Fine index q in (0, inf]");
  bind.add(norm, "--lambda", &RunConfig::lambda, "Morrey index, 0 <= lambda <= n");

  auto* br = app.add_subcommand("bochner-riesz", "Bochner-Riesz mean or its maximal version");
  common(br);
  function_io(br);
  bind.add(br, "--delta", &RunConfig::delta, "Order, delta > (n-1)/2");
  bind.add(br, "--r", &RunConfig::radius, "Scale r > 0");
  bind.flag(br, "--maximal", &RunConfig::maximal, "sup over the radius family instead of one r");

  auto* schr = app.add_subcommand("schrodinger", "V^gamma (-Delta+V)^-beta f or its gradient form");
  common(schr);
  function_io(schr);
  bind.add(schr, "--mode", &RunConfig::mode, "t1 | t2");
  bind.add(schr, "--gamma", &RunConfig::gamma, "Potential power");
  bind.add(schr, "--beta", &RunConfig::beta, "Resolvent power");
  bind.add(schr, "--potential", &RunConfig::potential, "one | smooth | GridFunction file");

  auto* verify = app.add_subcommand("verify", "Run verification suites");
  common(verify);
  bind.add(verify, "--suite", &RunConfig::suites, "all | sandwich | lemma21 | lemma22 | lemma23 | thm31 | thm32 | cond31 | section4")
      ->delimiter(',')
      ->expected(0, CLI::detail::expected_max_vector_size);
  bind.add(verify, "--p", &RunConfig::p_values, "p lattice of the thm31 suite (1 < p < inf)")->delimiter(',');
  bind.add(verify, "--report", &RunConfig::report, "Report file (.json or .csv)");
  bind.add(verify, "--format", &RunConfig::format, "json | csv");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitPass : kExitUsage;
  }

  try {
    RunConfig config;
    if (!config_path.empty()) {
      config = lomo::load_config(config_path);
      if (!config.subcommand.empty() && config.subcommand != app.get_subcommands().front()->get_name()) {
        throw lomo::ConfigError("config " + config_path + " is for subcommand '" + config.subcommand + "'");
      }
    }
    config.subcommand = app.get_subcommands().front()->get_name();
    bind.apply(config);
    if (config.subcommand == "verify") {
      // `--suite ""` is an explicit empty selection; no flag at all means every suite
      std::erase(config.suites, std::string{});
      if (config.suites.empty() && verify->get_option("--suite")->count() == 0 && config_path.empty()) {
        config.suites = {"all"};
      }
    }
    lomo::validate(config);
    if (!dump_path.empty()) {
      lomo::save_config(dump_path, config);
      return kExitPass;
    }
    return run(config);
  } catch (const std::exception& e) {
    std::cerr << "lomo: error: " << e.what() << '\n';
    return kExitUsage;
  }
}
