#include "doctest.h"

#include <filesystem>
#include <fstream>

#include "lomo/config.hpp"

using namespace lomo;
using nlohmann::json;

namespace {

RunConfig verify_config() {
  RunConfig c;
  c.subcommand = "verify";
  c.suites = {"lemma21", "thm31"};
  return c;
}

}  // namespace

TEST_CASE("RunConfig JSON round trip") {
  RunConfig c = verify_config();
  c.dim = 2;
  c.grid = 64;
  c.seed = 7;
  c.p_values = {1.5, 3.0};
  c.report = "out.csv";
  c.format = "csv";
  c.potential = "one";
  const json j = c;
  CHECK(j.get<RunConfig>() == c);
  CHECK(json::parse(j.dump()).get<RunConfig>() == c);

  const auto path = std::filesystem::temp_directory_path() / "lomo_config_roundtrip.json";
  save_config(path.string(), c);
  CHECK(load_config(path.string()) == c);
  std::filesystem::remove(path);
}

TEST_CASE("RunConfig parsing rejects unknown keys and bad types") {
  CHECK_THROWS_WITH_AS(json({{"subcommand", "norm"}, {"colour", 1}}).get<RunConfig>(),
                       doctest::Contains("unknown key 'colour'"), ConfigError);
  CHECK_THROWS_AS(json({{"grid", "large"}}).get<RunConfig>(), ConfigError);
  CHECK_THROWS_AS(json::array().get<RunConfig>(), ConfigError);
  // missing keys keep their defaults
  const RunConfig partial = json({{"subcommand", "maximal"}, {"alpha", 0.5}}).get<RunConfig>();
  CHECK(partial.alpha == 0.5);
  CHECK(partial.grid == RunConfig{}.grid);
}

TEST_CASE("validation names the violated hypothesis") {
  RunConfig c = verify_config();
  CHECK_NOTHROW(validate(c));
  c.p_values = {0.9};
  CHECK_THROWS_WITH_AS(validate(c), doctest::Contains("1 < p < inf"), ConfigError);

  c = verify_config();
  c.suites.clear();
  CHECK_THROWS_WITH_AS(validate(c), doctest::Contains("empty suite selection"), ConfigError);
  c.suites = {"lemma77"};
  CHECK_THROWS_AS(validate(c), ConfigError);

  RunConfig norm;
  norm.subcommand = "norm";
  norm.space = "lorentz";
  CHECK_NOTHROW(validate(norm));
  norm.p = 0.5;
  CHECK_THROWS_WITH(validate(norm), doctest::Contains("1 <= p"));

  RunConfig m;
  m.subcommand = "maximal";
  m.alpha = 1.0;
  CHECK_THROWS_WITH(validate(m), doctest::Contains("0 <= alpha < n"));
  m.dim = 2;
  m.grid = 32;
  CHECK_NOTHROW(validate(m));
  m.grid = 30;
  CHECK_THROWS_AS(validate(m), ConfigError);

  RunConfig br;
  br.subcommand = "bochner-riesz";
  br.dim = 3;
  br.grid = 8;
  br.delta = 1.0;
  CHECK_THROWS_WITH(validate(br), doctest::Contains("delta > (n-1)/2"));

  RunConfig s;
  s.subcommand = "schrodinger";
  s.mode = "t2";
  s.gamma = 0.25;
  s.beta = 0.5;
  CHECK_THROWS_AS(validate(s), ConfigError);
  s.beta = 0.75;
  CHECK_NOTHROW(validate(s));

  RunConfig unknown;
  unknown.subcommand = "plot";
  CHECK_THROWS_AS(validate(unknown), ConfigError);
}

TEST_CASE("verify options mirror the config") {
  RunConfig c = verify_config();
  c.dim = 2;
  c.grid = 32;
  c.p_values = {2.0};
  const auto o = verify_options(c);
  CHECK(o.dim == 2);
  CHECK(o.grid == 32);
  CHECK(o.p_values == std::vector<double>{2.0});
}
