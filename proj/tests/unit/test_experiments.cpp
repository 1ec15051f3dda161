#include <algorithm>
#include <sstream>
#include <string>

#include "doctest.h"
#include "realitykit/errors.hpp"
#include "realitykit/experiments.hpp"

using namespace realitykit;

TEST_CASE("config validation rejects out-of-range grids") {
  auto c = default_config("werner-sweep");
  CHECK_NOTHROW(c.validate());
  c.alphas = {2.0};
  CHECK_THROWS_AS(c.validate(), ConfigError);
  c.mode = Mode::Exploratory;
  CHECK_NOTHROW(c.validate());

  auto t = default_config("tsallis-sweep");
  t.qs = {2.5};
  CHECK_THROWS_AS(t.validate(), ConfigError);
  t.qs = {0.0};
  t.mode = Mode::Exploratory;
  CHECK_THROWS_AS(t.validate(), ConfigError);

  CHECK_THROWS_AS(default_config("nope"), ConfigError);
  auto s = default_config("werner-sweep");
  s.steps = 1;
  CHECK_THROWS_AS(s.validate(), ConfigError);
}

TEST_CASE("config hash follows the canonical rendering") {
  const auto a = default_config("werner-sweep");
  auto b = default_config("werner-sweep");
  CHECK(a.hash() == b.hash());
  b.out = "elsewhere.csv";  // output path is not part of the configuration
  CHECK(a.hash() == b.hash());
  b.seed += 1;
  CHECK(a.hash() != b.hash());
}

TEST_CASE("werner sweep CSV layout") {
  auto c = default_config("werner-sweep");
  c.steps = 11;
  c.alphas = {0.25, 0.5};
  const auto r = run_werner_sweep(c);
  CHECK(r.passed());
  const std::string csv = to_csv(r, c);
  std::istringstream in(csv);
  std::string line;
  std::getline(in, line);
  CHECK(line.rfind("# realitykit 0.1.0 seed=20210801 config_hash=", 0) == 0);
  std::string header;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    header = line;
    break;
  }
  CHECK(header == "eps,alpha,R_numeric,R_closed_form,abs_diff,monotone");
  CHECK(csv.find('\r') == std::string::npos);
  // eps = 0.1 rendered with 17 significant digits.
  CHECK(csv.find("\n0.10000000000000001,") != std::string::npos);
  const auto script = plot_script(r, "w.csv");
  CHECK(script.find("set datafile separator ','") != std::string::npos);
  CHECK(script.find("'w.csv'") != std::string::npos);
}

TEST_CASE("tsallis and mu sweeps pass their internal cross-checks on a coarse grid") {
  auto t = default_config("tsallis-sweep");
  t.steps = 6;
  CHECK(run_sweep(t).passed());
  auto m = default_config("mu-sweep");
  m.steps = 4;
  m.thetas = {0.0, 1.0};
  m.phis = {0.0, 1.2};
  CHECK(run_sweep(m).passed());
}

TEST_CASE("updown gap reproduces the reported extremum with the derived chi") {
  auto c = default_config("updown-gap");
  c.steps = 99;
  const auto r = run_updown_gap(c);
  CHECK(r.passed());
  double best = -1.0;
  for (const auto& row : r.rows) best = std::max(best, row[5]);
  CHECK(best == doctest::Approx(0.00437605).epsilon(1e-5));
}
