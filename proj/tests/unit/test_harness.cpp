#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "intwine/diagnostics/constants.hpp"
#include "intwine/errors.hpp"
#include "intwine/harness/config.hpp"
#include "intwine/harness/scenario.hpp"
#include "intwine/spectral/operators.hpp"

using namespace intwine;
using namespace intwine::harness;
namespace fs = std::filesystem;

namespace {

const char* kSmall = R"([run]
scenario = self_sync
dt = 0.01
t_end = 2
sample_every = 0.5
seed = 3

[grid]
n = 16

[physics]
nu = 0.2
K = 3

[matrix]
class = NudgeMut
mu1 = 2
mu2 = 1

[force1]
kind = steady
shape = kolmogorov
amplitude = 0.1
wavenumber = 1

[force2]
kind = same

[initial1]
kind = field
shape = random
kmax = 4
l2 = 0.3

[initial2]
kind = perturb
shape = random
kmin = 2
kmax = 5
l2 = 0.05
)";

std::string with(std::string text, const std::string& from, const std::string& to) {
  const auto p = text.find(from);
  if (p == std::string::npos) throw std::logic_error("pattern not found: " + from);
  return text.replace(p, from.size(), to);
}

RunOptions opts() {
  RunOptions o;
  o.threads = 2;
  o.constants = diagnostics::default_constants();
  return o;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

}  // namespace

TEST(Config, ParsesAndRoundTrips) {
  const ExperimentConfig c = parse_config_text(kSmall);
  EXPECT_EQ(c.scenario, ScenarioKind::SelfSync);
  EXPECT_EQ(c.n, 16);
  EXPECT_EQ(c.K, 3.0);
  EXPECT_EQ(c.matrix.cls(), dynamics::MatrixClass::NudgeMut);
  EXPECT_EQ(c.force2.kind, ForceKind::Same);
  EXPECT_EQ(c.initial2.kind, InitialKind::Perturb);
  EXPECT_EQ(parse_config_text(serialize_config(c)), c);
  for (const char* name : {"self_sync_nudge.ini", "determining_modes.ini"}) {
    const ExperimentConfig s = parse_config(std::string(INTWINE_CONFIG_DIR) + "/" + name);
    EXPECT_EQ(parse_config_text(serialize_config(s)), s) << name;
  }
}

TEST(Config, ThetaSumReportsLine) {
  try {
    parse_config(std::string(INTWINE_TEST_DATA) + "/bad_theta.ini");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 15);  // the class line
    EXPECT_NE(std::string(e.what()).find("theta1 + theta2 = 1"), std::string::npos);
  }
}

TEST(Config, StrictKeysAndSections) {
  EXPECT_THROW(parse_config_text(with(kSmall, "nu = 0.2", "nu = 0.2\nviscosity = 1")), ParseError);
  EXPECT_THROW(parse_config_text(std::string(kSmall) + "\n[extra]\na = 1\n"), ParseError);
  EXPECT_THROW(parse_config_text(with(kSmall, "dt = 0.01", "dt = -1")), ParseError);
  EXPECT_THROW(parse_config_text(with(kSmall, "mu2 = 1", "mu2 = x")), ParseError);
  EXPECT_THROW(parse_config_text(with(kSmall, "class = NudgeMut", "class = Nudge")), ParseError);
  EXPECT_THROW(parse_config_text(with(kSmall, "[force2]\nkind = same", "[force2]\nkind = steady\nshape = zero\n[force3]\nkind = same")),
               ParseError);
  // NudgeSym needs mu1 >= mu2.
  EXPECT_THROW(parse_config_text(with(with(kSmall, "class = NudgeMut", "class = NudgeSym"), "mu1 = 2", "mu1 = 0.5")),
               ParseError);
  // A second copy cannot be a perturbation of itself in [initial1].
  EXPECT_THROW(parse_config_text(with(kSmall, "[initial1]\nkind = field", "[initial1]\nkind = perturb")), ParseError);
}

TEST(Config, ScenarioRules) {
  EXPECT_THROW(parse_config_text(with(kSmall, "scenario = self_sync", "scenario = reconstruction_nudge")), ParseError);
  const std::string rec = with(with(kSmall, "scenario = self_sync", "scenario = reconstruction_nudge"), "mu1 = 2", "mu1 = 0");
  EXPECT_EQ(parse_config_text(rec).scenario, ScenarioKind::ReconstructionNudge);
  EXPECT_THROW(parse_config_text(with(kSmall, "scenario = self_sync", "scenario = fdss_determining_modes")), ParseError);
  EXPECT_THROW(parse_config_text(with(kSmall, "scenario = self_sync", "scenario = bogus")), ParseError);
}

TEST(Scenario, SmallSelfSyncIsDeterministic) {
  const ExperimentConfig c = parse_config_text(kSmall);
  const ScenarioResult a = run_scenario(c, opts());
  const ScenarioResult b = run_scenario(c, opts());
  ASSERT_EQ(a.series.size(), 1u);
  ASSERT_EQ(a.series[0].records.size(), 5u);
  EXPECT_EQ(diagnostics::csv_header() + [&] {
    std::string s;
    for (const auto& r : a.series[0].records) s += diagnostics::csv_row(r);
    return s;
  }(), diagnostics::csv_header() + [&] {
    std::string s;
    for (const auto& r : b.series[0].records) s += diagnostics::csv_row(r);
    return s;
  }());
  EXPECT_FALSE(a.blowup);
  EXPECT_FALSE(a.reports.empty());
  const auto it = std::find_if(a.verdicts.begin(), a.verdicts.end(), [](const Verdict& v) { return v.name == "l2_w"; });
  ASSERT_NE(it, a.verdicts.end());
  EXPECT_LT(it->ratio, 1.0);
}

TEST(Scenario, WriteOutputs) {
  const ExperimentConfig c = parse_config_text(kSmall);
  const ScenarioResult r = run_scenario(c, opts());
  const fs::path dir = fs::temp_directory_path() / "intwine_test_outputs";
  fs::remove_all(dir);
  write_outputs(r, c, opts().constants, dir.string());
  for (const char* f : {"config.ini", "constants.ini", "series.csv", "reports.txt", "reports.jsonl", "final.ckpt",
                        "manifest.json"}) {
    EXPECT_TRUE(fs::exists(dir / f)) << f;
  }
  const auto man = nlohmann::json::parse(slurp(dir / "manifest.json"));
  EXPECT_EQ(man["scenario"], "self_sync");
  EXPECT_EQ(man["seed"], 3);
  EXPECT_EQ(man["grid_n"], 16);
  EXPECT_EQ(man["blowup"], false);
  EXPECT_EQ(parse_config(dir / "config.ini"), c);
  const std::string csv = slurp(dir / "series.csv");
  EXPECT_EQ(csv.substr(0, diagnostics::csv_header().size()), diagnostics::csv_header());
  std::istringstream lines(slurp(dir / "reports.jsonl"));
  std::string line;
  int n = 0;
  while (std::getline(lines, line)) {
    EXPECT_TRUE(nlohmann::json::accept(line)) << line;
    ++n;
  }
  EXPECT_GT(n, 0);
  fs::remove_all(dir);
}

TEST(Scenario, ResolveThreads) {
  EXPECT_EQ(resolve_threads(3), 3);
  ::setenv("INTWINE_THREADS", "5", 1);
  EXPECT_EQ(resolve_threads(0), 5);
  ::unsetenv("INTWINE_THREADS");
  EXPECT_GE(resolve_threads(0), 1);
}

TEST(Scenario, SweepRecordsFailuresPerPoint) {
  std::string s = with(kSmall, "scenario = self_sync", "scenario = regime_sweep\nfold = off\ncfl = 1e9");
  s += "\n[sweep]\nK = 3\nparam1 = 1 300\nparam2 = 1\n";
  const ScenarioResult r = run_scenario(parse_config_text(s), opts());
  ASSERT_EQ(r.table.size(), 2u);
  auto status = [](const TableRow& row) {
    for (const auto& [k, v] : row.cells)
      if (k == "status") return v;
    return std::string();
  };
  EXPECT_EQ(status(r.table[0]), "ok");
  EXPECT_EQ(status(r.table[1]).rfind("blowup at t = ", 0), 0u) << status(r.table[1]);
  // Negative theta2 for DRMut is an invalid point, not an abort.
  std::string d = with(with(s, "class = NudgeMut\nmu1 = 2\nmu2 = 1", "class = DRMut\ntheta1 = 0.5\ntheta2 = 0.5"),
                       "param1 = 1 300\nparam2 = 1", "param1 = 0.5 1.5");
  const ScenarioResult q = run_scenario(parse_config_text(d), opts());
  ASSERT_EQ(q.table.size(), 2u);
  EXPECT_EQ(status(q.table[0]), "ok");
  EXPECT_EQ(status(q.table[1]).rfind("invalid point", 0), 0u) << status(q.table[1]);
}

TEST(Scenario, ReconstructionFromLowModes) {
  std::string s = with(with(kSmall, "scenario = self_sync", "scenario = reconstruction_nudge"), "mu1 = 2", "mu1 = 0");
  s = with(s, "mu2 = 1", "mu2 = 5");
  s = with(s, "t_end = 2", "t_end = 10");
  const ScenarioResult r = run_scenario(parse_config_text(s), opts());
  const auto it = std::find_if(r.verdicts.begin(), r.verdicts.end(), [](const Verdict& v) { return v.name == "l2_w"; });
  ASSERT_NE(it, r.verdicts.end());
  EXPECT_LT(it->ratio, 1e-3);
}

TEST(Scenario, VerdictFor) {
  std::vector<double> t, x;
  for (int i = 0; i <= 40; ++i) {
    t.push_back(0.25 * i);
    x.push_back(std::exp(-3.0 * t.back()));
  }
  const Verdict v = verdict_for("x", t, x, 0.5, 1e-6);
  EXPECT_TRUE(v.decayed);
  EXPECT_DOUBLE_EQ(v.ratio, x.back());
  EXPECT_NEAR(v.fit.rate, -3.0, 0.03);
  const Verdict short_series = verdict_for("x", {0.0, 1.0}, {1.0, 0.5}, 0.5, 1e-6);
  EXPECT_FALSE(short_series.decayed);
  EXPECT_EQ(short_series.ratio, 0.5);
}
