// Acceptance run: one PASS/FAIL line per criterion.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "intwine/diagnostics/constants.hpp"
#include "intwine/diagnostics/series.hpp"
#include "intwine/dynamics/integrator.hpp"
#include "intwine/errors.hpp"
#include "intwine/harness/config.hpp"
#include "intwine/harness/scenario.hpp"
#include "intwine/harness/verify.hpp"

using namespace intwine;
using namespace intwine::harness;
using diagnostics::ConditionReport;
using dynamics::IntertwiningMatrix;
namespace fs = std::filesystem;

namespace {

int failures = 0;

void line(int id, bool pass, const std::string& what) {
  std::printf("%s criterion %d: %s\n", pass ? "PASS" : "FAIL", id, what.c_str());
  std::fflush(stdout);
  if (!pass) ++failures;
}

std::string fmt(const char* f, double a) {
  char b[64];
  std::snprintf(b, sizeof b, f, a);
  return b;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

ExperimentConfig config(const char* name) {
  return parse_config(std::string(INTWINE_CONFIG_DIR) + "/" + name);
}

RunOptions options() {
  RunOptions o;
  o.threads = 1;
  o.constants = diagnostics::default_constants();
  return o;
}

const Verdict* verdict(const ScenarioResult& r, const std::string& name) {
  for (const auto& v : r.verdicts)
    if (v.name == name) return &v;
  return nullptr;
}

const ConditionReport* report(const ScenarioResult& r, const std::string& name) {
  for (const auto& c : r.reports)
    if (c.name == name) return &c;
  return nullptr;
}

std::string cell(const TableRow& row, const std::string& key) {
  for (const auto& [k, v] : row.cells)
    if (k == key) return v;
  return "";
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

// Suite checks whose name starts with prefix; all must pass.
bool suite_pass(const std::vector<Check>& cs, const std::string& prefix, double& worst_ratio) {
  bool ok = true;
  worst_ratio = 0.0;
  for (const auto& c : cs) {
    if (c.name.rfind(prefix, 0) != 0) continue;
    ok = ok && c.pass;
    worst_ratio = std::max(worst_ratio, c.value / c.tolerance);
  }
  return ok;
}

template <class F>
void guarded(int id, F&& f) {
  try {
    f();
  } catch (const std::exception& e) {
    line(id, false, std::string("exception: ") + e.what());
  }
}

struct Bounds {
  int checked = 0;
  int violated = 0;
  std::string detail;
  void add(const std::string& run, const ScenarioResult& r) {
    for (const auto& c : r.reports) {
      if (c.name.rfind("bound_", 0) != 0) continue;
      ++checked;
      if (!c.satisfied) {
        ++violated;
        detail += " " + run + "/" + c.name + " margin " + fmt("%.3g", c.margin);
      }
    }
  }
};

}  // namespace

int main() {
  const auto start = std::chrono::steady_clock::now();
  Bounds bounds;

  guarded(1, [] {
    const auto t0 = std::chrono::steady_clock::now();
    const auto cs = verify_identities();
    const double sec = seconds_since(t0);
    bool ok = true;
    double max_rel = 0.0;
    for (const auto& c : cs) {
      ok = ok && c.pass && c.tolerance <= 1e-10;
      max_rel = std::max(max_rel, c.value);
    }
    line(1, ok && !cs.empty() && sec < 30.0,
         std::to_string(cs.size()) + " identity checks, max relative " + fmt("%.2e", max_rel) +
             " <= 1e-10, " + fmt("%.2f", sec) + " s < 30 s");
  });

  guarded(2, [] {
    const auto t0 = std::chrono::steady_clock::now();
    const auto cs = verify_oracle();
    const double sec = seconds_since(t0);
    double rb = 0.0, rt = 0.0;
    const bool b = suite_pass(cs, "B_vs_dense", rb);
    const bool t = suite_pass(cs, "trajectory_", rt);
    std::string vals;
    for (const auto& c : cs) vals += " " + c.name + "=" + fmt("%.2e", c.value);
    line(2, b && t && sec < 120.0, "dense oracle agreement" + vals + ", " + fmt("%.2f", sec) + " s < 120 s");
  });

  guarded(3, [] {
    const auto cs = verify_heat();
    bool ok = !cs.empty();
    std::string vals;
    for (const auto& c : cs) {
      ok = ok && c.pass;
      vals += " " + c.name + "=" + fmt("%.3g", c.value);
    }
    line(3, ok, "heat law under direct replacement:" + vals);
  });

  ScenarioResult nudge;
  guarded(4, [&] {
    const auto t0 = std::chrono::steady_clock::now();
    nudge = run_scenario(config("self_sync_nudge.ini"), options());
    const double sec = seconds_since(t0);
    const ScenarioResult control = run_scenario(config("self_sync_control.ini"), options());
    const Verdict* v = verdict(nudge, "l2_w");
    const Verdict* vc = verdict(control, "l2_w");
    const ConditionReport* ss = report(nudge, "nudge_ss");
    const ConditionReport* fk = report(nudge, "nudge_fdss_K");
    const bool ok = v && vc && ss && fk && ss->satisfied && fk->satisfied && v->ratio <= 1e-6 &&
                    !(vc->ratio <= 1e-6) && sec < 300.0;
    line(4, ok,
         "nudging |w(50)|/|w(0)| = " + fmt("%.3e", v ? v->ratio : NAN) + " <= 1e-6, control ratio " +
             fmt("%.3e", vc ? vc->ratio : NAN) + " > 1e-6, conditions " +
             (ss && ss->satisfied ? "nudge_ss ok" : "nudge_ss violated") + ", " +
             (fk && fk->satisfied ? "nudge_fdss_K ok" : "nudge_fdss_K violated") + ", " + fmt("%.1f", sec) +
             " s < 300 s");
    bounds.add("nudge", nudge);
  });

  guarded(5, [&] {
    const ExperimentConfig base = config("self_sync_dr.ini");
    const std::pair<const char*, IntertwiningMatrix> cases[] = {
        {"DRMut(0,1)", IntertwiningMatrix::dr_mut(0.0, 1.0)},
        {"DRMut(1/4,3/4)", IntertwiningMatrix::dr_mut(0.25, 0.75)},
        {"DRMut(1/2,1/2)", IntertwiningMatrix::dr_mut(0.5, 0.5)},
        {"DRSym(1,0)", IntertwiningMatrix::dr_sym(1.0, 0.0)},
        {"DRSym(1/2,1/2)", IntertwiningMatrix::dr_sym(0.5, 0.5)},
    };
    bool ok = true;
    std::string detail;
    for (const auto& [name, m] : cases) {
      ExperimentConfig c = base;
      c.matrix = m;
      const ScenarioResult r = run_scenario(c, options());
      const Verdict* v = verdict(r, "l2_w");
      const ConditionReport* k = report(r, "dr_ss_K");
      const ConditionReport* h = report(r, "low_mode_heat_match");
      const bool pass = v && k && h && v->ratio <= 1e-6 && k->satisfied && h->satisfied;
      ok = ok && pass;
      detail += std::string(" ") + name + (pass ? "" : "[fail]") + " ratio " + fmt("%.2e", v ? v->ratio : NAN) +
                " heat " + fmt("%.1e", h ? h->lhs : NAN);
      bounds.add(name, r);
    }
    line(5, ok, "direct replacement, K per condition, P_K w on heat law:" + detail);
  });

  guarded(6, [&] {
    line(6, bounds.checked > 0 && bounds.violated == 0,
         std::to_string(bounds.checked) + " tail-sup bounds checked, " + std::to_string(bounds.violated) +
             " violated" + bounds.detail);
  });

  guarded(7, [] {
    const ExperimentConfig base = config("budget_nudge.ini");
    std::vector<double> res;
    double slack = INFINITY;
    for (double dt : {0.02, 0.01, 0.005}) {
      ExperimentConfig c = base;
      c.dt = dt;
      diagnostics::SeriesRecorder rec(true);
      dynamics::Stepper(stepper_options(c)).integrate(build_state(c), c.t_end, c.sample_every, &rec);
      res.push_back(rec.budget().max_residual());
      slack = std::min(slack, rec.budget().min_apriori_relative_slack());
    }
    const double o1 = std::log2(res[0] / res[1]), o2 = std::log2(res[1] / res[2]);
    const bool ok = std::abs(o1 - 2.0) <= 0.2 && std::abs(o2 - 2.0) <= 0.2 && slack >= -1e-6;
    line(7, ok,
         "budget residual " + fmt("%.3e", res[0]) + " " + fmt("%.3e", res[1]) + " " + fmt("%.3e", res[2]) +
             ", orders " + fmt("%.3f", o1) + " " + fmt("%.3f", o2) + " in 2 +- 0.2, a priori min slack " +
             fmt("%.3e", slack) + " >= -1e-6");
  });

  guarded(8, [] {
    const ScenarioResult r = run_scenario(config("determining_modes.ini"), options());
    bool ok = r.table.size() >= 3;
    std::string detail;
    for (const auto& row : r.table) {
      const bool informative = cell(row, "vacuous") == "false" && cell(row, "threshold_N") != "none" &&
                               cell(row, "full_decayed") == "true";
      ok = ok && informative;
      detail += " [g=" + cell(row, "grashof") + " N*=" + cell(row, "threshold_N") +
                " full_ratio=" + cell(row, "full_ratio") + "]";
    }
    line(8, ok, "determining-modes threshold vs Grashof:" + detail);
  });

  guarded(9, [&] {
    const ExperimentConfig c = config("self_sync_nudge.ini");
    const fs::path a = fs::temp_directory_path() / "intwine_accept_a";
    const fs::path b = fs::temp_directory_path() / "intwine_accept_b";
    fs::remove_all(a);
    fs::remove_all(b);
    if (nudge.series.empty()) nudge = run_scenario(c, options());
    write_outputs(nudge, c, options().constants, a.string());
    write_outputs(run_scenario(c, options()), c, options().constants, b.string());
    const std::string sa = slurp(a / "series.csv"), sb = slurp(b / "series.csv");
    line(9, !sa.empty() && sa == sb,
         "repeated seeded runs give byte-identical series.csv (" + std::to_string(sa.size()) + " bytes)");
    fs::remove_all(a);
    fs::remove_all(b);
  });

  std::printf("%d criteria failed, %.1f s total\n", failures, seconds_since(start));
  return failures == 0 ? 0 : 1;
}
