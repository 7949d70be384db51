#include "intwine/harness/scenario.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <map>
#include <mutex>
#include <thread>

#include <nlohmann/json.hpp>

#include "intwine/diagnostics/bounds.hpp"
#include "intwine/diagnostics/grashof.hpp"
#include "intwine/diagnostics/heat.hpp"
#include "intwine/dynamics/checkpoint.hpp"
#include "intwine/errors.hpp"
#include "intwine/spectral/operators.hpp"
#include "intwine/spectral/random.hpp"
#include "intwine/util/ini.hpp"

namespace intwine::harness {

using diagnostics::BoundFormula;
using diagnostics::ConditionReport;
using diagnostics::ConstantsConfig;
using diagnostics::GrashofSet;
using diagnostics::TimeSeriesRecord;
using dynamics::Forcing;
using dynamics::ForcingKind;
using dynamics::IntertwinedState;
using dynamics::IntertwiningMatrix;
using dynamics::MatrixClass;
using spectral::SpectralField;
namespace fs = std::filesystem;

namespace {

class MultiSink : public dynamics::Sink {
 public:
  void add(dynamics::Sink* s) { sinks_.push_back(s); }
  void on_step(const IntertwinedState& a, const IntertwinedState& b) override {
    for (auto* s : sinks_) s->on_step(a, b);
  }
  void on_sample(const IntertwinedState& s) override {
    for (auto* k : sinks_) k->on_sample(s);
  }

 private:
  std::vector<dynamics::Sink*> sinks_;
};

class LowModeCapture : public dynamics::Sink {
 public:
  void on_sample(const IntertwinedState& s) override {
    samples.push_back({s.t, spectral::project_low(s.v1 - s.v2, s.K)});
  }
  std::vector<diagnostics::HeatSample> samples;
};

class CutoffSeries : public dynamics::Sink {
 public:
  explicit CutoffSeries(std::vector<double> N) : N_(std::move(N)), values(N_.size()) {}
  void on_sample(const IntertwinedState& s) override {
    const SpectralField w = s.v1 - s.v2;
    t.push_back(s.t);
    for (std::size_t i = 0; i < N_.size(); ++i) {
      values[i].push_back(spectral::l2_norm(spectral::project_low(w, N_[i])));
    }
  }
  std::vector<double> N_;
  std::vector<double> t;
  std::vector<std::vector<double>> values;
};

std::string fmt(double v) { return util::format_double(v); }

template <class F>
std::vector<double> column(const std::vector<TimeSeriesRecord>& r, F f) {
  std::vector<double> out;
  out.reserve(r.size());
  for (const auto& x : r) out.push_back(f(x));
  return out;
}

std::vector<double> tail(const std::vector<double>& x, double fraction) {
  const auto n = x.size();
  const auto k = static_cast<std::size_t>(std::ceil(fraction * static_cast<double>(n)));
  return {x.end() - static_cast<std::ptrdiff_t>(std::min(n, std::max<std::size_t>(k, 1))), x.end()};
}

// h = P_K(g1 - g2) as constant + exp(-alpha t) decaying, when representable.
std::optional<oracle::HeatForcing> heat_forcing(const IntertwinedState& s) {
  const spectral::Grid& g = s.grid();
  oracle::HeatForcing h(g);
  if (s.g1 == s.g2) return h;
  auto parts = [](const Forcing& f) -> std::optional<std::pair<SpectralField, std::optional<SpectralField>>> {
    if (f.kind() == ForcingKind::Steady) return std::make_pair(f.base(), std::nullopt);
    if (f.kind() == ForcingKind::DecayingPairDelta) return std::make_pair(f.base(), std::optional(f.delta()));
    return std::nullopt;
  };
  const auto a = parts(*s.g1);
  const auto b = parts(*s.g2);
  if (!a || !b) return std::nullopt;
  h.constant = spectral::project_low(a->first - b->first, s.K);
  if (a->second && b->second) {
    if (s.g1->alpha() != s.g2->alpha()) return std::nullopt;
    h.decaying = spectral::project_low(*a->second - *b->second, s.K);
    h.alpha = s.g1->alpha();
  } else if (a->second) {
    h.decaying = spectral::project_low(*a->second, s.K);
    h.alpha = s.g1->alpha();
  } else if (b->second) {
    h.decaying = spectral::project_low(*b->second, s.K);
    h.decaying *= -1.0;
    h.alpha = s.g2->alpha();
  }
  return h;
}

struct SingleRun {
  std::vector<TimeSeriesRecord> records;
  std::optional<IntertwinedState> final_state;
  std::vector<ConditionReport> reports;
  std::vector<Verdict> verdicts;
  std::vector<std::string> notes;
  GrashofSet grashof;
  double m_measured = 0.0;
  double max_budget_residual = 0.0;
  double apriori_slack = 1.0;
  double heat_error = -1.0;
};

void theory_reports(const ExperimentConfig& c, const ConstantsConfig& k, const IntertwinedState& s0,
                    SingleRun& run) {
  const auto& m = s0.matrix;
  const GrashofSet& g = run.grashof;
  const double mm = run.m_measured;
  auto& out = run.reports;
  const auto& rec = run.records;
  const auto tail_pair = tail(column(rec, [](const auto& r) { return std::hypot(r.h1_v1, r.h1_v2); }),
                              c.tail_fraction);
  diagnostics::BoundInputs bi;
  bi.nu = c.nu;
  bi.K = c.K;
  bi.grashof = g;
  auto bound = [&](BoundFormula f, const std::vector<double>& series) {
    out.push_back(diagnostics::check_uniform_bound(series, f, m, bi));
  };
  if (m.is_nudging()) {
    out.push_back(diagnostics::check_nudge_fdss_condition(c.K, mm, k));
    out.push_back(diagnostics::check_nudge_ss_condition(c.K, m.mu1(), m.mu2(), mm, c.nu, k));
    out.push_back(diagnostics::check_K_log_condition(c.K, g.g, k.C0));
    if (m.cls() == MatrixClass::NudgeMut && m.mu1() > 0.0 && m.mu2() > 0.0) {
      bound(BoundFormula::NudgeMutRatio, tail_pair);
    }
    if (m.cls() == MatrixClass::NudgeSym) bound(BoundFormula::NudgeSymMin, tail_pair);
  } else if (m.is_direct_replacement()) {
    out.push_back(diagnostics::check_dr_condition(c.K, mm, k));
    const double t1 = m.theta1();
    const double t2 = m.theta2();
    if (m.cls() == MatrixClass::DRMut) {
      out.push_back(diagnostics::check_mut_dr_K(c.K, g.g_theta, k));
      const auto tw = tail(column(rec,
                                  [](const auto& r) {
                                    return std::hypot(r.h1_vtheta.value_or(0.0), r.h1_wtheta.value_or(0.0));
                                  }),
                           c.tail_fraction);
      bound(BoundFormula::DRMutTwisted, tw);
    } else {
      diagnostics::ThetaRegimeInputs ti;
      ti.theta1 = t1;
      ti.theta2 = t2;
      ti.K = c.K;
      ti.m0_frak = std::hypot(spectral::h1_norm(s0.v1), spectral::h1_norm(s0.v2)) / c.nu;
      ti.grashof = g;
      const auto v = dynamics::derived_views(s0, false);
      ti.r0_over_nu = spectral::h1_norm(v.r) / c.nu;
      const double z = spectral::h1_norm(v.z), w = spectral::h1_norm(v.w);
      ti.zw0_over_nu2 = (z * z + w * w) / (c.nu * c.nu);
      for (auto& r : diagnostics::check_theta_regime(ti, k)) out.push_back(std::move(r));
      if (t1 == 1.0) {
        out.push_back(diagnostics::check_theta1_K(c.K, g.k_frak, k));
        out.push_back(diagnostics::check_small_theta2_K_refined(c.K, g.k_frak, k));
      }
    }
    if (t1 == 1.0 && m.cls() == MatrixClass::DRSym) {
      bound(BoundFormula::DRTheta1, tail_pair);
      bound(BoundFormula::DRSmallTheta2, tail_pair);
    }
    if (t1 == 0.5 && t2 == 0.5) {
      bound(BoundFormula::DRHalf, tail_pair);
      bound(BoundFormula::DRBalanced, tail_pair);
    }
  }
}

SingleRun single_run(const ExperimentConfig& c, const ConstantsConfig& k) {
  SingleRun run;
  IntertwinedState s0 = build_state(c);
  const bool dr = s0.matrix.is_direct_replacement();
  diagnostics::SeriesRecorder rec(s0.matrix.is_nudging());
  LowModeCapture low;
  MultiSink sink;
  sink.add(&rec);
  const auto hf = dr ? heat_forcing(s0) : std::nullopt;
  if (hf) sink.add(&low);
  dynamics::Stepper stepper(stepper_options(c));
  run.final_state = stepper.integrate(s0, c.t_end, c.sample_every, &sink);
  run.records = rec.records();

  diagnostics::GrashofOptions go;
  go.t0 = 0.0;
  go.t_end = c.t_end;
  go.sample_dt = c.sample_every;
  run.grashof = diagnostics::compute_grashof(s0, go);
  run.m_measured = diagnostics::measured_m_frak(
      tail(column(run.records, [](const auto& r) { return r.h1_v1; }), c.tail_fraction),
      tail(column(run.records, [](const auto& r) { return r.h1_v2; }), c.tail_fraction), c.nu);
  run.grashof.m_frak = run.m_measured;

  const auto t = column(run.records, [](const auto& r) { return r.t; });
  if (run.records.size() >= 2) {
    const auto l2w = column(run.records, [](const auto& r) { return r.l2_w; });
    const auto h1w = column(run.records, [](const auto& r) { return r.h1_w; });
    run.verdicts.push_back(verdict_for("l2_w", t, l2w, c.tail_fraction, c.decay_ratio));
    run.verdicts.push_back(verdict_for("h1_w", t, h1w, c.tail_fraction, c.decay_ratio));
  }
  theory_reports(c, k, s0, run);
  if (rec.budget().steps() > 0) {
    run.max_budget_residual = rec.budget().max_residual();
    run.apriori_slack = rec.budget().min_apriori_relative_slack();
    run.notes.push_back("energy budget max step residual " + fmt(run.max_budget_residual) +
                        ", a priori L2 min relative slack " + fmt(run.apriori_slack));
  }
  if (hf && !low.samples.empty()) {
    run.heat_error = diagnostics::heat_compare(low.samples, *hf, c.nu);
    double scale = 0.0;
    for (const auto& x : low.samples) scale = std::max(scale, spectral::l2_norm(x.p));
    run.reports.push_back(diagnostics::make_report(
        "low_mode_heat_match", run.heat_error, 1e-6 * std::max(scale, 1e-300),
        diagnostics::Orientation::LessEqual, "max |P_K w - heat_exact| <= 1e-6 sup |P_K w|"));
  } else if (dr) {
    run.notes.push_back("low-mode heat comparison skipped: force difference is not steady or exponentially decaying");
  }
  return run;
}

void append_single(ScenarioResult& out, const std::string& name, SingleRun&& r) {
  const std::string prefix = name == "series" ? "" : name + ":";
  out.series.push_back({name, std::move(r.records)});
  for (auto& x : r.reports) {
    x.name = prefix + x.name;
    out.reports.push_back(std::move(x));
  }
  for (auto& v : r.verdicts) {
    v.name = prefix + v.name;
    out.verdicts.push_back(std::move(v));
  }
  for (auto& n : r.notes) out.notes.push_back(prefix + n);
  if (r.final_state) out.finals.push_back(std::move(*r.final_state));
}

template <class F>
void parallel_for(std::size_t n, int threads, F f) {
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < n; i = next++) f(i);
  };
  const int T = std::max(1, std::min<int>(threads, static_cast<int>(n)));
  std::vector<std::thread> pool;
  for (int i = 1; i < T; ++i) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();
}

ScenarioResult run_fdss(const ExperimentConfig& c, const RunOptions& opt) {
  if (c.force1.kind != ForceKind::Steady || c.force1.base.shape != FieldShape::Kolmogorov) {
    throw ConfigInvalid("fdss_determining_modes needs a steady Kolmogorov [force1]");
  }
  if (c.force2.kind != ForceKind::Decaying || !c.force2.base_from_force1) {
    throw ConfigInvalid("fdss_determining_modes needs [force2] kind = decaying with base = force1");
  }
  if (c.modes_N.empty()) throw ConfigInvalid("fdss_determining_modes needs modes_N in [run]");
  std::vector<double> amps = c.sweep.amplitudes;
  if (amps.empty()) amps.push_back(c.force1.base.amplitude);
  std::vector<double> N = c.modes_N;
  std::sort(N.begin(), N.end());

  struct Point {
    double amplitude = 0.0, grashof = 0.0;
    std::vector<Verdict> low;
    Verdict full;
    std::vector<TimeSeriesRecord> records;
    std::optional<IntertwinedState> final_state;
    std::string error;
  };
  std::vector<Point> pts(amps.size());
  parallel_for(amps.size(), resolve_threads(opt.threads), [&](std::size_t i) {
    ExperimentConfig ci = c;
    ci.force1.base.amplitude = amps[i];
    ci.K = 0.0;
    ci.matrix = IntertwiningMatrix::nudge_mut(0.0, 0.0);
    Point& p = pts[i];
    p.amplitude = amps[i];
    try {
      IntertwinedState s0 = build_state(ci);
      diagnostics::SeriesRecorder rec;
      CutoffSeries cut(N);
      MultiSink sink;
      sink.add(&rec);
      sink.add(&cut);
      dynamics::Stepper stepper(stepper_options(ci));
      p.final_state = stepper.integrate(s0, ci.t_end, ci.sample_every, &sink);
      p.grashof = spectral::l2_norm(s0.g1->at(0.0)) / (ci.nu * ci.nu);
      for (std::size_t j = 0; j < N.size(); ++j) {
        p.low.push_back(verdict_for("l2_PNw_N" + fmt(N[j]), cut.t, cut.values[j], ci.tail_fraction,
                                    ci.decay_ratio));
      }
      const auto l2w = column(rec.records(), [](const auto& r) { return r.l2_w; });
      p.full = verdict_for("l2_w", cut.t, l2w, ci.tail_fraction, ci.decay_ratio);
      p.records = rec.records();
    } catch (const BlowupDetected& e) {
      p.error = std::string("blowup: ") + e.what();
    }
  });

  ScenarioResult out;
  out.kind = c.scenario;
  auto decayed = [](const Verdict& v) { return v.decayed; };
  for (std::size_t i = 0; i < pts.size(); ++i) {
    Point& p = pts[i];
    const std::string tag = "amp" + std::to_string(i);
    TableRow row;
    row.cells = {{"amplitude", fmt(p.amplitude)}, {"grashof", fmt(p.grashof)}};
    if (!p.error.empty()) {
      row.cells.push_back({"status", p.error});
      out.table.push_back(std::move(row));
      continue;
    }
    // Smallest N from which on low-mode decay always comes with full decay.
    double threshold = N.back();
    bool found = false;
    for (std::size_t j = N.size(); j-- > 0;) {
      const bool implication = !decayed(p.low[j]) || decayed(p.full);
      if (!implication) break;
      threshold = N[j];
      found = true;
    }
    bool any_low = false;
    for (const auto& v : p.low) any_low = any_low || decayed(v);
    row.cells.push_back({"full_decayed", decayed(p.full) ? "true" : "false"});
    row.cells.push_back({"full_ratio", fmt(p.full.ratio)});
    row.cells.push_back({"threshold_N", found ? fmt(threshold) : "none"});
    row.cells.push_back({"vacuous", any_low ? "false" : "true"});
    for (std::size_t j = 0; j < N.size(); ++j) {
      row.cells.push_back({"PN_decayed_N" + fmt(N[j]), decayed(p.low[j]) ? "true" : "false"});
    }
    out.table.push_back(std::move(row));
    for (auto& v : p.low) {
      v.name = tag + ":" + v.name;
      out.verdicts.push_back(v);
    }
    p.full.name = tag + ":" + p.full.name;
    out.verdicts.push_back(p.full);
    out.series.push_back({tag, std::move(p.records)});
    if (p.final_state) out.finals.push_back(std::move(*p.final_state));
  }
  out.notes.push_back(
      "threshold_N is an empirical finite-horizon proxy: the smallest examined N such that, for "
      "every examined N' >= N, decay of |P_N' (u1 - u2)| is accompanied by decay of |u1 - u2|");
  return out;
}

ScenarioResult run_sweep(const ExperimentConfig& c, const RunOptions& opt) {
  std::vector<double> Ks = c.sweep.K.empty() ? std::vector<double>{c.K} : c.sweep.K;
  std::vector<double> p1s = c.sweep.param1.empty() ? std::vector<double>{c.matrix.param1()} : c.sweep.param1;
  const bool dr = c.matrix.is_direct_replacement();
  struct Spec {
    double K, p1, p2;
  };
  std::vector<Spec> specs;
  for (double p1 : p1s) {
    std::vector<double> p2s;
    if (!c.sweep.param2.empty()) {
      p2s = c.sweep.param2;
    } else {
      p2s = {dr ? 1.0 - p1 : c.matrix.param2()};
    }
    for (double p2 : p2s) {
      for (double K : Ks) specs.push_back({K, p1, p2});
    }
  }
  struct Point {
    Spec spec;
    std::uint64_t seed = 0;
    std::optional<SingleRun> run;
    std::string error;
  };
  std::vector<Point> pts(specs.size());
  parallel_for(specs.size(), resolve_threads(opt.threads), [&](std::size_t i) {
    Point& p = pts[i];
    p.spec = specs[i];
    p.seed = spectral::derive_seed(c.seed, i);
    ExperimentConfig ci = c;
    ci.scenario = ScenarioKind::SelfSync;
    ci.K = p.spec.K;
    ci.seed = p.seed;
    try {
      auto entries = c.matrix.entries();
      std::array<double, 4> params = {p.spec.p1, p.spec.p2, entries[2], entries[3]};
      ci.matrix = IntertwiningMatrix::from_params(c.matrix.cls(), params, c.matrix.coupling());
      p.run = single_run(ci, opt.constants);
    } catch (const BlowupDetected& e) {
      p.error = std::string("blowup at t = ") + fmt(e.time()) + ": " + e.what();
    } catch (const PreconditionError& e) {
      p.error = std::string("invalid point: ") + e.what();
    }
  });

  ScenarioResult out;
  out.kind = c.scenario;
  std::map<std::pair<double, double>, std::vector<std::pair<double, bool>>> by_params;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    Point& p = pts[i];
    TableRow row;
    row.cells = {{"point", std::to_string(i)}, {"K", fmt(p.spec.K)}, {"param1", fmt(p.spec.p1)},
                 {"param2", fmt(p.spec.p2)}, {"seed", std::to_string(p.seed)}};
    if (!p.run) {
      row.cells.push_back({"status", p.error});
      by_params[{p.spec.p1, p.spec.p2}].push_back({p.spec.K, false});
      out.table.push_back(std::move(row));
      continue;
    }
    SingleRun& r = *p.run;
    const Verdict& v = r.verdicts.front();
    const bool dec = v.decayed;
    row.cells.push_back({"status", "ok"});
    row.cells.push_back({"decayed", dec ? "true" : "false"});
    row.cells.push_back({"ratio", fmt(v.ratio)});
    row.cells.push_back({"rate", fmt(v.fit.rate)});
    row.cells.push_back({"m_measured", fmt(r.m_measured)});
    if (!r.reports.empty()) {
      const auto& cond = r.reports.front();
      row.cells.push_back({"condition", cond.name});
      row.cells.push_back({"condition_satisfied", cond.satisfied ? "true" : "false"});
      row.cells.push_back({"condition_margin", fmt(cond.margin)});
    }
    by_params[{p.spec.p1, p.spec.p2}].push_back({p.spec.K, dec});
    out.table.push_back(std::move(row));
    append_single(out, "point" + std::to_string(i), std::move(r));
  }
  for (auto& [params, list] : by_params) {
    std::sort(list.begin(), list.end());
    bool seen = false, flagged = false;
    for (const auto& [K, dec] : list) {
      if (dec) seen = true;
      else if (seen) flagged = true;
    }
    double proxy = -1.0;
    for (std::size_t j = list.size(); j-- > 0;) {
      if (!list[j].second) break;
      proxy = list[j].first;
    }
    const std::string at = "param1 = " + fmt(params.first) + ", param2 = " + fmt(params.second);
    if (flagged) out.notes.push_back("non-monotone decay in K at " + at + "; review by hand");
    out.notes.push_back("empirical finite-horizon synchronization-dimension proxy at " + at + ": " +
                        (proxy < 0.0 ? std::string("no K in the sweep") : "K = " + fmt(proxy)) +
                        " (not the asymptotic infimum)");
  }
  return out;
}

}  // namespace

int resolve_threads(int requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("INTWINE_THREADS")) {
    const int v = std::atoi(env);
    if (v > 0) return v;
  }
  const unsigned h = std::thread::hardware_concurrency();
  return h > 0 ? static_cast<int>(h) : 1;
}

Verdict verdict_for(const std::string& name, const std::vector<double>& t,
                    const std::vector<double>& x, double tail_fraction, double decay_ratio) {
  Verdict v;
  v.name = name;
  if (x.empty()) throw EmptySeries("verdict_for: empty series " + name);
  v.ratio = x.front() > 0.0 ? x.back() / x.front() : 0.0;
  v.decayed = x.front() > 0.0 ? v.ratio <= decay_ratio : true;
  try {
    v.fit = diagnostics::decay_detect(t, x, tail_fraction, decay_ratio);
  } catch (const InsufficientData&) {
    v.fit = {};
  }
  return v;
}

ScenarioResult run_scenario(const ExperimentConfig& c, const RunOptions& opt) {
  switch (c.scenario) {
    case ScenarioKind::SelfSync:
    case ScenarioKind::ReconstructionNudge:
    case ScenarioKind::ReconstructionDR: {
      ScenarioResult out;
      out.kind = c.scenario;
      try {
        append_single(out, "series", single_run(c, opt.constants));
      } catch (const BlowupDetected&) {
        throw;
      }
      return out;
    }
    case ScenarioKind::FdssDeterminingModes: return run_fdss(c, opt);
    case ScenarioKind::RegimeSweep: return run_sweep(c, opt);
  }
  throw ConfigInvalid("unknown scenario");
}

namespace {

std::string verdict_text(const Verdict& v) {
  return v.name + " ratio=" + fmt(v.ratio) + " decayed=" + (v.decayed ? "true" : "false") +
         " fit_rate=" + fmt(v.fit.rate) + " fit_r2=" + fmt(v.fit.r2) +
         " fit_decayed=" + (v.fit.decayed ? "true" : "false");
}

}  // namespace

void write_outputs(const ScenarioResult& r, const ExperimentConfig& c,
                   const ConstantsConfig& constants, const std::string& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw IoError("cannot create output directory " + dir + ": " + ec.message());
  const fs::path d(dir);
  std::vector<std::string> files;
  auto put = [&](const std::string& name, const std::string& text) {
    util::write_text_file_atomic((d / name).string(), text);
    files.push_back(name);
  };
  put("config.ini", serialize_config(c));
  put("constants.ini", diagnostics::serialize_constants(constants, "source: " + constants.source));
  for (const auto& s : r.series) {
    std::string csv = diagnostics::csv_header();
    for (const auto& rec : s.records) csv += diagnostics::csv_row(rec);
    put(s.name == "series" ? "series.csv" : "series_" + s.name + ".csv", csv);
  }

  std::string text = "scenario " + to_string(r.kind) + "\nconstants " + constants.describe() + "\n";
  std::string jsonl;
  for (const auto& rep : r.reports) {
    text += rep.to_text() + "\n";
    nlohmann::json j = {{"type", "condition"}, {"name", rep.name},     {"lhs", rep.lhs},
                        {"rhs", rep.rhs},      {"margin", rep.margin}, {"satisfied", rep.satisfied},
                        {"formula", rep.formula}, {"constants", rep.constants}};
    jsonl += j.dump() + "\n";
  }
  for (const auto& v : r.verdicts) {
    text += "verdict " + verdict_text(v) + "\n";
    nlohmann::json j = {{"type", "verdict"},        {"name", v.name},       {"ratio", v.ratio},
                        {"decayed", v.decayed},     {"fit_rate", v.fit.rate}, {"fit_r2", v.fit.r2},
                        {"fit_decayed", v.fit.decayed}};
    jsonl += j.dump() + "\n";
  }
  for (const auto& row : r.table) {
    std::string line = "row";
    nlohmann::json j = {{"type", "row"}};
    for (const auto& [k, v] : row.cells) {
      line += " " + k + "=" + v;
      j[k] = v;
    }
    text += line + "\n";
    jsonl += j.dump() + "\n";
  }
  for (const auto& n : r.notes) {
    text += "note " + n + "\n";
    jsonl += nlohmann::json({{"type", "note"}, {"text", n}}).dump() + "\n";
  }
  put("reports.txt", text);
  put("reports.jsonl", jsonl);

  if (!r.table.empty()) {
    std::vector<std::string> cols;
    for (const auto& row : r.table) {
      for (const auto& [k, v] : row.cells) {
        if (std::find(cols.begin(), cols.end(), k) == cols.end()) cols.push_back(k);
      }
    }
    std::string csv;
    for (std::size_t i = 0; i < cols.size(); ++i) csv += (i ? "," : "") + diagnostics::csv_quote(cols[i]);
    csv += "\r\n";
    for (const auto& row : r.table) {
      for (std::size_t i = 0; i < cols.size(); ++i) {
        std::string cell;
        for (const auto& [k, v] : row.cells) {
          if (k == cols[i]) cell = v;
        }
        csv += (i ? "," : "") + diagnostics::csv_quote(cell);
      }
      csv += "\r\n";
    }
    put("table.csv", csv);
  }

  for (std::size_t i = 0; i < r.finals.size(); ++i) {
    const std::string name = i == 0 ? "final.ckpt" : "final_" + r.series[i].name + ".ckpt";
    dynamics::checkpoint_save(r.finals[i], c.seed, (d / name).string());
    files.push_back(name);
  }

  nlohmann::json man = {{"tool", "intwine"},
                        {"version", INTWINE_VERSION},
                        {"checkpoint_format", dynamics::kCheckpointVersion},
                        {"scenario", to_string(r.kind)},
                        {"seed", c.seed},
                        {"grid_n", c.n},
                        {"constants_source", constants.source},
                        {"blowup", r.blowup},
                        {"files", files}};
  util::write_text_file_atomic((d / "manifest.json").string(), man.dump(2) + "\n");
}

}  // namespace intwine::harness
