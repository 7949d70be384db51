#pragma once

#include <optional>
#include <string>
#include <vector>

#include "intwine/diagnostics/conditions.hpp"
#include "intwine/diagnostics/constants.hpp"
#include "intwine/diagnostics/decay.hpp"
#include "intwine/diagnostics/series.hpp"
#include "intwine/harness/config.hpp"

namespace intwine::harness {

/// Finite-horizon decay verdict for one scalar series.
struct Verdict {
  std::string name;
  /// x(T) / x(0).
  double ratio = 0.0;
  /// ratio <= decay_ratio (the harness verdict).
  bool decayed = false;
  diagnostics::DecayResult fit;
};

struct NamedSeries {
  std::string name;
  std::vector<diagnostics::TimeSeriesRecord> records;
};

/// One row of a sweep or determining-modes table.
struct TableRow {
  std::vector<std::pair<std::string, std::string>> cells;
};

struct ScenarioResult {
  ScenarioKind kind = ScenarioKind::SelfSync;
  std::vector<NamedSeries> series;
  std::vector<diagnostics::ConditionReport> reports;
  std::vector<Verdict> verdicts;
  std::vector<std::string> notes;
  std::vector<TableRow> table;
  /// Final state of each sub-run, same order as series.
  std::vector<dynamics::IntertwinedState> finals;
  /// A non-sweep run aborted by the blowup guard.
  bool blowup = false;
};

struct RunOptions {
  /// Worker threads for sweeps; 0 picks INTWINE_THREADS or the hardware count.
  int threads = 0;
  diagnostics::ConstantsConfig constants;
};

int resolve_threads(int requested);

/// Dispatches on c.scenario. BlowupDetected propagates from single runs;
/// sweep points record it in their table row instead.
ScenarioResult run_scenario(const ExperimentConfig& c, const RunOptions& opt);

/// Writes config, constants, CSV series, text and JSON-lines reports,
/// final checkpoints and manifest.json into dir (created if needed).
void write_outputs(const ScenarioResult& r, const ExperimentConfig& c,
                   const diagnostics::ConstantsConfig& constants, const std::string& dir);

/// Verdict over records[i].*field.
Verdict verdict_for(const std::string& name, const std::vector<double>& t,
                    const std::vector<double>& x, double tail_fraction, double decay_ratio);

}  // namespace intwine::harness
