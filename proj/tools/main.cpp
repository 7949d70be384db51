// intwine: run, twin, verify, sweep, calibrate.
#include <cstdio>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "intwine/diagnostics/calibrate.hpp"
#include "intwine/diagnostics/constants.hpp"
#include "intwine/errors.hpp"
#include "intwine/harness/config.hpp"
#include "intwine/harness/scenario.hpp"
#include "intwine/harness/verify.hpp"
#include "intwine/util/ini.hpp"

namespace {

using namespace intwine;
using harness::ExperimentConfig;
using harness::ScenarioKind;

enum Exit { kOk = 0, kVerifyFailed = 1, kConfigError = 2, kBlowup = 3 };

struct Common {
  std::string config;
  std::string out;
  std::string constants;
  std::optional<std::uint64_t> seed;
  int threads = 0;
};

void add_common(CLI::App* app, Common& c, bool need_config = true) {
  auto* o = app->add_option("--config", c.config, "experiment config (INI)");
  if (need_config) o->required()->check(CLI::ExistingFile);
  app->add_option("--out", c.out, "output directory (overrides [output] dir)");
  app->add_option("--seed", c.seed, "master RNG seed (overrides [run] seed)");
  app->add_option("--threads", c.threads, "worker threads (fallback: INTWINE_THREADS)")->check(CLI::NonNegativeNumber);
  app->add_option("--constants", c.constants, "constants file (overrides the config)");
}

diagnostics::ConstantsConfig load_constants_for(const ExperimentConfig& c, const Common& o) {
  const std::string path = !o.constants.empty() ? o.constants : c.constants_path;
  return path.empty() ? diagnostics::default_constants() : diagnostics::load_constants(path);
}

ExperimentConfig load(const Common& o) {
  ExperimentConfig c = harness::parse_config(o.config);
  if (o.seed) c.seed = *o.seed;
  if (!o.out.empty()) c.output_dir = o.out;
  return c;
}

void print_summary(const harness::ScenarioResult& r) {
  for (const auto& rep : r.reports) std::cout << rep.to_text() << "\n";
  for (const auto& v : r.verdicts) {
    std::printf("verdict %s ratio=%.6e decayed=%s\n", v.name.c_str(), v.ratio, v.decayed ? "true" : "false");
  }
  for (const auto& row : r.table) {
    std::string line = "row";
    for (const auto& [k, v] : row.cells) line += " " + k + "=" + v;
    std::cout << line << "\n";
  }
  for (const auto& n : r.notes) std::cout << "note " << n << "\n";
}

int execute(const ExperimentConfig& c, const Common& o) {
  harness::RunOptions opt;
  opt.threads = o.threads;
  opt.constants = load_constants_for(c, o);
  harness::ScenarioResult r = harness::run_scenario(c, opt);
  harness::write_outputs(r, c, opt.constants, c.output_dir);
  print_summary(r);
  std::cout << "outputs written to " << c.output_dir << "\n";
  return kOk;
}

template <class F>
int guarded(F f) {
  try {
    return f();
  } catch (const ParseError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kConfigError;
  } catch (const ConfigInvalid& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kConfigError;
  } catch (const PreconditionError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kConfigError;
  } catch (const IoError& e) {
    std::cerr << "i/o error: " << e.what() << "\n";
    return kConfigError;
  } catch (const BlowupDetected& e) {
    std::cerr << "blowup: " << e.what() << " (t = " << e.time() << ")\n";
    return kBlowup;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kConfigError;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Pseudospectral simulator and verification harness for 2D periodic Navier-Stokes intertwinements"};
  app.require_subcommand(1);

  Common run_o, twin_o, sweep_o;
  auto* run = app.add_subcommand("run", "run one scenario from a config file");
  add_common(run, run_o);

  auto* twin = app.add_subcommand("twin", "truth/observer reconstruction run");
  add_common(twin, twin_o);
  std::string mode;
  double mu = 0.0;
  twin->add_option("--mode", mode, "observer: nudge (mu P_K feedback) or dr (direct replacement)")
      ->check(CLI::IsMember({"nudge", "dr"}));
  twin->add_option("--mu", mu, "nudging strength for --mode nudge")->check(CLI::PositiveNumber);

  auto* sweep = app.add_subcommand("sweep", "parameter grid, parallel across points");
  add_common(sweep, sweep_o);

  std::string suite = "all";
  std::uint64_t vseed = 0;
  auto* verify = app.add_subcommand("verify", "identity, oracle and heat self-checks");
  verify->add_option("--suite", suite, "identity|oracle|heat|all")
      ->check(CLI::IsMember({"identity", "oracle", "heat", "all"}));
  verify->add_option("--seed", vseed, "seed for the random fields");

  int cal_n = 32, cal_samples = 200;
  std::uint64_t cal_seed = 0;
  double safety = 1.1;
  std::string cal_out = "constants.ini";
  auto* cal = app.add_subcommand("calibrate", "estimate C_L, C_A, C_S and write a constants file");
  cal->add_option("--n", cal_n, "grid size")->check(CLI::Range(8, 512));
  cal->add_option("--samples", cal_samples, "random fields per spectrum shape")->check(CLI::PositiveNumber);
  cal->add_option("--seed", cal_seed, "seed");
  cal->add_option("--safety", safety, "factor applied to observed maxima")->check(CLI::PositiveNumber);
  cal->add_option("--out", cal_out, "output constants file");

  CLI11_PARSE(app, argc, argv);

  if (*run) {
    return guarded([&] { return execute(load(run_o), run_o); });
  }
  if (*twin) {
    return guarded([&] {
      ExperimentConfig c = load(twin_o);
      if (mode == "nudge") {
        if (!(mu > 0.0)) throw ConfigInvalid("--mode nudge needs --mu > 0");
        c.scenario = ScenarioKind::ReconstructionNudge;
        c.matrix = dynamics::IntertwiningMatrix::nudge_mut(0.0, mu);
      } else if (mode == "dr") {
        c.scenario = ScenarioKind::ReconstructionDR;
        c.matrix = dynamics::IntertwiningMatrix::dr_mut(0.0, 1.0);
      }
      if (c.scenario != ScenarioKind::ReconstructionNudge && c.scenario != ScenarioKind::ReconstructionDR) {
        throw ConfigInvalid("twin needs a reconstruction scenario or --mode nudge|dr");
      }
      return execute(c, twin_o);
    });
  }
  if (*sweep) {
    return guarded([&] {
      ExperimentConfig c = load(sweep_o);
      if (c.scenario != ScenarioKind::RegimeSweep && c.scenario != ScenarioKind::FdssDeterminingModes) {
        throw ConfigInvalid("sweep needs scenario = regime_sweep or fdss_determining_modes");
      }
      return execute(c, sweep_o);
    });
  }
  if (*verify) {
    return guarded([&] {
      bool ok = true;
      for (const auto& c : harness::verify_suite(suite, vseed)) {
        std::cout << harness::to_text(c) << "\n";
        ok = ok && c.pass;
      }
      std::cout << (ok ? "verify: all checks passed" : "verify: FAILED") << "\n";
      return ok ? kOk : kVerifyFailed;
    });
  }
  if (*cal) {
    return guarded([&] {
      const auto r = diagnostics::calibrate_constants(cal_n, cal_samples, cal_seed, safety);
      util::write_text_file_atomic(cal_out, diagnostics::serialize_constants(r.constants, r.provenance()));
      std::printf("ladyzhenskaya %.17g\nagmon %.17g\nsobolev %.17g\npoincare %.17g\n", r.ladyzhenskaya,
                  r.agmon, r.sobolev, r.poincare);
      for (const auto& [N, v] : r.sobolev_by_N) std::printf("sobolev N=%d %.17g\n", N, v);
      std::cout << "constants written to " << cal_out << "\n";
      return kOk;
    });
  }
  return kOk;
}
