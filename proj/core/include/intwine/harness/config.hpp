#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "intwine/dynamics/forcing.hpp"
#include "intwine/dynamics/integrator.hpp"
#include "intwine/dynamics/matrix.hpp"

namespace intwine::harness {

enum class ScenarioKind { SelfSync, FdssDeterminingModes, ReconstructionNudge, ReconstructionDR, RegimeSweep };

std::string to_string(ScenarioKind k);
ScenarioKind scenario_from_string(const std::string& s);

enum class FieldShape { Zero, Kolmogorov, Modes, Random };

/// Recipe for a force or initial velocity field.
struct FieldSpec {
  FieldShape shape = FieldShape::Zero;
  // Kolmogorov: amplitude sin(wavenumber y) e_x.
  double amplitude = 0.0;
  int wavenumber = 1;
  // Modes: explicit list, Leray-projected.
  std::vector<dynamics::ModeAmplitude> modes;
  // Random: seeded power-law spectrum; seed derived from the run seed when unset.
  std::optional<std::uint64_t> seed;
  double slope = 1.0;
  double kmin = 0.0;
  double kmax = 0.0;
  double l2 = 0.0;
  double h1 = 0.0;

  bool operator==(const FieldSpec&) const;
};

enum class ForceKind { Zero, Steady, Periodic, Decaying, Same };

struct ForceConfig {
  ForceKind kind = ForceKind::Zero;
  FieldSpec base;
  /// Decaying kind: g(t) = base + exp(-alpha t) delta.
  FieldSpec delta;
  /// Decaying kind only: reuse force1's base field.
  bool base_from_force1 = false;
  double omega = 0.0;
  double alpha = 0.0;

  bool operator==(const ForceConfig&) const = default;
};

enum class InitialKind { Zero, Field, Perturb };

struct InitialConfig {
  InitialKind kind = InitialKind::Zero;
  /// Field: the velocity itself. Perturb (second copy only): v1(0) + field.
  FieldSpec field;

  bool operator==(const InitialConfig&) const = default;
};

struct SweepConfig {
  std::vector<double> K;
  std::vector<double> param1;
  std::vector<double> param2;
  /// Force-amplitude scan for the determining-modes scenario.
  std::vector<double> amplitudes;

  bool operator==(const SweepConfig&) const = default;
};

struct ExperimentConfig {
  ScenarioKind scenario = ScenarioKind::SelfSync;
  int n = 32;
  std::optional<double> dealias_radius;
  double nu = 1.0;
  double K = 0.0;
  dynamics::IntertwiningMatrix matrix = dynamics::IntertwiningMatrix::nudge_mut(0.0, 0.0);
  ForceConfig force1;
  ForceConfig force2;
  InitialConfig initial1;
  InitialConfig initial2;

  double dt = 1e-2;
  double t_end = 1.0;
  double sample_every = 0.1;
  std::uint64_t seed = 0;
  /// Plain-NSE spin-up of the first copy under the steady part of force1.
  double spinup = 0.0;
  double cfl = 1.0;
  dynamics::FoldMode fold = dynamics::FoldMode::Auto;
  double tail_fraction = 0.5;
  double decay_ratio = 1e-6;
  /// Cutoffs N examined by the determining-modes scenario.
  std::vector<double> modes_N;
  SweepConfig sweep;

  std::string output_dir = "run";
  /// Empty: the shipped defaults.
  std::string constants_path;

  bool operator==(const ExperimentConfig&) const = default;
};

/// Strict parser: unknown sections or keys, malformed values and violated
/// parameter constraints are ParseErrors with the offending line.
ExperimentConfig parse_config_text(const std::string& text);
ExperimentConfig parse_config(const std::string& path);
std::string serialize_config(const ExperimentConfig& c);

dynamics::IntertwinedState build_state(const ExperimentConfig& c);
spectral::SpectralField build_field(const spectral::Grid& g, const FieldSpec& f,
                                    std::uint64_t master_seed, std::uint64_t stream);
dynamics::StepperOptions stepper_options(const ExperimentConfig& c);
spectral::Grid config_grid(const ExperimentConfig& c);

}  // namespace intwine::harness
