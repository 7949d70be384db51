#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace intwine::harness {

/// One measured quantity against its tolerance.
struct Check {
  std::string suite;
  std::string name;
  double value = 0.0;
  double tolerance = 0.0;
  bool pass = false;
};

/// Bilinear-form identities on `cases` random dealiased fields per grid size.
std::vector<Check> verify_identities(const std::vector<int>& sizes = {16, 32}, int cases = 100,
                                     std::uint64_t seed = 0);
/// Pseudospectral B against the dense convolution, and the stepper against
/// dense RK4 trajectories (NSE, nudging, direct replacement).
std::vector<Check> verify_oracle(int cases = 20, std::uint64_t seed = 0);
/// Low-mode heat law under direct replacement: dt-halving order and decay of
/// ||p||_m for m <= 2 under a decaying force difference.
std::vector<Check> verify_heat(std::uint64_t seed = 0);

/// The three suites above; "all" or a single suite name.
std::vector<Check> verify_suite(const std::string& which, std::uint64_t seed = 0);

std::string to_text(const Check& c);

}  // namespace intwine::harness
