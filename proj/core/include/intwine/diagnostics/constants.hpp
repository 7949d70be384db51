#pragma once

#include <string>

namespace intwine::diagnostics {

/// Working values of the functional-inequality constants and the unnamed
/// theorem constants. source records where they came from.
struct ConstantsConfig {
  double C_L = 0.0;
  double C_A = 0.0;
  double C_S = 0.0;
  double C0 = 1.0;
  double C1 = 1.0;
  double C2 = 1.0;
  double C3 = 1.0;
  std::string source;

  void validate() const;
  std::string describe() const;
};

ConstantsConfig parse_constants(const std::string& text, const std::string& source);
ConstantsConfig load_constants(const std::string& path);
std::string serialize_constants(const ConstantsConfig& c, const std::string& provenance = {});
/// The calibrated defaults shipped with the library (generated at n = 32, seed 0).
ConstantsConfig default_constants();
/// Text of the shipped constants file.
const std::string& default_constants_text();

}  // namespace intwine::diagnostics
