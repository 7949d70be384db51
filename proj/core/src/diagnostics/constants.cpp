#include "intwine/diagnostics/constants.hpp"

#include <algorithm>
#include <cmath>

#include "intwine/errors.hpp"
#include "intwine/util/ini.hpp"

namespace intwine::diagnostics {

namespace {

struct Slot {
  const char* key;
  double ConstantsConfig::*field;
  bool required;
};

constexpr Slot kSlots[] = {
    {"C_L", &ConstantsConfig::C_L, true}, {"C_A", &ConstantsConfig::C_A, true},
    {"C_S", &ConstantsConfig::C_S, true}, {"C0", &ConstantsConfig::C0, false},
    {"C1", &ConstantsConfig::C1, false},  {"C2", &ConstantsConfig::C2, false},
    {"C3", &ConstantsConfig::C3, false},
};

}  // namespace

extern const char* const kEmbeddedConstants;

void ConstantsConfig::validate() const {
  for (const auto& s : kSlots) {
    const double v = this->*s.field;
    if (!(v > 0.0) || !std::isfinite(v)) {
      throw PreconditionError(std::string("constant ") + s.key + " must be finite and > 0");
    }
  }
}

std::string ConstantsConfig::describe() const {
  std::string out;
  for (const auto& s : kSlots) {
    if (!out.empty()) out += ' ';
    out += std::string(s.key) + "=" + util::format_double(this->*s.field);
  }
  if (!source.empty()) out += " from " + source;
  return out;
}

ConstantsConfig parse_constants(const std::string& text, const std::string& source) {
  const auto doc = util::IniDocument::parse(text);
  const util::IniSection* sec = doc.section("constants");
  if (sec == nullptr) throw ParseError(source + ": missing [constants] section");
  for (const auto& s : doc.sections()) {
    if (s.name != "constants" && s.name != "provenance") {
      throw ParseError("unknown section [" + s.name + "]", s.line);
    }
  }
  ConstantsConfig c;
  c.source = source;
  for (const auto& e : sec->entries) {
    const Slot* hit = nullptr;
    for (const auto& s : kSlots) {
      if (e.key == s.key) hit = &s;
    }
    if (hit == nullptr) throw ParseError("unknown key '" + e.key + "'", e.line);
    const double v = util::parse_double(e);
    if (!(v > 0.0) || !std::isfinite(v)) {
      throw ParseError("constant " + e.key + " must be finite and > 0", e.line);
    }
    c.*(hit->field) = v;
  }
  for (const auto& s : kSlots) {
    if (s.required && sec->find(s.key) == nullptr) {
      throw ParseError(source + ": missing constant " + s.key, sec->line);
    }
  }
  return c;
}

ConstantsConfig load_constants(const std::string& path) {
  return parse_constants(util::read_text_file(path), path);
}

std::string serialize_constants(const ConstantsConfig& c, const std::string& provenance) {
  std::string out;
  if (!provenance.empty()) {
    std::size_t b = 0;
    while (b <= provenance.size()) {
      const std::size_t e = std::min(provenance.find('\n', b), provenance.size());
      if (e > b) out += "# " + provenance.substr(b, e - b) + "\n";
      b = e + 1;
    }
  }
  out += "[constants]\n";
  for (const auto& s : kSlots) out += std::string(s.key) + " = " + util::format_double(c.*s.field) + "\n";
  return out;
}

const std::string& default_constants_text() {
  static const std::string text = kEmbeddedConstants;
  return text;
}

ConstantsConfig default_constants() {
  static const ConstantsConfig c = [] {
    auto r = parse_constants(default_constants_text(), "builtin:constants.ini");
    r.validate();
    return r;
  }();
  return c;
}

}  // namespace intwine::diagnostics
