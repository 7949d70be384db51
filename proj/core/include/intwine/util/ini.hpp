#pragma once

#include <optional>
#include <string>
#include <vector>

namespace intwine::util {

struct IniEntry {
  std::string key;
  std::string value;
  int line = 0;
};

struct IniSection {
  std::string name;
  int line = 0;
  std::vector<IniEntry> entries;

  const IniEntry* find(const std::string& key) const;
};

/// [section] headers and `key = value` lines; `#` or `;` start a comment
/// line. Keys outside a section, duplicate sections and duplicate keys are
/// ParseErrors carrying the offending line.
class IniDocument {
 public:
  static IniDocument parse(const std::string& text);
  static IniDocument load(const std::string& path);

  const std::vector<IniSection>& sections() const noexcept { return sections_; }
  const IniSection* section(const std::string& name) const;
  IniSection& add_section(const std::string& name);
  std::string serialize() const;

 private:
  std::vector<IniSection> sections_;
};

/// Strict scalar conversions; throw ParseError naming the line on failure.
double parse_double(const IniEntry& e);
long long parse_int(const IniEntry& e);
unsigned long long parse_u64(const IniEntry& e);
bool parse_bool(const IniEntry& e);

/// Shortest decimal text that parses back to the same double.
std::string format_double(double v);

std::string read_text_file(const std::string& path);
/// Writes through a temporary file and renames it over `path`.
void write_text_file_atomic(const std::string& path, const std::string& text);

}  // namespace intwine::util
