#include "intwine/util/ini.hpp"

#include <cctype>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "intwine/errors.hpp"

namespace intwine::util {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

bool valid_name(const std::string& s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '.' || c == '-')) {
      return false;
    }
  }
  return true;
}

}  // namespace

const IniEntry* IniSection::find(const std::string& key) const {
  for (const auto& e : entries) {
    if (e.key == key) return &e;
  }
  return nullptr;
}

IniDocument IniDocument::parse(const std::string& text) {
  IniDocument doc;
  std::istringstream in(text);
  std::string raw;
  int line = 0;
  IniSection* cur = nullptr;
  while (std::getline(in, raw)) {
    ++line;
    const std::string s = trim(raw);
    if (s.empty() || s[0] == '#' || s[0] == ';') continue;
    if (s.front() == '[') {
      if (s.back() != ']') throw ParseError("unterminated section header", line);
      const std::string name = trim(s.substr(1, s.size() - 2));
      if (!valid_name(name)) throw ParseError("invalid section name '" + name + "'", line);
      if (doc.section(name) != nullptr) throw ParseError("duplicate section [" + name + "]", line);
      doc.sections_.push_back({name, line, {}});
      cur = &doc.sections_.back();
      continue;
    }
    const auto eq = s.find('=');
    if (eq == std::string::npos) throw ParseError("expected 'key = value'", line);
    if (cur == nullptr) throw ParseError("key outside of any section", line);
    const std::string key = trim(s.substr(0, eq));
    const std::string value = trim(s.substr(eq + 1));
    if (!valid_name(key)) throw ParseError("invalid key '" + key + "'", line);
    if (cur->find(key) != nullptr) {
      throw ParseError("duplicate key '" + key + "' in [" + cur->name + "]", line);
    }
    cur->entries.push_back({key, value, line});
  }
  return doc;
}

IniDocument IniDocument::load(const std::string& path) { return parse(read_text_file(path)); }

const IniSection* IniDocument::section(const std::string& name) const {
  for (const auto& s : sections_) {
    if (s.name == name) return &s;
  }
  return nullptr;
}

IniSection& IniDocument::add_section(const std::string& name) {
  if (section(name) != nullptr) throw ParseError("duplicate section [" + name + "]");
  sections_.push_back({name, 0, {}});
  return sections_.back();
}

std::string IniDocument::serialize() const {
  std::string out;
  for (std::size_t i = 0; i < sections_.size(); ++i) {
    if (i > 0) out += '\n';
    out += '[' + sections_[i].name + "]\n";
    for (const auto& e : sections_[i].entries) out += e.key + " = " + e.value + '\n';
  }
  return out;
}

double parse_double(const IniEntry& e) {
  const char* b = e.value.data();
  const char* end = b + e.value.size();
  double v = 0.0;
  auto [p, ec] = std::from_chars(b, end, v);
  if (ec != std::errc() || p != end) {
    throw ParseError("key '" + e.key + "': expected a number, got '" + e.value + "'", e.line);
  }
  return v;
}

long long parse_int(const IniEntry& e) {
  const char* b = e.value.data();
  const char* end = b + e.value.size();
  long long v = 0;
  auto [p, ec] = std::from_chars(b, end, v);
  if (ec != std::errc() || p != end) {
    throw ParseError("key '" + e.key + "': expected an integer, got '" + e.value + "'", e.line);
  }
  return v;
}

unsigned long long parse_u64(const IniEntry& e) {
  const char* b = e.value.data();
  const char* end = b + e.value.size();
  unsigned long long v = 0;
  auto [p, ec] = std::from_chars(b, end, v);
  if (ec != std::errc() || p != end) {
    throw ParseError("key '" + e.key + "': expected an unsigned integer, got '" + e.value + "'",
                     e.line);
  }
  return v;
}

bool parse_bool(const IniEntry& e) {
  if (e.value == "true" || e.value == "1" || e.value == "yes") return true;
  if (e.value == "false" || e.value == "0" || e.value == "no") return false;
  throw ParseError("key '" + e.key + "': expected true or false, got '" + e.value + "'", e.line);
}

std::string format_double(double v) {
  char buf[64];
  auto [p, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  if (ec != std::errc()) throw Error("format_double failed");
  return std::string(buf, p);
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text_file_atomic(const std::string& path, const std::string& text) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot write '" + tmp + "'");
    out << text;
    if (!out) throw IoError("write failed for '" + tmp + "'");
  }
  if (std::rename(tmp.c_str(), path.c_str()) != 0) {
    throw IoError("cannot rename '" + tmp + "' to '" + path + "'");
  }
}

}  // namespace intwine::util
