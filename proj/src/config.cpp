#include "grandmorrey/config.hpp"

#include <cctype>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "grandmorrey/errors.hpp"

namespace grandmorrey {

namespace {

std::string trim(const std::string& s) {
  std::size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return s.substr(a, b - a);
}

bool valid_key(const std::string& k) {
  if (k.empty()) return false;
  for (char c : k)
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '.' && c != '_' && c != '-')
      return false;
  return true;
}

[[noreturn]] void bad_line(int line, const std::string& what) {
  throw ConfigParseError("config line " + std::to_string(line) + ": " + what);
}

}  // namespace

Config Config::parse(const std::string& text) {
  Config cfg;
  std::istringstream in(text);
  std::string raw;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    std::size_t hash = raw.find('#');
    if (hash != std::string::npos) raw.erase(hash);
    std::string s = trim(raw);
    if (s.empty()) continue;
    std::size_t eq = s.find('=');
    if (eq == std::string::npos) bad_line(line, "expected key = value");
    std::string key = trim(s.substr(0, eq));
    std::string value = trim(s.substr(eq + 1));
    if (!valid_key(key)) bad_line(line, "bad key '" + key + "'");
    if (value.empty()) bad_line(line, "empty value for '" + key + "'");
    cfg.set(key, value);
  }
  return cfg;
}

Config Config::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open config: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse(buf.str());
}

const std::string* Config::find(const std::string& key) const {
  for (const auto& kv : items_)
    if (kv.first == key) return &kv.second;
  return nullptr;
}

bool Config::has(const std::string& key) const { return find(key) != nullptr; }

std::string Config::get(const std::string& key) const {
  const std::string* v = find(key);
  if (!v) throw ConfigParseError("missing config key: " + key);
  used_.insert(key);
  return *v;
}

std::string Config::get(const std::string& key, const std::string& def) const {
  const std::string* v = find(key);
  if (!v) return def;
  used_.insert(key);
  return *v;
}

double Config::get_num(const std::string& key) const {
  std::string v = get(key);
  char* end = nullptr;
  double x = std::strtod(v.c_str(), &end);
  if (end == v.c_str() || *end != '\0')
    throw ConfigParseError("key " + key + ": not a number: " + v);
  return x;
}

double Config::get_num(const std::string& key, double def) const {
  return has(key) ? get_num(key) : def;
}

long Config::get_int(const std::string& key) const {
  std::string v = get(key);
  char* end = nullptr;
  long x = std::strtol(v.c_str(), &end, 10);
  if (end == v.c_str() || *end != '\0')
    throw ConfigParseError("key " + key + ": not an integer: " + v);
  return x;
}

long Config::get_int(const std::string& key, long def) const {
  return has(key) ? get_int(key) : def;
}

std::uint64_t Config::get_seed(const std::string& key) const {
  std::string v = get(key);
  char* end = nullptr;
  // strtoull silently wraps negatives, so reject them up front
  unsigned long long x = std::strtoull(v.c_str(), &end, 10);
  if (end == v.c_str() || *end != '\0' || v.find('-') != std::string::npos)
    throw ConfigParseError("key " + key + ": not a seed: " + v);
  return x;
}

void Config::set(const std::string& key, const std::string& value) {
  for (auto& kv : items_)
    if (kv.first == key) {
      kv.second = value;
      return;
    }
  items_.emplace_back(key, value);
}

std::vector<std::string> Config::unused() const {
  std::vector<std::string> out;
  for (const auto& kv : items_)
    if (!used_.count(kv.first)) out.push_back(kv.first);
  return out;
}

}  // namespace grandmorrey
