#pragma once

#include <cstdint>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace grandmorrey {

// Flat key = value text. '#' starts a comment, blank lines are skipped,
// dotted keys express nesting, later assignments win. Lookups mark keys as
// consumed so an experiment can reject keys it never read.
class Config {
 public:
  static Config parse(const std::string& text);
  static Config load(const std::string& path);

  bool has(const std::string& key) const;

  std::string get(const std::string& key) const;  // throws ConfigParseError when absent
  std::string get(const std::string& key, const std::string& def) const;
  double get_num(const std::string& key) const;
  double get_num(const std::string& key, double def) const;
  long get_int(const std::string& key) const;
  long get_int(const std::string& key, long def) const;
  std::uint64_t get_seed(const std::string& key) const;

  void set(const std::string& key, const std::string& value);

  // entries in file order with duplicates collapsed onto their first position
  const std::vector<std::pair<std::string, std::string>>& items() const { return items_; }

  std::vector<std::string> unused() const;

 private:
  const std::string* find(const std::string& key) const;

  std::vector<std::pair<std::string, std::string>> items_;
  mutable std::set<std::string> used_;
};

}  // namespace grandmorrey
