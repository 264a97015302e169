#pragma once

#include <string>
#include <utility>
#include <vector>

namespace atorus {

/// Formats with 17 significant digits.
std::string num(double v);

struct Check {
  std::string name;
  bool pass = false;
  std::string detail;
  std::vector<std::string> notes;
};

/// Text report: one "CHECK <name> PASS|FAIL detail=<value>" line per check
/// (followed by "NOTE ..." lines), then "---" and KEY=VALUE summary lines.
struct Report {
  std::vector<Check> checks;
  std::vector<std::string> notes;
  std::vector<std::pair<std::string, std::string>> summary;

  Check& add(std::string name, bool pass, double detail);
  Check& add(std::string name, bool pass, std::string detail);
  void note(std::string text) { notes.push_back(std::move(text)); }
  void set(std::string key, std::string value);
  void set(std::string key, double value) { set(std::move(key), num(value)); }
  void set(std::string key, int value) { set(std::move(key), std::to_string(value)); }

  void append(const Report& other);
  bool all_pass() const;
  std::string render() const;
};

}  // namespace atorus
