#include "atorus/report.hpp"

#include <algorithm>

#include <fmt/format.h>

namespace atorus {

std::string num(double v) { return fmt::format("{:.17g}", v + 0.0); }

Check& Report::add(std::string name, bool pass, double detail) {
  return add(std::move(name), pass, num(detail));
}

Check& Report::add(std::string name, bool pass, std::string detail) {
  checks.push_back({std::move(name), pass, std::move(detail), {}});
  return checks.back();
}

void Report::set(std::string key, std::string value) {
  for (auto& [k, v] : summary) {
    if (k == key) {
      v = std::move(value);
      return;
    }
  }
  summary.emplace_back(std::move(key), std::move(value));
}

void Report::append(const Report& other) {
  checks.insert(checks.end(), other.checks.begin(), other.checks.end());
  notes.insert(notes.end(), other.notes.begin(), other.notes.end());
  for (const auto& [k, v] : other.summary) set(k, v);
}

bool Report::all_pass() const {
  return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.pass; });
}

std::string Report::render() const {
  std::string out;
  for (const auto& n : notes) out += "NOTE " + n + "\n";
  for (const auto& c : checks) {
    out += fmt::format("CHECK {} {} detail={}\n", c.name, c.pass ? "PASS" : "FAIL", c.detail);
    for (const auto& n : c.notes) out += "NOTE " + n + "\n";
  }
  out += "---\n";
  for (const auto& [k, v] : summary) out += k + "=" + v + "\n";
  return out;
}

}  // namespace atorus
