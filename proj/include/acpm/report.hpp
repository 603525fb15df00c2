#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace acpm {

struct CheckEntry {
  std::string name;
  double residual = 0.0;
  double tolerance = 0.0;
  bool pass() const { return residual < tolerance; }
};

struct ResidualReport {
  std::vector<CheckEntry> entries;

  bool all_pass() const {
    for (const auto& e : entries)
      if (!e.pass()) return false;
    return true;
  }

  const CheckEntry* find(const std::string& name) const {
    for (const auto& e : entries)
      if (e.name == name) return &e;
    return nullptr;
  }

  double residual(const std::string& name) const;
};

// Machine report emitted by the CLI. The JSON form is the stable interface
// and round-trips exactly; the text table is presentational.
struct Report {
  std::string engine_version;
  std::string manifest_digest;
  std::string manifold;
  int dim = 0;
  double epsilon = 1.0;
  std::uint64_t seed = 0;
  double default_tolerance = 0.0;
  std::vector<CheckEntry> checks;
  std::vector<std::pair<std::string, double>> constants;
  std::vector<std::vector<double>> points;

  bool all_pass() const {
    for (const auto& e : checks)
      if (!e.pass()) return false;
    return true;
  }
};

bool operator==(const CheckEntry& a, const CheckEntry& b);
bool operator==(const Report& a, const Report& b);

std::string emit_json(const Report& r);
Report parse_report_json(const std::string& text);
std::string emit_table(const Report& r);

std::string fnv1a_digest(std::string_view bytes);

extern const char* const kEngineVersion;

}  // namespace acpm
