#include "acpm/report.hpp"

#include <json.hpp>

#include <cinttypes>
#include <cstdio>

#include "acpm/errors.hpp"

namespace acpm {

const char* const kEngineVersion = "0.1.0";

double ResidualReport::residual(const std::string& name) const {
  const CheckEntry* e = find(name);
  if (!e) throw std::out_of_range("no check named '" + name + "'");
  return e->residual;
}

bool operator==(const CheckEntry& a, const CheckEntry& b) {
  return a.name == b.name && a.residual == b.residual &&
         a.tolerance == b.tolerance;
}

bool operator==(const Report& a, const Report& b) {
  return a.engine_version == b.engine_version &&
         a.manifest_digest == b.manifest_digest && a.manifold == b.manifold &&
         a.dim == b.dim && a.epsilon == b.epsilon && a.seed == b.seed &&
         a.default_tolerance == b.default_tolerance && a.checks == b.checks &&
         a.constants == b.constants && a.points == b.points;
}

std::string fnv1a_digest(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  char buf[32];
  std::snprintf(buf, sizeof buf, "fnv1a:%016" PRIx64, h);
  return buf;
}

using ordered_json = nlohmann::ordered_json;

std::string emit_json(const Report& r) {
  ordered_json j;
  j["engine_version"] = r.engine_version;
  j["schema"] = 1;
  j["digest"] = r.manifest_digest;
  j["manifold"] = r.manifold;
  j["dim"] = r.dim;
  j["epsilon"] = r.epsilon;
  j["seed"] = r.seed;
  j["tolerance"] = r.default_tolerance;
  ordered_json checks = ordered_json::array();
  for (const auto& c : r.checks) {
    ordered_json e;
    e["name"] = c.name;
    e["residual"] = c.residual;
    e["tolerance"] = c.tolerance;
    e["verdict"] = c.pass() ? "pass" : "fail";
    checks.push_back(e);
  }
  j["checks"] = checks;
  ordered_json consts = ordered_json::object();
  for (const auto& [k, v] : r.constants) consts[k] = v;
  j["constants"] = consts;
  j["points"] = r.points;
  return j.dump(2) + "\n";
}

Report parse_report_json(const std::string& text) {
  ordered_json j;
  try {
    j = ordered_json::parse(text);
  } catch (const std::exception& e) {
    throw ManifestError(std::string("bad report json: ") + e.what());
  }
  Report r;
  r.engine_version = j.at("engine_version").get<std::string>();
  r.manifest_digest = j.at("digest").get<std::string>();
  r.manifold = j.at("manifold").get<std::string>();
  r.dim = j.at("dim").get<int>();
  r.epsilon = j.at("epsilon").get<double>();
  r.seed = j.at("seed").get<std::uint64_t>();
  r.default_tolerance = j.at("tolerance").get<double>();
  for (const auto& e : j.at("checks")) {
    CheckEntry c;
    c.name = e.at("name").get<std::string>();
    c.residual = e.at("residual").get<double>();
    c.tolerance = e.at("tolerance").get<double>();
    r.checks.push_back(c);
  }
  for (const auto& [k, v] : j.at("constants").items())
    r.constants.emplace_back(k, v.get<double>());
  for (const auto& p : j.at("points"))
    r.points.push_back(p.get<std::vector<double>>());
  return r;
}

std::string emit_table(const Report& r) {
  std::string out;
  char line[160];
  std::snprintf(line, sizeof line, "%-32s  %-12s  %-9s  %s\n", "check",
                "residual", "tolerance", "verdict");
  out += line;
  out += std::string(64, '-') + "\n";
  for (const auto& c : r.checks) {
    std::snprintf(line, sizeof line, "%-32s  %-12.3e  %-9.1e  %s\n",
                  c.name.c_str(), c.residual, c.tolerance,
                  c.pass() ? "pass" : "FAIL");
    out += line;
  }
  if (!r.constants.empty()) {
    out += "\nconstants:\n";
    for (const auto& [k, v] : r.constants) {
      std::snprintf(line, sizeof line, "  %-24s = % .12g\n", k.c_str(), v);
      out += line;
    }
  }
  return out;
}

}  // namespace acpm
