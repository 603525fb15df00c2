#include "acpm/manifest.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <set>
#include <sstream>

#include "acpm/errors.hpp"
#include "acpm/report.hpp"

namespace acpm {

const std::vector<std::string>& known_check_names() {
  static const std::vector<std::string> names = {
      // connection and curvature sanity
      "metric_nondegenerate", "torsion_free", "metric_compatibility",
      "riemann_antisymmetry", "riemann_pair_symmetry", "bianchi_first",
      "bianchi_second", "weyl_trace_free",
      // structure axioms
      "phi_square", "eta_xi", "phi_xi", "eta_phi", "metric_compat", "eta_dual",
      "phi_skew", "xi_unit", "structure_axioms",
      // defining condition and identity suite
      "kenmotsu", "normality", "almost_kenmotsu_form", "nabla_xi", "nabla_eta",
      "lie_xi_metric", "lie_xi_phi", "lie_xi_eta", "curvature_reeb",
      "eta_of_curvature", "curvature_reeb_mixed", "ricci_reeb",
      "reeb_sectional", "nabla_curvature_reeb", "nabla_ricci_op_reeb",
      "nabla_ricci_op_along_reeb",
      // classification
      "space_form", "conformally_flat", "xi_conformally_flat",
      "phi_conformally_flat", "xi_flat_eta_einstein_agree",
      "phi_flat_scalar_curvature", "eta_einstein", "einstein",
      "phi_sectional_constant", "scalar_gradient", "phi_symmetry",
      "dim3_reconstruction", "ricci_operator_form_dim3",
      // soliton
      "soliton", "soliton_at_lambda_star", "soliton_lambda_theorem",
      "lie_curvature_reeb", "lie_curvature_model", "lie_ricci_reeb"};
  return names;
}

namespace {

struct KeyValue {
  std::string value;
  int line = 0;
  bool used = false;
};

using Section = std::map<std::string, KeyValue>;

std::string trim(const std::string& s) {
  std::size_t a = s.find_first_not_of(" \t\r");
  std::size_t b = s.find_last_not_of(" \t\r");
  if (a == std::string::npos) return "";
  return s.substr(a, b - a + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      out.push_back(trim(cur));
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(trim(cur));
  return out;
}

[[noreturn]] void fail(const std::string& src, int line, const std::string& msg) {
  throw ManifestError(src + ":" + std::to_string(line) + ": " + msg);
}

double parse_number(const std::string& src, int line, const std::string& v) {
  try {
    std::size_t used = 0;
    double x = std::stod(v, &used);
    if (used != v.size()) fail(src, line, "trailing characters in number '" + v + "'");
    return x;
  } catch (const ManifestError&) {
    throw;
  } catch (const std::exception&) {
    fail(src, line, "expected a number, got '" + v + "'");
  }
}

class ManifestReader {
 public:
  ManifestReader(const std::string& text, const std::string& source)
      : src_(source) {
    static const std::set<std::string> known_sections = {
        "manifold", "metric", "structure", "soliton",
        "params",   "sampling", "tolerances"};
    std::istringstream in(text);
    std::string raw;
    int line = 0;
    std::string section;
    while (std::getline(in, raw)) {
      ++line;
      std::string s = raw;
      if (auto pos = s.find('#'); pos != std::string::npos) s.erase(pos);
      s = trim(s);
      if (s.empty()) continue;
      if (s.front() == '[') {
        if (s.back() != ']') fail(src_, line, "unterminated section header");
        section = trim(s.substr(1, s.size() - 2));
        if (!known_sections.count(section))
          fail(src_, line, "unknown section [" + section + "]");
        sections_[section];
        continue;
      }
      auto eq = s.find('=');
      if (eq == std::string::npos) fail(src_, line, "expected key = value");
      if (section.empty()) fail(src_, line, "key outside of any section");
      std::string key = trim(s.substr(0, eq));
      std::string value = trim(s.substr(eq + 1));
      if (key.empty()) fail(src_, line, "empty key");
      auto& sec = sections_[section];
      if (sec.count(key)) fail(src_, line, "duplicate key '" + key + "'");
      sec[key] = KeyValue{value, line, false};
    }
  }

  bool has_section(const std::string& name) const {
    return sections_.count(name) != 0;
  }

  const KeyValue* get(const std::string& section, const std::string& key) {
    auto it = sections_.find(section);
    if (it == sections_.end()) return nullptr;
    auto kt = it->second.find(key);
    if (kt == it->second.end()) return nullptr;
    kt->second.used = true;
    return &kt->second;
  }

  const KeyValue& require(const std::string& section, const std::string& key) {
    const KeyValue* kv = get(section, key);
    if (!kv)
      throw ManifestError(src_ + ": missing required key '" + key +
                          "' in section [" + section + "]");
    return *kv;
  }

  // All keys of a section, for free-form sections like [params].
  std::vector<std::pair<std::string, KeyValue*>> all(const std::string& section) {
    std::vector<std::pair<std::string, KeyValue*>> out;
    auto it = sections_.find(section);
    if (it == sections_.end()) return out;
    for (auto& [k, v] : it->second) {
      v.used = true;
      out.emplace_back(k, &v);
    }
    return out;
  }

  void check_no_unknown_keys() const {
    for (const auto& [sec, keys] : sections_)
      for (const auto& [key, kv] : keys)
        if (!kv.used)
          fail(src_, kv.line, "unknown key '" + key + "' in section [" + sec + "]");
  }

  const std::string& source() const { return src_; }

 private:
  std::string src_;
  std::map<std::string, Section> sections_;
};

std::vector<std::string> parse_matrix(const std::string& src, int line,
                                      const std::string& value, int dim,
                                      const char* what) {
  std::vector<std::string> rows = split(value, ';');
  if (static_cast<int>(rows.size()) != dim)
    fail(src, line, std::string(what) + " needs " + std::to_string(dim) + " rows");
  std::vector<std::string> out;
  for (const auto& r : rows) {
    std::vector<std::string> entries = split(r, ',');
    if (static_cast<int>(entries.size()) != dim)
      fail(src, line,
           std::string(what) + " rows need " + std::to_string(dim) + " entries");
    for (auto& e : entries) out.push_back(e);
  }
  return out;
}

std::vector<std::string> parse_vector(const std::string& src, int line,
                                      const std::string& value, int dim,
                                      const char* what) {
  std::vector<std::string> entries = split(value, ',');
  if (static_cast<int>(entries.size()) != dim)
    fail(src, line,
         std::string(what) + " needs " + std::to_string(dim) + " entries");
  return entries;
}

std::string normalized(const std::string& s) {
  std::string out;
  for (char c : s)
    if (!std::isspace(static_cast<unsigned char>(c))) out += c;
  return out;
}

}  // namespace

ParsedManifest parse_manifest(const std::string& text,
                              const std::string& source_name) {
  ManifestReader r(text, source_name);
  ParsedManifest out;
  out.digest = fnv1a_digest(text);
  ManifoldSpec& spec = out.spec;

  // [manifold]
  const KeyValue& dim_kv = r.require("manifold", "dim");
  spec.dim = static_cast<int>(parse_number(source_name, dim_kv.line, dim_kv.value));
  if (spec.dim < 3 || spec.dim % 2 == 0)
    fail(source_name, dim_kv.line, "dim must be odd and at least 3");
  const KeyValue& coords_kv = r.require("manifold", "coords");
  spec.coords = split(coords_kv.value, ',');
  for (const auto& c : spec.coords)
    if (c.empty()) fail(source_name, coords_kv.line, "empty coordinate name");
  if (static_cast<int>(spec.coords.size()) != spec.dim)
    fail(source_name, coords_kv.line, "coords must list exactly dim names");
  const KeyValue& eps_kv = r.require("manifold", "epsilon");
  spec.epsilon = parse_number(source_name, eps_kv.line, eps_kv.value);
  if (spec.epsilon != 1.0 && spec.epsilon != -1.0)
    fail(source_name, eps_kv.line, "epsilon must be +1 or -1");
  if (const KeyValue* name_kv = r.get("manifold", "name"))
    spec.name = name_kv->value;
  else
    spec.name = "manifest";

  // [params] — user parameters; "eps" is reserved and bound to epsilon.
  spec.param_names = {"eps"};
  spec.param_values = {spec.epsilon};
  for (auto& [key, kv] : r.all("params")) {
    if (key == "eps")
      fail(source_name, kv->line, "'eps' is reserved for the structure sign");
    if (std::find(spec.coords.begin(), spec.coords.end(), key) !=
        spec.coords.end())
      fail(source_name, kv->line, "parameter '" + key + "' shadows a coordinate");
    spec.param_names.push_back(key);
    spec.param_values.push_back(parse_number(source_name, kv->line, kv->value));
  }

  auto parse_field = [&](const KeyValue& kv, std::vector<Variance> var,
                         const std::vector<std::string>& comps,
                         const char* what) -> TensorField {
    try {
      return make_field(std::move(var), comps, spec.coords, spec.param_names);
    } catch (const SyntaxError& e) {
      fail(source_name, kv.line, std::string(what) + ": " + e.what());
    } catch (const UnknownIdentifier& e) {
      fail(source_name, kv.line, std::string(what) + ": " + e.what());
    }
  };

  // [metric]
  const KeyValue& g_kv = r.require("metric", "g");
  std::vector<std::string> g_comps =
      parse_matrix(source_name, g_kv.line, g_kv.value, spec.dim, "metric");
  for (int i = 0; i < spec.dim; ++i)
    for (int j = i + 1; j < spec.dim; ++j)
      if (normalized(g_comps[i * spec.dim + j]) !=
          normalized(g_comps[j * spec.dim + i]))
        fail(source_name, g_kv.line, "metric must be symmetric as expressions");
  spec.metric = parse_field(g_kv, {Variance::Lower, Variance::Lower}, g_comps,
                            "metric");

  // [structure]
  if (r.has_section("structure")) {
    ContactStructureSpec cs;
    const KeyValue& phi_kv = r.require("structure", "phi");
    cs.phi = parse_field(phi_kv, {Variance::Upper, Variance::Lower},
                         parse_matrix(source_name, phi_kv.line, phi_kv.value,
                                      spec.dim, "phi"),
                         "phi");
    const KeyValue& xi_kv = r.require("structure", "xi");
    cs.xi = parse_field(xi_kv, {Variance::Upper},
                        parse_vector(source_name, xi_kv.line, xi_kv.value,
                                     spec.dim, "xi"),
                        "xi");
    if (const KeyValue* eta_kv = r.get("structure", "eta"))
      cs.eta = parse_field(*eta_kv, {Variance::Lower},
                           parse_vector(source_name, eta_kv->line, eta_kv->value,
                                        spec.dim, "eta"),
                           "eta");
    spec.structure = std::move(cs);
  }

  // [soliton]
  if (r.has_section("soliton")) {
    SolitonSpec sol;
    const KeyValue& v_kv = r.require("soliton", "v");
    sol.v = parse_field(v_kv, {Variance::Upper},
                        parse_vector(source_name, v_kv.line, v_kv.value,
                                     spec.dim, "v"),
                        "v");
    const KeyValue& l_kv = r.require("soliton", "lambda");
    try {
      sol.lambda = Expr::parse(l_kv.value, {}, spec.param_names);
    } catch (const std::exception& e) {
      fail(source_name, l_kv.line, std::string("lambda: ") + e.what());
    }
    spec.soliton = std::move(sol);
  }

  // [sampling]
  spec.sampling.box_lo.assign(spec.dim, -1.0);
  spec.sampling.box_hi.assign(spec.dim, 1.0);
  spec.sampling.count = 25;
  spec.sampling.seed = 12345;
  spec.sampling.points = {std::vector<double>(spec.dim, 0.0)};
  if (r.has_section("sampling")) {
    if (const KeyValue* kv = r.get("sampling", "points")) {
      spec.sampling.points.clear();
      for (const auto& p : split(kv->value, ';')) {
        std::vector<std::string> xs = split(p, ',');
        if (static_cast<int>(xs.size()) != spec.dim)
          fail(source_name, kv->line, "each point needs dim entries");
        std::vector<double> pt;
        for (const auto& x : xs)
          pt.push_back(parse_number(source_name, kv->line, x));
        spec.sampling.points.push_back(std::move(pt));
      }
    }
    if (const KeyValue* kv = r.get("sampling", "box")) {
      std::vector<std::string> lohi = split(kv->value, ',');
      if (lohi.size() != 2)
        fail(source_name, kv->line, "box wants 'lo, hi'");
      const double lo = parse_number(source_name, kv->line, lohi[0]);
      const double hi = parse_number(source_name, kv->line, lohi[1]);
      if (!(lo < hi)) fail(source_name, kv->line, "box needs lo < hi");
      spec.sampling.box_lo.assign(spec.dim, lo);
      spec.sampling.box_hi.assign(spec.dim, hi);
    }
    if (const KeyValue* kv = r.get("sampling", "count")) {
      spec.sampling.count =
          static_cast<int>(parse_number(source_name, kv->line, kv->value));
      if (spec.sampling.count < 0)
        fail(source_name, kv->line, "count must be >= 0");
    }
    if (const KeyValue* kv = r.get("sampling", "seed"))
      spec.sampling.seed = static_cast<std::uint64_t>(
          parse_number(source_name, kv->line, kv->value));
  }

  // [tolerances]
  if (r.has_section("tolerances")) {
    const auto& known = known_check_names();
    for (auto& [key, kv] : r.all("tolerances")) {
      const double t = parse_number(source_name, kv->line, kv->value);
      if (t <= 0.0) fail(source_name, kv->line, "tolerances must be positive");
      if (key == "default") {
        out.default_tolerance = t;
      } else if (std::find(known.begin(), known.end(), key) != known.end()) {
        out.check_tolerances[key] = t;
      } else {
        fail(source_name, kv->line, "unknown check name '" + key + "'");
      }
    }
  }

  r.check_no_unknown_keys();
  return out;
}

ParsedManifest load_manifest(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ManifestError("cannot open manifest '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_manifest(ss.str(), path);
}

}  // namespace acpm
