#include "acpm/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <map>
#include <optional>
#include <ostream>

#include "acpm/classify.hpp"
#include "acpm/contact.hpp"
#include "acpm/errors.hpp"
#include "acpm/geometry.hpp"
#include "acpm/manifest.hpp"
#include "acpm/manifold.hpp"
#include "acpm/report.hpp"

namespace acpm {

namespace {

struct CommonOpts {
  std::string manifest_path;
  std::string builtin_name;
  double epsilon = 0.0;  // 0 = not set
  double tol = 1e-8;
  bool tol_set = false;
  std::uint64_t seed = 0;
  bool seed_set = false;
  bool json = false;
};

struct LoadedSpec {
  ManifoldSpec spec;
  std::string digest;
  double default_tol;
  std::map<std::string, double> check_tols;
};

LoadedSpec load_spec(const CommonOpts& o) {
  if (o.manifest_path.empty() == o.builtin_name.empty())
    throw ManifestError("exactly one of --manifest or --builtin is required");
  LoadedSpec l;
  l.default_tol = 1e-8;
  if (!o.builtin_name.empty()) {
    l.spec = builtin(o.builtin_name);
  } else {
    ParsedManifest m = load_manifest(o.manifest_path);
    l.spec = std::move(m.spec);
    l.digest = m.digest;
    if (m.default_tolerance > 0.0) l.default_tol = m.default_tolerance;
    l.check_tols = std::move(m.check_tolerances);
  }
  if (o.epsilon != 0.0) set_epsilon(l.spec, o.epsilon);
  if (!o.builtin_name.empty()) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "builtin:%s:eps=%+d", o.builtin_name.c_str(),
                  static_cast<int>(l.spec.epsilon));
    l.digest = fnv1a_digest(buf);
  }
  if (o.seed_set) l.spec.sampling.seed = o.seed;
  if (o.tol_set) l.default_tol = o.tol;
  return l;
}

Report base_report(const LoadedSpec& l) {
  Report r;
  r.engine_version = kEngineVersion;
  r.manifest_digest = l.digest;
  r.manifold = l.spec.name;
  r.dim = l.spec.dim;
  r.epsilon = l.spec.epsilon;
  r.seed = l.spec.sampling.seed;
  r.default_tolerance = l.default_tol;
  return r;
}

void apply_overrides(Report& r, const std::map<std::string, double>& tols) {
  for (auto& c : r.checks) {
    auto it = tols.find(c.name);
    if (it != tols.end()) c.tolerance = it->second;
  }
}

int finish(Report& r, const LoadedSpec& l, const CommonOpts& o,
           std::ostream& out) {
  apply_overrides(r, l.check_tols);
  if (o.json)
    out << emit_json(r);
  else
    out << emit_table(r);
  return r.all_pass() ? 0 : 1;
}

int cmd_check(const CommonOpts& o, std::ostream& out) {
  LoadedSpec l = load_spec(o);
  const double tol = l.default_tol;
  Report r = base_report(l);
  r.points = sample_points(l.spec);

  ResidualReport conn = connection_properties(l.spec, r.points, tol);
  r.checks.insert(r.checks.end(), conn.entries.begin(), conn.entries.end());

  if (l.spec.structure) {
    ResidualReport axioms = validate_structure(l.spec, r.points, tol);
    r.checks.insert(r.checks.end(), axioms.entries.begin(), axioms.entries.end());

    double kenmotsu = 0.0, normality = 0.0, almost = 0.0, contact_dev = 0.0;
    for (const auto& pt : r.points) {
      kenmotsu = std::max(kenmotsu, kenmotsu_residual_max(l.spec, pt));
      normality = std::max(normality, normality_residual_max(l.spec, pt));
      ExteriorDerivatives ed = exterior_derivatives(l.spec, pt);
      almost = std::max(
          almost, std::max(ed.almost_kenmotsu_residual, ed.d_eta_residual));
      contact_dev = std::max(contact_dev, ed.contact_deviation);
    }
    r.checks.push_back({"kenmotsu", kenmotsu, tol});
    r.checks.push_back({"normality", normality, tol});
    r.checks.push_back({"almost_kenmotsu_form", almost, tol});
    // informational: distance from the contact condition d eta = Phi
    r.constants.emplace_back("contact_form_deviation", contact_dev);

    if (axioms.all_pass()) {
      ResidualReport suite = kenmotsu_identity_suite(l.spec, r.points, tol,
                                                     l.spec.sampling.seed);
      // kenmotsu/normality already reported standalone
      for (const auto& e : suite.entries)
        if (e.name != "kenmotsu" && e.name != "normality")
          r.checks.push_back(e);
    }
  }
  return finish(r, l, o, out);
}

int cmd_classify(const CommonOpts& o, std::ostream& out) {
  LoadedSpec l = load_spec(o);
  ClassificationOptions copts;
  copts.tol = l.default_tol;
  copts.seed = l.spec.sampling.seed;
  ClassificationReport c = classify_all(l.spec, copts);
  Report r = base_report(l);
  r.points = c.points;
  r.checks = c.checks;
  r.constants = c.constants;
  return finish(r, l, o, out);
}

int cmd_soliton(const CommonOpts& o, bool solve_lambda, std::ostream& out) {
  LoadedSpec l = load_spec(o);
  ClassificationOptions copts;
  copts.tol = l.default_tol;
  copts.seed = l.spec.sampling.seed;
  ClassificationReport c = soliton_report(l.spec, copts, solve_lambda);
  Report r = base_report(l);
  r.points = c.points;
  r.checks = c.checks;
  r.constants = c.constants;
  return finish(r, l, o, out);
}

std::vector<double> parse_point(const std::string& text, int dim) {
  std::vector<double> p;
  std::string cur;
  auto push = [&](const std::string& tok) {
    try {
      std::size_t used = 0;
      p.push_back(std::stod(tok, &used));
      if (used != tok.size()) throw std::invalid_argument(tok);
    } catch (const std::exception&) {
      throw ManifestError("bad coordinate value '" + tok + "' in --point");
    }
  };
  for (char c : text) {
    if (c == ',') {
      push(cur);
      cur.clear();
    } else if (!std::isspace(static_cast<unsigned char>(c))) {
      cur += c;
    }
  }
  if (!cur.empty()) push(cur);
  if (static_cast<int>(p.size()) != dim)
    throw ManifestError("--point needs exactly " + std::to_string(dim) +
                        " coordinates");
  return p;
}

bool advance_index(std::vector<int>& idx, int dim) {
  for (int i = static_cast<int>(idx.size()) - 1; i >= 0; --i) {
    if (++idx[i] < dim) return true;
    idx[i] = 0;
  }
  return false;
}

void print_components(std::ostream& out, const std::string& label,
                      const TensorValue& t,
                      const std::vector<std::string>& coords, double drop) {
  const int d = t.dim();
  const int rank = t.rank();
  std::vector<int> idx(rank, 0);
  bool any = false;
  char buf[64];
  do {
    const double v = t.at(idx);
    if (std::abs(v) > drop) {
      out << "  " << label << "[";
      for (int s = 0; s < rank; ++s)
        out << coords[idx[s]] << (s + 1 < rank ? "," : "");
      std::snprintf(buf, sizeof buf, "] = % .15g\n", v);
      out << buf;
      any = true;
    }
  } while (advance_index(idx, d));
  if (!any) out << "  " << label << ": all components zero\n";
}

int cmd_curvature(const CommonOpts& o, const std::string& point_text,
                  std::ostream& out) {
  LoadedSpec l = load_spec(o);
  std::vector<double> pt(l.spec.dim, 0.0);
  if (!point_text.empty()) pt = parse_point(point_text, l.spec.dim);

  CurvatureBundle b = curvature(l.spec, pt);
  ConnectionValue conn = christoffel(l.spec, pt);
  const double drop = 1e-13 * (1.0 + b.metric.scale);

  if (o.json) {
    nlohmann::ordered_json j;
    j["engine_version"] = kEngineVersion;
    j["manifold"] = l.spec.name;
    j["epsilon"] = l.spec.epsilon;
    j["point"] = pt;
    j["coords"] = l.spec.coords;
    auto dump = [&](const char* key, const TensorValue& t) {
      j[key] = std::vector<double>(t.data().begin(), t.data().end());
    };
    dump("metric", b.metric.g);
    dump("gamma", conn.gamma);
    dump("riemann", b.riemann);
    dump("riemann_low", b.riemann_low);
    dump("ricci", b.ricci);
    dump("ricci_op", b.ricci_op);
    j["scalar"] = b.scalar;
    dump("weyl", b.weyl);
    out << j.dump(2) << "\n";
    return 0;
  }

  out << "manifold: " << l.spec.name << "  (epsilon = " << l.spec.epsilon
      << ")\npoint:";
  for (double x : pt) out << " " << x;
  out << "\n\nmetric g[i,j]:\n";
  print_components(out, "g", b.metric.g, l.spec.coords, drop);
  out << "\nconnection Gamma[k,i,j] (= Gamma^k_ij):\n";
  print_components(out, "Gamma", conn.gamma, l.spec.coords, drop);
  out << "\ncurvature R[l,k,i,j] (R(d_i,d_j)d_k = R[l,k,i,j] d_l):\n";
  print_components(out, "R", b.riemann, l.spec.coords, drop);
  out << "\ncurvature R[i,j,k,w] (= g(R(d_i,d_j)d_k, d_w)):\n";
  print_components(out, "Rlow", b.riemann_low, l.spec.coords, drop);
  out << "\nRicci Ric[i,j]:\n";
  print_components(out, "Ric", b.ricci, l.spec.coords, drop);
  out << "\nRicci operator Q[i,j] (= Q^i_j):\n";
  print_components(out, "Q", b.ricci_op, l.spec.coords, drop);
  char buf[64];
  std::snprintf(buf, sizeof buf, "\nscalar curvature r = % .15g\n", b.scalar);
  out << buf;
  out << "\nconformal tensor C[l,k,i,j]:\n";
  print_components(out, "C", b.weyl, l.spec.coords, drop);
  return 0;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err) {
  CLI::App app{"almost contact pseudo-metric manifold verification engine"};
  app.require_subcommand(1);

  CommonOpts o;
  std::string point_text;
  bool solve_lambda = false;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--manifest", o.manifest_path, "manifest file path");
    sub->add_option("--builtin", o.builtin_name, "builtin manifold name");
    sub->add_option("--epsilon", o.epsilon,
                    "override the structure sign (+1 or -1)");
    sub->add_option("--tol", o.tol, "default residual tolerance")
        ->each([&](const std::string&) { o.tol_set = true; });
    sub->add_option("--seed", o.seed, "sampling seed")
        ->each([&](const std::string&) { o.seed_set = true; });
    sub->add_flag("--json", o.json, "emit the machine report");
  };

  CLI::App* check = app.add_subcommand(
      "check", "structure axioms and Kenmotsu identity residuals");
  add_common(check);
  CLI::App* classify =
      app.add_subcommand("classify", "curvature classification report");
  add_common(classify);
  CLI::App* soliton = app.add_subcommand("soliton", "Ricci soliton residuals");
  add_common(soliton);
  soliton->add_flag("--solve-lambda", solve_lambda,
                    "least-squares soliton constant");
  CLI::App* curv =
      app.add_subcommand("curvature", "tensor component dump at a point");
  add_common(curv);
  curv->add_option("--point", point_text, "comma-separated coordinates");

  std::vector<std::string> rest(args.begin() + 1, args.end());
  std::reverse(rest.begin(), rest.end());
  try {
    app.parse(rest);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }

  try {
    if (check->parsed()) return cmd_check(o, out);
    if (classify->parsed()) return cmd_classify(o, out);
    if (soliton->parsed()) return cmd_soliton(o, solve_lambda, out);
    if (curv->parsed()) return cmd_curvature(o, point_text, out);
    err << "error: no subcommand\n";
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
}

}  // namespace acpm
