#include "acpm/manifold.hpp"

#include <stdexcept>

#include "acpm/errors.hpp"
#include "acpm/sampling.hpp"

namespace acpm {

TensorField make_field(std::vector<Variance> variance,
                       const std::vector<std::string>& comps,
                       const std::vector<std::string>& coords,
                       const std::vector<std::string>& params) {
  TensorField f;
  f.variance = std::move(variance);
  std::size_t expect = 1;
  for (int i = 0; i < f.rank(); ++i) expect *= coords.size();
  if (comps.size() != expect)
    throw std::invalid_argument("tensor field needs dim^rank components");
  f.comps.reserve(comps.size());
  for (const auto& s : comps) f.comps.push_back(Expr::parse(s, coords, params));
  return f;
}

std::vector<Jet> eval_field_jets(const TensorField& f, const ManifoldSpec& spec,
                                 std::span<const double> point, int order) {
  std::vector<Jet> out;
  out.reserve(f.comps.size());
  for (const auto& e : f.comps) out.push_back(e.eval(point, spec.params(), order));
  return out;
}

TensorValue eval_field(const TensorField& f, const ManifoldSpec& spec,
                       std::span<const double> point) {
  TensorValue t(spec.dim, f.variance);
  auto dst = t.data();
  for (std::size_t i = 0; i < f.comps.size(); ++i)
    dst[i] = f.comps[i].eval_value(point, spec.params());
  return t;
}

void set_epsilon(ManifoldSpec& spec, double eps) {
  if (eps != 1.0 && eps != -1.0)
    throw std::invalid_argument("epsilon must be +1 or -1");
  if (spec.epsilon_pinned && eps != spec.epsilon)
    throw std::invalid_argument("builtin '" + spec.name + "' pins epsilon to " +
                                std::to_string(spec.epsilon));
  spec.epsilon = eps;
  set_param(spec, "eps", eps);
}

void set_param(ManifoldSpec& spec, const std::string& name, double value) {
  for (std::size_t i = 0; i < spec.param_names.size(); ++i)
    if (spec.param_names[i] == name) {
      spec.param_values[i] = value;
      return;
    }
  throw std::invalid_argument("unknown parameter '" + name + "'");
}

std::vector<std::vector<double>> sample_points(
    const ManifoldSpec& spec, std::optional<std::uint64_t> seed_override) {
  std::vector<std::vector<double>> pts = spec.sampling.points;
  if (!spec.sampling.box_lo.empty() && spec.sampling.count > 0) {
    Rng rng(seed_override.value_or(spec.sampling.seed));
    for (int i = 0; i < spec.sampling.count; ++i)
      pts.push_back(rng.point_in_box(spec.sampling.box_lo, spec.sampling.box_hi));
  }
  return pts;
}

namespace {

ManifoldSpec base_spec(const std::string& name, std::vector<std::string> coords,
                       std::vector<std::string> extra_params,
                       std::vector<double> extra_values) {
  ManifoldSpec s;
  s.name = name;
  s.coords = std::move(coords);
  s.dim = static_cast<int>(s.coords.size());
  s.param_names = {"eps"};
  s.param_values = {1.0};
  for (std::size_t i = 0; i < extra_params.size(); ++i) {
    s.param_names.push_back(extra_params[i]);
    s.param_values.push_back(extra_values[i]);
  }
  return s;
}

void default_sampling(ManifoldSpec& s, double box, int count) {
  s.sampling.points = {std::vector<double>(s.dim, 0.0)};
  if (s.dim == 3) {
    s.sampling.points.push_back({0.3, -0.2, 0.1});
    s.sampling.points.push_back({1.0, 1.0, -1.0});
  }
  s.sampling.box_lo.assign(s.dim, -box);
  s.sampling.box_hi.assign(s.dim, box);
  s.sampling.count = count;
}

ContactStructureSpec rotation_structure(const ManifoldSpec& s) {
  // phi rotates coordinate pairs (x_a, y_a) and kills the last coordinate;
  // xi is the unit field along the last coordinate, eta its dual form.
  const int d = s.dim;
  std::vector<std::string> phi(static_cast<std::size_t>(d) * d, "0");
  for (int a = 0; a + 1 < d; a += 2) {
    phi[static_cast<std::size_t>(a + 1) * d + a] = "1";   // phi(d_a) = d_{a+1}
    phi[static_cast<std::size_t>(a) * d + a + 1] = "-1";  // phi(d_{a+1}) = -d_a
  }
  std::vector<std::string> xi(d, "0"), eta(d, "0");
  xi[d - 1] = "1";
  eta[d - 1] = "1";
  ContactStructureSpec cs;
  cs.phi = make_field({Variance::Upper, Variance::Lower}, phi, s.coords, s.param_names);
  cs.xi = make_field({Variance::Upper}, xi, s.coords, s.param_names);
  cs.eta = make_field({Variance::Lower}, eta, s.coords, s.param_names);
  return cs;
}

ManifoldSpec make_kenmotsu3() {
  ManifoldSpec s = base_spec("kenmotsu3", {"x", "y", "z"}, {"alpha"}, {1.5});
  s.metric = make_field({Variance::Lower, Variance::Lower},
                        {"exp(2*z)", "0", "0",
                         "0", "exp(2*z)", "0",
                         "0", "0", "eps"},
                        s.coords, s.param_names);
  s.structure = rotation_structure(s);
  SolitonSpec sol;
  sol.v = make_field({Variance::Upper}, {"0", "alpha", "0"}, s.coords, s.param_names);
  sol.lambda = Expr::parse("2*eps", {}, s.param_names);
  s.soliton = sol;
  default_sampling(s, 1.5, 50);
  return s;
}

ManifoldSpec make_kenmotsu5() {
  ManifoldSpec s = base_spec("kenmotsu5", {"x1", "y1", "x2", "y2", "z"}, {}, {});
  std::vector<std::string> g(25, "0");
  for (int i = 0; i < 4; ++i) g[static_cast<std::size_t>(i) * 5 + i] = "exp(2*z)";
  g[24] = "eps";
  s.metric = make_field({Variance::Lower, Variance::Lower}, g, s.coords, s.param_names);
  s.structure = rotation_structure(s);
  SolitonSpec sol;
  sol.v = make_field({Variance::Upper}, {"0", "0", "0", "0", "0"}, s.coords,
                     s.param_names);
  sol.lambda = Expr::parse("4*eps", {}, s.param_names);
  s.soliton = sol;
  default_sampling(s, 1.0, 30);
  return s;
}

ManifoldSpec make_flat3() {
  ManifoldSpec s = base_spec("flat3", {"x", "y", "z"}, {}, {});
  s.metric = make_field({Variance::Lower, Variance::Lower},
                        {"1", "0", "0", "0", "1", "0", "0", "0", "1"},
                        s.coords, s.param_names);
  default_sampling(s, 1.5, 50);
  return s;
}

// kenmotsu3 structure over an incompatible warping: a deliberate failure case.
ManifoldSpec make_perturbed3() {
  ManifoldSpec s = base_spec("perturbed3", {"x", "y", "z"}, {}, {});
  s.metric = make_field({Variance::Lower, Variance::Lower},
                        {"exp(2*z)", "0", "0",
                         "0", "exp(3*z)", "0",
                         "0", "0", "eps"},
                        s.coords, s.param_names);
  s.structure = rotation_structure(s);
  default_sampling(s, 1.5, 50);
  return s;
}

ManifoldSpec make_hyperbolic3() {
  ManifoldSpec s = make_kenmotsu3();
  s.name = "hyperbolic3";
  s.epsilon_pinned = true;
  return s;
}

}  // namespace

const std::vector<std::string>& builtin_names() {
  static const std::vector<std::string> names = {
      "kenmotsu3", "kenmotsu5", "flat3", "perturbed3", "hyperbolic3"};
  return names;
}

ManifoldSpec builtin(const std::string& name) {
  if (name == "kenmotsu3") return make_kenmotsu3();
  if (name == "kenmotsu5") return make_kenmotsu5();
  if (name == "flat3") return make_flat3();
  if (name == "perturbed3") return make_perturbed3();
  if (name == "hyperbolic3") return make_hyperbolic3();
  throw UnknownBuiltin("no builtin manifold named '" + name + "'");
}

}  // namespace acpm
