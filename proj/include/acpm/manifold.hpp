#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "acpm/expr.hpp"
#include "acpm/tensor.hpp"

namespace acpm {

// Component expressions of a tensor field over a chart, row-major.
struct TensorField {
  std::vector<Variance> variance;
  std::vector<Expr> comps;
  int rank() const { return static_cast<int>(variance.size()); }
};

// Almost contact structure data. phi uses the column convention
// phi(d_j) = sum_i phi[i][j] d_i. eta may be omitted and derived from xi.
struct ContactStructureSpec {
  TensorField phi;  // (1,1)
  TensorField xi;   // vector
  std::optional<TensorField> eta;  // one-form
};

struct SolitonSpec {
  TensorField v;  // vector field
  Expr lambda;    // constant expression in the declared parameters
};

struct SamplingPlan {
  std::vector<std::vector<double>> points;  // explicit samples
  std::vector<double> box_lo, box_hi;       // per-coordinate box (empty = none)
  int count = 0;
  std::uint64_t seed = 12345;
};

struct ManifoldSpec {
  std::string name;
  int dim = 0;
  std::vector<std::string> coords;
  double epsilon = 1.0;   // sign of g(xi, xi)
  bool epsilon_pinned = false;
  std::vector<std::string> param_names;  // always includes "eps"
  std::vector<double> param_values;
  TensorField metric;  // (0,2)
  std::optional<ContactStructureSpec> structure;
  std::optional<SolitonSpec> soliton;
  SamplingPlan sampling;

  int n() const { return (dim - 1) / 2; }
  std::span<const double> params() const { return param_values; }
};

// Registry of named example manifolds with documented expected verdicts.
ManifoldSpec builtin(const std::string& name);
const std::vector<std::string>& builtin_names();

void set_epsilon(ManifoldSpec& spec, double eps);
void set_param(ManifoldSpec& spec, const std::string& name, double value);

// Explicit points followed by seeded box samples.
std::vector<std::vector<double>> sample_points(
    const ManifoldSpec& spec,
    std::optional<std::uint64_t> seed_override = std::nullopt);

// Field evaluation at a point.
std::vector<Jet> eval_field_jets(const TensorField& f, const ManifoldSpec& spec,
                                 std::span<const double> point, int order);
TensorValue eval_field(const TensorField& f, const ManifoldSpec& spec,
                       std::span<const double> point);

// Parses a component list into a field; sizes must equal dim^rank.
TensorField make_field(std::vector<Variance> variance,
                       const std::vector<std::string>& comps,
                       const std::vector<std::string>& coords,
                       const std::vector<std::string>& params);

}  // namespace acpm
