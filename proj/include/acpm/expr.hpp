#pragma once

#include <map>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "acpm/jet.hpp"

namespace acpm {

enum class UnaryFn { Exp, Log, Sin, Cos, Sinh, Cosh, Sqrt };

// Immutable closed-form scalar field over declared chart coordinates and
// late-bound named parameters. Grammar: standard precedence with ^ above
// unary minus; ^ takes a constant integer exponent only.
class Expr {
public:
  Expr() = default;

  static Expr parse(std::string_view source,
                    const std::vector<std::string>& coords,
                    const std::vector<std::string>& params);

  bool valid() const { return root_ != nullptr; }
  const std::string& source() const { return source_; }

  // Taylor coefficients of the field at `point`, exact for the supported
  // function basis. `params` bound positionally against the declaration.
  Jet eval(std::span<const double> point, std::span<const double> params,
           int order) const;

  double eval_value(std::span<const double> point,
                    std::span<const double> params) const;

  struct Node;  // implementation detail, defined in expr.cpp

private:
  std::shared_ptr<const Node> root_;
  std::string source_;
  int n_coords_ = 0;
  int n_params_ = 0;
};

// Operation-style wrappers matching the engine vocabulary.
inline Expr parse(std::string_view source, const std::vector<std::string>& coords,
                  const std::vector<std::string>& params) {
  return Expr::parse(source, coords, params);
}

Jet eval_jet(const Expr& e, std::span<const double> point,
             const std::map<std::string, double>& param_values,
             const std::vector<std::string>& param_names, int order);

}  // namespace acpm
