#pragma once

#include <optional>
#include <span>
#include <vector>

#include "acpm/jet.hpp"
#include "acpm/manifold.hpp"
#include "acpm/tensor.hpp"

namespace acpm {

// Tensor whose components are jets: the value plus as many derivative
// orders as the caller asked for. Row-major like TensorValue.
struct JetTensor {
  int dim = 0;
  int order = 0;
  std::vector<Variance> variance;
  std::vector<Jet> comps;

  JetTensor() = default;
  JetTensor(int dim, int order, std::vector<Variance> var);

  int rank() const { return static_cast<int>(variance.size()); }
  Jet& at(std::span<const int> idx);
  const Jet& at(std::span<const int> idx) const;

  template <class... I>
  const Jet& operator()(I... idx) const {
    const int a[] = {static_cast<int>(idx)...};
    return at(a);
  }
  template <class... I>
  Jet& operator()(I... idx) {
    const int a[] = {static_cast<int>(idx)...};
    return at(a);
  }

  TensorValue values() const;
};

JetTensor eval_field_jets_t(const TensorField& f, const ManifoldSpec& spec,
                            std::span<const double> point, int order);

JetTensor truncated(const JetTensor& t, int order);

// Everything the Levi-Civita connection yields at one point, computed in jet
// arithmetic from the metric component jets. `order` is the metric jet order;
// each derived object keeps the derivative orders that survive:
//   order >= 1: gamma (jets of order-1)
//   order >= 2: riemann, riemann_low, ricci, ricci_op, scalar, weyl (order-2)
class GeometryJets {
public:
  GeometryJets(const ManifoldSpec& spec, std::span<const double> point,
               int order);

  int dim() const { return dim_; }
  int order() const { return order_; }
  double epsilon() const { return epsilon_; }
  const MetricAtPoint& metric() const { return metric_; }

  const JetTensor& g() const { return g_; }
  const JetTensor& g_inv() const { return ginv_; }
  const JetTensor& gamma() const;        // Gamma^k_{ij}, slots (k,i,j)
  const JetTensor& riemann() const;      // R^l_{kij}: R(d_i,d_j)d_k = R^l_{kij} d_l
  const JetTensor& riemann_low() const;  // R(X,Y,Z,W), slots (i,j,k,w)
  const JetTensor& ricci() const;        // (0,2)
  const JetTensor& ricci_op() const;     // Q, (1,1)
  const Jet& scalar() const;             // r
  const JetTensor& weyl() const;         // C^l_{kij}, slots as riemann

private:
  int dim_ = 0;
  int order_ = 0;
  double epsilon_ = 1.0;
  MetricAtPoint metric_;
  JetTensor g_, ginv_, gamma_, riemann_, riemann_low_, ricci_, q_, weyl_;
  Jet scalar_;
};

// Covariant derivative; the direction slot is appended last and lower:
// result(slots..., m) = (nabla_m T)(slots...). Result order drops by one.
JetTensor covariant_derivative_jets(const JetTensor& t, const GeometryJets& geo);

// Lie derivative along v for arbitrary variance, via the torsion-free
// substitution of partials by covariant derivatives.
JetTensor lie_derivative_jets(const JetTensor& v, const JetTensor& t,
                              const GeometryJets& geo);

// (L_v nabla)(X,Y) = nabla_X nabla_Y v - nabla_{nabla_X Y} v + R(v,X)Y,
// slots (k,i,j), symmetric in (i,j).
JetTensor lie_derivative_connection_jets(const JetTensor& v,
                                         const GeometryJets& geo);

struct ConnectionValue {
  TensorValue gamma;                   // Gamma^k_{ij}, slots (k,i,j)
  std::optional<TensorValue> dgamma;   // slots (k,i,j,l) = d_l Gamma^k_{ij}
  std::optional<TensorValue> d2gamma;  // slots (k,i,j,l,m)
};

struct CurvatureBundle {
  TensorValue riemann;
  TensorValue riemann_low;
  TensorValue ricci;
  TensorValue ricci_op;
  double scalar = 0.0;
  TensorValue weyl;
  std::optional<TensorValue> nabla_riemann;  // (0,5): slots (i,j,k,w,m)
  MetricAtPoint metric;
};

// derivative_blocks: 0 = values only, 1 = + dgamma, 2 = + d2gamma.
ConnectionValue christoffel(const ManifoldSpec& spec,
                            std::span<const double> point,
                            int derivative_blocks = 0);

// Value-level bundle extracted from an existing jet computation.
CurvatureBundle make_bundle(const GeometryJets& geo, bool with_nabla_riemann = false);

CurvatureBundle curvature(const ManifoldSpec& spec, std::span<const double> point,
                          bool with_nabla_riemann = false);

TensorValue covariant_derivative(const TensorField& field,
                                 const ManifoldSpec& spec,
                                 std::span<const double> point);

TensorValue nabla_riemann(const ManifoldSpec& spec, std::span<const double> point);

TensorValue lie_derivative_metric(const TensorField& v, const ManifoldSpec& spec,
                                  std::span<const double> point);

TensorValue lie_derivative_tensor(const TensorField& v, const TensorField& field,
                                  const ManifoldSpec& spec,
                                  std::span<const double> point);

TensorValue lie_derivative_connection(const TensorField& v,
                                      const ManifoldSpec& spec,
                                      std::span<const double> point);

// K(X,Y) = g(R(X,Y)Y, X) / (g(X,X)g(Y,Y) - g(X,Y)^2).
// Throws DegeneratePlane when the denominator is below tolerance.
double sectional_curvature(std::span<const double> x, std::span<const double> y,
                           const ManifoldSpec& spec,
                           std::span<const double> point);

double sectional_curvature(std::span<const double> x, std::span<const double> y,
                           const CurvatureBundle& bundle);

}  // namespace acpm

#include "acpm/report.hpp"

namespace acpm {

// Structural sanity of the connection and curvature over the sample points:
// torsion, metric compatibility, the Riemann symmetries, both Bianchi
// identities and the trace-freeness of the conformal tensor.
ResidualReport connection_properties(const ManifoldSpec& spec,
                                     const std::vector<std::vector<double>>& points,
                                     double tol, bool with_second_bianchi = true);

}  // namespace acpm
