#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "acpm/geometry.hpp"
#include "acpm/manifold.hpp"
#include "acpm/report.hpp"

namespace acpm {

// Structure tensors evaluated at one point. eta is derived from xi through
// the metric when the spec does not declare it.
struct ContactJets {
  JetTensor phi;  // (1,1)
  JetTensor xi;   // vector
  JetTensor eta;  // one-form
};

ContactJets contact_jets(const ManifoldSpec& spec, const GeometryJets& geo,
                         std::span<const double> point, int order);

// Residuals of every structural axiom over the sample points: phi^2 =
// -I + eta (x) xi, eta(xi) = 1, phi xi = 0, eta o phi = 0, metric
// compatibility, duality of eta and xi, skewness of g(phi., .) and the unit
// length of xi. Throws DimensionError on even-dimensional charts.
ResidualReport validate_structure(const ManifoldSpec& spec,
                                  const std::vector<std::vector<double>>& points,
                                  double tol);

struct ExteriorDerivatives {
  TensorValue d_eta;  // (0,2)
  TensorValue d_phi;  // (0,3), exterior derivative of the fundamental form
  double almost_kenmotsu_residual = 0.0;  // |dPhi - 2 eta ^ Phi|, scaled
  double d_eta_residual = 0.0;            // |d eta|, scaled
  double contact_deviation = 0.0;         // |d eta - Phi|, informational
};

// Convention: no 1/2 factor in d, determinant wedge; the pair is pinned by
// the almost Kenmotsu condition dPhi = 2 eta ^ Phi holding on the builtins.
ExteriorDerivatives exterior_derivatives(const ManifoldSpec& spec,
                                         std::span<const double> point);

// (nabla_{phi X} phi)Y - phi (nabla_X phi)Y + (nabla_X eta)(Y) xi.
std::vector<double> normality_residual(const ManifoldSpec& spec,
                                       std::span<const double> point,
                                       std::span<const double> x,
                                       std::span<const double> y);

// (nabla_X phi)Y + eta(Y) phi X + eps g(X, phi Y) xi.
std::vector<double> kenmotsu_residual(const ManifoldSpec& spec,
                                      std::span<const double> point,
                                      std::span<const double> x,
                                      std::span<const double> y);

// Componentwise maxima over all coordinate directions, scale-normalized.
double normality_residual_max(const ManifoldSpec& spec,
                              std::span<const double> point);
double kenmotsu_residual_max(const ManifoldSpec& spec,
                             std::span<const double> point);

// Residuals of the defining consequences of the Kenmotsu condition: the
// nabla xi / nabla eta forms, the Reeb Lie derivatives, the curvature
// identities involving xi, and the Ricci-operator derivative identities.
// Requires validate_structure to pass first; throws StructureInvalid.
ResidualReport kenmotsu_identity_suite(
    const ManifoldSpec& spec, const std::vector<std::vector<double>>& points,
    double tol, std::uint64_t seed = 2024);

}  // namespace acpm
