#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "acpm/contact.hpp"
#include "acpm/geometry.hpp"
#include "acpm/manifold.hpp"
#include "acpm/report.hpp"

namespace acpm {

struct ClassificationOptions {
  double tol = 1e-8;
  std::uint64_t seed = 2024;
  int directions = 24;  // random direction/plane samples per point set
};

struct ClassificationReport {
  std::vector<CheckEntry> checks;
  std::vector<std::pair<std::string, double>> constants;
  std::vector<std::vector<double>> points;
  double epsilon = 1.0;
  int n = 0;

  bool all_pass() const {
    for (const auto& e : checks)
      if (!e.pass()) return false;
    return true;
  }
};

// Least-squares fit of Ric against {g, eta (x) eta} over all points,
// cross-checked against the closed forms a = r/2n + eps,
// b = -(eps r/2n + 2n + 1) and the trace constraint eps a + b = -2n.
struct EtaEinsteinFit {
  double a = 0.0;
  double b = 0.0;
  double fit_residual = 0.0;
  double closed_form_residual = 0.0;
  double trace_residual = 0.0;  // |eps a + b + 2n|
};
EtaEinsteinFit eta_einstein_fit(const ManifoldSpec& spec,
                                const std::vector<std::vector<double>>& points);

// c sampled from K(X, phi X) over Ker(eta) directions, then the full
// constant-phi-sectional model tensor evaluated against Riemann.
struct PhiSectionalCheck {
  double c = 0.0;
  double spread = 0.0;          // max |K_i - c|
  double model_residual = 0.0;  // scaled componentwise model mismatch
};
PhiSectionalCheck constant_phi_sectional_check(
    const ManifoldSpec& spec, const std::vector<std::vector<double>>& points,
    int directions, std::uint64_t seed);

struct ConformalFlatness {
  double xi_flat = 0.0;    // |C(X,Y)xi|
  double phi_flat = 0.0;   // |phi^2 C(phi X, phi Y) phi Z|
  double full = 0.0;       // |C|
};
ConformalFlatness conformal_flatness_check(
    const ManifoldSpec& spec, const std::vector<std::vector<double>>& points);

// |Dr - eps xi(r) xi| with the gradient taken through the inverse metric.
double scalar_gradient_check(const ManifoldSpec& spec,
                             const std::vector<std::vector<double>>& points);

std::vector<double> phi_symmetry_residual(const ManifoldSpec& spec,
                                          std::span<const double> point,
                                          std::span<const double> x,
                                          std::span<const double> y,
                                          std::span<const double> z,
                                          std::span<const double> w);

// Componentwise |phi^2 (nabla_W R)(X,Y,Z)| over the chart, scaled.
double phi_symmetry_max(const ManifoldSpec& spec,
                        const std::vector<std::vector<double>>& points);

// Max componentwise residual of (L_V g) + 2 Ric + 2 lambda g over points.
double soliton_residual(const ManifoldSpec& spec, const SolitonSpec& sol,
                        const std::vector<std::vector<double>>& points);
double soliton_residual_at(const ManifoldSpec& spec, const TensorField& v,
                           double lambda,
                           const std::vector<std::vector<double>>& points);

struct SolitonSolve {
  double lambda_star = 0.0;
  double residual = 0.0;  // at lambda_star
};
SolitonSolve soliton_solve_lambda(const ManifoldSpec& spec, const TensorField& v,
                                  const std::vector<std::vector<double>>& points);

// Lie derivative of curvature along V, assembled from the Lie derivative of
// the connection, with its Reeb-direction consequences.
struct LieCurvatureCheck {
  double lie_r_reeb = 0.0;    // |(L_V R)(X,xi)xi|
  double lie_r_model = 0.0;   // |(L_V R)(X,Y)xi - model|
  double lie_ric_reeb = 0.0;  // |(L_V Ric)(X,xi) + X(r) - xi(r) eta(X)|
  double eta_lie_xi = 0.0;    // eta(L_V xi), reported next to lambda* - 2n eps
};
LieCurvatureCheck lie_curvature_check(const ManifoldSpec& spec,
                                      const TensorField& v,
                                      const std::vector<std::vector<double>>& points);

struct Dim3Reconstruction {
  double residual = 0.0;  // R rebuilt from Q, g, r vs computed R
  std::optional<double> ricci_form_residual;  // Q vs (r/2+eps)I-(r/2+3eps) xi(x)eta
};
Dim3Reconstruction dim3_reconstruction_check(
    const ManifoldSpec& spec, const std::vector<std::vector<double>>& points,
    bool check_ricci_form = false);

struct SpaceFormCheck {
  double kappa = 0.0;
  double spread = 0.0;
  double model_residual = 0.0;  // R - kappa {g(Y,Z)X - g(X,Z)Y}
};
SpaceFormCheck space_form_check(const ManifoldSpec& spec,
                                const std::vector<std::vector<double>>& points,
                                int directions, std::uint64_t seed);

// Aggregates the classification suite for one spec; structure-dependent
// checks are skipped when no structure block is declared.
ClassificationReport classify_all(const ManifoldSpec& spec,
                                  const ClassificationOptions& opts);

// Soliton residual, solved constant and Lie-curvature consequences.
ClassificationReport soliton_report(const ManifoldSpec& spec,
                                    const ClassificationOptions& opts,
                                    bool solve_lambda);

}  // namespace acpm
