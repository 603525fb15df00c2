#include "acpm/classify.hpp"

#include <algorithm>
#include <cmath>

#include "acpm/errors.hpp"
#include "acpm/sampling.hpp"

namespace acpm {

namespace {

struct MaxTracker {
  double v = 0.0;
  void feed(double x) { v = std::max(v, std::abs(x)); }
};

double curv_scale(const GeometryJets& geo) {
  return 1.0 + std::max(geo.metric().scale, geo.riemann_low().values().max_abs());
}

const ContactStructureSpec& structure_of(const ManifoldSpec& spec) {
  if (!spec.structure)
    throw StructureInvalid("manifold spec declares no contact structure");
  return *spec.structure;
}

// Projects a raw direction into Ker(eta) through I - xi (x) eta.
std::vector<double> project_ker_eta(const std::vector<double>& raw,
                                    const TensorValue& xi,
                                    const TensorValue& eta) {
  const int d = xi.dim();
  std::vector<double> x(d, 0.0);
  for (int i = 0; i < d; ++i) {
    double s = raw[i];
    for (int j = 0; j < d; ++j) s -= xi(i) * eta(j) * raw[j];
    x[i] = s;
  }
  return x;
}

double quadratic_form(const TensorValue& g, std::span<const double> u,
                      std::span<const double> v) {
  const int d = g.dim();
  double s = 0.0;
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) s += g(i, j) * u[i] * v[j];
  return s;
}

}  // namespace

EtaEinsteinFit eta_einstein_fit(const ManifoldSpec& spec,
                                const std::vector<std::vector<double>>& points) {
  structure_of(spec);
  const int d = spec.dim;
  const int n = spec.n();
  const double eps = spec.epsilon;

  double s_gg = 0, s_ge = 0, s_ee = 0, s_gr = 0, s_er = 0;
  struct PointData {
    TensorValue g, ee, ric;
    double r, scale;
  };
  std::vector<PointData> data;
  data.reserve(points.size());

  for (const auto& pt : points) {
    GeometryJets geo(spec, pt, 2);
    ContactJets c = contact_jets(spec, geo, pt, 0);
    const TensorValue eta = c.eta.values();
    PointData pd{geo.g().values(), TensorValue(d, {Variance::Lower, Variance::Lower}),
                 geo.ricci().values(), geo.scalar().value(), geo.metric().scale};
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) pd.ee(i, j) = eta(i) * eta(j);
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) {
        s_gg += pd.g(i, j) * pd.g(i, j);
        s_ge += pd.g(i, j) * pd.ee(i, j);
        s_ee += pd.ee(i, j) * pd.ee(i, j);
        s_gr += pd.g(i, j) * pd.ric(i, j);
        s_er += pd.ee(i, j) * pd.ric(i, j);
      }
    data.push_back(std::move(pd));
  }

  const double det = s_gg * s_ee - s_ge * s_ge;
  EtaEinsteinFit fit;
  if (std::abs(det) < 1e-12 * std::max(s_gg * s_ee, 1.0)) {
    // eta (x) eta is (numerically) proportional to g; fall back to a pure
    // Einstein fit.
    fit.a = s_gr / s_gg;
    fit.b = 0.0;
  } else {
    fit.a = (s_ee * s_gr - s_ge * s_er) / det;
    fit.b = (s_gg * s_er - s_ge * s_gr) / det;
  }

  MaxTracker res, cf;
  for (const auto& pd : data) {
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j)
        res.feed((pd.ric(i, j) - fit.a * pd.g(i, j) - fit.b * pd.ee(i, j)) /
                 (1.0 + pd.scale));
    const double a_cf = pd.r / (2.0 * n) + eps;
    const double b_cf = -(eps * pd.r / (2.0 * n) + 2.0 * n + 1.0);
    cf.feed(fit.a - a_cf);
    cf.feed(fit.b - b_cf);
  }
  fit.fit_residual = res.v;
  fit.closed_form_residual = cf.v;
  fit.trace_residual = std::abs(eps * fit.a + fit.b + 2.0 * n);
  return fit;
}

PhiSectionalCheck constant_phi_sectional_check(
    const ManifoldSpec& spec, const std::vector<std::vector<double>>& points,
    int directions, std::uint64_t seed) {
  structure_of(spec);
  const int d = spec.dim;
  const double eps = spec.epsilon;
  Rng rng(seed);

  std::vector<double> samples;
  for (const auto& pt : points) {
    GeometryJets geo(spec, pt, 2);
    ContactJets c = contact_jets(spec, geo, pt, 0);
    const TensorValue phi = c.phi.values();
    const TensorValue xi = c.xi.values();
    const TensorValue eta = c.eta.values();
    const TensorValue rl = geo.riemann_low().values();
    const TensorValue& g = geo.metric().g;
    for (int t = 0; t < directions; ++t) {
      std::vector<double> x = project_ker_eta(rng.direction(d), xi, eta);
      std::vector<double> px(d, 0.0);
      for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) px[i] += phi(i, j) * x[j];
      const double gxx = quadratic_form(g, x, x);
      double x2 = 0.0;
      for (double v : x) x2 += v * v;
      if (std::abs(gxx) < 1e-8 * std::max(geo.metric().scale * x2, 1e-300))
        continue;  // light-like sample, resample via the next draw
      // K(X, phi X) = g(R(phi X, X)X, phi X) / g(X,X)^2
      double num = 0.0;
      for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j)
          for (int k = 0; k < d; ++k)
            for (int w = 0; w < d; ++w)
              num += rl(i, j, k, w) * px[i] * x[j] * x[k] * px[w];
      samples.push_back(num / (gxx * gxx));
    }
  }
  PhiSectionalCheck out;
  if (samples.empty()) throw DegeneratePlane("no usable phi-sectional sample");
  double mean = 0.0;
  for (double k : samples) mean += k;
  mean /= static_cast<double>(samples.size());
  out.c = mean;
  for (double k : samples) out.spread = std::max(out.spread, std::abs(k - mean));

  // Full model tensor with the sampled constant.
  const double c_ = out.c;
  MaxTracker model;
  for (const auto& pt : points) {
    GeometryJets geo(spec, pt, 2);
    ContactJets cs = contact_jets(spec, geo, pt, 0);
    const TensorValue phi = cs.phi.values();
    const TensorValue xi = cs.xi.values();
    const TensorValue eta = cs.eta.values();
    const TensorValue riem = geo.riemann().values();
    const TensorValue& g = geo.metric().g;
    TensorValue fund(d, {Variance::Lower, Variance::Lower});
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) {
        double s = 0.0;
        for (int a = 0; a < d; ++a) s += g(i, a) * phi(a, j);
        fund(i, j) = s;
      }
    const double s = curv_scale(geo);
    for (int l = 0; l < d; ++l)
      for (int k = 0; k < d; ++k)
        for (int i = 0; i < d; ++i)
          for (int j = 0; j < d; ++j) {
            double m = (c_ - 3.0 * eps) * (g(j, k) * (l == i ? 1.0 : 0.0) -
                                           g(i, k) * (l == j ? 1.0 : 0.0));
            m += (c_ + eps) *
                 (eps * eta(i) * eta(k) * (l == j ? 1.0 : 0.0) -
                  eps * eta(j) * eta(k) * (l == i ? 1.0 : 0.0) +
                  eta(j) * g(i, k) * xi(l) - eta(i) * g(j, k) * xi(l) +
                  fund(i, k) * phi(l, j) - fund(j, k) * phi(l, i) +
                  2.0 * fund(i, j) * phi(l, k));
            model.feed((riem(l, k, i, j) - 0.25 * m) / s);
          }
  }
  out.model_residual = model.v;
  return out;
}

ConformalFlatness conformal_flatness_check(
    const ManifoldSpec& spec, const std::vector<std::vector<double>>& points) {
  const int d = spec.dim;
  ConformalFlatness out;
  MaxTracker xi_flat, phi_flat, full;
  for (const auto& pt : points) {
    GeometryJets geo(spec, pt, 2);
    const TensorValue weyl = geo.weyl().values();
    const double s = curv_scale(geo);
    for (double v : weyl.data()) full.feed(v / s);
    if (spec.structure) {
      ContactJets c = contact_jets(spec, geo, pt, 0);
      const TensorValue phi = c.phi.values();
      const TensorValue xi = c.xi.values();
      for (int l = 0; l < d; ++l)
        for (int i = 0; i < d; ++i)
          for (int j = 0; j < d; ++j) {
            double cxi = 0.0;
            for (int k = 0; k < d; ++k) cxi += weyl(l, k, i, j) * xi(k);
            xi_flat.feed(cxi / s);
          }
      TensorValue phi2(d, {Variance::Upper, Variance::Lower});
      for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) {
          double p = 0.0;
          for (int a = 0; a < d; ++a) p += phi(i, a) * phi(a, j);
          phi2(i, j) = p;
        }
      // phi^2 C(phi X, phi Y) phi Z, componentwise over (X,Y,Z) = (a,b,c).
      for (int m = 0; m < d; ++m)
        for (int a = 0; a < d; ++a)
          for (int b = 0; b < d; ++b)
            for (int cc = 0; cc < d; ++cc) {
              double v = 0.0;
              for (int l = 0; l < d; ++l)
                for (int i = 0; i < d; ++i)
                  for (int j = 0; j < d; ++j)
                    for (int k = 0; k < d; ++k)
                      v += phi2(m, l) * weyl(l, k, i, j) * phi(i, a) *
                           phi(j, b) * phi(k, cc);
              phi_flat.feed(v / s);
            }
    }
  }
  out.xi_flat = xi_flat.v;
  out.phi_flat = phi_flat.v;
  out.full = full.v;
  return out;
}

double scalar_gradient_check(const ManifoldSpec& spec,
                             const std::vector<std::vector<double>>& points) {
  structure_of(spec);
  const int d = spec.dim;
  MaxTracker res;
  for (const auto& pt : points) {
    GeometryJets geo(spec, pt, 3);
    ContactJets c = contact_jets(spec, geo, pt, 0);
    const TensorValue xi = c.xi.values();
    const Jet& r = geo.scalar();
    const TensorValue ginv = geo.g_inv().values();
    double xir = 0.0;
    for (int a = 0; a < d; ++a) xir += xi(a) * r.d1(a);
    double dscale = 1.0;
    for (int a = 0; a < d; ++a) dscale = std::max(dscale, std::abs(r.d1(a)));
    for (int i = 0; i < d; ++i) {
      double dr = 0.0;
      for (int a = 0; a < d; ++a) dr += ginv(i, a) * r.d1(a);
      res.feed((dr - spec.epsilon * xir * xi(i)) / dscale);
    }
  }
  return res.v;
}

namespace {

// (1,3)-valued covariant derivative of curvature: slots (l, i, j, k, m) with
// (nabla_m R)(d_i, d_j) d_k = T^l d_l, obtained by raising the last slot of
// the all-lower derivative.
TensorValue nabla_riemann_up(const GeometryJets& geo) {
  const TensorValue nr = covariant_derivative_jets(geo.riemann_low(), geo).values();
  const TensorValue ginv = geo.g_inv().values();
  const int d = nr.dim();
  TensorValue out(d, {Variance::Upper, Variance::Lower, Variance::Lower,
                      Variance::Lower, Variance::Lower});
  for (int l = 0; l < d; ++l)
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j)
        for (int k = 0; k < d; ++k)
          for (int m = 0; m < d; ++m) {
            double s = 0.0;
            for (int w = 0; w < d; ++w) s += ginv(l, w) * nr(i, j, k, w, m);
            out(l, i, j, k, m) = s;
          }
  return out;
}

}  // namespace

std::vector<double> phi_symmetry_residual(const ManifoldSpec& spec,
                                          std::span<const double> point,
                                          std::span<const double> x,
                                          std::span<const double> y,
                                          std::span<const double> z,
                                          std::span<const double> w) {
  structure_of(spec);
  const int d = spec.dim;
  GeometryJets geo(spec, point, 3);
  ContactJets c = contact_jets(spec, geo, point, 0);
  const TensorValue phi = c.phi.values();
  const TensorValue nru = nabla_riemann_up(geo);

  std::vector<double> v(d, 0.0);
  for (int l = 0; l < d; ++l) {
    double s = 0.0;
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j)
        for (int k = 0; k < d; ++k)
          for (int m = 0; m < d; ++m)
            s += nru(l, i, j, k, m) * x[i] * y[j] * z[k] * w[m];
    v[l] = s;
  }
  std::vector<double> out(d, 0.0);
  for (int p = 0; p < d; ++p) {
    double s = 0.0;
    for (int a = 0; a < d; ++a)
      for (int l = 0; l < d; ++l) s += phi(p, a) * phi(a, l) * v[l];
    out[p] = s;
  }
  return out;
}

double phi_symmetry_max(const ManifoldSpec& spec,
                        const std::vector<std::vector<double>>& points) {
  structure_of(spec);
  const int d = spec.dim;
  MaxTracker res;
  for (const auto& pt : points) {
    GeometryJets geo(spec, pt, 3);
    ContactJets c = contact_jets(spec, geo, pt, 0);
    const TensorValue phi = c.phi.values();
    const TensorValue nru = nabla_riemann_up(geo);
    const double s = curv_scale(geo);
    TensorValue phi2(d, {Variance::Upper, Variance::Lower});
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) {
        double p = 0.0;
        for (int a = 0; a < d; ++a) p += phi(i, a) * phi(a, j);
        phi2(i, j) = p;
      }
    for (int p = 0; p < d; ++p)
      for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j)
          for (int k = 0; k < d; ++k)
            for (int m = 0; m < d; ++m) {
              double v = 0.0;
              for (int l = 0; l < d; ++l) v += phi2(p, l) * nru(l, i, j, k, m);
              res.feed(v / s);
            }
  }
  return res.v;
}

double soliton_residual_at(const ManifoldSpec& spec, const TensorField& v,
                           double lambda,
                           const std::vector<std::vector<double>>& points) {
  const int d = spec.dim;
  MaxTracker res;
  for (const auto& pt : points) {
    GeometryJets geo(spec, pt, 2);
    JetTensor vj = eval_field_jets_t(v, spec, pt, 1);
    const TensorValue lg =
        lie_derivative_jets(vj, truncated(geo.g(), 1), geo).values();
    const TensorValue ric = geo.ricci().values();
    const TensorValue g = geo.g().values();
    const double s = 1.0 + geo.metric().scale;
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j)
        res.feed((lg(i, j) + 2.0 * ric(i, j) + 2.0 * lambda * g(i, j)) / s);
  }
  return res.v;
}

double soliton_residual(const ManifoldSpec& spec, const SolitonSpec& sol,
                        const std::vector<std::vector<double>>& points) {
  const double lambda =
      sol.lambda.eval(std::span<const double>{}, spec.params(), 0).value();
  return soliton_residual_at(spec, sol.v, lambda, points);
}

SolitonSolve soliton_solve_lambda(const ManifoldSpec& spec, const TensorField& v,
                                  const std::vector<std::vector<double>>& points) {
  const int d = spec.dim;
  double s_ag = 0.0, s_gg = 0.0;
  for (const auto& pt : points) {
    GeometryJets geo(spec, pt, 2);
    JetTensor vj = eval_field_jets_t(v, spec, pt, 1);
    const TensorValue lg =
        lie_derivative_jets(vj, truncated(geo.g(), 1), geo).values();
    const TensorValue ric = geo.ricci().values();
    const TensorValue g = geo.g().values();
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) {
        const double a = lg(i, j) + 2.0 * ric(i, j);
        s_ag += a * g(i, j);
        s_gg += g(i, j) * g(i, j);
      }
  }
  SolitonSolve out;
  out.lambda_star = -s_ag / (2.0 * s_gg);
  out.residual = soliton_residual_at(spec, v, out.lambda_star, points);
  return out;
}

LieCurvatureCheck lie_curvature_check(
    const ManifoldSpec& spec, const TensorField& v,
    const std::vector<std::vector<double>>& points) {
  structure_of(spec);
  const int d = spec.dim;
  const int n = spec.n();
  const double eps = spec.epsilon;
  MaxTracker reeb, model, ric_reeb;
  double eta_lie_sum = 0.0;

  for (const auto& pt : points) {
    GeometryJets geo(spec, pt, 3);
    ContactJets c = contact_jets(spec, geo, pt, 1);
    JetTensor vj = eval_field_jets_t(v, spec, pt, 3);
    const TensorValue xi = c.xi.values();
    const TensorValue eta = c.eta.values();
    const TensorValue q = geo.ricci_op().values();
    const double s = curv_scale(geo);

    JetTensor lc = lie_derivative_connection_jets(vj, geo);
    const TensorValue nlc = covariant_derivative_jets(lc, geo).values();
    const TensorValue nq = covariant_derivative_jets(geo.ricci_op(), geo).values();

    // (L_V R)(d_a, d_b) d_c = (nabla_a L_V nabla)(b, c) - (nabla_b ...)(a, c)
    auto lie_r = [&](int k, int cslot, int a, int b) {
      return nlc(k, b, cslot, a) - nlc(k, a, cslot, b);
    };

    for (int k = 0; k < d; ++k)
      for (int a = 0; a < d; ++a) {
        double lrxixi = 0.0;
        for (int b = 0; b < d; ++b)
          for (int cc = 0; cc < d; ++cc)
            lrxixi += lie_r(k, cc, a, b) * xi(b) * xi(cc);
        reeb.feed(lrxixi / s);
      }

    for (int k = 0; k < d; ++k)
      for (int a = 0; a < d; ++a)
        for (int b = 0; b < d; ++b) {
          double lhs = 0.0;
          for (int cc = 0; cc < d; ++cc) lhs += lie_r(k, cc, a, b) * xi(cc);
          double rhs = 2.0 * eta(a) * (q(k, b) + 2.0 * n * eps * (k == b ? 1.0 : 0.0)) -
                       2.0 * eta(b) * (q(k, a) + 2.0 * n * eps * (k == a ? 1.0 : 0.0)) +
                       2.0 * (nq(k, b, a) - nq(k, a, b));
          model.feed((lhs - rhs) / s);
        }

    const TensorValue lric = lie_derivative_jets(vj, geo.ricci(), geo).values();
    const Jet& r = geo.scalar();
    double xir = 0.0;
    for (int a = 0; a < d; ++a) xir += xi(a) * r.d1(a);
    for (int a = 0; a < d; ++a) {
      double lhs = 0.0;
      for (int b = 0; b < d; ++b) lhs += lric(a, b) * xi(b);
      const double rhs = -r.d1(a) + xir * eta(a);
      ric_reeb.feed((lhs - rhs) / s);
    }

    const TensorValue lxi = lie_derivative_jets(vj, c.xi, geo).values();
    double el = 0.0;
    for (int i = 0; i < d; ++i) el += eta(i) * lxi(i);
    eta_lie_sum += el;
  }

  LieCurvatureCheck out;
  out.lie_r_reeb = reeb.v;
  out.lie_r_model = model.v;
  out.lie_ric_reeb = ric_reeb.v;
  out.eta_lie_xi = eta_lie_sum / static_cast<double>(points.size());
  return out;
}

Dim3Reconstruction dim3_reconstruction_check(
    const ManifoldSpec& spec, const std::vector<std::vector<double>>& points,
    bool check_ricci_form) {
  if (spec.dim != 3)
    throw DimensionError("curvature reconstruction from Ricci is a dim-3 identity");
  const int d = 3;
  Dim3Reconstruction out;
  MaxTracker res, qform;
  for (const auto& pt : points) {
    GeometryJets geo(spec, pt, 2);
    const TensorValue riem = geo.riemann().values();
    const TensorValue ric = geo.ricci().values();
    const TensorValue q = geo.ricci_op().values();
    const TensorValue g = geo.g().values();
    const double r = geo.scalar().value();
    const double s = curv_scale(geo);
    for (int l = 0; l < d; ++l)
      for (int k = 0; k < d; ++k)
        for (int i = 0; i < d; ++i)
          for (int j = 0; j < d; ++j) {
            double m = g(j, k) * q(l, i) - g(i, k) * q(l, j) +
                       ric(j, k) * (l == i ? 1.0 : 0.0) -
                       ric(i, k) * (l == j ? 1.0 : 0.0) -
                       0.5 * r * (g(j, k) * (l == i ? 1.0 : 0.0) -
                                  g(i, k) * (l == j ? 1.0 : 0.0));
            res.feed((riem(l, k, i, j) - m) / s);
          }
    if (check_ricci_form) {
      ContactJets c = contact_jets(spec, geo, pt, 0);
      const TensorValue xi = c.xi.values();
      const TensorValue eta = c.eta.values();
      const double eps = spec.epsilon;
      // Q = (r/2 + eps) I - (r/2 + 3 eps) xi (x) eta
      for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) {
          const double m = (0.5 * r + eps) * (i == j ? 1.0 : 0.0) -
                           (0.5 * r + 3.0 * eps) * xi(i) * eta(j);
          qform.feed((q(i, j) - m) / (1.0 + std::abs(r)));
        }
    }
  }
  out.residual = res.v;
  if (check_ricci_form) out.ricci_form_residual = qform.v;
  return out;
}

SpaceFormCheck space_form_check(const ManifoldSpec& spec,
                                const std::vector<std::vector<double>>& points,
                                int directions, std::uint64_t seed) {
  const int d = spec.dim;
  Rng rng(seed);
  std::vector<double> samples;
  MaxTracker model;
  double kappa_sum = 0.0;

  std::vector<CurvatureBundle> bundles;
  bundles.reserve(points.size());
  for (const auto& pt : points) {
    GeometryJets geo(spec, pt, 2);
    bundles.push_back(make_bundle(geo));
  }

  for (const auto& b : bundles) {
    for (int t = 0; t < directions; ++t) {
      std::vector<double> x = rng.direction(d);
      std::vector<double> y = rng.direction(d);
      try {
        samples.push_back(sectional_curvature(x, y, b));
      } catch (const DegeneratePlane&) {
        continue;
      }
    }
  }
  if (samples.empty()) throw DegeneratePlane("no usable plane sample");
  for (double k : samples) kappa_sum += k;

  SpaceFormCheck out;
  out.kappa = kappa_sum / static_cast<double>(samples.size());
  for (double k : samples)
    out.spread = std::max(out.spread, std::abs(k - out.kappa));

  for (const auto& b : bundles) {
    const TensorValue& g = b.metric.g;
    const double s = 1.0 + std::max(b.metric.scale, b.riemann_low.max_abs());
    for (int l = 0; l < d; ++l)
      for (int k = 0; k < d; ++k)
        for (int i = 0; i < d; ++i)
          for (int j = 0; j < d; ++j) {
            const double m = out.kappa * (g(j, k) * (l == i ? 1.0 : 0.0) -
                                          g(i, k) * (l == j ? 1.0 : 0.0));
            model.feed((b.riemann(l, k, i, j) - m) / s);
          }
  }
  out.model_residual = model.v;
  return out;
}

ClassificationReport classify_all(const ManifoldSpec& spec,
                                  const ClassificationOptions& opts) {
  ClassificationReport rep;
  rep.epsilon = spec.epsilon;
  rep.n = spec.n();
  rep.points = sample_points(spec);
  const auto& pts = rep.points;
  const double tol = opts.tol;

  SpaceFormCheck sf = space_form_check(spec, pts, opts.directions, opts.seed);
  rep.checks.push_back({"space_form", std::max(sf.spread, sf.model_residual), tol});
  rep.constants.emplace_back("kappa", sf.kappa);

  ConformalFlatness cf = conformal_flatness_check(spec, pts);
  rep.checks.push_back({"conformally_flat", cf.full, tol});

  if (spec.dim == 3) {
    Dim3Reconstruction d3 = dim3_reconstruction_check(spec, pts, false);
    rep.checks.push_back({"dim3_reconstruction", d3.residual, tol});
  }

  double r_mean = 0.0;
  for (const auto& pt : pts) {
    GeometryJets geo(spec, pt, 2);
    r_mean += geo.scalar().value();
  }
  r_mean /= static_cast<double>(pts.size());
  rep.constants.emplace_back("scalar_curvature", r_mean);

  if (!spec.structure) return rep;

  ResidualReport axioms = validate_structure(spec, pts, tol);
  double axiom_max = 0.0;
  for (const auto& e : axioms.entries) axiom_max = std::max(axiom_max, e.residual);
  rep.checks.push_back({"structure_axioms", axiom_max, tol});
  if (!axioms.all_pass()) return rep;  // theorem checks presuppose the axioms

  MaxTracker kenmotsu;
  for (const auto& pt : pts) kenmotsu.feed(kenmotsu_residual_max(spec, pt));
  rep.checks.push_back({"kenmotsu", kenmotsu.v, tol});

  EtaEinsteinFit fit = eta_einstein_fit(spec, pts);
  const double eta_einstein_res = std::max(
      {fit.fit_residual, fit.closed_form_residual, fit.trace_residual});
  rep.checks.push_back({"eta_einstein", eta_einstein_res, tol});
  rep.checks.push_back({"einstein", std::max(eta_einstein_res, std::abs(fit.b)), tol});
  rep.constants.emplace_back("a", fit.a);
  rep.constants.emplace_back("b", fit.b);

  PhiSectionalCheck ps =
      constant_phi_sectional_check(spec, pts, opts.directions, opts.seed + 1);
  rep.checks.push_back(
      {"phi_sectional_constant", std::max(ps.spread, ps.model_residual), tol});
  rep.constants.emplace_back("c", ps.c);

  rep.checks.push_back({"xi_conformally_flat", cf.xi_flat, tol});
  rep.checks.push_back({"phi_conformally_flat", cf.phi_flat, tol});

  // Instance-level structure theorems.
  const bool xi_flat_pass = cf.xi_flat < tol;
  const bool eta_einstein_pass = eta_einstein_res < tol;
  rep.checks.push_back({"xi_flat_eta_einstein_agree",
                        xi_flat_pass == eta_einstein_pass ? 0.0 : 1.0, 0.5});
  if (spec.dim > 3 && cf.phi_flat < tol) {
    const double r_expected = -spec.epsilon * 2.0 * rep.n * (2.0 * rep.n + 1.0);
    rep.checks.push_back({"phi_flat_scalar_curvature",
                          std::abs(r_mean - r_expected) / (1.0 + std::abs(r_expected)),
                          tol});
  }
  if (spec.dim > 3)
    rep.checks.push_back({"scalar_gradient", scalar_gradient_check(spec, pts), tol});

  rep.checks.push_back({"phi_symmetry", phi_symmetry_max(spec, pts), tol});

  if (spec.dim == 3 && kenmotsu.v < tol) {
    Dim3Reconstruction d3 = dim3_reconstruction_check(spec, pts, true);
    rep.checks.push_back({"ricci_operator_form_dim3", *d3.ricci_form_residual, tol});
  }
  return rep;
}

ClassificationReport soliton_report(const ManifoldSpec& spec,
                                    const ClassificationOptions& opts,
                                    bool solve_lambda) {
  if (!spec.soliton)
    throw ManifestError("no soliton block declared for '" + spec.name + "'");
  ClassificationReport rep;
  rep.epsilon = spec.epsilon;
  rep.n = spec.n();
  rep.points = sample_points(spec);
  const auto& pts = rep.points;
  const double tol = opts.tol;

  const double lambda_decl =
      spec.soliton->lambda.eval(std::span<const double>{}, spec.params(), 0).value();
  rep.constants.emplace_back("lambda", lambda_decl);
  rep.checks.push_back(
      {"soliton", soliton_residual(spec, *spec.soliton, pts), tol});

  if (solve_lambda) {
    SolitonSolve sol = soliton_solve_lambda(spec, spec.soliton->v, pts);
    rep.constants.emplace_back("lambda_star", sol.lambda_star);
    rep.checks.push_back({"soliton_at_lambda_star", sol.residual, tol});
    const double expected = 2.0 * rep.n * spec.epsilon;
    rep.checks.push_back(
        {"soliton_lambda_theorem", std::abs(sol.lambda_star - expected), tol});
    rep.constants.emplace_back("lambda_star_minus_2n_eps",
                               sol.lambda_star - expected);
  }

  if (spec.structure) {
    ResidualReport axioms = validate_structure(spec, pts, tol);
    if (axioms.all_pass()) {
      LieCurvatureCheck lie = lie_curvature_check(spec, spec.soliton->v, pts);
      rep.checks.push_back({"lie_curvature_reeb", lie.lie_r_reeb, tol});
      rep.checks.push_back({"lie_curvature_model", lie.lie_r_model, tol});
      rep.checks.push_back({"lie_ricci_reeb", lie.lie_ric_reeb, tol});
      rep.constants.emplace_back("eta_lie_v_xi", lie.eta_lie_xi);
    }
  }
  return rep;
}

}  // namespace acpm
