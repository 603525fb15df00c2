#include "acpm/contact.hpp"

#include <algorithm>
#include <cmath>

#include "acpm/errors.hpp"
#include "acpm/sampling.hpp"

namespace acpm {

namespace {

const ContactStructureSpec& structure_of(const ManifoldSpec& spec) {
  if (!spec.structure)
    throw StructureInvalid("manifold spec declares no contact structure");
  return *spec.structure;
}

// Residuals are reported relative to the local metric magnitude.
double scaled(double raw, double metric_scale) {
  return raw / (1.0 + metric_scale);
}

struct MaxTracker {
  double v = 0.0;
  void feed(double x) { v = std::max(v, std::abs(x)); }
};

}  // namespace

ContactJets contact_jets(const ManifoldSpec& spec, const GeometryJets& geo,
                         std::span<const double> point, int order) {
  const auto& cs = structure_of(spec);
  if (order > geo.order())
    throw std::logic_error("contact jets cannot exceed the metric jet order");
  ContactJets out;
  out.phi = eval_field_jets_t(cs.phi, spec, point, order);
  out.xi = eval_field_jets_t(cs.xi, spec, point, order);
  if (cs.eta) {
    out.eta = eval_field_jets_t(*cs.eta, spec, point, order);
  } else {
    // eta_i = eps g_ij xi^j
    const int d = spec.dim;
    JetTensor g = truncated(geo.g(), order);
    out.eta = JetTensor(d, order, {Variance::Lower});
    for (int i = 0; i < d; ++i) {
      Jet s(d, order);
      for (int j = 0; j < d; ++j) s += g(i, j) * out.xi(j);
      out.eta(i) = s * spec.epsilon;
    }
  }
  return out;
}

ResidualReport validate_structure(const ManifoldSpec& spec,
                                  const std::vector<std::vector<double>>& points,
                                  double tol) {
  structure_of(spec);
  if (spec.dim % 2 == 0)
    throw DimensionError("almost contact structures need an odd-dimensional chart");
  const int d = spec.dim;
  const double eps = spec.epsilon;

  MaxTracker phi2, etaxi, phixi, etaphi, compat, dual, skew, unit;
  for (const auto& pt : points) {
    GeometryJets geo(spec, pt, 0);
    ContactJets c = contact_jets(spec, geo, pt, 0);
    const TensorValue phi = c.phi.values();
    const TensorValue xi = c.xi.values();
    const TensorValue eta = c.eta.values();
    const TensorValue& g = geo.metric().g;
    const double s = geo.metric().scale;

    double exi = 0.0;
    for (int i = 0; i < d; ++i) exi += eta(i) * xi(i);
    etaxi.feed(scaled(exi - 1.0, s));

    for (int i = 0; i < d; ++i) {
      double pxi = 0.0, uxi = 0.0, ephi = 0.0;
      for (int j = 0; j < d; ++j) {
        pxi += phi(i, j) * xi(j);
        ephi += eta(j) * phi(j, i);
        uxi += g(i, j) * xi(j);
      }
      phixi.feed(scaled(pxi, s));
      etaphi.feed(scaled(ephi, s));
      dual.feed(scaled(eta(i) - eps * uxi, s));
    }

    double xx = 0.0;
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) xx += g(i, j) * xi(i) * xi(j);
    unit.feed(scaled(xx - eps, s));

    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) {
        double p2 = 0.0, cc = 0.0, fij = 0.0, fji = 0.0;
        for (int a = 0; a < d; ++a) {
          p2 += phi(i, a) * phi(a, j);
          fij += g(i, a) * phi(a, j);
          fji += g(j, a) * phi(a, i);
          for (int b = 0; b < d; ++b)
            cc += phi(a, i) * g(a, b) * phi(b, j);
        }
        phi2.feed(scaled(p2 + (i == j ? 1.0 : 0.0) - xi(i) * eta(j), s));
        compat.feed(scaled(cc - g(i, j) + eps * eta(i) * eta(j), s));
        skew.feed(scaled(fij + fji, s));
      }
  }

  ResidualReport rep;
  rep.entries = {
      {"phi_square", phi2.v, tol},    {"eta_xi", etaxi.v, tol},
      {"phi_xi", phixi.v, tol},       {"eta_phi", etaphi.v, tol},
      {"metric_compat", compat.v, tol}, {"eta_dual", dual.v, tol},
      {"phi_skew", skew.v, tol},      {"xi_unit", unit.v, tol},
  };
  return rep;
}

ExteriorDerivatives exterior_derivatives(const ManifoldSpec& spec,
                                         std::span<const double> point) {
  const int d = spec.dim;
  GeometryJets geo(spec, point, 1);
  ContactJets c = contact_jets(spec, geo, point, 1);

  // Fundamental form jets: Phi_ij = g_ia phi^a_j.
  JetTensor fund(d, 1, {Variance::Lower, Variance::Lower});
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      Jet s(d, 1);
      for (int a = 0; a < d; ++a) s += geo.g()(i, a) * c.phi(a, j);
      fund(i, j) = truncate(s, 1);
    }

  ExteriorDerivatives out;
  out.d_eta = TensorValue(d, {Variance::Lower, Variance::Lower});
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      out.d_eta(i, j) = c.eta(j).d1(i) - c.eta(i).d1(j);

  out.d_phi = TensorValue(d, {Variance::Lower, Variance::Lower, Variance::Lower});
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      for (int k = 0; k < d; ++k)
        out.d_phi(i, j, k) = derivative(fund(j, k), i).value() -
                             derivative(fund(i, k), j).value() +
                             derivative(fund(i, j), k).value();

  const TensorValue eta = c.eta.values();
  const TensorValue f = fund.values();
  const double s = 1.0 + std::max(geo.metric().scale, f.max_abs());
  MaxTracker almost, deta, contact;
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      deta.feed(out.d_eta(i, j));
      contact.feed(out.d_eta(i, j) - f(i, j));
      for (int k = 0; k < d; ++k) {
        const double wedge =
            eta(i) * f(j, k) - eta(j) * f(i, k) + eta(k) * f(i, j);
        almost.feed(out.d_phi(i, j, k) - 2.0 * wedge);
      }
    }
  out.almost_kenmotsu_residual = almost.v / s;
  out.d_eta_residual = deta.v / s;
  out.contact_deviation = contact.v / s;
  return out;
}

namespace {

struct StructureValues {
  TensorValue phi, xi, eta;       // values
  TensorValue nphi, nxi, neta;    // covariant derivatives, direction last
};

StructureValues structure_values(const ManifoldSpec& spec,
                                 const GeometryJets& geo,
                                 std::span<const double> point) {
  ContactJets c = contact_jets(spec, geo, point, 1);
  StructureValues v;
  v.phi = c.phi.values();
  v.xi = c.xi.values();
  v.eta = c.eta.values();
  v.nphi = covariant_derivative_jets(c.phi, geo).values();
  v.nxi = covariant_derivative_jets(c.xi, geo).values();
  v.neta = covariant_derivative_jets(c.eta, geo).values();
  return v;
}

}  // namespace

std::vector<double> normality_residual(const ManifoldSpec& spec,
                                       std::span<const double> point,
                                       std::span<const double> x,
                                       std::span<const double> y) {
  const int d = spec.dim;
  GeometryJets geo(spec, point, 1);
  StructureValues v = structure_values(spec, geo, point);

  std::vector<double> phx(d, 0.0);
  for (int m = 0; m < d; ++m)
    for (int a = 0; a < d; ++a) phx[m] += v.phi(m, a) * x[a];

  double ne = 0.0;
  for (int j = 0; j < d; ++j)
    for (int m = 0; m < d; ++m) ne += v.neta(j, m) * x[m] * y[j];

  std::vector<double> res(d, 0.0);
  for (int l = 0; l < d; ++l) {
    double r1 = 0.0, r2 = 0.0;
    for (int j = 0; j < d; ++j)
      for (int m = 0; m < d; ++m) r1 += v.nphi(l, j, m) * phx[m] * y[j];
    for (int b = 0; b < d; ++b) {
      double t = 0.0;
      for (int j = 0; j < d; ++j)
        for (int m = 0; m < d; ++m) t += v.nphi(b, j, m) * x[m] * y[j];
      r2 += v.phi(l, b) * t;
    }
    res[l] = r1 - r2 + ne * v.xi(l);
  }
  return res;
}

std::vector<double> kenmotsu_residual(const ManifoldSpec& spec,
                                      std::span<const double> point,
                                      std::span<const double> x,
                                      std::span<const double> y) {
  const int d = spec.dim;
  GeometryJets geo(spec, point, 1);
  StructureValues v = structure_values(spec, geo, point);
  const TensorValue& g = geo.metric().g;

  double etay = 0.0;
  for (int j = 0; j < d; ++j) etay += v.eta(j) * y[j];
  std::vector<double> phx(d, 0.0), phy(d, 0.0);
  for (int m = 0; m < d; ++m)
    for (int a = 0; a < d; ++a) {
      phx[m] += v.phi(m, a) * x[a];
      phy[m] += v.phi(m, a) * y[a];
    }
  double gxphy = 0.0;
  for (int a = 0; a < d; ++a)
    for (int b = 0; b < d; ++b) gxphy += g(a, b) * x[a] * phy[b];

  std::vector<double> res(d, 0.0);
  for (int l = 0; l < d; ++l) {
    double nab = 0.0;
    for (int j = 0; j < d; ++j)
      for (int m = 0; m < d; ++m) nab += v.nphi(l, j, m) * x[m] * y[j];
    res[l] = nab + etay * phx[l] + spec.epsilon * gxphy * v.xi(l);
  }
  return res;
}

double kenmotsu_residual_max(const ManifoldSpec& spec,
                             std::span<const double> point) {
  const int d = spec.dim;
  GeometryJets geo(spec, point, 1);
  StructureValues v = structure_values(spec, geo, point);
  const TensorValue& g = geo.metric().g;
  MaxTracker t;
  for (int l = 0; l < d; ++l)
    for (int j = 0; j < d; ++j)
      for (int m = 0; m < d; ++m) {
        double fund_mj = 0.0;
        for (int a = 0; a < d; ++a) fund_mj += g(m, a) * v.phi(a, j);
        t.feed(v.nphi(l, j, m) + v.eta(j) * v.phi(l, m) +
               spec.epsilon * fund_mj * v.xi(l));
      }
  return scaled(t.v, geo.metric().scale);
}

double normality_residual_max(const ManifoldSpec& spec,
                              std::span<const double> point) {
  const int d = spec.dim;
  GeometryJets geo(spec, point, 1);
  StructureValues v = structure_values(spec, geo, point);
  MaxTracker t;
  for (int l = 0; l < d; ++l)
    for (int j = 0; j < d; ++j)
      for (int m = 0; m < d; ++m) {
        double r = v.neta(j, m) * v.xi(l);
        for (int a = 0; a < d; ++a)
          r += v.nphi(l, j, a) * v.phi(a, m) - v.phi(l, a) * v.nphi(a, j, m);
        t.feed(r);
      }
  return scaled(t.v, geo.metric().scale);
}

ResidualReport kenmotsu_identity_suite(
    const ManifoldSpec& spec, const std::vector<std::vector<double>>& points,
    double tol, std::uint64_t seed) {
  ResidualReport axioms = validate_structure(spec, points, tol);
  if (!axioms.all_pass())
    throw StructureInvalid(
        "structure axioms fail; the identity suite requires a validated "
        "almost contact pseudo-metric structure");

  const int d = spec.dim;
  const int n = spec.n();
  const double eps = spec.epsilon;
  Rng rng(seed);

  MaxTracker nabla_xi, nabla_eta, lie_g, lie_phi, lie_eta;
  MaxTracker kenmotsu, normality;
  MaxTracker curv_reeb, eta_curv, curv_reeb_mixed, ricci_reeb, reeb_sec;
  MaxTracker nabla_curv_reeb, nabla_q_reeb, nabla_q_along_reeb;

  for (const auto& pt : points) {
    GeometryJets geo(spec, pt, 3);
    ContactJets c = contact_jets(spec, geo, pt, 2);
    const TensorValue phi = c.phi.values();
    const TensorValue xi = c.xi.values();
    const TensorValue eta = c.eta.values();
    const TensorValue& g = geo.metric().g;
    const double s = geo.metric().scale;
    const TensorValue nxi = covariant_derivative_jets(c.xi, geo).values();
    const TensorValue neta = covariant_derivative_jets(c.eta, geo).values();

    for (int i = 0; i < d; ++i)
      for (int m = 0; m < d; ++m) {
        nabla_xi.feed(scaled(
            nxi(i, m) - (i == m ? 1.0 : 0.0) + xi(i) * eta(m), s));
        nabla_eta.feed(scaled(
            neta(i, m) - (eps * g(m, i) - eta(m) * eta(i)), s));
      }

    // Reeb Lie derivatives: L_xi g = 2(g - eps eta (x) eta), and phi, eta
    // are invariant along xi.
    {
      TensorValue lg =
          lie_derivative_jets(c.xi, truncated(geo.g(), 2), geo).values();
      for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j)
          lie_g.feed(scaled(
              lg(i, j) - 2.0 * (g(i, j) - eps * eta(i) * eta(j)), s));
      TensorValue lphi = lie_derivative_jets(c.xi, c.phi, geo).values();
      TensorValue leta = lie_derivative_jets(c.xi, c.eta, geo).values();
      for (int i = 0; i < d; ++i) {
        for (int j = 0; j < d; ++j) lie_phi.feed(scaled(lphi(i, j), s));
        lie_eta.feed(scaled(leta(i), s));
      }
    }

    kenmotsu.feed(kenmotsu_residual_max(spec, pt));
    normality.feed(normality_residual_max(spec, pt));

    const TensorValue riem = geo.riemann().values();
    const TensorValue ric = geo.ricci().values();
    const TensorValue q = geo.ricci_op().values();

    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j)
        for (int l = 0; l < d; ++l) {
          double rxyxi = 0.0;
          for (int k = 0; k < d; ++k) rxyxi += riem(l, k, i, j) * xi(k);
          curv_reeb.feed(scaled(rxyxi - (eta(i) * (l == j ? 1.0 : 0.0) -
                                         eta(j) * (l == i ? 1.0 : 0.0)),
                                s));
        }

    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j)
        for (int k = 0; k < d; ++k) {
          double er = 0.0;
          for (int l = 0; l < d; ++l) er += eta(l) * riem(l, k, i, j);
          // eta(R(X,Y)Z) = eps {eta(Y) g(X,Z) - eta(X) g(Y,Z)}
          eta_curv.feed(scaled(er - eps * (eta(j) * g(i, k) - eta(i) * g(j, k)), s));
        }

    for (int i = 0; i < d; ++i)
      for (int k = 0; k < d; ++k)
        for (int l = 0; l < d; ++l) {
          double rxxi = 0.0;
          for (int j = 0; j < d; ++j) rxxi += riem(l, k, i, j) * xi(j);
          curv_reeb_mixed.feed(scaled(
              rxxi - (eps * g(i, k) * xi(l) - eta(k) * (l == i ? 1.0 : 0.0)), s));
        }

    for (int i = 0; i < d; ++i) {
      double rxi = 0.0, qxi = 0.0;
      for (int j = 0; j < d; ++j) {
        rxi += ric(i, j) * xi(j);
        qxi += q(i, j) * xi(j);
      }
      ricci_reeb.feed(scaled(rxi + 2.0 * n * eta(i), s));
      ricci_reeb.feed(scaled(qxi + 2.0 * n * eps * xi(i), s));
    }

    // xi-sectional curvature over random Ker(eta) directions.
    const TensorValue rl = geo.riemann_low().values();
    for (int trial = 0; trial < 6; ++trial) {
      std::vector<double> raw = rng.direction(d);
      std::vector<double> x(d, 0.0);
      for (int i = 0; i < d; ++i) {
        double e = 0.0;
        for (int j = 0; j < d; ++j)
          e += ((i == j ? 1.0 : 0.0) - xi(i) * eta(j)) * raw[j];
        x[i] = e;
      }
      double gxx = 0.0, x2 = 0.0;
      for (int i = 0; i < d; ++i) {
        x2 += x[i] * x[i];
        for (int j = 0; j < d; ++j) gxx += g(i, j) * x[i] * x[j];
      }
      if (std::abs(gxx) < 1e-8 * std::max(s * x2, 1e-300)) continue;
      double num = 0.0;
      for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j)
          for (int k = 0; k < d; ++k)
            for (int w = 0; w < d; ++w)
              num += rl(i, j, k, w) * xi(i) * x[j] * x[k] * xi(w);
      reeb_sec.feed(num / (eps * gxx) + eps);
    }

    // (nabla_Z R)(X,Y,xi) identity, fully lowered.
    const TensorValue nr = covariant_derivative_jets(geo.riemann_low(), geo).values();
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j)
        for (int w = 0; w < d; ++w)
          for (int m = 0; m < d; ++m) {
            double lhs = 0.0;
            for (int k = 0; k < d; ++k) lhs += nr(i, j, k, w, m) * xi(k);
            const double rhs =
                eps * (g(i, m) * g(j, w) - g(j, m) * g(i, w)) - rl(i, j, m, w);
            nabla_curv_reeb.feed(scaled(lhs - rhs, s * (1.0 + s)));
          }

    const TensorValue nq = covariant_derivative_jets(geo.ricci_op(), geo).values();
    for (int i = 0; i < d; ++i)
      for (int m = 0; m < d; ++m) {
        double b = 0.0;
        for (int j = 0; j < d; ++j) b += nq(i, j, m) * xi(j);
        nabla_q_reeb.feed(scaled(
            b + q(i, m) + 2.0 * n * eps * (i == m ? 1.0 : 0.0), s));
      }
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) {
        double cxi = 0.0;
        for (int m = 0; m < d; ++m) cxi += nq(i, j, m) * xi(m);
        nabla_q_along_reeb.feed(scaled(
            cxi + 2.0 * q(i, j) + 4.0 * n * eps * (i == j ? 1.0 : 0.0), s));
      }
  }

  ResidualReport rep;
  rep.entries = {
      {"nabla_xi", nabla_xi.v, tol},
      {"nabla_eta", nabla_eta.v, tol},
      {"lie_xi_metric", lie_g.v, tol},
      {"lie_xi_phi", lie_phi.v, tol},
      {"lie_xi_eta", lie_eta.v, tol},
      {"kenmotsu", kenmotsu.v, tol},
      {"normality", normality.v, tol},
      {"curvature_reeb", curv_reeb.v, tol},
      {"eta_of_curvature", eta_curv.v, tol},
      {"curvature_reeb_mixed", curv_reeb_mixed.v, tol},
      {"ricci_reeb", ricci_reeb.v, tol},
      {"reeb_sectional", reeb_sec.v, tol},
      {"nabla_curvature_reeb", nabla_curv_reeb.v, tol},
      {"nabla_ricci_op_reeb", nabla_q_reeb.v, tol},
      {"nabla_ricci_op_along_reeb", nabla_q_along_reeb.v, tol},
  };
  return rep;
}

}  // namespace acpm
