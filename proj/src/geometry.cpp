#include "acpm/geometry.hpp"

#include <cmath>
#include <stdexcept>

#include "acpm/errors.hpp"

namespace acpm {

namespace {

std::size_t flat_offset(int dim, int rank, std::span<const int> idx) {
  if (static_cast<int>(idx.size()) != rank)
    throw std::invalid_argument("jet tensor: index count does not match rank");
  std::size_t off = 0;
  for (int i : idx) {
    if (i < 0 || i >= dim)
      throw std::out_of_range("jet tensor index out of range");
    off = off * static_cast<std::size_t>(dim) + static_cast<std::size_t>(i);
  }
  return off;
}

bool advance(std::vector<int>& idx, int dim) {
  for (int i = static_cast<int>(idx.size()) - 1; i >= 0; --i) {
    if (++idx[i] < dim) return true;
    idx[i] = 0;
  }
  return false;
}

// Gauss-Jordan with value pivoting, carried out in jet arithmetic so the
// inverse metric comes with its derivatives.
std::vector<Jet> invert_jet_matrix(std::vector<Jet> a, int d) {
  const int order = a[0].order();
  std::vector<Jet> b(static_cast<std::size_t>(d) * d,
                     Jet(a[0].dim(), order));
  for (int i = 0; i < d; ++i) b[static_cast<std::size_t>(i) * d + i].value() = 1.0;

  auto row = [d](std::vector<Jet>& m, int r) { return m.begin() + r * d; };
  for (int col = 0; col < d; ++col) {
    int pivot = col;
    double best = std::abs(a[static_cast<std::size_t>(col) * d + col].value());
    for (int r = col + 1; r < d; ++r) {
      const double v = std::abs(a[static_cast<std::size_t>(r) * d + col].value());
      if (v > best) {
        best = v;
        pivot = r;
      }
    }
    if (best == 0.0)
      throw DegenerateMetric("jet matrix inversion hit a zero pivot");
    if (pivot != col) {
      std::swap_ranges(row(a, col), row(a, col) + d, row(a, pivot));
      std::swap_ranges(row(b, col), row(b, col) + d, row(b, pivot));
    }
    const Jet inv_p = 1.0 / a[static_cast<std::size_t>(col) * d + col];
    for (int j = 0; j < d; ++j) {
      a[static_cast<std::size_t>(col) * d + j] =
          a[static_cast<std::size_t>(col) * d + j] * inv_p;
      b[static_cast<std::size_t>(col) * d + j] =
          b[static_cast<std::size_t>(col) * d + j] * inv_p;
    }
    for (int r = 0; r < d; ++r) {
      if (r == col) continue;
      const Jet factor = a[static_cast<std::size_t>(r) * d + col];
      for (int j = 0; j < d; ++j) {
        a[static_cast<std::size_t>(r) * d + j] -=
            factor * a[static_cast<std::size_t>(col) * d + j];
        b[static_cast<std::size_t>(r) * d + j] -=
            factor * b[static_cast<std::size_t>(col) * d + j];
      }
    }
  }
  return b;
}

}  // namespace

JetTensor::JetTensor(int dim, int order, std::vector<Variance> var)
    : dim(dim), order(order), variance(std::move(var)) {
  std::size_t n = 1;
  for (int i = 0; i < rank(); ++i) n *= static_cast<std::size_t>(dim);
  comps.assign(n, Jet(dim, order));
}

Jet& JetTensor::at(std::span<const int> idx) {
  return comps[flat_offset(dim, rank(), idx)];
}

const Jet& JetTensor::at(std::span<const int> idx) const {
  return comps[flat_offset(dim, rank(), idx)];
}

TensorValue JetTensor::values() const {
  TensorValue t(dim, variance);
  auto dst = t.data();
  for (std::size_t i = 0; i < comps.size(); ++i) dst[i] = comps[i].value();
  return t;
}

JetTensor truncated(const JetTensor& t, int order) {
  if (order >= t.order) return t;
  JetTensor out(t.dim, order, t.variance);
  for (std::size_t i = 0; i < t.comps.size(); ++i)
    out.comps[i] = truncate(t.comps[i], order);
  return out;
}

JetTensor eval_field_jets_t(const TensorField& f, const ManifoldSpec& spec,
                            std::span<const double> point, int order) {
  JetTensor t(spec.dim, order, f.variance);
  for (std::size_t i = 0; i < f.comps.size(); ++i)
    t.comps[i] = f.comps[i].eval(point, spec.params(), order);
  return t;
}

GeometryJets::GeometryJets(const ManifoldSpec& spec,
                           std::span<const double> point, int order)
    : dim_(spec.dim), order_(order), epsilon_(spec.epsilon) {
  if (order < 0 || order > 3)
    throw std::invalid_argument("geometry: metric jet order must be 0..3");
  const int d = dim_;
  g_ = eval_field_jets_t(spec.metric, spec, point, order);
  metric_ = invert_metric(g_.values());
  ginv_ = JetTensor(d, order, {Variance::Upper, Variance::Upper});
  ginv_.comps = invert_jet_matrix(g_.comps, d);

  if (order_ >= 1) {
    const int go = order_ - 1;
    gamma_ = JetTensor(d, go, {Variance::Upper, Variance::Lower, Variance::Lower});
    // dg[(l*d+i)*d+j] = jet of d_l g_{ij}
    std::vector<Jet> dg(static_cast<std::size_t>(d) * d * d, Jet(d, go));
    for (int l = 0; l < d; ++l)
      for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j)
          dg[(static_cast<std::size_t>(l) * d + i) * d + j] =
              derivative(g_(i, j), l);
    JetTensor ginv_t = truncated(ginv_, go);
    auto dgat = [&](int l, int i, int j) -> const Jet& {
      return dg[(static_cast<std::size_t>(l) * d + i) * d + j];
    };
    // Gamma^k_{ij} = (1/2) g^{kl} (d_i g_{jl} + d_j g_{il} - d_l g_{ij})
    for (int k = 0; k < d; ++k)
      for (int i = 0; i < d; ++i)
        for (int j = i; j < d; ++j) {
          Jet sum(d, go);
          for (int l = 0; l < d; ++l)
            sum += ginv_t(k, l) *
                   (dgat(i, j, l) + dgat(j, i, l) - dgat(l, i, j));
          sum *= 0.5;
          gamma_(k, i, j) = sum;
          if (i != j) gamma_(k, j, i) = sum;
        }
  }

  if (order_ >= 2) {
    const int ro = order_ - 2;
    riemann_ =
        JetTensor(d, ro, {Variance::Upper, Variance::Lower, Variance::Lower,
                          Variance::Lower});
    JetTensor gamma_t = truncated(gamma_, ro);
    // R^l_{kij} = d_i Gamma^l_{jk} - d_j Gamma^l_{ik}
    //           + Gamma^l_{im} Gamma^m_{jk} - Gamma^l_{jm} Gamma^m_{ik}
    for (int l = 0; l < d; ++l)
      for (int k = 0; k < d; ++k)
        for (int i = 0; i < d; ++i)
          for (int j = i + 1; j < d; ++j) {
            Jet r = derivative(gamma_(l, j, k), i) -
                    derivative(gamma_(l, i, k), j);
            for (int m = 0; m < d; ++m)
              r += gamma_t(l, i, m) * gamma_t(m, j, k) -
                   gamma_t(l, j, m) * gamma_t(m, i, k);
            riemann_(l, k, i, j) = r;
            riemann_(l, k, j, i) = -r;
          }

    JetTensor g_t = truncated(g_, ro);
    JetTensor ginv_t = truncated(ginv_, ro);
    riemann_low_ =
        JetTensor(d, ro, {Variance::Lower, Variance::Lower, Variance::Lower,
                          Variance::Lower});
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j)
        for (int k = 0; k < d; ++k)
          for (int w = 0; w < d; ++w) {
            Jet r(d, ro);
            for (int l = 0; l < d; ++l)
              r += g_t(l, w) * riemann_(l, k, i, j);
            riemann_low_(i, j, k, w) = r;
          }

    // Ric(Y,Z) = trace of X -> R(X,Y)Z; equals the frame-weighted sum with
    // weights eps_a = g(E_a, E_a).
    ricci_ = JetTensor(d, ro, {Variance::Lower, Variance::Lower});
    for (int a = 0; a < d; ++a)
      for (int b = 0; b < d; ++b) {
        Jet r(d, ro);
        for (int m = 0; m < d; ++m) r += riemann_(m, b, m, a);
        ricci_(a, b) = r;
      }

    q_ = JetTensor(d, ro, {Variance::Upper, Variance::Lower});
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) {
        Jet r(d, ro);
        for (int k = 0; k < d; ++k) r += ginv_t(i, k) * ricci_(k, j);
        q_(i, j) = r;
      }

    scalar_ = Jet(d, ro);
    for (int i = 0; i < d; ++i) scalar_ += q_(i, i);

    weyl_ = JetTensor(d, ro, {Variance::Upper, Variance::Lower, Variance::Lower,
                              Variance::Lower});
    if (d >= 3) {
      const double c1 = 1.0 / (d - 2);
      const double c2 = 1.0 / ((d - 1) * (d - 2));
      for (int l = 0; l < d; ++l)
        for (int k = 0; k < d; ++k)
          for (int i = 0; i < d; ++i)
            for (int j = 0; j < d; ++j) {
              Jet c = riemann_(l, k, i, j);
              Jet mid(d, ro);
              if (l == i) mid += ricci_(j, k);
              if (l == j) mid -= ricci_(i, k);
              mid += g_t(j, k) * q_(l, i) - g_t(i, k) * q_(l, j);
              c -= c1 * mid;
              Jet tail(d, ro);
              if (l == i) tail += g_t(j, k);
              if (l == j) tail -= g_t(i, k);
              c += c2 * (scalar_ * tail);
              weyl_(l, k, i, j) = c;
            }
    }
  }
}

const JetTensor& GeometryJets::gamma() const {
  if (order_ < 1)
    throw std::logic_error("connection needs metric jets of order >= 1");
  return gamma_;
}

#define ACPM_CURV_ACCESSOR(NAME, MEMBER)                                   \
  const JetTensor& GeometryJets::NAME() const {                            \
    if (order_ < 2)                                                        \
      throw std::logic_error("curvature needs metric jets of order >= 2"); \
    return MEMBER;                                                         \
  }

ACPM_CURV_ACCESSOR(riemann, riemann_)
ACPM_CURV_ACCESSOR(riemann_low, riemann_low_)
ACPM_CURV_ACCESSOR(ricci, ricci_)
ACPM_CURV_ACCESSOR(ricci_op, q_)
ACPM_CURV_ACCESSOR(weyl, weyl_)
#undef ACPM_CURV_ACCESSOR

const Jet& GeometryJets::scalar() const {
  if (order_ < 2)
    throw std::logic_error("curvature needs metric jets of order >= 2");
  return scalar_;
}

JetTensor covariant_derivative_jets(const JetTensor& t, const GeometryJets& geo) {
  if (t.order < 1)
    throw std::invalid_argument("covariant derivative needs jets of order >= 1");
  if (geo.order() < t.order)
    throw std::logic_error("metric jets are too shallow for this field order");
  const int d = t.dim;
  const int out_order = t.order - 1;
  JetTensor gamma = truncated(geo.gamma(), out_order);
  JetTensor tt = truncated(t, out_order);

  std::vector<Variance> var = t.variance;
  var.push_back(Variance::Lower);
  JetTensor out(d, out_order, var);

  const int r = t.rank();
  std::vector<int> idx(r, 0);
  std::vector<int> sub(r, 0);
  do {
    for (int m = 0; m < d; ++m) {
      Jet s = derivative(t.at(idx), m);
      for (int slot = 0; slot < r; ++slot) {
        sub = idx;
        if (t.variance[slot] == Variance::Upper) {
          for (int a = 0; a < d; ++a) {
            sub[slot] = a;
            s += gamma(idx[slot], m, a) * tt.at(sub);
          }
        } else {
          for (int a = 0; a < d; ++a) {
            sub[slot] = a;
            s -= gamma(a, m, idx[slot]) * tt.at(sub);
          }
        }
      }
      std::vector<int> oidx = idx;
      oidx.push_back(m);
      out.at(oidx) = s;
    }
  } while (advance(idx, d));
  return out;
}

JetTensor lie_derivative_jets(const JetTensor& v, const JetTensor& t,
                              const GeometryJets& geo) {
  const int q = std::min(v.order, t.order) - 1;
  if (q < 0)
    throw std::invalid_argument("lie derivative needs jets of order >= 1");
  const int d = t.dim;
  JetTensor vt = truncated(v, q);
  JetTensor tt = truncated(t, q);
  JetTensor nt = truncated(covariant_derivative_jets(truncated(t, q + 1), geo), q);
  JetTensor nv = truncated(covariant_derivative_jets(truncated(v, q + 1), geo), q);

  JetTensor out(d, q, t.variance);
  const int r = t.rank();
  std::vector<int> idx(r, 0);
  std::vector<int> sub(r, 0);
  do {
    Jet s(d, q);
    std::vector<int> didx = idx;
    didx.push_back(0);
    for (int m = 0; m < d; ++m) {
      didx[r] = m;
      s += vt(m) * nt.at(didx);
    }
    for (int slot = 0; slot < r; ++slot) {
      sub = idx;
      if (t.variance[slot] == Variance::Upper) {
        // -(nabla_a v)^{i_slot} T^{...a...}
        for (int a = 0; a < d; ++a) {
          sub[slot] = a;
          s -= nv(idx[slot], a) * tt.at(sub);
        }
      } else {
        // +(nabla_{j_slot} v)^a T_{...a...}
        for (int a = 0; a < d; ++a) {
          sub[slot] = a;
          s += nv(a, idx[slot]) * tt.at(sub);
        }
      }
    }
    out.at(idx) = s;
  } while (advance(idx, d));
  return out;
}

JetTensor lie_derivative_connection_jets(const JetTensor& v,
                                         const GeometryJets& geo) {
  const int q = std::min(v.order, geo.order()) - 2;
  if (q < 0)
    throw std::invalid_argument(
        "lie derivative of the connection needs order >= 2");
  const int d = v.dim;
  JetTensor nv = covariant_derivative_jets(v, geo);     // (nabla_m v)^k
  JetTensor ddv = covariant_derivative_jets(nv, geo);   // slots (k, m1, m2)
  ddv = truncated(ddv, q);
  JetTensor riem = truncated(geo.riemann(), q);
  JetTensor vt = truncated(v, q);

  JetTensor out(d, q,
                {Variance::Upper, Variance::Lower, Variance::Lower});
  for (int k = 0; k < d; ++k)
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) {
        // nabla_i nabla_j v^k + v^m R^k_{jmi}
        Jet s = ddv(k, j, i);
        for (int m = 0; m < d; ++m) s += vt(m) * riem(k, j, m, i);
        out(k, i, j) = s;
      }
  return out;
}

ConnectionValue christoffel(const ManifoldSpec& spec,
                            std::span<const double> point,
                            int derivative_blocks) {
  if (derivative_blocks < 0 || derivative_blocks > 2)
    throw std::invalid_argument("christoffel: derivative_blocks must be 0..2");
  GeometryJets geo(spec, point, 1 + derivative_blocks);
  const int d = spec.dim;
  ConnectionValue out;
  out.gamma = geo.gamma().values();
  if (derivative_blocks >= 1) {
    TensorValue dg(d, {Variance::Upper, Variance::Lower, Variance::Lower,
                       Variance::Lower});
    for (int k = 0; k < d; ++k)
      for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j)
          for (int l = 0; l < d; ++l)
            dg(k, i, j, l) = geo.gamma()(k, i, j).d1(l);
    out.dgamma = std::move(dg);
  }
  if (derivative_blocks >= 2) {
    TensorValue d2g(d, {Variance::Upper, Variance::Lower, Variance::Lower,
                        Variance::Lower, Variance::Lower});
    for (int k = 0; k < d; ++k)
      for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j)
          for (int l = 0; l < d; ++l)
            for (int m = 0; m < d; ++m)
              d2g(k, i, j, l, m) = geo.gamma()(k, i, j).d2(l, m);
    out.d2gamma = std::move(d2g);
  }
  return out;
}

CurvatureBundle make_bundle(const GeometryJets& geo, bool with_nabla_riemann) {
  CurvatureBundle b;
  b.riemann = geo.riemann().values();
  b.riemann_low = geo.riemann_low().values();
  b.ricci = geo.ricci().values();
  b.ricci_op = geo.ricci_op().values();
  b.scalar = geo.scalar().value();
  b.weyl = geo.weyl().values();
  b.metric = geo.metric();
  if (with_nabla_riemann)
    b.nabla_riemann = covariant_derivative_jets(geo.riemann_low(), geo).values();
  return b;
}

CurvatureBundle curvature(const ManifoldSpec& spec, std::span<const double> point,
                          bool with_nabla_riemann) {
  GeometryJets geo(spec, point, with_nabla_riemann ? 3 : 2);
  return make_bundle(geo, with_nabla_riemann);
}

TensorValue covariant_derivative(const TensorField& field,
                                 const ManifoldSpec& spec,
                                 std::span<const double> point) {
  GeometryJets geo(spec, point, 1);
  JetTensor t = eval_field_jets_t(field, spec, point, 1);
  return covariant_derivative_jets(t, geo).values();
}

TensorValue nabla_riemann(const ManifoldSpec& spec,
                          std::span<const double> point) {
  GeometryJets geo(spec, point, 3);
  return covariant_derivative_jets(geo.riemann_low(), geo).values();
}

TensorValue lie_derivative_metric(const TensorField& v, const ManifoldSpec& spec,
                                  std::span<const double> point) {
  // (L_v g)(X,Y) = g(nabla_X v, Y) + g(nabla_Y v, X)
  GeometryJets geo(spec, point, 1);
  JetTensor vj = eval_field_jets_t(v, spec, point, 1);
  TensorValue nv = covariant_derivative_jets(vj, geo).values();
  const TensorValue& g = geo.metric().g;
  const int d = spec.dim;
  TensorValue out(d, {Variance::Lower, Variance::Lower});
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      double s = 0.0;
      for (int k = 0; k < d; ++k) s += g(k, j) * nv(k, i) + g(k, i) * nv(k, j);
      out(i, j) = s;
    }
  return out;
}

TensorValue lie_derivative_tensor(const TensorField& v, const TensorField& field,
                                  const ManifoldSpec& spec,
                                  std::span<const double> point) {
  GeometryJets geo(spec, point, 1);
  JetTensor vj = eval_field_jets_t(v, spec, point, 1);
  JetTensor tj = eval_field_jets_t(field, spec, point, 1);
  return lie_derivative_jets(vj, tj, geo).values();
}

TensorValue lie_derivative_connection(const TensorField& v,
                                      const ManifoldSpec& spec,
                                      std::span<const double> point) {
  GeometryJets geo(spec, point, 2);
  JetTensor vj = eval_field_jets_t(v, spec, point, 2);
  return lie_derivative_connection_jets(vj, geo).values();
}

double sectional_curvature(std::span<const double> x, std::span<const double> y,
                           const CurvatureBundle& bundle) {
  const int d = bundle.metric.g.dim();
  const TensorValue& g = bundle.metric.g;
  const TensorValue& rl = bundle.riemann_low;
  double gxx = 0, gyy = 0, gxy = 0;
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      gxx += g(i, j) * x[i] * x[j];
      gyy += g(i, j) * y[i] * y[j];
      gxy += g(i, j) * x[i] * y[j];
    }
  const double den = gxx * gyy - gxy * gxy;
  double x2 = 0, y2 = 0;
  for (int i = 0; i < d; ++i) x2 += x[i] * x[i];
  for (int i = 0; i < d; ++i) y2 += y[i] * y[i];
  const double scale =
      std::max(bundle.metric.scale * bundle.metric.scale * x2 * y2, 1e-300);
  if (std::abs(den) < 1e-8 * scale)
    throw DegeneratePlane("span(X,Y) is degenerate or light-like");
  // K = g(R(X,Y)Y, X) / den
  double num = 0.0;
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      for (int k = 0; k < d; ++k)
        for (int w = 0; w < d; ++w)
          num += rl(i, j, k, w) * x[i] * y[j] * y[k] * x[w];
  return num / den;
}

double sectional_curvature(std::span<const double> x, std::span<const double> y,
                           const ManifoldSpec& spec,
                           std::span<const double> point) {
  return sectional_curvature(x, y, curvature(spec, point));
}

ResidualReport connection_properties(const ManifoldSpec& spec,
                                     const std::vector<std::vector<double>>& points,
                                     double tol, bool with_second_bianchi) {
  const int d = spec.dim;
  double torsion = 0, compat = 0, antisym = 0, pair_sym = 0, bianchi1 = 0,
         bianchi2 = 0, weyl_trace = 0, nondeg = 0;
  auto feed = [](double& acc, double v) { acc = std::max(acc, std::abs(v)); };

  for (const auto& pt : points) {
    GeometryJets geo(spec, pt, with_second_bianchi ? 3 : 2);
    const TensorValue gamma = geo.gamma().values();
    const TensorValue rl = geo.riemann_low().values();
    const TensorValue g = geo.g().values();
    const double ms = geo.metric().scale;
    const double cs = 1.0 + std::max(ms, rl.max_abs());

    for (int k = 0; k < d; ++k)
      for (int i = 0; i < d; ++i)
        for (int j = i + 1; j < d; ++j)
          feed(torsion, (gamma(k, i, j) - gamma(k, j, i)) / (1.0 + ms));

    // nabla g = 0
    {
      JetTensor gj = truncated(geo.g(), 1);
      const TensorValue ng = covariant_derivative_jets(gj, geo).values();
      for (double v : ng.data()) feed(compat, v / (1.0 + ms));
    }

    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j)
        for (int k = 0; k < d; ++k)
          for (int w = 0; w < d; ++w) {
            feed(antisym, (rl(i, j, k, w) + rl(j, i, k, w)) / cs);
            feed(antisym, (rl(i, j, k, w) + rl(i, j, w, k)) / cs);
            feed(pair_sym, (rl(i, j, k, w) - rl(k, w, i, j)) / cs);
            feed(bianchi1,
                 (rl(i, j, k, w) + rl(j, k, i, w) + rl(k, i, j, w)) / cs);
          }

    if (with_second_bianchi) {
      const TensorValue nr =
          covariant_derivative_jets(geo.riemann_low(), geo).values();
      const double ns = 1.0 + std::max(ms, nr.max_abs());
      for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j)
          for (int k = 0; k < d; ++k)
            for (int w = 0; w < d; ++w)
              for (int m = 0; m < d; ++m)
                feed(bianchi2, (nr(i, j, k, w, m) + nr(j, m, k, w, i) +
                                nr(m, i, k, w, j)) /
                                   ns);
    }

    // Every metric contraction of the conformal tensor vanishes.
    {
      TensorValue cl = lower_slot(geo.weyl().values(), 0, geo.metric());
      for (int a = 0; a < 4; ++a)
        for (int b = a + 1; b < 4; ++b) {
          TensorValue tr = contract(cl, a, b, geo.metric());
          for (double v : tr.data()) feed(weyl_trace, v / cs);
        }
    }

    feed(nondeg, 0.0);  // inversion succeeded for this point
  }

  ResidualReport rep;
  rep.entries = {
      {"metric_nondegenerate", nondeg, tol},
      {"torsion_free", torsion, tol},
      {"metric_compatibility", compat, tol},
      {"riemann_antisymmetry", antisym, tol},
      {"riemann_pair_symmetry", pair_sym, tol},
      {"bianchi_first", bianchi1, tol},
  };
  if (with_second_bianchi)
    rep.entries.push_back({"bianchi_second", bianchi2, tol});
  rep.entries.push_back({"weyl_trace_free", weyl_trace, tol});
  return rep;
}

}  // namespace acpm
