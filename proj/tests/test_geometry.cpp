#include <doctest.h>

#include <cmath>
#include <random>

#include "acpm/contact.hpp"
#include "acpm/errors.hpp"
#include "acpm/geometry.hpp"
#include "acpm/manifold.hpp"
#include "oracles.hpp"
#include "spec_util.hpp"

using acpm::builtin;
using acpm::ManifoldSpec;
using acpm::TensorValue;
using acpm::Variance;

namespace {

const std::vector<std::vector<double>> kGoldenPoints = {
    {0.0, 0.0, 0.0}, {0.3, -0.2, 0.1}, {1.0, 1.0, -1.0}};

// Closed-form connection of the warped-product example manifold.
double expected_gamma_k3(double eps, double z, int k, int i, int j) {
  const double w = std::exp(2.0 * z);
  if (k == 2 && i == 0 && j == 0) return -eps * w;
  if (k == 2 && i == 1 && j == 1) return -eps * w;
  if (k == 0 && ((i == 0 && j == 2) || (i == 2 && j == 0))) return 1.0;
  if (k == 1 && ((i == 1 && j == 2) || (i == 2 && j == 1))) return 1.0;
  return 0.0;
}

}  // namespace

TEST_CASE("connection of the warped-product example, both unit signs") {
  for (double eps : {1.0, -1.0}) {
    ManifoldSpec spec = builtin("kenmotsu3");
    acpm::set_epsilon(spec, eps);
    for (const auto& pt : kGoldenPoints) {
      const TensorValue gamma = acpm::christoffel(spec, pt).gamma;
      const double w = std::exp(2.0 * pt[2]);
      for (int k = 0; k < 3; ++k)
        for (int i = 0; i < 3; ++i)
          for (int j = 0; j < 3; ++j)
            CHECK(std::abs(gamma(k, i, j) -
                           expected_gamma_k3(eps, pt[2], k, i, j)) /
                      w <
                  1e-12);
    }
  }
}

TEST_CASE("specific connection components") {
  ManifoldSpec spec = builtin("kenmotsu3");  // eps = +1
  std::vector<double> origin = {0.0, 0.0, 0.0};
  TensorValue g0 = acpm::christoffel(spec, origin).gamma;
  CHECK(g0(2, 0, 0) == doctest::Approx(-1.0));
  CHECK(g0(0, 0, 2) == doctest::Approx(1.0));
  CHECK(g0(2, 0, 1) == doctest::Approx(0.0));

  acpm::set_epsilon(spec, -1.0);
  std::vector<double> p = {0.0, 0.0, 0.5};
  TensorValue g1 = acpm::christoffel(spec, p).gamma;
  CHECK(g1(2, 1, 1) == doctest::Approx(std::exp(1.0)).epsilon(1e-12));
}

TEST_CASE("flat metric has a vanishing connection and curvature") {
  ManifoldSpec flat = builtin("flat3");
  std::vector<double> p = {0.4, -1.0, 0.7};
  CHECK(acpm::christoffel(flat, p).gamma.max_abs() == 0.0);
  acpm::CurvatureBundle b = acpm::curvature(flat, p, true);
  CHECK(b.riemann.max_abs() == 0.0);
  CHECK(b.ricci.max_abs() == 0.0);
  CHECK(b.scalar == 0.0);
  CHECK(b.weyl.max_abs() == 0.0);
  CHECK(b.nabla_riemann->max_abs() == 0.0);
}

TEST_CASE("connection derivative blocks match finite differences") {
  for (const char* name : {"kenmotsu3", "perturbed3"}) {
    ManifoldSpec spec = builtin(name);
    std::vector<double> pt = {0.2, -0.1, 0.3};
    acpm::ConnectionValue conn = acpm::christoffel(spec, pt, 2);
    REQUIRE(conn.dgamma.has_value());
    REQUIRE(conn.d2gamma.has_value());
    for (int k = 0; k < 3; ++k)
      for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
          for (int l = 0; l < 3; ++l) {
            auto f = [&](std::span<const double> q) {
              std::vector<double> qq(q.begin(), q.end());
              return acpm::christoffel(spec, qq).gamma(k, i, j);
            };
            const double fd = oracle::fd1_4th(f, pt, l, 1e-3);
            CHECK(std::abs((*conn.dgamma)(k, i, j, l) - fd) <
                  1e-5 * (1.0 + std::abs(fd)));
          }
  }
}

TEST_CASE("curvature of the example reproduces the displayed components") {
  for (double eps : {1.0, -1.0}) {
    ManifoldSpec spec = builtin("kenmotsu3");
    acpm::set_epsilon(spec, eps);
    for (const auto& pt : kGoldenPoints) {
      acpm::CurvatureBundle b = acpm::curvature(spec, pt);
      const double w = std::exp(2.0 * pt[2]);
      const TensorValue& R = b.riemann;
      // R(d1,d3)d3 = -d1 ; R(d1,d2)d1 = eps e^{2z} d2 ; R(d1,d2)d3 = 0
      CHECK(R(0, 2, 0, 2) == doctest::Approx(-1.0).epsilon(1e-12));
      CHECK(R(1, 0, 0, 1) == doctest::Approx(eps * w).epsilon(1e-12));
      for (int l = 0; l < 3; ++l)
        CHECK(std::abs(R(l, 2, 0, 1)) < 1e-12 * (1.0 + w));
      // constant curvature -eps: R^l_{kij} = -eps (g_{jk} d^l_i - g_{ik} d^l_j)
      const TensorValue& g = b.metric.g;
      for (int l = 0; l < 3; ++l)
        for (int k = 0; k < 3; ++k)
          for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) {
              const double model = -eps * (g(j, k) * (l == i ? 1.0 : 0.0) -
                                           g(i, k) * (l == j ? 1.0 : 0.0));
              CHECK(std::abs(R(l, k, i, j) - model) < 1e-11 * (1.0 + w));
            }
      // Einstein with Ric = -2 eps g and r = -6 eps
      for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
          CHECK(std::abs(b.ricci(i, j) + 2.0 * eps * g(i, j)) < 1e-11 * (1.0 + w));
      CHECK(b.scalar == doctest::Approx(-6.0 * eps).epsilon(1e-12));
    }
  }
}

TEST_CASE("curvature assembled from jets matches finite differences of Gamma") {
  for (const char* name : {"kenmotsu3", "kenmotsu5", "perturbed3", "flat3"}) {
    ManifoldSpec spec = builtin(name);
    const int d = spec.dim;
    std::vector<double> pt(d, 0.1);
    pt[0] = 0.25;
    acpm::CurvatureBundle b = acpm::curvature(spec, pt);
    const TensorValue gamma = acpm::christoffel(spec, pt).gamma;
    double worst = 0.0;
    for (int l = 0; l < d; ++l)
      for (int k = 0; k < d; ++k)
        for (int i = 0; i < d; ++i)
          for (int j = 0; j < d; ++j) {
            auto gamma_comp = [&](int kk, int ii, int jj) {
              return [&, kk, ii, jj](std::span<const double> q) {
                std::vector<double> qq(q.begin(), q.end());
                return acpm::christoffel(spec, qq).gamma(kk, ii, jj);
              };
            };
            double fd = oracle::fd1_4th(gamma_comp(l, j, k), pt, i, 1e-3) -
                        oracle::fd1_4th(gamma_comp(l, i, k), pt, j, 1e-3);
            for (int m = 0; m < d; ++m)
              fd += gamma(l, i, m) * gamma(m, j, k) -
                    gamma(l, j, m) * gamma(m, i, k);
            worst = std::max(worst,
                             std::abs(b.riemann(l, k, i, j) - fd) /
                                 (1.0 + std::abs(fd)));
          }
    CHECK(worst < 1e-5);
  }
}

TEST_CASE("covariant derivative of the Reeb field matches I - eta (x) xi") {
  ManifoldSpec spec = builtin("kenmotsu3");
  const acpm::TensorField& xi = spec.structure->xi;
  for (const auto& pt : kGoldenPoints) {
    TensorValue nxi = acpm::covariant_derivative(xi, spec, pt);
    // slots: (component, direction)
    CHECK(nxi(0, 0) == doctest::Approx(1.0));
    CHECK(nxi(1, 1) == doctest::Approx(1.0));
    CHECK(nxi(2, 2) == doctest::Approx(0.0));
    CHECK(nxi(0, 2) == doctest::Approx(0.0));
    for (int i = 0; i < 3; ++i)
      for (int m = 0; m < 3; ++m) {
        const double model = (i == m ? 1.0 : 0.0) - (i == 2 && m == 2 ? 1.0 : 0.0);
        CHECK(nxi(i, m) == doctest::Approx(model).epsilon(1e-12));
      }
  }
}

TEST_CASE("metric compatibility: nabla g vanishes on every builtin") {
  for (const char* name : {"kenmotsu3", "kenmotsu5", "perturbed3", "flat3"}) {
    ManifoldSpec spec = builtin(name);
    std::vector<double> pt(spec.dim, -0.2);
    TensorValue ng = acpm::covariant_derivative(spec.metric, spec, pt);
    CHECK(ng.max_abs() < 1e-12 * (1.0 + std::exp(3.0 * 0.2)));
  }
}

TEST_CASE("nabla Q vanishes on the Einstein example") {
  ManifoldSpec spec = builtin("kenmotsu3");
  for (double eps : {1.0, -1.0}) {
    acpm::set_epsilon(spec, eps);
    std::vector<double> pt = {0.3, 0.1, -0.4};
    acpm::GeometryJets geo(spec, pt, 3);
    TensorValue nq = acpm::covariant_derivative_jets(geo.ricci_op(), geo).values();
    CHECK(nq.max_abs() < 1e-11);
  }
}

TEST_CASE("nabla R vanishes for constant curvature, not in general") {
  ManifoldSpec spec = builtin("kenmotsu3");
  std::vector<double> pt = {0.1, 0.2, 0.5};
  CHECK(acpm::nabla_riemann(spec, pt).max_abs() < 1e-10 * std::exp(2.0));

  ManifoldSpec bent = testutil::diag_spec(3, 1.0, {"exp(2*z)", "exp(3*z)", "eps"});
  TensorValue nr = acpm::nabla_riemann(bent, pt);
  CHECK(nr.max_abs() > 1e-3);

  // second Bianchi holds regardless
  double worst = 0.0;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k)
        for (int w = 0; w < 3; ++w)
          for (int m = 0; m < 3; ++m)
            worst = std::max(worst, std::abs(nr(i, j, k, w, m) +
                                             nr(j, m, k, w, i) +
                                             nr(m, i, k, w, j)));
  CHECK(worst < 1e-8 * (1.0 + nr.max_abs()));
}

TEST_CASE("Lie derivative of the metric") {
  ManifoldSpec spec = builtin("kenmotsu3");
  const double eps = spec.epsilon;
  std::vector<double> origin = {0.0, 0.0, 0.0};

  SUBCASE("the translation field is Killing") {
    const acpm::TensorField& v = spec.soliton->v;  // alpha * d_y
    for (const auto& pt : kGoldenPoints)
      CHECK(acpm::lie_derivative_metric(v, spec, pt).max_abs() < 1e-12);
  }

  SUBCASE("along the Reeb field: 2(g - eps eta (x) eta)") {
    const acpm::TensorField& xi = spec.structure->xi;
    for (const auto& pt : kGoldenPoints) {
      TensorValue lg = acpm::lie_derivative_metric(xi, spec, pt);
      acpm::GeometryJets geo(spec, pt, 0);
      const TensorValue& g = geo.metric().g;
      for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
          const double eta_i = i == 2 ? 1.0 : 0.0;
          const double eta_j = j == 2 ? 1.0 : 0.0;
          const double model = 2.0 * (g(i, j) - eps * eta_i * eta_j);
          CHECK(lg(i, j) == doctest::Approx(model).epsilon(1e-12));
        }
    }
    // the (1,1) component at the origin is 2
    TensorValue lg0 = acpm::lie_derivative_metric(xi, spec, origin);
    CHECK(lg0(0, 0) == doctest::Approx(2.0));
  }

  SUBCASE("zero field gives the zero tensor") {
    acpm::TensorField v = testutil::vector_field(spec, {"0", "0", "0"});
    CHECK(acpm::lie_derivative_metric(v, spec, origin).max_abs() == 0.0);
  }
}

TEST_CASE("Lie derivative of structure tensors along the Reeb field") {
  ManifoldSpec spec = builtin("kenmotsu3");
  const acpm::TensorField& xi = spec.structure->xi;
  for (const auto& pt : kGoldenPoints) {
    CHECK(acpm::lie_derivative_tensor(xi, spec.structure->phi, spec, pt).max_abs() <
          1e-13);
    CHECK(acpm::lie_derivative_tensor(xi, *spec.structure->eta, spec, pt).max_abs() <
          1e-13);
  }
  // scalar case: a directional derivative
  acpm::TensorField f = testutil::scalar_field(spec, "z");
  acpm::TensorField dz = testutil::vector_field(spec, {"0", "0", "1"});
  TensorValue lf = acpm::lie_derivative_tensor(dz, f, spec, kGoldenPoints[1]);
  CHECK(lf.rank() == 0);
  CHECK(lf.scalar() == doctest::Approx(1.0));
}

TEST_CASE("Lie derivative of the connection") {
  ManifoldSpec spec = builtin("kenmotsu3");
  std::vector<double> pt = {0.2, -0.3, 0.4};

  SUBCASE("Killing fields preserve the connection") {
    TensorValue lc = acpm::lie_derivative_connection(spec.soliton->v, spec, pt);
    CHECK(lc.max_abs() < 1e-11 * std::exp(2.0 * 0.4));
  }

  SUBCASE("zero field") {
    acpm::TensorField zero = testutil::vector_field(spec, {"0", "0", "0"});
    CHECK(acpm::lie_derivative_connection(zero, spec, pt).max_abs() == 0.0);
  }

  SUBCASE("along the Reeb field the (X, xi) slots cancel") {
    TensorValue lc =
        acpm::lie_derivative_connection(spec.structure->xi, spec, pt);
    // (L_xi nabla)(X, xi) = 2QX + 4 eps X = 0 on the Einstein example
    for (int k = 0; k < 3; ++k)
      for (int i = 0; i < 3; ++i)
        CHECK(std::abs(lc(k, i, 2)) < 1e-11 * std::exp(2.0 * 0.4));
    CHECK(lc.max_abs() > 0.1);  // but it is not zero overall
  }

  SUBCASE("symmetry in the two lower slots") {
    acpm::TensorField v = testutil::vector_field(
        spec, {"0.3*x*x + z", "sin(x) + y*y", "x*y*z"});
    TensorValue lc = acpm::lie_derivative_connection(v, spec, pt);
    for (int k = 0; k < 3; ++k)
      for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
          CHECK(std::abs(lc(k, i, j) - lc(k, j, i)) <
                1e-9 * (1.0 + lc.max_abs()));
  }

  SUBCASE("matches the coordinate formula oracle") {
    ManifoldSpec bent =
        testutil::diag_spec(3, -1.0, {"exp(2*z)", "exp(z + 0.3*x)", "eps"});
    acpm::TensorField v = testutil::vector_field(
        bent, {"0.3*x*x + z", "sin(x) + y*y", "x*y*z"});
    TensorValue engine = acpm::lie_derivative_connection(v, bent, pt);
    TensorValue coord = oracle::lie_connection_coordinate(v, bent, pt);
    for (int k = 0; k < 3; ++k)
      for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
          CHECK(std::abs(engine(k, i, j) - coord(k, i, j)) <
                1e-5 * (1.0 + std::abs(coord(k, i, j))));
  }
}

TEST_CASE("sectional curvature on the example and edge cases") {
  for (double eps : {1.0, -1.0}) {
    ManifoldSpec spec = builtin("kenmotsu3");
    acpm::set_epsilon(spec, eps);
    std::vector<double> pt = {0.1, -0.2, 0.3};
    const double w = std::exp(-pt[2]);
    std::vector<double> xi = {0, 0, 1};
    std::vector<double> e1 = {w, 0, 0};  // unit space-like leg
    std::vector<double> phie1 = {0, w, 0};
    CHECK(acpm::sectional_curvature(xi, e1, spec, pt) ==
          doctest::Approx(-eps).epsilon(1e-11));
    CHECK(acpm::sectional_curvature(e1, phie1, spec, pt) ==
          doctest::Approx(-eps).epsilon(1e-11));
  }

  ManifoldSpec flat = builtin("flat3");
  std::vector<double> p0 = {0, 0, 0};
  std::vector<double> ex = {1, 0, 0}, ey = {0, 1, 0};
  CHECK(acpm::sectional_curvature(ex, ey, flat, p0) == doctest::Approx(0.0));

  // degenerate spans
  CHECK_THROWS_AS(acpm::sectional_curvature(ex, ex, flat, p0),
                  acpm::DegeneratePlane);
  ManifoldSpec lorentz = builtin("kenmotsu3");
  acpm::set_epsilon(lorentz, -1.0);
  std::vector<double> null_vec = {1, 0, 1};  // light-like at z = 0
  CHECK_THROWS_AS(acpm::sectional_curvature(null_vec, ey, lorentz, p0),
                  acpm::DegeneratePlane);
}

TEST_CASE("connection properties hold on random metrics") {
  const std::vector<std::vector<std::string>> metrics3 = {
      {"exp(2*z)", "exp(3*z)", "eps"},
      {"2 + sin(x)", "2 + cos(y)", "1 + z^2"},
      {"exp(0.5*x + 0.2*z)", "1 + x^2", "eps"},
  };
  for (const auto& diag : metrics3)
    for (double eps : {1.0, -1.0}) {
      ManifoldSpec spec = testutil::diag_spec(3, eps, diag);
      std::vector<std::vector<double>> pts = {
          {0.3, -0.4, 0.2}, {-0.5, 0.1, -0.3}, {0.0, 0.9, 0.6}};
      acpm::ResidualReport rep = acpm::connection_properties(spec, pts, 1e-9);
      for (const auto& e : rep.entries) {
        INFO(e.name);
        CHECK(e.residual < (e.name == "bianchi_second" ? 1e-8 : 1e-9));
      }
    }
}

TEST_CASE("a non-diagonal indefinite metric passes the property suite") {
  ManifoldSpec spec = testutil::full_spec(
      3, -1.0,
      {"2 + sin(x)", "0.3*x*y", "0.1*z",
       "0.3*x*y", "2 + cos(y)", "0",
       "0.1*z", "0", "-(2 + z^2)"});
  std::vector<std::vector<double>> pts = {{0.2, 0.3, -0.1}, {-0.4, 0.5, 0.8}};
  acpm::ResidualReport rep = acpm::connection_properties(spec, pts, 1e-8);
  CHECK(rep.all_pass());
}

TEST_CASE("conformal tensor vanishes identically in dimension 3") {
  const std::vector<std::vector<std::string>> metrics3 = {
      {"exp(2*z)", "exp(3*z)", "eps"},
      {"2 + sin(x)", "2 + cos(y)", "-(1 + z^2)"},
      {"1 + x^2", "exp(z)", "3 + sin(x + y)"},
  };
  for (const auto& diag : metrics3) {
    ManifoldSpec spec = testutil::diag_spec(3, 1.0, diag);
    std::vector<double> pt = {0.4, -0.2, 0.3};
    acpm::CurvatureBundle b = acpm::curvature(spec, pt);
    CHECK(b.weyl.max_abs() < 1e-8 * (1.0 + b.riemann_low.max_abs()));
  }
}

TEST_CASE("the (1,3) conformal tensor is invariant under rescaling") {
  // generic 5-dim metric and its conformal rescale by exp(0.6 z)
  const std::vector<std::string> base = {"exp(2*z)", "exp(3*z)", "2 + sin(x1)",
                                         "exp(x1 + z)", "eps"};
  std::vector<std::string> scaled;
  for (const auto& s : base) scaled.push_back("exp(0.6*z) * (" + s + ")");
  ManifoldSpec g1 = testutil::diag_spec(5, 1.0, base);
  ManifoldSpec g2 = testutil::diag_spec(5, 1.0, scaled);
  std::mt19937_64 gen(99);
  std::uniform_real_distribution<double> u(-0.8, 0.8);
  for (int trial = 0; trial < 4; ++trial) {
    std::vector<double> pt = {u(gen), u(gen), u(gen), u(gen), u(gen)};
    TensorValue c1 = acpm::curvature(g1, pt).weyl;
    TensorValue c2 = acpm::curvature(g2, pt).weyl;
    double worst = 0.0;
    for (std::size_t i = 0; i < c1.data().size(); ++i)
      worst = std::max(worst, std::abs(c1.data()[i] - c2.data()[i]));
    CHECK(worst < 1e-7 * (1.0 + c1.max_abs()));
    CHECK(c1.max_abs() > 1e-3);  // the check is vacuous if C is zero
  }
}

TEST_CASE("curvature identities involving phi on the example manifolds") {
  // R(X,Y)phiZ - phi R(X,Y)Z and R(phiX, phiY)Z relations, componentwise
  for (const char* name : {"kenmotsu3", "kenmotsu5"}) {
    for (double eps : {1.0, -1.0}) {
      ManifoldSpec spec = builtin(name);
      acpm::set_epsilon(spec, eps);
      const int d = spec.dim;
      std::mt19937_64 gen(7);
      std::uniform_real_distribution<double> u(-1.0, 1.0);
      for (int trial = 0; trial < 5; ++trial) {
        std::vector<double> pt(d);
        for (double& x : pt) x = u(gen);
        acpm::GeometryJets geo(spec, pt, 2);
        acpm::ContactJets c = acpm::contact_jets(spec, geo, pt, 0);
        const TensorValue phi = c.phi.values();
        const TensorValue riem = geo.riemann().values();
        const TensorValue& g = geo.metric().g;
        const double s = 1.0 + riem.max_abs();
        TensorValue fund(d, {Variance::Lower, Variance::Lower});
        for (int i = 0; i < d; ++i)
          for (int j = 0; j < d; ++j) {
            double v = 0.0;
            for (int a = 0; a < d; ++a) v += g(i, a) * phi(a, j);
            fund(i, j) = v;
          }
        double worst1 = 0.0, worst2 = 0.0;
        for (int l = 0; l < d; ++l)
          for (int i = 0; i < d; ++i)
            for (int j = 0; j < d; ++j)
              for (int k = 0; k < d; ++k) {
                double lhs = 0.0;  // R(X,Y)phiZ - phi R(X,Y)Z
                for (int a = 0; a < d; ++a)
                  lhs += riem(l, a, i, j) * phi(a, k) - phi(l, a) * riem(a, k, i, j);
                const double rhs =
                    eps * (g(j, k) * phi(l, i) - g(i, k) * phi(l, j) +
                           fund(i, k) * (l == j ? 1.0 : 0.0) -
                           fund(j, k) * (l == i ? 1.0 : 0.0));
                worst1 = std::max(worst1, std::abs(lhs - rhs) / s);

                double lhs2 = 0.0;  // R(phiX, phiY)Z
                for (int a = 0; a < d; ++a)
                  for (int b = 0; b < d; ++b)
                    lhs2 += riem(l, k, a, b) * phi(a, i) * phi(b, j);
                const double rhs2 =
                    riem(l, k, i, j) +
                    eps * (g(j, k) * (l == i ? 1.0 : 0.0) -
                           g(i, k) * (l == j ? 1.0 : 0.0) +
                           fund(j, k) * phi(l, i) - fund(i, k) * phi(l, j));
                worst2 = std::max(worst2, std::abs(lhs2 - rhs2) / s);
              }
        CHECK(worst1 < 1e-9);
        CHECK(worst2 < 1e-9);
      }
    }
  }
}

TEST_CASE("the warped-product family scales to dimension 7") {
  // g = diag(e^{2q6} I_6, eps): Einstein with Ric = -6 eps g, r = -42 eps
  std::vector<std::string> diag(7, "exp(2*q6)");
  diag[6] = "eps";
  for (double eps : {1.0, -1.0}) {
    ManifoldSpec spec = testutil::diag_spec(7, eps, diag);
    std::vector<double> pt = {0.1, -0.2, 0.3, 0.0, 0.4, -0.1, 0.2};
    acpm::GeometryJets geo(spec, pt, 2);
    const TensorValue ric = geo.ricci().values();
    const TensorValue g = geo.g().values();
    const double s = 1.0 + geo.metric().scale;
    for (int i = 0; i < 7; ++i)
      for (int j = 0; j < 7; ++j)
        CHECK(std::abs(ric(i, j) + 6.0 * eps * g(i, j)) < 1e-11 * s);
    CHECK(geo.scalar().value() == doctest::Approx(-42.0 * eps).epsilon(1e-12));
    CHECK(geo.weyl().values().max_abs() < 1e-10 * s);
  }
}
