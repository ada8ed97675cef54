#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "tps/chart.hpp"
#include "tps/errors.hpp"

using namespace tps;

namespace {
TpsPoint pt1(double w, double q, double p) {
  Vec qv(1), pv(1);
  qv << q;
  pv << p;
  return TpsPoint(w, qv, pv);
}
}  // namespace

TEST_CASE("eta on coordinate directions") {
  const TpsPoint pt = pt1(1.0, 2.0, 3.0);
  CHECK(eta_eval(pt, VectorAt(pt, (Vec(3) << 1, 0, 0).finished())) == 1.0);
  CHECK(eta_eval(pt, VectorAt(pt, (Vec(3) << 0, 1, 0).finished())) == 3.0);
  CHECK(eta_eval(pt, VectorAt(pt, (Vec(3) << 0, 0, 1).finished())) == 0.0);
}

TEST_CASE("eta dimension mismatch") {
  const TpsPoint pt = pt1(0, 0, 1);
  Vec q2(2), p2(2);
  q2 << 1, 1;
  p2 << 1, 1;
  const TpsPoint other(0.0, q2, p2);
  CHECK_THROWS_AS(eta_eval(pt, VectorAt(other, Vec::Zero(5))), DimensionMismatch);
}

TEST_CASE("deta orientation: dp wedge dq") {
  const TpsPoint pt = pt1(1.0, 2.0, 3.0);
  const VectorAt dp(pt, (Vec(3) << 0, 0, 1).finished());
  const VectorAt dq(pt, (Vec(3) << 0, 1, 0).finished());
  CHECK(deta_eval(pt, dp, dq) == doctest::Approx(1.0));
  CHECK(deta_eval(pt, dq, dp) == doctest::Approx(-1.0));
  CHECK(deta_eval(pt, dq, dq) == 0.0);
}

TEST_CASE("deta matrix agrees with pairwise evaluation") {
  Rng rng(13);
  for (int n : {1, 2}) {
    const TpsPoint pt = rng.point(n);
    const Mat D = deta_matrix(pt);
    CHECK((D + D.transpose()).cwiseAbs().maxCoeff() == 0.0);
    for (int mu = 0; mu < pt.dim(); ++mu)
      for (int nu = 0; nu < pt.dim(); ++nu) {
        Vec emu = Vec::Zero(pt.dim()), enu = Vec::Zero(pt.dim());
        emu(mu) = 1.0;
        enu(nu) = 1.0;
        CHECK(D(mu, nu) ==
              deta_eval(pt, VectorAt(pt, emu), VectorAt(pt, enu)));
      }
  }
}

TEST_CASE("Reeb field normalization and kernel") {
  Rng rng(11);
  for (int n : {1, 2, 3}) {
    for (int k = 0; k < 100; ++k) {
      const TpsPoint pt = rng.point(n, 2.0, -5.0, 5.0);
      const VectorAt xi = reeb(pt);
      CHECK(xi.components(0) == 1.0);
      CHECK(xi.components.tail(2 * n).isZero());
      CHECK(eta_eval(pt, xi) == doctest::Approx(1.0).epsilon(1e-14));
      const VectorAt y(pt, rng.uniform_vec(pt.dim(), -2.0, 2.0));
      CHECK(std::abs(deta_eval(pt, xi, y)) <= 1e-12);
    }
  }
}

TEST_CASE("Heisenberg basis components") {
  const TpsPoint pt = pt1(0.5, -1.0, 3.0);
  const auto basis = heisenberg_basis(pt);
  REQUIRE(basis.size() == 3);
  CHECK(basis[1].components == (Vec(3) << 0, 0, 1).finished());  // P^1
  CHECK(basis[2].components == (Vec(3) << 3, -1, 0).finished()); // Q_1 at p=3
}

TEST_CASE("Heisenberg commutators via numerical bracket") {
  Rng rng(7);
  for (int n : {1, 2, 3}) {
    const TpsPoint pt = rng.point(n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        VectorFieldDef P = VectorFieldDef([i, n](const TpsPoint& x) {
          Vec c = Vec::Zero(x.dim());
          c(TpsPoint::p_index(i, n)) = 1.0;
          return VectorAt(x, c);
        });
        VectorFieldDef Q = VectorFieldDef([j, n](const TpsPoint& x) {
          Vec c = Vec::Zero(x.dim());
          c(0) = x.p(j);
          c(TpsPoint::q_index(j)) = -1.0;
          return VectorAt(x, c);
        });
        Vec expect = Vec::Zero(pt.dim());
        if (i == j) expect(0) = 1.0;
        const Vec br = lie_bracket(P, Q, pt).components;
        CHECK((br - expect).cwiseAbs().maxCoeff() < 1e-8);

        // [xi, Q_j] = 0
        VectorFieldDef xi_field = VectorFieldDef([](const TpsPoint& x) {
          return reeb(x);
        });
        const Vec br2 = lie_bracket(xi_field, Q, pt).components;
        CHECK(br2.cwiseAbs().maxCoeff() < 1e-8);
      }
  }
}

TEST_CASE("bracket antisymmetry: [F,F] = 0 exactly") {
  const TpsPoint pt = pt1(0.3, 1.7, 2.2);
  VectorFieldDef F([](const TpsPoint& x) {
    Vec c(3);
    c << x.w() * x.p(0), std::sin(x.q(0)), x.p(0) * x.p(0);
    return VectorAt(x, c);
  });
  CHECK(lie_bracket(F, F, pt).components.cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("volume form equals n! against the wedge-algebra oracle") {
  Rng rng(3);
  const double factorial[] = {1.0, 1.0, 2.0, 6.0};
  for (int n : {1, 2, 3}) {
    for (int k = 0; k < 10; ++k) {
      const TpsPoint pt = rng.point(n, 3.0, -4.0, 4.0);
      const double v = volume_nondegeneracy(pt);
      CHECK(std::abs(v) == factorial[n]);
      CHECK(v == doctest::Approx(oracles::volume_form_oracle(pt)).epsilon(1e-14));
    }
  }
}

TEST_CASE("volume form rejects n > 3") {
  Rng rng(5);
  CHECK_THROWS_AS(volume_nondegeneracy(rng.point(4)), UnsupportedDimension);
}

TEST_CASE("ScalarField duals match finite differences") {
  Rng rng(19);
  const ScalarField h = ScalarField::from_dual(2, [](const DualPoint& x) {
    return x.w * x.p[0] + sin(x.q[1]) * exp(0.3 * x.p[1]) + log(x.p[0]);
  });
  for (int k = 0; k < 20; ++k) {
    const TpsPoint pt = rng.point(2);
    const FieldEval e = h.eval(pt);
    auto f = [&](const Vec& x) { return h.value(TpsPoint::from_coords(x)); };
    const Vec g_fd = oracles::fd_gradient(f, pt.coords());
    const Mat h_fd = oracles::fd_hessian(f, pt.coords());
    CHECK((e.gradient - g_fd).cwiseAbs().maxCoeff() <
          1e-6 * std::max(1.0, g_fd.cwiseAbs().maxCoeff()));
    CHECK((e.hessian - h_fd).cwiseAbs().maxCoeff() <
          1e-4 * std::max(1.0, h_fd.cwiseAbs().maxCoeff()));
    CHECK((e.hessian - e.hessian.transpose()).cwiseAbs().maxCoeff() < 1e-12);
  }
}

TEST_CASE("Potential duals match finite differences") {
  const Potential f = Potential::from_dual(2, [](const std::vector<Dual2>& x) {
    return x[0] * x[0] * x[1] + sqrt(x[1]) / x[0];
  });
  Vec x(2);
  x << 1.3, 2.1;
  auto fv = [&](const Vec& y) { return f.value(y); };
  CHECK((f.gradient(x) - oracles::fd_gradient(fv, x)).cwiseAbs().maxCoeff() < 1e-6);
  CHECK((f.hessian(x) - oracles::fd_hessian(fv, x)).cwiseAbs().maxCoeff() < 1e-4);
}
