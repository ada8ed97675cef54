#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "tps/errors.hpp"
#include "tps/metric.hpp"

using namespace tps;

namespace {
TpsPoint pt1(double w, double q, double p) {
  Vec qv(1), pv(1);
  qv << q;
  pv << p;
  return TpsPoint(w, qv, pv);
}
}  // namespace

TEST_CASE("gfr closed form at n=1, p=3") {
  const TpsPoint pt = pt1(0.2, -1.0, 3.0);
  const Mat G = gfr(pt).matrix;
  Mat expect(3, 3);
  expect << 1, 3, 0, 3, 9, -0.5, 0, -0.5, 0;
  CHECK((G - expect).cwiseAbs().maxCoeff() == 0.0);
  CHECK(G.determinant() == doctest::Approx(-0.25).epsilon(1e-14));
}

TEST_CASE("G(xi, xi) = 1") {
  Rng rng(2);
  for (int n : {1, 2, 3}) {
    const TpsPoint pt = rng.point(n, 4.0, -3.0, 3.0);
    const Vec xi = reeb(pt).components;
    CHECK(xi.dot(gfr(pt).matrix * xi) == doctest::Approx(1.0));
  }
}

TEST_CASE("signature is (n+1, n) everywhere") {
  Rng rng(4);
  for (int n : {1, 2, 3})
    for (int k = 0; k < 50; ++k) {
      const auto sig = signature(rng.point(n, 3.0, -6.0, 6.0));
      CHECK(sig.first == n + 1);
      CHECK(sig.second == n);
    }
}

TEST_CASE("orthonormal coframe: explicit coefficients and congruence") {
  {
    const TpsPoint pt = pt1(0, 0, 1.0);
    const auto theta = orthonormal_coframe(pt);
    CHECK(theta[1].components == (Vec(3) << 0, -0.5, 0.5).finished());
    CHECK(theta[2].components == (Vec(3) << 0, -0.5, -0.5).finished());
  }
  {
    const TpsPoint pt = pt1(0, 0, 4.0);
    const auto theta = orthonormal_coframe(pt);
    CHECK(theta[1].components(2) == doctest::Approx(0.25));  // sqrt(p)/2p = 1/4
  }
  Rng rng(6);
  for (int n : {1, 2, 3}) {
    const TpsPoint pt = rng.point(n);
    const auto theta = orthonormal_coframe(pt);
    Mat Theta(pt.dim(), pt.dim());
    for (int r = 0; r < pt.dim(); ++r) Theta.row(r) = theta[r].components;
    const Mat E = Theta.inverse();  // frame vectors dual to the coframe
    const Mat Gf = E.transpose() * gfr(pt).matrix * E;
    Mat expect = Mat::Zero(pt.dim(), pt.dim());
    expect(0, 0) = 1.0;
    for (int i = 0; i < n; ++i) {
      expect(1 + i, 1 + i) = 1.0;
      expect(1 + n + i, 1 + n + i) = -1.0;
    }
    CHECK((Gf - expect).cwiseAbs().maxCoeff() < 1e-10);
  }
}

TEST_CASE("coframe rejects nonpositive p") {
  CHECK_THROWS_AS(orthonormal_coframe(pt1(0, 0, -1.0)), DomainError);
  CHECK_THROWS_AS(canonical_basis(pt1(0, 0, -1.0)), DomainError);
  CHECK_THROWS_AS(phi(pt1(0, 0, -1.0)), DomainError);
}

TEST_CASE("canonical basis: e+ at p=1 and norms") {
  const TpsPoint pt = pt1(0.0, 2.0, 1.0);
  const auto e = canonical_basis(pt);
  CHECK(e[1].components == (Vec(3) << 1, -1, 1).finished());  // e+ = Q + P
  Rng rng(8);
  for (int n : {1, 2}) {
    const TpsPoint q = rng.point(n);
    const auto basis = canonical_basis(q);
    const Mat G = gfr(q).matrix;
    for (int i = 0; i < n; ++i) {
      const Vec& ep = basis[1 + i].components;
      const Vec& em = basis[1 + n + i].components;
      CHECK(ep.dot(G * ep) == doctest::Approx(1.0).epsilon(1e-10));
      CHECK(em.dot(G * em) == doctest::Approx(-1.0).epsilon(1e-10));
    }
  }
}

// With phi fixed by the associated-metric condition and nabla xi = -phi
// under the d(eta) = dp^dq orientation, the eigenvalue labels are
// phi(e+ + e-) = -(e+ + e-) and phi(e+ - e-) = +(e+ - e-); equivalently
// phi fixes the P-directions and flips the Q-directions.
TEST_CASE("phi eigenvectors in the canonical frame") {
  Rng rng(9);
  for (int n : {1, 2}) {
    const TpsPoint pt = rng.point(n);
    const Mat Phi = phi(pt).matrix;
    const auto e = canonical_basis(pt);
    for (int i = 0; i < n; ++i) {
      const Vec plus = e[1 + i].components + e[1 + n + i].components;
      const Vec minus = e[1 + i].components - e[1 + n + i].components;
      CHECK((Phi * plus + plus).cwiseAbs().maxCoeff() < 1e-10);
      CHECK((Phi * minus - minus).cwiseAbs().maxCoeff() < 1e-10);
    }
  }
}

TEST_CASE("phi closed form agrees with the frame assembly for p > 0") {
  Rng rng(10);
  for (int n : {1, 2, 3}) {
    const TpsPoint pt = rng.point(n);
    CHECK((phi(pt).matrix - phi_closed_form(pt).matrix).cwiseAbs().maxCoeff() <
          1e-12);
  }
}

TEST_CASE("phi kills xi and squares to I - eta (x) xi") {
  Rng rng(12);
  for (int n : {1, 2}) {
    for (int k = 0; k < 25; ++k) {
      const TpsPoint pt = rng.point(n, 2.0, -4.0, 4.0);  // any sign of p
      const Mat Phi = phi_closed_form(pt).matrix;
      const Vec xi = reeb(pt).components;
      const Vec e = eta(pt).components;
      CHECK((Phi * xi).cwiseAbs().maxCoeff() == 0.0);
      const Mat expect = Mat::Identity(pt.dim(), pt.dim()) - xi * e.transpose();
      CHECK((Phi * Phi - expect).cwiseAbs().maxCoeff() < 1e-10);
    }
  }
}

TEST_CASE("check_structure passes for the standard bundle") {
  Rng rng(14);
  for (int n : {1, 2, 3}) {
    std::vector<TpsPoint> pts;
    for (int k = 0; k < 40; ++k) pts.push_back(rng.point(n));
    const auto rep = check_structure(standard_bundle(n), pts, 1e-8);
    for (const auto& ident : rep.identities) {
      INFO(ident.name, " residual ", ident.max_residual);
      CHECK(ident.pass);
    }
  }
}

TEST_CASE("check_structure reports a broken bundle") {
  StructureBundle broken = standard_bundle(1);
  broken.phi = [](const TpsPoint& pt) {
    return MixedTensorAt{pt, Mat::Zero(pt.dim(), pt.dim())};
  };
  Rng rng(15);
  std::vector<TpsPoint> pts{rng.point(1)};
  const auto rep = check_structure(broken, pts, 1e-8);
  CHECK_FALSE(rep.all_pass());
  CHECK(rep.residual("compatibility") > 0.1);
}

TEST_CASE("xi is Killing; w-scaled metric is not") {
  Rng rng(16);
  for (int n : {1, 2}) {
    const TpsPoint pt = rng.point(n);
    CHECK(killing_residual(standard_bundle(n), pt) < 1e-6);
  }
  StructureBundle scaled = standard_bundle(1);
  scaled.metric = [](const TpsPoint& pt) {
    return MetricAt{pt, pt.w() * gfr(pt).matrix};
  };
  const TpsPoint pt = pt1(2.0, 1.0, 1.5);
  CHECK(killing_residual(scaled, pt) > 0.5);
}

TEST_CASE("all isometry generators have vanishing Killing residual") {
  Rng rng(17);
  for (int n : {1, 2}) {
    const auto gens = isometry_generators(n);
    CHECK(gens.size() == static_cast<size_t>((n + 1) * (n + 1)));
    auto metric = [](const TpsPoint& q) { return gfr(q); };
    for (const auto& X : gens) {
      const TpsPoint pt = rng.point(n);
      CHECK(lie_metric_residual(X, metric, pt) < 1e-6);
    }
  }
}

TEST_CASE("translation generators reproduce the Heisenberg algebra") {
  // Layout: [xi, d/dq^1.., d/dp_1 - q^1 d/dw .., boosts..];
  // [d/dp_i - q^i d/dw, d/dq^j] = delta_ij d/dw, center xi.
  Rng rng(21);
  const int n = 2;
  const auto gens = isometry_generators(n);
  const TpsPoint pt = rng.point(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const Vec br = lie_bracket(gens[1 + n + i], gens[1 + j], pt).components;
      Vec expect = Vec::Zero(pt.dim());
      if (i == j) expect(0) = 1.0;
      CHECK((br - expect).cwiseAbs().maxCoeff() < 1e-8);
      const Vec central = lie_bracket(gens[0], gens[1 + n + i], pt).components;
      CHECK(central.cwiseAbs().maxCoeff() < 1e-8);
    }
}

TEST_CASE("nabla xi = -phi via finite-difference Christoffels") {
  Rng rng(18);
  for (int n : {1, 2}) {
    for (int k = 0; k < 5; ++k) {
      const TpsPoint pt = rng.point(n);
      CHECK(nabla_xi_residual(standard_bundle(n), pt) < 1e-4);
    }
  }
}

TEST_CASE("Christoffels of a constant metric vanish") {
  auto metric = [](const TpsPoint& pt) {
    Mat m = Mat::Identity(pt.dim(), pt.dim());
    m(0, 1) = m(1, 0) = 0.25;
    return MetricAt{pt, m};
  };
  const TpsPoint pt = pt1(0.4, -0.3, 2.0);
  for (const Mat& G : christoffels(metric, pt))
    CHECK(G.cwiseAbs().maxCoeff() < 1e-10);
}

TEST_CASE("eta-Einstein: frozen target at (0,0,1) and the FD oracle") {
  const TpsPoint pt = pt1(0.0, 0.0, 1.0);
  Mat target(3, 3);
  target << -2, -2, 0, -2, -2, -1, 0, -1, 0;

  const Mat ric = ricci_numeric(pt);
  CHECK((ric - target).cwiseAbs().maxCoeff() < 1e-6);

  // Independent second-derivative route.
  auto metric = [](const Vec& x) { return gfr(TpsPoint::from_coords(x)).matrix; };
  const Mat ric_oracle = oracles::ricci_from_metric_derivatives(metric, pt.coords());
  CHECK((ric_oracle - target).cwiseAbs().maxCoeff() < 1e-5);
}

TEST_CASE("eta-Einstein residual over random points") {
  Rng rng(20);
  for (int k = 0; k < 20; ++k)
    CHECK(eta_einstein_residual(rng.point(1, 2.0, -3.0, 3.0)) < 1e-3);
  for (int k = 0; k < 5; ++k)
    CHECK(eta_einstein_residual(rng.point(2)) < 1e-3);
  CHECK_THROWS_AS(eta_einstein_residual(rng.point(3)), UnsupportedDimension);
}
