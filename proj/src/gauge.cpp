#include "tps/gauge.hpp"

#include <cmath>

#include "tps/errors.hpp"

namespace tps {

namespace {

struct GaugeData {
  double om;
  Vec eta, xi, zeta, z, g_inv_dom;
  Mat G, Phi;
  double xi_om, zeta_sq;
};

GaugeData evaluate(const StructureBundle& bundle, const ScalarField& omega,
                   const TpsPoint& pt) {
  GaugeData d;
  const FieldEval om = omega.eval(pt);
  if (std::abs(om.value) < 1e-12)
    throw GaugeSingular("gauge_transform: Omega vanishes at evaluation point");
  d.om = om.value;
  d.eta = bundle.eta(pt).components;
  d.xi = bundle.reeb(pt).components;
  d.Phi = bundle.phi(pt).matrix;
  d.G = bundle.metric(pt).matrix;

  Eigen::FullPivLU<Mat> lu(d.G);
  if (!lu.isInvertible())
    throw DegenerateMetric("gauge_transform: metric not invertible");
  d.g_inv_dom = lu.solve(om.gradient);
  d.xi_om = om.gradient.dot(d.xi);
  d.zeta = -(0.5 / d.om) * (d.Phi * d.g_inv_dom);
  d.z = d.G * d.zeta;
  d.zeta_sq = d.zeta.dot(d.z);
  return d;
}

}  // namespace

StructureBundle gauge_transform(const StructureBundle& bundle,
                                const GaugeFactor& factor) {
  StructureBundle out;
  out.n = bundle.n;
  const ScalarField omega = factor.omega;

  out.eta = [bundle, omega](const TpsPoint& pt) {
    const FieldEval om = omega.eval(pt);
    if (std::abs(om.value) < 1e-12)
      throw GaugeSingular("gauge_transform: Omega vanishes at evaluation point");
    return CovectorAt(pt, om.value * bundle.eta(pt).components);
  };
  out.reeb = [bundle, omega](const TpsPoint& pt) {
    const GaugeData d = evaluate(bundle, omega, pt);
    return VectorAt(pt, (d.xi + d.zeta) / d.om);
  };
  out.phi = [bundle, omega](const TpsPoint& pt) {
    const GaugeData d = evaluate(bundle, omega, pt);
    const Vec v = d.g_inv_dom - d.xi_om * d.xi;
    return MixedTensorAt{pt, d.Phi + (0.5 / d.om) * (v * d.eta.transpose())};
  };
  out.metric = [bundle, omega](const TpsPoint& pt) {
    const GaugeData d = evaluate(bundle, omega, pt);
    Mat Gt = d.om * (d.G - d.eta * d.z.transpose() - d.z * d.eta.transpose());
    Gt += d.om * (d.om - 1.0 + d.zeta_sq) * (d.eta * d.eta.transpose());
    return MetricAt{pt, Gt};
  };
  return out;
}

namespace {

Mat sym_outer(const Vec& a, const Vec& b) {
  return 0.5 * (a * b.transpose() + b * a.transpose());
}

}  // namespace

RepresentationChangeReport representation_change_demo(
    const Potential& energy_fundamental, const std::vector<Vec>& sv_grid,
    double t_min, double tol) {
  if (energy_fundamental.arity() != 2)
    throw DimensionMismatch("representation_change_demo: U(S,V) must have arity 2");

  const int n = 2, dim = 5;
  const StructureBundle base = standard_bundle(n);
  // Omega = -1/T = 1/p_1 as a field on the phase space.
  const ScalarField omega = ScalarField::from_dual(
      n, [](const DualPoint& x) { return inv(x.p[0]); });
  const StructureBundle gauged = gauge_transform(base, GaugeFactor{omega});

  RepresentationChangeReport rep;
  rep.grid_points = static_cast<int>(sv_grid.size());

  std::vector<TpsPoint> pts;
  pts.reserve(sv_grid.size());

  for (const Vec& sv : sv_grid) {
    const FieldEval u = energy_fundamental.eval(sv);
    const double T = u.gradient(0);       // T = dU/dS
    const double press = -u.gradient(1);  // p = -dU/dV
    if (T <= t_min)
      throw DomainError("representation_change_demo: T <= t_min on grid");

    Vec q(2), p(2);
    q << sv(0), sv(1);
    p << -T, press;
    const TpsPoint pt(u.value, q, p);
    pts.push_back(pt);

    // Equilibrium embedding differential over (S,V).
    Mat J = Mat::Zero(dim, n);
    J.row(0) = u.gradient.transpose();
    J(1, 0) = 1.0;
    J(2, 1) = 1.0;
    J.block(3, 0, 2, 2) = -u.hessian;

    const Mat G = base.metric(pt).matrix;
    const Mat Gt = gauged.metric(pt).matrix;
    const Vec xit = gauged.reeb(pt).components;

    Vec dS = Vec::Zero(dim);
    dS(TpsPoint::q_index(0)) = 1.0;
    rep.max_xi_residual =
        std::max(rep.max_xi_residual, (xit - dS).cwiseAbs().maxCoeff());

    // Closed-form entropy-representation metric:
    // G^S = eta^S (x) eta^S + dU (.) d(1/T) + dV (.) d(p/T), written out in
    // the energy chart (p1 = -T, p2 = p).
    Vec e = base.eta(pt).components;
    Vec dw = Vec::Zero(dim), dq2 = Vec::Zero(dim), dp1 = Vec::Zero(dim),
        dp2 = Vec::Zero(dim);
    dw(0) = 1.0;
    dq2(TpsPoint::q_index(1)) = 1.0;
    dp1(TpsPoint::p_index(0, n)) = 1.0;
    dp2(TpsPoint::p_index(1, n)) = 1.0;
    const double p1 = pt.p(0), p2 = pt.p(1);
    Mat target = (1.0 / (p1 * p1)) * (e * e.transpose());
    target += (1.0 / (p1 * p1)) * sym_outer(dw, dp1);
    target += -(1.0 / p1) * sym_outer(dq2, dp2);
    target += (p2 / (p1 * p1)) * sym_outer(dq2, dp1);
    rep.max_metric_residual =
        std::max(rep.max_metric_residual, (Gt - target).cwiseAbs().maxCoeff());

    // Induced metrics on the equilibrium manifold, both over the common
    // (S,V) base: g^U from G, g^S from G~; conformal factor -1/T.
    const Mat gU = J.transpose() * G * J;
    const Mat gS = J.transpose() * Gt * J;
    rep.max_conformal_residual = std::max(
        rep.max_conformal_residual, (gS + (1.0 / T) * gU).cwiseAbs().maxCoeff());
  }

  rep.structure = check_structure(gauged, pts, tol);
  return rep;
}

}  // namespace tps
