#include "tps/metric.hpp"

#include <cmath>

#include "tps/errors.hpp"

namespace tps {

MetricAt gfr(const TpsPoint& pt) {
  const int n = pt.n();
  const Vec e = eta(pt).components;
  Mat G = e * e.transpose();
  for (int a = 0; a < n; ++a) {
    G(TpsPoint::q_index(a), pt.p_index(a)) -= 0.5;
    G(pt.p_index(a), TpsPoint::q_index(a)) -= 0.5;
  }
  return MetricAt{pt, G};
}

std::pair<int, int> signature(const TpsPoint& pt) {
  const MetricAt G = gfr(pt);
  Eigen::SelfAdjointEigenSolver<Mat> es(G.matrix);
  int pos = 0, neg = 0;
  const double scale = std::max(1.0, G.matrix.cwiseAbs().maxCoeff());
  for (int i = 0; i < G.matrix.rows(); ++i) {
    const double ev = es.eigenvalues()(i);
    if (std::abs(ev) < 1e-10 * scale)
      throw DegenerateMetric("signature: eigenvalue within 1e-10 of zero");
    (ev > 0 ? pos : neg) += 1;
  }
  return {pos, neg};
}

namespace {
void require_positive_p(const TpsPoint& pt, const char* who) {
  for (int a = 0; a < pt.n(); ++a)
    if (pt.p(a) <= 0.0)
      throw DomainError(std::string(who) +
                        ": requires p_i > 0 (frames involve sqrt(p_i); note the "
                        "energy representation has p_1 = -T < 0)");
}
}  // namespace

std::vector<CovectorAt> orthonormal_coframe(const TpsPoint& pt) {
  require_positive_p(pt, "orthonormal_coframe");
  const int n = pt.n();
  std::vector<CovectorAt> frame;
  frame.reserve(pt.dim());
  frame.push_back(eta(pt));
  for (int sgn : {+1, -1}) {
    for (int i = 0; i < n; ++i) {
      const double c = std::sqrt(pt.p(i)) / (2.0 * pt.p(i));
      Vec v = Vec::Zero(pt.dim());
      v(TpsPoint::q_index(i)) = -c * pt.p(i);
      v(pt.p_index(i)) = sgn * c;
      frame.emplace_back(pt, v);
    }
  }
  return frame;
}

std::vector<VectorAt> canonical_basis(const TpsPoint& pt) {
  require_positive_p(pt, "canonical_basis");
  const int n = pt.n();
  std::vector<VectorAt> frame;
  frame.reserve(pt.dim());
  frame.push_back(reeb(pt));
  for (int sgn : {+1, -1}) {
    for (int i = 0; i < n; ++i) {
      const double s = std::sqrt(pt.p(i));
      Vec v = Vec::Zero(pt.dim());
      v(0) = s;  // sqrt(p) * (Q_i / p_i) part: (p_i d/dw - d/dq^i)/p_i
      v(TpsPoint::q_index(i)) = -s / pt.p(i);
      v(pt.p_index(i)) = sgn * s;
      frame.emplace_back(pt, v);
    }
  }
  return frame;
}

MixedTensorAt phi(const TpsPoint& pt) {
  require_positive_p(pt, "phi");
  const int n = pt.n();
  const auto theta = orthonormal_coframe(pt);
  const auto e = canonical_basis(pt);
  Mat Phi = Mat::Zero(pt.dim(), pt.dim());
  for (int i = 0; i < n; ++i) {
    const Vec& eplus = e[1 + i].components;
    const Vec& eminus = e[1 + n + i].components;
    const Vec& thplus = theta[1 + i].components;
    const Vec& thminus = theta[1 + n + i].components;
    Phi -= eplus * thminus.transpose() + eminus * thplus.transpose();
  }
  return MixedTensorAt{pt, Phi};
}

MixedTensorAt phi_closed_form(const TpsPoint& pt) {
  const int n = pt.n();
  Mat Phi = Mat::Zero(pt.dim(), pt.dim());
  for (int i = 0; i < n; ++i) {
    Phi(0, TpsPoint::q_index(i)) = pt.p(i);
    Phi(TpsPoint::q_index(i), TpsPoint::q_index(i)) = -1.0;
    Phi(pt.p_index(i), pt.p_index(i)) = 1.0;
  }
  return MixedTensorAt{pt, Phi};
}

StructureBundle standard_bundle(int n) {
  StructureBundle b;
  b.n = n;
  b.eta = [](const TpsPoint& pt) { return eta(pt); };
  b.reeb = [](const TpsPoint& pt) { return reeb(pt); };
  b.phi = [](const TpsPoint& pt) { return phi_closed_form(pt); };
  b.metric = [](const TpsPoint& pt) { return gfr(pt); };
  return b;
}

double StructureReport::residual(const std::string& name) const {
  for (const auto& r : identities)
    if (r.name == name) return r.max_residual;
  throw std::invalid_argument("StructureReport: no identity named " + name);
}

namespace {

// d of a covector field: D(mu,nu) = d_mu a_nu - d_nu a_mu, by fourth-order
// central differences. Gauge factors like 1/p_1 make the second-order stencil
// too coarse when the point norm (hence the step) is large.
Mat exterior_derivative(const std::function<CovectorAt(const TpsPoint&)>& field,
                        const TpsPoint& pt) {
  const int dim = pt.dim();
  const double h = fd_step(pt);
  Mat grad(dim, dim);  // grad(mu, nu) = d_mu a_nu
  const Vec x = pt.coords();
  auto at = [&](const Vec& y) { return field(TpsPoint::from_coords(y)); };
  for (int mu = 0; mu < dim; ++mu) {
    Vec xp = x, xm = x, xpp = x, xmm = x;
    xp(mu) += h;
    xm(mu) -= h;
    xpp(mu) += 2.0 * h;
    xmm(mu) -= 2.0 * h;
    grad.row(mu) = (-at(xpp).components + 8.0 * at(xp).components -
                    8.0 * at(xm).components + at(xmm).components) /
                   (12.0 * h);
  }
  return grad - grad.transpose();
}

}  // namespace

StructureReport check_structure(const StructureBundle& bundle,
                                const std::vector<TpsPoint>& pts, double tol) {
  StructureReport report;
  report.points = static_cast<int>(pts.size());
  report.tol = tol;

  IdentityResidual phi_xi{"phi_xi"};
  IdentityResidual phi_sq{"phi_squared"};
  IdentityResidual compat{"compatibility"};
  IdentityResidual assoc{"associated"};
  IdentityResidual reeb_norm{"eta_of_xi"};
  IdentityResidual reeb_deta{"deta_of_xi"};

  for (const auto& pt : pts) {
    const Vec e = bundle.eta(pt).components;
    const Vec xi = bundle.reeb(pt).components;
    const Mat Phi = bundle.phi(pt).matrix;
    const Mat G = bundle.metric(pt).matrix;
    const Mat De = exterior_derivative(bundle.eta, pt);
    const int dim = pt.dim();

    auto bump = [](IdentityResidual& r, double v) {
      if (v > r.max_residual) r.max_residual = v;
    };
    bump(phi_xi, (Phi * xi).cwiseAbs().maxCoeff());
    bump(phi_sq, (Phi * Phi - Mat::Identity(dim, dim) + xi * e.transpose())
                     .cwiseAbs()
                     .maxCoeff());
    bump(compat, (Phi.transpose() * G * Phi + G - e * e.transpose())
                     .cwiseAbs()
                     .maxCoeff());
    bump(assoc, (0.5 * De - G * Phi).cwiseAbs().maxCoeff());
    bump(reeb_norm, std::abs(e.dot(xi) - 1.0));
    bump(reeb_deta, (De * xi).cwiseAbs().maxCoeff());
  }

  for (auto* r : {&phi_xi, &phi_sq, &compat, &assoc, &reeb_norm, &reeb_deta}) {
    r->pass = r->max_residual < tol;
    report.identities.push_back(*r);
  }
  return report;
}

Mat lie_metric(const VectorFieldDef& X,
               const std::function<MetricAt(const TpsPoint&)>& metric,
               const TpsPoint& pt) {
  const int dim = pt.dim();
  const double h = fd_step(pt);
  const Vec x = pt.coords();
  const Vec Xv = X(pt).components;
  const Mat JX = field_jacobian(X, pt, h);
  const Mat G = metric(pt).matrix;

  // (L_X G)_{mu nu} = X^s d_s G_{mu nu} + G_{s nu} d_mu X^s + G_{mu s} d_nu X^s
  Mat lie = JX.transpose() * G + G * JX;
  for (int s = 0; s < dim; ++s) {
    Vec xp = x, xm = x;
    xp(s) += h;
    xm(s) -= h;
    const Mat dG = (metric(TpsPoint::from_coords(xp)).matrix -
                    metric(TpsPoint::from_coords(xm)).matrix) /
                   (2.0 * h);
    lie += Xv(s) * dG;
  }
  return lie;
}

double lie_metric_residual(const VectorFieldDef& X,
                           const std::function<MetricAt(const TpsPoint&)>& metric,
                           const TpsPoint& pt) {
  return lie_metric(X, metric, pt).cwiseAbs().maxCoeff();
}

double killing_residual(const StructureBundle& bundle, const TpsPoint& pt) {
  VectorFieldDef xi([&bundle](const TpsPoint& q) { return bundle.reeb(q); });
  return lie_metric_residual(xi, bundle.metric, pt);
}

std::vector<Mat> christoffels(const std::function<MetricAt(const TpsPoint&)>& metric,
                              const TpsPoint& pt, double rel_step) {
  const int dim = pt.dim();
  const double h = fd_step(pt, rel_step);
  const Vec x = pt.coords();

  std::vector<Mat> dG(dim);  // dG[s] = d_s G
  for (int s = 0; s < dim; ++s) {
    Vec xp = x, xm = x;
    xp(s) += h;
    xm(s) -= h;
    dG[s] = (metric(TpsPoint::from_coords(xp)).matrix -
             metric(TpsPoint::from_coords(xm)).matrix) /
            (2.0 * h);
  }

  const Mat Ginv = metric(pt).matrix.inverse();
  std::vector<Mat> Gamma(dim, Mat::Zero(dim, dim));
  for (int mu = 0; mu < dim; ++mu)
    for (int nu = 0; nu < dim; ++nu)
      for (int la = 0; la <= nu; ++la) {
        double sum = 0.0;
        for (int s = 0; s < dim; ++s)
          sum += Ginv(mu, s) * (dG[nu](s, la) + dG[la](s, nu) - dG[s](nu, la));
        Gamma[mu](nu, la) = 0.5 * sum;
        Gamma[mu](la, nu) = Gamma[mu](nu, la);
      }
  return Gamma;
}

double nabla_xi_residual(const StructureBundle& bundle, const TpsPoint& pt) {
  const int dim = pt.dim();
  const auto Gamma = christoffels(bundle.metric, pt);
  VectorFieldDef xi([&bundle](const TpsPoint& q) { return bundle.reeb(q); });
  const Mat Jxi = field_jacobian(xi, pt);
  const Vec xiv = bundle.reeb(pt).components;

  // (nabla xi)^mu_nu = d_nu xi^mu + Gamma^mu_{nu s} xi^s
  Mat nabla = Jxi;
  for (int mu = 0; mu < dim; ++mu)
    for (int nu = 0; nu < dim; ++nu) nabla(mu, nu) += Gamma[mu].row(nu).dot(xiv);

  const Mat Phi = bundle.phi(pt).matrix;
  return (nabla + Phi).cwiseAbs().maxCoeff();
}

Mat ricci_numeric(const TpsPoint& pt) {
  const int dim = pt.dim();
  auto metric = [](const TpsPoint& q) { return gfr(q); };
  const double h = fd_step(pt, 1e-4);
  const Vec x = pt.coords();

  // dGamma[mu](sigma; nu) arranged as dGamma[mu][nu] = d_nu Gamma^mu_{. .}
  std::vector<std::vector<Mat>> dGamma(dim, std::vector<Mat>(dim));
  for (int nu = 0; nu < dim; ++nu) {
    Vec xp = x, xm = x;
    xp(nu) += h;
    xm(nu) -= h;
    const auto Gp = christoffels(metric, TpsPoint::from_coords(xp));
    const auto Gm = christoffels(metric, TpsPoint::from_coords(xm));
    for (int mu = 0; mu < dim; ++mu) dGamma[mu][nu] = (Gp[mu] - Gm[mu]) / (2.0 * h);
  }

  const auto Gamma = christoffels(metric, pt);
  // Ric_{sigma nu} = d_mu Gamma^mu_{nu sigma} - d_nu Gamma^mu_{mu sigma}
  //                + Gamma^mu_{mu la} Gamma^la_{nu sigma}
  //                - Gamma^mu_{nu la} Gamma^la_{mu sigma}
  Mat ric = Mat::Zero(dim, dim);
  for (int sigma = 0; sigma < dim; ++sigma)
    for (int nu = 0; nu < dim; ++nu) {
      double r = 0.0;
      for (int mu = 0; mu < dim; ++mu) {
        r += dGamma[mu][mu](nu, sigma) - dGamma[mu][nu](mu, sigma);
        for (int la = 0; la < dim; ++la)
          r += Gamma[mu](mu, la) * Gamma[la](nu, sigma) -
               Gamma[mu](nu, la) * Gamma[la](mu, sigma);
      }
      ric(sigma, nu) = r;
    }
  return ric;
}

double eta_einstein_residual(const TpsPoint& pt) {
  const int n = pt.n();
  if (n > 2)
    throw UnsupportedDimension("eta_einstein_residual: supported for n <= 2");
  const Mat ric = ricci_numeric(pt);
  const Vec e = eta(pt).components;
  const Mat target = -(2.0 * n + 2.0) * (e * e.transpose()) + 2.0 * gfr(pt).matrix;
  return (ric - target).cwiseAbs().maxCoeff();
}

std::vector<VectorFieldDef> isometry_generators(int n) {
  std::vector<VectorFieldDef> gens;
  gens.reserve((n + 1) * (n + 1));
  const int dim = 2 * n + 1;

  // translations: xi, d/dq^i, d/dp_i - q^i d/dw
  {
    Vec c = Vec::Zero(dim);
    c(0) = 1.0;
    gens.push_back(VectorFieldDef::constant(c));
  }
  for (int i = 0; i < n; ++i) {
    Vec c = Vec::Zero(dim);
    c(TpsPoint::q_index(i)) = 1.0;
    gens.push_back(VectorFieldDef::constant(c));
  }
  for (int i = 0; i < n; ++i) {
    gens.push_back(VectorFieldDef([i, n](const TpsPoint& pt) {
      Vec c = Vec::Zero(pt.dim());
      c(TpsPoint::p_index(i, n)) = 1.0;
      c(0) = -pt.q(i);
      return VectorAt(pt, c);
    }));
  }
  // boosts: p_i d/dp_j - q^j d/dq^i
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      gens.push_back(VectorFieldDef([i, j, n](const TpsPoint& pt) {
        Vec c = Vec::Zero(pt.dim());
        c(TpsPoint::p_index(j, n)) = pt.p(i);
        c(TpsPoint::q_index(i)) = -pt.q(j);
        return VectorAt(pt, c);
      }));
    }
  return gens;
}

}  // namespace tps
