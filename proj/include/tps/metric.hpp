#pragma once

#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "tps/chart.hpp"
#include "tps/field.hpp"
#include "tps/point.hpp"

namespace tps {

// Phase-space fluctuation metric G = eta (x) eta - dq^i (.) dp_i, the almost
// para-contact tensor phi, frames, and numerical Riemannian checks.
//
// Sign conventions (fixed empirically, see README): with d(eta) = dp_a ^ dq^a
// the tensor phi below satisfies all four para-contact metric identities
//   phi(xi) = 0,   phi^2 = I - eta (x) xi,
//   G(phi X, phi Y) = -[G(X,Y) - eta(X) eta(Y)],
//   (1/2) d(eta)(X,Y) = G(X, phi Y),
// together with  nabla(xi) = -phi  for the Levi-Civita connection of G.

struct MetricAt {
  TpsPoint base;
  Mat matrix;  // symmetric (2n+1)x(2n+1), coordinate order
};

struct MixedTensorAt {
  TpsPoint base;
  Mat matrix;  // one upper (row) and one lower (column) index
};

// G in coordinate components. For n = 1 over (w,q,p):
//   [[1, p, 0], [p, p^2, -1/2], [0, -1/2, 0]],  det = -1/4.
MetricAt gfr(const TpsPoint& pt);

// (pos, neg) eigenvalue counts of gfr; always (n+1, n). Throws
// DegenerateMetric if an eigenvalue sits within 1e-10 of zero.
std::pair<int, int> signature(const TpsPoint& pt);

// Orthonormal coframe {theta^0 = eta, theta^{+i}, theta^{-i}} with
// theta^{+-i} = (sqrt(p_i)/2p_i) (-p_i dq^i +- dp_i); requires p_i > 0.
// Congruence of G by this coframe gives diag(+1, +1 x n, -1 x n).
std::vector<CovectorAt> orthonormal_coframe(const TpsPoint& pt);

// Canonical frame {xi, e+_i, e-_i}, e+-_i = sqrt(p_i)[Q_i/p_i +- P^i];
// requires p_i > 0. e- are timelike (norm^2 = -1), xi and e+ spacelike.
std::vector<VectorAt> canonical_basis(const TpsPoint& pt);

// phi = -sum_i [e+_i (x) theta^{-i} + e-_i (x) theta^{+i}], assembled in
// coordinate components from the frames; requires p_i > 0.
MixedTensorAt phi(const TpsPoint& pt);

// Same tensor in closed form: phi(d/dq^i) = p_i d/dw - d/dq^i,
// phi(d/dp_i) = d/dp_i, phi(d/dw) = 0. Polynomial in p, valid at any p;
// coincides with phi() wherever p_i > 0. The standard bundle uses this, so
// charts with negative momenta (energy representation: p_1 = -T) work.
MixedTensorAt phi_closed_form(const TpsPoint& pt);

// Pointwise evaluators for (eta, xi, phi, G).
struct StructureBundle {
  int n;
  std::function<CovectorAt(const TpsPoint&)> eta;
  std::function<VectorAt(const TpsPoint&)> reeb;
  std::function<MixedTensorAt(const TpsPoint&)> phi;
  std::function<MetricAt(const TpsPoint&)> metric;
};

// The (eta, xi, phi_closed_form, G) bundle.
StructureBundle standard_bundle(int n);

struct IdentityResidual {
  std::string name;
  double max_residual = 0.0;
  bool pass = true;
};

struct StructureReport {
  std::vector<IdentityResidual> identities;
  int points = 0;
  double tol = 0.0;
  bool all_pass() const {
    for (const auto& r : identities)
      if (!r.pass) return false;
    return true;
  }
  double residual(const std::string& name) const;
};

// Max residuals over pts of: phi(xi) = 0; phi^2 = I - eta (x) xi;
// compatibility G(phi X, phi Y) = -[G(X,Y) - eta(X) eta(Y)]; associated
// (1/2) d(eta)(X,Y) = G(X, phi Y). d(eta) of the bundle's 1-form is taken by
// central differences, so gauge-transformed bundles are checked on the same
// footing. Failures are reported, not thrown.
StructureReport check_structure(const StructureBundle& bundle,
                                const std::vector<TpsPoint>& pts,
                                double tol = 1e-8);

// Numerical Lie derivative L_X G at pt (finite-difference transport).
Mat lie_metric(const VectorFieldDef& X,
               const std::function<MetricAt(const TpsPoint&)>& metric,
               const TpsPoint& pt);

// Max-norm of L_X G at pt.
double lie_metric_residual(const VectorFieldDef& X,
                           const std::function<MetricAt(const TpsPoint&)>& metric,
                           const TpsPoint& pt);

// L_xi G with the bundle's own Reeb field; xi is Killing, expect < 1e-6.
double killing_residual(const StructureBundle& bundle, const TpsPoint& pt);

// Christoffel symbols of a metric field by central differences of G.
// Gamma[mu](nu, lambda), relative step 1e-4.
std::vector<Mat> christoffels(const std::function<MetricAt(const TpsPoint&)>& metric,
                              const TpsPoint& pt, double rel_step = 1e-4);

// Residual |nabla xi + phi| with finite-difference Christoffels; < 1e-4.
double nabla_xi_residual(const StructureBundle& bundle, const TpsPoint& pt);

// Ricci tensor of gfr by nested central differences (n <= 2).
Mat ricci_numeric(const TpsPoint& pt);

// Residual of Ric = -(2n+2) eta (x) eta + 2 G; expect < 1e-3 (two levels of
// differencing). Throws UnsupportedDimension for n > 2.
double eta_einstein_residual(const TpsPoint& pt);

// The (n+1)^2 Killing fields of G: n^2 boosts p_i d/dp_j - q^j d/dq^i and
// 2n+1 translations {d/dw, d/dq^i, d/dp_i - q^i d/dw}.
std::vector<VectorFieldDef> isometry_generators(int n);

}  // namespace tps
