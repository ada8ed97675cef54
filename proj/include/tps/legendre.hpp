#pragma once

#include <optional>
#include <vector>

#include "tps/field.hpp"
#include "tps/metric.hpp"
#include "tps/point.hpp"

namespace tps {

// Discrete Legendre transformations on points and potentials, Legendre
// submanifold embeddings, induced metrics, and the total-Legendre isometry.
//
// The point map exchanges the pairs in I:
//   w~ = w + sum_I q^i p_i,   q~^i = -p_i,   p~_i = q^i,
// which is the unique choice of the index-exchange pattern that preserves
// eta = dw + p dq exactly (it is a quarter-period of the flow generated by
// h_LT). Applying it twice sends (w, q_I, p_I) to (w, -q_I, -p_I); composed
// with legendre_point_inverse it is the identity exactly.

TpsPoint legendre_point(const TpsPoint& pt, const std::vector<int>& I);
TpsPoint legendre_point_inverse(const TpsPoint& pt, const std::vector<int>& I);

// Differential of the point map (constant-coefficient rows except dw~).
Mat legendre_point_jacobian(const TpsPoint& pt, const std::vector<int>& I);

// Index partition plus generating function: f depends on p_i for i in I and
// q^j for j in the complement J, packed into one base vector x with x_k = p_k
// when k is in I and x_k = q^k otherwise.
struct LegendreSpec {
  int n;
  std::vector<int> I;  // sorted, may be empty (all-q graph) or full (all-p)
  Potential f;

  LegendreSpec(int n, std::vector<int> I, Potential f);
  bool in_I(int k) const;
};

// Embedding equations: q^i = df/dp_i (i in I), p_j = -df/dq^j (j in J),
// w = f - sum_I p_i df/dp_i. Isotropic by construction: eta pulls back to 0.
TpsPoint embed(const LegendreSpec& spec, const Vec& x);

// (2n+1) x n differential of the embedding at x.
Mat embedding_jacobian(const LegendreSpec& spec, const Vec& x);

// max_k |eta(J e_k)| at the embedded point.
double isotropy_residual(const LegendreSpec& spec, const Vec& x);

// Mechanical pullback J^T G_FR J of the phase-space metric; the ground truth
// for induced equilibrium metrics. For an all-q graph this equals +Hess(f);
// for an all-p graph it equals -Hess(f).
Mat induced_metric(const LegendreSpec& spec, const Vec& x);

// Numeric conjugate of a potential over the index set I: solves the
// equations of state p_i = -dw/dq^i for q_I by damped Newton seeded from
// `guess`, and returns f(p_I, q_J) = w + sum_I q^i p_i with exact gradient
// and Hessian blocks. Throws LegendreBreakdown when the Hessian block
// degenerates along the solution path (the ensemble-inequivalence signal)
// and NewtonFailure when the solve does not converge.
Potential legendre_potential(const Potential& w, const std::vector<int>& I,
                             const Vec& guess);

// Coarse grid scan over a box for seeding when no point guess is available:
// each evaluation seeds Newton from the grid point with the smallest
// stationarity residual.
struct ScanBox {
  double lo, hi;
  int points_per_dim = 9;
};
Potential legendre_potential(const Potential& w, const std::vector<int>& I,
                             const ScanBox& box);

// Inverse of the potential-level transform: recovers w from f exactly
// (forward followed by inverse is the identity on the base).
Potential legendre_potential_inverse(const Potential& f, const std::vector<int>& I,
                                     const Vec& guess);

struct Pushforward {
  Vec components;  // in p-coordinates
  bool degenerate;
};

// psi_* X = -Hess(w) X, the differential of q -> p(q).
Pushforward pushforward(const Potential& w, const Vec& X, const Vec& x);

// Residual of the isometry identity between the Hessian metrics of the two
// ensembles: | psi^T Hess(f) psi + Hess(w) | at base point q, where f is the
// conjugate over I and psi = d(p_I, q_J)/dq. Vanishes for total I (the total
// Legendre transform is an isometry: Hess(f) is minus the inverse Hessian of
// w); order one for partial I. Note the mechanical pullbacks of G_FR via the
// two Arnold parametrizations of one submanifold are tautologically
// isometric for every partition; the ensemble statement checked here is the
// nontrivial one.
double legendre_isometry_residual(const Potential& w, const std::vector<int>& I,
                                  const Vec& q);

struct IsometryReport {
  double max_residual = 0.0;  // over points where the transform exists
  int evaluated = 0;
  std::vector<Vec> breakdown_points;
  std::vector<double> residuals;  // per evaluated grid point
};

// Total-Legendre isometry over a grid of base points; breakdown points
// (degenerate Hessian) are flagged, not fatal.
IsometryReport tlt_isometry_check(const Potential& w, const std::vector<Vec>& grid);

// Closed-form pullback of G_FR under the discrete Legendre map: the sign of
// the dq^i (.) dp_i term flips for i in I. Matches the numeric pullback via
// legendre_point_jacobian to rounding.
MetricAt plt_metric(const TpsPoint& pt, const std::vector<int>& I);

std::vector<int> full_index_set(int n);

}  // namespace tps
