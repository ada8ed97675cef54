#pragma once

#include <vector>

#include "tps/field.hpp"
#include "tps/metric.hpp"

namespace tps {

// Conformal rescaling eta -> Omega * eta of the para-contact metric
// structure, with the induced nontrivial transformations of xi, phi and G.
// Constant Omega is a D-homothetic deformation.

struct GaugeFactor {
  ScalarField omega;  // nonvanishing on the working domain
};

// Transformed bundle:
//   eta~ = Omega eta
//   xi~  = (xi + zeta) / Omega,  zeta = -(1/2 Omega) phi[G^-1(dOmega, .)]
//   phi~ = phi + (1/2 Omega) [G^-1(dOmega,.) - xi(Omega) xi] (x) eta
//   G~   = Omega (G - eta (x) z - z (x) eta)
//        + Omega (Omega - 1 + |zeta|^2) eta (x) eta,   z = G(zeta, .)
// |zeta|^2 is taken with the pre-transformation metric. The output passes
// check_structure wherever the input does.
StructureBundle gauge_transform(const StructureBundle& bundle,
                                const GaugeFactor& omega);

struct RepresentationChangeReport {
  int grid_points = 0;
  // |xi~ - d/dS| after the Omega = -1/T transform
  double max_xi_residual = 0.0;
  // G~ against the closed-form entropy-representation metric
  double max_metric_residual = 0.0;
  // |g^S + (1/T) g^U| on the equilibrium manifold (Weinhold/Ruppeiner scaling)
  double max_conformal_residual = 0.0;
  StructureReport structure;  // para-contact identities of the gauge output
};

// Energy <-> entropy representation change for a fundamental relation U(S,V):
// builds eta^U = dU - T dS + p dV via {w,q1,q2,p1,p2} = {U,S,V,-T,p}, applies
// the gauge transform with Omega = -1/T, and verifies xi^S = d/dS, the
// closed-form G^S, and the conformal relation g^S = -(1/T) g^U between the
// induced equilibrium metrics. Requires T > t_min on the grid.
RepresentationChangeReport representation_change_demo(
    const Potential& energy_fundamental,  // U(S,V), arity 2
    const std::vector<Vec>& sv_grid,      // (S,V) sample points
    double t_min = 1e-3, double tol = 1e-8);

}  // namespace tps
