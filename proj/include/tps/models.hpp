#pragma once

#include <string>
#include <vector>

#include "tps/field.hpp"
#include "tps/point.hpp"

namespace tps {

// Concrete fluids: ideal gas and Van der Waals, with fundamental relations in
// several representations, homogeneity/Euler checks, critical point,
// spinodal, Maxwell construction and the Gibbs phase rule.

struct IdealGasModel {
  double c_v = 1.5;  // heat capacity in units of R
  double R = 1.0;
  double s0 = 0.0, u0 = 1.0, v0 = 1.0;

  // Molar s(u,v) = s0 + c_v ln(u/u0) + R ln(v/v0); concave for u,v > 0.
  Potential molar_entropy() const;
  // Extensive S(U,V,N) = N s(U/N, V/N); homogeneous of degree one.
  Potential extensive_entropy() const;
  // Energy representation u(s,v), the inverse fundamental relation.
  Potential energy_fundamental() const;
  double temperature(double u) const { return u / c_v; }
};

struct VdwModel {
  double a = 1.0, b = 1.0;  // attraction, co-volume
  double R = 1.0;
  double c = 1.5;           // ideal heat capacity in R units
  double s0 = 0.0, u0 = 1.0, v0 = 1.0, T0 = 1.0;

  double pressure(double v, double T) const;   // R T/(v-b) - a/v^2, v > b
  double dp_dv(double v, double T) const;
  double d2p_dv2(double v, double T) const;

  // Molar s(u,v) = s0 + c ln((u + a/v)/u0) + R ln((v-b)/v0).
  Potential molar_entropy() const;
  // Extensive S(U,V,N) = N s(U/N, V/N); homogeneous of degree one.
  Potential extensive_entropy() const;
  // u(s,v); T = (u + a/v)/c > 0 on the domain.
  Potential energy_fundamental() const;
  // Helmholtz-style potential of v at fixed T (T-only terms dropped):
  // f_T(v) = -R T ln((v-b)/v0) - a/v, so that -df/dv = p(v,T).
  Potential helmholtz_isotherm(double T) const;
};

struct CriticalPoint {
  double v_c, p_c, T_c;
};

// Solves dp/dv = d2p/dv2 = 0 by 2-d Newton; equals (3b, a/27b^2, 8a/27Rb)
// to 1e-8 relative.
CriticalPoint critical_point(const VdwModel& model);

// The two roots of dp/dv = 0 in (b, inf) for 0 < T < T_c, bracketing the
// locally unstable region. Throws NoSpinodal for T >= T_c.
std::pair<double, double> spinodal(const VdwModel& model, double T);

struct CoexistenceResult {
  double T;
  double p_coex;
  double v_liquid, v_gas;  // v_liquid < v_gas
  double equal_area_residual;  // Simpson quadrature of the area difference
  double mu_residual;          // f(v_l) - f(v_g) - p (v_g - v_l)
};

// Equal-area (Maxwell) construction on the sub-critical isotherm: damped
// Newton on (v_l, v_g) seeded outside the spinodal, with a bisection-on-
// pressure fallback. 0 < T < T_c.
CoexistenceResult maxwell_construction(const VdwModel& model, double T);

// Per-temperature coexistence results; p_coex is strictly increasing in T
// and the locus terminates at the critical point.
std::vector<CoexistenceResult> coexistence_locus(const VdwModel& model,
                                                 const std::vector<double>& T_grid);

// N = C - r + 2; throws DomainError when negative (unphysical).
int gibbs_phase_rule(int C, int r);

struct EulerReport {
  double homogeneity_residual;  // max over lambda in {0.5, 2, 7}
  double euler_residual;        // S - sum q^a p_a
  double mu_pt_residual;        // |w_muPT| = |S - beta U - beta p V + beta mu N|
};

// Homogeneity, Euler identity and the vanishing of the muPT potential for an
// extensive fundamental relation S(U,V,N).
EulerReport euler_gibbs_duhem_check(const Potential& extensive_entropy,
                                    const Vec& state);

struct EnsemblePotential {
  std::string name;
  double value;
  bool flagged;  // Legendre breakdown (non-convex region)
};

// {S, -beta F, -beta G, -beta Phi, w_muPT} by successive Legendre transforms
// of the extensive entropy; each transform's derivative contract is the
// corresponding set of equations of state.
std::vector<EnsemblePotential> ensemble_potentials(
    const Potential& extensive_entropy, const Vec& state);

}  // namespace tps
