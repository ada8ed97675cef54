#pragma once

#include <string>

#include "tps/dynamics.hpp"
#include "tps/field.hpp"
#include "tps/point.hpp"

namespace tps {

// The thermodynamic contact Hamiltonian H = -w: its flow contracts w and p
// exponentially while the q^a stay put, H(t) = H_0 e^{-t}, and the arc length
// of the flow measures the irreversible entropy produced.

double thermo_hamiltonian(const TpsPoint& pt);  // H = -w
ContactHamiltonian thermo_hamiltonian_field(int n);

// w(t) = w0 e^{-t}, p(t) = p0 e^{-t}, q constant; t >= 0.
TpsPoint analytic_flow(const TpsPoint& x0, double t);

enum class OrbitClass { Equilibrium, AdmissibleFluctuation, Inadmissible };

std::string to_string(OrbitClass c);

// Equilibrium iff |H0| <= tol; admissible iff H0 > tol (positive entropy
// production); inadmissible iff H0 < -tol.
OrbitClass classify(const TpsPoint& x0, double tol = 1e-10);

// |G(X_H, X_H) - H^2|; an exact identity, expect < 1e-10 at any point.
double norm_identity_residual(const TpsPoint& pt);

// Arc length of the flow: composite-Simpson quadrature of
// sqrt(G(X_H, X_H)) = |H0| e^{-t} over [0, t_f]. Equals H0 (1 - e^{-t_f})
// for admissible orbits; the t_f -> infinity limit is H0 itself.
double entropy_production(const TpsPoint& x0, double t_f, int panels = 10000);

struct ProcessResult {
  Trajectory trajectory;  // numeric RK4 orbit
  OrbitClass orbit_class;
  double h0 = 0.0;
  double entropy = 0.0;       // arc-length entropy production
  double q_drift_max = 0.0;   // max |q(t) - q(0)| along the numeric orbit
  double flow_residual = 0.0; // max |H_numeric(t) - H0 e^{-t}|
};

ProcessResult run_process(const TpsPoint& x0, double t_f, double dt = 1e-3,
                          double tol = 1e-10);

struct IntegrabilityReport {
  double q_drift_max = 0.0;        // first integrals q^a along the flow
  double involution_max = 0.0;     // |{q^a, q^b}_eta| over sampled points
  int rank = 0;                    // of {X_1, X_{q^a}} at x0
  bool completely_integrable = false;
};

// The system (T, D, eta, H, {1, q^a}) is completely integrable of Reeb type:
// n+1 first integrals, pairwise in involution, with independent fields.
IntegrabilityReport integrability_report(const TpsPoint& x0, double t_f);

// -(1/2) dx^T g dx: second variation of the entropy for a displacement dx of
// the extensive variables, g the induced (Hessian) equilibrium metric.
double fluctuation_entropy_link(const Mat& g_hessian, const Vec& dx);

// H at the phase-space point displaced from equilibrium in the all-extensive
// chart: intensives q0 pinned by the reservoir, extensives p0 -> p0 + dx,
// w = S(p0+dx) - q0.(p0+dx). Agrees with fluctuation_entropy_link to second
// order in |dx| when g_hessian is the Hessian of S at p0.
double displaced_hamiltonian(const Potential& extensive_entropy, const Vec& p0,
                             const Vec& dx);

}  // namespace tps
