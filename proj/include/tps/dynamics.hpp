#pragma once

#include <vector>

#include "tps/field.hpp"
#include "tps/legendre.hpp"
#include "tps/point.hpp"

namespace tps {

// Contact Hamiltonian machinery: X_h, Jacobi brackets, Lie-derivative
// identities, the Mrugala vanishing families, the Legendre generator h_LT,
// and a fixed-step RK4 flow integrator.

using ContactHamiltonian = ScalarField;

// X_h = (h - p_a dh/dp_a) d/dw + (dh/dp_a) d/dq^a + (p_a dh/dw - dh/dq^a) d/dp_a.
// Satisfies eta(X_h) = h.
VectorAt ham_vf(const ContactHamiltonian& h, const TpsPoint& pt);

// Same field assembled as h xi + Q_i(h) P^i - P^i(h) Q_i; agrees with ham_vf
// to rounding.
VectorAt heisenberg_form_vf(const ContactHamiltonian& h, const TpsPoint& pt);

// The Hamiltonian field as a VectorFieldDef, for bracket/Lie machinery.
VectorFieldDef ham_field(const ContactHamiltonian& h);

// {f, g}_eta = eta([X_f, X_g]) via the numerical Lie bracket. The closed
// coordinate form is the test oracle, not the implementation.
double jacobi_bracket(const ContactHamiltonian& f, const ContactHamiltonian& g,
                      const TpsPoint& pt);

// Max-norm of L_{X_h} eta - xi(h) eta at pt, with the field differentiated
// by central differences; expect < 1e-6.
double lie_eta_residual(const ContactHamiltonian& h, const TpsPoint& pt);

// Families vanishing on the Legendre submanifold generated by f(p_I, q_J):
// h^i = q^i - df/dp_i (i in I), h_j = p_j + df/dq^j (j in J),
// h^0 = w - f + p_i df/dp_i. Returned in that order, h^0 last. These fields
// carry exact values and first derivatives (their Hessians would need third
// derivatives of f); flows, brackets and Lie residuals use only those.
std::vector<ContactHamiltonian> mrugala_hamiltonians(const LegendreSpec& spec);

// h_LT = (1/2) sum_a [(q^a)^2 + (p_a)^2]; a basic function, so its flow is a
// strict contactomorphism; discrete Legendre maps are quarter periods.
ContactHamiltonian lt_generator(int n);

// Numerical L_{X_LT} G_FR at pt; equals + sum_i (dq^i (x) dq^i - dp_i (x) dp_i)
// with our orientation of d(eta). Returns the max residual against that form.
double lie_metric_lt_residual(const TpsPoint& pt);

struct Trajectory {
  std::vector<double> t;
  std::vector<TpsPoint> x;
  std::vector<double> h;  // Hamiltonian along the orbit
  size_t size() const { return t.size(); }
};

// Raised on blow-up; carries the samples accumulated so far.
struct FlowDivergence : std::runtime_error {
  explicit FlowDivergence(Trajectory partial)
      : std::runtime_error("integrate: trajectory norm exceeded guard"),
        partial(std::move(partial)) {}
  Trajectory partial;
};

// Classical fixed-step RK4 for the contact flow equations
//   dw/dt = h - p dh/dp,  dq/dt = dh/dp,  dp/dt = p dh/dw - dh/dq.
// Global error O(dt^4); guard at |x| > 1e12.
Trajectory integrate(const ContactHamiltonian& h, const TpsPoint& x0, double t_f,
                     double dt);

}  // namespace tps
