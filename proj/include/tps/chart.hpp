#pragma once

#include <vector>

#include "tps/field.hpp"
#include "tps/point.hpp"

namespace tps {

// Darboux-chart building blocks: the Gibbs 1-form eta = dw + p_a dq^a, its
// exterior derivative d(eta) = sum_a dp_a ^ dq^a (this orientation is the
// library-wide convention), the Reeb field xi = d/dw, the Heisenberg frame,
// and numerical vector-field machinery.

// Components of eta at a point: (1, p_1..p_n, 0..0).
CovectorAt eta(const TpsPoint& pt);

// eta evaluated on a tangent vector: X_w + sum_a p_a X_{q^a}.
double eta_eval(const TpsPoint& pt, const VectorAt& X);

// d(eta)(X, Y) = sum_a (X_{p_a} Y_{q^a} - X_{q^a} Y_{p_a}).
double deta_eval(const TpsPoint& pt, const VectorAt& X, const VectorAt& Y);

// Antisymmetric matrix D with D(mu,nu) = d(eta)(d_mu, d_nu).
Mat deta_matrix(const TpsPoint& pt);

// Reeb vector field d/dw: eta(xi) = 1, d(eta)(xi, .) = 0.
VectorAt reeb(const TpsPoint& pt);

// {xi, P^i = d/dp_i, Q_i = p_i d/dw - d/dq^i}; returned in that order.
std::vector<VectorAt> heisenberg_basis(const TpsPoint& pt);

// Central-finite-difference Lie bracket [F,G] at pt. Step size scales with
// the point magnitude; flows of interest visit exponentially small coordinates.
VectorAt lie_bracket(const VectorFieldDef& F, const VectorFieldDef& G,
                     const TpsPoint& pt);

// eta ^ (d eta)^n evaluated on the ordered frame (d/dw, d/dp_1, d/dq^1, ...,
// d/dp_n, d/dq^n). Nonzero everywhere; |value| = n!. Supported for n <= 3
// (full antisymmetrization is combinatorial).
double volume_nondegeneracy(const TpsPoint& pt);

// Jacobian d(F^mu)/d(x^nu) of a vector field by central differences.
Mat field_jacobian(const VectorFieldDef& F, const TpsPoint& pt, double step = 0.0);

// Step used by the finite-difference stencils: rel * max(1, |pt|).
double fd_step(const TpsPoint& pt, double rel = 1e-5);

}  // namespace tps
