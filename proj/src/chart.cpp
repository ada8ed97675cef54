#include "tps/chart.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "tps/errors.hpp"

namespace tps {

CovectorAt eta(const TpsPoint& pt) {
  Vec c = Vec::Zero(pt.dim());
  c(0) = 1.0;
  c.segment(1, pt.n()) = pt.p();
  return CovectorAt(pt, c);
}

double eta_eval(const TpsPoint& pt, const VectorAt& X) {
  detail::check_based(pt, X.components, "eta_eval: vector not based at pt");
  return X.components(0) + pt.p().dot(X.components.segment(1, pt.n()));
}

double deta_eval(const TpsPoint& pt, const VectorAt& X, const VectorAt& Y) {
  detail::check_based(pt, X.components, "deta_eval: X not based at pt");
  detail::check_based(pt, Y.components, "deta_eval: Y not based at pt");
  const int n = pt.n();
  const auto xq = X.components.segment(1, n), yq = Y.components.segment(1, n);
  const auto xp = X.components.segment(1 + n, n), yp = Y.components.segment(1 + n, n);
  return xp.dot(yq) - xq.dot(yp);
}

Mat deta_matrix(const TpsPoint& pt) {
  const int n = pt.n();
  Mat D = Mat::Zero(pt.dim(), pt.dim());
  for (int a = 0; a < n; ++a) {
    D(pt.p_index(a), TpsPoint::q_index(a)) = 1.0;
    D(TpsPoint::q_index(a), pt.p_index(a)) = -1.0;
  }
  return D;
}

VectorAt reeb(const TpsPoint& pt) {
  Vec c = Vec::Zero(pt.dim());
  c(0) = 1.0;
  return VectorAt(pt, c);
}

std::vector<VectorAt> heisenberg_basis(const TpsPoint& pt) {
  const int n = pt.n();
  std::vector<VectorAt> basis;
  basis.reserve(pt.dim());
  basis.push_back(reeb(pt));
  for (int i = 0; i < n; ++i) {
    Vec c = Vec::Zero(pt.dim());
    c(pt.p_index(i)) = 1.0;  // P^i = d/dp_i
    basis.emplace_back(pt, c);
  }
  for (int i = 0; i < n; ++i) {
    Vec c = Vec::Zero(pt.dim());
    c(0) = pt.p(i);  // Q_i = p_i d/dw - d/dq^i
    c(TpsPoint::q_index(i)) = -1.0;
    basis.emplace_back(pt, c);
  }
  return basis;
}

double fd_step(const TpsPoint& pt, double rel) {
  return rel * std::max(1.0, pt.norm());
}

Mat field_jacobian(const VectorFieldDef& F, const TpsPoint& pt, double step) {
  const int dim = pt.dim();
  const double h = step > 0.0 ? step : fd_step(pt);
  Mat J(dim, dim);
  const Vec x = pt.coords();
  for (int nu = 0; nu < dim; ++nu) {
    Vec xp = x, xm = x;
    xp(nu) += h;
    xm(nu) -= h;
    const Vec fp = F(TpsPoint::from_coords(xp)).components;
    const Vec fm = F(TpsPoint::from_coords(xm)).components;
    if (!fp.allFinite() || !fm.allFinite())
      throw NumericError("field_jacobian: non-finite field values near point");
    J.col(nu) = (fp - fm) / (2.0 * h);
  }
  return J;
}

VectorAt lie_bracket(const VectorFieldDef& F, const VectorFieldDef& G,
                     const TpsPoint& pt) {
  const Mat JF = field_jacobian(F, pt);
  const Mat JG = field_jacobian(G, pt);
  const Vec f = F(pt).components, g = G(pt).components;
  return VectorAt(pt, JG * f - JF * g);
}

namespace {

// Value of a k-form on k frame vectors, with the form given as a sum of
// wedge monomials in basis covectors. Monomials are index lists; evaluation
// is the determinant of the sampled components.
struct Monomial {
  std::vector<int> indices;  // covector slots, e.g. {p_1, q_1}
  double coeff;
};

double eval_monomial(const Monomial& m, const std::vector<Vec>& frame) {
  const int k = static_cast<int>(m.indices.size());
  Mat A(k, k);
  for (int r = 0; r < k; ++r)
    for (int c = 0; c < k; ++c) A(r, c) = frame[c](m.indices[r]);
  return m.coeff * A.determinant();
}

}  // namespace

double volume_nondegeneracy(const TpsPoint& pt) {
  const int n = pt.n();
  if (n > 3)
    throw UnsupportedDimension("volume_nondegeneracy: supported for n <= 3");
  const int dim = pt.dim();

  // eta ^ (d eta)^n expanded into wedge monomials. d(eta) = sum dp_a ^ dq^a,
  // so (d eta)^n = n! dp_1^dq^1^...^dp_n^dq^n and the only surviving eta term
  // against the complement is its dw (monomials with repeated q-indices die)
  // plus the p_a dq^a pieces. Expand the product exactly.
  std::vector<Monomial> one_form;
  one_form.push_back({{0}, 1.0});
  for (int a = 0; a < n; ++a) one_form.push_back({{TpsPoint::q_index(a)}, pt.p(a)});

  // Multinomial expansion of (sum_a dp_a ^ dq^a)^n: n! per choice of distinct
  // a-multiset; only the all-distinct term survives, with multiplicity n!.
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  std::vector<Monomial> terms;
  do {
    for (const auto& base : one_form) {
      Monomial m = base;
      for (int a = 0; a < n; ++a) {
        m.indices.push_back(pt.p_index(perm[a]));
        m.indices.push_back(TpsPoint::q_index(perm[a]));
      }
      // A repeated covector index kills the monomial.
      std::vector<int> sorted = m.indices;
      std::sort(sorted.begin(), sorted.end());
      if (std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end())
        terms.push_back(std::move(m));
    }
  } while (std::next_permutation(perm.begin(), perm.end()));

  // Ordered orientation frame (d/dw, d/dp_1, d/dq^1, ..., d/dp_n, d/dq^n).
  std::vector<Vec> frame;
  frame.reserve(dim);
  {
    Vec e = Vec::Zero(dim);
    e(0) = 1.0;
    frame.push_back(e);
  }
  for (int a = 0; a < n; ++a) {
    Vec ep = Vec::Zero(dim), eq = Vec::Zero(dim);
    ep(pt.p_index(a)) = 1.0;
    eq(TpsPoint::q_index(a)) = 1.0;
    frame.push_back(ep);
    frame.push_back(eq);
  }

  double value = 0.0;
  for (const auto& m : terms) value += eval_monomial(m, frame);
  return value;
}

}  // namespace tps
