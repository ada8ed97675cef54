#include "tps/legendre.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "tps/chart.hpp"
#include "tps/errors.hpp"

namespace tps {

namespace {

void validate_index_set(const std::vector<int>& I, int n) {
  for (size_t k = 0; k < I.size(); ++k) {
    if (I[k] < 0 || I[k] >= n)
      throw DimensionMismatch("legendre: index out of range");
    if (k > 0 && I[k] <= I[k - 1])
      throw DimensionMismatch("legendre: index set must be sorted and unique");
  }
}

std::vector<int> complement(const std::vector<int>& I, int n) {
  std::vector<int> J;
  size_t k = 0;
  for (int a = 0; a < n; ++a) {
    if (k < I.size() && I[k] == a)
      ++k;
    else
      J.push_back(a);
  }
  return J;
}

// Scale-aware degeneracy test on the I-block of the Hessian.
bool hessian_degenerate(const Mat& HII) {
  const int m = static_cast<int>(HII.rows());
  const double scale = std::max(1.0, HII.cwiseAbs().maxCoeff());
  return std::abs(HII.determinant()) < 1e-10 * std::pow(scale, m);
}

}  // namespace

std::vector<int> full_index_set(int n) {
  std::vector<int> I(n);
  for (int a = 0; a < n; ++a) I[a] = a;
  return I;
}

TpsPoint legendre_point(const TpsPoint& pt, const std::vector<int>& I) {
  validate_index_set(I, pt.n());
  double w = pt.w();
  Vec q = pt.q(), p = pt.p();
  for (int i : I) {
    w += pt.q(i) * pt.p(i);
    q(i) = -pt.p(i);
    p(i) = pt.q(i);
  }
  return TpsPoint(w, q, p);
}

TpsPoint legendre_point_inverse(const TpsPoint& pt, const std::vector<int>& I) {
  validate_index_set(I, pt.n());
  double w = pt.w();
  Vec q = pt.q(), p = pt.p();
  for (int i : I) {
    w += pt.q(i) * pt.p(i);
    q(i) = pt.p(i);
    p(i) = -pt.q(i);
  }
  return TpsPoint(w, q, p);
}

Mat legendre_point_jacobian(const TpsPoint& pt, const std::vector<int>& I) {
  validate_index_set(I, pt.n());
  const int n = pt.n(), dim = pt.dim();
  Mat J = Mat::Identity(dim, dim);
  for (int i : I) {
    const int qi = TpsPoint::q_index(i), pi = TpsPoint::p_index(i, n);
    J(0, qi) = pt.p(i);
    J(0, pi) = pt.q(i);
    J(qi, qi) = 0.0;
    J(qi, pi) = -1.0;
    J(pi, pi) = 0.0;
    J(pi, qi) = 1.0;
  }
  return J;
}

LegendreSpec::LegendreSpec(int n_, std::vector<int> I_, Potential f_)
    : n(n_), I(std::move(I_)), f(std::move(f_)) {
  validate_index_set(I, n);
  if (f.arity() != n)
    throw DimensionMismatch("LegendreSpec: potential arity must equal n");
}

bool LegendreSpec::in_I(int k) const {
  return std::binary_search(I.begin(), I.end(), k);
}

TpsPoint embed(const LegendreSpec& spec, const Vec& x) {
  if (x.size() != spec.n) throw DimensionMismatch("embed: base dimension");
  const FieldEval f = spec.f.eval(x);
  const int n = spec.n;
  Vec q(n), p(n);
  double w = f.value;
  for (int k = 0; k < n; ++k) {
    if (spec.in_I(k)) {
      p(k) = x(k);
      q(k) = f.gradient(k);      // q^i = df/dp_i
      w -= x(k) * f.gradient(k); // w = f - p_i df/dp_i
    } else {
      q(k) = x(k);
      p(k) = -f.gradient(k);     // p_j = -df/dq^j
    }
  }
  return TpsPoint(w, q, p);
}

Mat embedding_jacobian(const LegendreSpec& spec, const Vec& x) {
  const FieldEval f = spec.f.eval(x);
  const int n = spec.n, dim = 2 * n + 1;
  Mat J = Mat::Zero(dim, n);

  // w-row: d/dx_k [ f - sum_I x_i g_i ]
  for (int k = 0; k < n; ++k) {
    double dw = spec.in_I(k) ? 0.0 : f.gradient(k);
    for (int i : spec.I) dw -= x(i) * f.hessian(i, k);
    J(0, k) = dw;
  }
  for (int k = 0; k < n; ++k) {
    for (int a = 0; a < n; ++a) {
      if (spec.in_I(a)) {
        J(TpsPoint::q_index(a), k) = f.hessian(a, k);
        J(TpsPoint::p_index(a, n), k) = (a == k) ? 1.0 : 0.0;
      } else {
        J(TpsPoint::q_index(a), k) = (a == k) ? 1.0 : 0.0;
        J(TpsPoint::p_index(a, n), k) = -f.hessian(a, k);
      }
    }
  }
  return J;
}

double isotropy_residual(const LegendreSpec& spec, const Vec& x) {
  const TpsPoint pt = embed(spec, x);
  const Mat J = embedding_jacobian(spec, x);
  return (eta(pt).components.transpose() * J).cwiseAbs().maxCoeff();
}

Mat induced_metric(const LegendreSpec& spec, const Vec& x) {
  const TpsPoint pt = embed(spec, x);
  const Mat J = embedding_jacobian(spec, x);
  return J.transpose() * gfr(pt).matrix * J;
}

namespace {

// Solve p_i = -dw/dq^i for q_I at fixed q_J, damped Newton.
Vec solve_equations_of_state(const Potential& w, const std::vector<int>& I,
                             const Vec& pI, const Vec& qJ,
                             const std::vector<int>& J, const Vec& seed) {
  const int n = w.arity();
  const int m = static_cast<int>(I.size());
  Vec q(n);
  for (size_t j = 0; j < J.size(); ++j) q(J[j]) = qJ(j);
  Vec qI = seed;

  auto assemble = [&](const Vec& qi) {
    Vec full = q;
    for (int k = 0; k < m; ++k) full(I[k]) = qi(k);
    return full;
  };
  auto residual = [&](const Vec& qi) -> Vec {
    const Vec g = w.gradient(assemble(qi));
    Vec r(m);
    for (int k = 0; k < m; ++k) r(k) = pI(k) + g(I[k]);
    return r;
  };

  Vec r = residual(qI);
  const double tol = 1e-12 * std::max(1.0, pI.cwiseAbs().maxCoeff());
  for (int iter = 0; iter < 100; ++iter) {
    if (!r.allFinite())
      throw NewtonFailure("legendre_potential: non-finite residual", 0.0);
    if (r.cwiseAbs().maxCoeff() < tol) return qI;

    const Mat H = w.hessian(assemble(qI));
    Mat HII(m, m);
    for (int a = 0; a < m; ++a)
      for (int b = 0; b < m; ++b) HII(a, b) = H(I[a], I[b]);
    if (hessian_degenerate(HII))
      throw LegendreBreakdown(
          "legendre_potential: degenerate Hessian along solution path");

    const Vec delta = HII.fullPivLu().solve(-r);
    double t = 1.0;
    const double r0 = r.squaredNorm();
    while (t > 1e-6) {
      const Vec trial = qI + t * delta;
      Vec rt;
      bool ok = true;
      try {
        rt = residual(trial);
        ok = rt.allFinite();
      } catch (const std::exception&) {
        ok = false;
      }
      if (ok && rt.squaredNorm() <= (1.0 - 1e-4 * t) * r0) {
        qI = trial;
        r = rt;
        break;
      }
      t *= 0.5;
    }
    if (t <= 1e-6) {
      std::ostringstream os;
      os << "legendre_potential: Newton stalled, residual "
         << r.cwiseAbs().maxCoeff();
      throw NewtonFailure(os.str(), r.cwiseAbs().maxCoeff());
    }
  }
  throw NewtonFailure("legendre_potential: Newton did not converge",
                      r.cwiseAbs().maxCoeff());
}

}  // namespace

Potential legendre_potential(const Potential& w, const std::vector<int>& I,
                             const Vec& guess) {
  const int n = w.arity();
  validate_index_set(I, n);
  if (guess.size() != static_cast<Eigen::Index>(I.size()))
    throw DimensionMismatch("legendre_potential: guess length must equal |I|");
  const std::vector<int> J = complement(I, n);
  const int m = static_cast<int>(I.size());

  auto eval = [w, I, J, guess, n, m](const Vec& x) -> FieldEval {
    Vec pI(m), qJ(static_cast<int>(J.size()));
    for (int k = 0; k < m; ++k) pI(k) = x(I[k]);
    for (size_t j = 0; j < J.size(); ++j) qJ(static_cast<int>(j)) = x(J[j]);

    const Vec qI = solve_equations_of_state(w, I, pI, qJ, J, guess);
    Vec q(n);
    for (int k = 0; k < m; ++k) q(I[k]) = qI(k);
    for (size_t j = 0; j < J.size(); ++j) q(J[j]) = qJ(static_cast<int>(j));

    const FieldEval we = w.eval(q);
    Mat HII(m, m), HIJ(m, static_cast<int>(J.size()));
    for (int a = 0; a < m; ++a)
      for (int b = 0; b < m; ++b) HII(a, b) = we.hessian(I[a], I[b]);
    for (int a = 0; a < m; ++a)
      for (size_t b = 0; b < J.size(); ++b)
        HIJ(a, static_cast<int>(b)) = we.hessian(I[a], J[b]);
    if (hessian_degenerate(HII))
      throw LegendreBreakdown("legendre_potential: degenerate Hessian at solution");
    const Mat HII_inv = HII.fullPivLu().inverse();

    FieldEval out;
    out.value = we.value;
    for (int k = 0; k < m; ++k) out.value += q(I[k]) * pI(k);

    out.gradient = Vec(n);
    for (int k = 0; k < m; ++k) out.gradient(I[k]) = q(I[k]);  // df/dp_i = q^i
    for (size_t j = 0; j < J.size(); ++j)
      out.gradient(J[j]) = we.gradient(J[j]);  // df/dq^j = dw/dq^j

    // Hessian blocks: F_II = -HII^-1, F_IJ = -HII^-1 HIJ,
    // F_JJ = HJJ - HJI HII^-1 HIJ (Schur complement).
    out.hessian = Mat::Zero(n, n);
    const Mat FII = -HII_inv;
    const Mat FIJ = -HII_inv * HIJ;
    for (int a = 0; a < m; ++a)
      for (int b = 0; b < m; ++b) out.hessian(I[a], I[b]) = FII(a, b);
    for (int a = 0; a < m; ++a)
      for (size_t b = 0; b < J.size(); ++b) {
        out.hessian(I[a], J[b]) = FIJ(a, static_cast<int>(b));
        out.hessian(J[b], I[a]) = FIJ(a, static_cast<int>(b));
      }
    const Mat schur = HIJ.transpose() * HII_inv * HIJ;
    for (size_t a = 0; a < J.size(); ++a)
      for (size_t b = 0; b < J.size(); ++b)
        out.hessian(J[a], J[b]) =
            we.hessian(J[a], J[b]) -
            schur(static_cast<int>(a), static_cast<int>(b));
    return out;
  };
  return Potential(n, eval);
}

Potential legendre_potential(const Potential& w, const std::vector<int>& I,
                             const ScanBox& box) {
  const int n = w.arity();
  validate_index_set(I, n);
  if (box.points_per_dim < 2 || box.hi <= box.lo)
    throw DomainError("legendre_potential: bad scan box");
  const std::vector<int> J = complement(I, n);
  const int m = static_cast<int>(I.size());

  auto eval = [w, I, J, box, n, m](const Vec& x) -> FieldEval {
    // Scan the box for the seed with the smallest stationarity residual,
    // then delegate to the Newton-backed conjugate.
    Vec q(n);
    for (size_t j = 0; j < J.size(); ++j) q(J[j]) = x(J[j]);
    Vec best = Vec::Constant(m, 0.5 * (box.lo + box.hi));
    double best_res = std::numeric_limits<double>::infinity();
    std::vector<int> idx(m, 0);
    while (true) {
      Vec cand(m);
      for (int k = 0; k < m; ++k)
        cand(k) = box.lo + (box.hi - box.lo) * idx[k] / (box.points_per_dim - 1);
      for (int k = 0; k < m; ++k) q(I[k]) = cand(k);
      double res = std::numeric_limits<double>::infinity();
      const Vec g = w.eval(q).gradient;
      if (g.allFinite()) {
        res = 0.0;
        for (int k = 0; k < m; ++k)
          res = std::max(res, std::abs(x(I[k]) + g(I[k])));
      }
      if (res < best_res) {
        best_res = res;
        best = cand;
      }
      int k = 0;
      for (; k < m; ++k) {
        if (++idx[k] < box.points_per_dim) break;
        idx[k] = 0;
      }
      if (k == m) break;
    }
    if (!std::isfinite(best_res))
      throw NewtonFailure("legendre_potential: scan found no finite seed",
                          best_res);
    return legendre_potential(w, I, best).eval(x);
  };
  return Potential(n, eval);
}

Potential legendre_potential_inverse(const Potential& f, const std::vector<int>& I,
                                     const Vec& guess) {
  const int n = f.arity();
  validate_index_set(I, n);
  const int m = static_cast<int>(I.size());

  // Inverse rule: given f(p_I, q_J), recover w(q) by solving q^i = df/dp_i
  // for p_I and setting w = f - sum_I q^i p_i. Gradient/Hessian by the same
  // block algebra with the roles of the I-slots exchanged.
  auto eval = [f, I, guess, n, m](const Vec& q) -> FieldEval {
    // Solve r(pI) = f_{p_I}(pI, qJ) - q_I = 0.
    Vec x(n);
    for (int k = 0; k < n; ++k) x(k) = q(k);
    Vec pI = guess;
    auto setx = [&](const Vec& pi) {
      Vec y = x;
      for (int k = 0; k < m; ++k) y(I[k]) = pi(k);
      return y;
    };
    Vec r(m);
    auto residual = [&](const Vec& pi) {
      const Vec g = f.gradient(setx(pi));
      Vec rr(m);
      for (int k = 0; k < m; ++k) rr(k) = g(I[k]) - q(I[k]);
      return rr;
    };
    r = residual(pI);
    const double tol = 1e-12 * std::max(1.0, q.cwiseAbs().maxCoeff());
    for (int iter = 0;; ++iter) {
      if (r.cwiseAbs().maxCoeff() < tol) break;
      if (iter >= 100)
        throw NewtonFailure("legendre_potential_inverse: no convergence",
                            r.cwiseAbs().maxCoeff());
      const Mat H = f.hessian(setx(pI));
      Mat HII(m, m);
      for (int a = 0; a < m; ++a)
        for (int b = 0; b < m; ++b) HII(a, b) = H(I[a], I[b]);
      if (hessian_degenerate(HII))
        throw LegendreBreakdown("legendre_potential_inverse: degenerate block");
      pI += HII.fullPivLu().solve(-r);
      r = residual(pI);
    }

    const Vec y = setx(pI);
    const FieldEval fe = f.eval(y);
    FieldEval out;
    out.value = fe.value;
    for (int k = 0; k < m; ++k) out.value -= q(I[k]) * pI(k);

    // dw/dq^i = -p_i on the I slots; dw/dq^j = df/dq^j elsewhere.
    out.gradient = fe.gradient;
    for (int k = 0; k < m; ++k) out.gradient(I[k]) = -pI(k);

    // Same Schur-block pattern as the forward transform.
    Mat HII(m, m);
    for (int a = 0; a < m; ++a)
      for (int b = 0; b < m; ++b) HII(a, b) = fe.hessian(I[a], I[b]);
    const Mat HII_inv = HII.fullPivLu().inverse();
    std::vector<int> J;
    for (int k = 0; k < n; ++k)
      if (!std::binary_search(I.begin(), I.end(), k)) J.push_back(k);
    Mat HIJ(m, static_cast<int>(J.size()));
    for (int a = 0; a < m; ++a)
      for (size_t b = 0; b < J.size(); ++b)
        HIJ(a, static_cast<int>(b)) = fe.hessian(I[a], J[b]);

    out.hessian = Mat::Zero(n, n);
    const Mat FII = -HII_inv;
    const Mat FIJ = -HII_inv * HIJ;
    for (int a = 0; a < m; ++a)
      for (int b = 0; b < m; ++b) out.hessian(I[a], I[b]) = FII(a, b);
    for (int a = 0; a < m; ++a)
      for (size_t b = 0; b < J.size(); ++b) {
        out.hessian(I[a], J[b]) = FIJ(a, static_cast<int>(b));
        out.hessian(J[b], I[a]) = FIJ(a, static_cast<int>(b));
      }
    const Mat schur = HIJ.transpose() * HII_inv * HIJ;
    for (size_t a = 0; a < J.size(); ++a)
      for (size_t b = 0; b < J.size(); ++b)
        out.hessian(J[a], J[b]) =
            fe.hessian(J[a], J[b]) -
            schur(static_cast<int>(a), static_cast<int>(b));
    return out;
  };
  return Potential(n, eval);
}

Pushforward pushforward(const Potential& w, const Vec& X, const Vec& x) {
  const Mat H = w.hessian(x);
  Pushforward out{-H * X, hessian_degenerate(H)};
  return out;
}

double legendre_isometry_residual(const Potential& w, const std::vector<int>& I,
                                  const Vec& q) {
  const int n = w.arity();
  validate_index_set(I, n);
  const FieldEval we = w.eval(q);
  const Vec p = -we.gradient;

  // Hessian metrics of the two ensembles: g~ = Hess(f) at the mapped base
  // point, pushed back with psi_* = d(p_I, q_J)/dq, against -Hess(w). For a
  // total exchange Hess(f) = -Hess(w)^-1 and the residual vanishes (the
  // total Legendre transform is an isometry); for a partial exchange the
  // residual is order one.
  Vec guess(static_cast<int>(I.size()));
  Vec x = q;
  for (size_t k = 0; k < I.size(); ++k) {
    guess(static_cast<int>(k)) = q(I[k]);
    x(I[k]) = p(I[k]);
  }
  const Potential f = legendre_potential(w, I, guess);
  const Mat F = f.hessian(x);

  Mat psi = Mat::Identity(n, n);
  for (int i : I) psi.row(i) = -we.hessian.row(i);

  return (psi.transpose() * F * psi + we.hessian).cwiseAbs().maxCoeff();
}

IsometryReport tlt_isometry_check(const Potential& w, const std::vector<Vec>& grid) {
  IsometryReport report;
  const std::vector<int> I = full_index_set(w.arity());
  for (const Vec& q : grid) {
    try {
      const double r = legendre_isometry_residual(w, I, q);
      report.residuals.push_back(r);
      report.max_residual = std::max(report.max_residual, r);
      ++report.evaluated;
    } catch (const LegendreBreakdown&) {
      report.breakdown_points.push_back(q);
    }
  }
  return report;
}

MetricAt plt_metric(const TpsPoint& pt, const std::vector<int>& I) {
  validate_index_set(I, pt.n());
  Mat G = gfr(pt).matrix;
  for (int i : I) {
    const int qi = TpsPoint::q_index(i), pi = TpsPoint::p_index(i, pt.n());
    G(qi, pi) += 1.0;  // -1/2 -> +1/2
    G(pi, qi) += 1.0;
  }
  return MetricAt{pt, G};
}

}  // namespace tps
