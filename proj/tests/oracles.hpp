#pragma once

// Test-side oracles, kept independent of the implementation paths they
// check: finite-difference derivatives, a bitmask exterior-algebra evaluator
// for the volume form, a metric-second-derivative route to the Ricci tensor,
// and a bisection+quadrature Maxwell construction.

#include <cmath>
#include <cstdint>
#include <functional>
#include <map>
#include <vector>

#include "tps/field.hpp"
#include "tps/models.hpp"
#include "tps/point.hpp"

namespace oracles {

using tps::Mat;
using tps::Vec;

// Central-difference gradient of a scalar function of packed coordinates.
inline Vec fd_gradient(const std::function<double(const Vec&)>& f, const Vec& x,
                       double h = 1e-6) {
  Vec g(x.size());
  for (int i = 0; i < x.size(); ++i) {
    Vec xp = x, xm = x;
    xp(i) += h;
    xm(i) -= h;
    g(i) = (f(xp) - f(xm)) / (2.0 * h);
  }
  return g;
}

inline Mat fd_hessian(const std::function<double(const Vec&)>& f, const Vec& x,
                      double h = 1e-4) {
  const int n = static_cast<int>(x.size());
  Mat H(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j <= i; ++j) {
      Vec xpp = x, xpm = x, xmp = x, xmm = x;
      xpp(i) += h;
      xpp(j) += h;
      xpm(i) += h;
      xpm(j) -= h;
      xmp(i) -= h;
      xmp(j) += h;
      xmm(i) -= h;
      xmm(j) -= h;
      H(i, j) = (f(xpp) - f(xpm) - f(xmp) + f(xmm)) / (4.0 * h * h);
      H(j, i) = H(i, j);
    }
  return H;
}

// ---- exterior algebra over bitmask monomials --------------------------------
// A k-form is a map from an index bitmask (ascending basis order) to a
// coefficient. Wedge handles the interleave sign.

using Form = std::map<std::uint32_t, double>;

inline int interleave_sign(std::uint32_t a, std::uint32_t b) {
  // Sign of sorting the concatenation (ascending a, ascending b).
  int inversions = 0;
  for (int i = 0; i < 32; ++i)
    if (b & (1u << i)) {
      std::uint32_t higher = a >> (i + 1);
      while (higher) {
        inversions += higher & 1u;
        higher >>= 1;
      }
    }
  return inversions % 2 ? -1 : 1;
}

inline Form wedge(const Form& A, const Form& B) {
  Form out;
  for (const auto& [ma, ca] : A)
    for (const auto& [mb, cb] : B) {
      if (ma & mb) continue;
      out[ma | mb] += interleave_sign(ma, mb) * ca * cb;
    }
  return out;
}

// eta ^ (d eta)^n evaluated on the frame (d/dw, d/dp_1, d/dq^1, ...): the
// coefficient of the full monomial, times the permutation sign from the
// ascending basis order (w, q..., p...) to the orientation frame order.
inline double volume_form_oracle(const tps::TpsPoint& pt) {
  const int n = pt.n();
  Form eta;
  eta[1u << 0] = 1.0;
  for (int a = 0; a < n; ++a) eta[1u << tps::TpsPoint::q_index(a)] = pt.p(a);

  Form deta;  // sum dp_a ^ dq^a; ascending order is (q_a, p_a), so coeff -1
  for (int a = 0; a < n; ++a) {
    const std::uint32_t mask = (1u << tps::TpsPoint::q_index(a)) |
                               (1u << tps::TpsPoint::p_index(a, n));
    deta[mask] = -1.0;
  }

  Form vol = eta;
  for (int k = 0; k < n; ++k) vol = wedge(vol, deta);

  const std::uint32_t full = (1u << pt.dim()) - 1u;
  double coeff = 0.0;
  if (auto it = vol.find(full); it != vol.end()) coeff = it->second;

  // Permutation (w, q1..qn, p1..pn) -> (w, p1, q1, p2, q2, ...).
  std::vector<int> order;
  order.push_back(0);
  for (int a = 0; a < n; ++a) {
    order.push_back(tps::TpsPoint::p_index(a, n));
    order.push_back(tps::TpsPoint::q_index(a));
  }
  int inversions = 0;
  for (size_t i = 0; i < order.size(); ++i)
    for (size_t j = i + 1; j < order.size(); ++j)
      if (order[i] > order[j]) ++inversions;
  return coeff * (inversions % 2 ? -1.0 : 1.0);
}

// ---- curvature via second derivatives of the metric -------------------------
// R_{mu nu sigma lambda} = (1/2)(g_{mu lambda, nu sigma} + g_{nu sigma, mu lambda}
//   - g_{mu sigma, nu lambda} - g_{nu lambda, mu sigma})
//   + g_{ab} (Gamma^a_{nu sigma} Gamma^b_{mu lambda} - Gamma^a_{nu lambda} Gamma^b_{mu sigma})
// and Ric_{nu lambda} = g^{mu sigma} R_{mu nu sigma lambda}.
inline Mat ricci_from_metric_derivatives(
    const std::function<Mat(const Vec&)>& metric, const Vec& x, double h = 1e-4) {
  const int d = static_cast<int>(x.size());

  auto dg = [&](int s, const Vec& at) {
    Vec xp = at, xm = at;
    xp(s) += h;
    xm(s) -= h;
    return Mat((metric(xp) - metric(xm)) / (2.0 * h));
  };
  auto d2g = [&](int s, int t, const Vec& at) {
    Vec xp = at, xm = at;
    xp(t) += h;
    xm(t) -= h;
    return Mat((dg(s, xp) - dg(s, xm)) / (2.0 * h));
  };

  const Mat g = metric(x);
  const Mat ginv = g.inverse();

  std::vector<Mat> dG(d);
  for (int s = 0; s < d; ++s) dG[s] = dg(s, x);
  std::vector<Mat> Gamma(d, Mat::Zero(d, d));
  for (int a = 0; a < d; ++a)
    for (int nu = 0; nu < d; ++nu)
      for (int si = 0; si < d; ++si) {
        double sum = 0.0;
        for (int b = 0; b < d; ++b)
          sum += ginv(a, b) * (dG[nu](b, si) + dG[si](b, nu) - dG[b](nu, si));
        Gamma[a](nu, si) = 0.5 * sum;
      }

  std::vector<std::vector<Mat>> d2(d, std::vector<Mat>(d));
  for (int s = 0; s < d; ++s)
    for (int t = 0; t <= s; ++t) {
      d2[s][t] = d2g(s, t, x);
      d2[t][s] = d2[s][t];
    }

  auto riemann = [&](int mu, int nu, int si, int la) {
    double r = 0.5 * (d2[nu][si](mu, la) + d2[mu][la](nu, si) -
                      d2[nu][la](mu, si) - d2[mu][si](nu, la));
    for (int a = 0; a < d; ++a)
      for (int b = 0; b < d; ++b)
        r += g(a, b) * (Gamma[a](nu, si) * Gamma[b](mu, la) -
                        Gamma[a](nu, la) * Gamma[b](mu, si));
    return r;
  };

  Mat ric = Mat::Zero(d, d);
  for (int nu = 0; nu < d; ++nu)
    for (int la = 0; la < d; ++la) {
      double sum = 0.0;
      for (int mu = 0; mu < d; ++mu)
        for (int si = 0; si < d; ++si)
          sum += ginv(mu, si) * riemann(mu, nu, si, la);
      ric(nu, la) = sum;
    }
  return ric;
}

// ---- Maxwell construction oracle -------------------------------------------
// Bisection on the coexistence pressure with Simpson quadrature of the area
// difference; independent of the Newton implementation and of the closed-form
// isotherm antiderivative.
struct MaxwellOracle {
  double p_coex, v_l, v_g;
};

inline MaxwellOracle maxwell_oracle(const tps::VdwModel& m, double T) {
  auto p = [&](double v) { return m.pressure(v, T); };

  // Spinodal bracket by scanning dp/dv sign changes.
  auto dpdv = [&](double v) { return m.dp_dv(v, T); };
  auto root = [&](auto f, double lo, double hi) {
    double flo = f(lo);
    for (int i = 0; i < 200; ++i) {
      const double mid = 0.5 * (lo + hi);
      if ((f(mid) < 0.0) == (flo < 0.0)) {
        lo = mid;
        flo = f(mid);
      } else {
        hi = mid;
      }
    }
    return 0.5 * (lo + hi);
  };
  const double vc = 3.0 * m.b;
  double lo = m.b * (1.0 + 1e-9);
  while (dpdv(lo) >= 0.0) lo = m.b + 2.0 * (lo - m.b);
  const double vminus = root(dpdv, lo, vc);
  double hi = 2.0 * vc;
  while (dpdv(hi) > 0.0) hi *= 2.0;
  const double vplus = root(dpdv, vc, hi);

  auto area = [&](double pc) {
    auto f = [&](double v) { return p(v) - pc; };
    double l0 = m.b * (1.0 + 1e-12);
    while (f(l0) < 0.0) l0 = m.b + 0.5 * (l0 - m.b);
    const double vl = root(f, l0, vminus);
    double g0 = 2.0 * vplus;
    while (f(g0) > 0.0) g0 *= 2.0;
    const double vg = root(f, vplus, g0);
    const int panels = 4000;
    const double hh = (vg - vl) / panels;
    double sum = f(vl) + f(vg);
    for (int k = 1; k < panels; ++k) sum += (k % 2 ? 4.0 : 2.0) * f(vl + k * hh);
    return std::make_tuple(sum * hh / 3.0, vl, vg);
  };

  double plo = std::max(p(vminus), 1e-12) * (1.0 + 1e-9);
  double phi = p(vplus) * (1.0 - 1e-9);
  double alo = std::get<0>(area(plo));
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (plo + phi);
    const double am = std::get<0>(area(mid));
    if ((am > 0.0) == (alo > 0.0)) {
      plo = mid;
      alo = am;
    } else {
      phi = mid;
    }
  }
  const double pc = 0.5 * (plo + phi);
  const auto [a0, vl, vg] = area(pc);
  (void)a0;
  return {pc, vl, vg};
}

}  // namespace oracles
