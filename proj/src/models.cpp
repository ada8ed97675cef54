#include "tps/models.hpp"

#include <cmath>
#include <functional>

#include "tps/errors.hpp"

namespace tps {

Potential IdealGasModel::molar_entropy() const {
  const double cv = c_v, Rg = R, s_0 = s0, u_0 = u0, v_0 = v0;
  return Potential::from_dual(2, [=](const std::vector<Dual2>& x) {
    return s_0 + cv * log(x[0] / u_0) + Rg * log(x[1] / v_0);
  });
}

Potential IdealGasModel::extensive_entropy() const {
  const double cv = c_v, Rg = R, s_0 = s0, u_0 = u0, v_0 = v0;
  return Potential::from_dual(3, [=](const std::vector<Dual2>& x) {
    const Dual2 &U = x[0], &V = x[1], &N = x[2];
    return N * (s_0 + cv * log(U / (N * u_0)) + Rg * log(V / (N * v_0)));
  });
}

Potential IdealGasModel::energy_fundamental() const {
  const double cv = c_v, Rg = R, s_0 = s0, u_0 = u0, v_0 = v0;
  return Potential::from_dual(2, [=](const std::vector<Dual2>& x) {
    const Dual2 &s = x[0], &v = x[1];
    return u_0 * exp((s - s_0 - Rg * log(v / v_0)) / cv);
  });
}

double VdwModel::pressure(double v, double T) const {
  if (v <= b) throw DomainError("VdwModel::pressure: v must exceed b");
  return R * T / (v - b) - a / (v * v);
}

double VdwModel::dp_dv(double v, double T) const {
  return -R * T / ((v - b) * (v - b)) + 2.0 * a / (v * v * v);
}

double VdwModel::d2p_dv2(double v, double T) const {
  return 2.0 * R * T / ((v - b) * (v - b) * (v - b)) - 6.0 * a / (v * v * v * v);
}

Potential VdwModel::molar_entropy() const {
  const double aa = a, bb = b, Rg = R, cc = c, s_0 = s0, u_0 = u0, v_0 = v0;
  return Potential::from_dual(2, [=](const std::vector<Dual2>& x) {
    const Dual2 &u = x[0], &v = x[1];
    return s_0 + cc * log((u + aa / v) / u_0) + Rg * log((v - bb) / v_0);
  });
}

Potential VdwModel::extensive_entropy() const {
  const double aa = a, bb = b, Rg = R, cc = c, s_0 = s0, u_0 = u0, v_0 = v0;
  return Potential::from_dual(3, [=](const std::vector<Dual2>& x) {
    const Dual2 &U = x[0], &V = x[1], &N = x[2];
    const Dual2 u = U / N, v = V / N;
    return N * (s_0 + cc * log((u + aa / v) / u_0) + Rg * log((v - bb) / v_0));
  });
}

Potential VdwModel::energy_fundamental() const {
  const double aa = a, bb = b, Rg = R, cc = c, s_0 = s0, u_0 = u0, v_0 = v0;
  return Potential::from_dual(2, [=](const std::vector<Dual2>& x) {
    const Dual2 &s = x[0], &v = x[1];
    return u_0 * exp((s - s_0 - Rg * log((v - bb) / v_0)) / cc) - aa / v;
  });
}

Potential VdwModel::helmholtz_isotherm(double T) const {
  const double aa = a, bb = b, Rg = R, v_0 = v0;
  return Potential::from_dual(1, [=](const std::vector<Dual2>& x) {
    return -Rg * T * log((x[0] - bb) / v_0) - aa / x[0];
  });
}

CriticalPoint critical_point(const VdwModel& m) {
  // Newton on F(v,T) = (dp/dv, d2p/dv2) = 0, seeded from the scaling guess
  // v ~ 2.8 b, T ~ 0.28 a/(R b).
  double v = 2.8 * m.b;
  double T = 0.28 * m.a / (m.R * m.b);
  for (int iter = 0; iter < 100; ++iter) {
    const double f1 = m.dp_dv(v, T);
    const double f2 = m.d2p_dv2(v, T);
    const double scale = m.a / (m.b * m.b * m.b);
    if (std::abs(f1) < 1e-14 * scale && std::abs(f2) < 1e-13 * scale / m.b)
      return {v, m.pressure(v, T), T};

    const double d = v - m.b;
    // Jacobian of (p_v, p_vv) in (v, T).
    const double j11 = m.d2p_dv2(v, T);
    const double j12 = -m.R / (d * d);
    const double j21 = -6.0 * m.R * T / (d * d * d * d) + 24.0 * m.a / std::pow(v, 5);
    const double j22 = 2.0 * m.R / (d * d * d);
    const double det = j11 * j22 - j12 * j21;
    if (det == 0.0) break;
    const double dv = (-f1 * j22 + f2 * j12) / det;
    const double dT = (-f2 * j11 + f1 * j21) / det;
    double t = 1.0;
    while ((v + t * dv <= m.b || T + t * dT <= 0.0) && t > 1e-8) t *= 0.5;
    v += t * dv;
    T += t * dT;
  }
  throw NewtonFailure("critical_point: Newton did not converge", 0.0);
}

std::pair<double, double> spinodal(const VdwModel& m, double T) {
  const CriticalPoint cp = critical_point(m);
  if (T >= cp.T_c || T <= 0.0)
    throw NoSpinodal("spinodal: requires 0 < T < T_c");

  auto g = [&](double v) { return m.dp_dv(v, T); };
  auto bisect = [&](double lo, double hi) {
    double flo = g(lo);
    for (int i = 0; i < 200; ++i) {
      const double mid = 0.5 * (lo + hi);
      const double fm = g(mid);
      if ((flo < 0.0) == (fm < 0.0)) {
        lo = mid;
        flo = fm;
      } else {
        hi = mid;
      }
    }
    return 0.5 * (lo + hi);
  };

  // g < 0 near b, g(v_c) > 0 below T_c, g -> 0^- at large v.
  double lo = m.b * (1.0 + 1e-9);
  while (g(lo) >= 0.0) lo = m.b + 2.0 * (lo - m.b);
  const double v_minus = bisect(lo, cp.v_c);
  double hi = 2.0 * cp.v_c;
  while (g(hi) > 0.0) hi *= 2.0;
  const double v_plus = bisect(cp.v_c, hi);
  return {v_minus, v_plus};
}

namespace {

// Signed area between the isotherm and the horizontal line p over [v_l, v_g],
// by composite Simpson; the implementation uses the closed-form antiderivative
// elsewhere, so this stays an independent residual.
double area_residual_quadrature(const VdwModel& m, double T, double p, double v_l,
                                double v_g, int panels = 4000) {
  const double h = (v_g - v_l) / panels;
  auto f = [&](double v) { return m.pressure(v, T) - p; };
  double sum = f(v_l) + f(v_g);
  for (int k = 1; k < panels; ++k) sum += (k % 2 ? 4.0 : 2.0) * f(v_l + k * h);
  return sum * h / 3.0;
}

// Integral of p dv over [v_l, v_g] in closed form.
double isotherm_integral(const VdwModel& m, double T, double v_l, double v_g) {
  return m.R * T * std::log((v_g - m.b) / (v_l - m.b)) +
         m.a * (1.0 / v_g - 1.0 / v_l);
}

// Roots of p(v, T) = p bracketing the spinodal; used by the fallback solver.
double brent_root(const std::function<double(double)>& f, double lo, double hi) {
  double flo = f(lo), fhi = f(hi);
  if (flo * fhi > 0.0) throw NumericError("brent_root: not bracketed");
  for (int i = 0; i < 300; ++i) {
    const double mid = 0.5 * (lo + hi);
    const double fm = f(mid);
    if (fm == 0.0 || hi - lo < 1e-16 * std::max(1.0, std::abs(mid)))
      return mid;
    if ((flo < 0.0) == (fm < 0.0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
      fhi = fm;
    }
  }
  return 0.5 * (lo + hi);
}

CoexistenceResult finish(const VdwModel& m, double T, double v_l, double v_g) {
  CoexistenceResult res;
  res.T = T;
  res.v_liquid = v_l;
  res.v_gas = v_g;
  res.p_coex = 0.5 * (m.pressure(v_l, T) + m.pressure(v_g, T));
  res.equal_area_residual =
      std::abs(area_residual_quadrature(m, T, res.p_coex, v_l, v_g));
  // Equal chemical potential: f(v_l) - f(v_g) = p (v_g - v_l) with the
  // Helmholtz isotherm (T-only terms cancel in the difference).
  const Potential f = m.helmholtz_isotherm(T);
  Vec vl(1), vg(1);
  vl << v_l;
  vg << v_g;
  res.mu_residual = std::abs(f.value(vl) - f.value(vg) -
                             res.p_coex * (v_g - v_l));
  return res;
}

CoexistenceResult maxwell_bisection(const VdwModel& m, double T) {
  const auto [v_minus, v_plus] = spinodal(m, T);
  const double p_lo = std::max(m.pressure(v_minus, T), 1e-12);
  const double p_hi = m.pressure(v_plus, T);

  auto outer_roots = [&](double p) {
    auto f = [&](double v) { return m.pressure(v, T) - p; };
    double lo = m.b * (1.0 + 1e-12);
    while (f(lo) < 0.0) lo = m.b + 0.5 * (lo - m.b);
    const double vl = brent_root(f, lo, v_minus);
    double hi = 2.0 * v_plus;
    while (f(hi) > 0.0) hi *= 2.0;
    const double vg = brent_root(f, v_plus, hi);
    return std::make_pair(vl, vg);
  };
  auto area = [&](double p) {
    const auto [vl, vg] = outer_roots(p);
    return isotherm_integral(m, T, vl, vg) - p * (vg - vl);
  };

  double lo = p_lo * (1.0 + 1e-12), hi = p_hi * (1.0 - 1e-12);
  double flo = area(lo);
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    const double fm = area(mid);
    if ((flo > 0.0) == (fm > 0.0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  const double p = 0.5 * (lo + hi);
  const auto [vl, vg] = outer_roots(p);
  return finish(m, T, vl, vg);
}

}  // namespace

CoexistenceResult maxwell_construction(const VdwModel& m, double T) {
  const CriticalPoint cp = critical_point(m);
  if (T <= 0.0 || T >= cp.T_c)
    throw DomainError("maxwell_construction: requires 0 < T < T_c");
  const auto [v_minus, v_plus] = spinodal(m, T);

  // Damped Newton on (v_l, v_g):
  //   F1 = p(v_l) - p(v_g),
  //   F2 = int p dv - pbar (v_g - v_l),  pbar = (p(v_l)+p(v_g))/2.
  double v_l = m.b + 0.1 * (v_minus - m.b);
  double v_g = 10.0 * v_plus;

  auto F = [&](double vl, double vg) -> Eigen::Vector2d {
    const double pl = m.pressure(vl, T), pg = m.pressure(vg, T);
    Eigen::Vector2d f;
    f(0) = pl - pg;
    f(1) = isotherm_integral(m, T, vl, vg) - 0.5 * (pl + pg) * (vg - vl);
    return f;
  };

  bool converged = false;
  for (int iter = 0; iter < 200 && !converged; ++iter) {
    const Eigen::Vector2d f = F(v_l, v_g);
    const double scale = std::max(1.0, std::abs(m.pressure(v_l, T)));
    if (f.cwiseAbs().maxCoeff() < 1e-13 * scale) {
      converged = true;
      break;
    }
    const double pl_v = m.dp_dv(v_l, T), pg_v = m.dp_dv(v_g, T);
    const double pl = m.pressure(v_l, T), pg = m.pressure(v_g, T);
    Eigen::Matrix2d Jm;
    Jm(0, 0) = pl_v;
    Jm(0, 1) = -pg_v;
    // d/dv_l [ int p - pbar (v_g - v_l) ] = -p(v_l) - 0.5 pl_v (v_g - v_l) + pbar
    Jm(1, 0) = -pl - 0.5 * pl_v * (v_g - v_l) + 0.5 * (pl + pg);
    Jm(1, 1) = pg - 0.5 * pg_v * (v_g - v_l) - 0.5 * (pl + pg);
    const double det = Jm.determinant();
    if (std::abs(det) < 1e-300) break;
    const Eigen::Vector2d step = Jm.partialPivLu().solve(-f);

    double t = 1.0;
    const double f0 = f.squaredNorm();
    bool stepped = false;
    while (t > 1e-10) {
      const double vl_t = v_l + t * step(0), vg_t = v_g + t * step(1);
      if (vl_t > m.b && vg_t > vl_t) {
        const Eigen::Vector2d ft = F(vl_t, vg_t);
        if (ft.allFinite() && ft.squaredNorm() <= (1.0 - 1e-4 * t) * f0) {
          v_l = vl_t;
          v_g = vg_t;
          stepped = true;
          break;
        }
      }
      t *= 0.5;
    }
    if (!stepped) break;
  }

  if (converged && v_l > m.b && v_g > v_l && v_l < v_minus && v_g > v_plus)
    return finish(m, T, v_l, v_g);
  return maxwell_bisection(m, T);  // robust fallback near T_c
}

std::vector<CoexistenceResult> coexistence_locus(
    const VdwModel& m, const std::vector<double>& T_grid) {
  std::vector<CoexistenceResult> out;
  out.reserve(T_grid.size());
  for (double T : T_grid) out.push_back(maxwell_construction(m, T));
  return out;
}

int gibbs_phase_rule(int C, int r) {
  if (C < 1 || r < 1) throw DomainError("gibbs_phase_rule: C >= 1, r >= 1");
  const int N = C - r + 2;
  if (N < 0)
    throw DomainError("gibbs_phase_rule: unphysical configuration (N < 0)");
  return N;
}

EulerReport euler_gibbs_duhem_check(const Potential& S, const Vec& state) {
  if (S.arity() != state.size())
    throw DimensionMismatch("euler_gibbs_duhem_check: state arity");
  EulerReport rep{0.0, 0.0, 0.0};
  const FieldEval e = S.eval(state);
  for (double lambda : {0.5, 2.0, 7.0}) {
    const double s_scaled = S.value(lambda * state);
    rep.homogeneity_residual = std::max(
        rep.homogeneity_residual,
        std::abs(s_scaled - lambda * e.value) / std::max(1.0, std::abs(e.value)));
  }
  // Euler: S = q^a p_a with q^a = dS/dp_a; the muPT potential is the same
  // combination written as w = S - sum q^a p_a.
  const double euler = e.value - e.gradient.dot(state);
  rep.euler_residual = std::abs(euler);
  rep.mu_pt_residual = std::abs(euler);
  return rep;
}

std::vector<EnsemblePotential> ensemble_potentials(const Potential& S,
                                                   const Vec& state) {
  if (S.arity() != 3 || state.size() != 3)
    throw DimensionMismatch("ensemble_potentials: expects S(U,V,N)");
  const FieldEval e = S.eval(state);
  std::vector<EnsemblePotential> out;
  out.push_back({"S", e.value, false});

  // Value of the I-transform at the image of `state` is first-order data:
  // f = S - sum_I state_i dS/dstate_i. The transform exists as a potential
  // only where the I-block of the Hessian is invertible, which sets the flag
  // (inside the VdW spinodal the (U,V) block degenerates). The total
  // transform of a degree-one relation is always parametrically degenerate —
  // that is the Gibbs-Duhem identity — and its value w_muPT vanishes.
  const std::vector<std::pair<std::string, std::vector<int>>> transforms = {
      {"-beta F", {0}},       // NVT: exchange U <-> 1/T
      {"-beta G", {0, 1}},    // NpT: exchange U, V
      {"-beta Phi", {0, 2}},  // muVT: exchange U, N
  };
  for (const auto& [name, I] : transforms) {
    double value = e.value;
    for (int i : I) value -= state(i) * e.gradient(i);
    Mat block(static_cast<int>(I.size()), static_cast<int>(I.size()));
    for (size_t r = 0; r < I.size(); ++r)
      for (size_t c = 0; c < I.size(); ++c)
        block(static_cast<int>(r), static_cast<int>(c)) =
            e.hessian(I[r], I[c]);
    // Concavity (Hessian-sign) test: the exchanged block of a stable entropy
    // is strictly negative definite; indefinite or singular marks the entry.
    Eigen::SelfAdjointEigenSolver<Mat> es(block);
    const double scale = std::max(1.0, block.cwiseAbs().maxCoeff());
    const bool flagged = es.eigenvalues().maxCoeff() > -1e-10 * scale;
    out.push_back({name, value, flagged});
  }
  out.push_back({"w_muPT", e.value - e.gradient.dot(state), false});
  return out;
}

}  // namespace tps
