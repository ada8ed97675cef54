#include "tps/process.hpp"

#include <cmath>

#include "tps/chart.hpp"
#include "tps/errors.hpp"
#include "tps/metric.hpp"

namespace tps {

double thermo_hamiltonian(const TpsPoint& pt) { return -pt.w(); }

ContactHamiltonian thermo_hamiltonian_field(int n) {
  return ScalarField::from_dual(n, [](const DualPoint& x) { return -x.w; });
}

TpsPoint analytic_flow(const TpsPoint& x0, double t) {
  if (t < 0.0) throw DomainError("analytic_flow: t must be >= 0");
  const double decay = std::exp(-t);
  return TpsPoint(x0.w() * decay, x0.q(), x0.p() * decay);
}

std::string to_string(OrbitClass c) {
  switch (c) {
    case OrbitClass::Equilibrium:
      return "equilibrium";
    case OrbitClass::AdmissibleFluctuation:
      return "admissible";
    case OrbitClass::Inadmissible:
      return "inadmissible";
  }
  return "unknown";
}

OrbitClass classify(const TpsPoint& x0, double tol) {
  if (tol <= 0.0) throw DomainError("classify: tol must be positive");
  const double h0 = thermo_hamiltonian(x0);
  if (std::abs(h0) <= tol) return OrbitClass::Equilibrium;
  return h0 > 0.0 ? OrbitClass::AdmissibleFluctuation : OrbitClass::Inadmissible;
}

double norm_identity_residual(const TpsPoint& pt) {
  const ContactHamiltonian H = thermo_hamiltonian_field(pt.n());
  const Vec X = ham_vf(H, pt).components;
  const double nrm = X.dot(gfr(pt).matrix * X);
  const double h = thermo_hamiltonian(pt);
  return std::abs(nrm - h * h);
}

double entropy_production(const TpsPoint& x0, double t_f, int panels) {
  if (t_f < 0.0) throw DomainError("entropy_production: t_f must be >= 0");
  if (t_f == 0.0) return 0.0;
  // The t_f = 50 report must reach the infinite-horizon value to double
  // precision, so the panel count scales with the horizon and the Simpson
  // sum is compensated.
  panels = std::max(panels, static_cast<int>(4000.0 * t_f));
  if (panels % 2 != 0) ++panels;

  const ContactHamiltonian H = thermo_hamiltonian_field(x0.n());
  auto speed = [&](double t) {
    const TpsPoint pt = analytic_flow(x0, t);
    const Vec X = ham_vf(H, pt).components;
    const double sq = X.dot(gfr(pt).matrix * X);
    return std::sqrt(std::max(0.0, sq));
  };

  const double h = t_f / panels;
  double sum = 0.0, comp = 0.0;  // Kahan
  auto add = [&](double term) {
    const double y = term - comp;
    const double t = sum + y;
    comp = (t - sum) - y;
    sum = t;
  };
  add(speed(0.0));
  add(speed(t_f));
  for (int k = 1; k < panels; ++k) add((k % 2 ? 4.0 : 2.0) * speed(k * h));
  return sum * h / 3.0;
}

ProcessResult run_process(const TpsPoint& x0, double t_f, double dt, double tol) {
  ProcessResult res;
  res.orbit_class = classify(x0, tol);
  res.h0 = thermo_hamiltonian(x0);
  res.entropy = entropy_production(x0, t_f);
  res.trajectory = integrate(thermo_hamiltonian_field(x0.n()), x0, t_f, dt);
  for (size_t k = 0; k < res.trajectory.size(); ++k) {
    const TpsPoint& pt = res.trajectory.x[k];
    res.q_drift_max = std::max(res.q_drift_max,
                               (pt.q() - x0.q()).cwiseAbs().maxCoeff());
    const double target = res.h0 * std::exp(-res.trajectory.t[k]);
    res.flow_residual =
        std::max(res.flow_residual, std::abs(res.trajectory.h[k] - target));
  }
  return res;
}

IntegrabilityReport integrability_report(const TpsPoint& x0, double t_f) {
  const int n = x0.n();
  IntegrabilityReport rep;

  // q^a along the numeric flow.
  const Trajectory traj = integrate(thermo_hamiltonian_field(n), x0, t_f, 1e-2);
  for (const TpsPoint& pt : traj.x)
    rep.q_drift_max =
        std::max(rep.q_drift_max, (pt.q() - x0.q()).cwiseAbs().maxCoeff());

  // Pairwise involution of the coordinate integrals at sampled points.
  std::vector<ContactHamiltonian> integrals;
  integrals.push_back(
      ScalarField::from_dual(n, [](const DualPoint& x) {
        return Dual2::constant(1.0, 2 * x.n() + 1);
      }));
  for (int a = 0; a < n; ++a)
    integrals.push_back(
        ScalarField::from_dual(n, [a](const DualPoint& x) { return x.q[a]; }));

  for (size_t k = 0; k < traj.size(); k += std::max<size_t>(1, traj.size() / 8))
    for (size_t i = 0; i < integrals.size(); ++i)
      for (size_t j = i + 1; j < integrals.size(); ++j)
        rep.involution_max =
            std::max(rep.involution_max,
                     std::abs(jacobi_bracket(integrals[i], integrals[j],
                                             traj.x[k])));

  // Independence: rank of the Hamiltonian fields of {1, q^a} at x0.
  Mat fields(x0.dim(), static_cast<int>(integrals.size()));
  for (size_t i = 0; i < integrals.size(); ++i)
    fields.col(static_cast<int>(i)) = ham_vf(integrals[i], x0).components;
  rep.rank = static_cast<int>(fields.fullPivLu().rank());

  rep.completely_integrable =
      rep.q_drift_max < 1e-10 && rep.involution_max < 1e-6 && rep.rank == n + 1;
  return rep;
}

double fluctuation_entropy_link(const Mat& g_hessian, const Vec& dx) {
  if (g_hessian.rows() != dx.size())
    throw DimensionMismatch("fluctuation_entropy_link: dimension mismatch");
  return -0.5 * dx.dot(g_hessian * dx);
}

double displaced_hamiltonian(const Potential& extensive_entropy, const Vec& p0,
                             const Vec& dx) {
  const Vec q0 = extensive_entropy.gradient(p0);  // intensives at equilibrium
  const Vec p1 = p0 + dx;
  const double w = extensive_entropy.value(p1) - q0.dot(p1);
  return -w;
}

}  // namespace tps
