#include "tps/dynamics.hpp"

#include <cmath>

#include "tps/chart.hpp"
#include "tps/errors.hpp"
#include "tps/metric.hpp"

namespace tps {

namespace {

Vec ham_vf_components(const FieldEval& h, const TpsPoint& pt) {
  const int n = pt.n();
  Vec X(pt.dim());
  const double h_w = h.gradient(0);
  double w_dot = h.value;
  for (int a = 0; a < n; ++a) {
    const double h_qa = h.gradient(TpsPoint::q_index(a));
    const double h_pa = h.gradient(TpsPoint::p_index(a, n));
    w_dot -= pt.p(a) * h_pa;
    X(TpsPoint::q_index(a)) = h_pa;
    X(TpsPoint::p_index(a, n)) = pt.p(a) * h_w - h_qa;
  }
  X(0) = w_dot;
  return X;
}

}  // namespace

VectorAt ham_vf(const ContactHamiltonian& h, const TpsPoint& pt) {
  return VectorAt(pt, ham_vf_components(h.eval(pt), pt));
}

VectorAt heisenberg_form_vf(const ContactHamiltonian& h, const TpsPoint& pt) {
  const FieldEval e = h.eval(pt);
  const int n = pt.n();
  Vec X = Vec::Zero(pt.dim());
  X(0) = e.value;  // h * xi
  for (int i = 0; i < n; ++i) {
    const double Qi_h =
        pt.p(i) * e.gradient(0) - e.gradient(TpsPoint::q_index(i));
    const double Pi_h = e.gradient(TpsPoint::p_index(i, n));
    // + Q_i(h) P^i
    X(TpsPoint::p_index(i, n)) += Qi_h;
    // - P^i(h) Q_i ,  Q_i = p_i d/dw - d/dq^i
    X(0) -= Pi_h * pt.p(i);
    X(TpsPoint::q_index(i)) += Pi_h;
  }
  return VectorAt(pt, X);
}

VectorFieldDef ham_field(const ContactHamiltonian& h) {
  return VectorFieldDef([h](const TpsPoint& pt) { return ham_vf(h, pt); });
}

double jacobi_bracket(const ContactHamiltonian& f, const ContactHamiltonian& g,
                      const TpsPoint& pt) {
  const VectorAt bracket = lie_bracket(ham_field(f), ham_field(g), pt);
  if (!bracket.components.allFinite())
    throw NumericError("jacobi_bracket: non-finite bracket");
  return eta_eval(pt, bracket);
}

double lie_eta_residual(const ContactHamiltonian& h, const TpsPoint& pt) {
  const int n = pt.n();
  const VectorFieldDef X = ham_field(h);
  const Mat JX = field_jacobian(X, pt);
  const Vec Xv = X(pt).components;
  const Vec e = eta(pt).components;

  // (L_X eta)_nu = X^s d_s eta_nu + eta_s d_nu X^s; d eta_{q^a} / d p_a = 1
  // is the only nonconstant piece of eta.
  Vec lie = JX.transpose() * e;
  for (int a = 0; a < n; ++a)
    lie(TpsPoint::q_index(a)) += Xv(TpsPoint::p_index(a, n));

  const double xi_h = h.eval(pt).gradient(0);
  return (lie - xi_h * e).cwiseAbs().maxCoeff();
}

std::vector<ContactHamiltonian> mrugala_hamiltonians(const LegendreSpec& spec) {
  const int n = spec.n;
  std::vector<ContactHamiltonian> out;
  out.reserve(n + 1);
  const Potential f = spec.f;
  const std::vector<int> I = spec.I;
  auto in_I = [I](int k) {
    return std::binary_search(I.begin(), I.end(), k);
  };

  auto base_args = [n, in_I](const DualPoint& x) {
    std::vector<Dual2> args;
    args.reserve(n);
    for (int k = 0; k < n; ++k) args.push_back(in_I(k) ? x.p[k] : x.q[k]);
    return args;
  };

  // f and its partials evaluated with dual arguments: nest a second-order
  // dual through the Potential's own evaluator via finite composition is not
  // possible in general, so the families are assembled from f's eval data.
  for (int k = 0; k < n; ++k) {
    if (in_I(k)) {
      // h^i = q^i - df/dp_i
      out.push_back(ScalarField(n, [f, I, in_I, k, n](const TpsPoint& pt) {
        Vec x(n);
        for (int a = 0; a < n; ++a) x(a) = in_I(a) ? pt.p(a) : pt.q(a);
        const FieldEval fe = f.eval(x);
        FieldEval r;
        r.value = pt.q(k) - fe.gradient(k);
        r.gradient = Vec::Zero(pt.dim());
        r.gradient(TpsPoint::q_index(k)) += 1.0;
        r.hessian = Mat();
        for (int a = 0; a < n; ++a) {
          const int slot = in_I(a) ? TpsPoint::p_index(a, n) : TpsPoint::q_index(a);
          r.gradient(slot) -= fe.hessian(k, a);
        }
        return r;
      }));
    } else {
      // h_j = p_j + df/dq^j
      out.push_back(ScalarField(n, [f, in_I, k, n](const TpsPoint& pt) {
        Vec x(n);
        for (int a = 0; a < n; ++a) x(a) = in_I(a) ? pt.p(a) : pt.q(a);
        const FieldEval fe = f.eval(x);
        FieldEval r;
        r.value = pt.p(k) + fe.gradient(k);
        r.gradient = Vec::Zero(pt.dim());
        r.gradient(TpsPoint::p_index(k, n)) += 1.0;
        r.hessian = Mat();
        for (int a = 0; a < n; ++a) {
          const int slot = in_I(a) ? TpsPoint::p_index(a, n) : TpsPoint::q_index(a);
          r.gradient(slot) += fe.hessian(k, a);
        }
        return r;
      }));
    }
  }
  // h^0 = w - f + p_i df/dp_i
  out.push_back(ScalarField(n, [f, I, in_I, n](const TpsPoint& pt) {
    Vec x(n);
    for (int a = 0; a < n; ++a) x(a) = in_I(a) ? pt.p(a) : pt.q(a);
    const FieldEval fe = f.eval(x);
    FieldEval r;
    r.value = pt.w() - fe.value;
    for (int i : I) r.value += pt.p(i) * fe.gradient(i);
    r.gradient = Vec::Zero(pt.dim());
    r.gradient(0) = 1.0;
    for (int a = 0; a < n; ++a) {
      const int slot = in_I(a) ? TpsPoint::p_index(a, n) : TpsPoint::q_index(a);
      double d = -fe.gradient(a);
      for (int i : I) d += pt.p(i) * fe.hessian(i, a);
      if (in_I(a)) d += fe.gradient(a);  // the explicit p_i factor
      r.gradient(slot) += d;
    }
    r.hessian = Mat();
    return r;
  }));
  return out;
}

ContactHamiltonian lt_generator(int n) {
  return ScalarField::from_dual(n, [](const DualPoint& x) {
    Dual2 s = Dual2::constant(0.0, 2 * x.n() + 1);
    for (int a = 0; a < x.n(); ++a) s += 0.5 * (x.q[a] * x.q[a] + x.p[a] * x.p[a]);
    return s;
  });
}

double lie_metric_lt_residual(const TpsPoint& pt) {
  const int n = pt.n(), dim = pt.dim();
  const Mat lie = lie_metric(ham_field(lt_generator(n)),
                             [](const TpsPoint& q) { return gfr(q); }, pt);
  Mat target = Mat::Zero(dim, dim);
  for (int a = 0; a < n; ++a) {
    target(TpsPoint::q_index(a), TpsPoint::q_index(a)) = 1.0;
    target(TpsPoint::p_index(a, n), TpsPoint::p_index(a, n)) = -1.0;
  }
  return (lie - target).cwiseAbs().maxCoeff();
}

Trajectory integrate(const ContactHamiltonian& h, const TpsPoint& x0, double t_f,
                     double dt) {
  if (dt <= 0.0) throw DomainError("integrate: dt must be positive");
  if (t_f <= 0.0) throw DomainError("integrate: t_f must be positive");
  const int steps = static_cast<int>(std::ceil(t_f / dt - 1e-12));
  constexpr double kGuard = 1e12;

  Trajectory traj;
  traj.t.reserve(steps + 1);
  traj.x.reserve(steps + 1);
  traj.h.reserve(steps + 1);

  auto rhs = [&h](const Vec& x) {
    const TpsPoint pt = TpsPoint::from_coords(x);
    return ham_vf_components(h.eval(pt), pt);
  };

  Vec x = x0.coords();
  double t = 0.0;
  traj.t.push_back(t);
  traj.x.push_back(x0);
  traj.h.push_back(h.value(x0));

  for (int k = 0; k < steps; ++k) {
    const double step = std::min(dt, t_f - t);
    const Vec k1 = rhs(x);
    const Vec k2 = rhs(x + 0.5 * step * k1);
    const Vec k3 = rhs(x + 0.5 * step * k2);
    const Vec k4 = rhs(x + step * k3);
    x += (step / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    t += step;
    if (!x.allFinite() || x.norm() > kGuard) throw FlowDivergence(std::move(traj));
    const TpsPoint pt = TpsPoint::from_coords(x);
    traj.t.push_back(t);
    traj.x.push_back(pt);
    traj.h.push_back(h.value(pt));
  }
  return traj;
}

}  // namespace tps
