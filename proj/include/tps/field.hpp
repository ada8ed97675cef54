#pragma once

#include <functional>
#include <utility>
#include <vector>

#include "tps/dual.hpp"
#include "tps/point.hpp"

namespace tps {

// Value, gradient and Hessian of a scalar function at a point. Gradient and
// Hessian are with respect to the function's own argument order.
struct FieldEval {
  double value;
  Vec gradient;
  Mat hessian;
};

// Phase-space point with Dual2 coordinates, for writing fields as plain
// arithmetic expressions. Seeded against the 2n+1 coordinates in fixed order.
struct DualPoint {
  Dual2 w;
  std::vector<Dual2> q, p;
  int n() const { return static_cast<int>(q.size()); }
};

inline DualPoint seed_point(const TpsPoint& pt) {
  const int n = pt.n(), dim = pt.dim();
  DualPoint d;
  d.w = Dual2::variable(pt.w(), 0, dim);
  d.q.reserve(n);
  d.p.reserve(n);
  for (int a = 0; a < n; ++a)
    d.q.push_back(Dual2::variable(pt.q(a), TpsPoint::q_index(a), dim));
  for (int a = 0; a < n; ++a)
    d.p.push_back(Dual2::variable(pt.p(a), TpsPoint::p_index(a, n), dim));
  return d;
}

// Differentiable function on the phase space. Derivatives are exact
// (forward-mode duals or analytic closures); finite differences appear in the
// test suite only, as the independent oracle.
class ScalarField {
 public:
  using Evaluator = std::function<FieldEval(const TpsPoint&)>;
  using DualFn = std::function<Dual2(const DualPoint&)>;

  ScalarField(int n, Evaluator eval) : n_(n), eval_(std::move(eval)) {}

  static ScalarField from_dual(int n, DualFn f) {
    return ScalarField(n, [f = std::move(f)](const TpsPoint& pt) {
      const Dual2 r = f(seed_point(pt));
      return FieldEval{r.value(), r.gradient(), r.hessian()};
    });
  }

  int n() const { return n_; }
  FieldEval eval(const TpsPoint& pt) const { return eval_(pt); }
  double value(const TpsPoint& pt) const { return eval_(pt).value; }
  CovectorAt gradient(const TpsPoint& pt) const {
    return CovectorAt(pt, eval_(pt).gradient);
  }

 private:
  int n_;
  Evaluator eval_;
};

// Differentiable function of n real variables (fundamental relations,
// Legendre generating functions). Same derivative contract as ScalarField.
class Potential {
 public:
  using Evaluator = std::function<FieldEval(const Vec&)>;
  using DualFn = std::function<Dual2(const std::vector<Dual2>&)>;

  Potential(int arity, Evaluator eval) : arity_(arity), eval_(std::move(eval)) {}

  static Potential from_dual(int arity, DualFn f) {
    return Potential(arity, [f = std::move(f), arity](const Vec& x) {
      std::vector<Dual2> xs;
      xs.reserve(arity);
      for (int i = 0; i < arity; ++i)
        xs.push_back(Dual2::variable(x(i), i, arity));
      const Dual2 r = f(xs);
      return FieldEval{r.value(), r.gradient(), r.hessian()};
    });
  }

  int arity() const { return arity_; }
  FieldEval eval(const Vec& x) const { return eval_(x); }
  double value(const Vec& x) const { return eval_(x).value; }
  Vec gradient(const Vec& x) const { return eval_(x).gradient; }
  Mat hessian(const Vec& x) const { return eval_(x).hessian; }

 private:
  int arity_;
  Evaluator eval_;
};

// Vector field given by an evaluator; output must be based at the input point.
class VectorFieldDef {
 public:
  using Evaluator = std::function<VectorAt(const TpsPoint&)>;

  explicit VectorFieldDef(Evaluator eval) : eval_(std::move(eval)) {}

  VectorAt operator()(const TpsPoint& pt) const {
    VectorAt v = eval_(pt);
    if (v.components.size() != pt.dim())
      throw DimensionMismatch("VectorFieldDef: field dimension mismatch");
    return v;
  }

  // Constant-coefficient field from components in coordinate order.
  static VectorFieldDef constant(Vec comps) {
    return VectorFieldDef([c = std::move(comps)](const TpsPoint& pt) {
      return VectorAt(pt, c);
    });
  }

 private:
  Evaluator eval_;
};

}  // namespace tps
