#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <stdexcept>

namespace tps {

// Second-order forward-mode scalar: carries value, gradient and Hessian with
// respect to a fixed set of seed variables. Dimension is set when seeding.
class Dual2 {
 public:
  Dual2() : val_(0.0) {}
  /*implicit*/ Dual2(double v) : val_(v) {}

  static Dual2 constant(double v, int dim) {
    Dual2 d(v);
    d.grad_ = Eigen::VectorXd::Zero(dim);
    d.hess_ = Eigen::MatrixXd::Zero(dim, dim);
    return d;
  }

  static Dual2 variable(double v, int index, int dim) {
    Dual2 d = constant(v, dim);
    d.grad_(index) = 1.0;
    return d;
  }

  double value() const { return val_; }
  const Eigen::VectorXd& gradient() const { return grad_; }
  const Eigen::MatrixXd& hessian() const { return hess_; }
  int dim() const { return static_cast<int>(grad_.size()); }
  bool seeded() const { return grad_.size() > 0; }

  Dual2 operator-() const {
    Dual2 r(*this);
    r.val_ = -r.val_;
    if (seeded()) {
      r.grad_ = -r.grad_;
      r.hess_ = -r.hess_;
    }
    return r;
  }

  friend Dual2 operator+(const Dual2& a, const Dual2& b) {
    return combine(a, b, a.val_ + b.val_, 1.0, 1.0, ZeroSecond{});
  }
  friend Dual2 operator-(const Dual2& a, const Dual2& b) {
    return combine(a, b, a.val_ - b.val_, 1.0, -1.0, ZeroSecond{});
  }
  friend Dual2 operator*(const Dual2& a, const Dual2& b) {
    Dual2 r = combine(a, b, a.val_ * b.val_, b.val_, a.val_, ZeroSecond{});
    if (r.seeded() && a.seeded() && b.seeded()) {
      r.hess_ += a.grad_ * b.grad_.transpose() + b.grad_ * a.grad_.transpose();
    }
    return r;
  }
  friend Dual2 operator/(const Dual2& a, const Dual2& b) { return a * inv(b); }

  Dual2& operator+=(const Dual2& o) { return *this = *this + o; }
  Dual2& operator-=(const Dual2& o) { return *this = *this - o; }
  Dual2& operator*=(const Dual2& o) { return *this = *this * o; }
  Dual2& operator/=(const Dual2& o) { return *this = *this / o; }

  // h(f) with first and second derivative of the outer function supplied.
  static Dual2 chain(const Dual2& f, double h, double dh, double d2h) {
    Dual2 r;
    r.val_ = h;
    if (f.seeded()) {
      r.grad_ = dh * f.grad_;
      r.hess_ = dh * f.hess_ + d2h * (f.grad_ * f.grad_.transpose());
    }
    return r;
  }

  friend Dual2 inv(const Dual2& f) {
    const double v = f.val_;
    return chain(f, 1.0 / v, -1.0 / (v * v), 2.0 / (v * v * v));
  }
  friend Dual2 exp(const Dual2& f) {
    const double e = std::exp(f.val_);
    return chain(f, e, e, e);
  }
  friend Dual2 log(const Dual2& f) {
    const double v = f.val_;
    return chain(f, std::log(v), 1.0 / v, -1.0 / (v * v));
  }
  friend Dual2 sqrt(const Dual2& f) {
    const double s = std::sqrt(f.val_);
    return chain(f, s, 0.5 / s, -0.25 / (s * s * s));
  }
  friend Dual2 pow(const Dual2& f, double e) {
    const double v = f.val_;
    return chain(f, std::pow(v, e), e * std::pow(v, e - 1.0),
                 e * (e - 1.0) * std::pow(v, e - 2.0));
  }
  friend Dual2 sin(const Dual2& f) {
    return chain(f, std::sin(f.val_), std::cos(f.val_), -std::sin(f.val_));
  }
  friend Dual2 cos(const Dual2& f) {
    return chain(f, std::cos(f.val_), -std::sin(f.val_), -std::cos(f.val_));
  }
  friend Dual2 cosh(const Dual2& f) {
    return chain(f, std::cosh(f.val_), std::sinh(f.val_), std::cosh(f.val_));
  }
  friend Dual2 sinh(const Dual2& f) {
    return chain(f, std::sinh(f.val_), std::cosh(f.val_), std::sinh(f.val_));
  }

 private:
  struct ZeroSecond {};

  // Linear combination c_a * a + c_b * b at the derivative level.
  static Dual2 combine(const Dual2& a, const Dual2& b, double val, double ca,
                       double cb, ZeroSecond) {
    Dual2 r;
    r.val_ = val;
    if (a.seeded() && b.seeded()) {
      r.grad_ = ca * a.grad_ + cb * b.grad_;
      r.hess_ = ca * a.hess_ + cb * b.hess_;
    } else if (a.seeded()) {
      r.grad_ = ca * a.grad_;
      r.hess_ = ca * a.hess_;
    } else if (b.seeded()) {
      r.grad_ = cb * b.grad_;
      r.hess_ = cb * b.hess_;
    }
    return r;
  }

  double val_;
  Eigen::VectorXd grad_;
  Eigen::MatrixXd hess_;
};

}  // namespace tps
