#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <cstdint>
#include <utility>

#include "tps/errors.hpp"

namespace tps {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

// Point of the (2n+1)-dimensional phase space in Darboux coordinates
// (w, q^1..q^n, p_1..p_n). Component order is fixed once and for all:
// index 0 = w, 1..n = q, n+1..2n = p. Every matrix and component vector in
// the library uses this order.
class TpsPoint {
 public:
  TpsPoint(double w, Vec q, Vec p) : w_(w), q_(std::move(q)), p_(std::move(p)) {
    if (q_.size() != p_.size() || q_.size() < 1)
      throw DimensionMismatch("TpsPoint: q and p must have equal length >= 1");
    if (!std::isfinite(w_) || !q_.allFinite() || !p_.allFinite())
      throw DomainError("TpsPoint: coordinates must be finite");
  }

  static TpsPoint from_coords(const Vec& x) {
    const int dim = static_cast<int>(x.size());
    if (dim < 3 || dim % 2 == 0)
      throw DimensionMismatch("TpsPoint: coordinate vector must have odd length >= 3");
    const int n = (dim - 1) / 2;
    return TpsPoint(x(0), x.segment(1, n), x.segment(1 + n, n));
  }

  int n() const { return static_cast<int>(q_.size()); }
  int dim() const { return 2 * n() + 1; }

  double w() const { return w_; }
  const Vec& q() const { return q_; }
  const Vec& p() const { return p_; }
  double q(int a) const { return q_(a); }
  double p(int a) const { return p_(a); }

  Vec coords() const {
    Vec x(dim());
    x(0) = w_;
    x.segment(1, n()) = q_;
    x.segment(1 + n(), n()) = p_;
    return x;
  }

  double norm() const { return coords().norm(); }

  // Coordinate slots in the fixed order.
  static int w_index() { return 0; }
  static int q_index(int a) { return 1 + a; }
  int p_index(int a) const { return 1 + n() + a; }
  static int p_index(int a, int n) { return 1 + n + a; }

 private:
  double w_;
  Vec q_, p_;
};

namespace detail {
inline void check_based(const TpsPoint& pt, const Vec& comps, const char* what) {
  if (comps.size() != pt.dim()) throw DimensionMismatch(what);
}
}  // namespace detail

// Tangent vector at a point, components in the order (d/dw, d/dq^a, d/dp_a).
struct VectorAt {
  TpsPoint base;
  Vec components;

  VectorAt(TpsPoint b, Vec c) : base(std::move(b)), components(std::move(c)) {
    detail::check_based(base, components, "VectorAt: component length != 2n+1");
  }
};

// Cotangent vector, components in the dual order (dw, dq^a, dp_a).
struct CovectorAt {
  TpsPoint base;
  Vec components;

  CovectorAt(TpsPoint b, Vec c) : base(std::move(b)), components(std::move(c)) {
    detail::check_based(base, components, "CovectorAt: component length != 2n+1");
  }

  double pair(const VectorAt& v) const { return components.dot(v.components); }
};

// Deterministic generator for test suites: the bit-to-double mapping is fixed
// here instead of relying on std::uniform_real_distribution, which is
// implementation-defined and would break byte-identical golden files.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed ? seed : 0x9e3779b97f4a7c15ull) {}

  double uniform01() {
    return static_cast<double>(next() >> 11) * 0x1.0p-53;
  }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

  Vec uniform_vec(int len, double lo, double hi) {
    Vec v(len);
    for (int i = 0; i < len; ++i) v(i) = uniform(lo, hi);
    return v;
  }

  // Random phase-space point; p-components drawn from [p_lo, p_hi] so that
  // suites needing p_i > 0 can ask for it explicitly.
  TpsPoint point(int n, double box = 2.0, double p_lo = 0.5, double p_hi = 5.0) {
    const double w = uniform(-box, box);
    Vec q = uniform_vec(n, -box, box);
    Vec p = uniform_vec(n, p_lo, p_hi);
    return TpsPoint(w, q, p);
  }

 private:
  // xorshift* — stable across platforms.
  std::uint64_t next() {
    std::uint64_t x = state_;
    x ^= x >> 12;
    x ^= x << 25;
    x ^= x >> 27;
    state_ = x;
    return x * 0x2545f4914f6cdd1dull;
  }

  std::uint64_t state_;
};

}  // namespace tps
