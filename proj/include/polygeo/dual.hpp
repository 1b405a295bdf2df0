#pragma once

#include <cmath>

namespace polygeo {

// Forward-mode scalar carrying one derivative slot. Used to differentiate the
// metric kernel exactly (path-energy gradients, gradient cross-checks).
struct Dual {
  double val = 0.0;
  double dot = 0.0;

  Dual() = default;
  Dual(double v) : val(v) {}  // NOLINT: implicit promotion of constants
  Dual(double v, double d) : val(v), dot(d) {}

  Dual& operator+=(const Dual& o) {
    val += o.val;
    dot += o.dot;
    return *this;
  }
  Dual& operator-=(const Dual& o) {
    val -= o.val;
    dot -= o.dot;
    return *this;
  }
  Dual& operator*=(const Dual& o) {
    dot = dot * o.val + val * o.dot;
    val *= o.val;
    return *this;
  }
  Dual& operator/=(const Dual& o) {
    const double inv = 1.0 / o.val;
    val *= inv;
    dot = (dot - val * o.dot) * inv;
    return *this;
  }
};

inline Dual operator+(Dual a, const Dual& b) { return a += b; }
inline Dual operator-(Dual a, const Dual& b) { return a -= b; }
inline Dual operator*(Dual a, const Dual& b) { return a *= b; }
inline Dual operator/(Dual a, const Dual& b) { return a /= b; }
inline Dual operator-(const Dual& a) { return {-a.val, -a.dot}; }
inline Dual operator+(const Dual& a) { return a; }

inline bool operator<(const Dual& a, const Dual& b) { return a.val < b.val; }
inline bool operator>(const Dual& a, const Dual& b) { return a.val > b.val; }
inline bool operator<=(const Dual& a, const Dual& b) { return a.val <= b.val; }
inline bool operator>=(const Dual& a, const Dual& b) { return a.val >= b.val; }

inline Dual sqrt(const Dual& a) {
  const double r = std::sqrt(a.val);
  return {r, a.dot / (2.0 * r)};
}

inline double value_of(double x) { return x; }
inline double value_of(const Dual& x) { return x.val; }

}  // namespace polygeo
