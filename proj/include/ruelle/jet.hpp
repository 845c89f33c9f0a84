#pragma once

#include <complex>

namespace ruelle {

// Value with first derivatives in lambda and beta.
struct Jet1 {
  std::complex<double> value{0.0};
  std::complex<double> d_lambda{0.0};
  std::complex<double> d_beta{0.0};

  static Jet1 constant(std::complex<double> v) { return {v, 0.0, 0.0}; }

  Jet1& operator+=(const Jet1& o) {
    value += o.value;
    d_lambda += o.d_lambda;
    d_beta += o.d_beta;
    return *this;
  }
  Jet1& operator-=(const Jet1& o) {
    value -= o.value;
    d_lambda -= o.d_lambda;
    d_beta -= o.d_beta;
    return *this;
  }
  Jet1& operator*=(std::complex<double> s) {
    value *= s;
    d_lambda *= s;
    d_beta *= s;
    return *this;
  }
};

inline Jet1 operator+(Jet1 u, const Jet1& v) { return u += v; }
inline Jet1 operator-(Jet1 u, const Jet1& v) { return u -= v; }
inline Jet1 operator*(Jet1 u, std::complex<double> s) { return u *= s; }
inline Jet1 operator*(std::complex<double> s, Jet1 u) { return u *= s; }

inline Jet1 operator*(const Jet1& u, const Jet1& v) {
  return {u.value * v.value, u.d_lambda * v.value + u.value * v.d_lambda,
          u.d_beta * v.value + u.value * v.d_beta};
}

inline Jet1 operator/(const Jet1& u, const Jet1& v) {
  std::complex<double> inv = 1.0 / v.value;
  std::complex<double> q = u.value * inv;
  return {q, (u.d_lambda - q * v.d_lambda) * inv, (u.d_beta - q * v.d_beta) * inv};
}

inline Jet1 exp(const Jet1& u) {
  std::complex<double> e = std::exp(u.value);
  return {e, e * u.d_lambda, e * u.d_beta};
}

}  // namespace ruelle
