#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <cstddef>

namespace natanzon {

/// Truncated Taylor series a_0 + a_1 t + ... + a_N t^N in a local variable t.
/// Arithmetic is exact up to the truncation order, so derivatives at t = 0 are
/// free of step-size error.
template <class S, int N>
class Jet {
 public:
  static constexpr int order = N;
  using scalar_type = S;

  Jet() = default;
  Jet(S value) { c_[0] = value; }  // NOLINT(google-explicit-constructor)
  Jet(double value) requires(!std::is_same_v<S, double>) { c_[0] = value; }  // NOLINT

  /// x0 + t
  static Jet variable(S x0) {
    Jet j(x0);
    if constexpr (N > 0) j.c_[1] = S(1.0);
    return j;
  }

  S& operator[](std::size_t i) { return c_[i]; }
  const S& operator[](std::size_t i) const { return c_[i]; }
  S value() const { return c_[0]; }

  /// k-th derivative at t = 0.
  S derivative_at_zero(int k) const {
    S factorial = 1.0;
    for (int i = 2; i <= k; ++i) factorial *= static_cast<double>(i);
    return c_[k] * factorial;
  }

  /// d/dt, losing the top coefficient.
  Jet derivative() const {
    Jet d;
    for (int i = 0; i < N; ++i) d.c_[i] = c_[i + 1] * static_cast<double>(i + 1);
    return d;
  }

  /// Antiderivative vanishing at t = 0, truncated.
  Jet integral() const {
    Jet q;
    for (int i = 0; i < N; ++i) q.c_[i + 1] = c_[i] / static_cast<double>(i + 1);
    return q;
  }

  Jet operator-() const {
    Jet n;
    for (int i = 0; i <= N; ++i) n.c_[i] = -c_[i];
    return n;
  }

  Jet& operator+=(const Jet& o) {
    for (int i = 0; i <= N; ++i) c_[i] += o.c_[i];
    return *this;
  }
  Jet& operator-=(const Jet& o) {
    for (int i = 0; i <= N; ++i) c_[i] -= o.c_[i];
    return *this;
  }
  Jet& operator*=(const Jet& o) { return *this = *this * o; }
  Jet& operator/=(const Jet& o) { return *this = *this / o; }

  friend Jet operator+(Jet a, const Jet& b) { return a += b; }
  friend Jet operator-(Jet a, const Jet& b) { return a -= b; }

  friend Jet operator*(const Jet& a, const Jet& b) {
    Jet out;
    for (int i = 0; i <= N; ++i)
      for (int j = 0; i + j <= N; ++j) out.c_[i + j] += a.c_[i] * b.c_[j];
    return out;
  }

  friend Jet operator/(const Jet& a, const Jet& b) {
    Jet q;
    for (int k = 0; k <= N; ++k) {
      S acc = a.c_[k];
      for (int j = 1; j <= k; ++j) acc -= b.c_[j] * q.c_[k - j];
      q.c_[k] = acc / b.c_[0];
    }
    return q;
  }

  friend Jet sqrt(const Jet& a) {
    using std::sqrt;
    Jet s;
    s.c_[0] = sqrt(a.c_[0]);
    for (int k = 1; k <= N; ++k) {
      S acc = a.c_[k];
      for (int j = 1; j < k; ++j) acc -= s.c_[j] * s.c_[k - j];
      s.c_[k] = acc / (2.0 * s.c_[0]);
    }
    return s;
  }

  friend Jet exp(const Jet& a) {
    using std::exp;
    // e' = a' e
    Jet e;
    e.c_[0] = exp(a.c_[0]);
    for (int k = 1; k <= N; ++k) {
      S acc = 0.0;
      for (int j = 1; j <= k; ++j) acc += static_cast<double>(j) * a.c_[j] * e.c_[k - j];
      e.c_[k] = acc / static_cast<double>(k);
    }
    return e;
  }

 private:
  std::array<S, N + 1> c_{};
};

}  // namespace natanzon
