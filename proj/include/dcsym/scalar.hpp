#pragma once

// Scalar types for expression evaluation: complex doubles, forward-mode
// dual numbers (nestable for higher partials) and truncated Taylor series.

#include <array>
#include <cmath>
#include <complex>
#include <stdexcept>
#include <vector>

namespace dcsym {

using Complex = std::complex<double>;

inline Complex primal(const Complex& z) { return z; }

/// Absolute value defined for (numerically) real arguments only.
inline Complex real_abs(const Complex& z, double tol) {
  if (std::abs(z.imag()) > tol * (1.0 + std::abs(z.real()))) throw std::domain_error("abs of non-real argument");
  return {std::abs(z.real()), 0.0};
}

inline double real_sign(const Complex& z) { return z.real() < 0 ? -1.0 : 1.0; }

/// v + sum_k d_k e_k with e_j e_k = 0; N independent infinitesimal directions.
template <class T, int N>
struct Dual {
  T v{};
  std::array<T, N> d{};

  Dual() = default;
  Dual(const Complex& c) : v(c) {}  // NOLINT(implicit)
  template <class U = T, class = std::enable_if_t<!std::is_same_v<U, Complex>>>
  Dual(const T& value) : v(value) {}  // NOLINT(implicit)
  Dual(const T& value, const std::array<T, N>& grad) : v(value), d(grad) {}

  static Dual seed(const T& value, int direction) {
    Dual out(value, {});
    out.d[static_cast<size_t>(direction)] = T(Complex(1.0));
    return out;
  }

  Dual& operator+=(const Dual& o) {
    v = v + o.v;
    for (int k = 0; k < N; ++k) d[k] = d[k] + o.d[k];
    return *this;
  }
  Dual& operator-=(const Dual& o) {
    v = v - o.v;
    for (int k = 0; k < N; ++k) d[k] = d[k] - o.d[k];
    return *this;
  }
};

template <class T, int N>
Complex primal(const Dual<T, N>& x) {
  return primal(x.v);
}

template <class T, int N>
Dual<T, N> operator+(Dual<T, N> a, const Dual<T, N>& b) {
  a += b;
  return a;
}
template <class T, int N>
Dual<T, N> operator-(Dual<T, N> a, const Dual<T, N>& b) {
  a -= b;
  return a;
}
template <class T, int N>
Dual<T, N> operator-(const Dual<T, N>& a) {
  Dual<T, N> out;
  out.v = -a.v;
  for (int k = 0; k < N; ++k) out.d[k] = -a.d[k];
  return out;
}
template <class T, int N>
Dual<T, N> operator*(const Dual<T, N>& a, const Dual<T, N>& b) {
  Dual<T, N> out;
  out.v = a.v * b.v;
  for (int k = 0; k < N; ++k) out.d[k] = a.d[k] * b.v + a.v * b.d[k];
  return out;
}
template <class T, int N>
Dual<T, N> operator/(const Dual<T, N>& a, const Dual<T, N>& b) {
  Dual<T, N> out;
  out.v = a.v / b.v;
  for (int k = 0; k < N; ++k) out.d[k] = (a.d[k] - out.v * b.d[k]) / b.v;
  return out;
}

// Unary functions apply the chain rule with the scalar derivative f'(v).
template <class T, int N>
Dual<T, N> chain(const Dual<T, N>& a, const T& value, const T& slope) {
  Dual<T, N> out;
  out.v = value;
  for (int k = 0; k < N; ++k) out.d[k] = slope * a.d[k];
  return out;
}

template <class T, int N>
Dual<T, N> sin(const Dual<T, N>& a) {
  using std::cos;
  using std::sin;
  return chain(a, T(sin(a.v)), T(cos(a.v)));
}
template <class T, int N>
Dual<T, N> cos(const Dual<T, N>& a) {
  using std::cos;
  using std::sin;
  return chain(a, T(cos(a.v)), T(-sin(a.v)));
}
template <class T, int N>
Dual<T, N> exp(const Dual<T, N>& a) {
  using std::exp;
  T e = exp(a.v);
  return chain(a, e, e);
}
template <class T, int N>
Dual<T, N> log(const Dual<T, N>& a) {
  using std::log;
  return chain(a, T(log(a.v)), T(T(Complex(1.0)) / a.v));
}
template <class T, int N>
Dual<T, N> sqrt(const Dual<T, N>& a) {
  using std::sqrt;
  T s = sqrt(a.v);
  return chain(a, s, T(T(Complex(0.5)) / s));
}
template <class T, int N>
Dual<T, N> real_abs(const Dual<T, N>& a, double tol) {
  T value = real_abs(a.v, tol);
  return chain(a, value, T(Complex(real_sign(primal(a.v)))));
}

/// Truncated power series sum_k c_k s^k, k = 0..order.
template <class T>
struct Taylor {
  std::vector<T> c;

  Taylor() : c(1) {}
  explicit Taylor(int order) : c(static_cast<size_t>(order + 1)) {}
  Taylor(const Complex& value) : c(1, T(value)) {}  // NOLINT(implicit)

  int order() const { return static_cast<int>(c.size()) - 1; }
  T coeff(int k) const { return k < static_cast<int>(c.size()) ? c[static_cast<size_t>(k)] : T{}; }

  /// d/ds; the top coefficient of the result is unknown and set to zero.
  Taylor derivative() const {
    Taylor out(order());
    for (int k = 0; k < order(); ++k) out.c[static_cast<size_t>(k)] = c[static_cast<size_t>(k + 1)] * T(Complex(k + 1.0));
    return out;
  }
};

template <class T>
Complex primal(const Taylor<T>& x) {
  return primal(x.c[0]);
}

namespace detail {
template <class T>
int common_order(const Taylor<T>& a, const Taylor<T>& b) {
  return std::max(a.order(), b.order());
}
template <class T>
Taylor<T> widen(const Taylor<T>& a, int order) {
  Taylor<T> out(order);
  for (int k = 0; k <= std::min(order, a.order()); ++k) out.c[static_cast<size_t>(k)] = a.c[static_cast<size_t>(k)];
  return out;
}
}  // namespace detail

template <class T>
Taylor<T> operator+(const Taylor<T>& a, const Taylor<T>& b) {
  const int n = detail::common_order(a, b);
  Taylor<T> out(n);
  for (int k = 0; k <= n; ++k) out.c[static_cast<size_t>(k)] = a.coeff(k) + b.coeff(k);
  return out;
}
template <class T>
Taylor<T> operator-(const Taylor<T>& a, const Taylor<T>& b) {
  const int n = detail::common_order(a, b);
  Taylor<T> out(n);
  for (int k = 0; k <= n; ++k) out.c[static_cast<size_t>(k)] = a.coeff(k) - b.coeff(k);
  return out;
}
template <class T>
Taylor<T> operator-(const Taylor<T>& a) {
  Taylor<T> out(a.order());
  for (int k = 0; k <= a.order(); ++k) out.c[static_cast<size_t>(k)] = -a.c[static_cast<size_t>(k)];
  return out;
}
template <class T>
Taylor<T> operator*(const Taylor<T>& a, const Taylor<T>& b) {
  const int n = detail::common_order(a, b);
  Taylor<T> out(n);
  for (int k = 0; k <= n; ++k) {
    T sum{};
    for (int j = 0; j <= k; ++j) sum = sum + a.coeff(j) * b.coeff(k - j);
    out.c[static_cast<size_t>(k)] = sum;
  }
  return out;
}
template <class T>
Taylor<T> operator/(const Taylor<T>& a, const Taylor<T>& b) {
  const int n = detail::common_order(a, b);
  Taylor<T> q(n);
  for (int k = 0; k <= n; ++k) {
    T sum = a.coeff(k);
    for (int j = 0; j < k; ++j) sum = sum - q.c[static_cast<size_t>(j)] * b.coeff(k - j);
    q.c[static_cast<size_t>(k)] = sum / b.coeff(0);
  }
  return q;
}

template <class T>
Taylor<T> exp(const Taylor<T>& a) {
  using std::exp;
  const int n = a.order();
  Taylor<T> e(n);
  e.c[0] = exp(a.c[0]);
  for (int k = 1; k <= n; ++k) {
    T sum{};
    for (int j = 1; j <= k; ++j) sum = sum + T(Complex(j)) * a.c[static_cast<size_t>(j)] * e.c[static_cast<size_t>(k - j)];
    e.c[static_cast<size_t>(k)] = sum / T(Complex(k));
  }
  return e;
}
template <class T>
Taylor<T> log(const Taylor<T>& a) {
  using std::log;
  const int n = a.order();
  Taylor<T> l(n);
  l.c[0] = log(a.c[0]);
  for (int k = 1; k <= n; ++k) {
    T sum{};
    for (int j = 1; j < k; ++j) sum = sum + T(Complex(j)) * l.c[static_cast<size_t>(j)] * a.c[static_cast<size_t>(k - j)];
    l.c[static_cast<size_t>(k)] = (a.c[static_cast<size_t>(k)] - sum / T(Complex(k))) / a.c[0];
  }
  return l;
}
template <class T>
void sin_cos(const Taylor<T>& a, Taylor<T>& s, Taylor<T>& co) {
  using std::cos;
  using std::sin;
  const int n = a.order();
  s = Taylor<T>(n);
  co = Taylor<T>(n);
  s.c[0] = sin(a.c[0]);
  co.c[0] = cos(a.c[0]);
  for (int k = 1; k <= n; ++k) {
    T ss{}, cc{};
    for (int j = 1; j <= k; ++j) {
      T ja = T(Complex(j)) * a.c[static_cast<size_t>(j)];
      ss = ss + ja * co.c[static_cast<size_t>(k - j)];
      cc = cc + ja * s.c[static_cast<size_t>(k - j)];
    }
    s.c[static_cast<size_t>(k)] = ss / T(Complex(k));
    co.c[static_cast<size_t>(k)] = -cc / T(Complex(k));
  }
}
template <class T>
Taylor<T> sin(const Taylor<T>& a) {
  Taylor<T> s, c;
  sin_cos(a, s, c);
  return s;
}
template <class T>
Taylor<T> cos(const Taylor<T>& a) {
  Taylor<T> s, c;
  sin_cos(a, s, c);
  return c;
}
template <class T>
Taylor<T> sqrt(const Taylor<T>& a) {
  using std::sqrt;
  const int n = a.order();
  Taylor<T> r(n);
  r.c[0] = sqrt(a.c[0]);
  for (int k = 1; k <= n; ++k) {
    T sum{};
    for (int j = 1; j < k; ++j) sum = sum + r.c[static_cast<size_t>(j)] * r.c[static_cast<size_t>(k - j)];
    r.c[static_cast<size_t>(k)] = (a.c[static_cast<size_t>(k)] - sum) / (T(Complex(2.0)) * r.c[0]);
  }
  return r;
}
template <class T>
Taylor<T> real_abs(const Taylor<T>& a, double tol) {
  real_abs(a.c[0], tol);
  const double sign = real_sign(primal(a.c[0]));
  Taylor<T> out(a.order());
  for (int k = 0; k <= a.order(); ++k) out.c[static_cast<size_t>(k)] = T(Complex(sign)) * a.c[static_cast<size_t>(k)];
  return out;
}

}  // namespace dcsym
