#pragma once

#include <cmath>
#include <type_traits>

#include "tworiem/errors.hpp"

namespace tworiem {

// First-order jet: a value together with the rate of change along one
// formal perturbation direction. The underlying scalar may itself be a
// Jet, which is how second (and higher) directional derivatives are
// obtained: Jet<Jet<double>> carries the mixed partial in deriv.deriv.
template <class S>
struct Jet {
  S value{};
  S deriv{};

  Jet() = default;
  Jet(S v, S d) : value(std::move(v)), deriv(std::move(d)) {}

  Jet& operator+=(const Jet& o) {
    value += o.value;
    deriv += o.deriv;
    return *this;
  }
  Jet& operator-=(const Jet& o) {
    value -= o.value;
    deriv -= o.deriv;
    return *this;
  }
};

namespace ring {

// --- constants and projections, recursive over the jet tower ---------------

template <class S>
struct traits;

template <>
struct traits<double> {
  static double constant(double c) { return c; }
};

template <class S>
struct traits<Jet<S>> {
  static Jet<S> constant(double c) {
    return Jet<S>(traits<S>::constant(c), traits<S>::constant(0.0));
  }
};

template <class S>
S constant(double c) {
  return traits<S>::constant(c);
}
template <class S>
S zero() {
  return traits<S>::constant(0.0);
}
template <class S>
S one() {
  return traits<S>::constant(1.0);
}

inline double leading_value(double x) { return x; }
template <class S>
double leading_value(const Jet<S>& x) {
  return leading_value(x.value);
}

inline double max_abs_component(double x) { return std::fabs(x); }
template <class S>
double max_abs_component(const Jet<S>& x) {
  return std::max(max_abs_component(x.value), max_abs_component(x.deriv));
}

}  // namespace ring

// lift: embed a real constant (derivative zero).
template <class S>
S lift(double c) {
  return ring::constant<S>(c);
}

// seed: mark a value as the differentiation variable (derivative one).
template <class S>
Jet<S> seed(const S& v) {
  return Jet<S>(v, ring::one<S>());
}
inline Jet<double> seed(double v) { return Jet<double>(v, 1.0); }

// --- arithmetic -------------------------------------------------------------

template <class S>
Jet<S> operator+(const Jet<S>& a, const Jet<S>& b) {
  return {a.value + b.value, a.deriv + b.deriv};
}
template <class S>
Jet<S> operator-(const Jet<S>& a, const Jet<S>& b) {
  return {a.value - b.value, a.deriv - b.deriv};
}
template <class S>
Jet<S> operator-(const Jet<S>& a) {
  return {-a.value, -a.deriv};
}
template <class S>
Jet<S> operator*(const Jet<S>& a, const Jet<S>& b) {
  return {a.value * b.value, a.value * b.deriv + a.deriv * b.value};
}

inline double recip(double x) {
  if (x == 0.0) throw DomainError("recip: division by zero");
  return 1.0 / x;
}
template <class S>
Jet<S> recip(const Jet<S>& x) {
  S inv = recip(x.value);
  return {inv, -x.deriv * inv * inv};
}

template <class S>
Jet<S> operator/(const Jet<S>& a, const Jet<S>& b) {
  return a * recip(b);
}

// mixed real/jet arithmetic
template <class S>
Jet<S> operator+(const Jet<S>& a, double c) {
  return {a.value + ring::constant<S>(c), a.deriv};
}
template <class S>
Jet<S> operator+(double c, const Jet<S>& a) {
  return a + c;
}
template <class S>
Jet<S> operator-(const Jet<S>& a, double c) {
  return {a.value - ring::constant<S>(c), a.deriv};
}
template <class S>
Jet<S> operator-(double c, const Jet<S>& a) {
  return {ring::constant<S>(c) - a.value, -a.deriv};
}
template <class S>
Jet<S> operator*(const Jet<S>& a, double c) {
  S cc = ring::constant<S>(c);
  return {a.value * cc, a.deriv * cc};
}
template <class S>
Jet<S> operator*(double c, const Jet<S>& a) {
  return a * c;
}
template <class S>
Jet<S> operator/(const Jet<S>& a, double c) {
  return a * recip(c);
}
template <class S>
Jet<S> operator/(double c, const Jet<S>& a) {
  return ring::constant<Jet<S>>(c) / a;
}

// --- elementary functions (chain rule, domains checked at the leaves) ------

using std::cos;
using std::exp;
using std::sin;

inline double ln(double x) {
  if (!(x > 0.0)) throw DomainError("ln: argument must be positive");
  return std::log(x);
}
inline double sqrt_checked(double x) {
  if (!(x > 0.0)) throw DomainError("sqrt: argument must be positive");
  return std::sqrt(x);
}
inline double abs_val(double x) { return std::fabs(x); }

template <class S>
Jet<S> sin(const Jet<S>& x) {
  return {sin(x.value), x.deriv * cos(x.value)};
}
template <class S>
Jet<S> cos(const Jet<S>& x) {
  return {cos(x.value), -x.deriv * sin(x.value)};
}
template <class S>
Jet<S> exp(const Jet<S>& x) {
  S e = exp(x.value);
  return {e, x.deriv * e};
}
template <class S>
Jet<S> ln(const Jet<S>& x) {
  return {ln(x.value), x.deriv * recip(x.value)};
}
template <class S>
Jet<S> sqrt_checked(const Jet<S>& x) {
  S r = sqrt_checked(x.value);
  return {r, x.deriv * recip(r) * 0.5};
}
template <class S>
Jet<S> abs_val(const Jet<S>& x) {
  double lead = ring::leading_value(x.value);
  if (lead == 0.0) throw DomainError("abs: not differentiable at zero");
  return lead > 0.0 ? x : -x;
}

// Integer powers by repeated multiplication; no positivity requirement.
template <class S>
S powi(const S& x, long long n) {
  if (n < 0) return recip(powi(x, -n));
  S acc = ring::one<S>();
  S base = x;
  unsigned long long k = static_cast<unsigned long long>(n);
  while (k != 0) {
    if (k & 1ULL) acc = acc * base;
    base = base * base;
    k >>= 1;
  }
  return acc;
}
inline double powi(double x, long long n) {
  if (n < 0) return 1.0 / powi(x, -n);
  double acc = 1.0, base = x;
  unsigned long long k = static_cast<unsigned long long>(n);
  while (k != 0) {
    if (k & 1ULL) acc *= base;
    base *= base;
    k >>= 1;
  }
  return acc;
}

// General power: requires a positive base (branch-cut free).
template <class S>
S pow_general(const S& base, const S& expo) {
  if (!(ring::leading_value(base) > 0.0))
    throw DomainError("pow: non-integer exponent requires positive base");
  return exp(expo * ln(base));
}
inline double pow_general(double base, double expo) {
  if (!(base > 0.0))
    throw DomainError("pow: non-integer exponent requires positive base");
  return std::pow(base, expo);
}

}  // namespace tworiem
