#pragma once

#include <charconv>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>
#include <string_view>

#include "parabola/arith.hpp"

namespace parabola {

/// Signed fraction num/den in lowest terms with den >= 1.
struct Fraction {
  i64 num = 0;
  i64 den = 1;

  Fraction() = default;
  Fraction(i64 n, i64 d) : num(n), den(d) {
    if (d == 0) throw std::invalid_argument("Fraction: zero denominator");
    if (den < 0) {
      num = -num;
      den = -den;
    }
    const i64 g = std::gcd(num < 0 ? -num : num, den);
    if (g > 1) {
      num /= g;
      den /= g;
    }
  }

  double to_double() const { return static_cast<double>(num) / static_cast<double>(den); }
  std::string to_string() const { return std::to_string(num) + "/" + std::to_string(den); }

  friend bool operator==(const Fraction&, const Fraction&) = default;
  friend bool operator<(const Fraction& a, const Fraction& b) {
    return static_cast<i128>(a.num) * b.den < static_cast<i128>(b.num) * a.den;
  }
  friend bool operator<=(const Fraction& a, const Fraction& b) { return !(b < a); }
};

namespace detail {

inline i64 parse_integer(std::string_view s, std::string_view what) {
  i64 value = 0;
  const char* first = s.data();
  const char* last = s.data() + s.size();
  if (!s.empty() && *first == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc{} || ptr != last || first == last) {
    throw std::invalid_argument(std::string(what) + ": expected an integer, got '" + std::string(s) + "'");
  }
  return value;
}

}  // namespace detail

/// Parses "N/D" or "N". Decimal notation is rejected.
inline Fraction parse_fraction(std::string_view text) {
  const auto slash = text.find('/');
  if (slash == std::string_view::npos) return {detail::parse_integer(text, "fraction"), 1};
  const i64 num = detail::parse_integer(text.substr(0, slash), "fraction numerator");
  const i64 den = detail::parse_integer(text.substr(slash + 1), "fraction denominator");
  if (den == 0) throw std::invalid_argument("fraction: zero denominator");
  return {num, den};
}

/// Parses a real given either as a decimal or as a fraction "N/D".
inline double parse_real(std::string_view text) {
  if (text.find('/') != std::string_view::npos) return parse_fraction(text).to_double();
  double value = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || ptr != text.data() + text.size() || text.empty()) {
    throw std::invalid_argument("expected a real number, got '" + std::string(text) + "'");
  }
  return value;
}

/// Best rational approximation of x >= 0 with denominator at most max_den,
/// from continued-fraction convergents and the final semiconvergent.
inline Fraction best_rational(double x, i64 max_den) {
  if (!(x >= 0) || !std::isfinite(x)) throw std::invalid_argument("best_rational: x must be finite and non-negative");
  if (max_den < 1) throw std::invalid_argument("best_rational: max_den must be positive");
  i64 p0 = 0, q0 = 1, p1 = 1, q1 = 0;
  long double y = x;
  for (int iter = 0; iter < 64; ++iter) {
    const long double a_ld = std::floor(y);
    if (a_ld > 9.0e18L) break;
    const i64 a = static_cast<i64>(a_ld);
    const i128 p2 = static_cast<i128>(a) * p1 + p0;
    const i128 q2 = static_cast<i128>(a) * q1 + q0;
    if (q2 > max_den || p2 > (i128{1} << 62)) {
      if (q1 == 0) break;
      const i64 k = (max_den - q0) / q1;
      const i64 ps = k * p1 + p0, qs = k * q1 + q0;
      const long double err_semi = std::fabs(static_cast<long double>(ps) / qs - x);
      const long double err_conv = std::fabs(static_cast<long double>(p1) / q1 - x);
      if (qs >= 1 && err_semi < err_conv) return {ps, qs};
      break;
    }
    p0 = p1;
    q0 = q1;
    p1 = static_cast<i64>(p2);
    q1 = static_cast<i64>(q2);
    const long double frac = y - a_ld;
    if (std::fabs(static_cast<long double>(p1) / q1 - x) <= 1e-15L * static_cast<long double>(x) || frac <= 0) break;
    y = 1 / frac;
  }
  if (q1 == 0) return {0, 1};
  return {p1, q1};
}

}  // namespace parabola
