#pragma once

// Quadratic Gauss sums G(j, q) = sum_{a=1}^{q} e(j a^2 / q).

#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>
#include <string>

#include "parabola/arith.hpp"
#include "parabola/gaussian_unit.hpp"

namespace parabola {

/// Exact value scale * unit * sqrt(radicand). A vanishing sum has unit zero
/// and radicand 0.
struct ExactGaussSum {
  u64 scale = 1;
  u64 radicand = 0;
  GaussianUnit unit = GaussianUnit::zero;

  bool is_zero() const { return unit == GaussianUnit::zero; }

  /// |value|^2, exact.
  u128 norm_squared() const {
    return static_cast<u128>(scale) * scale * radicand * static_cast<u64>(norm(unit));
  }

  std::complex<double> to_complex() const {
    const long double mag = static_cast<long double>(scale) * std::sqrt(static_cast<long double>(radicand));
    GaussianInt z = to_gaussian(unit);
    return {static_cast<double>(mag * z.re), static_cast<double>(mag * z.im)};
  }

  friend bool operator==(const ExactGaussSum&, const ExactGaussSum&) = default;
};

/// 1 for m = 1 (mod 4), i for m = 3 (mod 4).
inline GaussianUnit epsilon(i64 m) {
  if (m % 2 == 0) throw std::invalid_argument("epsilon: argument must be odd");
  return reduce_mod(m, 4) == 1 ? GaussianUnit::one : GaussianUnit::i;
}

inline ExactGaussSum gauss_sum_exact(u64 j, u64 q) {
  if (j == 0 || q == 0) throw std::invalid_argument("gauss_sum_exact: j and q must be positive");
  if (q >= kMaxOperand || j >= kMaxOperand) throw std::invalid_argument("gauss_sum_exact: operands must be below 2^63");
  const u64 d = std::gcd(j, q);
  const u64 q1 = q / d;
  const u64 j1 = j / d;
  ExactGaussSum g;
  g.scale = d;
  if (q1 % 4 == 2) return g;
  g.radicand = q1;
  if (q1 % 2 == 1) {
    const int chi = jacobi(static_cast<i64>(j1), static_cast<i64>(q1));
    g.unit = chi > 0 ? epsilon(static_cast<i64>(q1)) : negate(epsilon(static_cast<i64>(q1)));
    return g;
  }
  // 4 | q1 and gcd(j1, q1) = 1 force j1 odd.
  if (j1 % 2 == 0) throw std::logic_error("gauss_sum_exact: even j1 with 4 | q1 after gcd reduction");
  const int chi = jacobi(static_cast<i64>(q1), static_cast<i64>(j1));
  GaussianUnit u = GaussianUnit::one_plus_i * inverse(epsilon(static_cast<i64>(j1)));
  g.unit = chi > 0 ? u : negate(u);
  return g;
}

/// Floating-point summation oracle. Residues j a^2 mod q are formed exactly.
inline std::complex<double> gauss_sum_direct(i64 j, u64 q) {
  if (q == 0) throw std::invalid_argument("gauss_sum_direct: q must be positive");
  const u64 jr = reduce_mod(j, q);
  long double re = 0, im = 0;
  const long double two_pi = 2 * std::numbers::pi_v<long double>;
  for (u64 a = 1; a <= q; ++a) {
    const u64 res = mul_mod(jr, mul_mod(a % q, a % q, q), q);
    const long double angle = two_pi * static_cast<long double>(res) / static_cast<long double>(q);
    re += std::cos(angle);
    im += std::sin(angle);
  }
  return {static_cast<double>(re), static_cast<double>(im)};
}

namespace detail {

inline std::string gaussian_to_string(GaussianInt z) {
  if (z.im == 0) return std::to_string(z.re);
  std::string im_part;
  if (z.im == 1) {
    im_part = "i";
  } else if (z.im == -1) {
    im_part = "-i";
  } else {
    im_part = std::to_string(z.im) + "i";
  }
  if (z.re == 0) return im_part;
  return std::to_string(z.re) + (z.im > 0 ? "+" : "") + im_part;
}

}  // namespace detail

/// Renders the value with the square part of the radicand pulled out, e.g.
/// "2+2i", "i*sqrt(3)", "(2+2i)*sqrt(2)".
inline std::string format_value(const ExactGaussSum& g) {
  if (g.is_zero()) return "0";
  const FactoredInteger rad = factorize(g.radicand);
  const u64 s = square_part(rad);
  const u64 core = g.radicand / (s * s);
  const GaussianInt coeff = static_cast<i64>(g.scale * s) * to_gaussian(g.unit);
  if (core == 1) return detail::gaussian_to_string(coeff);
  const std::string root = "sqrt(" + std::to_string(core) + ")";
  if (coeff == GaussianInt{1, 0}) return root;
  if (coeff == GaussianInt{-1, 0}) return "-" + root;
  const bool mixed = coeff.re != 0 && coeff.im != 0;
  const std::string c = detail::gaussian_to_string(coeff);
  return (mixed ? "(" + c + ")" : c) + "*" + root;
}

inline std::string describe(const ExactGaussSum& g) {
  return format_value(g) + " (scale=" + std::to_string(g.scale) + ", unit=" + std::string(to_string(g.unit)) +
         ", radicand=" + std::to_string(g.radicand) + ")";
}

}  // namespace parabola
