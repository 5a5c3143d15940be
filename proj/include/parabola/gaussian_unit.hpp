#pragma once

#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string_view>

namespace parabola {

/// Gaussian integer a + bi.
struct GaussianInt {
  std::int64_t re = 0;
  std::int64_t im = 0;

  std::int64_t norm() const { return re * re + im * im; }
  friend GaussianInt operator*(GaussianInt x, GaussianInt y) {
    return {x.re * y.re - x.im * y.im, x.re * y.im + x.im * y.re};
  }
  friend GaussianInt operator*(std::int64_t k, GaussianInt x) { return {k * x.re, k * x.im}; }
  friend bool operator==(const GaussianInt&, const GaussianInt&) = default;
};

/// The Gaussian integers of norm 0, 1 or 2.
enum class GaussianUnit {
  zero,
  one,
  i,
  minus_one,
  minus_i,
  one_plus_i,
  one_minus_i,
  minus_one_plus_i,
  minus_one_minus_i,
};

inline constexpr GaussianUnit kAllGaussianUnits[] = {
    GaussianUnit::zero,         GaussianUnit::one,          GaussianUnit::i,
    GaussianUnit::minus_one,    GaussianUnit::minus_i,      GaussianUnit::one_plus_i,
    GaussianUnit::one_minus_i,  GaussianUnit::minus_one_plus_i, GaussianUnit::minus_one_minus_i,
};

inline GaussianInt to_gaussian(GaussianUnit u) {
  switch (u) {
    case GaussianUnit::zero: return {0, 0};
    case GaussianUnit::one: return {1, 0};
    case GaussianUnit::i: return {0, 1};
    case GaussianUnit::minus_one: return {-1, 0};
    case GaussianUnit::minus_i: return {0, -1};
    case GaussianUnit::one_plus_i: return {1, 1};
    case GaussianUnit::one_minus_i: return {1, -1};
    case GaussianUnit::minus_one_plus_i: return {-1, 1};
    case GaussianUnit::minus_one_minus_i: return {-1, -1};
  }
  throw std::logic_error("to_gaussian: bad tag");
}

inline GaussianUnit from_gaussian(GaussianInt z) {
  for (GaussianUnit u : kAllGaussianUnits) {
    if (to_gaussian(u) == z) return u;
  }
  throw std::logic_error("from_gaussian: norm exceeds 2");
}

inline GaussianUnit operator*(GaussianUnit a, GaussianUnit b) {
  return from_gaussian(to_gaussian(a) * to_gaussian(b));
}

inline GaussianUnit negate(GaussianUnit u) { return from_gaussian(-1 * to_gaussian(u)); }

inline std::int64_t norm(GaussianUnit u) { return to_gaussian(u).norm(); }

/// Multiplicative inverse of a norm-1 unit.
inline GaussianUnit inverse(GaussianUnit u) {
  GaussianInt z = to_gaussian(u);
  if (z.norm() != 1) throw std::invalid_argument("inverse: only norm-1 units are invertible");
  return from_gaussian({z.re, -z.im});
}

inline std::complex<double> to_complex(GaussianUnit u) {
  GaussianInt z = to_gaussian(u);
  return {static_cast<double>(z.re), static_cast<double>(z.im)};
}

inline std::string_view to_string(GaussianUnit u) {
  switch (u) {
    case GaussianUnit::zero: return "0";
    case GaussianUnit::one: return "1";
    case GaussianUnit::i: return "i";
    case GaussianUnit::minus_one: return "-1";
    case GaussianUnit::minus_i: return "-i";
    case GaussianUnit::one_plus_i: return "1+i";
    case GaussianUnit::one_minus_i: return "1-i";
    case GaussianUnit::minus_one_plus_i: return "-1+i";
    case GaussianUnit::minus_one_minus_i: return "-1-i";
  }
  return "?";
}

}  // namespace parabola
