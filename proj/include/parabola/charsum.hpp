#pragma once

// Real characters built from Jacobi symbols and the two characters mod 4,
// short character sums, and empirical Burgess ratios.

#include <cmath>
#include <cstdlib>
#include <optional>
#include <stdexcept>
#include <string_view>
#include <vector>

#include "parabola/arith.hpp"
#include "parabola/parallel.hpp"

namespace parabola {

enum class Mod4Twist { principal, quadratic };

inline std::string_view to_string(Mod4Twist t) { return t == Mod4Twist::principal ? "principal" : "quadratic"; }

/// chi_0 (principal) and chi_1 (quadratic) modulo 4.
inline int mod4_character(Mod4Twist t, u64 n) {
  if (n % 2 == 0) return 0;
  if (t == Mod4Twist::principal) return 1;
  return n % 4 == 1 ? 1 : -1;
}

/// Kronecker symbol (q/n) for n >= 1: (q/p) Jacobi at odd n, extended to even
/// n by complete multiplicativity with (q/2) = 0 for even q, +1 for
/// q = +-1 (mod 8) and -1 for q = +-3 (mod 8).
inline int kronecker_bottom(u64 q, u64 n) {
  if (n == 0) return q == 1 ? 1 : 0;
  int sign = 1;
  if (n % 2 == 0) {
    if (q % 2 == 0) return 0;
    const int two = (q % 8 == 1 || q % 8 == 7) ? 1 : -1;
    while (n % 2 == 0) {
      n /= 2;
      sign *= two;
    }
  }
  return sign * jacobi(static_cast<i64>(q % n), static_cast<i64>(n));
}

/// A real Dirichlet character n -> {-1, 0, 1}.
class RealCharacter {
 public:
  enum class Kind { jacobi_top, jacobi_bottom, mod4_principal, mod4_quadratic, twisted_bottom };

  static RealCharacter jacobi_top(u64 q1) {
    if (q1 == 0 || q1 % 2 == 0) throw std::invalid_argument("jacobi_top: modulus must be odd");
    return {Kind::jacobi_top, q1, std::nullopt, q1};
  }
  static RealCharacter jacobi_bottom(u64 q1) { return {Kind::jacobi_bottom, q1, std::nullopt, 4 * q1}; }
  static RealCharacter mod4(Mod4Twist t) {
    return {t == Mod4Twist::principal ? Kind::mod4_principal : Kind::mod4_quadratic, 1, t, 4};
  }
  static RealCharacter twisted(u64 q1, Mod4Twist t) { return {Kind::twisted_bottom, q1, t, 4 * q1}; }

  Kind kind() const { return kind_; }
  u64 q1() const { return q1_; }
  std::optional<Mod4Twist> twist() const { return twist_; }
  /// Upper bound for the conductor; also a period of the character.
  u64 modulus_bound() const { return modulus_bound_; }

  int operator()(u64 n) const {
    switch (kind_) {
      case Kind::jacobi_top: return jacobi(static_cast<i64>(n % q1_), static_cast<i64>(q1_));
      case Kind::jacobi_bottom: return kronecker_bottom(q1_, n);
      case Kind::mod4_principal: return mod4_character(Mod4Twist::principal, n);
      case Kind::mod4_quadratic: return mod4_character(Mod4Twist::quadratic, n);
      case Kind::twisted_bottom: {
        const int t = mod4_character(*twist_, n);
        return t == 0 ? 0 : t * kronecker_bottom(q1_, n);
      }
    }
    return 0;
  }

 private:
  RealCharacter(Kind k, u64 q1, std::optional<Mod4Twist> t, u64 bound)
      : kind_(k), q1_(q1), twist_(t), modulus_bound_(bound) {}

  Kind kind_;
  u64 q1_;
  std::optional<Mod4Twist> twist_;
  u64 modulus_bound_;
};

/// The non-principal character attached to a non-square q1: (n/q1) for odd q1,
/// chi * (q1/n) with chi one of the characters mod 4 for even q1.
inline RealCharacter character_for(const FactoredInteger& q1, std::optional<Mod4Twist> twist) {
  const u64 n = q1.value();
  if (is_perfect_square(n)) throw std::invalid_argument("character_for: q1 is a perfect square (principal character)");
  if (n % 2 == 1) {
    if (twist) throw std::invalid_argument("character_for: mod-4 twist only applies to even q1");
    return RealCharacter::jacobi_top(n);
  }
  if (!twist) throw std::invalid_argument("character_for: even q1 needs a mod-4 twist");
  return RealCharacter::twisted(n, *twist);
}

/// sum_{M < n <= M + N} chi(n), using the period modulus_bound() for long windows.
inline i64 char_sum(const RealCharacter& chi, u64 start, u64 length) {
  if (start + length >= (u64{1} << 62)) throw std::invalid_argument("char_sum: window exceeds 2^62");
  const u64 period = chi.modulus_bound();
  auto direct = [&](u64 from, u64 count) {
    i64 s = 0;
    for (u64 n = from + 1; n <= from + count; ++n) s += chi(n);
    return s;
  };
  if (length <= period) return direct(start, length);
  const u64 full = length / period;
  const u64 rest = length % period;
  return static_cast<i64>(full) * direct(0, period) + direct(start % period, rest);
}

/// Burgess exponent 3/16; the conjectural square-root bound corresponds to 0.
inline constexpr double kBurgessExponent = 3.0 / 16.0;

/// |S| / (N^{1/2} * Q^{exponent}) with Q the modulus used for the bound.
inline double burgess_ratio_value(i64 sum, u64 length, u64 modulus, double exponent = kBurgessExponent) {
  if (length == 0) throw std::invalid_argument("burgess_ratio: N must be positive");
  return static_cast<double>(std::llabs(sum)) /
         (std::sqrt(static_cast<double>(length)) * std::pow(static_cast<double>(modulus), exponent));
}

inline double burgess_ratio(const RealCharacter& chi, u64 start, u64 length, double exponent = kBurgessExponent) {
  return burgess_ratio_value(char_sum(chi, start, length), length, chi.modulus_bound(), exponent);
}

enum class ParityFilter { all, odd, even };

/// Windows M in {0, step, ..., max_start}, N in [1, length_factor * q1].
struct WindowRule {
  u64 max_start = 0;
  u64 start_step = 1;
  u64 length_factor = 4;
};

struct BurgessOptions {
  double exponent = kBurgessExponent;
  /// Use 4 q1 as the modulus for every character instead of modulus_bound().
  bool uniform_modulus = true;
  ParityFilter parity = ParityFilter::all;
  unsigned threads = 1;
};

/// Extremal window of one character.
struct BurgessRow {
  u64 q1 = 0;
  std::optional<Mod4Twist> twist;
  u64 start = 0;
  u64 length = 0;
  i64 sum = 0;
  double ratio = 0;
};

struct BurgessScanReport {
  std::vector<BurgessRow> rows;  // one per character, ascending q1
  std::optional<BurgessRow> sup;
  std::vector<BlockMax> blocks;  // dyadic blocks [2^k, 2^{k+1}) in q1
  u64 characters = 0;
  u64 period_violations = 0;  // non-zero complete-period sums

  bool empty() const { return rows.empty(); }
};

namespace detail {

inline BurgessRow scan_character(const RealCharacter& chi, u64 q1, const WindowRule& rule,
                                 const BurgessOptions& opt, u64& violations) {
  const u64 modulus = opt.uniform_modulus ? 4 * q1 : chi.modulus_bound();
  const u64 max_len = rule.length_factor * q1;
  const u64 period = chi.modulus_bound();
  BurgessRow best{q1, chi.twist(), 0, 0, 0, -1};
  const u64 step = std::max<u64>(rule.start_step, 1);
  for (u64 start = 0; start <= rule.max_start; start += step) {
    i64 s = 0;
    for (u64 len = 1; len <= max_len; ++len) {
      s += chi(start + len);
      const double r = burgess_ratio_value(s, len, modulus, opt.exponent);
      if (r > best.ratio) best = {q1, chi.twist(), start, len, s, r};
    }
    // Complete periods of a non-principal character sum to zero.
    i64 full = 0;
    for (u64 n = start + 1; n <= start + period; ++n) full += chi(n);
    if (full != 0) ++violations;
  }
  return best;
}

}  // namespace detail

/// Largest Burgess ratio over all non-square q1 in [lo, hi] and windows from
/// `rule`. Even q1 contribute both mod-4 twists.
inline BurgessScanReport burgess_scan(u64 lo, u64 hi, const WindowRule& rule, const BurgessOptions& opt = {}) {
  BurgessScanReport report;
  lo = std::max<u64>(lo, 2);
  if (hi < lo) return report;
  struct Partial {
    std::vector<BurgessRow> rows;
    u64 violations = 0;
  };
  const auto chunks = make_chunks(lo, hi + 1, 64);
  auto partials = parallel_map(chunks, opt.threads, [&](const Chunk& c) {
    Partial p;
    for (u64 q1 = c.lo; q1 < c.hi; ++q1) {
      if (is_perfect_square(q1)) continue;
      const bool odd = q1 % 2 == 1;
      if ((odd && opt.parity == ParityFilter::even) || (!odd && opt.parity == ParityFilter::odd)) continue;
      if (odd) {
        p.rows.push_back(detail::scan_character(RealCharacter::jacobi_top(q1), q1, rule, opt, p.violations));
      } else {
        for (Mod4Twist t : {Mod4Twist::principal, Mod4Twist::quadratic}) {
          p.rows.push_back(detail::scan_character(RealCharacter::twisted(q1, t), q1, rule, opt, p.violations));
        }
      }
    }
    return p;
  });
  for (auto& p : partials) {
    report.period_violations += p.violations;
    for (auto& row : p.rows) {
      ++report.characters;
      merge_block(report.blocks, row.q1, row.ratio);
      if (!report.sup || row.ratio > report.sup->ratio) report.sup = row;
      report.rows.push_back(std::move(row));
    }
  }
  return report;
}

}  // namespace parabola
