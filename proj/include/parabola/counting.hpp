#pragma once

// A(q, delta) = #{1 <= a <= q : ||a^2 / q|| < delta}, its twisted and
// moment variants, the Fejer-kernel majorant, and range scans against the
// three-term upper bound delta q + r^{1+eps} + delta^{1/2} q^{11/16+eps}.

#include <cmath>
#include <functional>
#include <map>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "parabola/arith.hpp"
#include "parabola/gauss.hpp"
#include "parabola/parallel.hpp"
#include "parabola/rational.hpp"

namespace parabola {

inline constexpr double kDefaultEpsilon = 0.05;
inline constexpr double kBurgessCountExponent = 11.0 / 16.0;

/// delta = num/den in lowest terms with 0 <= delta < 1/2.
class RationalThreshold {
 public:
  RationalThreshold() = default;
  RationalThreshold(u64 num, u64 den) {
    if (den == 0) throw std::invalid_argument("delta: zero denominator");
    if (den >= kMaxOperand || num >= kMaxOperand) throw std::invalid_argument("delta: components must be below 2^63");
    if (static_cast<u128>(num) * 2 >= den) throw std::invalid_argument("delta must be < 1/2, got " + std::to_string(num) + "/" + std::to_string(den));
    const u64 g = std::gcd(num, den);
    num_ = num / g;
    den_ = den / g;
  }

  static RationalThreshold parse(std::string_view text) {
    if (text.find('/') == std::string_view::npos) throw std::invalid_argument("delta must be given as NUM/DEN");
    const Fraction f = parse_fraction(text);
    if (f.num < 0) throw std::invalid_argument("delta must be non-negative");
    return {static_cast<u64>(f.num), static_cast<u64>(f.den)};
  }

  u64 num() const { return num_; }
  u64 den() const { return den_; }
  double to_double() const { return static_cast<double>(num_) / static_cast<double>(den_); }
  std::string to_string() const { return std::to_string(num_) + "/" + std::to_string(den_); }

  friend bool operator==(const RationalThreshold&, const RationalThreshold&) = default;

 private:
  u64 num_ = 0;
  u64 den_ = 1;
};

/// den * min(m, q - m) < num * q, i.e. ||m / q|| < num/den.
inline bool below_threshold(u64 m, u64 q, u64 num, u64 den) {
  const u64 dist = std::min(m, q - m);
  return static_cast<u128>(den) * dist < static_cast<u128>(num) * q;
}

inline u64 count_bruteforce(u64 q, const RationalThreshold& delta) {
  if (q == 0) throw std::invalid_argument("count: q must be positive");
  u64 count = 0;
  for (u64 a = 1; a <= q; ++a) {
    const u64 m = mul_mod(a % q, a % q, q);
    if (below_threshold(m, q, delta.num(), delta.den())) ++count;
  }
  return count;
}

namespace detail {

// Square-root counting with the prime powers of q precomputed.
class RootCounter {
 public:
  explicit RootCounter(const FactoredInteger& q) {
    for (const auto& [p, e] : q.factors()) {
      parts_.push_back({p, e, checked_pow(p, e), checked_pow(p, e / 2)});
    }
  }

  u64 operator()(u64 m) const {
    u64 total = 1;
    for (const auto& part : parts_) {
      const u64 r = m % part.pk;
      u64 c;
      if (r == 0) {
        c = part.zero_count;
      } else {
        c = mod_sqrt_count(r, part.p, part.e);
      }
      if (c == 0) return 0;
      total *= c;
    }
    return total;
  }

 private:
  struct Part {
    u64 p;
    unsigned e;
    u64 pk;
    u64 zero_count;
  };
  std::vector<Part> parts_;
};

}  // namespace detail

/// Same quantity as count_bruteforce, by summing root counts of x^2 = m (mod q)
/// over the admissible residues m. Every residue class mod q has exactly one
/// representative in {1, ..., q}, so no restriction step is needed.
inline u64 count_modular(const FactoredInteger& q, const RationalThreshold& delta) {
  const u64 n = q.value();
  if (delta.num() == 0) return 0;
  // Largest t with den * t < num * q; below n / 2 since delta < 1/2.
  const u64 reach = static_cast<u64>((static_cast<u128>(delta.num()) * n - 1) / delta.den());
  const detail::RootCounter roots(q);
  u64 total = roots(0);
  for (u64 t = 1; t <= reach; ++t) total += roots(t) + roots(n - t);
  return total;
}

inline u64 fejer_order(const RationalThreshold& delta) {
  if (delta.num() == 0) throw std::invalid_argument("fejer: delta must be positive");
  const u64 J = delta.den() / (2 * delta.num());
  if (J == 0) throw std::invalid_argument("fejer: J = floor(1/(2 delta)) is zero");
  return J;
}

/// F_J(m/q) = J^{-2} (sin(pi J x) / sin(pi x))^2 with F_J(0) = 1.
inline double fejer_kernel(u64 J, u64 m, u64 q) {
  m %= q;
  if (m == 0) return 1.0;
  const long double x = std::numbers::pi_v<long double> * static_cast<long double>(m) / static_cast<long double>(q);
  const long double num = std::sin(static_cast<long double>(J) * x);
  const long double den = static_cast<long double>(J) * std::sin(x);
  return static_cast<double>((num / den) * (num / den));
}

/// sum_{a<=q} F_J(a^2/q), computed from exact Gauss sums:
/// q/J + 2 Re sum_{j=1}^{J} (J - j)/J^2 G(j, q).
inline double fejer_majorant(u64 q, const RationalThreshold& delta) {
  if (q == 0) throw std::invalid_argument("fejer: q must be positive");
  const u64 J = fejer_order(delta);
  const long double J2 = static_cast<long double>(J) * J;
  long double total = static_cast<long double>(q) / J;
  for (u64 j = 1; j < J; ++j) {
    total += 2 * static_cast<long double>(J - j) / J2 * gauss_sum_exact(j, q).to_complex().real();
  }
  return static_cast<double>(total);
}

/// Same majorant from the trigonometric polynomial evaluated at each a^2/q.
inline double fejer_majorant_direct(u64 q, const RationalThreshold& delta) {
  if (q == 0) throw std::invalid_argument("fejer: q must be positive");
  const u64 J = fejer_order(delta);
  const long double J2 = static_cast<long double>(J) * J;
  const long double two_pi = 2 * std::numbers::pi_v<long double>;
  long double total = 0;
  for (u64 a = 1; a <= q; ++a) {
    const u64 m = mul_mod(a % q, a % q, q);
    long double f = static_cast<long double>(J) / J2;
    for (u64 j = 1; j < J; ++j) {
      const u64 phase = mul_mod(j % q, m, q);
      f += 2 * static_cast<long double>(J - j) / J2 * std::cos(two_pi * phase / static_cast<long double>(q));
    }
    total += f;
  }
  return static_cast<double>(total);
}

/// (delta q, r^{1+eps}, delta^{1/2} q^{exponent+eps}).
struct BoundTerms {
  double linear = 0;
  double square_part = 0;
  double character = 0;
  double sum() const { return linear + square_part + character; }
};

inline BoundTerms theorem2_bound(const FactoredInteger& q, const RationalThreshold& delta,
                                 double epsilon = kDefaultEpsilon, double exponent = kBurgessCountExponent) {
  if (epsilon < 0) throw std::invalid_argument("bound: epsilon must be non-negative");
  const double qd = static_cast<double>(q.value());
  const double d = delta.to_double();
  const double r = static_cast<double>(square_part(q));
  return {d * qd, std::pow(r, 1 + epsilon), std::sqrt(d) * std::pow(qd, exponent + epsilon)};
}

enum class CountMethod { brute, modular, fejer_majorant };

inline std::string_view to_string(CountMethod m) {
  switch (m) {
    case CountMethod::brute: return "brute";
    case CountMethod::modular: return "modular";
    case CountMethod::fejer_majorant: return "fejer_majorant";
  }
  return "?";
}

inline CountMethod parse_count_method(std::string_view s) {
  if (s == "brute") return CountMethod::brute;
  if (s == "modular") return CountMethod::modular;
  if (s == "fejer" || s == "fejer_majorant") return CountMethod::fejer_majorant;
  throw std::invalid_argument("unknown count method '" + std::string(s) + "'");
}

struct CountReport {
  u64 q = 1;
  RationalThreshold delta;
  u64 count = 0;
  CountMethod method = CountMethod::modular;
  u64 r = 1;
  BoundTerms bound;
  double ratio = 0;
};

/// For the Fejer method `count` holds floor((pi^2/4) * majorant), an integer
/// upper bound for A(q, delta).
inline CountReport count_report(const FactoredInteger& q, const RationalThreshold& delta, CountMethod method,
                                double epsilon = kDefaultEpsilon, double exponent = kBurgessCountExponent) {
  CountReport rep;
  rep.q = q.value();
  rep.delta = delta;
  rep.method = method;
  rep.r = square_part(q);
  switch (method) {
    case CountMethod::brute: rep.count = count_bruteforce(rep.q, delta); break;
    case CountMethod::modular: rep.count = count_modular(q, delta); break;
    case CountMethod::fejer_majorant: {
      const double m = std::numbers::pi * std::numbers::pi / 4 * fejer_majorant(rep.q, delta);
      rep.count = static_cast<u64>(std::floor(m + 1e-9));
      break;
    }
  }
  rep.bound = theorem2_bound(q, delta, epsilon, exponent);
  rep.ratio = static_cast<double>(rep.count) / rep.bound.sum();
  return rep;
}

using DeltaRule = std::function<RationalThreshold(u64)>;

namespace detail {

// Compares x^k with q^l; exact in 128 bits, falls back to logarithms on overflow.
inline int compare_powers(u64 x, unsigned k, u64 q, unsigned l) {
  auto pow_sat = [](u64 base, unsigned e, bool& overflow) {
    u128 acc = 1;
    const u128 limit = ~u128{0} / std::max<u64>(base, 1);
    for (unsigned i = 0; i < e; ++i) {
      if (acc > limit) {
        overflow = true;
        return acc;
      }
      acc *= base;
    }
    return acc;
  };
  bool overflow = false;
  const u128 lhs = pow_sat(x, k, overflow);
  const u128 rhs = pow_sat(q, l, overflow);
  if (!overflow) return lhs < rhs ? -1 : (lhs > rhs ? 1 : 0);
  const long double a = k * std::log(static_cast<long double>(x));
  const long double b = l * std::log(static_cast<long double>(q));
  return a < b ? -1 : (a > b ? 1 : 0);
}

}  // namespace detail

/// floor(q^{num/den}) for a rational exponent in [0, 1].
inline u64 floor_rational_power(u64 q, u64 num, u64 den) {
  if (den == 0 || num > den) throw std::invalid_argument("floor_rational_power: exponent must lie in [0, 1]");
  if (q <= 1 || num == 0) return 1;
  u64 x = static_cast<u64>(std::floor(std::pow(static_cast<long double>(q), static_cast<long double>(num) / den)));
  x = std::max<u64>(x, 1);
  const auto k = static_cast<unsigned>(den), l = static_cast<unsigned>(num);
  while (x > 1 && detail::compare_powers(x, k, q, l) > 0) --x;
  while (detail::compare_powers(x + 1, k, q, l) <= 0) ++x;
  return x;
}

/// delta(q) = floor(q^{1 - tau}) / q. Values reaching 1/2 (tiny q) are capped
/// at (2q - 1)/(4q), which leaves A(q, delta) unchanged.
inline DeltaRule power_delta_rule(Fraction tau) {
  if (tau.num <= 0 || tau.num > tau.den) throw std::invalid_argument("delta rule: tau must lie in (0, 1]");
  const u64 exp_num = static_cast<u64>(tau.den - tau.num), exp_den = static_cast<u64>(tau.den);
  return [exp_num, exp_den](u64 q) {
    const u64 k = floor_rational_power(q, exp_num, exp_den);
    if (2 * static_cast<u128>(k) >= q) return RationalThreshold(2 * q - 1, 4 * q);
    return RationalThreshold(k, q);
  };
}

inline DeltaRule constant_delta_rule(RationalThreshold delta) {
  return [delta](u64) { return delta; };
}

/// Parses "pow:TAU" (TAU a fraction or "0.75"-style decimal with an exact
/// fraction reading) or "const:NUM/DEN".
inline DeltaRule parse_delta_rule(std::string_view text) {
  if (text.starts_with("pow:")) {
    const std::string_view t = text.substr(4);
    if (t.find('/') != std::string_view::npos) return power_delta_rule(parse_fraction(t));
    const auto dot = t.find('.');
    if (dot == std::string_view::npos) return power_delta_rule({detail::parse_integer(t, "tau"), 1});
    std::string digits(t.substr(0, dot));
    std::string frac(t.substr(dot + 1));
    if (frac.size() > 15) throw std::invalid_argument("delta rule: too many decimal places");
    i64 den = 1;
    for (std::size_t i = 0; i < frac.size(); ++i) den *= 10;
    const i64 whole = digits.empty() ? 0 : detail::parse_integer(digits, "tau");
    const i64 part = frac.empty() ? 0 : detail::parse_integer(frac, "tau");
    return power_delta_rule({whole * den + part, den});
  }
  if (text.starts_with("const:")) return constant_delta_rule(RationalThreshold::parse(text.substr(6)));
  throw std::invalid_argument("delta rule must be pow:TAU or const:NUM/DEN");
}

struct Theorem2Options {
  double epsilon = kDefaultEpsilon;
  double exponent = kBurgessCountExponent;
  unsigned threads = 1;
  bool keep_rows = false;
  /// When the rule yields delta = 0, count the solutions of a^2 = 0 (mod q)
  /// instead of rejecting the rule.
  bool count_exact_zero = false;
};

struct Theorem2ScanReport {
  std::vector<CountReport> rows;  // only with keep_rows
  std::optional<CountReport> sup;
  std::vector<BlockMax> blocks;   // dyadic blocks in q
  u64 scanned = 0;
  u64 min_count = 0;

  bool empty() const { return scanned == 0; }
};

inline constexpr u64 kSieveScanLimit = u64{1} << 27;

/// Ratio A(q, delta(q)) / (bound sum) for every q in [lo, hi] via count_modular.
inline Theorem2ScanReport scan_theorem2(u64 lo, u64 hi, const DeltaRule& rule, const Theorem2Options& opt = {}) {
  Theorem2ScanReport report;
  lo = std::max<u64>(lo, 1);
  if (hi < lo) return report;
  std::optional<FactorSieve> sieve;
  if (hi <= kSieveScanLimit) sieve.emplace(hi);
  struct Partial {
    std::vector<CountReport> rows;
    std::optional<CountReport> sup;
    u64 min_count = ~u64{0};
  };
  // Chunks never cross a dyadic boundary so block maxima merge by position.
  std::vector<u64> cuts;
  for (u64 p = 1; p != 0 && p <= hi; p <<= 1) cuts.push_back(p);
  const auto chunks = make_chunks(lo, hi + 1, 4096, cuts);
  auto partials = parallel_map(chunks, opt.threads, [&](const Chunk& c) {
    Partial part;
    for (u64 q = c.lo; q < c.hi; ++q) {
      const FactoredInteger fq = sieve ? sieve->factor(q) : factorize(q);
      const RationalThreshold delta = rule(q);
      CountReport rep;
      rep.q = q;
      rep.delta = delta;
      rep.method = CountMethod::modular;
      rep.r = square_part(fq);
      if (delta.num() == 0) {
        if (!opt.count_exact_zero) throw std::invalid_argument("delta rule produced delta = 0 at q = " + std::to_string(q));
        rep.count = sqrt_mod_count(0, fq);
      } else {
        rep.count = count_modular(fq, delta);
      }
      rep.bound = theorem2_bound(fq, delta, opt.epsilon, opt.exponent);
      rep.ratio = static_cast<double>(rep.count) / rep.bound.sum();
      part.min_count = std::min(part.min_count, rep.count);
      if (!part.sup || rep.ratio > part.sup->ratio) part.sup = rep;
      if (opt.keep_rows) part.rows.push_back(rep);
    }
    return part;
  });
  report.min_count = ~u64{0};
  for (auto& p : partials) {
    report.min_count = std::min(report.min_count, p.min_count);
    if (p.sup) {
      if (!report.sup || p.sup->ratio > report.sup->ratio) report.sup = p.sup;
      merge_block(report.blocks, p.sup->q, p.sup->ratio);
    }
    for (auto& row : p.rows) report.rows.push_back(std::move(row));
  }
  report.scanned = hi - lo + 1;
  return report;
}

/// Query for the twisted count sum_{a/q in [c, d], ||lambda a^2/q|| < delta} 1
/// and the moment sum over ||lambda a^2/q|| >= delta of ||.||^{-alpha}.
/// a runs over {1, ..., q}; the interval is closed.
struct TwistedQuery {
  u64 q = 1;
  RationalThreshold delta;
  Fraction lambda{1, 1};
  Fraction lo{0, 1};
  Fraction hi{1, 1};
  Fraction alpha{1, 2};

  void validate() const {
    if (q == 0) throw std::invalid_argument("twisted: q must be positive");
    if (hi < lo) throw std::invalid_argument("twisted: interval endpoints out of order");
    if (lo < Fraction{0, 1} || Fraction{1, 1} < hi) throw std::invalid_argument("twisted: interval must lie in [0, 1]");
    if (static_cast<u128>(lambda.den) * q >= kMaxOperand) throw std::invalid_argument("twisted: v * q must be below 2^63");
  }

  /// Residue modulus v * q for lambda = u / v.
  u64 modulus() const { return static_cast<u64>(lambda.den) * q; }

  /// Range of a with a/q in [lo, hi], intersected with [1, q]; empty when first > last.
  std::pair<u64, u64> a_range() const {
    // ceil(lo * q) and floor(hi * q)
    const i128 lo_num = static_cast<i128>(lo.num) * q;
    const i128 first = (lo_num + lo.den - 1) / lo.den;
    const i128 last = static_cast<i128>(hi.num) * q / hi.den;
    return {static_cast<u64>(std::max<i128>(first, 1)), static_cast<u64>(std::min<i128>(last, q))};
  }
};

namespace detail {

// Calls fn(t) with the distance numerator t = min(m, V - m), ||lambda a^2/q|| = t / V.
template <typename Fn>
void for_each_twisted_distance(const TwistedQuery& query, Fn fn) {
  query.validate();
  const u64 V = query.modulus();
  const u64 U = reduce_mod(query.lambda.num, V);
  const auto [first, last] = query.a_range();
  for (u64 a = first; a <= last && first <= last; ++a) {
    const u64 m = mul_mod(U, mul_mod(a % V, a % V, V), V);
    fn(std::min(m, V - m));
  }
}

}  // namespace detail

/// Twisted count at an arbitrary threshold num/den (may exceed 1/2).
inline u64 count_twisted_at(const TwistedQuery& query, u128 num, u128 den) {
  const u64 V = query.modulus();
  u64 count = 0;
  detail::for_each_twisted_distance(query, [&](u64 t) {
    if (den * t < num * V) ++count;
  });
  return count;
}

inline u64 count_twisted(const TwistedQuery& query) {
  return count_twisted_at(query, query.delta.num(), query.delta.den());
}

namespace detail {

inline double distance_power(u64 t, u64 V, double alpha) {
  return std::pow(static_cast<double>(t) / static_cast<double>(V), -alpha);
}

inline double checked_alpha(const TwistedQuery& query) {
  if (query.alpha.num <= 0 || Fraction(1, 2) < query.alpha) throw std::invalid_argument("moment: alpha must lie in (0, 1/2]");
  if (query.delta.num() == 0) throw std::invalid_argument("moment: delta must be positive");
  return query.alpha.to_double();
}

}  // namespace detail

/// sum over a/q in I with ||lambda a^2/q|| >= delta of ||lambda a^2/q||^{-alpha}.
/// Terms are accumulated in ascending order of the (exact) distance.
inline double moment_sum(const TwistedQuery& query) {
  const double alpha = detail::checked_alpha(query);
  const u64 V = query.modulus();
  std::map<u64, u64> histogram;
  detail::for_each_twisted_distance(query, [&](u64 t) {
    if (!below_threshold(t, V, query.delta.num(), query.delta.den())) ++histogram[t];
  });
  double total = 0;
  for (const auto& [t, mult] : histogram) total += static_cast<double>(mult) * detail::distance_power(t, V, alpha);
  return total;
}

struct DyadicShell {
  unsigned k = 0;     // distances in [2^k delta, 2^{k+1} delta)
  u64 count = 0;      // count at 2^{k+1} delta minus count at 2^k delta
};

struct DyadicMoment {
  std::vector<DyadicShell> shells;
  double resummed = 0;     // sum rebuilt from threshold counts only
  double upper_bound = 0;  // sum_k (2^k delta)^{-alpha} * shell count
};

/// The moment sum rebuilt from the twisted counting function alone: the
/// multiplicity of distance t/V is count(< (t+1)/V) - count(< t/V), grouped
/// into dyadic shells of the threshold.
inline DyadicMoment moment_sum_dyadic(const TwistedQuery& query) {
  const double alpha = detail::checked_alpha(query);
  query.validate();
  const u64 V = query.modulus();
  const u128 num = query.delta.num(), den = query.delta.den();
  DyadicMoment out;
  // Largest distance numerator is floor(V/2); shells stop once 2^k delta > 1/2.
  for (unsigned k = 0; (num << k) * 2 <= den; ++k) {
    const u128 lo_num = num << k, hi_num = num << (k + 1);
    const u64 shell = count_twisted_at(query, hi_num, den) - count_twisted_at(query, lo_num, den);
    out.shells.push_back({k, shell});
    out.upper_bound += static_cast<double>(shell) *
                       std::pow(std::ldexp(static_cast<double>(num) / static_cast<double>(den), static_cast<int>(k)), -alpha);
  }
  // Smallest t with t/V >= delta.
  const u64 t0 = static_cast<u64>((num * V + den - 1) / den);
  u64 below = count_twisted_at(query, t0, V);
  for (u64 t = t0; t <= V / 2; ++t) {
    const u64 next = count_twisted_at(query, t + 1, V);
    const u64 mult = next - below;
    below = next;
    if (mult != 0) out.resummed += static_cast<double>(mult) * detail::distance_power(t, V, alpha);
  }
  return out;
}

}  // namespace parabola
