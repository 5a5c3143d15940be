#pragma once

// Exact 64-bit integer arithmetic: factorization, Jacobi symbols, square
// parts, multiplicative functions and square roots modulo composites.

#include <algorithm>
#include <bit>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace parabola {

using u64 = std::uint64_t;
using i64 = std::int64_t;
using u128 = unsigned __int128;
using i128 = __int128;

inline constexpr u64 kMaxOperand = u64{1} << 63;

inline u64 mul_mod(u64 a, u64 b, u64 m) {
  return static_cast<u64>(static_cast<u128>(a) * b % m);
}

inline u64 pow_mod(u64 base, u64 exp, u64 m) {
  u64 result = 1 % m;
  base %= m;
  while (exp != 0) {
    if (exp & 1) result = mul_mod(result, base, m);
    base = mul_mod(base, base, m);
    exp >>= 1;
  }
  return result;
}

/// Non-negative residue of a signed value.
inline u64 reduce_mod(i64 a, u64 m) {
  i128 r = static_cast<i128>(a) % static_cast<i128>(m);
  if (r < 0) r += m;
  return static_cast<u64>(r);
}

/// Inverse of a modulo m; requires gcd(a, m) = 1.
inline u64 inverse_mod(u64 a, u64 m) {
  i128 old_r = a % m, r = m, old_s = 1, s = 0;
  while (r != 0) {
    i128 quot = old_r / r;
    std::swap(old_r, r);
    r -= quot * old_r;
    std::swap(old_s, s);
    s -= quot * old_s;
  }
  if (old_r != 1) throw std::invalid_argument("inverse_mod: argument not invertible");
  old_s %= static_cast<i128>(m);
  if (old_s < 0) old_s += m;
  return static_cast<u64>(old_s);
}

/// floor(sqrt(n)), exact for every 64-bit n.
inline u64 isqrt(u64 n) {
  if (n < 2) return n;
  u64 x = static_cast<u64>(__builtin_sqrtl(static_cast<long double>(n)));
  while (static_cast<u128>(x) * x > n) --x;
  while (static_cast<u128>(x + 1) * (x + 1) <= n) ++x;
  return x;
}

inline bool is_perfect_square(u64 n) {
  u64 r = isqrt(n);
  return r * r == n;
}

/// p^e, throwing when the result would reach 2^63.
inline u64 checked_pow(u64 p, unsigned e) {
  u128 result = 1;
  for (unsigned i = 0; i < e; ++i) {
    result *= p;
    if (result >= kMaxOperand) throw std::overflow_error("checked_pow: result exceeds 2^63");
  }
  return static_cast<u64>(result);
}

// Deterministic for all n < 2^64 with the first twelve primes as witnesses.
inline bool is_prime(u64 n) {
  if (n < 2) return false;
  static constexpr u64 kWitnesses[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
  for (u64 p : kWitnesses) {
    if (n % p == 0) return n == p;
  }
  u64 d = n - 1;
  int s = std::countr_zero(d);
  d >>= s;
  for (u64 a : kWitnesses) {
    u64 x = pow_mod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int i = 1; i < s; ++i) {
      x = mul_mod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

namespace detail {

// Brent's cycle-finding variant of Pollard rho. n must be odd and composite.
inline u64 pollard_brent(u64 n) {
  for (u64 c = 1;; ++c) {
    auto step = [&](u64 x) { return (mul_mod(x, x, n) + c) % n; };
    u64 y = 2, x = 2, ys = 2, g = 1, q = 1;
    constexpr u64 kBatch = 128;
    for (u64 r = 1; g == 1; r <<= 1) {
      x = y;
      for (u64 i = 0; i < r; ++i) y = step(y);
      for (u64 k = 0; k < r && g == 1; k += kBatch) {
        ys = y;
        for (u64 i = 0; i < std::min(kBatch, r - k); ++i) {
          y = step(y);
          q = mul_mod(q, x > y ? x - y : y - x, n);
        }
        g = std::gcd(q, n);
      }
    }
    if (g == n) {
      do {
        ys = step(ys);
        g = std::gcd(x > ys ? x - ys : ys - x, n);
      } while (g == 1);
    }
    if (g != n) return g;
  }
}

inline void collect_prime_factors(u64 n, std::vector<u64>& out) {
  if (n == 1) return;
  if (is_prime(n)) {
    out.push_back(n);
    return;
  }
  u64 d = pollard_brent(n);
  collect_prime_factors(d, out);
  collect_prime_factors(n / d, out);
}

}  // namespace detail

struct PrimePower {
  u64 prime;
  unsigned exponent;
  friend bool operator==(const PrimePower&, const PrimePower&) = default;
};

/// A positive integer together with its prime factorization (ascending primes).
class FactoredInteger {
 public:
  FactoredInteger() = default;

  /// Builds from a factor list whose primes the caller guarantees; checks the
  /// product, ordering and exponents but not primality.
  static FactoredInteger from_factors(std::vector<PrimePower> factors) {
    u128 product = 1;
    for (std::size_t i = 0; i < factors.size(); ++i) {
      const auto& f = factors[i];
      if (f.prime < 2 || f.exponent == 0) throw std::invalid_argument("from_factors: bad prime power");
      if (i > 0 && factors[i - 1].prime >= f.prime) throw std::invalid_argument("from_factors: primes not ascending");
      product *= checked_pow(f.prime, f.exponent);
      if (product >= kMaxOperand) throw std::overflow_error("from_factors: product exceeds 2^63");
    }
    FactoredInteger out;
    out.n_ = static_cast<u64>(product);
    out.factors_ = std::move(factors);
    return out;
  }

  u64 value() const { return n_; }
  const std::vector<PrimePower>& factors() const { return factors_; }

 private:
  u64 n_ = 1;
  std::vector<PrimePower> factors_;
};

inline FactoredInteger factorize(u64 n) {
  if (n == 0) throw std::invalid_argument("factorize: n must be positive");
  if (n >= kMaxOperand) throw std::invalid_argument("factorize: n must be below 2^63");
  std::vector<u64> primes;
  for (u64 p : {2u, 3u, 5u, 7u, 11u, 13u}) {
    while (n % p == 0) {
      primes.push_back(p);
      n /= p;
    }
  }
  detail::collect_prime_factors(n, primes);
  std::sort(primes.begin(), primes.end());
  std::vector<PrimePower> factors;
  for (u64 p : primes) {
    if (!factors.empty() && factors.back().prime == p) {
      ++factors.back().exponent;
    } else {
      factors.push_back({p, 1});
    }
  }
  return FactoredInteger::from_factors(std::move(factors));
}

/// Smallest-prime-factor table for fast factorization across a scan range.
/// Immutable after construction, so one instance can serve every worker.
class FactorSieve {
 public:
  explicit FactorSieve(u64 limit) : spf_(limit + 1, 0) {
    if (limit >= (u64{1} << 32)) throw std::invalid_argument("FactorSieve: limit too large");
    for (u64 i = 2; i <= limit; ++i) {
      if (spf_[i] != 0) continue;
      spf_[i] = static_cast<std::uint32_t>(i);
      for (u64 j = i * i; j <= limit; j += i) {
        if (spf_[j] == 0) spf_[j] = static_cast<std::uint32_t>(i);
      }
    }
  }

  u64 limit() const { return spf_.size() - 1; }

  FactoredInteger factor(u64 n) const {
    if (n == 0 || n > limit()) return factorize(n);
    std::vector<PrimePower> factors;
    while (n > 1) {
      u64 p = spf_[n];
      unsigned e = 0;
      while (n % p == 0) {
        n /= p;
        ++e;
      }
      factors.push_back({p, e});
    }
    return FactoredInteger::from_factors(std::move(factors));
  }

 private:
  std::vector<std::uint32_t> spf_;
};

/// Jacobi symbol (a/n) by binary reciprocity; n must be odd and positive.
inline int jacobi(i64 a, i64 n) {
  if (n <= 0 || n % 2 == 0) throw std::invalid_argument("jacobi: modulus must be odd and positive");
  u64 m = static_cast<u64>(n);
  u64 x = reduce_mod(a, m);
  int t = 1;
  while (x != 0) {
    while (x % 2 == 0) {
      x /= 2;
      u64 r = m % 8;
      if (r == 3 || r == 5) t = -t;
    }
    std::swap(x, m);
    if (x % 4 == 3 && m % 4 == 3) t = -t;
    x %= m;
  }
  return m == 1 ? t : 0;
}

/// Largest r with r^2 | n.
inline u64 square_part(const FactoredInteger& n) {
  u64 r = 1;
  for (const auto& [p, e] : n.factors()) r *= checked_pow(p, e / 2);
  return r;
}

inline u64 sigma(const FactoredInteger& n) {
  u128 total = 1;
  for (const auto& [p, e] : n.factors()) {
    u128 term = 1, pk = 1;
    for (unsigned i = 0; i < e; ++i) {
      pk *= p;
      term += pk;
    }
    total *= term;
  }
  if (total > ~u64{0}) throw std::overflow_error("sigma: value exceeds 64 bits");
  return static_cast<u64>(total);
}

inline u64 num_divisors(const FactoredInteger& n) {
  u64 d = 1;
  for (const auto& f : n.factors()) d *= f.exponent + 1;
  return d;
}

inline int mobius(const FactoredInteger& n) {
  int mu = 1;
  for (const auto& f : n.factors()) {
    if (f.exponent > 1) return 0;
    mu = -mu;
  }
  return mu;
}

/// All divisors, ascending.
inline std::vector<u64> divisors(const FactoredInteger& n) {
  std::vector<u64> out{1};
  for (const auto& [p, e] : n.factors()) {
    const std::size_t base = out.size();
    u64 pk = 1;
    for (unsigned i = 1; i <= e; ++i) {
      pk *= p;
      for (std::size_t k = 0; k < base; ++k) out.push_back(out[k] * pk);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

namespace detail {

// Tonelli-Shanks: a root of the quadratic residue u modulo an odd prime p.
inline u64 tonelli_shanks(u64 u, u64 p) {
  u %= p;
  if (u == 0) return 0;
  if (p % 4 == 3) return pow_mod(u, (p + 1) / 4, p);
  u64 q = p - 1;
  int s = std::countr_zero(q);
  q >>= s;
  u64 z = 2;
  while (pow_mod(z, (p - 1) / 2, p) != p - 1) ++z;
  u64 c = pow_mod(z, q, p);
  u64 x = pow_mod(u, (q + 1) / 2, p);
  u64 t = pow_mod(u, q, p);
  int m = s;
  while (t != 1) {
    int i = 0;
    for (u64 tt = t; tt != 1; tt = mul_mod(tt, tt, p)) ++i;
    u64 b = c;
    for (int k = 0; k < m - i - 1; ++k) b = mul_mod(b, b, p);
    x = mul_mod(x, b, p);
    c = mul_mod(b, b, p);
    t = mul_mod(t, c, p);
    m = i;
  }
  return x;
}

// Roots of a unit u modulo p^f (f >= 1), ascending.
inline std::vector<u64> unit_roots(u64 u, u64 p, unsigned f) {
  const u64 pf = checked_pow(p, f);
  u %= pf;
  if (p == 2) {
    // Hensel's lemma degenerates at 2; handle mod 2, 4, 8 directly.
    if (f == 1) return {1};
    if (f == 2) {
      if (u % 4 != 1) return {};
      return {1, 3};
    }
    if (u % 8 != 1) return {};
    u64 y = 1;
    for (unsigned i = 3; i < f; ++i) {
      // y^2 = u mod 2^i; adjust so it holds mod 2^(i+1).
      u64 mod = u64{1} << (i + 1);
      if (mul_mod(y, y, mod) != u % mod) y += u64{1} << (i - 1);
    }
    const u64 half = pf / 2;
    std::vector<u64> roots{y % pf, (pf - y) % pf, (y + half) % pf, (pf - y + half) % pf};
    std::sort(roots.begin(), roots.end());
    roots.erase(std::unique(roots.begin(), roots.end()), roots.end());
    return roots;
  }
  if (pow_mod(u % p, (p - 1) / 2, p) != 1) return {};
  u64 y = tonelli_shanks(u % p, p);
  u64 mod = p;
  for (unsigned k = 1; k < f; ++k) {
    mod *= p;
    // Newton step y <- y - (y^2 - u) / (2y) modulo p^(k+1).
    u64 fy = (mul_mod(y, y, mod) + mod - u % mod) % mod;
    u64 inv = inverse_mod(mul_mod(2, y, mod), mod);
    y = (y + mod - mul_mod(fy, inv, mod)) % mod;
  }
  std::vector<u64> roots{y, (pf - y) % pf};
  std::sort(roots.begin(), roots.end());
  roots.erase(std::unique(roots.begin(), roots.end()), roots.end());
  return roots;
}

inline u64 unit_root_count(u64 u, u64 p, unsigned f) {
  if (p == 2) {
    if (f == 1) return 1;
    if (f == 2) return u % 4 == 1 ? 2 : 0;
    return u % 8 == 1 ? 4 : 0;
  }
  return pow_mod(u % p, (p - 1) / 2, p) == 1 ? 2 : 0;
}

}  // namespace detail

/// All x in [0, p^e) with x^2 = m (mod p^e), ascending. p must be prime.
inline std::vector<u64> mod_sqrt(u64 m, u64 p, unsigned e) {
  const u64 pk = checked_pow(p, e);
  m %= pk;
  std::vector<u64> roots;
  if (m == 0) {
    const u64 step = checked_pow(p, (e + 1) / 2);
    for (u64 x = 0; x < pk; x += step) roots.push_back(x);
    return roots;
  }
  unsigned k = 0;
  u64 u = m;
  while (u % p == 0) {
    u /= p;
    ++k;
  }
  if (k % 2 != 0) return roots;
  const u64 lift = checked_pow(p, k / 2);
  const u64 inner = checked_pow(p, e - k);
  for (u64 y0 : detail::unit_roots(u, p, e - k)) {
    for (u64 t = 0; t < lift; ++t) {
      roots.push_back(mul_mod(lift, y0 + t * inner, pk));
    }
  }
  std::sort(roots.begin(), roots.end());
  return roots;
}

/// |mod_sqrt(m, p, e)| without materializing the roots.
inline u64 mod_sqrt_count(u64 m, u64 p, unsigned e) {
  const u64 pk = checked_pow(p, e);
  m %= pk;
  if (m == 0) return checked_pow(p, e / 2);
  unsigned k = 0;
  u64 u = m;
  while (u % p == 0) {
    u /= p;
    ++k;
  }
  if (k % 2 != 0) return 0;
  return detail::unit_root_count(u, p, e - k) * checked_pow(p, k / 2);
}

/// All x in [0, q) with x^2 = m (mod q), combined over prime powers by CRT.
inline std::vector<u64> sqrt_mod(u64 m, const FactoredInteger& q) {
  const u64 n = q.value();
  std::vector<u64> acc{0};
  u64 modulus = 1;
  for (const auto& [p, e] : q.factors()) {
    const u64 pk = checked_pow(p, e);
    const auto local = mod_sqrt(m % pk, p, e);
    if (local.empty()) return {};
    const u64 inv = inverse_mod(modulus % pk, pk);
    std::vector<u64> next;
    next.reserve(acc.size() * local.size());
    for (u64 a : acc) {
      for (u64 b : local) {
        // x = a + modulus * ((b - a) * inv mod pk)
        u64 diff = (b + pk - a % pk) % pk;
        u64 t = mul_mod(diff, inv, pk);
        next.push_back(a + modulus * t);
      }
    }
    acc = std::move(next);
    modulus *= pk;
  }
  if (n == 1) return {0};
  std::sort(acc.begin(), acc.end());
  return acc;
}

/// Number of square roots of m modulo q.
inline u64 sqrt_mod_count(u64 m, const FactoredInteger& q) {
  u64 total = 1;
  for (const auto& [p, e] : q.factors()) {
    total *= mod_sqrt_count(m % checked_pow(p, e), p, e);
    if (total == 0) return 0;
  }
  return total;
}

}  // namespace parabola
