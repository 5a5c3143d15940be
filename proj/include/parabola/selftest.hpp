#pragma once

// Reduced-scale oracle comparisons, one per CLI subcommand. Each finishes in
// well under a second.

#include <cmath>
#include <complex>
#include <numbers>
#include <sstream>
#include <string>
#include <string_view>

#include "parabola/arith.hpp"
#include "parabola/charsum.hpp"
#include "parabola/counting.hpp"
#include "parabola/gauss.hpp"
#include "parabola/series.hpp"

namespace parabola {

struct SelftestResult {
  bool ok = true;
  std::string detail;

  void fail(const std::string& what) {
    if (ok) detail = what;
    ok = false;
  }
};

inline SelftestResult selftest_count() {
  SelftestResult res;
  const RationalThreshold deltas[] = {{1, 1000}, {1, 100}, {1, 20}, {1, 10}, {1, 4}, {49, 100}};
  for (u64 q = 1; q <= 300 && res.ok; ++q) {
    const auto fq = factorize(q);
    for (const auto& d : deltas) {
      if (count_modular(fq, d) != count_bruteforce(q, d)) res.fail("count_modular != brute force at q=" + std::to_string(q));
    }
    TwistedQuery tq;
    tq.q = q;
    tq.delta = {1, 10};
    if (count_twisted(tq) != count_bruteforce(q, tq.delta)) res.fail("count_twisted != A at q=" + std::to_string(q));
  }
  for (u64 q = 1; q <= 200 && res.ok; ++q) {
    const RationalThreshold d{1, 10};
    const double m = fejer_majorant(q, d);
    if (static_cast<double>(count_bruteforce(q, d)) > std::numbers::pi * std::numbers::pi / 4 * m + 1e-9) {
      res.fail("Fejer majorant below A at q=" + std::to_string(q));
    }
    if (std::fabs(m - fejer_majorant_direct(q, d)) > 1e-6 * std::fabs(m)) res.fail("Fejer routes disagree at q=" + std::to_string(q));
  }
  return res;
}

inline SelftestResult selftest_gauss() {
  SelftestResult res;
  for (u64 q = 1; q <= 200 && res.ok; ++q) {
    for (u64 j = 1; j <= 20; ++j) {
      const auto diff = gauss_sum_exact(j, q).to_complex() - gauss_sum_direct(static_cast<i64>(j), q);
      if (std::abs(diff) >= 1e-6 * std::sqrt(static_cast<double>(q))) {
        res.fail("closed form != direct sum at j=" + std::to_string(j) + ", q=" + std::to_string(q));
        break;
      }
    }
  }
  return res;
}

inline SelftestResult selftest_charsum() {
  SelftestResult res;
  for (u64 q1 = 2; q1 <= 120 && res.ok; ++q1) {
    if (is_perfect_square(q1)) continue;
    const auto fq = factorize(q1);
    std::vector<RealCharacter> chars;
    if (q1 % 2) {
      chars.push_back(character_for(fq, std::nullopt));
    } else {
      chars.push_back(character_for(fq, Mod4Twist::principal));
      chars.push_back(character_for(fq, Mod4Twist::quadratic));
    }
    for (const auto& chi : chars) {
      for (u64 m = 1; m <= 40; ++m) {
        for (u64 n = 1; n <= 40; ++n) {
          if (chi(m * n) != chi(m) * chi(n)) res.fail("character not multiplicative at q1=" + std::to_string(q1));
        }
      }
      for (u64 M = 0; M <= 10; ++M) {
        if (char_sum(chi, M, chi.modulus_bound()) != 0) res.fail("complete sum non-zero at q1=" + std::to_string(q1));
      }
      if (q1 % 2) {
        for (u64 n = 1; n <= 4 * q1; ++n) {
          if (chi(n) != jacobi(static_cast<i64>(n), static_cast<i64>(q1))) res.fail("character != Jacobi at q1=" + std::to_string(q1));
        }
      }
    }
  }
  return res;
}

inline SelftestResult selftest_scan() {
  SelftestResult res;
  const auto rule = power_delta_rule({3, 4});
  Theorem2Options opt;
  opt.keep_rows = true;
  const auto rep = scan_theorem2(2, 2000, rule, opt);
  for (const auto& row : rep.rows) {
    if (row.count != count_bruteforce(row.q, row.delta)) {
      res.fail("scan count mismatch at q=" + std::to_string(row.q));
      break;
    }
  }
  double sup = 0;
  for (const auto& row : rep.rows) sup = std::max(sup, row.ratio);
  if (!rep.sup || rep.sup->ratio != sup) res.fail("scan supremum mismatch");
  return res;
}

inline SelftestResult selftest_burgess() {
  SelftestResult res;
  WindowRule rule;
  rule.length_factor = 2;
  BurgessOptions opt;
  const auto rep = burgess_scan(2, 60, rule, opt);
  if (rep.period_violations != 0) res.fail("complete-period sum non-zero");
  for (const auto& row : rep.rows) {
    const auto chi = row.twist ? RealCharacter::twisted(row.q1, *row.twist) : RealCharacter::jacobi_top(row.q1);
    double best = 0;
    for (u64 n = 1; n <= 2 * row.q1; ++n) {
      best = std::max(best, burgess_ratio_value(char_sum(chi, 0, n), n, 4 * row.q1));
    }
    if (std::fabs(best - row.ratio) > 1e-12) {
      res.fail("scan ratio mismatch at q1=" + std::to_string(row.q1));
      break;
    }
  }
  return res;
}

inline SelftestResult selftest_series() {
  SelftestResult res;
  const auto psi = PsiFunction::power(1, 0.75);
  const auto rep = three_series(psi, 1.0, 1000);
  long double s1 = 0;
  for (u64 q = 1; q <= 1000; ++q) s1 += std::pow(static_cast<long double>(q), -1.5L);
  if (std::fabs(static_cast<double>(s1) - rep.checkpoints.back().s1) > 1e-12) res.fail("first series mismatch");
  const auto holder = holder_split(psi, 1.0, 1000);
  for (const auto& c : holder.checkpoints) {
    if (c.product < c.direct) res.fail("Hoelder product below direct sum at Q=" + std::to_string(c.q));
  }
  for (u64 q = 1; q <= 10000; ++q) {
    if (!absorption_holds(PsiFunction::clamped(1, 2, 0.05)(q), q, 0.05)) res.fail("absorption fails at q=" + std::to_string(q));
  }
  return res;
}

inline SelftestResult selftest_dual() {
  SelftestResult res;
  const auto rep = dual_series(PsiFunction::power(1, 3), 1.0, 4096);
  long double s = 0;
  for (u64 q = 1; q <= 4096; ++q) s += 1.0L / (static_cast<long double>(q) * q);
  if (std::fabs(static_cast<double>(s) - rep.checkpoints.back().s1) > 1e-12) res.fail("dual series mismatch");
  if (rep.divergent) res.fail("convergent dual series flagged divergent");
  if (!dual_series(PsiFunction::power(1, 2), 1.0, 4096).divergent) res.fail("harmonic dual series not flagged");
  return res;
}

inline SelftestResult run_selftest(std::string_view command) {
  if (command == "count") return selftest_count();
  if (command == "gauss") return selftest_gauss();
  if (command == "charsum") return selftest_charsum();
  if (command == "scan") return selftest_scan();
  if (command == "burgess") return selftest_burgess();
  if (command == "series") return selftest_series();
  if (command == "dual") return selftest_dual();
  return {false, "unknown command"};
}

}  // namespace parabola
