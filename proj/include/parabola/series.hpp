#pragma once

// Partial-sum diagnostics for the convergence conditions built on the
// counting bound: the three-series split, the full counting series, the
// Hoelder step for the square-part series, and the dual-approximation series.

#include <array>
#include <cmath>
#include <fstream>
#include <limits>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "parabola/arith.hpp"
#include "parabola/counting.hpp"
#include "parabola/parallel.hpp"
#include "parabola/rational.hpp"

namespace parabola {

/// Approximation function psi : N -> [0, inf).
class PsiFunction {
 public:
  struct PowerLaw {
    double c = 1;
    double tau = 0;
  };
  struct Table {
    std::map<u64, double> values;  // 0 beyond the listed q
  };
  /// max(c q^{-tau}, q^{-5/8 + eta})
  struct Clamped {
    double c = 1;
    double tau = 0;
    double eta = 0;
  };
  using Model = std::variant<PowerLaw, Table, Clamped>;

  PsiFunction() : model_(Table{}) {}
  explicit PsiFunction(Model m) : model_(std::move(m)) { validate(); }

  static PsiFunction power(double c, double tau) { return PsiFunction(PowerLaw{c, tau}); }
  static PsiFunction clamped(double c, double tau, double eta) { return PsiFunction(Clamped{c, tau, eta}); }
  static PsiFunction table(std::map<u64, double> values) { return PsiFunction(Table{std::move(values)}); }

  /// `power:c=1,tau=0.75`, `clamped:c=1,tau=0.75,eta=0.05` or `table:path`
  /// where the file holds one "q value" pair per line ('#' starts a comment).
  static PsiFunction parse(std::string_view spec);

  const Model& model() const { return model_; }

  double operator()(u64 q) const {
    const double qd = static_cast<double>(q);
    if (const auto* p = std::get_if<PowerLaw>(&model_)) return p->c * std::pow(qd, -p->tau);
    if (const auto* c = std::get_if<Clamped>(&model_)) {
      return std::max(c->c * std::pow(qd, -c->tau), std::pow(qd, clamp_exponent(c->eta)));
    }
    const auto& t = std::get<Table>(model_).values;
    const auto it = t.find(q);
    return it == t.end() ? 0.0 : it->second;
  }

  /// Exponent of the lower envelope q^{-5/8 + eta}.
  static double clamp_exponent(double eta) { return -5.0 / 8.0 + eta; }

 private:
  void validate() const {
    if (const auto* p = std::get_if<PowerLaw>(&model_)) {
      if (!(p->c > 0)) throw std::invalid_argument("psi: power-law constant must be positive");
    } else if (const auto* c = std::get_if<Clamped>(&model_)) {
      if (!(c->c > 0)) throw std::invalid_argument("psi: clamped constant must be positive");
      if (!(c->eta > 0)) throw std::invalid_argument("psi: eta must be positive");
    } else {
      for (const auto& [q, v] : std::get<Table>(model_).values) {
        if (q == 0 || !(v >= 0)) throw std::invalid_argument("psi: table entries need q >= 1 and psi >= 0");
      }
    }
  }

  Model model_;
};

namespace detail {

inline std::map<std::string, double> parse_key_values(std::string_view body) {
  std::map<std::string, double> out;
  std::size_t pos = 0;
  while (pos <= body.size()) {
    const std::size_t comma = std::min(body.find(',', pos), body.size());
    const std::string_view item = body.substr(pos, comma - pos);
    const std::size_t eq = item.find('=');
    if (eq == std::string_view::npos) throw std::invalid_argument("psi: expected key=value, got '" + std::string(item) + "'");
    out[std::string(item.substr(0, eq))] = parse_real(item.substr(eq + 1));
    pos = comma + 1;
  }
  return out;
}

inline double take(std::map<std::string, double>& kv, const std::string& key, std::optional<double> fallback = {}) {
  const auto it = kv.find(key);
  if (it == kv.end()) {
    if (fallback) return *fallback;
    throw std::invalid_argument("psi: missing parameter '" + key + "'");
  }
  const double v = it->second;
  kv.erase(it);
  return v;
}

}  // namespace detail

inline PsiFunction PsiFunction::parse(std::string_view spec) {
  const auto colon = spec.find(':');
  if (colon == std::string_view::npos) throw std::invalid_argument("psi: expected MODEL:PARAMS");
  const std::string_view kind = spec.substr(0, colon);
  const std::string_view body = spec.substr(colon + 1);
  if (kind == "table") {
    std::ifstream in{std::string(body)};
    if (!in) throw std::invalid_argument("psi: cannot open table '" + std::string(body) + "'");
    std::map<u64, double> values;
    std::string line;
    while (std::getline(in, line)) {
      if (const auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
      for (char& ch : line) {
        if (ch == ',' || ch == '\t') ch = ' ';
      }
      std::istringstream ls(line);
      std::string qs, vs;
      if (!(ls >> qs)) continue;
      if (!(ls >> vs)) throw std::invalid_argument("psi: table line without value: '" + line + "'");
      values[static_cast<u64>(detail::parse_integer(qs, "psi table q"))] = parse_real(vs);
    }
    return table(std::move(values));
  }
  if (kind != "power" && kind != "clamped") throw std::invalid_argument("psi: unknown model '" + std::string(kind) + "'");
  auto kv = detail::parse_key_values(body);
  const double c = detail::take(kv, "c", 1.0);
  const double tau = detail::take(kv, "tau");
  const double eta = kind == "clamped" ? detail::take(kv, "eta") : 0.0;
  if (!kv.empty()) throw std::invalid_argument("psi: unknown parameter '" + kv.begin()->first + "'");
  return kind == "power" ? power(c, tau) : clamped(c, tau, eta);
}

struct OpenInterval {
  double lo = 0;
  double hi = 0;
};

inline void require_hausdorff_range(double s) {
  if (!(s > 11.0 / 13.0 && s <= 1.0)) {
    throw std::invalid_argument("s must lie in (11/13, 1] for the simultaneous-approximation series");
  }
}

/// (0, 5/8 - (2 - s)/(s + 1)), the admissible range of eta.
inline OpenInterval eta_range(double s) {
  require_hausdorff_range(s);
  return {0.0, 5.0 / 8.0 - (2.0 - s) / (s + 1.0)};
}

/// psi(q)^{1/2} q^{11/16 + eta/2} <= psi(q) q, which holds whenever
/// psi(q) >= q^{-5/8 + eta}. The relative slack covers rounding when the
/// clamp is active and both sides agree exactly.
inline bool absorption_holds(double psi, u64 q, double eta) {
  const double qd = static_cast<double>(q);
  const double lhs = std::sqrt(psi) * std::pow(qd, 11.0 / 16.0 + eta / 2);
  const double rhs = psi * qd;
  return lhs <= rhs * (1 + 1e-12);
}

inline constexpr double kDivergenceSlope = -0.05;
inline constexpr i64 kPsiMaxDenominator = 1'000'000;

struct SeriesCheckpoint {
  u64 q = 0;
  double s1 = 0;
  double s2 = 0;
  double s3 = 0;
  std::optional<double> s_full;
  double slope = std::numeric_limits<double>::quiet_NaN();
};

/// Partial sums at q = 1, 2, 4, ..., and Q. For the simultaneous series s1..s3
/// are the three split series and s_full the counting series; for the dual
/// series only s1 is used.
struct SeriesReport {
  double s = 1;
  u64 Q = 0;
  std::vector<SeriesCheckpoint> checkpoints;
  /// Log2 growth of consecutive dyadic block increments of the primary series
  /// at the last full dyadic block; about 1 - p for terms ~ q^{-p}.
  double tail_slope = std::numeric_limits<double>::quiet_NaN();
  bool divergent = false;
  u64 capped_terms = 0;
  /// Per dyadic block: full-series increment over the three-series increment.
  std::vector<double> block_ratios;
};

struct SeriesOptions {
  double epsilon = kDefaultEpsilon;
  double exponent = kBurgessCountExponent;
  unsigned threads = 1;
};

namespace detail {

inline std::vector<u64> checkpoints_for(u64 Q) {
  std::vector<u64> out;
  for (u64 p = 1; p != 0 && p <= Q; p <<= 1) out.push_back(p);
  if (!out.empty() && out.back() != Q) out.push_back(Q);
  return out;
}

// Cumulative sums of K series at each checkpoint. Chunks are cut at the
// checkpoints and summed in ascending order, so the result is independent of
// the thread count.
template <std::size_t K, typename TermFn>
std::vector<std::array<long double, K>> cumulative_at_checkpoints(u64 Q, unsigned threads, TermFn term) {
  const auto cps = checkpoints_for(Q);
  std::vector<u64> cuts;
  for (u64 c : cps) cuts.push_back(c + 1);
  const auto chunks = make_chunks(1, Q + 1, u64{1} << 14, cuts);
  using Acc = std::array<long double, K>;
  const auto parts = parallel_map(chunks, threads, [&](const Chunk& c) {
    Acc acc{};
    for (u64 q = c.lo; q < c.hi; ++q) {
      const auto t = term(q);
      for (std::size_t i = 0; i < K; ++i) acc[i] += t[i];
    }
    return acc;
  });
  std::vector<Acc> out;
  Acc running{};
  std::size_t next_cp = 0;
  for (std::size_t i = 0; i < chunks.size(); ++i) {
    for (std::size_t k = 0; k < K; ++k) running[k] += parts[i][k];
    while (next_cp < cps.size() && chunks[i].hi == cps[next_cp] + 1) {
      out.push_back(running);
      ++next_cp;
    }
  }
  return out;
}

// Slope log2(B_k / B_{k-1}) of dyadic increments; NaN where undefined or at a
// non-dyadic final checkpoint.
inline std::vector<double> dyadic_slopes(const std::vector<u64>& cps, const std::vector<double>& sums) {
  std::vector<double> slopes(cps.size(), std::numeric_limits<double>::quiet_NaN());
  for (std::size_t k = 1; k < cps.size(); ++k) {
    if (!std::has_single_bit(cps[k])) continue;
    const double cur = sums[k] - sums[k - 1];
    const double prev = k >= 2 ? sums[k - 1] - sums[k - 2] : sums[0];
    if (cur > 0 && prev > 0) slopes[k] = std::log2(cur / prev);
  }
  return slopes;
}

inline void finish_report(SeriesReport& rep, const std::vector<double>& primary) {
  std::vector<u64> cps;
  for (const auto& c : rep.checkpoints) cps.push_back(c.q);
  const auto slopes = dyadic_slopes(cps, primary);
  for (std::size_t i = 0; i < cps.size(); ++i) rep.checkpoints[i].slope = slopes[i];
  for (auto it = slopes.rbegin(); it != slopes.rend(); ++it) {
    if (!std::isnan(*it)) {
      rep.tail_slope = *it;
      break;
    }
  }
  rep.divergent = !std::isnan(rep.tail_slope) && rep.tail_slope > kDivergenceSlope;
}

inline std::array<long double, 3> split_terms(const PsiFunction& psi, u64 q, u64 r, double s,
                                              const SeriesOptions& opt) {
  const long double p = psi(q);
  if (p == 0) return {0, 0, 0};
  const long double qd = static_cast<long double>(q);
  const long double scaled = std::pow(p / qd, static_cast<long double>(s));
  return {std::pow(p, 1.0L + s) * std::pow(qd, 1.0L - s),
          std::pow(static_cast<long double>(r), 1.0L + opt.epsilon) * scaled,
          std::sqrt(p) * std::pow(qd, static_cast<long double>(opt.exponent + opt.epsilon)) * scaled};
}

struct ThresholdChoice {
  std::optional<RationalThreshold> delta;  // empty: A(q, 0) = 0
  bool capped = false;
};

// 3 psi(q) as a fraction with denominator <= 10^6; values at or above 1/2 are
// capped at (den - 1)/(2 den).
inline ThresholdChoice rationalized_threshold(double x) {
  if (!(x > 0)) return {};
  if (x >= 0.5) return {RationalThreshold(kPsiMaxDenominator - 1, 2 * kPsiMaxDenominator), true};
  const Fraction f = best_rational(x, kPsiMaxDenominator);
  if (f.num == 0) return {};
  if (2 * f.num >= f.den) return {RationalThreshold(kPsiMaxDenominator - 1, 2 * kPsiMaxDenominator), true};
  return {RationalThreshold(static_cast<u64>(f.num), static_cast<u64>(f.den)), false};
}

inline constexpr u64 kMaxSeriesCutoff = 10'000'000;

inline void check_cutoff(u64 Q) {
  if (Q == 0 || Q > kMaxSeriesCutoff) throw std::invalid_argument("series: Q must lie in [1, 10^7]");
}

}  // namespace detail

/// Partial sums of sum psi^{s+1} q^{1-s}, sum r^{1+eps} (psi/q)^s and
/// sum psi^{1/2} q^{exponent+eps} (psi/q)^s.
inline SeriesReport three_series(const PsiFunction& psi, double s, u64 Q, const SeriesOptions& opt = {}) {
  detail::check_cutoff(Q);
  if (!(s > 0 && s <= 1)) throw std::invalid_argument("s must lie in (0, 1]");
  const FactorSieve sieve(Q);
  const auto sums = detail::cumulative_at_checkpoints<3>(Q, opt.threads, [&](u64 q) {
    return detail::split_terms(psi, q, square_part(sieve.factor(q)), s, opt);
  });
  SeriesReport rep;
  rep.s = s;
  rep.Q = Q;
  const auto cps = detail::checkpoints_for(Q);
  std::vector<double> primary;
  for (std::size_t i = 0; i < cps.size(); ++i) {
    rep.checkpoints.push_back({cps[i], static_cast<double>(sums[i][0]), static_cast<double>(sums[i][1]),
                               static_cast<double>(sums[i][2]), std::nullopt});
    primary.push_back(static_cast<double>(sums[i][0]));
  }
  detail::finish_report(rep, primary);
  return rep;
}

/// Partial sums of sum A(q, 3 psi(q)) (psi(q)/q)^s next to the three split
/// series, with per-block ratios of the two.
inline SeriesReport full_series(const PsiFunction& psi, double s, u64 Q, const SeriesOptions& opt = {}) {
  detail::check_cutoff(Q);
  if (!(s > 0 && s <= 1)) throw std::invalid_argument("s must lie in (0, 1]");
  const FactorSieve sieve(Q);
  const auto sums = detail::cumulative_at_checkpoints<5>(Q, opt.threads, [&](u64 q) {
    const FactoredInteger fq = sieve.factor(q);
    const auto split = detail::split_terms(psi, q, square_part(fq), s, opt);
    const double p = psi(q);
    const auto choice = detail::rationalized_threshold(3 * p);
    long double full = 0;
    if (choice.delta) {
      const u64 count = count_modular(fq, *choice.delta);
      full = count * std::pow(static_cast<long double>(p) / q, static_cast<long double>(s));
    }
    return std::array<long double, 5>{split[0], split[1], split[2], full, choice.capped ? 1.0L : 0.0L};
  });
  SeriesReport rep;
  rep.s = s;
  rep.Q = Q;
  const auto cps = detail::checkpoints_for(Q);
  std::vector<double> primary;
  for (std::size_t i = 0; i < cps.size(); ++i) {
    rep.checkpoints.push_back({cps[i], static_cast<double>(sums[i][0]), static_cast<double>(sums[i][1]),
                               static_cast<double>(sums[i][2]), static_cast<double>(sums[i][3])});
    primary.push_back(static_cast<double>(sums[i][3]));
    const long double prev_full = i ? sums[i - 1][3] : 0, prev_three = i ? sums[i - 1][0] + sums[i - 1][1] + sums[i - 1][2] : 0;
    const long double three = sums[i][0] + sums[i][1] + sums[i][2] - prev_three;
    const long double full = sums[i][3] - prev_full;
    rep.block_ratios.push_back(three > 0 ? static_cast<double>(full / three) : 0.0);
  }
  if (!cps.empty()) rep.capped_terms = static_cast<u64>(sums.back()[4]);
  detail::finish_report(rep, primary);
  return rep;
}

struct HolderCheckpoint {
  u64 q = 0;
  double factor1 = 0;  // (sum (r^{1+eps} q^{-2s/(s+1)})^{s+1})^{1/(s+1)}
  double factor2 = 0;  // (sum psi^{s+1} q^{1-s})^{s/(s+1)}
  double product = 0;
  double direct = 0;   // sum r^{1+eps} (psi/q)^s
};

struct HolderReport {
  double s = 1;
  double epsilon = kDefaultEpsilon;
  std::vector<HolderCheckpoint> checkpoints;
  /// sum_{q<=Q} r^{(1+eps)(s+1)} q^{-2s}, i.e. factor1^{s+1} at Q.
  double square_sum = 0;
  /// The same sum regrouped as sum_{r^2 t <= Q} |mu(t)| r^{(1+eps)(s+1)} (r^2 t)^{-2s}.
  double squarefree_regrouped = 0;
  /// sum_{r <= sqrt Q} r^{(1+eps)(s+1)-4s} * sum_{t <= Q} t^{-2s}.
  double comparison = 0;
  double r_exponent = 0;      // (1+eps)(s+1) - 4s
  bool r_exponent_ok = false;  // below -3/2
  bool t_exponent_ok = false;  // 2s > 22/13
};

inline HolderReport holder_split(const PsiFunction& psi, double s, u64 Q, const SeriesOptions& opt = {}) {
  require_hausdorff_range(s);
  detail::check_cutoff(Q);
  const double eps = opt.epsilon;
  const FactorSieve sieve(Q);
  const long double b = 2.0L * s / (s + 1);
  const auto sums = detail::cumulative_at_checkpoints<3>(Q, opt.threads, [&](u64 q) {
    const long double r = static_cast<long double>(square_part(sieve.factor(q)));
    const long double qd = static_cast<long double>(q);
    const long double a = std::pow(std::pow(r, 1.0L + eps) * std::pow(qd, -b), static_cast<long double>(s + 1));
    const long double p = psi(q);
    const long double main = p == 0 ? 0 : std::pow(p, 1.0L + s) * std::pow(qd, 1.0L - s);
    const long double direct = p == 0 ? 0 : std::pow(r, 1.0L + eps) * std::pow(p / qd, static_cast<long double>(s));
    return std::array<long double, 3>{a, main, direct};
  });
  HolderReport rep;
  rep.s = s;
  rep.epsilon = eps;
  const auto cps = detail::checkpoints_for(Q);
  for (std::size_t i = 0; i < cps.size(); ++i) {
    HolderCheckpoint c;
    c.q = cps[i];
    c.factor1 = static_cast<double>(std::pow(sums[i][0], 1.0L / (s + 1)));
    c.factor2 = static_cast<double>(std::pow(sums[i][1], static_cast<long double>(s) / (s + 1)));
    c.product = c.factor1 * c.factor2;
    c.direct = static_cast<double>(sums[i][2]);
    rep.checkpoints.push_back(c);
  }
  rep.square_sum = static_cast<double>(sums.back()[0]);
  rep.r_exponent = (1 + eps) * (s + 1) - 4 * s;
  rep.r_exponent_ok = rep.r_exponent < -1.5;
  rep.t_exponent_ok = 2 * s > 22.0 / 13.0;
  long double regrouped = 0, r_sum = 0, t_sum = 0;
  for (u64 r = 1; r * r <= Q; ++r) {
    const long double rl = static_cast<long double>(r);
    r_sum += std::pow(rl, static_cast<long double>(rep.r_exponent));
    const long double rw = std::pow(rl, (1.0L + eps) * (s + 1));
    for (u64 t = 1; r * r * t <= Q; ++t) {
      if (mobius(sieve.factor(t)) == 0) continue;
      regrouped += rw * std::pow(static_cast<long double>(r * r * t), -2.0L * s);
    }
  }
  for (u64 t = 1; t <= Q; ++t) t_sum += std::pow(static_cast<long double>(t), -2.0L * s);
  rep.squarefree_regrouped = static_cast<double>(regrouped);
  rep.comparison = static_cast<double>(r_sum * t_sum);
  return rep;
}

/// Partial sums of sum psi(q)^s q^{2-s}.
inline SeriesReport dual_series(const PsiFunction& psi, double s, u64 Q, const SeriesOptions& opt = {}) {
  detail::check_cutoff(Q);
  if (!(s > 0 && s <= 1)) throw std::invalid_argument("s must lie in (0, 1] for the dual series");
  const auto sums = detail::cumulative_at_checkpoints<1>(Q, opt.threads, [&](u64 q) {
    const long double p = psi(q);
    if (p == 0) return std::array<long double, 1>{0};
    return std::array<long double, 1>{std::pow(p, static_cast<long double>(s)) *
                                      std::pow(static_cast<long double>(q), 2.0L - s)};
  });
  SeriesReport rep;
  rep.s = s;
  rep.Q = Q;
  const auto cps = detail::checkpoints_for(Q);
  std::vector<double> primary;
  for (std::size_t i = 0; i < cps.size(); ++i) {
    rep.checkpoints.push_back({cps[i], static_cast<double>(sums[i][0]), 0, 0, std::nullopt});
    primary.push_back(static_cast<double>(sums[i][0]));
  }
  detail::finish_report(rep, primary);
  return rep;
}

}  // namespace parabola
