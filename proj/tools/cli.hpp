#pragma once

// Front end for the parabola_points tool. run_cli() is kept separate from
// main() so tests can drive it in-process.

#include <iostream>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>

#include <CLI11.hpp>

#include "parabola/parabola.hpp"
#include "parabola/selftest.hpp"

namespace parabola::cli {

enum class Output { csv, json, plain };

struct Common {
  std::string output;
  unsigned threads = 0;
  bool selftest = false;
};

namespace detail {

inline Output parse_output(const std::string& s, Output fallback) {
  if (s.empty()) return fallback;
  if (s == "csv") return Output::csv;
  if (s == "json") return Output::json;
  if (s == "plain") return Output::plain;
  throw std::invalid_argument("--output must be csv, json or plain");
}

inline std::pair<u64, u64> parse_range(const std::string& text) {
  const auto colon = text.find(':');
  if (colon == std::string::npos) throw std::invalid_argument("--q-range must be A:B");
  const i64 a = parabola::detail::parse_integer(text.substr(0, colon), "--q-range");
  const i64 b = parabola::detail::parse_integer(text.substr(colon + 1), "--q-range");
  if (a < 1 || b < 0) throw std::invalid_argument("--q-range bounds must be positive");
  return {static_cast<u64>(a), static_cast<u64>(b)};
}

inline std::pair<Fraction, Fraction> parse_interval(const std::string& text) {
  const auto colon = text.find(':');
  if (colon == std::string::npos) throw std::invalid_argument("--interval must be C/D:E/F");
  return {parse_fraction(text.substr(0, colon)), parse_fraction(text.substr(colon + 1))};
}

inline u64 require_positive(std::optional<i64> v, const char* flag) {
  if (!v) throw std::invalid_argument(std::string(flag) + " is required");
  if (*v < 1) throw std::invalid_argument(std::string(flag) + " must be positive");
  return static_cast<u64>(*v);
}

}  // namespace detail

inline int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Rational points near the parabola: counts, Gauss sums, character sums, series diagnostics"};
  app.require_subcommand(1);

  Common common;
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--output", common.output, "csv, json or plain");
    sub->add_option("--threads", common.threads, "worker threads (default: PARABOLA_POINTS_THREADS or 1)");
    sub->add_flag("--selftest", common.selftest, "run reduced-scale oracle comparisons");
  };

  std::optional<i64> q, j, N, a_value;
  i64 M = 0;
  std::string delta_text, method_text = "modular", lambda_text, interval_text, alpha_text, twist_text;
  std::string range_text, rule_text = "pow:3/4", psi_text, parity_text = "all", modulus_text = "uniform";
  std::string epsilon_text = "0.05", exponent_text, s_text = "1";
  i64 Q = 0, length_factor = 4, max_start = 0, start_step = 1;
  bool rows = false, full = false, holder = false, eta = false;

  auto* count = app.add_subcommand("count", "A(q, delta) and its twisted / moment variants");
  count->add_option("--q", q, "denominator q");
  count->add_option("--delta", delta_text, "threshold NUM/DEN with delta < 1/2");
  count->add_option("--method", method_text, "brute, modular or fejer");
  count->add_option("--epsilon", epsilon_text, "epsilon in the bound terms");
  count->add_option("--exponent", exponent_text, "exponent of q in the third bound term (default 11/16)");
  count->add_option("--lambda", lambda_text, "twist U/V (twisted count)");
  count->add_option("--interval", interval_text, "C/D:E/F, closed interval for a/q");
  count->add_option("--alpha", alpha_text, "moment exponent in (0, 1/2]; switches to the moment sum");
  add_common(count);

  auto* gauss = app.add_subcommand("gauss", "quadratic Gauss sum G(j, q) in closed form");
  gauss->add_option("--j", j, "j >= 1");
  gauss->add_option("--q", q, "q >= 1");
  add_common(gauss);

  auto* charsum = app.add_subcommand("charsum", "short character sum for the character attached to q1");
  charsum->add_option("--q", q, "q1 (non-square)");
  charsum->add_option("--twist", twist_text, "principal or quadratic (even q1 only)");
  charsum->add_option("--M", M, "window start M (sum over M < n <= M + N)");
  charsum->add_option("--N", N, "window length N");
  charsum->add_option("--exponent", exponent_text, "exponent of the modulus in the ratio (default 3/16)");
  charsum->add_option("--a", a_value, "print the Jacobi symbol (a/q) instead (q odd)");
  add_common(charsum);

  auto* scan = app.add_subcommand("scan", "ratio of A(q, delta(q)) to the three-term bound over a q-range");
  scan->add_option("--q-range", range_text, "A:B");
  scan->add_option("--delta-rule", rule_text, "pow:TAU (delta = floor(q^{1-TAU})/q) or const:NUM/DEN");
  scan->add_option("--epsilon", epsilon_text, "epsilon in the bound terms");
  scan->add_option("--exponent", exponent_text, "exponent of q in the third bound term (default 11/16)");
  scan->add_flag("--rows", rows, "emit every q instead of the supremum only");
  add_common(scan);

  auto* burgess = app.add_subcommand("burgess", "empirical Burgess ratios over a q1-range");
  burgess->add_option("--q-range", range_text, "A:B");
  burgess->add_option("--length-factor", length_factor, "windows N <= factor * q1");
  burgess->add_option("--max-start", max_start, "largest window start M");
  burgess->add_option("--start-step", start_step, "step between window starts");
  burgess->add_option("--exponent", exponent_text, "exponent of the modulus (default 3/16; 0 for the conjectural bound)");
  burgess->add_option("--parity", parity_text, "all, odd or even q1");
  burgess->add_option("--modulus", modulus_text, "uniform (4 q1) or bound (the character's own modulus)");
  add_common(burgess);

  auto* series = app.add_subcommand("series", "partial sums of the simultaneous-approximation series");
  series->add_option("--psi", psi_text, "power:c=1,tau=0.75 | clamped:c=1,tau=0.75,eta=0.05 | table:path");
  series->add_option("--s", s_text, "s in (0, 1]");
  series->add_option("--Q", Q, "cutoff Q <= 10^7");
  series->add_option("--epsilon", epsilon_text, "epsilon in the split series");
  series->add_option("--exponent", exponent_text, "q-exponent of the character series (default 11/16)");
  series->add_flag("--full", full, "also sum A(q, 3 psi(q)) (psi(q)/q)^s");
  series->add_flag("--holder", holder, "report the Hoelder factors of the square-part series");
  series->add_flag("--eta", eta, "print the admissible eta range for s");
  add_common(series);

  auto* dual = app.add_subcommand("dual", "partial sums of sum psi(q)^s q^{2-s}");
  dual->add_option("--psi", psi_text, "psi model");
  dual->add_option("--s", s_text, "s in (0, 1]");
  dual->add_option("--Q", Q, "cutoff Q <= 10^7");
  add_common(dual);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 1;
  }

  CLI::App* sub = app.get_subcommands().front();
  const std::string name = sub->get_name();
  try {
    if (common.selftest) {
      const auto res = run_selftest(name);
      out << "selftest " << name << ": " << (res.ok ? "ok" : "FAILED " + res.detail) << "\n";
      return res.ok ? 0 : 2;
    }
    const unsigned threads = common.threads ? common.threads : default_threads();
    const double epsilon = parse_real(epsilon_text);

    if (name == "count") {
      const Output fmt = detail::parse_output(common.output, Output::csv);
      const u64 qv = detail::require_positive(q, "--q");
      if (delta_text.empty()) throw std::invalid_argument("--delta is required");
      const auto delta = RationalThreshold::parse(delta_text);
      if (!lambda_text.empty() || !interval_text.empty() || !alpha_text.empty()) {
        TwistedQuery tq;
        tq.q = qv;
        tq.delta = delta;
        if (!lambda_text.empty()) {
          if (lambda_text.find('/') == std::string::npos && lambda_text.find('.') != std::string::npos) {
            throw std::invalid_argument("--lambda must be an exact fraction U/V");
          }
          tq.lambda = parse_fraction(lambda_text);
        }
        if (!interval_text.empty()) std::tie(tq.lo, tq.hi) = detail::parse_interval(interval_text);
        tq.validate();
        const bool moment = !alpha_text.empty();
        if (moment) tq.alpha = parse_fraction(alpha_text);
        const u64 cnt = moment ? 0 : count_twisted(tq);
        const double msum = moment ? moment_sum(tq) : 0;
        if (fmt == Output::json) {
          Json js{{"q", qv}, {"num", delta.num()}, {"den", delta.den()}, {"lambda", tq.lambda.to_string()},
                  {"interval", {tq.lo.to_string(), tq.hi.to_string()}}};
          if (moment) {
            js["alpha"] = tq.alpha.to_string();
            js["moment"] = json_real(msum);
          } else {
            js["count"] = cnt;
          }
          out << js.dump(2) << "\n";
        } else if (fmt == Output::csv) {
          out << kCsvSchema << "\n" << "q,num,den,lambda,c,d," << (moment ? "alpha,moment" : "count") << "\n";
          out << qv << ',' << delta.num() << ',' << delta.den() << ',' << tq.lambda.to_string() << ','
              << tq.lo.to_string() << ',' << tq.hi.to_string() << ',';
          if (moment) {
            out << tq.alpha.to_string() << ',' << format_real(msum) << "\n";
          } else {
            out << cnt << "\n";
          }
        } else if (moment) {
          out << "moment sum = " << format_real(msum) << "\n";
        } else {
          out << "twisted count = " << cnt << "\n";
        }
        return 0;
      }
      const double exponent = exponent_text.empty() ? kBurgessCountExponent : parse_real(exponent_text);
      const auto rep = count_report(factorize(qv), delta, parse_count_method(method_text), epsilon, exponent);
      if (fmt == Output::json) {
        out << to_json(rep).dump(2) << "\n";
      } else if (fmt == Output::csv) {
        write_count_csv_header(out);
        write_count_csv_row(out, rep);
      } else {
        out << "A(" << rep.q << ", " << rep.delta.to_string() << ") = " << rep.count << " [" << to_string(rep.method)
            << "]\n"
            << "r = " << rep.r << "\n"
            << "bound terms = " << format_real(rep.bound.linear) << " + " << format_real(rep.bound.square_part) << " + "
            << format_real(rep.bound.character) << "\n"
            << "ratio = " << format_real(rep.ratio) << "\n";
      }
      return 0;
    }

    if (name == "gauss") {
      const Output fmt = detail::parse_output(common.output, Output::plain);
      const u64 jv = detail::require_positive(j, "--j");
      const u64 qv = detail::require_positive(q, "--q");
      const auto g = gauss_sum_exact(jv, qv);
      if (fmt == Output::json) {
        out << to_json(jv, qv, g).dump(2) << "\n";
      } else if (fmt == Output::csv) {
        write_gauss_csv(out, jv, qv, g);
      } else {
        out << describe(g) << "\n";
      }
      return 0;
    }

    if (name == "charsum") {
      const Output fmt = detail::parse_output(common.output, Output::plain);
      const u64 qv = detail::require_positive(q, "--q");
      if (a_value) {
        const int sym = jacobi(*a_value, static_cast<i64>(qv));
        if (fmt == Output::json) {
          out << Json{{"a", *a_value}, {"n", qv}, {"jacobi", sym}}.dump(2) << "\n";
        } else if (fmt == Output::csv) {
          out << kCsvSchema << "\n" << "a,n,jacobi\n" << *a_value << ',' << qv << ',' << sym << "\n";
        } else {
          out << "(" << *a_value << "/" << qv << ") = " << sym << "\n";
        }
        return 0;
      }
      std::optional<Mod4Twist> twist;
      if (twist_text == "principal") {
        twist = Mod4Twist::principal;
      } else if (twist_text == "quadratic") {
        twist = Mod4Twist::quadratic;
      } else if (!twist_text.empty()) {
        throw std::invalid_argument("--twist must be principal or quadratic");
      }
      if (M < 0) throw std::invalid_argument("--M must be non-negative");
      const u64 nv = detail::require_positive(N, "--N");
      const auto chi = character_for(factorize(qv), twist);
      const double exponent = exponent_text.empty() ? kBurgessExponent : parse_real(exponent_text);
      const i64 sum = char_sum(chi, static_cast<u64>(M), nv);
      const double ratio = burgess_ratio_value(sum, nv, chi.modulus_bound(), exponent);
      if (fmt == Output::json) {
        out << Json{{"q1", qv}, {"twist", twist ? Json(std::string(to_string(*twist))) : Json(nullptr)},
                    {"modulus", chi.modulus_bound()}, {"M", M}, {"N", nv}, {"sum", sum}, {"ratio", json_real(ratio)}}
                   .dump(2)
            << "\n";
      } else if (fmt == Output::csv) {
        out << kCsvSchema << "\n" << "q1,M,N,sum,ratio\n" << qv << ',' << M << ',' << nv << ',' << sum << ','
            << format_real(ratio) << "\n";
      } else {
        out << "S = " << sum << "\nratio = " << format_real(ratio) << " (modulus " << chi.modulus_bound() << ")\n";
      }
      return 0;
    }

    if (name == "scan") {
      const Output fmt = detail::parse_output(common.output, Output::csv);
      if (range_text.empty()) throw std::invalid_argument("--q-range is required");
      const auto [lo, hi] = detail::parse_range(range_text);
      Theorem2Options opt;
      opt.epsilon = epsilon;
      opt.exponent = exponent_text.empty() ? kBurgessCountExponent : parse_real(exponent_text);
      opt.threads = threads;
      opt.keep_rows = rows;
      const auto rep = scan_theorem2(lo, hi, parse_delta_rule(rule_text), opt);
      if (fmt == Output::json) {
        out << to_json(rep).dump(2) << "\n";
      } else if (fmt == Output::csv) {
        write_count_csv_header(out);
        if (rows) {
          for (const auto& r : rep.rows) write_count_csv_row(out, r);
        } else if (rep.sup) {
          write_count_csv_row(out, *rep.sup);
        }
      } else {
        out << "scanned " << rep.scanned << " values of q\n";
        if (rep.sup) out << "sup ratio = " << format_real(rep.sup->ratio) << " at q = " << rep.sup->q << "\n";
        for (const auto& b : rep.blocks) {
          out << "  [" << b.lo << ", " << b.hi << "): max " << format_real(b.max_ratio) << " at q = " << b.argmax << "\n";
        }
      }
      return 0;
    }

    if (name == "burgess") {
      const Output fmt = detail::parse_output(common.output, Output::csv);
      if (range_text.empty()) throw std::invalid_argument("--q-range is required");
      const auto [lo, hi] = detail::parse_range(range_text);
      if (length_factor < 1 || max_start < 0 || start_step < 1) throw std::invalid_argument("window parameters must be positive");
      WindowRule rule{static_cast<u64>(max_start), static_cast<u64>(start_step), static_cast<u64>(length_factor)};
      BurgessOptions opt;
      opt.exponent = exponent_text.empty() ? kBurgessExponent : parse_real(exponent_text);
      opt.threads = threads;
      if (modulus_text == "uniform") {
        opt.uniform_modulus = true;
      } else if (modulus_text == "bound") {
        opt.uniform_modulus = false;
      } else {
        throw std::invalid_argument("--modulus must be uniform or bound");
      }
      if (parity_text == "all") {
        opt.parity = ParityFilter::all;
      } else if (parity_text == "odd") {
        opt.parity = ParityFilter::odd;
      } else if (parity_text == "even") {
        opt.parity = ParityFilter::even;
      } else {
        throw std::invalid_argument("--parity must be all, odd or even");
      }
      const auto rep = burgess_scan(lo, hi, rule, opt);
      if (fmt == Output::json) {
        out << to_json(rep).dump(2) << "\n";
      } else if (fmt == Output::csv) {
        write_burgess_csv(out, rep);
      } else {
        out << rep.characters << " characters, " << rep.period_violations << " non-zero complete-period sums\n";
        if (rep.sup) {
          out << "sup ratio = " << format_real(rep.sup->ratio) << " at q1 = " << rep.sup->q1
              << (rep.sup->twist ? " (" + std::string(to_string(*rep.sup->twist)) + " twist)" : std::string())
              << ", M = " << rep.sup->start << ", N = " << rep.sup->length << "\n";
        }
      }
      return 0;
    }

    if (name == "series" || name == "dual") {
      const Output fmt = detail::parse_output(common.output, Output::csv);
      const double s = parse_real(s_text);
      if (name == "series" && eta) {
        const auto range = eta_range(s);
        if (fmt == Output::json) {
          out << Json{{"s", json_real(s)}, {"eta_lo", json_real(range.lo)}, {"eta_hi", json_real(range.hi)}}.dump(2) << "\n";
        } else {
          out << "eta in (" << format_real(range.lo) << ", " << format_real(range.hi) << ")\n";
        }
        return 0;
      }
      if (psi_text.empty()) throw std::invalid_argument("--psi is required");
      if (Q < 1) throw std::invalid_argument("--Q must be positive");
      const auto psi = PsiFunction::parse(psi_text);
      SeriesOptions opt;
      opt.epsilon = epsilon;
      opt.exponent = exponent_text.empty() ? kBurgessCountExponent : parse_real(exponent_text);
      opt.threads = threads;
      if (name == "series" && holder) {
        const auto rep = holder_split(psi, s, static_cast<u64>(Q), opt);
        if (fmt == Output::json) {
          out << to_json(rep).dump(2) << "\n";
        } else if (fmt == Output::csv) {
          write_holder_csv(out, rep);
        } else {
          const auto& last = rep.checkpoints.back();
          out << "factor1 = " << format_real(last.factor1) << ", factor2 = " << format_real(last.factor2)
              << ", product = " << format_real(last.product) << " >= direct " << format_real(last.direct) << "\n"
              << "r-exponent " << format_real(rep.r_exponent) << (rep.r_exponent_ok ? " < -3/2" : " >= -3/2")
              << ", 2s " << (rep.t_exponent_ok ? "> 22/13" : "<= 22/13") << "\n";
        }
        return 0;
      }
      const SeriesReport rep = name == "dual"   ? dual_series(psi, s, static_cast<u64>(Q), opt)
                               : full ? full_series(psi, s, static_cast<u64>(Q), opt)
                                      : three_series(psi, s, static_cast<u64>(Q), opt);
      if (fmt == Output::json) {
        out << to_json(rep).dump(2) << "\n";
      } else if (fmt == Output::csv) {
        write_series_csv(out, rep);
      } else {
        const auto& last = rep.checkpoints.back();
        out << "Q = " << last.q << ": S1 = " << format_real(last.s1);
        if (name == "series") out << ", S2 = " << format_real(last.s2) << ", S3 = " << format_real(last.s3);
        if (last.s_full) out << ", S_full = " << format_real(*last.s_full);
        out << "\ntail slope = " << format_real(rep.tail_slope) << (rep.divergent ? " (flagged divergent)" : "") << "\n";
        if (rep.capped_terms) out << rep.capped_terms << " terms had 3 psi(q) >= 1/2 and were capped\n";
      }
      return 0;
    }
  } catch (const std::logic_error& e) {
    // std::invalid_argument / std::out_of_range derive from logic_error.
    if (dynamic_cast<const std::invalid_argument*>(&e) || dynamic_cast<const std::out_of_range*>(&e)) {
      err << "error: " << e.what() << "\n";
      return 1;
    }
    err << "internal error: " << e.what() << "\n";
    return 2;
  } catch (const std::overflow_error& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return 2;
  }
  err << "error: unknown command\n";
  return 1;
}

}  // namespace parabola::cli
