#pragma once

// CSV and JSON renderings of the report types. Integer fields are exact;
// reals carry 12 significant digits. CSV output starts with "# schema=1".

#include <cmath>
#include <cstdio>
#include <ostream>
#include <string>

#include <json.hpp>

#include "parabola/charsum.hpp"
#include "parabola/counting.hpp"
#include "parabola/gauss.hpp"
#include "parabola/series.hpp"

namespace parabola {

using Json = nlohmann::ordered_json;

inline constexpr const char* kCsvSchema = "# schema=1";

inline std::string format_real(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

inline Json json_real(double x) {
  if (!std::isfinite(x)) return nullptr;
  return std::stod(format_real(x));
}

// --- counting -------------------------------------------------------------

inline void write_count_csv_header(std::ostream& os) {
  os << kCsvSchema << "\n" << "q,num,den,count,r,term1,term2,term3,ratio\n";
}

inline void write_count_csv_row(std::ostream& os, const CountReport& r) {
  os << r.q << ',' << r.delta.num() << ',' << r.delta.den() << ',' << r.count << ',' << r.r << ','
     << format_real(r.bound.linear) << ',' << format_real(r.bound.square_part) << ','
     << format_real(r.bound.character) << ',' << format_real(r.ratio) << '\n';
}

inline Json to_json(const CountReport& r) {
  return Json{{"q", r.q},
              {"num", r.delta.num()},
              {"den", r.delta.den()},
              {"count", r.count},
              {"method", std::string(to_string(r.method))},
              {"r", r.r},
              {"term1", json_real(r.bound.linear)},
              {"term2", json_real(r.bound.square_part)},
              {"term3", json_real(r.bound.character)},
              {"ratio", json_real(r.ratio)}};
}

inline Json to_json(const BlockMax& b) {
  return Json{{"lo", b.lo}, {"hi", b.hi}, {"max_ratio", json_real(b.max_ratio)}, {"argmax", b.argmax}};
}

inline Json to_json(const Theorem2ScanReport& rep) {
  Json j{{"scanned", rep.scanned}};
  j["sup"] = rep.sup ? to_json(*rep.sup) : Json(nullptr);
  j["min_count"] = rep.empty() ? Json(nullptr) : Json(rep.min_count);
  j["blocks"] = Json::array();
  for (const auto& b : rep.blocks) j["blocks"].push_back(to_json(b));
  j["rows"] = Json::array();
  for (const auto& row : rep.rows) j["rows"].push_back(to_json(row));
  return j;
}

// --- gauss ----------------------------------------------------------------

inline Json to_json(u64 j, u64 q, const ExactGaussSum& g) {
  const auto z = g.to_complex();
  return Json{{"j", j},
              {"q", q},
              {"value", format_value(g)},
              {"scale", g.scale},
              {"unit", std::string(to_string(g.unit))},
              {"radicand", g.radicand},
              {"re", json_real(z.real())},
              {"im", json_real(z.imag())}};
}

inline void write_gauss_csv(std::ostream& os, u64 j, u64 q, const ExactGaussSum& g) {
  const auto z = g.to_complex();
  os << kCsvSchema << "\n" << "j,q,scale,unit,radicand,re,im\n"
     << j << ',' << q << ',' << g.scale << ',' << to_string(g.unit) << ',' << g.radicand << ','
     << format_real(z.real()) << ',' << format_real(z.imag()) << '\n';
}

// --- charsum --------------------------------------------------------------

inline void write_burgess_csv(std::ostream& os, const BurgessScanReport& rep) {
  os << kCsvSchema << "\n" << "q1,M,N,sum,ratio\n";
  for (const auto& r : rep.rows) {
    os << r.q1 << ',' << r.start << ',' << r.length << ',' << r.sum << ',' << format_real(r.ratio) << '\n';
  }
}

inline Json to_json(const BurgessRow& r) {
  return Json{{"q1", r.q1},
              {"twist", r.twist ? Json(std::string(to_string(*r.twist))) : Json(nullptr)},
              {"M", r.start},
              {"N", r.length},
              {"sum", r.sum},
              {"ratio", json_real(r.ratio)}};
}

inline Json to_json(const BurgessScanReport& rep) {
  Json j{{"characters", rep.characters}, {"period_violations", rep.period_violations}};
  j["sup"] = rep.sup ? to_json(*rep.sup) : Json(nullptr);
  j["blocks"] = Json::array();
  for (const auto& b : rep.blocks) j["blocks"].push_back(to_json(b));
  j["rows"] = Json::array();
  for (const auto& r : rep.rows) j["rows"].push_back(to_json(r));
  return j;
}

// --- series ---------------------------------------------------------------

inline void write_series_csv(std::ostream& os, const SeriesReport& rep) {
  os << kCsvSchema << "\n" << "Q_checkpoint,S1,S2,S3,S_full,slope\n";
  for (const auto& c : rep.checkpoints) {
    os << c.q << ',' << format_real(c.s1) << ',' << format_real(c.s2) << ',' << format_real(c.s3) << ','
       << (c.s_full ? format_real(*c.s_full) : "") << ',' << format_real(c.slope) << '\n';
  }
}

inline Json to_json(const SeriesReport& rep) {
  Json j{{"s", json_real(rep.s)},
         {"Q", rep.Q},
         {"tail_slope", json_real(rep.tail_slope)},
         {"divergent", rep.divergent},
         {"capped_terms", rep.capped_terms}};
  j["checkpoints"] = Json::array();
  for (const auto& c : rep.checkpoints) {
    j["checkpoints"].push_back(Json{{"Q_checkpoint", c.q},
                                    {"S1", json_real(c.s1)},
                                    {"S2", json_real(c.s2)},
                                    {"S3", json_real(c.s3)},
                                    {"S_full", c.s_full ? json_real(*c.s_full) : Json(nullptr)},
                                    {"slope", json_real(c.slope)}});
  }
  if (!rep.block_ratios.empty()) {
    j["block_ratios"] = Json::array();
    for (double r : rep.block_ratios) j["block_ratios"].push_back(json_real(r));
  }
  return j;
}

inline void write_holder_csv(std::ostream& os, const HolderReport& rep) {
  os << kCsvSchema << "\n" << "Q_checkpoint,factor1,factor2,product,direct\n";
  for (const auto& c : rep.checkpoints) {
    os << c.q << ',' << format_real(c.factor1) << ',' << format_real(c.factor2) << ','
       << format_real(c.product) << ',' << format_real(c.direct) << '\n';
  }
}

inline Json to_json(const HolderReport& rep) {
  Json j{{"s", json_real(rep.s)},
         {"epsilon", json_real(rep.epsilon)},
         {"square_sum", json_real(rep.square_sum)},
         {"squarefree_regrouped", json_real(rep.squarefree_regrouped)},
         {"comparison", json_real(rep.comparison)},
         {"r_exponent", json_real(rep.r_exponent)},
         {"r_exponent_ok", rep.r_exponent_ok},
         {"t_exponent_ok", rep.t_exponent_ok}};
  j["checkpoints"] = Json::array();
  for (const auto& c : rep.checkpoints) {
    j["checkpoints"].push_back(Json{{"Q_checkpoint", c.q},
                                    {"factor1", json_real(c.factor1)},
                                    {"factor2", json_real(c.factor2)},
                                    {"product", json_real(c.product)},
                                    {"direct", json_real(c.direct)}});
  }
  return j;
}

}  // namespace parabola
