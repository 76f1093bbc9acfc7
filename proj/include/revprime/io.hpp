#pragma once

#include <cstdio>
#include <string>
#include <vector>

#include <json.hpp>

#include "revprime/boundcheck.hpp"
#include "revprime/census.hpp"
#include "revprime/constants.hpp"

namespace revprime {

// Shortest-exact decimal for doubles; %.17g round-trips and is byte-stable,
// which matters because identical runs must produce identical output files.
inline std::string fmt_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

inline std::string fmt_long_double(long double v) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.21Lg", v);
  return buf;
}

inline std::string csv_header_constants() { return "g,c_g,alpha_g,eval_bits"; }

inline std::string csv_row(const ConstantsRecord& r) {
  return std::to_string(r.g) + "," + fmt_long_double(r.c) + "," + fmt_long_double(r.alpha) + "," +
         std::to_string(r.eval_bits);
}

inline nlohmann::json to_json(const ConstantsRecord& r) {
  return {{"g", r.g},
          {"c_g", static_cast<double>(r.c)},
          {"alpha_g", static_cast<double>(r.alpha)},
          {"alpha_g_str", fmt_long_double(r.alpha)},
          {"eval_bits", r.eval_bits}};
}

inline std::string csv_header_census() {
  return "g,N,a,q,count,main_num,main_den,rem_num,rem_den,rho_num,rho_den,n0,prediction";
}

inline std::string csv_row(const CensusRecord& r) {
  return std::to_string(r.window.base) + "," + std::to_string(r.window.length) + "," +
         std::to_string(r.query.a) + "," + std::to_string(r.query.q) + "," +
         std::to_string(r.count) + "," + std::to_string(r.main.num) + "," +
         std::to_string(r.main.den) + "," + std::to_string(r.remainder.num) + "," +
         std::to_string(r.remainder.den) + "," + std::to_string(r.density.num) + "," +
         std::to_string(r.density.den) + "," + std::to_string(r.n0_value) + "," +
         fmt_double(r.prediction);
}

inline nlohmann::json to_json(const CensusRecord& r) {
  return {{"g", r.window.base},
          {"N", r.window.length},
          {"a", r.query.a},
          {"q", r.query.q},
          {"count", r.count},
          {"main", {{"num", r.main.num}, {"den", r.main.den}}},
          {"remainder", {{"num", r.remainder.num}, {"den", r.remainder.den}}},
          {"rho", {{"num", r.density.num}, {"den", r.density.den}}},
          {"n0", r.n0_value},
          {"prediction", r.prediction}};
}

inline std::string csv_header_boundcheck() { return "lemma,mode,lhs,rhs,slack,pass,params"; }

inline std::string csv_row(const BoundCheck& b) {
  std::string params;
  for (const auto& [k, v] : b.params) {
    if (!params.empty()) params += ';';
    params += k + "=" + fmt_double(v);
  }
  return b.lemma_id + "," + (b.mode == BoundCheck::Mode::exact ? "exact" : "ratio") + "," +
         fmt_double(b.lhs) + "," + fmt_double(b.rhs) + "," + fmt_double(b.slack) + "," +
         (b.pass ? "1" : "0") + "," + params;
}

inline nlohmann::json to_json(const BoundCheck& b) {
  nlohmann::json params = nlohmann::json::object();
  for (const auto& [k, v] : b.params) params[k] = v;
  nlohmann::json j = {{"lemma", b.lemma_id},
                      {"mode", b.mode == BoundCheck::Mode::exact ? "exact" : "ratio"},
                      {"lhs", b.lhs},
                      {"rhs", b.rhs},
                      {"slack", b.slack},
                      {"params", params}};
  if (b.mode == BoundCheck::Mode::exact) j["pass"] = b.pass;
  return j;
}

}  // namespace revprime
