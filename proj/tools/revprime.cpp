// revprime: reversed-prime censuses, digit exponential sums, and the
// inequality/circle-method verification lab behind them.
//
// Subcommands: constants, scan, census, predict, verify, remainder, arcs.
// Exit codes: 0 all good, 1 exact-mode violation detected, 2 usage error.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "revprime/census.hpp"
#include "revprime/circle.hpp"
#include "revprime/config.hpp"
#include "revprime/constants.hpp"
#include "revprime/expsum.hpp"
#include "revprime/ineq_lab.hpp"
#include "revprime/io.hpp"

using nlohmann::json;
using namespace revprime;

namespace {

// Everything a run needs to be replayed exactly: the subcommand, its
// parameters (ordered, so serialization is stable), the seed where sampling
// is involved, and the output channel.  Identical RunConfigs must produce
// byte-identical output files.
struct RunConfig {
  std::string command;
  std::map<std::string, std::string> params;
  std::string format = "csv";  // csv | json
  std::string out_path;        // empty = stdout

  void set(const std::string& key, const std::string& value) { params[key] = value; }

  std::string comment_line() const {
    std::string line = "# schema=1 command=" + command;
    for (const auto& [k, v] : params) line += " " + k + "=" + v;
    return line;
  }

  json to_json_header() const {
    json j = {{"schema", 1}, {"command", command}};
    json p = json::object();
    for (const auto& [k, v] : params) p[k] = v;
    j["params"] = p;
    return j;
  }

  void write(const std::string& body) const {
    if (out_path.empty()) {
      std::cout << body;
      if (!body.empty() && body.back() != '\n') std::cout << '\n';
    } else {
      std::ofstream f(out_path, std::ios::binary);
      if (!f) throw std::runtime_error("cannot open output file: " + out_path);
      f << body;
      if (!body.empty() && body.back() != '\n') f << '\n';
    }
  }
};

template <class Row>
std::string render_rows(const RunConfig& rc, const std::string& csv_header,
                        const std::vector<Row>& rows) {
  if (rc.format == "json") {
    json j = rc.to_json_header();
    json arr = json::array();
    for (const auto& r : rows) arr.push_back(to_json(r));
    j["records"] = arr;
    return j.dump(2);
  }
  std::string out = rc.comment_line() + "\n" + csv_header + "\n";
  for (const auto& r : rows) out += csv_row(r) + "\n";
  return out;
}

int cmd_constants(const std::vector<std::int64_t>& gs, std::int64_t lo, std::int64_t hi,
                  RunConfig rc) {
  std::vector<std::int64_t> targets = gs;
  if (targets.empty())
    for (std::int64_t g = lo; g <= hi; ++g) targets.push_back(g);
  std::vector<ConstantsRecord> rows;
  rows.reserve(targets.size());
  for (std::int64_t g : targets) rows.push_back(constants_record(g));
  if (!gs.empty()) {
    std::string list;
    for (std::int64_t g : gs) list += (list.empty() ? "" : "+") + std::to_string(g);
    rc.set("g", list);
  } else {
    rc.set("lo", std::to_string(lo));
    rc.set("hi", std::to_string(hi));
  }
  rc.write(render_rows(rc, csv_header_constants(), rows));
  return 0;
}

int cmd_scan(std::int64_t lo, std::int64_t hi, double bound, RunConfig rc) {
  auto found = threshold_scan(lo, hi, bound);
  rc.set("lo", std::to_string(lo));
  rc.set("hi", std::to_string(hi));
  rc.set("bound", fmt_double(bound));
  std::vector<ConstantsRecord> table;
  if (found) {
    for (std::int64_t g = std::max(lo, *found - 2); g <= std::min(hi, *found + 2); ++g)
      table.push_back(constants_record(g));
  }
  if (rc.format == "json") {
    json j = rc.to_json_header();
    j["found"] = found ? json(*found) : json(nullptr);
    json arr = json::array();
    for (const auto& r : table) arr.push_back(to_json(r));
    j["boundary"] = arr;
    rc.write(j.dump(2));
  } else {
    std::string out = rc.comment_line() + "\n";
    out += found ? "# found=" + std::to_string(*found) + "\n"
                 : "# found=none (no g in range with alpha_g below bound)\n";
    out += csv_header_constants() + "\n";
    for (const auto& r : table) out += csv_row(r) + "\n";
    rc.write(out);
  }
  if (!found) std::cerr << "scan: no base in [" << lo << ", " << hi << "] below " << bound << "\n";
  return 0;
}

int cmd_census(std::int64_t g, int n, std::int64_t q, std::optional<std::int64_t> a, RunConfig rc,
               bool predictions_only) {
  Window w(g, n);
  std::vector<CensusRecord> rows;
  if (a)
    rows.push_back(census(w, Query(*a, q)));
  else
    rows = census_all(w, q);
  rc.set("g", std::to_string(g));
  rc.set("N", std::to_string(n));
  rc.set("q", std::to_string(q));
  if (a) rc.set("a", std::to_string(*a));
  if (!predictions_only) {
    rc.write(render_rows(rc, csv_header_census(), rows));
    return 0;
  }
  if (rc.format == "json") {
    json j = rc.to_json_header();
    json arr = json::array();
    for (const auto& r : rows)
      arr.push_back({{"g", g},
                     {"N", n},
                     {"a", r.query.a},
                     {"q", q},
                     {"rho", {{"num", r.density.num}, {"den", r.density.den}}},
                     {"prediction", r.prediction}});
    j["records"] = arr;
    rc.write(j.dump(2));
  } else {
    std::string out = rc.comment_line() + "\ng,N,a,q,rho_num,rho_den,prediction\n";
    for (const auto& r : rows)
      out += std::to_string(g) + "," + std::to_string(n) + "," + std::to_string(r.query.a) + "," +
             std::to_string(q) + "," + std::to_string(r.density.num) + "," +
             std::to_string(r.density.den) + "," + fmt_double(r.prediction) + "\n";
    rc.write(out);
  }
  return 0;
}

int cmd_verify(const std::string& lemma, const std::string& grid, std::uint64_t seed,
               std::optional<std::int64_t> g, std::optional<int> m, std::optional<int> samples,
               RunConfig rc) {
  LabConfig cfg;
  cfg.seed = seed;
  cfg.g = g;
  cfg.m = m;
  cfg.samples = samples;
  if (grid == "quick" && !samples) cfg.samples = 50;
  if (grid != "default" && grid != "quick") {
    std::ifstream f(grid);
    if (!f) throw CLI::ValidationError("--grid", "grid preset or file not found: " + grid);
    json j = json::parse(f);
    if (j.contains("seed")) cfg.seed = j["seed"].get<std::uint64_t>();
    if (j.contains("g")) cfg.g = j["g"].get<std::int64_t>();
    if (j.contains("M")) cfg.m = j["M"].get<int>();
    if (j.contains("samples")) cfg.samples = j["samples"].get<int>();
  }

  std::vector<std::string> names;
  if (lemma == "all")
    for (const auto& c : checker_registry()) names.push_back(c.name);
  else
    names.push_back(lemma);

  std::vector<BoundCheck> stream;
  std::int64_t violations = 0;
  for (const auto& name : names) {
    auto rows = run_checker(name, cfg);
    std::int64_t v = count_violations(rows);
    violations += v;
    double worst = std::numeric_limits<double>::infinity();
    double max_ratio = 0.0;
    for (const auto& r : rows) {
      if (r.mode == BoundCheck::Mode::exact)
        worst = std::min(worst, r.slack);
      else
        max_ratio = std::max(max_ratio, r.slack);
    }
    std::cout << name << ": rows=" << rows.size() << " violations=" << v;
    if (worst != std::numeric_limits<double>::infinity())
      std::cout << " min_slack=" << fmt_double(worst);
    if (max_ratio > 0.0) std::cout << " max_ratio=" << fmt_double(max_ratio);
    std::cout << "\n";
    stream.insert(stream.end(), rows.begin(), rows.end());
  }

  if (!rc.out_path.empty()) {
    rc.set("lemma", lemma);
    rc.set("grid", grid);
    rc.set("seed", std::to_string(seed));
    if (g) rc.set("g", std::to_string(*g));
    if (m) rc.set("M", std::to_string(*m));
    if (samples) rc.set("samples", std::to_string(*samples));
    rc.write(render_rows(rc, csv_header_boundcheck(), stream));
  }
  std::cout << "total: rows=" << stream.size() << " violations=" << violations << "\n";
  return violations == 0 ? 0 : 1;
}

int cmd_remainder(std::int64_t g, int n, std::int64_t q, std::optional<std::int64_t> a_opt,
                  int threads, RunConfig rc) {
  Window w(g, n);
  RemainderKSums ks = remainder_ksums(w, q, threads);
  std::vector<std::int64_t> as;
  if (a_opt)
    as.push_back(*a_opt);
  else
    for (std::int64_t a = 0; a < q; ++a) as.push_back(a);

  auto records = census_all(w, q);
  bool all_ok = true;
  json arr = json::array();
  std::string csv = "g,N,a,q,count,main_num,main_den,exact_remainder,spectral_remainder,abs_diff,ok\n";
  for (std::int64_t a : as) {
    const CensusRecord& r = records[static_cast<std::size_t>(a)];
    double spectral = remainder_from_ksums(ks, a);
    double diff = std::abs(spectral - r.remainder.to_double());
    bool ok = diff < 1e-6;
    all_ok &= ok;
    arr.push_back({{"a", a},
                   {"count", r.count},
                   {"main", {{"num", r.main.num}, {"den", r.main.den}}},
                   {"exact_remainder", r.remainder.to_double()},
                   {"spectral_remainder", spectral},
                   {"abs_diff", diff},
                   {"ok", ok}});
    csv += std::to_string(g) + "," + std::to_string(n) + "," + std::to_string(a) + "," +
           std::to_string(q) + "," + std::to_string(r.count) + "," + std::to_string(r.main.num) +
           "," + std::to_string(r.main.den) + "," + fmt_double(r.remainder.to_double()) + "," +
           fmt_double(spectral) + "," + fmt_double(diff) + "," + (ok ? "1" : "0") + "\n";
  }
  rc.set("g", std::to_string(g));
  rc.set("N", std::to_string(n));
  rc.set("q", std::to_string(q));
  rc.set("threads", std::to_string(threads));
  if (a_opt) rc.set("a", std::to_string(*a_opt));
  if (rc.format == "json") {
    json j = rc.to_json_header();
    j["records"] = arr;
    j["all_ok"] = all_ok;
    rc.write(j.dump(2));
  } else {
    rc.write(rc.comment_line() + "\n" + csv);
  }
  return all_ok ? 0 : 1;
}

int cmd_arcs(std::int64_t g, int n, std::int64_t P, std::int64_t Q,
             std::optional<std::int64_t> q, std::int64_t a, bool full, int rows,
             std::uint64_t seed, int threads, RunConfig rc) {
  Window w(g, n);
  ArcPartition part = dissect(w, P, Q);
  rc.set("g", std::to_string(g));
  rc.set("N", std::to_string(n));
  rc.set("P", std::to_string(P));
  rc.set("Q", std::to_string(Q));
  rc.set("seed", std::to_string(seed));
  if (q) rc.set("q", std::to_string(*q));

  json j = rc.to_json_header();
  j["points"] = static_cast<std::int64_t>(part.points.size());
  j["major_count"] = part.major_count;
  j["minor_count"] = static_cast<std::int64_t>(part.points.size()) - part.major_count;
  j["multi_candidate"] = part.multi_candidate;
  j["strict_parameters"] = part.strict_parameters;
  j["major_p3_ratio"] =
      static_cast<double>(part.major_count) / std::pow(static_cast<double>(P), 3.0);

  if (q) {
    ArcReport rep = arc_split_report(part, Query(a, *q), threads);
    j["split"] = {{"q", *q},
                  {"a", a},
                  {"r_major", rep.r_major},
                  {"r_minor", rep.r_minor},
                  {"remainder", rep.remainder},
                  {"triangle_ok", rep.triangle_ok},
                  {"major_bound_ratio", rep.major_bound_ratio},
                  {"minor_envelope_ratio", rep.minor_envelope_ratio}};
    auto sn = sn_ratio_report(w, part, rows, seed);
    json snj = json::array();
    for (const auto& b : sn) snj.push_back(to_json(b));
    j["sn_ratios"] = snj;
  }
  // default output is the summary; the per-h list only appears on request
  // (and so, in particular, never above g^N = 1e5 without --full)
  if (full) {
    json pts = json::array();
    for (const auto& p : part.points)
      pts.push_back({{"h", p.h},
                     {"b", p.b},
                     {"r", p.r},
                     {"eta_num", p.eta.num},
                     {"eta_den", p.eta.den},
                     {"major", p.major}});
    j["points_full"] = pts;
  }
  if (rc.format == "json") {
    rc.write(j.dump(2));
  } else {
    std::string out = rc.comment_line() + "\n";
    out += "key,value\n";
    for (auto& [key, val] : j.items())
      if (key != "points_full" && key != "sn_ratios" && key != "split" && key != "params" &&
          key != "schema" && key != "command")
        out += key + "," + val.dump() + "\n";
    if (j.contains("split"))
      for (auto& [key, val] : j["split"].items()) out += "split." + key + "," + val.dump() + "\n";
    rc.write(out);
  }
  bool triangle_ok = !q || j["split"]["triangle_ok"].get<bool>();
  return triangle_ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"reversed-prime census and exponential-sum verification tool"};
  app.require_subcommand(1);
  app.fallthrough();  // global --format/--out/--cap may follow the subcommand

  std::string format = "csv";
  std::string out_path;
  std::int64_t cap = 0;
  app.add_option("--format", format, "output format: csv or json")
      ->check(CLI::IsMember({"csv", "json"}));
  app.add_option("--out", out_path, "write results to this file instead of stdout");
  app.add_option("--cap", cap, "enumeration cap override (also REVPRIME_ENUM_CAP)");

  // constants
  auto* c_constants = app.add_subcommand("constants", "evaluate C_g and alpha_g");
  std::vector<std::int64_t> c_gs;
  std::int64_t c_lo = 2, c_hi = 10;
  c_constants->add_option("--g", c_gs, "base(s) to evaluate");
  c_constants->add_option("--lo", c_lo, "range start (used when no --g)");
  c_constants->add_option("--hi", c_hi, "range end");

  // scan
  auto* c_scan = app.add_subcommand("scan", "find the smallest base with alpha_g below a bound");
  double s_bound = 0.2;
  std::int64_t s_lo = 2, s_hi = 100000;
  c_scan->add_option("--bound", s_bound, "threshold on alpha_g")->required();
  c_scan->add_option("--lo", s_lo, "range start");
  c_scan->add_option("--hi", s_hi, "range end");

  // census / predict
  std::int64_t x_g = 10, x_q = 1;
  int x_n = 3;
  std::optional<std::int64_t> x_a;
  auto add_census_opts = [&](CLI::App* cmd) {
    cmd->add_option("--g", x_g, "base")->required();
    cmd->add_option("--N", x_n, "digit length")->required();
    cmd->add_option("--q", x_q, "modulus")->required();
    cmd->add_option("--a", x_a, "residue (default: all residues)");
  };
  auto* c_census = app.add_subcommand("census", "count reversed primes in progressions");
  add_census_opts(c_census);
  auto* c_predict = app.add_subcommand("predict", "density-based census prediction");
  add_census_opts(c_predict);

  // verify
  auto* c_verify = app.add_subcommand("verify", "run inequality checkers");
  std::string v_lemma = "all", v_grid = "default";
  std::uint64_t v_seed = 1;
  std::optional<std::int64_t> v_g;
  std::optional<int> v_m, v_samples;
  c_verify->add_option("--lemma", v_lemma, "checker name or 'all'");
  c_verify->add_option("--grid", v_grid, "default, quick, or a JSON override file");
  c_verify->add_option("--seed", v_seed, "sampling seed");
  c_verify->add_option("--g", v_g, "restrict to one base");
  c_verify->add_option("--M", v_m, "override the length parameter");
  c_verify->add_option("--samples", v_samples, "override samples per cell");

  // remainder
  auto* c_rem = app.add_subcommand("remainder", "census vs spectral remainder");
  std::int64_t r_g = 10, r_q = 7;
  int r_n = 4, r_threads = 0;
  std::optional<std::int64_t> r_a;
  c_rem->add_option("--g", r_g, "base")->required();
  c_rem->add_option("--N", r_n, "digit length")->required();
  c_rem->add_option("--q", r_q, "modulus")->required();
  c_rem->add_option("--a", r_a, "residue (default: all residues)");
  c_rem->add_option("--threads", r_threads, "worker threads (0 = hardware)");

  // arcs
  auto* c_arcs = app.add_subcommand("arcs", "Farey dissection and arc split");
  std::int64_t a_g = 10, a_P = 10, a_Q = 50, a_a = 0;
  int a_n = 3, a_rows = 64, a_threads = 0;
  std::optional<std::int64_t> a_q;
  std::uint64_t a_seed = 1;
  bool a_full = false;
  c_arcs->add_option("--g", a_g, "base")->required();
  c_arcs->add_option("--N", a_n, "digit length")->required();
  c_arcs->add_option("--P", a_P, "major-arc cutoff")->required();
  c_arcs->add_option("--Q", a_Q, "Farey order")->required();
  c_arcs->add_option("--q", a_q, "modulus for the arc split report");
  c_arcs->add_option("--a", a_a, "residue for the arc split report");
  c_arcs->add_option("--rows", a_rows, "sampled ratio rows");
  c_arcs->add_option("--seed", a_seed, "sampling seed");
  c_arcs->add_option("--threads", a_threads, "worker threads");
  c_arcs->add_flag("--full", a_full, "emit the full point list (large)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (cap > 0) set_enum_cap(cap);
    RunConfig rc;
    rc.format = format;
    rc.out_path = out_path;
    if (*c_constants) {
      rc.command = "constants";
      return cmd_constants(c_gs, c_lo, c_hi, rc);
    }
    if (*c_scan) {
      rc.command = "scan";
      return cmd_scan(s_lo, s_hi, s_bound, rc);
    }
    if (*c_census) {
      rc.command = "census";
      return cmd_census(x_g, x_n, x_q, x_a, rc, false);
    }
    if (*c_predict) {
      rc.command = "predict";
      return cmd_census(x_g, x_n, x_q, x_a, rc, true);
    }
    if (*c_verify) {
      rc.command = "verify";
      return cmd_verify(v_lemma, v_grid, v_seed, v_g, v_m, v_samples, rc);
    }
    if (*c_rem) {
      rc.command = "remainder";
      return cmd_remainder(r_g, r_n, r_q, r_a, r_threads, rc);
    }
    if (*c_arcs) {
      rc.command = "arcs";
      return cmd_arcs(a_g, a_n, a_P, a_Q, a_q, a_a, a_full, a_rows, a_seed, a_threads, rc);
    }
  } catch (const std::length_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
