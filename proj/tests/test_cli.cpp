#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#ifndef REVPRIME_CLI_PATH
#error "REVPRIME_CLI_PATH must point at the built binary"
#endif

namespace {

struct RunResult {
  int exit_code;
  std::string out;
};

std::string slurp(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  std::ostringstream os;
  os << f.rdbuf();
  return os.str();
}

std::string temp_name(const std::string& tag) {
  static int counter = 0;
  return std::string("/tmp/revprime_cli_test_") + std::to_string(getpid()) + "_" + tag + "_" +
         std::to_string(counter++);
}

RunResult run_cli(const std::string& args) {
  std::string out_file = temp_name("stdout");
  std::string cmd = std::string(REVPRIME_CLI_PATH) + " " + args + " > " + out_file + " 2>&1";
  int status = std::system(cmd.c_str());
  RunResult r;
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  r.out = slurp(out_file);
  std::remove(out_file.c_str());
  return r;
}

}  // namespace

TEST_CASE("scan reproduces the threshold and exits 0") {
  RunResult r = run_cli("scan --bound 0.2 --lo 2 --hi 100000");
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("found=31699") != std::string::npos);

  // empty result is still exit 0 with an explicit message
  RunResult none = run_cli("scan --bound 0.2 --lo 2 --hi 10");
  CHECK(none.exit_code == 0);
  CHECK(none.out.find("found=none") != std::string::npos);
}

TEST_CASE("constants prints the threshold alpha") {
  RunResult r = run_cli("constants --g 31699");
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("0.1999997") != std::string::npos);
}

TEST_CASE("census and predict emit parseable json with schema 1") {
  RunResult r = run_cli("--format json census --g 10 --N 3 --q 7");
  CHECK(r.exit_code == 0);
  auto j = nlohmann::json::parse(r.out);
  CHECK(j["schema"] == 1);
  CHECK(j["records"].size() == 7);
  std::int64_t total = 0;
  for (const auto& rec : j["records"]) total += rec["count"].get<std::int64_t>();
  CHECK(total == 143);

  RunResult p = run_cli("--format json predict --g 10 --N 6 --q 7 --a 3");
  CHECK(p.exit_code == 0);
  auto pj = nlohmann::json::parse(p.out);
  double pred = pj["records"][0]["prediction"].get<double>();
  CHECK(pred == doctest::Approx(9306.31).epsilon(1e-4));
}

TEST_CASE("verify runs one lemma and exits 0") {
  RunResult r = run_cli("verify --lemma L1_discrete --g 10 --M 5 --seed 7 --samples 20");
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("violations=0") != std::string::npos);
}

TEST_CASE("remainder agrees with the census and exits 0") {
  RunResult r = run_cli("remainder --g 10 --N 4 --q 7 --a 3");
  CHECK(r.exit_code == 0);
  CHECK(r.out.find(",1") != std::string::npos);  // ok column
}

TEST_CASE("arcs summary honors the triangle inequality") {
  RunResult r = run_cli("--format json arcs --g 10 --N 3 --P 10 --Q 31 --q 7 --a 3");
  CHECK(r.exit_code == 0);
  auto j = nlohmann::json::parse(r.out);
  CHECK(j["split"]["triangle_ok"].get<bool>());
  CHECK(j["points"] == 1000);
  CHECK(j["major_count"].get<std::int64_t>() + j["minor_count"].get<std::int64_t>() == 1000);
}

TEST_CASE("usage and domain errors exit 2 with a message") {
  CHECK(run_cli("no_such_command").exit_code == 2);
  CHECK(run_cli("census --g 1 --N 3 --q 7").exit_code == 2);       // bad base
  CHECK(run_cli("census --g 10 --N 12 --q 7").exit_code == 2);     // cap exceeded
  CHECK(run_cli("verify --lemma not_a_lemma").exit_code == 2);     // unknown checker
  CHECK(run_cli("remainder --g 10 --q 7").exit_code == 2);         // missing required --N
}

TEST_CASE("identical run configs give byte-identical outputs") {
  std::string f1 = temp_name("rep1"), f2 = temp_name("rep2"), f3 = temp_name("rep3");
  std::string base = "verify --lemma strong_bound --seed 7 --samples 200 --out ";
  CHECK(run_cli("--format csv " + base + f1).exit_code == 0);
  CHECK(run_cli("--format csv " + base + f2).exit_code == 0);
  std::string a = slurp(f1), b = slurp(f2);
  CHECK(!a.empty());
  CHECK(a == b);

  // a different seed must actually change the sampled stream
  CHECK(run_cli("--format csv verify --lemma strong_bound --seed 8 --samples 200 --out " + f3)
            .exit_code == 0);
  CHECK(slurp(f3) != a);

  std::remove(f1.c_str());
  std::remove(f2.c_str());
  std::remove(f3.c_str());
}

TEST_CASE("verify accepts a JSON grid override file") {
  std::string grid = temp_name("grid") + ".json";
  {
    std::ofstream f(grid);
    f << R"({"seed": 42, "g": 10, "M": 4, "samples": 25})";
  }
  RunResult r = run_cli("verify --lemma L1_discrete --grid " + grid);
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("violations=0") != std::string::npos);
  std::remove(grid.c_str());

  CHECK(run_cli("verify --lemma L1_discrete --grid /no/such/file.json").exit_code == 2);
}

TEST_CASE("enumeration cap: env override and --cap flag") {
  // default cap admits g^N = 1e8 but not more
  CHECK(run_cli("census --g 10 --N 8 --q 3 --a 0").exit_code == 0);
  // an env cap of 1000 rejects N = 4
  std::string out_file = temp_name("env");
  int status = std::system((std::string("REVPRIME_ENUM_CAP=1000 ") + REVPRIME_CLI_PATH +
                            " census --g 10 --N 4 --q 3 > " + out_file + " 2>&1")
                               .c_str());
  CHECK(WEXITSTATUS(status) == 2);
  std::remove(out_file.c_str());
  // --cap flag does the same
  CHECK(run_cli("--cap 1000 census --g 10 --N 4 --q 3").exit_code == 2);
  CHECK(run_cli("--cap 1000 census --g 10 --N 3 --q 3").exit_code == 0);
}

TEST_CASE("census csv output is reproducible byte for byte") {
  std::string f1 = temp_name("c1"), f2 = temp_name("c2");
  CHECK(run_cli("census --g 2 --N 8 --q 5 --out " + f1).exit_code == 0);
  CHECK(run_cli("census --g 2 --N 8 --q 5 --out " + f2).exit_code == 0);
  CHECK(slurp(f1) == slurp(f2));
  std::remove(f1.c_str());
  std::remove(f2.c_str());
}
