// Drives the CLI binary end to end. The test runner passes the binary and
// the data directory through DRNET_BIN / DRNET_DATA / DRNET_TMP.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <nlohmann/json.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::string env_or_fail(const char* name) {
  const char* v = std::getenv(name);
  REQUIRE_MESSAGE(v != nullptr, name << " must be set");
  return v;
}

const std::string& bin() {
  static std::string b = env_or_fail("DRNET_BIN");
  return b;
}
const std::string& data() {
  static std::string d = env_or_fail("DRNET_DATA");
  return d;
}
const fs::path& tmp() {
  static fs::path t = [] {
    fs::path p = env_or_fail("DRNET_TMP");
    fs::create_directories(p);
    return p;
  }();
  return t;
}

struct RunResult {
  int exit_code;
  std::string out;
  std::string err;
};

RunResult run(const std::string& args, const std::string& extra_env = "") {
  const fs::path out = tmp() / "stdout.txt";
  const fs::path err = tmp() / "stderr.txt";
  const std::string cmd = extra_env + (extra_env.empty() ? "" : " ") + bin() + " " + args +
                          " >" + out.string() + " 2>" + err.string();
  const int raw = std::system(cmd.c_str());
  auto slurp = [](const fs::path& p) {
    std::ifstream in(p);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
  };
  return {WEXITSTATUS(raw), slurp(out), slurp(err)};
}

std::string slurp_file(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_SUITE("cli") {
  TEST_CASE("parse dumps the canonical network") {
    auto r = run("parse " + data() + "/squares_exchange.crn");
    CHECK(r.exit_code == 0);
    const json j = json::parse(r.out);
    CHECK(j["weaklyReversible"] == true);
    CHECK(j["order"] == 2);
    CHECK(j["linkageClasses"].size() == 2);
    CHECK(j["init"]["X"] == 1.0);
  }

  TEST_CASE("parse reports diagnostics and exits 1") {
    const fs::path bad = tmp() / "bad.crn";
    std::ofstream(bad) << "species X\nX -> X : 1\ninit X=1\n";
    auto r = run("parse " + bad.string());
    CHECK(r.exit_code == 1);
    CHECK(r.err.find("source equals product") != std::string::npos);

    auto missing = run("parse " + (tmp() / "nonexistent.crn").string());
    CHECK(missing.exit_code == 1);
  }

  TEST_CASE("parse flags the cascade as not weakly reversible") {
    auto r = run("parse " + data() + "/cascade.crn");
    CHECK(r.exit_code == 0);
    CHECK(json::parse(r.out)["weaklyReversible"] == false);
  }

  TEST_CASE("analyze exit codes follow the verdict") {
    auto holds = run("analyze " + data() + "/squares_exchange.crn --time 2");
    CHECK(holds.exit_code == 0);
    const json jh = json::parse(holds.out);
    CHECK(jh["verdict"] == "holds");
    CHECK(jh.contains("means"));

    auto fails = run("analyze " + data() + "/dimerization_branch.crn --time 2");
    CHECK(fails.exit_code == 2);
    const json jf = json::parse(fails.out);
    CHECK(jf["verdict"] == "fails");
    CHECK(jf["failingComplexes"] == json::array({"4Y"}));

    auto constant = run("analyze " + data() + "/squares_exchange_const.crn");
    CHECK(constant.exit_code == 0);
    CHECK(json::parse(constant.out)["verdict"] == "constantSolution");

    auto pair = run("analyze " + data() + "/pair_exchange.crn");
    CHECK(pair.exit_code == 2);
  }

  TEST_CASE("analyze can emit the mean trajectory as csv") {
    auto r = run("analyze " + data() + "/birth_death.crn --time 1 --format csv");
    CHECK(r.exit_code == 0);
    CHECK(r.out.substr(0, 4) == "t,X\n");
  }

  TEST_CASE("simulate writes summary, histograms, and is seed-reproducible") {
    const std::string prefix = (tmp() / "sim").string();
    auto r = run("simulate " + data() + "/dimer_exchange.crn -T 1 -N 2000 --seed 7 --out " +
                 prefix);
    CHECK(r.exit_code == 0);
    const json j = json::parse(slurp_file(prefix + ".json"));
    CHECK(j["N"] == 2000);
    CHECK(j["seed"] == 7);
    CHECK(j["species"].size() == 2);

    const std::string hx = slurp_file(prefix + ".X.csv");
    CHECK(hx.substr(0, 24) == "species,count,frequency\n");

    const std::string snap_json = slurp_file(prefix + ".json");
    auto again = run("simulate " + data() + "/dimer_exchange.crn -T 1 -N 2000 --seed 7 --out " +
                     prefix);
    CHECK(again.exit_code == 0);
    CHECK(slurp_file(prefix + ".json") == snap_json);
    CHECK(slurp_file(prefix + ".X.csv") == hx);
  }

  TEST_CASE("simulate with --emit-gnuplot writes an overlay script when the law holds") {
    const std::string prefix = (tmp() / "simgp").string();
    auto r = run("simulate " + data() + "/birth_death.crn -T 1 -N 500 --seed 3 --out " + prefix +
                 " --emit-gnuplot");
    CHECK(r.exit_code == 0);
    const std::string gp = slurp_file(prefix + ".gp");
    CHECK(gp.find("poisson(k, lam)") != std::string::npos);
    CHECK(gp.find(".X.csv") != std::string::npos);
  }

  TEST_CASE("compare passes a first-order network") {
    auto r = run("compare " + data() + "/birth_death.crn -T 1 -N 20000 --seed 11 --out " +
                 (tmp() / "cmp.json").string());
    CHECK(r.exit_code == 0);
    const json j = json::parse(slurp_file(tmp() / "cmp.json"));
    CHECK(j["pass"] == true);
    CHECK(j["species"][0]["tv"].get<double>() < 0.05);
    CHECK(j["species"][0]["pValue"].get<double>() > 1e-3);
  }

  TEST_CASE("compare reports dispersion diagnostics when the verdict fails") {
    auto r = run("compare " + data() + "/dimer_exchange.crn -T 1 -N 2000 --seed 11");
    CHECK(r.exit_code == 2);
    CHECK(r.err.find("variance/mean") != std::string::npos);
  }

  TEST_CASE("oracle confirms the stationary law at machine precision") {
    const fs::path stat = tmp() / "stationary.crn";
    std::ofstream(stat) << "species X\n0 <-> X : 1, 1\ninit X = 1\n";
    auto r = run("oracle " + stat.string() + " --time 1 --box 30");
    CHECK(r.exit_code == 0);
    CHECK(json::parse(r.out)["supNorm"].get<double>() < 1e-8);
  }

  TEST_CASE("worker count does not change simulate output") {
    const std::string a = (tmp() / "w1").string();
    const std::string b = (tmp() / "w4").string();
    auto r1 = run("simulate " + data() + "/dimer_exchange.crn -T 1 -N 1500 --seed 5 --out " + a,
                  "DRNET_THREADS=1");
    auto r4 = run("simulate " + data() + "/dimer_exchange.crn -T 1 -N 1500 --seed 5 --out " + b,
                  "DRNET_THREADS=4");
    CHECK(r1.exit_code == 0);
    CHECK(r4.exit_code == 0);
    CHECK(slurp_file(a + ".json") == slurp_file(b + ".json"));
    CHECK(slurp_file(a + ".Y.csv") == slurp_file(b + ".Y.csv"));
  }
}
