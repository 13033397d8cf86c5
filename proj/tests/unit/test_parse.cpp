#include <doctest.h>

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <set>
#include <sstream>
#include <string>

#include "drnet/parse.hpp"
#include "drnet/rng.hpp"
#include "testutil.hpp"

using namespace drnet;

namespace {

bool has_error_containing(const ParseResult& r, const std::string& needle) {
  return std::any_of(r.diagnostics.begin(), r.diagnostics.end(), [&](const ParseDiagnostic& d) {
    return d.severity == Severity::error && d.message.find(needle) != std::string::npos;
  });
}

std::set<std::string> complex_formulas(const ReactionNetwork& net) {
  std::set<std::string> out;
  for (std::size_t i = 0; i < net.complexes().size(); ++i)
    out.insert(net.format_complex(static_cast<int>(i)));
  return out;
}

// Canonical form for order-insensitive comparison.
std::multiset<std::string> reaction_signatures(const ReactionNetwork& net) {
  std::multiset<std::string> out;
  char buf[64];
  for (const auto& r : net.reactions()) {
    std::snprintf(buf, sizeof buf, "%.17g", r.rate);
    out.insert(net.format_complex(r.source) + ">" + net.format_complex(r.product) + ":" + buf);
  }
  return out;
}

}  // namespace

TEST_SUITE("parse") {
  TEST_CASE("single reaction with init") {
    auto r = parse_network({"species X, Y; 2X -> 2Y : 4.0; init X=1, Y=2", "<test>"});
    REQUIRE(r.ok());
    CHECK(complex_formulas(*r.network) == std::set<std::string>{"2X", "2Y"});
    CHECK(r.network->reactions().size() == 1);
    CHECK(r.network->reactions()[0].rate == 4.0);
    REQUIRE(r.init.has_value());
    CHECK((*r.init)[0] == 1.0);
    CHECK((*r.init)[1] == 2.0);
  }

  TEST_CASE("structure-only parse without init") {
    auto r = parse_network({"species S1,S2,S3; S1+S2 -> S3 : 1", "<test>"},
                           /*require_init=*/false);
    REQUIRE(r.ok());
    CHECK(complex_formulas(*r.network) == std::set<std::string>{"S1+S2", "S3"});
    CHECK(r.network->reactions().size() == 1);
    CHECK_FALSE(r.init.has_value());
  }

  TEST_CASE("self-loop reaction is rejected") {
    auto r = parse_network({"species X; X -> X : 1; init X=1", "<test>"});
    CHECK_FALSE(r.ok());
    CHECK(has_error_containing(r, "source equals product"));
  }

  TEST_CASE("reversible arrow expands to two reactions") {
    auto r = parse_network({"species X, Y\nX <-> 2Y : 3, 7\ninit X=1, Y=1\n", "<test>"});
    REQUIRE(r.ok());
    REQUIRE(r.network->reactions().size() == 2);
    CHECK(r.network->reactions()[0].rate == 3.0);
    CHECK(r.network->reactions()[1].rate == 7.0);
    CHECK(r.network->reactions()[1].source == r.network->reactions()[0].product);
  }

  TEST_CASE("diagnostics carry 1-based lines") {
    auto r = parse_network({"species X\n# comment\nX -> 0 : -2\ninit X=1\n", "<test>"});
    CHECK_FALSE(r.ok());
    REQUIRE(r.diagnostics.size() == 1);
    CHECK(r.diagnostics[0].line == 3);
    CHECK(has_error_containing(r, "negative"));
  }

  TEST_CASE("error catalogue") {
    CHECK(has_error_containing(
        parse_network({"species X; X -> Q : 1; init X=1", ""}), "unknown species 'Q'"));
    CHECK(has_error_containing(
        parse_network({"species X; 0 -> X : fast; init X=1", ""}), "not a finite number"));
    CHECK(has_error_containing(
        parse_network({"species X, X; 0 -> X : 1; init X=1", ""}), "duplicate species"));
    CHECK(has_error_containing(parse_network({"species X; 0 -> X : 1", ""}), "missing init"));
    CHECK(has_error_containing(
        parse_network({"species X; 0 -> X : 1; init X=1, X=2", ""}), "duplicate init"));
    CHECK(has_error_containing(
        parse_network({"species X; 0 -> X : 1; init X=0", ""}), "strictly positive"));
    CHECK(has_error_containing(
        parse_network({"species X, Y; 0 -> X : 1; init X=1", ""}), "missing init value"));
    CHECK(has_error_containing(
        parse_network({"species X; X <-> 0 : 1; init X=1", ""}), "two rates"));
    CHECK(has_error_containing(
        parse_network({"species X; 0 -> X : 1, 2; init X=1", ""}), "one rate"));
    CHECK(has_error_containing(
        parse_network({"species X; 0X -> X : 1; init X=1", ""}), "positive integer"));
    CHECK(has_error_containing(
        parse_network({"species X; 0 -> X + 0 : 1; init X=1", ""}), "empty complex"));
    CHECK(has_error_containing(parse_network({"species X; hello; init X=1", ""}),
                               "unrecognized statement"));
    CHECK(has_error_containing(parse_network({"", ""}), "no species"));
    CHECK(has_error_containing(parse_network({"species X; init X=1", ""}), "no reactions"));
  }

  TEST_CASE("coefficients bind with or without whitespace") {
    auto r = parse_network(
        {"species S1, S2, S3\n4S1 + S2 <-> 3 S3 : 1, 2\ninit S1=1, S2=1, S3=1\n", ""});
    REQUIRE(r.ok());
    CHECK(complex_formulas(*r.network) == std::set<std::string>{"4S1+S2", "3S3"});
  }

  TEST_CASE("validate flags unused species and zero rates") {
    ReactionNetwork unused({"X", "W"},
                           {{testnets::cx({1, 0}), testnets::cx({2, 0}), 1.0},
                            {testnets::cx({2, 0}), testnets::cx({1, 0}), 1.0}});
    auto diags = validate_network(unused);
    REQUIRE(diags.size() == 1);
    CHECK(diags[0].severity == Severity::error);
    CHECK(diags[0].message.find("'W'") != std::string::npos);

    ReactionNetwork zero({"X"}, {{testnets::cx({0}), testnets::cx({1}), 0.0},
                                 {testnets::cx({1}), testnets::cx({0}), 1.0}});
    auto zdiags = validate_network(zero);
    REQUIRE(zdiags.size() == 1);
    CHECK(zdiags[0].severity == Severity::warning);
  }

  TEST_CASE("well-formed fixtures validate cleanly") {
    for (const auto& net :
         {testnets::squares_exchange(), testnets::decaying_dimerization(), testnets::cascade()})
      CHECK(validate_network(net).empty());
  }

  TEST_CASE("pretty-print round trip") {
    const auto nets = {testnets::squares_exchange(), testnets::dimerization_branch(),
                       testnets::triplet_chain(), testnets::pair_exchange()};
    for (const auto& net : nets) {
      Eigen::VectorXd init = Eigen::VectorXd::Constant(net.dim(), 1.5);
      const std::string text = pretty_print(net, &init);
      auto r = parse_network({text, "<roundtrip>"});
      REQUIRE(r.ok());
      CHECK(r.network->species() == net.species());
      CHECK(reaction_signatures(*r.network) == reaction_signatures(net));
      CHECK(*r.init == init);
    }
  }

  TEST_CASE("round trip preserves awkward rates") {
    auto first = parse_network(
        {"species A, B\nA -> B : 0.30000000000000004\nB -> A : 1e-17\ninit A=1, B=1\n", ""});
    REQUIRE(first.ok());
    auto second = parse_network({pretty_print(*first.network, &*first.init), ""});
    REQUIRE(second.ok());
    CHECK(reaction_signatures(*second.network) == reaction_signatures(*first.network));
  }

  TEST_CASE("shipped network files match the fixtures") {
    const char* dir = std::getenv("DRNET_DATA");
    if (!dir) return;  // only checked under ctest
    auto load = [&](const char* name) {
      std::ifstream in(std::string(dir) + "/" + name);
      REQUIRE(in.good());
      std::stringstream ss;
      ss << in.rdbuf();
      auto r = parse_network({ss.str(), name});
      REQUIRE(r.ok());
      return std::move(*r.network);
    };
    struct Pair {
      const char* file;
      ReactionNetwork fixture;
    };
    const std::vector<Pair> pairs = {
        {"squares_exchange.crn", testnets::squares_exchange()},
        {"dimer_exchange.crn", testnets::dimer_exchange()},
        {"decaying_dimerization.crn", testnets::decaying_dimerization()},
        {"dimerization_branch.crn", testnets::dimerization_branch()},
        {"pair_exchange.crn", testnets::pair_exchange()},
        {"triplet_chain.crn", testnets::triplet_chain()},
        {"cascade.crn", testnets::cascade()},
        {"birth_death.crn", testnets::birth_death()},
    };
    for (const auto& [file, fixture] : pairs) {
      const auto net = load(file);
      CHECK(net.species() == fixture.species());
      CHECK(reaction_signatures(net) == reaction_signatures(fixture));
    }
  }

  TEST_CASE("parsing is total on fuzzed input") {
    static const char* bits[] = {"species", "init", "->", "<->", ":", ",", "=",  "X",
                                 "Y",       "2",    "0", "+",    ";", "#", "\n", " ",
                                 "-1",      "1e300", "q", "."};
    Xoshiro256 rng(0xF00D);
    for (int iter = 0; iter < 300; ++iter) {
      std::string text;
      const int n = 1 + static_cast<int>(rng.next() % 40);
      for (int i = 0; i < n; ++i) text += bits[rng.next() % (sizeof(bits) / sizeof(*bits))];
      auto r = parse_network({text, "<fuzz>"});  // must not crash
      if (!r.ok()) {
        bool any_error = false;
        for (const auto& d : r.diagnostics) any_error |= d.severity == Severity::error;
        CHECK(any_error);
      }
    }
  }
}
