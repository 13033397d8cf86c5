// Randomized cross-module consistency checks on small generated networks.

#include <doctest.h>

#include <cmath>
#include <optional>

#include "drnet/dr.hpp"
#include "drnet/errors.hpp"
#include "drnet/ode.hpp"
#include "drnet/parse.hpp"
#include "drnet/poisson.hpp"
#include "drnet/reduction.hpp"
#include "drnet/rng.hpp"
#include "testutil.hpp"

using namespace drnet;

namespace {

// All complexes of order <= 2 over d species.
std::vector<Complex> complex_pool(int d) {
  std::vector<Complex> pool;
  std::vector<int> v(static_cast<std::size_t>(d), 0);
  // order 0
  pool.push_back({v});
  for (int i = 0; i < d; ++i) {
    auto e = v;
    e[static_cast<std::size_t>(i)] = 1;
    pool.push_back({e});  // order 1
    for (int j = i; j < d; ++j) {
      auto f = e;
      f[static_cast<std::size_t>(j)] += 1;
      pool.push_back({f});  // order 2
    }
  }
  return pool;
}

std::optional<ReactionNetwork> random_network(Xoshiro256& rng) {
  const int d = 1 + static_cast<int>(rng.next() % 3);
  const auto pool = complex_pool(d);
  const int n_reactions = 2 + static_cast<int>(rng.next() % 5);
  std::vector<Reaction> rs;
  for (int k = 0; k < n_reactions; ++k) {
    const auto& a = pool[rng.next() % pool.size()];
    const auto& b = pool[rng.next() % pool.size()];
    if (a == b) continue;
    bool dup = false;
    for (const auto& r : rs) dup = dup || (r.source == a && r.product == b);
    if (dup) continue;
    rs.push_back({a, b, 0.1 + 1.9 * rng.uniform01()});
  }
  if (rs.size() < 2) return std::nullopt;
  std::vector<std::string> names;
  for (int i = 0; i < d; ++i) names.push_back("S" + std::to_string(i + 1));
  ReactionNetwork net(names, rs);
  for (const auto& diag : validate_network(net))
    if (diag.severity == Severity::error) return std::nullopt;  // unused species
  return net;
}

Eigen::VectorXd random_state(int d, Xoshiro256& rng) {
  Eigen::VectorXd c(d);
  for (int i = 0; i < d; ++i) c[i] = 0.3 + 2.2 * rng.uniform01();
  return c;
}

}  // namespace

TEST_SUITE("random-networks") {
  TEST_CASE("structural invariants hold on generated networks") {
    Xoshiro256 rng(0xFEED);
    int generated = 0;
    for (int trial = 0; trial < 400 && generated < 200; ++trial) {
      auto maybe = random_network(rng);
      if (!maybe) continue;
      ++generated;
      const auto& net = *maybe;

      std::size_t total = 0;
      for (const auto& cls : linkage_classes(net)) total += cls.size();
      CHECK(total == net.complexes().size());

      const Eigen::VectorXd u = random_state(net.dim(), rng);
      CHECK((drift_vector(net, u) - mass_action_rhs(net, u)).lpNorm<Eigen::Infinity>() <=
            1e-12 * (1.0 + mass_action_rhs(net, u).lpNorm<Eigen::Infinity>()));

      for (const auto& red : build_reduction(net)) {
        for (int i = 0; i < red.A.rows(); ++i) {
          double row_sum = red.A(i, i);
          for (int j = 0; j < red.A.rows(); ++j)
            if (j != i) row_sum += red.A(j, i);
          CHECK(row_sum == doctest::Approx(red.lower_outflow(i)).epsilon(1e-12));
        }
      }
    }
    CHECK(generated == 200);
  }

  TEST_CASE("a holds verdict is sound: product-form identity and nonlinear agreement") {
    Xoshiro256 rng(0xFACADE);
    int holds_seen = 0, analyzed = 0;
    for (int trial = 0; trial < 600; ++trial) {
      auto maybe = random_network(rng);
      if (!maybe) continue;
      const auto& net = *maybe;
      const Eigen::VectorXd c0 = random_state(net.dim(), rng);

      DRReport rep;
      try {
        rep = verify_dr(net, c0, {.T = 1.5, .grid_size = 31});
      } catch (const std::exception&) {
        continue;
      }
      ++analyzed;
      if (rep.verdict == Verdict::fails) continue;
      ++holds_seen;

      // The law must actually solve the forward equation: flux-weighted
      // g-differences vanish along the flow for every state probed.
      const auto samples = default_g_samples(net.dim(), network_order(net));
      double scale = 1.0;
      for (int z = 0; z < static_cast<int>(net.complexes().size()); ++z)
        scale = std::max(scale, complex_flux_magnitude(net, z, c0));
      for (std::size_t ti = 0; ti < rep.means.states.size(); ti += 10) {
        for (std::size_t si = 0; si < samples.size(); si += 11) {
          CHECK(std::abs(master_identity_residual(net, rep.means.states[ti], samples[si])) <=
                1e-7 * scale);
        }
      }

      // And the closed form must track the nonlinear integrator.
      if (rep.verdict == Verdict::holds) {
        try {
          const auto rk = integrate_ode(net, c0, 1.5, 1.5 / 3000.0);
          const auto& lin = rep.means.back();
          const auto& non = rk.back();
          CHECK((lin - non).lpNorm<Eigen::Infinity>() <=
                1e-6 * (1.0 + lin.lpNorm<Eigen::Infinity>()));
        } catch (const BlowUpError&) {
          // a genuine holds verdict cannot blow up; flag it
          CHECK_MESSAGE(false, "nonlinear flow blew up under a holds verdict");
        }
      }
    }
    // The generator must exercise both code paths.
    CHECK(analyzed > 100);
    CHECK(holds_seen > 3);
  }

  TEST_CASE("pretty-print round trip on generated networks") {
    Xoshiro256 rng(0xB00);
    int checked = 0;
    for (int trial = 0; trial < 100 && checked < 40; ++trial) {
      auto maybe = random_network(rng);
      if (!maybe) continue;
      ++checked;
      const auto& net = *maybe;
      Eigen::VectorXd init = random_state(net.dim(), rng);
      auto reparsed = parse_network({pretty_print(net, &init), "<roundtrip>"});
      REQUIRE(reparsed.ok());
      CHECK(reparsed.network->species() == net.species());
      CHECK(reparsed.network->reactions().size() == net.reactions().size());
      for (int i = 0; i < init.size(); ++i) CHECK((*reparsed.init)[i] == init[i]);
    }
    CHECK(checked == 40);
  }
}
