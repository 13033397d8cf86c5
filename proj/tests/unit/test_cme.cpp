#include <doctest.h>

#include <cmath>

#include "drnet/cme.hpp"
#include "drnet/errors.hpp"
#include "drnet/poisson.hpp"
#include "testutil.hpp"

using namespace drnet;
using testnets::cx;
using testnets::vec;

namespace {

double sup_diff(const TruncatedPmf& a, const TruncatedPmf& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.p.size(); ++i) s = std::max(s, std::abs(a.p[i] - b.p[i]));
  return s;
}

}  // namespace

TEST_SUITE("cme") {
  TEST_CASE("stationary birth-death stays Poisson(1)") {
    const auto net = testnets::birth_death();
    const auto pmf = truncated_cme(net, vec({1.0}), {30}, 1.0, {.dt = 1e-3});
    const auto law = product_poisson_pmf(vec({1.0}), {30});
    CHECK(sup_diff(pmf, law) < 1e-8);
  }

  TEST_CASE("relaxing birth-death lands on Poisson(1 + exp(-t))") {
    const auto net = testnets::birth_death();
    const auto pmf = truncated_cme(net, vec({2.0}), {30}, 1.0, {.dt = 1e-3});
    const auto law = product_poisson_pmf(vec({1.0 + std::exp(-1.0)}), {30});
    CHECK(sup_diff(pmf, law) < 1e-6);
  }

  TEST_CASE("squares network keeps the joint product form") {
    const auto net = testnets::squares_exchange();
    const auto pmf = truncated_cme(net, vec({1, 2}), {30, 30}, 1.0, {.dt = 2e-4});
    const double e = std::exp(-0.5);
    const auto law = product_poisson_pmf(vec({2 - e, 4 - 2 * e}), {30, 30});
    CHECK(sup_diff(pmf, law) < 1e-6);
    CHECK(pmf.mean(0) == doctest::Approx(2 - e).epsilon(1e-6));
  }

  TEST_CASE("probability is conserved at every horizon") {
    const auto net = testnets::dimer_exchange();
    for (double T : {0.25, 0.5, 1.0}) {
      const auto pmf = truncated_cme(net, vec({1, 2}), {25, 25}, T, {.dt = 2e-4});
      CHECK(std::abs(pmf.total_mass() + pmf.leaked - 1.0) < 1e-9);
      for (double v : pmf.p) CHECK(v >= 0.0);
    }
  }

  TEST_CASE("restarting from an evolved pmf composes") {
    const auto net = testnets::birth_death();
    const CmeOptions opts{.dt = 1e-3};
    const auto half = truncated_cme(net, vec({2.0}), {30}, 0.5, opts);
    const auto full = truncated_cme(net, half, 0.5, opts);
    const auto direct = truncated_cme(net, vec({2.0}), {30}, 1.0, opts);
    CHECK(full.time == doctest::Approx(1.0));
    for (std::size_t i = 0; i < full.p.size(); ++i)
      CHECK(full.p[i] == doctest::Approx(direct.p[i]).epsilon(1e-10));
  }

  TEST_CASE("initial mass must fit in the box") {
    const auto net = testnets::birth_death();
    CHECK_THROWS_AS(truncated_cme(net, vec({50.0}), {10}, 0.5), BoxTooSmall);
  }

  TEST_CASE("leak budget aborts runaway boxes") {
    ReactionNetwork birth({"X"}, {{cx({0}), cx({1}), 2.0}});
    CHECK_THROWS_AS(truncated_cme(birth, vec({0.01}), {5}, 3.0, {.dt = 1e-3}), BoxTooSmall);
  }

  TEST_CASE("marginals and means of a product pmf") {
    const auto law = product_poisson_pmf(vec({1.5, 0.5}), {20, 20});
    const auto mx = law.marginal(0);
    const auto my = law.marginal(1);
    double sx = 0, sy = 0;
    for (std::size_t k = 0; k < mx.size(); ++k) sx += mx[k];
    for (std::size_t k = 0; k < my.size(); ++k) sy += my[k];
    CHECK(sx == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(sy == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(law.mean(0) == doctest::Approx(1.5).epsilon(1e-8));
    CHECK(law.mean(1) == doctest::Approx(0.5).epsilon(1e-8));

    StateVector x{2, 1};
    CHECK(law.prob(x) ==
          doctest::Approx(std::exp(-2.0) * 1.5 * 1.5 / 2.0 * 0.5).epsilon(1e-12));
    CHECK(law.prob({25, 0}) == 0.0);  // outside the box
  }
}
