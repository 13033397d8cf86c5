#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "drnet/network.hpp"
#include "drnet/rng.hpp"

namespace drnet {

/// Species counts; entries never go negative (propensities vanish at the
/// boundary).
using StateVector = std::vector<std::int64_t>;

/// Stochastic mass-action propensity: kappa * prod_i x_i!/(x_i - y_i)!,
/// zero outside the domain; evaluated as falling factorials.
double intensity(const Reaction& r, const StateVector& x);

/// q(x, x') aggregated over reactions sharing a reaction vector; only
/// targets with positive total rate appear.
std::map<StateVector, double> transition_rates(const ReactionNetwork& net, const StateVector& x);

/// Independent Poisson(c_i) draw per species.
StateVector sample_product_poisson(const Eigen::VectorXd& c, Xoshiro256& rng);

struct SimulateOptions {
  std::uint64_t max_events = 100'000'000;
};

/// Gillespie direct method; returns the state at time T exactly. Throws
/// EventOverflow past the event cap.
StateVector simulate(const ReactionNetwork& net, const StateVector& x0, double T, Xoshiro256& rng,
                     const SimulateOptions& opts = {});

struct SpeciesSummary {
  std::string name;
  double mean = 0.0;
  double variance = 0.0;  // sample variance (n-1 denominator), 0 for N=1
  std::map<std::int64_t, std::uint64_t> histogram;
};

struct EnsembleSummary {
  std::uint64_t replicates = 0;
  double horizon = 0.0;
  std::uint64_t seed = 0;
  std::vector<SpeciesSummary> species;
};

/// N replicates, each initialized by a product-Poisson draw and advanced by
/// the direct method; replicate i uses the RNG stream (seed, i). The merged
/// summary is bit-identical for any worker count. workers = 0 picks
/// hardware concurrency capped by the DRNET_THREADS environment variable.
EnsembleSummary run_ensemble(const ReactionNetwork& net, const Eigen::VectorXd& c0, double T,
                             std::uint64_t N, std::uint64_t seed, unsigned workers = 0,
                             const SimulateOptions& opts = {});

}  // namespace drnet
