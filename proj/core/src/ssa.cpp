#include "drnet/ssa.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <thread>

#include "drnet/errors.hpp"

namespace drnet {

std::int64_t poisson_sample(double mean, Xoshiro256& rng) {
  if (mean <= 0.0) return 0;
  if (mean < 30.0) {
    const double limit = std::exp(-mean);
    std::int64_t k = 0;
    double p = rng.uniform01();
    while (p > limit) {
      ++k;
      p *= rng.uniform01();
    }
    return k;
  }
  // PTRS transformed rejection (Hoermann 1993), valid for mean >= 10.
  const double b = 0.931 + 2.53 * std::sqrt(mean);
  const double a = -0.059 + 0.02483 * b;
  const double inv_alpha = 1.1239 + 1.1328 / (b - 3.4);
  const double v_r = 0.9277 - 3.6224 / (b - 2.0);
  const double log_mean = std::log(mean);
  for (;;) {
    const double u = rng.uniform01() - 0.5;
    const double v = rng.uniform01();
    const double us = 0.5 - std::abs(u);
    const double k = std::floor((2.0 * a / us + b) * u + mean + 0.43);
    if (us >= 0.07 && v <= v_r) return static_cast<std::int64_t>(k);
    if (k < 0.0 || (us < 0.013 && v > us)) continue;
    if (std::log(v * inv_alpha / (a / (us * us) + b)) <=
        k * log_mean - mean - std::lgamma(k + 1.0))
      return static_cast<std::int64_t>(k);
  }
}

double intensity(const Reaction& r, const StateVector& x) {
  double lambda = r.rate;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const int y = r.source.counts[i];
    if (y == 0) continue;
    if (x[i] < y) return 0.0;
    for (int j = 0; j < y; ++j) lambda *= static_cast<double>(x[i] - j);
  }
  return lambda;
}

std::map<StateVector, double> transition_rates(const ReactionNetwork& net, const StateVector& x) {
  std::map<StateVector, double> q;
  for (const auto& r : net.reactions()) {
    const double lambda = intensity(r, x);
    if (lambda <= 0.0) continue;
    StateVector target = x;
    for (std::size_t i = 0; i < x.size(); ++i)
      target[i] += r.product.counts[i] - r.source.counts[i];
    q[target] += lambda;
  }
  return q;
}

StateVector sample_product_poisson(const Eigen::VectorXd& c, Xoshiro256& rng) {
  StateVector x(static_cast<std::size_t>(c.size()));
  for (Eigen::Index i = 0; i < c.size(); ++i) {
    if (!(c[i] > 0.0))
      throw std::invalid_argument("sample_product_poisson: means must be strictly positive");
    x[static_cast<std::size_t>(i)] = poisson_sample(c[i], rng);
  }
  return x;
}

namespace {

// Flat reaction table for the hot loop.
struct CompiledReaction {
  double rate;
  // (species, multiplicity) pairs of the source; multiplicity 1 or 2 in
  // practice but arbitrary orders are handled.
  std::vector<std::pair<int, int>> sources;
  std::vector<std::pair<int, int>> deltas;  // (species, net change)
};

std::vector<CompiledReaction> compile(const ReactionNetwork& net) {
  std::vector<CompiledReaction> table;
  table.reserve(net.reactions().size());
  for (const auto& r : net.reactions()) {
    CompiledReaction cr;
    cr.rate = r.rate;
    for (int i = 0; i < net.dim(); ++i) {
      const int y = r.source.counts[static_cast<std::size_t>(i)];
      const int dz = r.product.counts[static_cast<std::size_t>(i)] - y;
      if (y > 0) cr.sources.emplace_back(i, y);
      if (dz != 0) cr.deltas.emplace_back(i, dz);
    }
    table.push_back(std::move(cr));
  }
  return table;
}

inline double propensity(const CompiledReaction& cr, const std::int64_t* x) {
  double lambda = cr.rate;
  for (const auto& [sp, mult] : cr.sources) {
    const std::int64_t n = x[sp];
    if (n < mult) return 0.0;
    lambda *= static_cast<double>(n);
    for (int j = 1; j < mult; ++j) lambda *= static_cast<double>(n - j);
  }
  return lambda;
}

StateVector simulate_compiled(const std::vector<CompiledReaction>& table, StateVector x, double T,
                              Xoshiro256& rng, const SimulateOptions& opts) {
  const std::size_t K = table.size();
  std::vector<double> lambda(K);
  double t = 0.0;
  std::uint64_t events = 0;
  for (;;) {
    double a0 = 0.0;
    for (std::size_t k = 0; k < K; ++k) {
      lambda[k] = propensity(table[k], x.data());
      a0 += lambda[k];
    }
    if (a0 <= 0.0) return x;  // absorbing
    t += rng.exponential(a0);
    if (t > T) return x;
    if (++events > opts.max_events)
      throw EventOverflow("simulate: event cap exceeded (" + std::to_string(opts.max_events) +
                          ")");
    double u = rng.uniform01() * a0;
    std::size_t pick = K - 1;
    for (std::size_t k = 0; k < K; ++k) {
      u -= lambda[k];
      if (u <= 0.0) {
        pick = k;
        break;
      }
    }
    for (const auto& [sp, dz] : table[pick].deltas) x[static_cast<std::size_t>(sp)] += dz;
  }
}

unsigned resolve_workers(unsigned requested) {
  unsigned w = requested;
  if (w == 0) {
    w = std::max(1u, std::thread::hardware_concurrency());
    if (const char* env = std::getenv("DRNET_THREADS")) {
      const long cap = std::atol(env);
      if (cap > 0) w = std::min<unsigned>(w, static_cast<unsigned>(cap));
    }
  }
  return std::max(1u, w);
}

struct Accumulator {
  std::vector<std::map<std::int64_t, std::uint64_t>> hist;
  std::vector<std::uint64_t> sum;
  std::vector<std::uint64_t> sum_sq;

  explicit Accumulator(std::size_t d) : hist(d), sum(d, 0), sum_sq(d, 0) {}

  void add(const StateVector& x) {
    for (std::size_t i = 0; i < x.size(); ++i) {
      const auto v = static_cast<std::uint64_t>(x[i]);
      ++hist[i][x[i]];
      sum[i] += v;
      sum_sq[i] += v * v;
    }
  }
  void merge(const Accumulator& other) {
    for (std::size_t i = 0; i < hist.size(); ++i) {
      for (const auto& [count, freq] : other.hist[i]) hist[i][count] += freq;
      sum[i] += other.sum[i];
      sum_sq[i] += other.sum_sq[i];
    }
  }
};

}  // namespace

StateVector simulate(const ReactionNetwork& net, const StateVector& x0, double T, Xoshiro256& rng,
                     const SimulateOptions& opts) {
  if (T < 0.0) throw std::invalid_argument("simulate: T must be nonnegative");
  if (x0.size() != static_cast<std::size_t>(net.dim()))
    throw std::invalid_argument("simulate: state dimension mismatch");
  return simulate_compiled(compile(net), x0, T, rng, opts);
}

EnsembleSummary run_ensemble(const ReactionNetwork& net, const Eigen::VectorXd& c0, double T,
                             std::uint64_t N, std::uint64_t seed, unsigned workers,
                             const SimulateOptions& opts) {
  if (N < 1) throw std::invalid_argument("run_ensemble: need at least one replicate");
  const auto table = compile(net);
  const std::size_t d = static_cast<std::size_t>(net.dim());
  const unsigned W = static_cast<unsigned>(
      std::min<std::uint64_t>(resolve_workers(workers), N));

  std::vector<Accumulator> partial(W, Accumulator(d));
  std::vector<std::uint64_t> overflow_at(W, std::uint64_t(-1));

  auto work = [&](unsigned w) {
    const std::uint64_t lo = N * w / W, hi = N * (w + 1) / W;
    for (std::uint64_t i = lo; i < hi; ++i) {
      Xoshiro256 rng = Xoshiro256::stream(seed, i);
      try {
        StateVector x = sample_product_poisson(c0, rng);
        x = simulate_compiled(table, std::move(x), T, rng, opts);
        partial[w].add(x);
      } catch (const EventOverflow&) {
        overflow_at[w] = std::min(overflow_at[w], i);
        return;
      }
    }
  };

  if (W == 1) {
    work(0);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(W);
    for (unsigned w = 0; w < W; ++w) pool.emplace_back(work, w);
    for (auto& th : pool) th.join();
  }

  std::uint64_t bad = *std::min_element(overflow_at.begin(), overflow_at.end());
  if (bad != std::uint64_t(-1))
    throw EventOverflow("run_ensemble: event cap exceeded in replicate " + std::to_string(bad),
                        static_cast<std::size_t>(bad));

  Accumulator total(d);
  for (const auto& p : partial) total.merge(p);

  EnsembleSummary summary;
  summary.replicates = N;
  summary.horizon = T;
  summary.seed = seed;
  summary.species.resize(d);
  for (std::size_t i = 0; i < d; ++i) {
    auto& sp = summary.species[i];
    sp.name = net.species()[i];
    sp.histogram = std::move(total.hist[i]);
    const double n = static_cast<double>(N);
    sp.mean = static_cast<double>(total.sum[i]) / n;
    sp.variance = N > 1 ? (static_cast<double>(total.sum_sq[i]) - n * sp.mean * sp.mean) / (n - 1.0)
                        : 0.0;
  }
  return summary;
}

}  // namespace drnet
