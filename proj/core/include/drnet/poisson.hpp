#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <map>
#include <vector>

#include "drnet/network.hpp"
#include "drnet/ssa.hpp"

namespace drnet {

/// Joint law with independent Poisson marginals; pmf evaluation goes
/// through log space so large means do not underflow.
struct ProductPoissonLaw {
  Eigen::VectorXd means;

  double log_pmf(const StateVector& x) const;
  double pmf(const StateVector& x) const;
};

/// g_{x,c}(y) = sum_j (x_j/c_j - 1) y_j - [x!/(x-y)!] c^{-y} + 1, with the
/// falling-factorial term zero when any x_j < y_j. Identically zero for
/// complexes of order <= 1, which is returned exactly.
double g_function(const StateVector& x, const Eigen::VectorXd& c, const Complex& y);

/// sum_k kappa_k c^{y_k} [g_{x,c}(y_k') - g_{x,c}(y_k)]; vanishes for every
/// x exactly when the product-form law solves the forward equation at c.
double master_identity_residual(const ReactionNetwork& net, const Eigen::VectorXd& c,
                                const StateVector& x);

/// Numeric rank (SVD, threshold 1e-9 * sigma_max) of [g_{x_j,c}(z_i)] over
/// the sample states. Throws InsufficientSamples when there are fewer
/// samples than complexes.
int linear_independence_rank(const std::vector<Complex>& complexes, const Eigen::VectorXd& c,
                             const std::vector<StateVector>& samples);

/// Deterministic sample battery for identity/rank checks: the full lattice
/// 0..K per species with K = max(3, max_order + 2), capped at 1e4 points,
/// plus 100 seeded random states with coordinates <= 20.
std::vector<StateVector> default_g_samples(int dim, int max_order,
                                           std::uint64_t seed = 0x5eedULL);

/// Total variation between an empirical one-species histogram (N samples)
/// and Poisson(mean), summed over 0..box with both tails accounted.
/// Throws BoxTooSmall unless the law keeps at least 1 - 1e-6 of its mass in
/// the box.
double total_variation(const std::map<std::int64_t, std::uint64_t>& histogram, std::uint64_t N,
                       double mean, std::int64_t box);

/// Total variation of two sub-probability vectors over a common box with
/// explicit tail masses.
double total_variation_pmf(const std::vector<double>& p, const std::vector<double>& q,
                           double tail_p = 0.0, double tail_q = 0.0);

struct ChiSquareResult {
  double statistic = 0.0;
  double p_value = 1.0;
  int dof = 0;
};

/// Goodness of fit of a one-species histogram against Poisson(mean) over
/// 0..box plus a tail bin; bins with expected count below 5 are pooled.
ChiSquareResult chi_square(const std::map<std::int64_t, std::uint64_t>& histogram,
                           std::uint64_t N, double mean, std::int64_t box);

/// Regularized upper incomplete gamma Q(a, x); the chi-square survival
/// function is Q(dof/2, x/2).
double gamma_q(double a, double x);

}  // namespace drnet
