#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <vector>

#include "drnet/network.hpp"
#include "drnet/ssa.hpp"

namespace drnet {

/// Dense probability mass over the lattice box 0..bound per species, plus
/// the mass that has flowed out of the box.
struct TruncatedPmf {
  std::vector<std::int64_t> box;  // inclusive per-species upper bounds
  std::vector<double> p;          // row-major over the box lattice
  double leaked = 0.0;
  double time = 0.0;

  std::size_t size() const { return p.size(); }
  std::size_t index(const StateVector& x) const;
  bool contains(const StateVector& x) const;
  double prob(const StateVector& x) const { return contains(x) ? p[index(x)] : 0.0; }
  double total_mass() const;
  std::vector<double> marginal(int species) const;
  double mean(int species) const;
};

struct CmeOptions {
  double dt = 1e-4;
  double leak_budget = 1e-6;    // throw BoxTooSmall beyond this
  double init_mass_tol = 1e-12; // initial mass allowed outside the box
};

/// Integrate the forward (master) equation over the box with RK4. Flux into
/// states outside the box accumulates as leaked mass, so total probability
/// is conserved by construction. Throws BoxTooSmall when the initial
/// distribution does not fit or the leak budget is exceeded.
TruncatedPmf truncated_cme(const ReactionNetwork& net, const TruncatedPmf& initial, double T,
                           const CmeOptions& opts = {});

/// Same, starting from a product-Poisson initial distribution.
TruncatedPmf truncated_cme(const ReactionNetwork& net, const Eigen::VectorXd& poisson_means,
                           const std::vector<std::int64_t>& box, double T,
                           const CmeOptions& opts = {});

/// Product-Poisson mass function truncated to a box (mass outside the box
/// becomes the pmf's leaked share).
TruncatedPmf product_poisson_pmf(const Eigen::VectorXd& means,
                                 const std::vector<std::int64_t>& box);

}  // namespace drnet
