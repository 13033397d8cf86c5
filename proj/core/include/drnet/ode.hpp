#pragma once

#include <Eigen/Dense>
#include <ostream>
#include <vector>

#include "drnet/network.hpp"

namespace drnet {

struct Concentration {
  Eigen::VectorXd values;
  double time = 0.0;
};

/// Strictly increasing time grid starting at 0 with one state per point.
struct Trajectory {
  std::vector<double> grid;
  std::vector<Eigen::VectorXd> states;

  const Eigen::VectorXd& back() const { return states.back(); }
  Concentration at(std::size_t i) const { return {states[i], grid[i]}; }
};

/// Mass-action right-hand side: sum_k kappa_k c^{y_k} (y_k' - y_k).
Eigen::VectorXd mass_action_rhs(const ReactionNetwork& net, const Eigen::VectorXd& c);

struct IntegrateOptions {
  double blowup_bound = 1e12;  // abort when ||c||_1 exceeds this
  double clamp_eps = 1e-12;    // roundoff negatives above -eps clamp to 0
};

/// Classical fixed-step RK4 on a uniform grid over [0, T]. The step is
/// T/ceil(T/dt), so the grid lands exactly on T. Components in
/// [-clamp_eps, 0) are clamped with a warning; anything more negative
/// throws NegativeStateError, and ||c||_1 > blowup_bound throws BlowUpError.
Trajectory integrate_ode(const ReactionNetwork& net, const Eigen::VectorXd& c0, double T,
                         double dt, const IntegrateOptions& opts = {},
                         std::vector<std::string>* warnings = nullptr);

struct BalanceCheck {
  bool balanced = false;
  std::vector<double> residuals;  // per complex: outflow - inflow at c
};

/// Pointwise complex-balance test: for every complex z,
/// |sum_{k: y_k=z} kappa_k c^z - sum_{k: y_k'=z} kappa_k c^{y_k}| <= tol.
BalanceCheck is_complex_balanced_at(const ReactionNetwork& net, const Eigen::VectorXd& c,
                                    double tol);

/// CSV with header `t,<species...>`, 17 significant digits.
void write_trajectory_csv(std::ostream& os, const ReactionNetwork& net, const Trajectory& traj);

}  // namespace drnet
