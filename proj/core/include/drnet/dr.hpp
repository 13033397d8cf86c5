#pragma once

#include <Eigen/Dense>
#include <optional>
#include <string>
#include <vector>

#include "drnet/network.hpp"
#include "drnet/ode.hpp"
#include "drnet/reduction.hpp"

namespace drnet {

enum class Verdict { holds, fails, constantSolution };

std::string to_string(Verdict v);

struct ComplexResidual {
  int complex_index = -1;
  double max_residual = 0.0;
};

/// Outcome of the dynamic restricted balance analysis: whether every
/// higher-order complex keeps inflow equal to outflow along the solution
/// c(t) on [0, T].
struct DRReport {
  Verdict verdict = Verdict::fails;
  double max_residual = 0.0;
  double threshold = 0.0;  // effective absolute threshold: tol * (1 + max flux)
  double tolerance = 0.0;  // requested relative tolerance
  double horizon = 0.0;
  std::vector<ComplexResidual> per_complex;  // one entry per higher-order complex
  // Signed residual of each higher-order complex at every grid point of
  // means.grid; rows align with per_complex.
  std::vector<std::vector<double>> residual_grid;
  std::vector<int> failing;  // complex indices above threshold
  std::optional<LinearSystem> system;
  Trajectory means;  // linear solution, or the nonlinear fallback on failure
  std::vector<std::string> notes;
};

struct VerifyOptions {
  double T = 10.0;
  int grid_size = 201;
  double tol = 1e-9;
  double ode_dt = 1e-3;      // nonlinear cross-check / fallback step
  bool cross_check = true;   // compare the linear solution against RK4
};

/// Decide whether (net, c0) admits the restricted balance along the
/// solution. Pipeline: constant-solution detection, linear reduction,
/// closed-form solve, residual profile of every higher-order complex on the
/// grid, plus a nonlinear integrator cross-check. A finite sum of
/// exponentials that vanishes on a dense grid of [0, T] vanishes
/// identically, so the grid check is conclusive up to numerics; T is
/// recorded in the report. Throws NonPositiveInitial.
DRReport verify_dr(const ReactionNetwork& net, const Eigen::VectorXd& c0,
                   const VerifyOptions& opts = {});

enum class OneSpeciesDecision { nontrivialPossible, onlyConstant };

/// One-species characterization: a nontrivial product-form solution exists
/// iff the network is of first order (complexes within {0, X}). Throws
/// NotOneSpecies when d != 1.
OneSpeciesDecision one_species_dr(const ReactionNetwork& net);

/// Drift A_i(u) = sum_k kappa_k u^{y_k} zeta_{ki}.
Eigen::VectorXd drift_vector(const ReactionNetwork& net, const Eigen::VectorXd& u);

/// Diffusion B_ij(u) = sum_k kappa_k u^{y_k} (y'_ki y'_kj - y_ki y_kj -
/// delta_ij zeta_ki); only defined for binary networks (all complex orders
/// <= 2). Throws NotBinary otherwise.
Eigen::MatrixXd diffusion_matrix(const ReactionNetwork& net, const Eigen::VectorXd& u);

/// Signed balance residual of one complex at concentration c:
/// sum_{k: y_k=z} kappa_k c^z - sum_{k: y_k'=z} kappa_k c^{y_k}.
double complex_balance_residual(const ReactionNetwork& net, int complex_index,
                                const Eigen::VectorXd& c);

/// max(|outflow|, |inflow|) of one complex at c; scales the tolerance.
double complex_flux_magnitude(const ReactionNetwork& net, int complex_index,
                              const Eigen::VectorXd& c);

}  // namespace drnet
