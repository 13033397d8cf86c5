#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "drnet/network.hpp"
#include "drnet/ode.hpp"

namespace drnet {

/// Complex indices with order >= 2, in complex-list order. The dynamic
/// restricted balance condition only constrains these.
std::vector<int> higher_order_complexes(const ReactionNetwork& net);

enum class LinkageCase {
  allHigher,  // every complex in the class has order >= 2
  allLow,     // every complex has order <= 1; contributes natively linear terms
  mixed,      // both kinds present; balance reads A*xtilde = b
};

/// Affine form b(c) = constant + coeffs . c (lower-order monomials only).
struct LinearForm {
  double constant = 0.0;
  Eigen::VectorXd coeffs;
};

/// Per linkage class: the higher-order complexes z_1..z_m, the m x m matrix
/// with A_ii = sum_j kappa_{z_i -> z_j} and A_ij = -kappa_{z_j -> z_i}, and
/// the lower-order inflow forms b_i(c) = sum_{lower z_j} kappa_{z_j -> z_i}
/// c^{z_j}, so that the balance condition for the class reads A*xtilde = b
/// with xtilde_i = c^{z_i}.
struct LinkageReduction {
  int class_id = 0;
  LinkageCase tag = LinkageCase::allLow;
  std::vector<int> higher;        // complex indices z_1..z_m
  std::vector<int> lower;         // remaining complex indices of the class
  Eigen::MatrixXd A;              // m x m (0 x 0 unless higher complexes exist)
  std::vector<LinearForm> b;      // size m
  Eigen::VectorXd lower_outflow;  // per row: sum of kappa_{z_i -> lower}; equals
                                  // the row sum of A^T by construction
};

std::vector<LinkageReduction> build_reduction(const ReactionNetwork& net);

/// Row-by-row dominance status of A^T plus, for every non-strict row, a
/// walk in the directed graph of A^T to a strictly dominant row (or the
/// finding that none is reachable).
struct PathCondition {
  struct Row {
    bool sdd = false;
    bool reachable = false;        // meaningful when !sdd
    std::vector<int> walk;         // row indices, starting at this row, ending SDD
  };
  bool ok = false;
  std::vector<Row> rows;

  std::vector<int> unreachable_rows() const {
    std::vector<int> out;
    for (std::size_t i = 0; i < rows.size(); ++i)
      if (!rows[i].sdd && !rows[i].reachable) out.push_back(static_cast<int>(i));
    return out;
  }
};

/// Nonsingularity certificate for a weakly diagonally dominant A^T: every
/// non-SDD row must reach an SDD row along the directed graph of A^T.
PathCondition check_path_condition(const Eigen::MatrixXd& A);

/// cdot = M c + r.
struct LinearSystem {
  Eigen::MatrixXd M;
  Eigen::VectorXd r;
};

/// Substitute the higher-order monomials of every mixed class by
/// A^{-1} b(c); all-higher classes contribute zero under the balance
/// condition, all-low classes contribute their native linear terms. Throws
/// SingularReduction when a mixed-class matrix fails the path condition.
LinearSystem linear_reduction(const ReactionNetwork& net,
                              std::vector<std::string>* notes = nullptr);

/// Exact solution of cdot = M c + r on the given grid (increasing from 0)
/// via the matrix exponential of the augmented (d+1) system [[M, r], [0, 0]].
Trajectory solve_linear(const LinearSystem& sys, const Eigen::VectorXd& c0,
                        const std::vector<double>& grid);

}  // namespace drnet
