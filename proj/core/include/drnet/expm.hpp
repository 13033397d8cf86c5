#pragma once

#include <Eigen/Dense>

namespace drnet {

/// Matrix exponential via scaling-and-squaring with diagonal Pade
/// approximants (orders 3/5/7/9/13 selected by the 1-norm).
Eigen::MatrixXd expm(const Eigen::MatrixXd& A);

}  // namespace drnet
