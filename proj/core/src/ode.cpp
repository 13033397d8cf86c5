#include "drnet/ode.hpp"

#include <cmath>
#include <cstdio>

#include "drnet/errors.hpp"

namespace drnet {

Eigen::VectorXd mass_action_rhs(const ReactionNetwork& net, const Eigen::VectorXd& c) {
  Eigen::VectorXd f = Eigen::VectorXd::Zero(net.dim());
  for (const auto& r : net.reactions()) {
    const double flux = r.rate * monomial(c, r.source);
    if (flux == 0.0) continue;
    for (int i = 0; i < net.dim(); ++i) {
      const int zeta = r.product.counts[static_cast<std::size_t>(i)] -
                       r.source.counts[static_cast<std::size_t>(i)];
      if (zeta != 0) f[i] += flux * zeta;
    }
  }
  return f;
}

Trajectory integrate_ode(const ReactionNetwork& net, const Eigen::VectorXd& c0, double T,
                         double dt, const IntegrateOptions& opts,
                         std::vector<std::string>* warnings) {
  if (!(T > 0.0)) throw std::invalid_argument("integrate_ode: T must be positive");
  if (!(dt > 0.0)) throw std::invalid_argument("integrate_ode: dt must be positive");

  const long steps = static_cast<long>(std::ceil(T / dt - 1e-12));
  const double h = T / static_cast<double>(steps);

  Trajectory traj;
  traj.grid.reserve(static_cast<std::size_t>(steps) + 1);
  traj.states.reserve(static_cast<std::size_t>(steps) + 1);
  traj.grid.push_back(0.0);
  traj.states.push_back(c0);

  bool clamped = false;
  Eigen::VectorXd c = c0;
  for (long n = 0; n < steps; ++n) {
    const Eigen::VectorXd k1 = mass_action_rhs(net, c);
    const Eigen::VectorXd k2 = mass_action_rhs(net, c + 0.5 * h * k1);
    const Eigen::VectorXd k3 = mass_action_rhs(net, c + 0.5 * h * k2);
    const Eigen::VectorXd k4 = mass_action_rhs(net, c + h * k3);
    c += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);

    for (int i = 0; i < c.size(); ++i) {
      if (c[i] < 0.0) {
        if (c[i] < -opts.clamp_eps) {
          char buf[160];
          std::snprintf(buf, sizeof buf,
                        "integrate_ode: component %d reached %.3e at t=%.6g, below the roundoff "
                        "threshold",
                        i, c[i], traj.grid.back() + h);
          throw NegativeStateError(buf);
        }
        c[i] = 0.0;
        clamped = true;
      }
    }
    if (c.lpNorm<1>() > opts.blowup_bound) {
      char buf[128];
      std::snprintf(buf, sizeof buf, "integrate_ode: ||c||_1 exceeded %.3e at t=%.6g",
                    opts.blowup_bound, traj.grid.back() + h);
      throw BlowUpError(buf);
    }
    traj.grid.push_back(static_cast<double>(n + 1) * h);
    traj.states.push_back(c);
  }
  traj.grid.back() = T;  // kill the last rounding wobble
  if (clamped && warnings)
    warnings->push_back("integrate_ode: clamped roundoff-negative components to 0");
  return traj;
}

BalanceCheck is_complex_balanced_at(const ReactionNetwork& net, const Eigen::VectorXd& c,
                                    double tol) {
  BalanceCheck out;
  out.residuals.resize(net.complexes().size(), 0.0);
  for (std::size_t z = 0; z < net.complexes().size(); ++z) {
    double lhs = 0.0, rhs = 0.0;
    for (std::size_t k = 0; k < net.reactions().size(); ++k) {
      const auto& r = net.reactions()[k];
      if (net.source_index(static_cast<int>(k)) == static_cast<int>(z))
        lhs += r.rate * monomial(c, r.source);
      if (net.product_index(static_cast<int>(k)) == static_cast<int>(z))
        rhs += r.rate * monomial(c, r.source);
    }
    out.residuals[z] = lhs - rhs;
  }
  out.balanced = true;
  for (double r : out.residuals) out.balanced = out.balanced && std::abs(r) <= tol;
  return out;
}

void write_trajectory_csv(std::ostream& os, const ReactionNetwork& net, const Trajectory& traj) {
  os << "t";
  for (const auto& s : net.species()) os << "," << s;
  os << "\n";
  char buf[64];
  for (std::size_t n = 0; n < traj.grid.size(); ++n) {
    std::snprintf(buf, sizeof buf, "%.17g", traj.grid[n]);
    os << buf;
    for (int i = 0; i < net.dim(); ++i) {
      std::snprintf(buf, sizeof buf, "%.17g", traj.states[n][i]);
      os << "," << buf;
    }
    os << "\n";
  }
}

}  // namespace drnet
