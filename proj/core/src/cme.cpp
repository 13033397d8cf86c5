#include "drnet/cme.hpp"

#include <cmath>
#include <stdexcept>

#include "drnet/errors.hpp"

namespace drnet {

std::size_t TruncatedPmf::index(const StateVector& x) const {
  std::size_t idx = 0;
  for (std::size_t i = 0; i < box.size(); ++i)
    idx = idx * static_cast<std::size_t>(box[i] + 1) + static_cast<std::size_t>(x[i]);
  return idx;
}

bool TruncatedPmf::contains(const StateVector& x) const {
  for (std::size_t i = 0; i < box.size(); ++i)
    if (x[i] < 0 || x[i] > box[i]) return false;
  return true;
}

double TruncatedPmf::total_mass() const {
  double s = 0.0, comp = 0.0;
  for (double v : p) {  // Kahan; boxes can hold millions of tiny entries
    const double y = v - comp;
    const double t = s + y;
    comp = (t - s) - y;
    s = t;
  }
  return s;
}

std::vector<double> TruncatedPmf::marginal(int species) const {
  std::vector<double> m(static_cast<std::size_t>(box[static_cast<std::size_t>(species)] + 1), 0.0);
  std::size_t inner = 1;
  for (std::size_t i = static_cast<std::size_t>(species) + 1; i < box.size(); ++i)
    inner *= static_cast<std::size_t>(box[i] + 1);
  const std::size_t level = m.size();
  for (std::size_t idx = 0; idx < p.size(); ++idx) m[(idx / inner) % level] += p[idx];
  return m;
}

double TruncatedPmf::mean(int species) const {
  const auto m = marginal(species);
  double s = 0.0;
  for (std::size_t k = 0; k < m.size(); ++k) s += static_cast<double>(k) * m[k];
  return s;
}

namespace {

std::size_t box_points(const std::vector<std::int64_t>& box) {
  std::size_t n = 1;
  for (auto b : box) {
    if (b < 0) throw std::invalid_argument("box bounds must be nonnegative");
    n *= static_cast<std::size_t>(b + 1);
    if (n > 50'000'000) throw std::invalid_argument("box has too many lattice points");
  }
  return n;
}

// Per-reaction propensity over the box and the flattened target index
// (-1 when x + zeta leaves the box).
struct CompiledCme {
  std::vector<std::vector<double>> lam;
  std::vector<std::vector<std::int64_t>> target;
};

CompiledCme compile(const ReactionNetwork& net, const TruncatedPmf& shape) {
  const std::size_t n = shape.p.size();
  const std::size_t d = shape.box.size();
  CompiledCme cc;
  cc.lam.assign(net.reactions().size(), {});
  cc.target.assign(net.reactions().size(), {});

  StateVector x(d, 0);
  std::vector<StateVector> states;
  states.reserve(n);
  for (std::size_t idx = 0; idx < n; ++idx) {
    states.push_back(x);
    // odometer increment, last species fastest
    for (std::size_t i = d; i-- > 0;) {
      if (++x[i] <= shape.box[i]) break;
      x[i] = 0;
    }
  }

  for (std::size_t k = 0; k < net.reactions().size(); ++k) {
    const auto& r = net.reactions()[k];
    auto zeta = reaction_vector(r);
    cc.lam[k].resize(n);
    cc.target[k].resize(n);
    StateVector tgt(d);
    for (std::size_t idx = 0; idx < n; ++idx) {
      cc.lam[k][idx] = intensity(r, states[idx]);
      bool inside = true;
      for (std::size_t i = 0; i < d; ++i) {
        tgt[i] = states[idx][i] + zeta[i];
        inside = inside && tgt[i] >= 0 && tgt[i] <= shape.box[i];
      }
      cc.target[k][idx] = inside ? static_cast<std::int64_t>(shape.index(tgt)) : -1;
    }
  }
  return cc;
}

// dstate = forward-equation right-hand side; the last entry tracks leaked
// mass so the total is conserved exactly.
void rhs(const CompiledCme& cc, const std::vector<double>& state, std::vector<double>& out) {
  const std::size_t n = state.size() - 1;
  std::fill(out.begin(), out.end(), 0.0);
  for (std::size_t k = 0; k < cc.lam.size(); ++k) {
    const double* lam = cc.lam[k].data();
    const std::int64_t* tgt = cc.target[k].data();
    for (std::size_t i = 0; i < n; ++i) {
      const double f = lam[i] * state[i];
      if (f == 0.0) continue;
      out[i] -= f;
      if (tgt[i] >= 0)
        out[static_cast<std::size_t>(tgt[i])] += f;
      else
        out[n] += f;
    }
  }
}

}  // namespace

TruncatedPmf product_poisson_pmf(const Eigen::VectorXd& means,
                                 const std::vector<std::int64_t>& box) {
  if (static_cast<std::size_t>(means.size()) != box.size())
    throw std::invalid_argument("means/box dimension mismatch");
  TruncatedPmf pmf;
  pmf.box = box;
  pmf.p.assign(box_points(box), 0.0);

  // Per-species log pmf tables; evaluated through lgamma so large means do
  // not underflow prematurely.
  std::vector<std::vector<double>> logp(box.size());
  for (std::size_t i = 0; i < box.size(); ++i) {
    logp[i].resize(static_cast<std::size_t>(box[i] + 1));
    const double c = means[static_cast<Eigen::Index>(i)];
    for (std::int64_t k = 0; k <= box[i]; ++k)
      logp[i][static_cast<std::size_t>(k)] =
          -c + static_cast<double>(k) * std::log(c) - std::lgamma(static_cast<double>(k) + 1.0);
  }

  StateVector x(box.size(), 0);
  for (std::size_t idx = 0; idx < pmf.p.size(); ++idx) {
    double lp = 0.0;
    for (std::size_t i = 0; i < box.size(); ++i) lp += logp[i][static_cast<std::size_t>(x[i])];
    pmf.p[idx] = std::exp(lp);
    for (std::size_t i = box.size(); i-- > 0;) {
      if (++x[i] <= box[i]) break;
      x[i] = 0;
    }
  }
  pmf.leaked = 1.0 - pmf.total_mass();
  return pmf;
}

TruncatedPmf truncated_cme(const ReactionNetwork& net, const TruncatedPmf& initial, double T,
                           const CmeOptions& opts) {
  if (initial.box.size() != static_cast<std::size_t>(net.dim()))
    throw std::invalid_argument("truncated_cme: box dimension mismatch");
  if (!(T >= 0.0)) throw std::invalid_argument("truncated_cme: T must be nonnegative");
  if (initial.leaked > opts.init_mass_tol)
    throw BoxTooSmall("truncated_cme: initial mass outside the box is " +
                      std::to_string(initial.leaked));

  const auto cc = compile(net, initial);
  const std::size_t n = initial.p.size();

  std::vector<double> state(n + 1);
  std::copy(initial.p.begin(), initial.p.end(), state.begin());
  state[n] = initial.leaked;

  if (T > 0.0) {
    const long steps = static_cast<long>(std::ceil(T / opts.dt - 1e-12));
    const double h = T / static_cast<double>(steps);
    std::vector<double> k1(n + 1), k2(n + 1), k3(n + 1), k4(n + 1), tmp(n + 1);
    for (long s = 0; s < steps; ++s) {
      rhs(cc, state, k1);
      for (std::size_t i = 0; i <= n; ++i) tmp[i] = state[i] + 0.5 * h * k1[i];
      rhs(cc, tmp, k2);
      for (std::size_t i = 0; i <= n; ++i) tmp[i] = state[i] + 0.5 * h * k2[i];
      rhs(cc, tmp, k3);
      for (std::size_t i = 0; i <= n; ++i) tmp[i] = state[i] + h * k3[i];
      rhs(cc, tmp, k4);
      for (std::size_t i = 0; i <= n; ++i)
        state[i] += (h / 6.0) * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
    }
  }

  TruncatedPmf out;
  out.box = initial.box;
  out.p.assign(state.begin(), state.begin() + static_cast<std::ptrdiff_t>(n));
  out.leaked = state[n];
  out.time = initial.time + T;
  for (double& v : out.p) {
    if (v < 0.0) {
      if (v < -1e-12)
        throw std::runtime_error("truncated_cme: negative probability beyond roundoff");
      v = 0.0;
    }
  }
  if (out.leaked > opts.leak_budget)
    throw BoxTooSmall("truncated_cme: leaked mass " + std::to_string(out.leaked) +
                      " exceeds the budget " + std::to_string(opts.leak_budget));
  return out;
}

TruncatedPmf truncated_cme(const ReactionNetwork& net, const Eigen::VectorXd& poisson_means,
                           const std::vector<std::int64_t>& box, double T,
                           const CmeOptions& opts) {
  return truncated_cme(net, product_poisson_pmf(poisson_means, box), T, opts);
}

}  // namespace drnet
