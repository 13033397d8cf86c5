#include "drnet/poisson.hpp"

#include <Eigen/SVD>
#include <cmath>
#include <stdexcept>

#include "drnet/errors.hpp"
#include "drnet/rng.hpp"

namespace drnet {

namespace {

double kahan_add(double& sum, double& comp, double value) {
  const double y = value - comp;
  const double t = sum + y;
  comp = (t - sum) - y;
  sum = t;
  return sum;
}

double poisson_log_pmf(double mean, std::int64_t k) {
  return -mean + static_cast<double>(k) * std::log(mean) -
         std::lgamma(static_cast<double>(k) + 1.0);
}

}  // namespace

double ProductPoissonLaw::log_pmf(const StateVector& x) const {
  double lp = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i)
    lp += poisson_log_pmf(means[static_cast<Eigen::Index>(i)], x[i]);
  return lp;
}

double ProductPoissonLaw::pmf(const StateVector& x) const { return std::exp(log_pmf(x)); }

double g_function(const StateVector& x, const Eigen::VectorXd& c, const Complex& y) {
  const int order = y.order();
  if (order <= 1) return 0.0;  // orders zero and one cancel identically

  double linear = 0.0;
  double falling = 1.0;
  double cy = 1.0;
  for (std::size_t i = 0; i < y.counts.size(); ++i) {
    const int yi = y.counts[i];
    if (yi == 0) continue;
    const auto ei = static_cast<Eigen::Index>(i);
    linear += (static_cast<double>(x[i]) / c[ei] - 1.0) * yi;
    if (x[i] < yi)
      falling = 0.0;
    else if (falling != 0.0)
      for (int j = 0; j < yi; ++j) falling *= static_cast<double>(x[i] - j);
    for (int j = 0; j < yi; ++j) cy *= c[ei];
  }
  return linear - falling / cy + 1.0;
}

double master_identity_residual(const ReactionNetwork& net, const Eigen::VectorXd& c,
                                const StateVector& x) {
  double sum = 0.0, comp = 0.0;
  for (const auto& r : net.reactions()) {
    const double flux = r.rate * monomial(c, r.source);
    if (flux == 0.0) continue;
    kahan_add(sum, comp, flux * (g_function(x, c, r.product) - g_function(x, c, r.source)));
  }
  return sum;
}

int linear_independence_rank(const std::vector<Complex>& complexes, const Eigen::VectorXd& c,
                             const std::vector<StateVector>& samples) {
  const int m = static_cast<int>(complexes.size());
  if (m == 0) return 0;
  if (samples.size() < complexes.size())
    throw InsufficientSamples("linear_independence_rank: need at least as many sample states as "
                              "complexes");
  Eigen::MatrixXd F(m, static_cast<Eigen::Index>(samples.size()));
  for (int i = 0; i < m; ++i)
    for (std::size_t j = 0; j < samples.size(); ++j)
      F(i, static_cast<Eigen::Index>(j)) =
          g_function(samples[j], c, complexes[static_cast<std::size_t>(i)]);
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(F);
  const auto& sigma = svd.singularValues();
  if (sigma.size() == 0 || sigma[0] == 0.0) return 0;
  int rank = 0;
  for (Eigen::Index i = 0; i < sigma.size(); ++i)
    if (sigma[i] > 1e-9 * sigma[0]) ++rank;
  return rank;
}

std::vector<StateVector> default_g_samples(int dim, int max_order, std::uint64_t seed) {
  const std::int64_t K = std::max(3, max_order + 2);
  std::vector<StateVector> samples;

  StateVector x(static_cast<std::size_t>(dim), 0);
  bool more = true;
  while (more && samples.size() < 10'000) {
    samples.push_back(x);
    more = false;
    for (std::size_t i = static_cast<std::size_t>(dim); i-- > 0;) {
      if (++x[i] <= K) {
        more = true;
        break;
      }
      x[i] = 0;
    }
  }

  Xoshiro256 rng(seed);
  for (int n = 0; n < 100; ++n) {
    StateVector r(static_cast<std::size_t>(dim));
    for (auto& v : r) v = static_cast<std::int64_t>(rng.next() % 21);
    samples.push_back(std::move(r));
  }
  return samples;
}

double total_variation(const std::map<std::int64_t, std::uint64_t>& histogram, std::uint64_t N,
                       double mean, std::int64_t box) {
  if (N == 0) throw std::invalid_argument("total_variation: empty sample");
  double law_mass = 0.0, law_comp = 0.0;
  double diff = 0.0, diff_comp = 0.0;
  const double n = static_cast<double>(N);
  for (std::int64_t k = 0; k <= box; ++k) {
    const double p = std::exp(poisson_log_pmf(mean, k));
    kahan_add(law_mass, law_comp, p);
    const auto it = histogram.find(k);
    const double emp = it == histogram.end() ? 0.0 : static_cast<double>(it->second) / n;
    kahan_add(diff, diff_comp, std::abs(emp - p));
  }
  if (law_mass < 1.0 - 1e-6)
    throw BoxTooSmall("total_variation: box keeps only " + std::to_string(law_mass) +
                      " of the law's mass");
  double emp_out = 0.0;
  for (auto it = histogram.upper_bound(box); it != histogram.end(); ++it)
    emp_out += static_cast<double>(it->second) / n;
  return 0.5 * (diff + emp_out + (1.0 - law_mass));
}

double total_variation_pmf(const std::vector<double>& p, const std::vector<double>& q,
                           double tail_p, double tail_q) {
  if (p.size() != q.size()) throw std::invalid_argument("total_variation_pmf: size mismatch");
  double diff = 0.0, comp = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) kahan_add(diff, comp, std::abs(p[i] - q[i]));
  return 0.5 * (diff + tail_p + tail_q);
}

namespace {

double gamma_p_series(double a, double x) {
  double term = 1.0 / a;
  double sum = term;
  for (int n = 1; n < 500; ++n) {
    term *= x / (a + n);
    sum += term;
    if (std::abs(term) < std::abs(sum) * 1e-16) break;
  }
  return sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

double gamma_q_cf(double a, double x) {
  // Lentz continued fraction for Q(a, x).
  const double tiny = 1e-300;
  double b = x + 1.0 - a;
  double c = 1.0 / tiny;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i < 500; ++i) {
    const double an = -i * (i - a);
    b += 2.0;
    d = an * d + b;
    if (std::abs(d) < tiny) d = tiny;
    c = b + an / c;
    if (std::abs(c) < tiny) c = tiny;
    d = 1.0 / d;
    const double delta = d * c;
    h *= delta;
    if (std::abs(delta - 1.0) < 1e-16) break;
  }
  return h * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

}  // namespace

double gamma_q(double a, double x) {
  if (x < 0.0 || a <= 0.0) throw std::invalid_argument("gamma_q: bad arguments");
  if (x == 0.0) return 1.0;
  if (x < a + 1.0) return 1.0 - gamma_p_series(a, x);
  return gamma_q_cf(a, x);
}

ChiSquareResult chi_square(const std::map<std::int64_t, std::uint64_t>& histogram,
                           std::uint64_t N, double mean, std::int64_t box) {
  const double n = static_cast<double>(N);

  // Raw bins 0..box plus one tail bin, then pool left to right until every
  // bin expects at least 5 samples.
  std::vector<double> expected;
  std::vector<double> observed;
  double law_mass = 0.0, comp = 0.0;
  for (std::int64_t k = 0; k <= box; ++k) {
    const double p = std::exp(poisson_log_pmf(mean, k));
    kahan_add(law_mass, comp, p);
    expected.push_back(n * p);
    const auto it = histogram.find(k);
    observed.push_back(it == histogram.end() ? 0.0 : static_cast<double>(it->second));
  }
  if (law_mass < 1.0 - 1e-6)
    throw BoxTooSmall("chi_square: box keeps only " + std::to_string(law_mass) +
                      " of the law's mass");
  double tail_obs = 0.0;
  for (auto it = histogram.upper_bound(box); it != histogram.end(); ++it)
    tail_obs += static_cast<double>(it->second);
  expected.push_back(n * (1.0 - law_mass));
  observed.push_back(tail_obs);

  std::vector<double> pooled_e, pooled_o;
  double acc_e = 0.0, acc_o = 0.0;
  for (std::size_t i = 0; i < expected.size(); ++i) {
    acc_e += expected[i];
    acc_o += observed[i];
    if (acc_e >= 5.0) {
      pooled_e.push_back(acc_e);
      pooled_o.push_back(acc_o);
      acc_e = acc_o = 0.0;
    }
  }
  if (acc_e > 0.0 || acc_o > 0.0) {
    if (!pooled_e.empty()) {
      pooled_e.back() += acc_e;
      pooled_o.back() += acc_o;
    } else {
      pooled_e.push_back(acc_e);
      pooled_o.push_back(acc_o);
    }
  }

  ChiSquareResult result;
  if (pooled_e.size() < 2) return result;  // nothing to test
  for (std::size_t i = 0; i < pooled_e.size(); ++i) {
    const double d = pooled_o[i] - pooled_e[i];
    result.statistic += d * d / pooled_e[i];
  }
  result.dof = static_cast<int>(pooled_e.size()) - 1;
  result.p_value = gamma_q(result.dof / 2.0, result.statistic / 2.0);
  return result;
}

}  // namespace drnet
