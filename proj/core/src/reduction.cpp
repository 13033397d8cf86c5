#include "drnet/reduction.hpp"

#include <cmath>
#include <deque>
#include <sstream>

#include "drnet/errors.hpp"
#include "drnet/expm.hpp"

namespace drnet {

std::vector<int> higher_order_complexes(const ReactionNetwork& net) {
  std::vector<int> out;
  for (std::size_t i = 0; i < net.complexes().size(); ++i)
    if (net.complexes()[i].order() >= 2) out.push_back(static_cast<int>(i));
  return out;
}

std::vector<LinkageReduction> build_reduction(const ReactionNetwork& net) {
  const auto classes = linkage_classes(net);
  const int n_complex = static_cast<int>(net.complexes().size());
  std::vector<int> class_of(static_cast<std::size_t>(n_complex), -1);
  for (std::size_t c = 0; c < classes.size(); ++c)
    for (int z : classes[c]) class_of[static_cast<std::size_t>(z)] = static_cast<int>(c);

  std::vector<LinkageReduction> out(classes.size());
  for (std::size_t c = 0; c < classes.size(); ++c) {
    auto& red = out[c];
    red.class_id = static_cast<int>(c);
    for (int z : classes[c])
      (net.complexes()[static_cast<std::size_t>(z)].order() >= 2 ? red.higher : red.lower)
          .push_back(z);
    red.tag = red.lower.empty()    ? LinkageCase::allHigher
              : red.higher.empty() ? LinkageCase::allLow
                                   : LinkageCase::mixed;
    const int m = static_cast<int>(red.higher.size());
    red.A = Eigen::MatrixXd::Zero(m, m);
    red.lower_outflow = Eigen::VectorXd::Zero(m);
    red.b.assign(static_cast<std::size_t>(m), {0.0, Eigen::VectorXd::Zero(net.dim())});
  }

  // Position of a complex within its class's higher list (-1 for lower).
  std::vector<int> higher_pos(static_cast<std::size_t>(n_complex), -1);
  for (const auto& red : out)
    for (std::size_t i = 0; i < red.higher.size(); ++i)
      higher_pos[static_cast<std::size_t>(red.higher[i])] = static_cast<int>(i);

  for (std::size_t k = 0; k < net.reactions().size(); ++k) {
    const auto& r = net.reactions()[k];
    const int src = net.source_index(static_cast<int>(k));
    const int dst = net.product_index(static_cast<int>(k));
    auto& red = out[static_cast<std::size_t>(class_of[static_cast<std::size_t>(src)])];
    const int si = higher_pos[static_cast<std::size_t>(src)];
    const int di = higher_pos[static_cast<std::size_t>(dst)];
    if (si >= 0) {
      red.A(si, si) += r.rate;
      if (di >= 0) {
        if (di != si) red.A(di, si) -= r.rate;
      } else {
        red.lower_outflow(si) += r.rate;
      }
    } else if (di >= 0) {
      // Lower-order source feeding a higher complex: a b-side term.
      const auto& z = net.complexes()[static_cast<std::size_t>(src)];
      auto& form = red.b[static_cast<std::size_t>(di)];
      if (z.order() == 0) {
        form.constant += r.rate;
      } else {
        for (int i = 0; i < net.dim(); ++i)
          if (z.counts[static_cast<std::size_t>(i)] > 0) form.coeffs[i] += r.rate;
      }
    }
  }
  return out;
}

PathCondition check_path_condition(const Eigen::MatrixXd& A) {
  const int m = static_cast<int>(A.rows());
  PathCondition pc;
  pc.rows.resize(static_cast<std::size_t>(m));

  // Row i of A^T has diagonal A(i,i) and off-diagonal entries A(j,i).
  std::vector<std::vector<int>> adj(static_cast<std::size_t>(m));
  for (int i = 0; i < m; ++i) {
    double diag = std::abs(A(i, i));
    double off = 0.0;
    for (int j = 0; j < m; ++j)
      if (j != i) {
        off += std::abs(A(j, i));
        if (A(j, i) != 0.0) adj[static_cast<std::size_t>(i)].push_back(j);
      }
    pc.rows[static_cast<std::size_t>(i)].sdd = diag - off > 1e-14 * std::max(diag, off);
  }

  pc.ok = true;
  for (int start = 0; start < m; ++start) {
    auto& row = pc.rows[static_cast<std::size_t>(start)];
    if (row.sdd) continue;
    // BFS to the nearest strictly dominant row.
    std::vector<int> prev(static_cast<std::size_t>(m), -2);
    std::deque<int> queue{start};
    prev[static_cast<std::size_t>(start)] = -1;
    int found = -1;
    while (!queue.empty() && found < 0) {
      int v = queue.front();
      queue.pop_front();
      for (int w : adj[static_cast<std::size_t>(v)]) {
        if (prev[static_cast<std::size_t>(w)] != -2) continue;
        prev[static_cast<std::size_t>(w)] = v;
        if (pc.rows[static_cast<std::size_t>(w)].sdd) {
          found = w;
          break;
        }
        queue.push_back(w);
      }
    }
    if (found >= 0) {
      row.reachable = true;
      for (int v = found; v != -1; v = prev[static_cast<std::size_t>(v)]) row.walk.push_back(v);
      std::reverse(row.walk.begin(), row.walk.end());
    } else {
      row.reachable = false;
      pc.ok = false;
    }
  }
  return pc;
}

LinearSystem linear_reduction(const ReactionNetwork& net, std::vector<std::string>* notes) {
  const int d = net.dim();
  const auto reductions = build_reduction(net);

  // Per higher complex: the affine substitution c^{z} -> s0 + svec . c
  // obtained from xtilde = A^{-1} b. Complexes of all-higher classes are
  // flagged to be dropped (their class contributes zero under the balance
  // condition).
  const int n_complex = static_cast<int>(net.complexes().size());
  std::vector<int> subst(static_cast<std::size_t>(n_complex), -1);  // -1 native, -2 drop
  std::vector<LinearForm> phi;

  for (const auto& red : reductions) {
    if (red.tag == LinkageCase::allLow) continue;
    if (red.tag == LinkageCase::allHigher) {
      for (int z : red.higher) subst[static_cast<std::size_t>(z)] = -2;
      continue;
    }
    const int m = static_cast<int>(red.higher.size());
    const auto pc = check_path_condition(red.A);
    if (!pc.ok) {
      std::vector<int> bad;
      std::ostringstream msg;
      msg << "path condition fails in linkage class " << red.class_id
          << ": no strictly dominant row reachable for";
      for (int i : pc.unreachable_rows()) {
        bad.push_back(red.higher[static_cast<std::size_t>(i)]);
        msg << " " << net.format_complex(red.higher[static_cast<std::size_t>(i)]);
      }
      throw SingularReduction(msg.str(), bad);
    }

    Eigen::MatrixXd B(m, d + 1);
    for (int i = 0; i < m; ++i) {
      B(i, 0) = red.b[static_cast<std::size_t>(i)].constant;
      B.row(i).tail(d) = red.b[static_cast<std::size_t>(i)].coeffs.transpose();
    }
    Eigen::PartialPivLU<Eigen::MatrixXd> lu(red.A);
    const double rcond = lu.rcond();
    if (notes && rcond < 1e-12) {
      std::ostringstream msg;
      msg << "class " << red.class_id << " balance matrix is ill-conditioned (rcond=" << rcond
          << ")";
      notes->push_back(msg.str());
    }
    const Eigen::MatrixXd X = lu.solve(B);
    for (int i = 0; i < m; ++i) {
      subst[static_cast<std::size_t>(red.higher[static_cast<std::size_t>(i)])] =
          static_cast<int>(phi.size());
      phi.push_back({X(i, 0), X.row(i).tail(d).transpose()});
    }
  }

  LinearSystem sys{Eigen::MatrixXd::Zero(d, d), Eigen::VectorXd::Zero(d)};
  for (std::size_t k = 0; k < net.reactions().size(); ++k) {
    const auto& r = net.reactions()[k];
    const int src = net.source_index(static_cast<int>(k));
    const int tag = subst[static_cast<std::size_t>(src)];
    if (tag == -2) continue;

    Eigen::VectorXd zeta(d);
    for (int i = 0; i < d; ++i)
      zeta[i] = r.product.counts[static_cast<std::size_t>(i)] -
                r.source.counts[static_cast<std::size_t>(i)];

    if (tag == -1) {
      const auto& z = r.source;
      if (z.order() == 0) {
        sys.r += r.rate * zeta;
      } else if (z.order() == 1) {
        for (int s = 0; s < d; ++s)
          if (z.counts[static_cast<std::size_t>(s)] > 0) sys.M.col(s) += r.rate * zeta;
      } else {
        // Higher-order monomial outside any substituted class cannot occur:
        // build_reduction covers every class.
        throw std::logic_error("linear_reduction: unsubstituted higher-order source");
      }
    } else {
      const auto& f = phi[static_cast<std::size_t>(tag)];
      sys.r += r.rate * f.constant * zeta;
      sys.M += r.rate * zeta * f.coeffs.transpose();
    }
  }
  return sys;
}

Trajectory solve_linear(const LinearSystem& sys, const Eigen::VectorXd& c0,
                        const std::vector<double>& grid) {
  const int d = static_cast<int>(c0.size());
  Eigen::MatrixXd aug = Eigen::MatrixXd::Zero(d + 1, d + 1);
  aug.topLeftCorner(d, d) = sys.M;
  aug.topRightCorner(d, 1) = sys.r;
  Eigen::VectorXd w0(d + 1);
  w0.head(d) = c0;
  w0[d] = 1.0;

  Trajectory traj;
  traj.grid = grid;
  traj.states.reserve(grid.size());
  for (double t : grid) {
    if (t == 0.0) {
      traj.states.push_back(c0);
      continue;
    }
    const Eigen::VectorXd w = expm(aug * t) * w0;
    traj.states.push_back(w.head(d));
  }
  return traj;
}

}  // namespace drnet
