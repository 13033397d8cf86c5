#include "drnet/network.hpp"

#include <algorithm>
#include <stdexcept>
#include <cmath>

namespace drnet {

ReactionNetwork::ReactionNetwork(std::vector<std::string> species, std::vector<Reaction> reactions)
    : species_(std::move(species)), reactions_(std::move(reactions)) {
  if (species_.empty()) throw std::invalid_argument("network needs at least one species");
  const auto d = species_.size();
  for (const auto& r : reactions_) {
    if (r.source.counts.size() != d || r.product.counts.size() != d)
      throw std::invalid_argument("complex dimension does not match species count");
    for (int c : r.source.counts)
      if (c < 0) throw std::invalid_argument("negative stoichiometric coefficient");
    for (int c : r.product.counts)
      if (c < 0) throw std::invalid_argument("negative stoichiometric coefficient");
    if (r.source == r.product)
      throw std::invalid_argument("reaction source equals product");
    if (!(r.rate >= 0.0) || !std::isfinite(r.rate))
      throw std::invalid_argument("rate constant must be finite and nonnegative");
  }
  // Deduplicate complexes in first-appearance order (source then product,
  // reaction by reaction) so indices are deterministic.
  auto intern = [this](const Complex& z) {
    int idx = complex_index(z);
    if (idx >= 0) return idx;
    complexes_.push_back(z);
    return static_cast<int>(complexes_.size()) - 1;
  };
  source_cx_.reserve(reactions_.size());
  product_cx_.reserve(reactions_.size());
  for (const auto& r : reactions_) {
    source_cx_.push_back(intern(r.source));
    product_cx_.push_back(intern(r.product));
  }
}

int ReactionNetwork::complex_index(const Complex& z) const {
  for (std::size_t i = 0; i < complexes_.size(); ++i)
    if (complexes_[i] == z) return static_cast<int>(i);
  return -1;
}

std::string ReactionNetwork::format_complex(const Complex& z) const {
  std::string out;
  for (std::size_t i = 0; i < z.counts.size(); ++i) {
    if (z.counts[i] == 0) continue;
    if (!out.empty()) out += "+";
    if (z.counts[i] != 1) out += std::to_string(z.counts[i]);
    out += species_[i];
  }
  return out.empty() ? "0" : out;
}

std::vector<int> reaction_vector(const Reaction& r) {
  std::vector<int> zeta(r.source.counts.size());
  for (std::size_t i = 0; i < zeta.size(); ++i)
    zeta[i] = r.product.counts[i] - r.source.counts[i];
  return zeta;
}

namespace {

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(int n) : parent(n) {
    for (int i = 0; i < n; ++i) parent[i] = i;
  }
  int find(int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(int a, int b) { parent[find(a)] = find(b); }
};

// Iterative Tarjan; returns the SCC id of each vertex.
std::vector<int> strongly_connected_components(int n, const std::vector<std::vector<int>>& adj) {
  std::vector<int> index(n, -1), low(n, 0), comp(n, -1);
  std::vector<bool> on_stack(n, false);
  std::vector<int> stack;
  int next_index = 0, next_comp = 0;

  struct Frame {
    int v;
    std::size_t child;
  };
  for (int start = 0; start < n; ++start) {
    if (index[start] != -1) continue;
    std::vector<Frame> call{{start, 0}};
    index[start] = low[start] = next_index++;
    stack.push_back(start);
    on_stack[start] = true;
    while (!call.empty()) {
      auto& [v, child] = call.back();
      if (child < adj[v].size()) {
        int w = adj[v][child++];
        if (index[w] == -1) {
          index[w] = low[w] = next_index++;
          stack.push_back(w);
          on_stack[w] = true;
          call.push_back({w, 0});
        } else if (on_stack[w]) {
          low[v] = std::min(low[v], index[w]);
        }
      } else {
        if (low[v] == index[v]) {
          int w;
          do {
            w = stack.back();
            stack.pop_back();
            on_stack[w] = false;
            comp[w] = next_comp;
          } while (w != v);
          ++next_comp;
        }
        int done = v;
        call.pop_back();
        if (!call.empty()) low[call.back().v] = std::min(low[call.back().v], low[done]);
      }
    }
  }
  return comp;
}

}  // namespace

std::vector<std::vector<int>> linkage_classes(const ReactionNetwork& net) {
  const int n = static_cast<int>(net.complexes().size());
  UnionFind uf(n);
  for (std::size_t k = 0; k < net.reactions().size(); ++k)
    uf.unite(net.source_index(static_cast<int>(k)), net.product_index(static_cast<int>(k)));

  std::vector<std::vector<int>> classes;
  std::vector<int> root_to_class(n, -1);
  for (int i = 0; i < n; ++i) {
    int r = uf.find(i);
    if (root_to_class[r] == -1) {
      root_to_class[r] = static_cast<int>(classes.size());
      classes.emplace_back();
    }
    classes[root_to_class[r]].push_back(i);
  }
  return classes;
}

bool is_weakly_reversible(const ReactionNetwork& net) {
  const int n = static_cast<int>(net.complexes().size());
  std::vector<std::vector<int>> adj(n);
  for (std::size_t k = 0; k < net.reactions().size(); ++k)
    adj[net.source_index(static_cast<int>(k))].push_back(net.product_index(static_cast<int>(k)));

  const auto comp = strongly_connected_components(n, adj);
  for (const auto& cls : linkage_classes(net)) {
    for (int z : cls)
      if (comp[z] != comp[cls.front()]) return false;
  }
  return true;
}

int network_order(const ReactionNetwork& net) {
  int m = 0;
  for (const auto& z : net.complexes()) m = std::max(m, z.order());
  return m;
}

double monomial(const Eigen::VectorXd& c, const Complex& y) {
  double p = 1.0;
  for (std::size_t i = 0; i < y.counts.size(); ++i)
    for (int j = 0; j < y.counts[i]; ++j) p *= c[static_cast<Eigen::Index>(i)];
  return p;
}

}  // namespace drnet
