#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

namespace drnet {

/// A complex: nonnegative integer multiplicities over the species, in
/// declaration order. Its order is the 1-norm of the vector.
struct Complex {
  std::vector<int> counts;

  int order() const {
    int s = 0;
    for (int c : counts) s += c;
    return s;
  }
  bool empty_complex() const { return order() == 0; }
  bool operator==(const Complex&) const = default;
};

/// A directed reaction between two distinct complexes with a nonnegative
/// mass-action rate constant.
struct Reaction {
  Complex source;
  Complex product;
  double rate = 0.0;
};

/// Species list, reactions, and the deduplicated complex set. Immutable
/// after construction; safe to share across threads.
class ReactionNetwork {
public:
  ReactionNetwork(std::vector<std::string> species, std::vector<Reaction> reactions);

  int dim() const { return static_cast<int>(species_.size()); }
  const std::vector<std::string>& species() const { return species_; }
  const std::vector<Reaction>& reactions() const { return reactions_; }
  const std::vector<Complex>& complexes() const { return complexes_; }

  /// Index into complexes() of reaction k's source / product.
  int source_index(int k) const { return source_cx_[k]; }
  int product_index(int k) const { return product_cx_[k]; }

  int complex_index(const Complex& z) const;  // -1 if absent

  /// Human-readable form, e.g. "2X+Y" or "0" for the empty complex.
  std::string format_complex(const Complex& z) const;
  std::string format_complex(int index) const { return format_complex(complexes_[index]); }

private:
  std::vector<std::string> species_;
  std::vector<Reaction> reactions_;
  std::vector<Complex> complexes_;
  std::vector<int> source_cx_;
  std::vector<int> product_cx_;
};

/// zeta_k = product - source.
std::vector<int> reaction_vector(const Reaction& r);

/// Connected components of the undirected reaction graph on complexes.
/// Classes are listed by smallest member index, members ascending.
std::vector<std::vector<int>> linkage_classes(const ReactionNetwork& net);

/// True iff every linkage class is strongly connected in the directed
/// reaction graph.
bool is_weakly_reversible(const ReactionNetwork& net);

/// Maximum complex order in the network.
int network_order(const ReactionNetwork& net);

/// c^y = prod_i c_i^{y_i} with the 0^0 = 1 convention.
double monomial(const Eigen::VectorXd& c, const Complex& y);

}  // namespace drnet
