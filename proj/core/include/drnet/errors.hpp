#pragma once

#include <cstddef>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

namespace drnet {

/// The linear reduction requires every mixed linkage-class matrix to pass
/// the path condition; this carries the complexes whose rows were not
/// reachable from a strictly dominant row.
class SingularReduction : public std::runtime_error {
public:
  SingularReduction(const std::string& what, std::vector<int> complexes)
      : std::runtime_error(what), complexes_(std::move(complexes)) {}
  const std::vector<int>& complex_indices() const { return complexes_; }

private:
  std::vector<int> complexes_;
};

class NonPositiveInitial : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

class NotOneSpecies : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

class NotBinary : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Thrown when a stochastic simulation exceeds its event cap. Carries the
/// replicate index when raised from an ensemble run.
class EventOverflow : public std::runtime_error {
public:
  static constexpr std::size_t kNoReplicate = std::numeric_limits<std::size_t>::max();

  explicit EventOverflow(const std::string& what, std::size_t replicate = kNoReplicate)
      : std::runtime_error(what), replicate_(replicate) {}
  std::size_t replicate() const { return replicate_; }

private:
  std::size_t replicate_;
};

class BoxTooSmall : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

class InsufficientSamples : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Raised by the ODE integrator when the 1-norm of the state exceeds the
/// configured bound (mass-action systems may blow up in finite time).
class BlowUpError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Raised by the ODE integrator when a component drops below the negative
/// roundoff threshold, which indicates a model or stepping bug rather than
/// floating-point noise.
class NegativeStateError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace drnet
