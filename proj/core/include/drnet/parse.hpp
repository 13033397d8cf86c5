#pragma once

#include <Eigen/Dense>
#include <optional>
#include <string>
#include <vector>

#include "drnet/network.hpp"

namespace drnet {

struct NetworkSource {
  std::string text;
  std::string origin = "<stdin>";
};

enum class Severity { error, warning };

struct ParseDiagnostic {
  Severity severity = Severity::error;
  int line = 1;  // 1-based
  std::string message;
};

struct ParseResult {
  std::optional<ReactionNetwork> network;
  std::optional<Eigen::VectorXd> init;  // per-species Poisson means, declaration order
  std::vector<ParseDiagnostic> diagnostics;

  bool ok() const {
    if (!network) return false;
    for (const auto& d : diagnostics)
      if (d.severity == Severity::error) return false;
    return true;
  }
};

/// Parse the .crn DSL. Statements are separated by newlines or ';', '#'
/// starts a comment. `species A, B` declares species (order fixes the
/// coordinate system), `SRC -> DST : rate` and `SRC <-> DST : fwd, rev`
/// declare reactions ('0' is the empty complex), `init A = 1, B = 2`
/// supplies the initial concentrations / Poisson means.
///
/// Total and deterministic: any input yields either a network or at least
/// one error diagnostic. With require_init the absence of an init block is
/// an error; parsing for structure only (e.g. the `parse` subcommand) may
/// turn that off.
ParseResult parse_network(const NetworkSource& src, bool require_init = true);

/// Definitional checks: species appearing in no complex and complexes
/// appearing in no reaction are errors; zero rate constants warn.
std::vector<ParseDiagnostic> validate_network(const ReactionNetwork& net);

/// Emit DSL text that reparses to an equivalent network (up to species and
/// reaction ordering).
std::string pretty_print(const ReactionNetwork& net, const Eigen::VectorXd* init = nullptr);

std::string to_string(const ParseDiagnostic& d, const std::string& origin);

}  // namespace drnet
