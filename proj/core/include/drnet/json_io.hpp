#pragma once

#include <nlohmann/json.hpp>
#include <optional>

#include "drnet/dr.hpp"
#include "drnet/network.hpp"
#include "drnet/poisson.hpp"
#include "drnet/ssa.hpp"

namespace drnet {

/// Canonical network dump: species, complexes with orders, linkage
/// classes, weak-reversibility flag, initial condition when present.
nlohmann::json network_summary_json(const ReactionNetwork& net,
                                    const std::optional<Eigen::VectorXd>& init);

/// {verdict, maxResidual, perComplex, linearSystem: {M, r}, notes, ...};
/// with_means additionally embeds the sampled mean trajectory.
nlohmann::json dr_report_json(const DRReport& report, const ReactionNetwork& net,
                              bool with_means);

/// {N, T, seed, species: [{name, mean, variance, histogram: [[count, freq], ...]}]}
nlohmann::json ensemble_json(const EnsembleSummary& summary);

struct SpeciesComparison {
  std::string name;
  double tv = 0.0;
  double chi2 = 0.0;
  double p_value = 1.0;
  double predicted_mean = 0.0;
  double empirical_mean = 0.0;
  double empirical_variance = 0.0;
};

nlohmann::json comparison_json(const std::vector<SpeciesComparison>& rows, Verdict verdict,
                               bool pass);

}  // namespace drnet
