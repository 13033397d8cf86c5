#include "drnet/json_io.hpp"

namespace drnet {

using nlohmann::json;

json network_summary_json(const ReactionNetwork& net, const std::optional<Eigen::VectorXd>& init) {
  json j;
  j["species"] = net.species();

  json complexes = json::array();
  for (std::size_t i = 0; i < net.complexes().size(); ++i) {
    const auto& z = net.complexes()[i];
    complexes.push_back({{"formula", net.format_complex(static_cast<int>(i))},
                         {"vector", z.counts},
                         {"order", z.order()}});
  }
  j["complexes"] = complexes;

  json reactions = json::array();
  for (const auto& r : net.reactions())
    reactions.push_back({{"source", net.format_complex(r.source)},
                         {"product", net.format_complex(r.product)},
                         {"rate", r.rate}});
  j["reactions"] = reactions;

  json classes = json::array();
  for (const auto& cls : linkage_classes(net)) {
    json names = json::array();
    for (int z : cls) names.push_back(net.format_complex(z));
    classes.push_back(names);
  }
  j["linkageClasses"] = classes;
  j["weaklyReversible"] = is_weakly_reversible(net);
  j["order"] = network_order(net);

  if (init) {
    json jc;
    for (int i = 0; i < net.dim(); ++i)
      jc[net.species()[static_cast<std::size_t>(i)]] = (*init)[i];
    j["init"] = jc;
  }
  return j;
}

json dr_report_json(const DRReport& report, const ReactionNetwork& net, bool with_means) {
  json j;
  j["verdict"] = to_string(report.verdict);
  j["maxResidual"] = report.max_residual;
  j["threshold"] = report.threshold;
  j["tolerance"] = report.tolerance;
  j["horizon"] = report.horizon;

  json per = json::array();
  for (const auto& pc : report.per_complex)
    per.push_back({{"complex", net.format_complex(pc.complex_index)},
                   {"maxResidual", pc.max_residual}});
  j["perComplex"] = per;

  json failing = json::array();
  for (int z : report.failing) failing.push_back(net.format_complex(z));
  j["failingComplexes"] = failing;

  if (report.system) {
    json M = json::array();
    for (int i = 0; i < report.system->M.rows(); ++i) {
      json row = json::array();
      for (int k = 0; k < report.system->M.cols(); ++k) row.push_back(report.system->M(i, k));
      M.push_back(row);
    }
    json r = json::array();
    for (int i = 0; i < report.system->r.size(); ++i) r.push_back(report.system->r[i]);
    j["linearSystem"] = {{"M", M}, {"r", r}};
  } else {
    j["linearSystem"] = nullptr;
  }

  if (with_means && !report.means.grid.empty()) {
    json grid = json::array();
    for (double t : report.means.grid) grid.push_back(t);
    json values = json::array();
    for (const auto& c : report.means.states) {
      json row = json::array();
      for (int i = 0; i < c.size(); ++i) row.push_back(c[i]);
      values.push_back(row);
    }
    j["means"] = {{"grid", grid}, {"values", values}};
  }

  j["notes"] = report.notes;
  return j;
}

json ensemble_json(const EnsembleSummary& summary) {
  json j;
  j["N"] = summary.replicates;
  j["T"] = summary.horizon;
  j["seed"] = summary.seed;
  json species = json::array();
  for (const auto& sp : summary.species) {
    json hist = json::array();
    for (const auto& [count, freq] : sp.histogram) hist.push_back({count, freq});
    species.push_back({{"name", sp.name},
                       {"mean", sp.mean},
                       {"variance", sp.variance},
                       {"histogram", hist}});
  }
  j["species"] = species;
  return j;
}

json comparison_json(const std::vector<SpeciesComparison>& rows, Verdict verdict, bool pass) {
  json j;
  j["verdict"] = to_string(verdict);
  j["pass"] = pass;
  json species = json::array();
  for (const auto& row : rows)
    species.push_back({{"name", row.name},
                       {"tv", row.tv},
                       {"chi2", row.chi2},
                       {"pValue", row.p_value},
                       {"predictedMean", row.predicted_mean},
                       {"empiricalMean", row.empirical_mean},
                       {"empiricalVariance", row.empirical_variance}});
  j["species"] = species;
  return j;
}

}  // namespace drnet
