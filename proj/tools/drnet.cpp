// drnet: analyze mass-action reaction networks for dynamic restricted
// complex balance, and when it holds, exercise the exact product-Poisson
// time-dependent law against exact stochastic simulation and a truncated
// master-equation oracle.
//
// Exit codes: 0 success (verdict holds / constantSolution), 1 input or
// parse error, 2 balance condition fails, 3 runtime overflow (event cap,
// box too small).

#include <CLI11.hpp>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "drnet/cme.hpp"
#include "drnet/dr.hpp"
#include "drnet/errors.hpp"
#include "drnet/json_io.hpp"
#include "drnet/ode.hpp"
#include "drnet/parse.hpp"
#include "drnet/poisson.hpp"
#include "drnet/ssa.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInput = 1;
constexpr int kExitFails = 2;
constexpr int kExitOverflow = 3;

struct Options {
  std::string file;
  double time = 2.0;
  std::uint64_t replicates = 100'000;
  std::uint64_t seed = 42;
  double tol = 1e-9;
  double dt = 0.0;  // 0 = subcommand default
  std::vector<std::int64_t> box;
  std::string out;
  std::string format = "json";
  bool emit_gnuplot = false;
};

struct LoadedNetwork {
  drnet::ReactionNetwork net;
  std::optional<Eigen::VectorXd> init;
};

std::optional<LoadedNetwork> load(const std::string& path, bool require_init) {
  std::ifstream in(path);
  if (!in) {
    std::cerr << "drnet: cannot open '" << path << "'\n";
    return std::nullopt;
  }
  std::stringstream buf;
  buf << in.rdbuf();
  drnet::NetworkSource src{buf.str(), path};

  auto parsed = drnet::parse_network(src, require_init);
  bool bad = !parsed.ok();
  for (const auto& d : parsed.diagnostics) std::cerr << to_string(d, path) << "\n";
  if (parsed.network) {
    for (const auto& d : drnet::validate_network(*parsed.network)) {
      std::cerr << to_string(d, path) << "\n";
      bad = bad || d.severity == drnet::Severity::error;
    }
  }
  if (bad) return std::nullopt;
  return LoadedNetwork{std::move(*parsed.network), std::move(parsed.init)};
}

std::ofstream open_out(const std::string& path) {
  const fs::path p(path);
  if (p.has_parent_path()) fs::create_directories(p.parent_path());
  return std::ofstream(p);
}

void emit(const json& j, const std::string& out) {
  if (out.empty()) {
    std::cout << j.dump(2) << "\n";
  } else {
    auto os = open_out(out);
    os << j.dump(2) << "\n";
  }
}

std::vector<std::int64_t> resolve_box(const Options& opt, const Eigen::VectorXd& means) {
  const auto d = static_cast<std::size_t>(means.size());
  if (opt.box.size() == d) return opt.box;
  if (opt.box.size() == 1) return std::vector<std::int64_t>(d, opt.box[0]);
  if (!opt.box.empty())
    throw std::invalid_argument("--box needs one bound or one per species");
  std::vector<std::int64_t> box(d);
  for (std::size_t i = 0; i < d; ++i) {
    const double m = means[static_cast<Eigen::Index>(i)];
    box[i] = static_cast<std::int64_t>(std::ceil(m + 12.0 * std::sqrt(m) + 20.0));
  }
  return box;
}

int cmd_parse(const Options& opt) {
  auto loaded = load(opt.file, /*require_init=*/false);
  if (!loaded) return kExitInput;
  emit(drnet::network_summary_json(loaded->net, loaded->init), opt.out);
  return kExitOk;
}

int cmd_analyze(const Options& opt) {
  auto loaded = load(opt.file, /*require_init=*/true);
  if (!loaded) return kExitInput;

  drnet::VerifyOptions vopts;
  vopts.T = opt.time;
  vopts.tol = opt.tol;
  vopts.ode_dt = opt.dt > 0.0 ? opt.dt : 1e-3;
  const auto report = drnet::verify_dr(loaded->net, *loaded->init, vopts);

  const bool solved = report.verdict != drnet::Verdict::fails;
  if (opt.format == "csv") {
    if (opt.out.empty()) {
      drnet::write_trajectory_csv(std::cout, loaded->net, report.means);
    } else {
      std::ofstream os(opt.out);
      drnet::write_trajectory_csv(os, loaded->net, report.means);
    }
    std::cerr << "verdict: " << to_string(report.verdict) << "\n";
  } else {
    auto j = drnet::dr_report_json(report, loaded->net, /*with_means=*/solved);
    json c0 = json::array();
    for (int i = 0; i < loaded->init->size(); ++i) c0.push_back((*loaded->init)[i]);
    j["c0"] = c0;
    emit(j, opt.out);
  }
  return solved ? kExitOk : kExitFails;
}

std::string sanitize(const std::string& name) {
  std::string out;
  for (char c : name) out += std::isalnum(static_cast<unsigned char>(c)) ? c : '_';
  return out;
}

int cmd_simulate(const Options& opt) {
  auto loaded = load(opt.file, /*require_init=*/true);
  if (!loaded) return kExitInput;

  const auto summary =
      drnet::run_ensemble(loaded->net, *loaded->init, opt.time, opt.replicates, opt.seed);

  const std::string prefix = opt.out.empty() ? fs::path(opt.file).stem().string() : opt.out;
  {
    auto os = open_out(prefix + ".json");
    os << drnet::ensemble_json(summary).dump(2) << "\n";
  }
  for (const auto& sp : summary.species) {
    auto os = open_out(prefix + "." + sanitize(sp.name) + ".csv");
    os << "species,count,frequency\n";
    for (const auto& [count, freq] : sp.histogram)
      os << sp.name << "," << count << "," << freq << "\n";
  }
  std::cout << "wrote " << prefix << ".json and " << summary.species.size()
            << " histogram file(s)\n";

  if (opt.emit_gnuplot) {
    drnet::VerifyOptions vopts;
    vopts.T = opt.time;
    vopts.tol = opt.tol;
    const auto report = drnet::verify_dr(loaded->net, *loaded->init, vopts);
    if (report.verdict == drnet::Verdict::fails) {
      std::cerr << "note: balance condition fails; no predicted law to overlay\n";
    } else {
      const auto& cT = report.means.back();
      std::ofstream gp(prefix + ".gp");
      gp << "# gnuplot script: empirical marginals vs predicted Poisson law\n";
      gp << "set terminal pngcairo size 900,600\n";
      gp << "set datafile separator ','\n";
      gp << "set style fill solid 0.4\n";
      gp << "poisson(k, lam) = exp(-lam + k*log(lam) - lgamma(k+1))\n";
      gp << "N = " << summary.replicates << ".0\n";
      for (std::size_t i = 0; i < summary.species.size(); ++i) {
        const auto& sp = summary.species[i];
        gp << "set output '" << prefix << "." << sanitize(sp.name) << ".png'\n";
        gp << "set xlabel 'count'; set ylabel 'probability'\n";
        gp << "lam = " << cT[static_cast<Eigen::Index>(i)] << "\n";
        gp << "set xrange [-0.5:ceil(lam + 8*sqrt(lam) + 5)]\n";
        gp << "set samples 2000\n";
        gp << "plot '" << prefix << "." << sanitize(sp.name) << ".csv' skip 1 using 2:($3/N) "
           << "with boxes title 'empirical " << sp.name << "', "
           << "poisson(floor(x+0.5), lam) with lines lw 2 title 'Poisson'\n";
      }
      std::cout << "wrote " << prefix << ".gp\n";
    }
  }
  return kExitOk;
}

int cmd_compare(const Options& opt) {
  auto loaded = load(opt.file, /*require_init=*/true);
  if (!loaded) return kExitInput;

  drnet::VerifyOptions vopts;
  vopts.T = opt.time;
  vopts.tol = opt.tol;
  const auto report = drnet::verify_dr(loaded->net, *loaded->init, vopts);
  const auto summary =
      drnet::run_ensemble(loaded->net, *loaded->init, opt.time, opt.replicates, opt.seed);

  if (report.verdict == drnet::Verdict::fails) {
    std::cerr << "verdict: fails; empirical dispersion per species:\n";
    for (const auto& sp : summary.species) {
      const double ratio = sp.mean > 0 ? sp.variance / sp.mean : 0.0;
      std::fprintf(stderr, "  %s: mean %.4f variance %.4f variance/mean %.4f\n", sp.name.c_str(),
                   sp.mean, sp.variance, ratio);
    }
    emit(drnet::comparison_json({}, report.verdict, false), opt.out);
    return kExitFails;
  }

  const auto& cT = report.means.back();
  std::vector<drnet::SpeciesComparison> rows;
  bool all_pass = true;
  for (std::size_t i = 0; i < summary.species.size(); ++i) {
    const auto& sp = summary.species[i];
    const double lam = cT[static_cast<Eigen::Index>(i)];
    const auto box = resolve_box(opt, cT)[i];
    drnet::SpeciesComparison row;
    row.name = sp.name;
    row.tv = drnet::total_variation(sp.histogram, summary.replicates, lam, box);
    const auto chi = drnet::chi_square(sp.histogram, summary.replicates, lam, box);
    row.chi2 = chi.statistic;
    row.p_value = chi.p_value;
    row.predicted_mean = lam;
    row.empirical_mean = sp.mean;
    row.empirical_variance = sp.variance;
    rows.push_back(row);
    all_pass = all_pass && chi.p_value > 1e-3;
  }
  emit(drnet::comparison_json(rows, report.verdict, all_pass), opt.out);
  return all_pass ? kExitOk : kExitFails;
}

int cmd_oracle(const Options& opt) {
  auto loaded = load(opt.file, /*require_init=*/true);
  if (!loaded) return kExitInput;

  drnet::VerifyOptions vopts;
  vopts.T = opt.time;
  vopts.tol = opt.tol;
  const auto report = drnet::verify_dr(loaded->net, *loaded->init, vopts);
  if (report.means.states.empty()) {
    std::cerr << "drnet: no mean trajectory available for this network\n";
    return kExitInput;
  }
  const auto& cT = report.means.back();

  drnet::CmeOptions copts;
  copts.dt = opt.dt > 0.0 ? opt.dt : 1e-4;
  // Auto-sized boxes must hold the law over the whole horizon, not just at
  // the start.
  Eigen::VectorXd peak = *loaded->init;
  for (const auto& c : report.means.states) peak = peak.cwiseMax(c);
  const auto box = resolve_box(opt, peak);
  const auto pmf = drnet::truncated_cme(loaded->net, *loaded->init, box, opt.time, copts);
  const auto law = drnet::product_poisson_pmf(cT, box);

  double sup = 0.0;
  for (std::size_t i = 0; i < pmf.p.size(); ++i)
    sup = std::max(sup, std::abs(pmf.p[i] - law.p[i]));
  const double tv = drnet::total_variation_pmf(pmf.p, law.p, pmf.leaked, law.leaked);

  json j;
  j["verdict"] = to_string(report.verdict);
  j["supNorm"] = sup;
  j["tv"] = tv;
  j["leaked"] = pmf.leaked;
  json jb = json::array();
  for (auto b : box) jb.push_back(b);
  j["box"] = jb;
  json per = json::array();
  for (int i = 0; i < loaded->net.dim(); ++i) {
    const auto m = pmf.marginal(i);
    std::vector<double> lawm(m.size());
    for (std::size_t k = 0; k < m.size(); ++k)
      lawm[k] = std::exp(-cT[i] + static_cast<double>(k) * std::log(cT[i]) -
                         std::lgamma(static_cast<double>(k) + 1.0));
    per.push_back({{"name", loaded->net.species()[static_cast<std::size_t>(i)]},
                   {"tvMarginal", drnet::total_variation_pmf(m, lawm)},
                   {"cmeMean", pmf.mean(i)},
                   {"predictedMean", cT[i]}});
  }
  j["species"] = per;
  emit(j, opt.out);
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"reaction-network analyzer for time-dependent product-form Poisson laws"};
  app.require_subcommand(1);

  Options opt;
  auto add_common = [&](CLI::App* cmd, bool needs_file = true) {
    if (needs_file) cmd->add_option("file", opt.file, "network file (.crn)")->required();
    cmd->add_option("--time,-T", opt.time, "time horizon");
    cmd->add_option("--replicates,-N", opt.replicates, "ensemble size");
    cmd->add_option("--seed", opt.seed, "master RNG seed");
    cmd->add_option("--tol", opt.tol, "balance tolerance (relative)");
    cmd->add_option("--dt", opt.dt, "integrator step");
    cmd->add_option("--box", opt.box, "per-species lattice bounds")->delimiter(',');
    cmd->add_option("--out", opt.out, "output path (or prefix for simulate)");
    cmd->add_option("--format", opt.format, "json|csv")
        ->check(CLI::IsMember({"json", "csv"}));
    cmd->add_flag("--emit-gnuplot", opt.emit_gnuplot, "write a gnuplot overlay script");
  };

  auto* parse = app.add_subcommand("parse", "parse and dump the canonical network");
  auto* analyze = app.add_subcommand("analyze", "run the balance analysis");
  auto* simulate = app.add_subcommand("simulate", "run an exact-simulation ensemble");
  auto* compare =
      app.add_subcommand("compare", "ensemble vs predicted law (TV and chi-square)");
  auto* oracle = app.add_subcommand("oracle", "truncated master equation vs predicted law");
  for (auto* cmd : {parse, analyze, simulate, compare, oracle}) add_common(cmd);

  CLI11_PARSE(app, argc, argv);

  try {
    if (parse->parsed()) return cmd_parse(opt);
    if (analyze->parsed()) return cmd_analyze(opt);
    if (simulate->parsed()) return cmd_simulate(opt);
    if (compare->parsed()) return cmd_compare(opt);
    if (oracle->parsed()) return cmd_oracle(opt);
  } catch (const drnet::EventOverflow& e) {
    std::cerr << "drnet: " << e.what() << "\n";
    return kExitOverflow;
  } catch (const drnet::BoxTooSmall& e) {
    std::cerr << "drnet: " << e.what() << "\n";
    return kExitOverflow;
  } catch (const drnet::BlowUpError& e) {
    std::cerr << "drnet: " << e.what() << "\n";
    return kExitOverflow;
  } catch (const std::exception& e) {
    std::cerr << "drnet: " << e.what() << "\n";
    return kExitInput;
  }
  return kExitInput;
}
