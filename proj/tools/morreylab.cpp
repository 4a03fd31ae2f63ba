// morreylab: run experiments, evaluate norms and weight constants, dump
// stopping-time decompositions.
#include <CLI11.hpp>

#include <cmath>
#include <fstream>
#include <iostream>
#include <limits>
#include <optional>

#include "morrey/czd.hpp"
#include "morrey/harness.hpp"
#include "morrey/report.hpp"
#include "morrey/text.hpp"
#include "morrey/weights_norms.hpp"

namespace {

constexpr int kExitValidation = 2;
constexpr int kExitInvariant = 3;

using namespace morrey;

int cmd_run(const std::string& path, const std::string& out, std::optional<long long> seed,
            std::optional<int> trials) {
  ExperimentConfig cfg = ExperimentConfig::load(path);
  if (seed) cfg.seed = static_cast<std::uint64_t>(*seed);
  if (trials) cfg.trials = *trials;
  const Report r = run_experiment(cfg);
  if (out.empty()) {
    std::cout << report_json(r);
  } else {
    emit_report(r, out);
  }
  std::cerr << r.experiment << ": " << r.rows.size() << " rows, max ratio " << format_number(r.max_ratio()) << "\n";
  for (const auto& f : r.invariant_failures) std::cerr << "invariant failure: " << f << "\n";
  return r.invariant_failures.empty() ? 0 : kExitInvariant;
}

int cmd_norm(const std::string& csv, double p, double q, const std::string& weight) {
  const LatticeFunction f = read_csv_file(csv);
  std::optional<Weight> w;
  if (!weight.empty()) w = make_weight(weight, f.window());
  std::cout << format_number(morrey_norm(f, p, q, w)) << "\n";
  return 0;
}

int cmd_weight_const(const std::string& kind_name, const std::string& path) {
  const ExperimentConfig cfg = ExperimentConfig::load(path);
  const WeightConditionKind kind = weight_kind_from_string(kind_name);
  ExponentSet e = cfg.exponents;
  e.regime = regime_of(kind);
  try {
    e = e.completed();
  } catch (const std::exception& ex) {
    throw ValidationError(ex.what());
  }
  for (const Window& w : cfg.windows) {
    const Weight v = make_weight(cfg.v, w, cfg.base_dir);
    const Weight w1 = make_weight(cfg.w1, w, cfg.base_dir);
    const Weight w2 = make_weight(cfg.w2, w, cfg.base_dir);
    double k = 0.0;
    try {
      k = two_weight_constant(kind, v, w1, w2, e, cfg.allow_violation);
    } catch (const std::invalid_argument& ex) {
      throw ValidationError(ex.what());
    }
    std::cout << w.level_min() << "," << w.level_max() << "," << format_number(k) << "\n";
  }
  return 0;
}

int cmd_decompose(const std::string& path, const std::string& json, int trial, int level,
                  const std::vector<long long>& index, double alpha_override) {
  const ExperimentConfig cfg = ExperimentConfig::load(path);
  const Window& w = cfg.windows.front();
  const LatticeFunction f = prolongate(cfg, random_input(cfg, trial, 0), w);
  const LatticeFunction g = prolongate(cfg, random_input(cfg, trial, 1), w);
  Cube q0{level, Index(w.dim(), 0)};
  if (!index.empty()) {
    if (static_cast<int>(index.size()) != w.dim()) throw ValidationError("--index needs one entry per axis");
    q0.index.assign(index.begin(), index.end());
  } else {
    q0 = w.cube_at(level, 0);
  }
  if (!w.contains(q0)) throw ValidationError("base cube outside the window");
  const ExponentSet& e = cfg.exponents;
  const double alpha = std::isnan(alpha_override) ? e.alpha : alpha_override;
  const Decomposition d = alpha > 0.0 ? cz_decompose_alpha(f, g, q0, e.r1, e.r2, alpha)
                                      : cz_decompose(f, g, q0, cfg.theta, cfg.theta);
  std::ofstream out(json, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + json);
  out << decomposition_json(d, w) << "\n";
  const auto bad = check_decomposition(d, f, g);
  for (const auto& b : bad) std::cerr << "invariant failure: " << b << "\n";
  std::cerr << d.levels.size() << " levels\n";
  return bad.empty() ? 0 : kExitInvariant;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Numerical experiments for bilinear fractional operators on Morrey spaces"};
  app.require_subcommand(1);

  std::string config, out, csv, weight, kind, json;
  std::optional<long long> seed;
  std::optional<int> trials;
  double p = 0.0, q = 0.0;

  auto* run = app.add_subcommand("run", "run an experiment config");
  run->add_option("config", config, "config file")->required()->check(CLI::ExistingFile);
  run->add_option("--out", out, "output prefix; writes PREFIX.csv and PREFIX.json (default: JSON to stdout)");
  run->add_option("--seed", seed, "override the config seed");
  run->add_option("--trials", trials, "override the trial count")->check(CLI::NonNegativeNumber);

  auto* norm = app.add_subcommand("norm", "Morrey norm of a lattice CSV");
  norm->add_option("csv", csv, "lattice function CSV")->required()->check(CLI::ExistingFile);
  norm->add_option("--p", p, "outer exponent")->required();
  norm->add_option("--q", q, "inner exponent")->required();
  norm->add_option("--weight", weight, "unit | pow:gamma | sampled:gamma | CSV path");

  auto* wc = app.add_subcommand("weight-const", "two-weight constant of a config's weights");
  wc->add_option("kind", kind, "C22 C23 C24 C27 C29 C210 C211 CBH")->required();
  wc->add_option("config", config, "config file")->required()->check(CLI::ExistingFile);

  int dtrial = 0, dlevel = 0;
  std::vector<long long> dindex;
  double dalpha = std::numeric_limits<double>::quiet_NaN();
  auto* dec = app.add_subcommand("decompose", "stopping-time decomposition of a random input pair");
  dec->add_option("config", config, "config file")->required()->check(CLI::ExistingFile);
  dec->add_option("--json", json, "output JSON path")->required();
  dec->add_option("--trial", dtrial, "which random input pair");
  dec->add_option("--level", dlevel, "base cube level (default level_max)");
  dec->add_option("--index", dindex, "base cube index");
  dec->add_option("--alpha", dalpha, "use the fractional functional with this alpha (default: config alpha)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*run) return cmd_run(config, out, seed, trials);
    if (*norm) return cmd_norm(csv, p, q, weight);
    if (*wc) return cmd_weight_const(kind, config);
    if (*dec) {
      if (dec->count("--level") == 0) dlevel = ExperimentConfig::load(config).windows.front().level_max();
      return cmd_decompose(config, json, dtrial, dlevel, dindex, dalpha);
    }
  } catch (const ValidationError& ex) {
    std::cerr << "validation error: " << ex.what() << "\n";
    return kExitValidation;
  } catch (const std::invalid_argument& ex) {
    std::cerr << "validation error: " << ex.what() << "\n";
    return kExitValidation;
  } catch (const std::exception& ex) {
    std::cerr << "error: " << ex.what() << "\n";
    return 1;
  }
  return 0;
}
