#pragma once

#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "morrey/config.hpp"
#include "morrey/exponents.hpp"
#include "morrey/field.hpp"

namespace morrey {

enum class Experiment {
  T21, T22, T23, T24, T25, T26,
  T27_sufficiency, T27_necessity,
  T28, T29, COR_BH, SW101, JN, CZ_INV, BH_DOM, L39
};

std::string to_string(Experiment e);
Experiment experiment_from_string(const std::string& s);

// Exponent or configuration problems detected before any computation.
class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct ExperimentConfig {
  Experiment experiment = Experiment::T21;
  ExponentSet exponents;
  // One window per refinement, in the order given.
  std::vector<Window> windows;
  // Weight specs: "unit", "pow:gamma" (exact averages), "sampled:gamma"
  // (midpoint samples) or a CSV path.
  std::string v = "unit", w1 = "unit", w2 = "unit";
  int trials = 20;
  std::uint64_t seed = 1;
  // Random inputs are drawn on cells of this level and prolongated to every
  // window, so refinements see the same function.
  int input_level = 0;
  double spike_height = 32.0;
  double spike_probability = 0.25;
  int spike_count = 1;
  // Put the spikes of f and g on the same cells.
  bool shared_spike = false;
  std::vector<std::string> allow_violation;
  // Commutator symbols ("log", "sin", "random") and their slots.
  std::vector<std::string> symbols;
  std::vector<int> slots;
  double vartheta = 1.5;  // T26 exponent inflation
  double theta = 2.0;     // CZ_INV exponents
  std::vector<double> pairs{1.25, 1.5, 2.0, 3.0, 5.0};  // BH_DOM first exponents
  double t_hat = 1.0;     // L39
  std::string base_dir;
  Config source;

  static ExperimentConfig from(const Config& c);
  static ExperimentConfig load(const std::string& path) { return from(Config::load(path)); }
};

// Validates the exponents for the experiment's regime; throws
// ValidationError naming every violated constraint not in allow_violation.
void validate_config(const ExperimentConfig& cfg);

Weight make_weight(const std::string& spec, const Window& w, const std::string& base_dir = "");

// Nonnegative input drawn on the input grid: uniform cell values plus, with
// probability spike_probability (default 1/4), spike_count spike cells.  Deterministic in (seed, trial, which).
struct RandomInput {
  std::vector<double> values;  // on the input grid of the first window
  std::string descriptor;
};
RandomInput random_input(const ExperimentConfig& cfg, int trial, int which);
LatticeFunction prolongate(const ExperimentConfig& cfg, const RandomInput& in, const Window& w);

struct Report;
Report run_experiment(const ExperimentConfig& cfg);

}  // namespace morrey
