#ifndef SEBOOST_EXPERIMENT_HPP
#define SEBOOST_EXPERIMENT_HPP

#include <cstdint>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "seboost/baselines.hpp"
#include "seboost/boosting.hpp"
#include "seboost/data.hpp"
#include "seboost/mlp.hpp"

namespace seboost {

/// Invalid or contradictory configuration, as opposed to runtime failures.
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class ExperimentKind {
  kRegression,
  kAutoencoder,
  kSweepEll,
  kSweepM,
  kSweepLr,
  kEnrichmentStudy,
};

std::string experiment_name(ExperimentKind kind);

struct ExperimentConfig {
  ExperimentKind experiment = ExperimentKind::kRegression;
  BaselineConfig<double> baseline;
  BoostConfig<double> boost;
  int epochs = 0;  // 0: the experiment preset decides
  std::vector<std::uint64_t> seeds{1};
  std::string output_dir = "out";
  double weight_decay = 1e-4;
  std::string mnist_path;  // empty: synthetic image fallback
  std::vector<Index> ell_values{50, 200, 1000};
  std::vector<Index> m_values{2, 10, 20};
  std::vector<double> lr_values{0.05, 0.1, 0.5};
  bool full_autoencoder = false;
  bool quiet = false;

  // Dotted key names the user set explicitly; presets leave those alone.
  std::set<std::string> explicit_keys;
  bool has(const std::string& key) const {
    return explicit_keys.count(key) > 0;
  }
};

/// Strict parse of the flat JSON config document. Unknown keys, type
/// mismatches and out-of-range values all raise ConfigError naming the key.
ExperimentConfig parse_config(const std::string& json_text);

/// Fill in the per-experiment defaults for every field the user left unset.
ExperimentConfig resolve_presets(ExperimentConfig cfg);

/// One (method, variant, seed) training run within an experiment.
struct Cell {
  std::string name;
  BaselineConfig<double> baseline;
  BoostConfig<double> boost;
  std::uint64_t seed = 1;
};

/// Network and data shared by every cell of an experiment.
struct ProblemSetup {
  MlpSpec spec;
  Dataset train;
  Dataset test;
  double weight_decay = 1e-4;
  Index steps_per_epoch = 0;
  Index total_steps = 0;
  bool synthetic_fallback = false;
};

ProblemSetup make_problem(const ExperimentConfig& resolved);
std::vector<Cell> make_cells(const ExperimentConfig& resolved);

/// Worker cap: SEBOOST_THREADS when set, else hardware concurrency, min 1.
int worker_count();

/// Execute every cell of the experiment, writing <output_dir>/<cell>.csv per
/// cell plus curves_epochs.svg and curves_walltime.svg overlaying all cells.
/// Returns 0 on success; failures are thrown (ConfigError, IoError, ...).
int run_experiment(const ExperimentConfig& cfg);

}  // namespace seboost

#endif  // SEBOOST_EXPERIMENT_HPP
