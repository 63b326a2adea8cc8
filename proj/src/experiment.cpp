#include "seboost/experiment.hpp"

#include <atomic>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <filesystem>
#include <iostream>
#include <mutex>
#include <thread>
#include <utility>

#include <json.hpp>

#include "seboost/svg.hpp"
#include "seboost/trace_io.hpp"

namespace seboost {
namespace {

using nlohmann::json;

constexpr std::uint64_t kRegressionDataSeed = 1;
constexpr std::uint64_t kImageDataSeed = 7;
constexpr Index kRegressionRows = 20000;
constexpr Index kRegressionTrainRows = 18000;
constexpr Index kImageRows = 7000;
constexpr Index kImageTrainRows = 6000;

ConfigError key_error(const std::string& key, const std::string& why) {
  return ConfigError("config key \"" + key + "\": " + why);
}

std::int64_t as_int(const std::string& key, const json& v) {
  if (!v.is_number_integer()) throw key_error(key, "expected an integer");
  return v.get<std::int64_t>();
}

double as_number(const std::string& key, const json& v) {
  if (!v.is_number()) throw key_error(key, "expected a number");
  return v.get<double>();
}

bool as_bool(const std::string& key, const json& v) {
  if (!v.is_boolean()) throw key_error(key, "expected true or false");
  return v.get<bool>();
}

std::string as_string(const std::string& key, const json& v) {
  if (!v.is_string()) throw key_error(key, "expected a string");
  return v.get<std::string>();
}

BaselineMethod parse_method(const std::string& key, const std::string& name) {
  if (name == "sgd_momentum") return BaselineMethod::kSgdMomentum;
  if (name == "nag") return BaselineMethod::kNag;
  if (name == "adagrad") return BaselineMethod::kAdaGrad;
  throw key_error(key, "unknown method \"" + name + "\"");
}

std::string method_tag(BaselineMethod m) {
  switch (m) {
    case BaselineMethod::kSgdMomentum: return "sgd";
    case BaselineMethod::kNag: return "nag";
    case BaselineMethod::kAdaGrad: return "adagrad";
  }
  return "unknown";
}

std::string short_num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%g", v);
  return buf;
}

void parse_baseline_section(const json& obj, ExperimentConfig& cfg) {
  if (!obj.is_object()) throw key_error("baseline", "expected an object");
  for (const auto& [k, v] : obj.items()) {
    const std::string key = "baseline." + k;
    if (k == "method") {
      cfg.baseline.method = parse_method(key, as_string(key, v));
    } else if (k == "lr") {
      const double lr = as_number(key, v);
      if (!(lr > 0)) throw key_error(key, "out of range, need > 0");
      cfg.baseline.lr = lr;
    } else if (k == "momentum") {
      const double m = as_number(key, v);
      if (m < 0 || m >= 1) throw key_error(key, "out of range, need [0, 1)");
      cfg.baseline.momentum = m;
    } else if (k == "adagrad_epsilon") {
      const double e = as_number(key, v);
      if (!(e > 0)) throw key_error(key, "out of range, need > 0");
      cfg.baseline.adagrad_epsilon = e;
    } else {
      throw ConfigError("unknown config key \"" + key + "\"");
    }
    cfg.explicit_keys.insert(key);
  }
}

void parse_boost_section(const json& obj, ExperimentConfig& cfg) {
  if (!obj.is_object()) throw key_error("boost", "expected an object");
  for (const auto& [k, v] : obj.items()) {
    const std::string key = "boost." + k;
    if (k == "ell") {
      const auto ell = as_int(key, v);
      if (ell < 1) throw key_error(key, "out of range, need >= 1");
      cfg.boost.ell = static_cast<Index>(ell);
    } else if (k == "M") {
      const auto m = as_int(key, v);
      if (m < 1) throw key_error(key, "out of range, need >= 1");
      cfg.boost.history = static_cast<Index>(m);
    } else if (k == "cg_evals") {
      const auto e = as_int(key, v);
      if (e < 2) throw key_error(key, "out of range, need >= 2");
      cfg.boost.cg.max_evals = static_cast<int>(e);
    } else if (k == "grad_tol") {
      const double t = as_number(key, v);
      if (t < 0) throw key_error(key, "out of range, need >= 0");
      cfg.boost.cg.grad_tol = t;
    } else if (k == "wolfe_c1") {
      cfg.boost.cg.wolfe_c1 = as_number(key, v);
    } else if (k == "wolfe_c2") {
      cfg.boost.cg.wolfe_c2 = as_number(key, v);
    } else if (k == "subspace_batch") {
      const auto b = as_int(key, v);
      if (b < 1) throw key_error(key, "out of range, need >= 1");
      cfg.boost.subspace_batch_size = static_cast<Index>(b);
    } else if (k == "baseline_batch") {
      const auto b = as_int(key, v);
      if (b < 1) throw key_error(key, "out of range, need >= 1");
      cfg.boost.baseline_batch_size = static_cast<Index>(b);
    } else if (k == "enrich_gradient") {
      cfg.boost.enrich_gradient = as_bool(key, v);
    } else if (k == "momentum_mu") {
      const double mu = as_number(key, v);
      if (mu < 0 || mu >= 1) throw key_error(key, "out of range, need [0, 1)");
      cfg.boost.momentum_mu = mu;
    } else if (k == "anchor_periods") {
      if (!v.is_array()) throw key_error(key, "expected an array of integers");
      cfg.boost.anchor_periods.clear();
      for (const auto& p : v) {
        const auto r = as_int(key, p);
        if (r < 1) throw key_error(key, "periods must be >= 1");
        cfg.boost.anchor_periods.push_back(static_cast<int>(r));
      }
    } else if (k == "enabled") {
      cfg.boost.boosting_enabled = as_bool(key, v);
    } else {
      throw ConfigError("unknown config key \"" + key + "\"");
    }
    cfg.explicit_keys.insert(key);
  }
}

}  // namespace

std::string experiment_name(ExperimentKind kind) {
  switch (kind) {
    case ExperimentKind::kRegression: return "regression";
    case ExperimentKind::kAutoencoder: return "autoencoder";
    case ExperimentKind::kSweepEll: return "sweep_ell";
    case ExperimentKind::kSweepM: return "sweep_M";
    case ExperimentKind::kSweepLr: return "sweep_lr";
    case ExperimentKind::kEnrichmentStudy: return "enrichment_study";
  }
  return "unknown";
}

ExperimentConfig parse_config(const std::string& json_text) {
  json root;
  try {
    root = json::parse(json_text);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("malformed config: ") + e.what());
  }
  if (!root.is_object()) {
    throw ConfigError("config root must be a JSON object");
  }

  ExperimentConfig cfg;
  bool have_experiment = false;
  for (const auto& [key, value] : root.items()) {
    if (key == "experiment") {
      const std::string name = as_string(key, value);
      if (name == "regression") {
        cfg.experiment = ExperimentKind::kRegression;
      } else if (name == "autoencoder") {
        cfg.experiment = ExperimentKind::kAutoencoder;
      } else if (name == "sweep_ell") {
        cfg.experiment = ExperimentKind::kSweepEll;
      } else if (name == "sweep_M") {
        cfg.experiment = ExperimentKind::kSweepM;
      } else if (name == "sweep_lr") {
        cfg.experiment = ExperimentKind::kSweepLr;
      } else if (name == "enrichment_study") {
        cfg.experiment = ExperimentKind::kEnrichmentStudy;
      } else {
        throw key_error(key, "unknown experiment \"" + name + "\"");
      }
      have_experiment = true;
    } else if (key == "epochs") {
      const auto e = as_int(key, value);
      if (e < 1) throw key_error(key, "out of range, need >= 1");
      cfg.epochs = static_cast<int>(e);
    } else if (key == "seeds") {
      if (!value.is_array() || value.empty()) {
        throw key_error(key, "expected a non-empty array of integers");
      }
      cfg.seeds.clear();
      for (const auto& s : value) {
        const auto v = as_int(key, s);
        if (v < 0) throw key_error(key, "seeds must be non-negative");
        cfg.seeds.push_back(static_cast<std::uint64_t>(v));
      }
    } else if (key == "output_dir") {
      cfg.output_dir = as_string(key, value);
    } else if (key == "weight_decay") {
      const double w = as_number(key, value);
      if (w < 0) throw key_error(key, "out of range, need >= 0");
      cfg.weight_decay = w;
    } else if (key == "mnist") {
      cfg.mnist_path = as_string(key, value);
    } else if (key == "ell_values" || key == "m_values") {
      if (!value.is_array() || value.empty()) {
        throw key_error(key, "expected a non-empty array of integers");
      }
      std::vector<Index> out;
      for (const auto& s : value) {
        const auto v = as_int(key, s);
        if (v < 1) throw key_error(key, "values must be >= 1");
        out.push_back(static_cast<Index>(v));
      }
      (key == "ell_values" ? cfg.ell_values : cfg.m_values) = std::move(out);
    } else if (key == "lr_values") {
      if (!value.is_array() || value.empty()) {
        throw key_error(key, "expected a non-empty array of numbers");
      }
      cfg.lr_values.clear();
      for (const auto& s : value) {
        const double v = as_number(key, s);
        if (!(v > 0)) throw key_error(key, "values must be > 0");
        cfg.lr_values.push_back(v);
      }
    } else if (key == "full_autoencoder") {
      cfg.full_autoencoder = as_bool(key, value);
    } else if (key == "baseline") {
      parse_baseline_section(value, cfg);
    } else if (key == "boost") {
      parse_boost_section(value, cfg);
    } else {
      throw ConfigError("unknown config key \"" + key + "\"");
    }
    cfg.explicit_keys.insert(key);
  }
  if (!have_experiment) {
    throw ConfigError("missing required key \"experiment\"");
  }

  try {
    validate(cfg.baseline);
    validate(cfg.boost);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  return cfg;
}

ExperimentConfig resolve_presets(ExperimentConfig cfg) {
  if (cfg.experiment == ExperimentKind::kRegression) {
    if (cfg.epochs == 0) cfg.epochs = 20;
    if (!cfg.has("boost.ell")) cfg.boost.ell = 100;
    if (!cfg.has("boost.M")) cfg.boost.history = 50;
    if (!cfg.has("boost.cg_evals")) cfg.boost.cg.max_evals = 50;
  } else {
    if (cfg.epochs == 0) cfg.epochs = 17;
    if (!cfg.has("boost.ell")) cfg.boost.ell = 200;
    if (!cfg.has("boost.M")) cfg.boost.history = 10;
    if (!cfg.has("boost.cg_evals")) cfg.boost.cg.max_evals = 20;
    if (!cfg.has("baseline.lr")) {
      cfg.baseline.lr =
          cfg.baseline.method == BaselineMethod::kSgdMomentum ? 0.1 : 0.01;
    }
  }
  return cfg;
}

ProblemSetup make_problem(const ExperimentConfig& cfg) {
  ProblemSetup p;
  p.weight_decay = cfg.weight_decay;
  if (cfg.experiment == ExperimentKind::kRegression) {
    // Tanh on every layer, head included: the bounded outputs keep the
    // high-rate momentum baselines stable on this problem.
    p.spec = MlpSpec{{6, 12, 8, 4, 1}, FinalActivation::kTanh};
    const Dataset all = gen_regression(kRegressionRows, kRegressionDataSeed);
    auto parts = split_at(all, kRegressionTrainRows);
    p.train = std::move(parts.first);
    p.test = std::move(parts.second);
  } else {
    if (cfg.full_autoencoder) {
      p.spec = MlpSpec{{784, 200, 100, 64, 100, 200, 784},
                       FinalActivation::kTanh};
    } else {
      p.spec = MlpSpec{{784, 64, 784}, FinalActivation::kTanh};
    }
    Dataset images;
    if (!cfg.mnist_path.empty()) {
      images = load_idx(cfg.mnist_path);
      if (images.inputs.cols() != 784) {
        throw key_error("mnist", "expected 28x28 images");
      }
      if (images.size() < kImageRows) {
        throw key_error("mnist", "file holds fewer than " +
                                      std::to_string(kImageRows) + " images");
      }
      images = subset(images, kImageRows, kImageDataSeed);
    } else {
      images = dataset_from_idx(synthetic_images(kImageRows, kImageDataSeed),
                                "synthetic");
      p.synthetic_fallback = true;
    }
    auto parts = split_at(images, kImageTrainRows);
    p.train = std::move(parts.first);
    p.test = std::move(parts.second);
  }

  if (cfg.boost.baseline_batch_size > p.train.size()) {
    throw key_error("boost.baseline_batch", "exceeds the training set");
  }
  if (cfg.boost.boosting_enabled &&
      cfg.boost.subspace_batch_size > p.train.size()) {
    throw key_error("boost.subspace_batch", "exceeds the training set");
  }
  p.steps_per_epoch = p.train.size() / cfg.boost.baseline_batch_size;
  p.total_steps = static_cast<Index>(cfg.epochs) * p.steps_per_epoch;
  return p;
}

std::vector<Cell> make_cells(const ExperimentConfig& cfg) {
  std::vector<Cell> cells;
  const bool boosting = cfg.boost.boosting_enabled;

  const auto add = [&](const std::string& stem,
                       const BaselineConfig<double>& baseline,
                       BoostConfig<double> boost, std::uint64_t seed) {
    boost.seed = seed;
    cells.push_back(
        {stem + "_seed" + std::to_string(seed), baseline, boost, seed});
  };
  const auto plain_of = [](BoostConfig<double> boost) {
    boost.boosting_enabled = false;
    return boost;
  };

  for (const std::uint64_t seed : cfg.seeds) {
    switch (cfg.experiment) {
      case ExperimentKind::kRegression: {
        const struct {
          BaselineMethod method;
          double lr;
        } defs[] = {{BaselineMethod::kSgdMomentum, 0.5},
                    {BaselineMethod::kNag, 0.1},
                    {BaselineMethod::kAdaGrad, 0.05}};
        for (const auto& d : defs) {
          BaselineConfig<double> b = cfg.baseline;
          b.method = d.method;
          if (!cfg.has("baseline.lr")) b.lr = d.lr;
          add(method_tag(d.method) + "_plain", b, plain_of(cfg.boost), seed);
          if (boosting) {
            add(method_tag(d.method) + "_boosted", b, cfg.boost, seed);
          }
        }
        break;
      }
      case ExperimentKind::kAutoencoder: {
        const std::string tag = method_tag(cfg.baseline.method);
        add(tag + "_plain", cfg.baseline, plain_of(cfg.boost), seed);
        if (boosting) add(tag + "_boosted", cfg.baseline, cfg.boost, seed);
        break;
      }
      case ExperimentKind::kSweepEll: {
        const std::string tag = method_tag(cfg.baseline.method);
        add(tag + "_plain", cfg.baseline, plain_of(cfg.boost), seed);
        if (boosting) {
          for (const Index ell : cfg.ell_values) {
            BoostConfig<double> bo = cfg.boost;
            bo.ell = ell;
            add(tag + "_ell" + std::to_string(ell), cfg.baseline, bo, seed);
          }
        }
        break;
      }
      case ExperimentKind::kSweepM: {
        const std::string tag = method_tag(cfg.baseline.method);
        add(tag + "_plain", cfg.baseline, plain_of(cfg.boost), seed);
        if (boosting) {
          for (const Index m : cfg.m_values) {
            BoostConfig<double> bo = cfg.boost;
            bo.history = m;
            add(tag + "_M" + std::to_string(m), cfg.baseline, bo, seed);
          }
        }
        break;
      }
      case ExperimentKind::kSweepLr: {
        const std::string tag = method_tag(cfg.baseline.method);
        for (const double lr : cfg.lr_values) {
          BaselineConfig<double> b = cfg.baseline;
          b.lr = lr;
          const std::string stem = tag + "_lr" + short_num(lr);
          add(stem + "_plain", b, plain_of(cfg.boost), seed);
          if (boosting) add(stem + "_boosted", b, cfg.boost, seed);
        }
        break;
      }
      case ExperimentKind::kEnrichmentStudy: {
        const std::string tag = method_tag(cfg.baseline.method);
        BoostConfig<double> bare = cfg.boost;
        bare.anchor_periods.clear();
        bare.momentum_mu.reset();
        bare.enrich_gradient = false;

        add(tag + "_plain", cfg.baseline, plain_of(bare), seed);
        if (boosting) {
          add(tag + "_boosted", cfg.baseline, bare, seed);
          BoostConfig<double> anchors = bare;
          anchors.anchor_periods = {500, 250, 100, 50, 20};
          add(tag + "_anchors", cfg.baseline, anchors, seed);
          BoostConfig<double> momentum = bare;
          momentum.momentum_mu = 0.9;
          add(tag + "_momentum", cfg.baseline, momentum, seed);
          BoostConfig<double> gradient = bare;
          gradient.enrich_gradient = true;
          add(tag + "_gradient", cfg.baseline, gradient, seed);
        }
        break;
      }
    }
  }
  return cells;
}

int worker_count() {
  if (const char* env = std::getenv("SEBOOST_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end == env || *end != '\0' || v < 1) {
      throw ConfigError("SEBOOST_THREADS must be a positive integer");
    }
    return static_cast<int>(std::min<long>(v, 256));
  }
  const unsigned hc = std::thread::hardware_concurrency();
  return hc == 0 ? 1 : static_cast<int>(hc);
}

int run_experiment(const ExperimentConfig& raw) {
  const ExperimentConfig cfg = resolve_presets(raw);
  if (cfg.seeds.empty()) {
    throw ConfigError("config key \"seeds\": need at least one seed");
  }
  if (cfg.epochs < 1) {
    throw ConfigError("config key \"epochs\": out of range, need >= 1");
  }

  const ProblemSetup problem = make_problem(cfg);
  const std::vector<Cell> cells = make_cells(cfg);

  std::error_code ec;
  std::filesystem::create_directories(cfg.output_dir, ec);
  if (ec) {
    throw IoError("cannot create output directory " + cfg.output_dir + ": " +
                  ec.message());
  }

  if (!cfg.quiet) {
    std::cout << experiment_name(cfg.experiment) << ": " << cells.size()
              << " runs of " << problem.total_steps << " baseline steps ("
              << cfg.epochs << " epochs of " << problem.steps_per_epoch
              << " steps)\n";
    if (problem.synthetic_fallback) {
      std::cout << "no image file configured; using the deterministic "
                   "synthetic image generator\n";
    }
  }

  const MlpObjective<double> objective(problem.spec, problem.weight_decay);
  std::vector<std::vector<TraceRecord<double>>> traces(cells.size());

  std::atomic<std::size_t> next{0};
  std::mutex io_mu;
  std::mutex failure_mu;
  std::exception_ptr failure;
  const auto work = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= cells.size()) return;
      {
        const std::lock_guard<std::mutex> lock(failure_mu);
        if (failure) return;
      }
      try {
        const Cell& cell = cells[i];
        auto result = seboost_run(
            objective, mlp_init<double>(problem.spec, cell.seed),
            cell.baseline, cell.boost, problem.train, problem.test,
            problem.total_steps);
        const std::string path = cfg.output_dir + "/" + cell.name + ".csv";
        write_trace_csv(result.trace, path);
        if (!cfg.quiet) {
          const std::lock_guard<std::mutex> lock(io_mu);
          std::cout << "wrote " << path << " (final train loss "
                    << result.trace.back().train_loss << ")\n";
        }
        traces[i] = std::move(result.trace);
      } catch (...) {
        const std::lock_guard<std::mutex> lock(failure_mu);
        if (!failure) failure = std::current_exception();
        return;
      }
    }
  };

  const int workers =
      std::min(worker_count(), static_cast<int>(cells.size()));
  if (workers <= 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(workers));
    for (int t = 0; t < workers; ++t) pool.emplace_back(work);
    for (auto& th : pool) th.join();
  }
  if (failure) std::rethrow_exception(failure);

  std::vector<Curve> by_epochs, by_wall;
  for (std::size_t i = 0; i < cells.size(); ++i) {
    Curve epochs{cells[i].name, {}, {}};
    Curve wall{cells[i].name, {}, {}};
    for (const auto& r : traces[i]) {
      epochs.x.push_back(static_cast<double>(r.baseline_steps_done) /
                         static_cast<double>(problem.steps_per_epoch));
      epochs.y.push_back(r.train_loss);
      wall.x.push_back(r.wall_clock_ms / 1000.0);
      wall.y.push_back(r.train_loss);
    }
    by_epochs.push_back(std::move(epochs));
    by_wall.push_back(std::move(wall));
  }
  const std::string title =
      experiment_name(cfg.experiment) + " train loss (" + problem.train.name +
      ")";
  write_svg(render_loss_svg(title, "epochs", by_epochs),
            cfg.output_dir + "/curves_epochs.svg");
  write_svg(render_loss_svg(title, "wall time (s)", by_wall),
            cfg.output_dir + "/curves_walltime.svg");
  if (!cfg.quiet) {
    std::cout << "wrote " << cfg.output_dir << "/curves_epochs.svg and "
              << cfg.output_dir << "/curves_walltime.svg\n";
  }
  return 0;
}

}  // namespace seboost
