#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "seboost/experiment.hpp"

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw seboost::IoError("cannot open config file " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) throw seboost::IoError("cannot read config file " + path);
  return buf.str();
}

std::vector<std::uint64_t> parse_seed_list(const std::string& text) {
  std::vector<std::uint64_t> seeds;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty() || item[0] == '-') {
      throw seboost::ConfigError(
          "--seeds: expected a comma separated list of non-negative integers");
    }
    char* end = nullptr;
    const unsigned long long v = std::strtoull(item.c_str(), &end, 10);
    if (end == item.c_str() || *end != '\0') {
      throw seboost::ConfigError(
          "--seeds: expected a comma separated list of non-negative integers");
    }
    seeds.push_back(static_cast<std::uint64_t>(v));
  }
  if (seeds.empty()) {
    throw seboost::ConfigError("--seeds: need at least one seed");
  }
  return seeds;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"subspace-boosted stochastic training benchmarks"};
  app.require_subcommand(1);

  auto* run = app.add_subcommand("run", "run one experiment from a JSON config");
  std::string config_path;
  std::string output_dir;
  std::string seeds_text;
  bool no_boost = false;
  bool quiet = false;
  run->add_option("--config", config_path, "JSON config file")->required();
  run->add_option("--output", output_dir, "override the output directory");
  run->add_option("--seeds", seeds_text, "override seeds, e.g. 1,2,3");
  run->add_flag("--no-boost", no_boost, "disable boosting in every run");
  run->add_flag("--quiet", quiet, "suppress progress output");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    seboost::ExperimentConfig cfg =
        seboost::parse_config(read_file(config_path));
    if (!output_dir.empty()) cfg.output_dir = output_dir;
    if (!seeds_text.empty()) cfg.seeds = parse_seed_list(seeds_text);
    if (no_boost) cfg.boost.boosting_enabled = false;
    if (quiet) cfg.quiet = true;
    return seboost::run_experiment(cfg);
  } catch (const seboost::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 1;
  } catch (const seboost::IoError& e) {
    std::cerr << "io error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
