// Acceptance gate: twelve numbered checks, one [PASS]/[FAIL] line each.
// The exit status is the number of failed checks.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <random>
#include <string>
#include <vector>

#include "seboost/boosting.hpp"
#include "support/linear_cg.hpp"
#include "support/quadratic.hpp"
#include "support/random_cases.hpp"

using namespace seboost;

namespace {

int g_failures = 0;

void report(int index, bool ok, const std::string& text) {
  std::printf("[%s] criterion %d: %s\n", ok ? "PASS" : "FAIL", index,
              text.c_str());
  std::fflush(stdout);
  if (!ok) ++g_failures;
}

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

bool bitwise_equal(const Vec<double>& a, const Vec<double>& b) {
  return a.size() == b.size() &&
         std::memcmp(a.data(), b.data(),
                     sizeof(double) * static_cast<std::size_t>(a.size())) == 0;
}

SubspaceProblem<double> subspace_problem(const Vec<double>& base,
                                         const Mat<double>& cols,
                                         const Objective<double>* obj,
                                         const Batch<double>& batch) {
  SubspaceProblem<double> prob;
  prob.base = base;
  prob.directions = subspace_from_columns(cols);
  prob.objective = obj;
  prob.batch = batch;
  return prob;
}

CgConfig<double> exact_search_config(int evals, double grad_tol) {
  CgConfig<double> cfg;
  cfg.max_evals = evals;
  cfg.grad_tol = grad_tol;
  cfg.wolfe_c1 = 1e-12;
  cfg.wolfe_c2 = 1e-10;
  return cfg;
}

struct SplitData {
  Dataset train;
  Dataset test;
};

const SplitData& regression_data() {
  static const SplitData data = [] {
    auto parts = split_at(gen_regression(20000, 1), 18000);
    return SplitData{std::move(parts.first), std::move(parts.second)};
  }();
  return data;
}

const SplitData& image_data() {
  static const SplitData data = [] {
    const Dataset ds = dataset_from_idx(synthetic_images(7000, 7), "synthetic");
    auto parts = split_at(ds, 6000);
    return SplitData{std::move(parts.first), std::move(parts.second)};
  }();
  return data;
}

double final_train_loss(const MlpObjective<double>& obj, const MlpSpec& spec,
                        const SplitData& data,
                        const BaselineConfig<double>& base,
                        BoostConfig<double> boost, std::uint64_t seed,
                        Index total_steps) {
  boost.seed = seed;
  const auto result = seboost_run(obj, mlp_init<double>(spec, seed), base,
                                  boost, data.train, data.test, total_steps);
  return result.trace.back().train_loss;
}

const MlpSpec kRegressionSpec{{6, 12, 8, 4, 1}, FinalActivation::kTanh};
const MlpSpec kAutoencoderSpec{{784, 64, 784}, FinalActivation::kTanh};
constexpr Index kRegressionSteps = 20 * (18000 / 100);  // 20 epochs
constexpr Index kAutoencoderSteps = 1020;  // 17 epochs; ell=1000 fires once

BoostConfig<double> regression_boost() {
  BoostConfig<double> cfg;
  cfg.ell = 100;
  cfg.history = 50;
  cfg.cg.max_evals = 50;
  cfg.subspace_batch_size = 1000;
  cfg.baseline_batch_size = 100;
  return cfg;
}

BoostConfig<double> autoencoder_boost() {
  BoostConfig<double> cfg;
  cfg.ell = 200;
  cfg.history = 10;
  cfg.cg.max_evals = 20;
  cfg.subspace_batch_size = 1000;
  cfg.baseline_batch_size = 100;
  return cfg;
}

// Final train losses of the boosted autoencoder variants, per seed 1..5,
// filled by check 9 and reused by check 10.
struct AutoencoderResults {
  std::vector<double> plain_l50;
};
AutoencoderResults g_autoencoder;

void criterion_1() {
  const auto t0 = Clock::now();
  std::mt19937_64 gen(101);
  double worst = 0.0;
  for (int rep = 0; rep < 50; ++rep) {
    const MlpSpec spec = testgen::random_spec(gen, 300);
    const MlpObjective<double> obj(spec, 1e-4);
    const Vec<double> params =
        testgen::random_vector(param_count(spec), gen, 0.5);
    const auto batch = testgen::random_batch(spec, 5, gen);
    const Vec<double> analytic = obj.grad(params, batch);
    const Vec<double> numeric = finite_diff_grad(obj, params, batch, 1e-5);
    const double scale = std::max(1.0, analytic.cwiseAbs().maxCoeff());
    worst =
        std::max(worst, (analytic - numeric).cwiseAbs().maxCoeff() / scale);
  }
  const double secs = seconds_since(t0);
  char buf[200];
  std::snprintf(buf, sizeof(buf),
                "analytic vs central-difference gradients on 50 random "
                "networks, worst relative error %.2e in %.1fs (need <= 1e-6, "
                "< 10s)",
                worst, secs);
  report(1, worst <= 1e-6 && secs < 10.0, buf);
}

void criterion_2() {
  std::mt19937_64 gen(202);
  double worst = 0.0;
  for (int rep = 0; rep < 20; ++rep) {
    const MlpSpec spec = testgen::random_spec(gen, 200);
    const MlpObjective<double> obj(spec, 1e-4);
    const Index n = param_count(spec);
    const Vec<double> x = testgen::random_vector(n, gen, 0.5);
    const Index d = 1 + static_cast<Index>(gen() % 8);
    const Mat<double> p = testgen::random_matrix(n, d, gen);
    const auto batch = testgen::random_batch(spec, 8, gen);
    const auto prob = subspace_problem(x, p, &obj, batch);
    const Vec<double> zero = Vec<double>::Zero(d);
    const auto at0 = phi_eval(prob, zero);
    const Vec<double> expected = p.transpose() * obj.grad(x, batch);
    const double scale = std::max(1.0, expected.cwiseAbs().maxCoeff());
    worst = std::max(worst,
                     (at0.grad - expected).cwiseAbs().maxCoeff() / scale);
    worst = std::max(worst, std::abs(at0.value - obj.loss(x, batch)) /
                                std::max(1.0, std::abs(at0.value)));
  }
  char buf[200];
  std::snprintf(buf, sizeof(buf),
                "restricted gradient at zero equals P^T g(x) on 20 instances, "
                "worst relative error %.2e (need <= 1e-12)",
                worst);
  report(2, worst <= 1e-12, buf);
}

void criterion_3() {
  std::mt19937_64 gen(303);
  int bad = 0;
  double worst_traj = 0.0;
  double worst_grad = 0.0;
  for (int rep = 0; rep < 20; ++rep) {
    const Index d = 2 + static_cast<Index>(gen() % 9);
    const Mat<double> a = testgen::random_spd(d, gen, 0.5, 6.0);
    const Vec<double> xstar = testgen::random_vector(d, gen, 2.0);
    const Vec<double> x0 = testgen::random_vector(d, gen);
    // Factored form puts the minimum value at exactly zero, so phi keeps
    // full relative precision near the solution; with a large constant term
    // the value ulp alone floors the reachable gradient norm above 1e-8.
    const Vec<double> b = a * xstar;
    testsupport::CenteredQuadratic obj(a, xstar);
    const auto prob = subspace_problem(x0, Mat<double>::Identity(d, d), &obj,
                                       testsupport::dummy_batch());

    std::vector<Vec<double>> trajectory;
    const auto result = cg_minimize(
        prob, exact_search_config(400, 1e-9),
        [&](int, const Vec<double>& alpha, double, double) {
          trajectory.push_back(alpha);
        });

    bool ok = result.status == CgStatus::kConverged &&
              result.iterations <= static_cast<int>(d) + 2;
    const double grad_norm = (a * (x0 + result.alpha_star) - b).norm();
    worst_grad = std::max(worst_grad, grad_norm);
    ok = ok && grad_norm < 1e-8;

    const auto oracle_iters = oracle::linear_cg_trajectory(
        a, b - a * x0, static_cast<int>(d) + 2, 1e-12);
    const std::size_t common =
        std::min(trajectory.size(), oracle_iters.size());
    ok = ok && common >= 1;
    for (std::size_t k = 0; k < common; ++k) {
      const double err = (trajectory[k] - oracle_iters[k]).norm() /
                         (1.0 + oracle_iters[k].norm());
      worst_traj = std::max(worst_traj, err);
      if (err > 1e-8) ok = false;
    }
    if (!ok) ++bad;
  }
  char buf[220];
  std::snprintf(buf, sizeof(buf),
                "20 random quadratics (d <= 10): gradient norm < 1e-8 within "
                "d+2 iterations, worst final %.2e; trajectory vs textbook "
                "oracle worst %.2e (need <= 1e-8); %d failures",
                worst_grad, worst_traj, bad);
  report(3, bad == 0, buf);
}

void criterion_4() {
  const auto& data = regression_data();
  const MlpObjective<double> obj(kRegressionSpec, 1e-4);
  BaselineConfig<double> base;
  base.method = BaselineMethod::kSgdMomentum;
  base.lr = 0.5;
  BoostConfig<double> boost = regression_boost();
  boost.enrich_gradient = true;
  boost.momentum_mu = 0.9;
  boost.anchor_periods = {500, 250, 100, 50, 20};
  boost.seed = 1;

  int boosts = 0;
  int violations = 0;
  RunHooks<double> hooks;
  hooks.on_boost = [&](const BoostEvent<double>& e) {
    if (e.skipped_empty) return;
    ++boosts;
    if (!(e.phi_star <= e.phi0)) ++violations;
  };
  seboost_run(obj, mlp_init<double>(kRegressionSpec, 1), base, boost,
              data.train, data.test, kRegressionSteps, hooks);
  char buf[200];
  std::snprintf(buf, sizeof(buf),
                "phi_star <= phi0 at all %d boosting steps of a full "
                "enriched run (%d violations, zero permitted)",
                boosts, violations);
  report(4, boosts == 36 && violations == 0, buf);
}

void criterion_5() {
  const MlpSpec spec{{6, 10, 1}, FinalActivation::kLinear};
  const MlpObjective<double> obj(spec, 1e-4);
  const Dataset train = gen_regression(1200, 21);
  const Dataset test = gen_regression(300, 22);
  BaselineConfig<double> base;
  base.lr = 0.1;
  BoostConfig<double> cfg;
  cfg.ell = 50;
  cfg.history = 8;
  cfg.baseline_batch_size = 40;
  cfg.subspace_batch_size = 200;
  cfg.seed = 9;
  const Index total = 600;
  const Vec<double> x0 = mlp_init<double>(spec, 2);

  // Longhand baseline loop, sharing only the published sampling contract.
  Vec<double> reference = x0;
  {
    std::mt19937_64 gen(cfg.seed);
    EpochSampler sampler(train.size(), cfg.baseline_batch_size);
    BaselineState<double> state = baseline_reset(base, reference.size());
    const auto grad_fn = [&](const Vec<double>& p, const Batch<double>& b) {
      return obj.grad(p, b);
    };
    for (Index s = 0; s < total; ++s) {
      const auto batch = batch_from_rows<double>(train, sampler.next(gen));
      reference = baseline_step(base, state, reference, grad_fn, batch);
    }
  }

  BoostConfig<double> disabled = cfg;
  disabled.boosting_enabled = false;
  const auto off = seboost_run(obj, x0, base, disabled, train, test, total);
  BoostConfig<double> huge_ell = cfg;
  huge_ell.ell = total + 1;
  const auto infrequent =
      seboost_run(obj, x0, base, huge_ell, train, test, total);
  const auto boosted = seboost_run(obj, x0, base, cfg, train, test, total);

  const bool ok = bitwise_equal(off.params, reference) &&
                  bitwise_equal(infrequent.params, reference) &&
                  !bitwise_equal(boosted.params, reference);
  report(5, ok,
         "disabled boosting and ell > total steps are bitwise identical to "
         "the raw baseline loop; enabled boosting departs from it");
}

void criterion_6() {
  std::mt19937_64 gen(606);
  bool buffer_ok = true;
  for (int rep = 0; rep < 50 && buffer_ok; ++rep) {
    const int cap = 1 + static_cast<int>(gen() % 8);
    DirectionBuffer<double> buf(cap);
    std::vector<Vec<double>> ref;
    const Index n = 3 + static_cast<Index>(gen() % 5);
    for (int op = 0; op < 200 && buffer_ok; ++op) {
      const std::uint64_t pick = gen() % 4;
      if (pick == 0 && !ref.empty()) {
        const Vec<double> v = testgen::random_vector(n, gen);
        buf.replace_newest(v);
        ref.back() = v;
      } else {
        Vec<double> v = testgen::random_vector(n, gen);
        if (pick == 3) v.setZero();
        const bool stored = buf.push(v);
        if (stored != (v.norm() != 0.0)) buffer_ok = false;
        if (stored) {
          ref.push_back(v);
          if (static_cast<int>(ref.size()) > cap) ref.erase(ref.begin());
        }
      }
      if (buf.size() > cap || buf.size() != static_cast<Index>(ref.size())) {
        buffer_ok = false;
      }
      for (Index i = 0; buffer_ok && i < buf.size(); ++i) {
        if (!bitwise_equal(buf[i], ref[static_cast<std::size_t>(i)])) {
          buffer_ok = false;
        }
      }
      if (!ref.empty() && !bitwise_equal(buf.newest(), ref.back())) {
        buffer_ok = false;
      }
    }
  }

  int checked = 0;
  int mismatches = 0;
  {
    const MlpSpec spec{{6, 10, 1}, FinalActivation::kLinear};
    const MlpObjective<double> obj(spec, 1e-4);
    const Dataset train = gen_regression(1500, 31);
    const Dataset test = gen_regression(200, 32);
    BaselineConfig<double> base;
    base.lr = 0.2;
    BoostConfig<double> cfg;
    cfg.ell = 25;
    cfg.history = 3;
    cfg.baseline_batch_size = 50;
    cfg.subspace_batch_size = 300;
    cfg.momentum_mu = 0.9;
    cfg.anchor_periods = {5, 3};
    cfg.enrich_gradient = true;
    cfg.seed = 12;
    RunHooks<double> hooks;
    hooks.on_boost = [&](const BoostEvent<double>& e) {
      if (e.skipped_empty) return;
      ++checked;
      const Vec<double> realized = e.after - e.block_start;
      if (!bitwise_equal(e.newest_direction, realized)) ++mismatches;
    };
    seboost_run(obj, mlp_init<double>(spec, 3), base, cfg, train, test, 1000,
                hooks);
  }
  char buf[220];
  std::snprintf(buf, sizeof(buf),
                "randomized buffer workloads stay within capacity; newest "
                "direction equals the recomputed realized step after all %d "
                "boosts (%d mismatches, zero permitted)",
                checked, mismatches);
  report(6, buffer_ok && checked >= 30 && mismatches == 0, buf);
}

void criterion_7() {
  const std::vector<int> periods = {500, 250, 100, 50, 20};
  std::vector<Anchor<double>> anchors;
  const Vec<double> x0 = Vec<double>::Zero(3);
  for (const int r : periods) anchors.push_back({x0, r});
  std::vector<int> resets(periods.size(), 0);
  for (int k = 1; k <= 1000; ++k) {
    std::vector<double> before;
    before.reserve(anchors.size());
    for (const auto& a : anchors) before.push_back(a.point[0]);
    const Vec<double> x = Vec<double>::Constant(3, static_cast<double>(k));
    update_anchors(anchors, k, x);
    for (std::size_t i = 0; i < anchors.size(); ++i) {
      if (anchors[i].point[0] != before[i]) ++resets[i];
    }
  }
  bool ok = true;
  for (std::size_t i = 0; i < periods.size(); ++i) {
    if (resets[i] != 1000 / periods[i]) ok = false;
  }
  char buf[220];
  std::snprintf(buf, sizeof(buf),
                "anchor resets over 1000 boosting steps: "
                "%d/%d/%d/%d/%d for periods 500/250/100/50/20 "
                "(need exactly 2/4/10/20/50)",
                resets[0], resets[1], resets[2], resets[3], resets[4]);
  report(7, ok, buf);
}

void criterion_8() {
  const auto t0 = Clock::now();
  const auto& data = regression_data();
  const MlpObjective<double> obj(kRegressionSpec, 1e-4);
  const BoostConfig<double> boosted = regression_boost();
  BoostConfig<double> plain = boosted;
  plain.boosting_enabled = false;

  const struct {
    BaselineMethod method;
    double lr;
    const char* name;
  } methods[] = {{BaselineMethod::kSgdMomentum, 0.5, "sgd"},
                 {BaselineMethod::kNag, 0.1, "nag"},
                 {BaselineMethod::kAdaGrad, 0.05, "adagrad"}};

  bool ok = true;
  std::string detail;
  for (const auto& m : methods) {
    BaselineConfig<double> base;
    base.method = m.method;
    base.lr = m.lr;
    int wins = 0;
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
      const double lb = final_train_loss(obj, kRegressionSpec, data, base,
                                         boosted, seed, kRegressionSteps);
      const double lp = final_train_loss(obj, kRegressionSpec, data, base,
                                         plain, seed, kRegressionSteps);
      if (lb <= lp) ++wins;
    }
    detail += std::string(m.name) + " " + std::to_string(wins) + "/5, ";
    if (wins < 4) ok = false;
  }
  const double secs = seconds_since(t0);
  ok = ok && secs < 300.0;
  char buf[240];
  std::snprintf(buf, sizeof(buf),
                "boosted final train loss <= plain on the regression "
                "benchmark: %sneed >= 4/5 per method, in %.0fs (< 300s)",
                detail.c_str(), secs);
  report(8, ok, buf);
}

void criterion_9() {
  const auto t0 = Clock::now();
  const auto& data = image_data();
  const MlpObjective<double> obj(kAutoencoderSpec, 1e-4);
  BaselineConfig<double> base;
  base.method = BaselineMethod::kSgdMomentum;
  base.lr = 0.1;

  const auto run_variant = [&](Index ell, Index history, std::uint64_t seed) {
    BoostConfig<double> cfg = autoencoder_boost();
    cfg.ell = ell;
    cfg.history = history;
    return final_train_loss(obj, kAutoencoderSpec, data, base, cfg, seed,
                            kAutoencoderSteps);
  };

  int frequency_wins = 0;
  int memory_wins = 0;
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const double l50 = run_variant(50, 10, seed);
    const double l200 = run_variant(200, 10, seed);
    const double l1000 = run_variant(1000, 10, seed);
    // The memory sweep runs at ell=50: 20 boosting steps, so M=20 keeps
    // every direction while M=2 evicts constantly; at ell=200 there are
    // only 5 pushes and every M >= 5 collapses to the same trajectory.
    const double m2 = run_variant(50, 2, seed);
    const double m20 = run_variant(50, 20, seed);
    g_autoencoder.plain_l50.push_back(l50);
    if (l50 >= l200 && l50 >= l1000) ++frequency_wins;
    if (m20 <= m2) ++memory_wins;
  }
  const double secs = seconds_since(t0);
  const bool ok = frequency_wins >= 3 && memory_wins >= 3 && secs < 900.0;
  char buf[260];
  std::snprintf(buf, sizeof(buf),
                "autoencoder trends on synthetic images: ell=50 worst of "
                "{50,200,1000} in %d/5 seeds, M=20 <= M=2 in %d/5 seeds "
                "(need >= 3/5 each), in %.0fs (< 900s)",
                frequency_wins, memory_wins, secs);
  report(9, ok, buf);
}

void criterion_10() {
  const auto& data = image_data();
  const MlpObjective<double> obj(kAutoencoderSpec, 1e-4);
  BaselineConfig<double> base;
  base.method = BaselineMethod::kSgdMomentum;
  base.lr = 0.1;
  // ell=50 gives 20 boosting steps, enough for the shortest anchor period
  // to fire and for the anchor columns to describe long-range progress; the
  // plain comparator is the identically configured ell=50 run from the
  // frequency sweep.
  BoostConfig<double> anchored = autoencoder_boost();
  anchored.ell = 50;
  anchored.anchor_periods = {500, 250, 100, 50, 20};

  int wins = 0;
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const double with_anchors = final_train_loss(
        obj, kAutoencoderSpec, data, base, anchored, seed, kAutoencoderSteps);
    if (with_anchors <= g_autoencoder.plain_l50[seed - 1]) ++wins;
  }
  char buf[200];
  std::snprintf(buf, sizeof(buf),
                "anchor enrichment final loss <= plain subspace boosting in "
                "%d/5 seeds (need >= 3/5)",
                wins);
  report(10, wins >= 3, buf);
}

void criterion_11() {
  const auto& data = regression_data();
  const MlpObjective<double> obj(kRegressionSpec, 1e-4);
  const BoostConfig<double> boosted = regression_boost();
  BoostConfig<double> plain = boosted;
  plain.boosting_enabled = false;
  const double lrs[] = {0.05, 0.1, 0.5};

  int wins = 0;
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    double bmin = 0, bmax = 0, pmin = 0, pmax = 0;
    bool first = true;
    for (const double lr : lrs) {
      BaselineConfig<double> base;
      base.method = BaselineMethod::kSgdMomentum;
      base.lr = lr;
      const double lb = final_train_loss(obj, kRegressionSpec, data, base,
                                         boosted, seed, kRegressionSteps);
      const double lp = final_train_loss(obj, kRegressionSpec, data, base,
                                         plain, seed, kRegressionSteps);
      if (first) {
        bmin = bmax = lb;
        pmin = pmax = lp;
        first = false;
      } else {
        bmin = std::min(bmin, lb);
        bmax = std::max(bmax, lb);
        pmin = std::min(pmin, lp);
        pmax = std::max(pmax, lp);
      }
    }
    if (bmax - bmin < pmax - pmin) ++wins;
  }
  char buf[220];
  std::snprintf(buf, sizeof(buf),
                "spread of boosted final losses over lr in {0.05,0.1,0.5} "
                "smaller than unboosted spread in %d/5 seeds (need >= 3/5)",
                wins);
  report(11, wins >= 3, buf);
}

void criterion_12() {
  bool ok = true;
  // MNIST-shaped stand-in: no real MNIST file ships in this environment.
  const IdxFile images = synthetic_images(2000, 5);
  const auto bytes = serialize_idx(images);
  const IdxFile reparsed = parse_idx(bytes);
  ok = ok && serialize_idx(reparsed) == bytes && reparsed.dims == images.dims;

  std::mt19937_64 gen(1212);
  for (int rep = 0; rep < 100 && ok; ++rep) {
    IdxFile f;
    const int ndim = 1 + static_cast<int>(gen() % 4);
    std::size_t count = 1;
    for (int d = 0; d < ndim; ++d) {
      const std::uint32_t dim = 1 + static_cast<std::uint32_t>(gen() % 6);
      f.dims.push_back(dim);
      count *= dim;
    }
    f.payload.resize(count);
    for (auto& b : f.payload) b = static_cast<std::uint8_t>(gen());
    const auto serialized = serialize_idx(f);
    ok = ok && serialize_idx(parse_idx(serialized)) == serialized;
  }

  const int trials = 400;
  int structured_errors = 0;
  int escapes = 0;
  for (int rep = 0; rep < trials; ++rep) {
    std::vector<std::uint8_t> blob = serialize_idx(synthetic_images(2, 3));
    const std::uint64_t mode = gen() % 4;
    if (mode == 0 && !blob.empty()) {
      blob.resize(gen() % blob.size());
    } else if (mode == 1 && !blob.empty()) {
      blob[gen() % blob.size()] ^=
          static_cast<std::uint8_t>(1u << (gen() % 8));
    } else if (mode == 2) {
      blob.push_back(static_cast<std::uint8_t>(gen()));
    } else {
      blob.assign(gen() % 24, 0);
      for (auto& b : blob) b = static_cast<std::uint8_t>(gen());
    }
    try {
      (void)parse_idx(blob);
    } catch (const IdxParseError&) {
      ++structured_errors;
    } catch (...) {
      ++escapes;
    }
  }
  ok = ok && escapes == 0 && structured_errors >= trials / 4;
  char buf[260];
  std::snprintf(buf, sizeof(buf),
                "IDX parse/serialize/parse byte-identical on an MNIST-shaped "
                "stand-in and 100 fuzzed files; %d/%d malformed inputs raised "
                "structured errors, %d escaped (zero permitted)",
                structured_errors, trials, escapes);
  report(12, ok, buf);
}

}  // namespace

int main() {
  std::printf("acceptance gate: 12 checks\n");
  std::printf(
      "note: no MNIST file is available in this environment; image "
      "experiments run on a deterministic synthetic 28x28 generator\n");
  std::fflush(stdout);
  criterion_1();
  criterion_2();
  criterion_3();
  criterion_4();
  criterion_5();
  criterion_6();
  criterion_7();
  criterion_8();
  criterion_9();
  criterion_10();
  criterion_11();
  criterion_12();
  std::printf("%d of 12 checks failed\n", g_failures);
  return g_failures;
}
