// Copyright 2026 The ttbench Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "ttbench/convergence_sim.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>

#include "ttbench/error.hpp"

namespace ttbench {
namespace {

constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;
constexpr double kSpreadClip = 3.0;

double crossing_log(double a_max, double threshold) {
  return std::log(a_max / (a_max - threshold));
}

LogEvent event(std::int64_t ts, EventKey key, Payload payload = {}) {
  return LogEvent{Timestamp{ts}, key, std::move(payload)};
}

void check_step_inputs(const OptimizerState& state, std::span<const double> grad, double eta) {
  if (state.weights.size() != state.momentum.size() || grad.size() != state.weights.size()) {
    fail(ErrorCode::kShapeMismatch,
         "shape mismatch: weights " + std::to_string(state.weights.size()) + ", momentum " +
             std::to_string(state.momentum.size()) + ", grad " + std::to_string(grad.size()));
  }
  if (!(state.alpha >= 0.0 && state.alpha < 1.0)) {
    fail(ErrorCode::kInvalidArgument, "momentum coefficient must lie in [0, 1)");
  }
  if (!(eta > 0.0)) fail(ErrorCode::kInvalidArgument, "learning rate must be positive");
}

}  // namespace

std::uint64_t mix64(std::uint64_t x) {
  x ^= x >> 30;
  x *= 0xBF58476D1CE4E5B9ULL;
  x ^= x >> 27;
  x *= 0x94D049BB133111EBULL;
  x ^= x >> 31;
  return x;
}

std::uint64_t CounterRng::next_u64() {
  ++counter_;
  return mix64(key_ + counter_ * kGolden);
}

double CounterRng::next_uniform() {
  return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
}

double CounterRng::next_normal() {
  double u1 = next_uniform();
  double u2 = next_uniform();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

std::string validate_sim_config(const SimConfig& cfg, const BenchmarkSpec& spec) {
  if (cfg.benchmark != spec.name) return "config benchmark does not match the spec";
  if (cfg.batch_size <= 0) return "batch_size must be > 0";
  if (cfg.epoch_time_ms <= 0) return "epoch_time_ms must be > 0";
  if (!(cfg.epochs_to_target_mean > 0.0)) return "epochs_to_target_mean must be > 0";
  if (!(cfg.epochs_to_target_spread >= 0.0)) return "epochs_to_target_spread must be >= 0";
  if (!(kSpreadClip * cfg.epochs_to_target_spread < cfg.epochs_to_target_mean)) {
    return "epochs_to_target_spread must be below a third of the mean";
  }
  if (!std::isfinite(cfg.curve.a_max) || !(cfg.curve.tau >= 0.0) || !std::isfinite(cfg.curve.tau)) {
    return "quality curve needs finite a_max and tau >= 0";
  }
  if (!(cfg.curve.noise_sd >= 0.0) || !std::isfinite(cfg.curve.noise_sd)) {
    return "noise_sd must be >= 0";
  }
  if (!(cfg.curve.a_max > spec.threshold)) return "a_max must exceed the benchmark threshold";
  if (cfg.start_ms < 0) return "start_ms must be >= 0";
  if (cfg.model_init_ms < 0) return "model_init_ms must be >= 0";
  if (cfg.max_epochs < 0) return "max_epochs must be >= 0";
  if (cfg.runs < 1) return "runs must be >= 1";
  if (cfg.meta) {
    if (cfg.meta->benchmark != cfg.benchmark || cfg.meta->round != cfg.round) {
      return "submission meta must name the simulated benchmark and round";
    }
    if (std::string why = validate_system(cfg.meta->system); !why.empty()) return why;
  }
  return {};
}

SimConfig parse_sim_config(const ConfigFile& file) {
  const ConfigSection* sim = file.find("sim");
  if (sim == nullptr) fail(ErrorCode::kInvalidConfig, "sim config: missing [sim] section");

  SimConfig cfg;
  cfg.benchmark = sim->require_string("benchmark");
  cfg.round = Round{sim->get_string("round").value_or(kRoundV05.id)};
  cfg.batch_size = sim->require_int("batch_size");
  std::int64_t seed = sim->get_int("seed").value_or(0);
  cfg.seed = static_cast<std::uint64_t>(seed);
  cfg.epoch_time_ms = sim->require_int("epoch_time_ms");
  cfg.epochs_to_target_mean = sim->require_double("epochs_to_target_mean");
  cfg.epochs_to_target_spread = sim->get_double("epochs_to_target_spread").value_or(0.0);
  cfg.curve.a_max = sim->require_double("a_max");
  cfg.curve.tau = sim->get_double("tau").value_or(0.0);
  cfg.curve.noise_sd = sim->get_double("noise_sd").value_or(0.0);
  cfg.start_ms = sim->get_int("start_ms").value_or(0);
  cfg.model_init_ms = sim->get_int("model_init_ms").value_or(0);
  cfg.max_epochs = sim->get_int("max_epochs").value_or(0);
  std::int64_t runs = sim->get_int("runs").value_or(1);
  if (runs < 1 || runs > 1000) fail(ErrorCode::kInvalidConfig, "sim config: runs must be in [1, 1000]");
  cfg.runs = static_cast<int>(runs);

  for (const auto& [key, value] : sim->entries) {
    static const std::set<std::string> known = {
        "benchmark", "round", "batch_size", "seed", "epoch_time_ms", "epochs_to_target_mean",
        "epochs_to_target_spread", "a_max", "tau", "noise_sd", "start_ms", "model_init_ms",
        "max_epochs", "runs"};
    if (!known.contains(key)) fail(ErrorCode::kInvalidConfig, "sim config: unknown key '" + key + "'");
  }
  if (file.find("submission") != nullptr) cfg.meta = parse_submission_meta(file);
  return cfg;
}

SimConfig load_sim_config(const std::string& path) {
  ConfigFile file = load_config(path);
  try {
    return parse_sim_config(file);
  } catch (const Error& ex) {
    fail(ex.code(), path + ": " + ex.what());
  }
}

double tau_for_crossing(double a_max, double threshold, double epoch) {
  return epoch / crossing_log(a_max, threshold);
}

RunLog simulate_run(const SimConfig& cfg, const BenchmarkSpec& spec, int run_index) {
  if (std::string why = validate_sim_config(cfg, spec); !why.empty()) {
    fail(ErrorCode::kInvalidConfig, "invalid sim config: " + why);
  }
  const double lg = crossing_log(cfg.curve.a_max, spec.threshold);

  // tau = 0 asks for the curve whose noise-free crossing sits half an epoch
  // before the rounded mean, so that epoch is the first to qualify.
  double tau = cfg.curve.tau;
  if (tau == 0.0) tau = (std::round(cfg.epochs_to_target_mean) - 0.5) / lg;
  if (!(tau > 0.0)) fail(ErrorCode::kInvalidConfig, "invalid sim config: tau must be positive");

  CounterRng rng(mix64(cfg.seed ^ mix64(static_cast<std::uint64_t>(run_index) + kGolden)));
  double z = std::clamp(rng.next_normal(), -kSpreadClip, kSpreadClip);
  double stretch = (cfg.epochs_to_target_mean + cfg.epochs_to_target_spread * z) /
                   cfg.epochs_to_target_mean;
  double run_tau = tau * stretch;

  std::int64_t max_epochs = cfg.max_epochs;
  if (max_epochs == 0) {
    double widest = tau * (1.0 + kSpreadClip * cfg.epochs_to_target_spread / cfg.epochs_to_target_mean);
    max_epochs = std::max<std::int64_t>(10, static_cast<std::int64_t>(std::ceil(4.0 * widest * lg)));
  }

  const bool two_metric = spec.secondary_threshold.has_value();
  const double secondary_scale = two_metric ? *spec.secondary_threshold / spec.threshold : 1.0;

  std::vector<LogEvent> events;
  std::int64_t t = cfg.start_ms;
  events.push_back(event(t, EventKey::kBenchmarkDecl,
                         {{"name", spec.name}, {"round", spec.round.id}}));
  if (cfg.meta) {
    events.push_back(event(t, EventKey::kDivisionDecl,
                           {{"division", std::string(to_string(cfg.meta->division))}}));
    events.push_back(event(t, EventKey::kCategoryDecl,
                           {{"category", std::string(to_string(cfg.meta->category))}}));
    events.push_back(event(t, EventKey::kSystemDecl, system_payload(cfg.meta->system)));
  }
  events.push_back(event(t, EventKey::kRunStart));
  events.push_back(event(t, EventKey::kHyperparameter,
                         {{"name", std::string("batch_size")}, {"value", cfg.batch_size}}));
  events.push_back(event(t, EventKey::kDataTouch));
  if (cfg.model_init_ms > 0) {
    events.push_back(event(t, EventKey::kModelInitStart));
    t += cfg.model_init_ms;
    events.push_back(event(t, EventKey::kModelInitStop));
  }

  bool reached = false;
  for (std::int64_t e = 1; e <= max_epochs && !reached; ++e) {
    events.push_back(event(t, EventKey::kEpochStart, {{"epoch", e}}));
    t += cfg.epoch_time_ms;
    events.push_back(event(t, EventKey::kEpochStop, {{"epoch", e}}));

    double ep = static_cast<double>(e);
    double noise_sd = cfg.curve.noise_sd * (1.0 + 1.0 / ep);
    double value = cfg.curve.a_max * (1.0 - std::exp(-ep / run_tau)) + noise_sd * rng.next_normal();

    Payload result{{"epoch", e}};
    QualityValue quality{value, std::nullopt};
    if (two_metric) {
      quality.secondary = value * secondary_scale;
      result.emplace("box_value", value);
      result.emplace("mask_value", *quality.secondary);
    } else {
      result.emplace("value", value);
    }
    events.push_back(event(t, EventKey::kEvalStart));
    events.push_back(event(t, EventKey::kEvalResult, std::move(result)));
    events.push_back(event(t, EventKey::kEvalStop));
    reached = target_reached(spec, quality);
  }
  events.push_back(event(t, EventKey::kRunStop,
                         {{"status", std::string(reached ? "success" : "aborted")}}));
  return RunLog::from_events(std::move(events));
}

double epochs_to_target(std::int64_t batch_size) {
  if (batch_size <= kBaseBatch) return kBaseEpochs;
  if (batch_size >= kLargeBatch) return kLargeEpochs;
  double frac = std::log(static_cast<double>(batch_size) / kBaseBatch) /
                std::log(static_cast<double>(kLargeBatch) / kBaseBatch);
  return kBaseEpochs + (kLargeEpochs - kBaseEpochs) * frac;
}

OptimizerState OptimizerState::zero_momentum(std::vector<double> weights, double alpha, double eta) {
  OptimizerState s;
  s.momentum.assign(weights.size(), 0.0);
  s.weights = std::move(weights);
  s.alpha = alpha;
  s.eta = eta;
  return s;
}

OptimizerState momentum_step_v1(const OptimizerState& state, std::span<const double> grad,
                                 double eta) {
  check_step_inputs(state, grad, eta);
  OptimizerState next = state;
  next.eta = eta;
  for (std::size_t i = 0; i < grad.size(); ++i) {
    next.momentum[i] = state.alpha * state.momentum[i] + eta * grad[i];
    next.weights[i] = state.weights[i] - next.momentum[i];
  }
  return next;
}

OptimizerState momentum_step_v2(const OptimizerState& state, std::span<const double> grad,
                                 double eta) {
  check_step_inputs(state, grad, eta);
  OptimizerState next = state;
  next.eta = eta;
  for (std::size_t i = 0; i < grad.size(); ++i) {
    next.momentum[i] = state.alpha * state.momentum[i] + grad[i];
    next.weights[i] = state.weights[i] - eta * next.momentum[i];
  }
  return next;
}

LrSchedule LrSchedule::constant(double eta) { return from_points({{0, eta}}); }

LrSchedule LrSchedule::from_points(std::map<std::int64_t, double> points) {
  if (!points.contains(0)) fail(ErrorCode::kInvalidConfig, "learning-rate schedule needs step 0");
  for (const auto& [step, eta] : points) {
    if (step < 0) fail(ErrorCode::kInvalidConfig, "schedule steps must be >= 0");
    if (!(eta > 0.0) || !std::isfinite(eta)) {
      fail(ErrorCode::kInvalidConfig, "schedule learning rates must be positive");
    }
  }
  LrSchedule s;
  s.points_ = std::move(points);
  return s;
}

double LrSchedule::at(std::int64_t step) const {
  auto it = points_.upper_bound(step);
  return std::prev(it)->second;
}

std::vector<std::vector<double>> run_toy_training(MomentumVariant variant,
                                                  const LrSchedule& schedule, std::int64_t steps,
                                                  const QuadraticObjective& objective,
                                                  double alpha) {
  if (objective.diag.empty() || objective.diag.size() != objective.w0.size()) {
    fail(ErrorCode::kInvalidObjective, "objective needs matching non-empty diag and w0");
  }
  for (double d : objective.diag) {
    if (!(d > 0.0) || !std::isfinite(d)) {
      fail(ErrorCode::kInvalidObjective, "objective diagonal entries must be positive");
    }
  }
  if (steps < 1) fail(ErrorCode::kInvalidObjective, "steps must be >= 1");

  OptimizerState state = OptimizerState::zero_momentum(objective.w0, alpha, schedule.at(0));
  std::vector<double> grad(objective.diag.size());
  std::vector<std::vector<double>> trajectory;
  trajectory.reserve(static_cast<std::size_t>(steps));
  for (std::int64_t s = 0; s < steps; ++s) {
    for (std::size_t i = 0; i < grad.size(); ++i) grad[i] = objective.diag[i] * state.weights[i];
    double eta = schedule.at(s);
    state = variant == MomentumVariant::kScaledGradient ? momentum_step_v1(state, grad, eta)
                                                        : momentum_step_v2(state, grad, eta);
    trajectory.push_back(state.weights);
  }
  return trajectory;
}

}  // namespace ttbench
