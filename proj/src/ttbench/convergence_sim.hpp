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

// Synthetic convergence runs, the batch-size/epochs scaling model, and the
// two momentum-SGD update rules on a diagonal quadratic.

#ifndef TTBENCH_CONVERGENCE_SIM_HPP_
#define TTBENCH_CONVERGENCE_SIM_HPP_

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ttbench/compliance.hpp"
#include "ttbench/config.hpp"
#include "ttbench/event_log.hpp"
#include "ttbench/registry.hpp"

namespace ttbench {

// Counter-based generator: the n-th draw is a pure function of (key, n),
// so streams are reproducible across platforms and standard libraries.
class CounterRng {
 public:
  explicit CounterRng(std::uint64_t key) : key_(key) {}

  std::uint64_t next_u64();
  // Uniform in (0, 1).
  double next_uniform();
  // Standard normal via Box-Muller; consumes two draws per call.
  double next_normal();

  std::uint64_t counter() const noexcept { return counter_; }

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

std::uint64_t mix64(std::uint64_t x);

// Quality curve: value(e) = a_max * (1 - exp(-e / tau)) + noise, with the
// noise standard deviation noise_sd * (1 + 1/e) so early epochs are noisier.
struct QualityCurve {
  double a_max = 0.0;
  double tau = 0.0;
  double noise_sd = 0.0;
};

struct SimConfig {
  std::string benchmark;
  Round round = kRoundV05;
  std::int64_t batch_size = 0;
  std::uint64_t seed = 0;
  std::int64_t epoch_time_ms = 0;
  // Each run stretches tau by E_r / epochs_to_target_mean, where
  // E_r ~ Normal(mean, spread) clipped to mean +- 3 spread. The ratio
  // spread / mean therefore sets the relative run-to-run variation.
  double epochs_to_target_mean = 1.0;
  double epochs_to_target_spread = 0.0;
  QualityCurve curve;

  std::int64_t start_ms = 0;       // wall-clock of run_start
  std::int64_t model_init_ms = 0;  // model-init interval right after data_touch
  std::int64_t max_epochs = 0;     // 0: derived from the curve
  int runs = 1;                    // logs per simulate() call
  std::optional<SubmissionMeta> meta;
};

// Empty when valid, otherwise the problem. Needs the spec to check that the
// curve can exceed the threshold.
std::string validate_sim_config(const SimConfig& cfg, const BenchmarkSpec& spec);

// [sim] section plus optional [submission]/[system] sections (a submission
// meta descriptor). Throws Error(kInvalidConfig).
SimConfig parse_sim_config(const ConfigFile& file);
SimConfig load_sim_config(const std::string& path);

// Run `run_index` of a configuration. Deterministic in (cfg, run_index).
// Throws Error(kInvalidConfig).
RunLog simulate_run(const SimConfig& cfg, const BenchmarkSpec& spec, int run_index = 0);

// Time constant the curve needs to first reach `threshold` at `epoch`.
double tau_for_crossing(double a_max, double threshold, double epoch);

// Epochs to target as a function of batch size: 64 epochs at 4096, 83.2 at
// 16384, log-linear in between, clamped outside.
double epochs_to_target(std::int64_t batch_size);

inline constexpr std::int64_t kBaseBatch = 4096;
inline constexpr std::int64_t kLargeBatch = 16384;
inline constexpr double kBaseEpochs = 64.0;
inline constexpr double kLargeEpochs = 83.2;

enum class MomentumVariant {
  kScaledGradient,  // m = a*m + lr*g;  w -= m
  kScaledUpdate,    // m = a*m + g;     w -= lr*m
};

struct OptimizerState {
  std::vector<double> weights;
  std::vector<double> momentum;  // zero-initialized
  double alpha = 0.0;            // in [0, 1)
  double eta = 0.0;              // learning rate of the last step

  static OptimizerState zero_momentum(std::vector<double> weights, double alpha, double eta);
};

// Throws Error(kShapeMismatch) or Error(kInvalidArgument).
OptimizerState momentum_step_v1(const OptimizerState& state, std::span<const double> grad,
                                 double eta);
OptimizerState momentum_step_v2(const OptimizerState& state, std::span<const double> grad,
                                double eta);

// Piecewise-constant learning rate: the rate at step s is the value of the
// greatest key <= s. Must contain step 0.
class LrSchedule {
 public:
  static LrSchedule constant(double eta);
  // Throws Error(kInvalidConfig) for a missing step 0 or non-positive rates.
  static LrSchedule from_points(std::map<std::int64_t, double> points);

  double at(std::int64_t step) const;
  const std::map<std::int64_t, double>& points() const noexcept { return points_; }

 private:
  std::map<std::int64_t, double> points_;
};

struct QuadraticObjective {
  std::vector<double> diag;  // L(w) = 0.5 * sum d_i w_i^2, d_i > 0
  std::vector<double> w0;
};

// Weights after each step (steps entries). Throws Error(kInvalidObjective).
std::vector<std::vector<double>> run_toy_training(MomentumVariant variant,
                                                  const LrSchedule& schedule, std::int64_t steps,
                                                  const QuadraticObjective& objective,
                                                  double alpha);

}  // namespace ttbench

#endif  // TTBENCH_CONVERGENCE_SIM_HPP_
