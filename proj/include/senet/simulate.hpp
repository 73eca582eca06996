#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "senet/adaptive.hpp"
#include "senet/diagnostics.hpp"
#include "senet/graph.hpp"
#include "senet/solver.hpp"

namespace senet {

// Benchmark scenarios: sinusoid-mixture signal regression against a bumpy or
// blocky coefficient function on a chain, surface recovery on a 20x20 grid
// under an identity design, or a user-supplied coefficient vector on a chain.
enum class Scenario { bump, block, surface, custom };

enum class Method { ridge, gridge, lasso, enet, senet, ada_senet };

std::string scenario_name(Scenario s);
Scenario scenario_from_name(const std::string& name);
std::string method_name(Method m);
Method method_from_name(const std::string& name);

struct SimSpec {
  Scenario scenario = Scenario::bump;
  int n_train = 200;
  int n_valid = 100;
  int n_test = 200;
  // unset picks the scenario default: sqrt(5) for signal scenarios
  // (response noise variance 5), 0.25 for the surface
  std::optional<double> noise_sd;
  int replicates = 10;
  std::uint64_t seed = 1;
  std::vector<Method> methods = {Method::ridge, Method::gridge, Method::lasso,
                                 Method::enet,  Method::senet, Method::ada_senet};
  int path_grid_size = 50;
  std::vector<double> lambda2_grid = {0.01, 0.1, 1.0, 10.0, 100.0};
  int signal_length = 100;  // T for signal scenarios; surface is fixed 20x20
  Vector custom_beta;       // truth for Scenario::custom, chain structure
  int threads = 0;          // 0 uses the library default budget
};

struct ReplicateRecord {
  int replicate = 0;
  Method method = Method::ridge;
  bool ok = false;
  std::string error;
  double lambda1 = 0.0;
  double lambda2 = 0.0;
  double l1_error = 0.0;
  double prediction_error = 0.0;
  std::optional<double> sensitivity;
  std::optional<double> specificity;
  Vector beta_raw;  // selected fit, original scale
};

struct MethodSummary {
  Method method = Method::ridge;
  int replicates_ok = 0;
  double l1_mean = 0.0, l1_se = 0.0;
  double pe_mean = 0.0, pe_se = 0.0;
  std::optional<double> sens_mean, sens_se;
  std::optional<double> spec_mean, spec_se;
};

struct BenchmarkReport {
  SimSpec spec;
  std::string header_note;
  std::vector<MethodSummary> summaries;
  std::vector<ReplicateRecord> records;
  std::vector<std::string> warnings;
};

// n signals of length T, each a sum of five random sinusoids plus jitter:
//   x(t) = sum_k b_k sin(t pi (5 - b_k) / 50 - m_k) + tau(t),
// b_k ~ U(0,5), m_k ~ U(0,2 pi), tau(t) ~ N(0, 0.25), t = 1..T
Matrix gen_signals(int n, int T, std::uint64_t seed);

// bumpy chain coefficients, two smooth negative excursions
Vector beta_bump(int T = 100);

// piecewise-constant chain coefficients, length 100
Vector beta_block();

// plateau plus three truncated gaussian mounds on a 20x20 grid
Matrix beta_surface();
// same surface flattened row-major: cell (t,u) at index (t-1)*20 + (u-1)
Vector beta_surface_vector();

// y = X beta + noise_sd * standard normal draws
Vector gen_response(const Matrix& design, const Vector& beta_star,
                    double noise_sd, std::uint64_t seed);

// Full protocol per replicate: simulate, split train/validation/test (signal
// scenarios) or draw a second tuning instance (surface), tune each method on
// the validation data over the lambda grids, score on the test data. Method
// failures are recorded as warnings and excluded from that method's averages.
BenchmarkReport run_benchmark(const SimSpec& spec);

// penalty level as a function of n: value(n) = c * n^exponent
struct RateRule {
  double c = 0.0;
  double exponent = 0.0;
  double value(int n) const;
};

struct ConsistencySpec {
  GlmFamily family = GlmFamily::gaussian();
  Vector beta_star;
  Matrix c_target;  // population cross-product; rows of X drawn N(0, c_target)
  std::vector<int> n_grid;
  int replicates = 100;
  RateRule l1_rate;
  RateRule l2_rate;
  double noise_sd = 1.0;  // gaussian response noise
  bool adaptive = false;
  double gamma = 1.0;
  double init_lambda2 = 1.0;  // ridge initial estimator level when adaptive
  std::uint64_t seed = 1;
  int threads = 0;
};

struct ConsistencyPoint {
  int n = 0;
  double median_l2_error = 0.0;
  double rootn_scaled_error = 0.0;  // sqrt(n) * median_l2_error
  // fraction of replicates whose fit selects any truly zero coordinate
  double false_selection_rate = 0.0;
  // max_j over the true support of |mean(beta_hat_j) - beta*_j|
  double mean_active_bias = 0.0;
};

struct ConsistencyReport {
  std::vector<ConsistencyPoint> points;
  // heuristic flags; the points carry the evidence
  bool rootn_bounded = false;       // max/min of scaled errors <= 3
  bool selection_consistent = false;  // false-selection rate < 0.05 at largest n
};

// Monte Carlo check of estimation and selection consistency: for each n draw
// designs with rows N(0, c_target), fit with the penalty rules, and summarize
// scaled errors and false-selection frequencies across the n grid. Fits run
// on the raw scale without an intercept.
ConsistencyReport verify_consistency(const ConsistencySpec& spec,
                                     const PenaltyMatrix& lam);

}  // namespace senet
