#include <chrono>
#include <cstdint>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "senet/parallel.hpp"
#include "senet/simulate.hpp"

namespace {

using namespace senet;

double run_seconds(const SimSpec& spec, BenchmarkReport& out) {
  const auto start = std::chrono::steady_clock::now();
  out = run_benchmark(spec);
  const auto stop = std::chrono::steady_clock::now();
  return std::chrono::duration<double>(stop - start).count();
}

// exact comparison: schedule independence means the parallel run must produce
// the very same bits as the serial reference
std::string first_difference(const BenchmarkReport& a, const BenchmarkReport& b) {
  if (a.records.size() != b.records.size()) return "record counts differ";
  for (std::size_t i = 0; i < a.records.size(); ++i) {
    const ReplicateRecord& ra = a.records[i];
    const ReplicateRecord& rb = b.records[i];
    if (ra.replicate != rb.replicate || ra.method != rb.method) {
      return "record order differs at index " + std::to_string(i);
    }
    if (ra.ok != rb.ok || ra.error != rb.error) {
      return "status differs in replicate " + std::to_string(ra.replicate);
    }
    if (ra.lambda1 != rb.lambda1 || ra.lambda2 != rb.lambda2 ||
        ra.l1_error != rb.l1_error || ra.prediction_error != rb.prediction_error) {
      return "metrics differ in replicate " + std::to_string(ra.replicate);
    }
    if (ra.sensitivity != rb.sensitivity || ra.specificity != rb.specificity) {
      return "selection metrics differ in replicate " + std::to_string(ra.replicate);
    }
    if (ra.beta_raw.size() != rb.beta_raw.size()) {
      return "coefficient lengths differ in replicate " + std::to_string(ra.replicate);
    }
    for (Eigen::Index j = 0; j < ra.beta_raw.size(); ++j) {
      if (ra.beta_raw[j] != rb.beta_raw[j]) {
        return "coefficients differ in replicate " + std::to_string(ra.replicate);
      }
    }
  }
  return "";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"compare the serial reference path against the threaded one"};
  std::string scenario = "bump";
  int replicates = 4;
  int threads = 0;
  int grid_size = 20;
  app.add_option("--scenario", scenario, "bump, block or surface");
  app.add_option("--replicates", replicates, "work units to run");
  app.add_option("--threads", threads, "threaded run budget (0 = detected)");
  app.add_option("--grid-size", grid_size, "lambda1 grid points");
  CLI11_PARSE(app, argc, argv);

  try {
    SimSpec spec;
    spec.scenario = scenario_from_name(scenario);
    spec.replicates = replicates;
    spec.path_grid_size = grid_size;
    spec.lambda2_grid = {0.1, 1.0, 10.0};
    spec.methods = {Method::lasso, Method::senet, Method::ada_senet};

    const int budget = threads > 0 ? threads : thread_budget();

    SimSpec serial_spec = spec;
    serial_spec.threads = 1;
    SimSpec threaded_spec = spec;
    threaded_spec.threads = budget;

    BenchmarkReport serial_report, threaded_report;
    const double t_serial = run_seconds(serial_spec, serial_report);
    const double t_threaded = run_seconds(threaded_spec, threaded_report);

    std::cout << "scenario " << scenario << ", " << replicates
              << " replicates, methods lasso/senet/ada_senet\n";
    std::cout << "serial reference (1 thread):   " << t_serial << " s\n";
    std::cout << "threaded (" << budget << " thread" << (budget == 1 ? "" : "s")
              << "):          " << t_threaded << " s\n";
    std::cout << "speedup: " << (t_threaded > 0.0 ? t_serial / t_threaded : 0.0)
              << "x";
    if (budget == 1) {
      std::cout << " (single-core budget: this measures scheduling overhead only)";
    }
    std::cout << "\n";

    const std::string diff = first_difference(serial_report, threaded_report);
    if (diff.empty()) {
      std::cout << "outputs: bit-identical across schedules\n";
      return 0;
    }
    std::cout << "outputs: MISMATCH (" << diff << ")\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
