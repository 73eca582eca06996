#pragma once

#include <string>

#include "senet/glm.hpp"
#include "senet/graph.hpp"
#include "senet/simulate.hpp"
#include "senet/solver.hpp"

namespace senet {

// CSV with a header row; the response column is named "y", every other
// column is a feature in file order. Missing or non-numeric fields raise
// ParseError with the offending line number.
Dataset read_csv(const std::string& path);

// numeric CSV with a header row, all columns kept as a matrix
Matrix read_csv_matrix(const std::string& path);

// one numeric value per line; blank lines and lines starting with # skipped
Vector read_vector(const std::string& path);

// graph file format: {"n": p, "edges": [[u, v, w], ...]}, weight optional
// with default 1
StructuredGraph read_graph_json(const std::string& path);
void write_graph_json(const StructuredGraph& g, const std::string& path);

// nonzero penalty entries, one "j k value" line per entry
void write_penalty_triplets(const PenaltyMatrix& lam, const std::string& path);

// A fit serialized with its standardization record and the flags used to
// produce it, so diagnostics can be recomputed from the file alone.
struct StoredFit {
  FitResult fit;
  Standardization record;
  std::string data_path;
  std::string graph_spec;
};

void write_fit_json(const FitResult& fit, const Standardization& record,
                    const std::string& path, const std::string& data_path = "",
                    const std::string& graph_spec = "");
StoredFit read_fit_json(const std::string& path);

void write_path_json(const CoefPath& path, const Standardization& record,
                     const std::string& out_path,
                     const std::string& data_path = "",
                     const std::string& graph_spec = "");

void write_report_json(const BenchmarkReport& report, const std::string& path);

// per-replicate selected coefficient vectors, wide CSV for external plotting
void write_report_coefs_csv(const BenchmarkReport& report,
                            const std::string& path);

// fixed-width text table of the per-method summaries
std::string report_table(const BenchmarkReport& report);

// benchmark configuration as JSON; unknown keys raise ParseError
SimSpec read_simspec_json(const std::string& path);

// write-to-temp-then-rename so failures leave no partial file behind
void atomic_write(const std::string& path, const std::string& content);

}  // namespace senet
