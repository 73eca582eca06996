#include "senet/io.hpp"

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <sstream>

#include <json.hpp>

namespace senet {

namespace {

using nlohmann::json;

std::string trimmed(const std::string& s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

std::vector<std::string> split_fields(const std::string& line) {
  std::vector<std::string> out;
  std::string field;
  std::istringstream in(line);
  while (std::getline(in, field, ',')) out.push_back(trimmed(field));
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

bool missing_token(const std::string& s) {
  if (s.empty()) return true;
  std::string low;
  for (const char c : s) low.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
  return low == "na" || low == "nan" || low == "null";
}

double parse_field(const std::string& s, int line_no, const std::string& column) {
  if (missing_token(s)) {
    throw ParseError("line " + std::to_string(line_no) + ": missing value in column '" +
                     column + "'");
  }
  try {
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw ParseError("line " + std::to_string(line_no) + ": cannot parse '" + s +
                     "' in column '" + column + "'");
  }
}

std::string read_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;
};

CsvTable read_csv_table(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open file: " + path);
  CsvTable table;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line_no == 1) {
      table.header = split_fields(line);
      if (table.header.empty()) throw ParseError("line 1: empty header row");
      for (const std::string& h : table.header) {
        if (h.empty()) throw ParseError("line 1: empty column name");
      }
      continue;
    }
    if (trimmed(line).empty()) continue;
    const std::vector<std::string> fields = split_fields(line);
    if (fields.size() != table.header.size()) {
      throw ParseError("line " + std::to_string(line_no) + ": expected " +
                       std::to_string(table.header.size()) + " fields, got " +
                       std::to_string(fields.size()));
    }
    std::vector<double> row(fields.size());
    for (std::size_t c = 0; c < fields.size(); ++c) {
      row[c] = parse_field(fields[c], line_no, table.header[c]);
    }
    table.rows.push_back(std::move(row));
  }
  if (table.header.empty()) throw ParseError("empty file: " + path);
  if (table.rows.empty()) throw ParseError("no data rows in file: " + path);
  return table;
}

json vector_to_json(const Vector& v) {
  json arr = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) arr.push_back(v[i]);
  return arr;
}

Vector vector_from_json(const json& arr) {
  if (!arr.is_array()) throw ParseError("expected a numeric array");
  Vector v(static_cast<Eigen::Index>(arr.size()));
  Eigen::Index i = 0;
  for (const auto& x : arr) v[i++] = x.get<double>();
  return v;
}

json fit_core_to_json(const FitResult& fit) {
  json j;
  j["family"] = GlmFamily{fit.family}.name();
  j["method"] = fit.method;
  j["lambda1"] = fit.lambda1;
  j["lambda2"] = fit.lambda2;
  j["l1_weights"] = vector_to_json(fit.l1_weights);
  j["intercept"] = fit.intercept;
  j["beta0"] = fit.beta0;
  j["beta"] = vector_to_json(fit.beta);
  j["beta0_raw"] = fit.beta0_raw;
  j["beta_raw"] = vector_to_json(fit.beta_raw);
  j["active_set"] = fit.active_set;
  j["objective"] = fit.objective;
  j["kkt_residual"] = fit.kkt_residual;
  j["sweeps"] = fit.sweeps;
  j["irls_iterations"] = fit.irls_iterations;
  j["converged"] = fit.converged;
  j["t1"] = fit.t1;
  j["t2"] = fit.t2;
  j["log"] = fit.log;
  return j;
}

FitResult fit_core_from_json(const json& j) {
  FitResult fit;
  fit.family = family_from_name(j.at("family").get<std::string>()).family;
  fit.method = j.at("method").get<std::string>();
  fit.lambda1 = j.at("lambda1").get<double>();
  fit.lambda2 = j.at("lambda2").get<double>();
  fit.l1_weights = vector_from_json(j.at("l1_weights"));
  fit.intercept = j.at("intercept").get<bool>();
  fit.beta0 = j.at("beta0").get<double>();
  fit.beta = vector_from_json(j.at("beta"));
  fit.beta0_raw = j.at("beta0_raw").get<double>();
  fit.beta_raw = vector_from_json(j.at("beta_raw"));
  fit.active_set = j.at("active_set").get<std::vector<int>>();
  fit.objective = j.at("objective").get<double>();
  fit.kkt_residual = j.at("kkt_residual").get<double>();
  fit.sweeps = j.at("sweeps").get<int>();
  fit.irls_iterations = j.at("irls_iterations").get<int>();
  fit.converged = j.at("converged").get<bool>();
  fit.t1 = j.at("t1").get<double>();
  fit.t2 = j.at("t2").get<double>();
  fit.log = j.at("log").get<std::vector<std::string>>();
  return fit;
}

json record_to_json(const Standardization& record) {
  json j;
  j["active"] = record.active;
  j["center"] = vector_to_json(record.center);
  j["scale"] = vector_to_json(record.scale);
  j["y_center"] = record.y_center;
  return j;
}

Standardization record_from_json(const json& j) {
  Standardization record;
  record.active = j.at("active").get<bool>();
  record.center = vector_from_json(j.at("center"));
  record.scale = vector_from_json(j.at("scale"));
  record.y_center = j.at("y_center").get<double>();
  return record;
}

json parse_json_file(const std::string& path) {
  try {
    return json::parse(read_text(path));
  } catch (const json::exception& e) {
    throw ParseError("invalid JSON in " + path + ": " + e.what());
  }
}

}  // namespace

Dataset read_csv(const std::string& path) {
  const CsvTable table = read_csv_table(path);
  std::size_t y_col = table.header.size();
  for (std::size_t c = 0; c < table.header.size(); ++c) {
    if (table.header[c] == "y") {
      if (y_col != table.header.size()) {
        throw ParseError("duplicate response column 'y' in " + path);
      }
      y_col = c;
    }
  }
  if (y_col == table.header.size()) {
    throw ParseError("no response column named 'y' in " + path);
  }
  if (table.header.size() < 2) {
    throw ParseError("no feature columns in " + path);
  }

  Dataset data;
  const auto n = static_cast<Eigen::Index>(table.rows.size());
  const auto p = static_cast<Eigen::Index>(table.header.size() - 1);
  data.X.resize(n, p);
  data.y.resize(n);
  for (std::size_t c = 0; c < table.header.size(); ++c) {
    if (c != y_col) data.feature_names.push_back(table.header[c]);
  }
  for (Eigen::Index i = 0; i < n; ++i) {
    const auto& row = table.rows[static_cast<std::size_t>(i)];
    Eigen::Index feature = 0;
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (c == y_col) {
        data.y[i] = row[c];
      } else {
        data.X(i, feature++) = row[c];
      }
    }
  }
  return data;
}

Matrix read_csv_matrix(const std::string& path) {
  const CsvTable table = read_csv_table(path);
  const auto n = static_cast<Eigen::Index>(table.rows.size());
  const auto p = static_cast<Eigen::Index>(table.header.size());
  Matrix m(n, p);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index c = 0; c < p; ++c) {
      m(i, c) = table.rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(c)];
    }
  }
  return m;
}

Vector read_vector(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open file: " + path);
  std::vector<double> values;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const std::string t = trimmed(line);
    if (t.empty() || t[0] == '#') continue;
    values.push_back(parse_field(t, line_no, "value"));
  }
  if (values.empty()) throw ParseError("no values in file: " + path);
  Vector v(static_cast<Eigen::Index>(values.size()));
  for (std::size_t i = 0; i < values.size(); ++i) {
    v[static_cast<Eigen::Index>(i)] = values[i];
  }
  return v;
}

StructuredGraph read_graph_json(const std::string& path) {
  const json j = parse_json_file(path);
  try {
    const int n = j.at("n").get<int>();
    std::vector<GraphEdge> edges;
    for (const auto& e : j.at("edges")) {
      if (!e.is_array() || e.size() < 2 || e.size() > 3) {
        throw ParseError("graph edges must be [u, v] or [u, v, weight] triples");
      }
      GraphEdge edge;
      edge.u = e[0].get<int>();
      edge.v = e[1].get<int>();
      edge.weight = e.size() == 3 ? e[2].get<double>() : 1.0;
      edges.push_back(edge);
    }
    return StructuredGraph(n, std::move(edges));
  } catch (const json::exception& e) {
    throw ParseError("invalid graph file " + path + ": " + e.what());
  }
}

void write_graph_json(const StructuredGraph& g, const std::string& path) {
  json j;
  j["n"] = g.size();
  json edges = json::array();
  for (const GraphEdge& e : g.edges()) {
    edges.push_back(json::array({e.u, e.v, e.weight}));
  }
  j["edges"] = std::move(edges);
  atomic_write(path, j.dump(2) + "\n");
}

void write_penalty_triplets(const PenaltyMatrix& lam, const std::string& path) {
  std::ostringstream out;
  out << std::setprecision(17);
  const Matrix& l = lam.matrix();
  for (Eigen::Index j = 0; j < l.rows(); ++j) {
    for (Eigen::Index k = 0; k < l.cols(); ++k) {
      if (l(j, k) != 0.0) out << j << " " << k << " " << l(j, k) << "\n";
    }
  }
  atomic_write(path, out.str());
}

void write_fit_json(const FitResult& fit, const Standardization& record,
                    const std::string& path, const std::string& data_path,
                    const std::string& graph_spec) {
  json j = fit_core_to_json(fit);
  j["kind"] = "fit";
  j["standardization"] = record_to_json(record);
  j["data_path"] = data_path;
  j["graph_spec"] = graph_spec;
  atomic_write(path, j.dump(2) + "\n");
}

StoredFit read_fit_json(const std::string& path) {
  const json j = parse_json_file(path);
  try {
    if (j.value("kind", "") != "fit") {
      throw ParseError("not a fit file: " + path);
    }
    StoredFit stored;
    stored.fit = fit_core_from_json(j);
    stored.record = record_from_json(j.at("standardization"));
    stored.data_path = j.value("data_path", "");
    stored.graph_spec = j.value("graph_spec", "");
    return stored;
  } catch (const json::exception& e) {
    throw ParseError("invalid fit file " + path + ": " + e.what());
  }
}

void write_path_json(const CoefPath& path, const Standardization& record,
                     const std::string& out_path, const std::string& data_path,
                     const std::string& graph_spec) {
  json j;
  j["kind"] = "path";
  j["lambda2"] = path.lambda2;
  j["lambda1_grid"] = vector_to_json(path.lambda1_grid);
  j["warm_from"] = path.warm_from;
  j["standardization"] = record_to_json(record);
  j["data_path"] = data_path;
  j["graph_spec"] = graph_spec;
  json fits = json::array();
  for (const FitResult& f : path.fits) fits.push_back(fit_core_to_json(f));
  j["fits"] = std::move(fits);
  atomic_write(out_path, j.dump(2) + "\n");
}

namespace {

json spec_to_json(const SimSpec& spec) {
  json j;
  j["scenario"] = scenario_name(spec.scenario);
  j["n_train"] = spec.n_train;
  j["n_valid"] = spec.n_valid;
  j["n_test"] = spec.n_test;
  if (spec.noise_sd) {
    j["noise_sd"] = *spec.noise_sd;
  } else {
    j["noise_sd"] = nullptr;
  }
  j["replicates"] = spec.replicates;
  j["seed"] = spec.seed;
  json methods = json::array();
  for (const Method m : spec.methods) methods.push_back(method_name(m));
  j["methods"] = std::move(methods);
  j["path_grid_size"] = spec.path_grid_size;
  j["lambda2_grid"] = spec.lambda2_grid;
  j["signal_length"] = spec.signal_length;
  if (spec.custom_beta.size() > 0) j["custom_beta"] = vector_to_json(spec.custom_beta);
  j["threads"] = spec.threads;
  return j;
}

}  // namespace

void write_report_json(const BenchmarkReport& report, const std::string& path) {
  json j;
  j["kind"] = "benchmark_report";
  j["spec"] = spec_to_json(report.spec);
  j["header_note"] = report.header_note;
  j["warnings"] = report.warnings;
  json summaries = json::array();
  for (const MethodSummary& s : report.summaries) {
    json row;
    row["method"] = method_name(s.method);
    row["replicates_ok"] = s.replicates_ok;
    row["l1_mean"] = s.l1_mean;
    row["l1_se"] = s.l1_se;
    row["pe_mean"] = s.pe_mean;
    row["pe_se"] = s.pe_se;
    row["sensitivity_mean"] = s.sens_mean ? json(*s.sens_mean) : json(nullptr);
    row["sensitivity_se"] = s.sens_se ? json(*s.sens_se) : json(nullptr);
    row["specificity_mean"] = s.spec_mean ? json(*s.spec_mean) : json(nullptr);
    row["specificity_se"] = s.spec_se ? json(*s.spec_se) : json(nullptr);
    summaries.push_back(std::move(row));
  }
  j["summaries"] = std::move(summaries);
  json records = json::array();
  for (const ReplicateRecord& r : report.records) {
    json row;
    row["replicate"] = r.replicate;
    row["method"] = method_name(r.method);
    row["ok"] = r.ok;
    if (!r.ok) row["error"] = r.error;
    row["lambda1"] = r.lambda1;
    row["lambda2"] = r.lambda2;
    row["l1_error"] = r.l1_error;
    row["prediction_error"] = r.prediction_error;
    row["sensitivity"] = r.sensitivity ? json(*r.sensitivity) : json(nullptr);
    row["specificity"] = r.specificity ? json(*r.specificity) : json(nullptr);
    records.push_back(std::move(row));
  }
  j["records"] = std::move(records);
  atomic_write(path, j.dump(2) + "\n");
}

void write_report_coefs_csv(const BenchmarkReport& report,
                            const std::string& path) {
  Eigen::Index p = 0;
  for (const ReplicateRecord& r : report.records) {
    if (r.ok) {
      p = r.beta_raw.size();
      break;
    }
  }
  std::ostringstream out;
  out << std::setprecision(17);
  out << "replicate,method";
  for (Eigen::Index j = 0; j < p; ++j) out << ",b" << j + 1;
  out << "\n";
  for (const ReplicateRecord& r : report.records) {
    if (!r.ok) continue;
    out << r.replicate << "," << method_name(r.method);
    for (Eigen::Index j = 0; j < p; ++j) out << "," << r.beta_raw[j];
    out << "\n";
  }
  atomic_write(path, out.str());
}

std::string report_table(const BenchmarkReport& report) {
  std::ostringstream out;
  out << report.header_note << "\n";
  for (const std::string& w : report.warnings) out << "warning: " << w << "\n";
  out << "\n";
  char line[256];
  std::snprintf(line, sizeof line, "%-10s %8s %18s %18s %18s %18s\n", "method",
                "ok", "L1 (se)", "PE (se)", "sens (se)", "spec (se)");
  out << line;
  const auto cell = [](double mean, double se) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.4f (%.4f)", mean, se);
    return std::string(buf);
  };
  for (const MethodSummary& s : report.summaries) {
    const std::string sens =
        s.sens_mean ? cell(*s.sens_mean, s.sens_se.value_or(0.0)) : std::string("-");
    const std::string spec =
        s.spec_mean ? cell(*s.spec_mean, s.spec_se.value_or(0.0)) : std::string("-");
    std::snprintf(line, sizeof line, "%-10s %8d %18s %18s %18s %18s\n",
                  method_name(s.method).c_str(), s.replicates_ok,
                  cell(s.l1_mean, s.l1_se).c_str(), cell(s.pe_mean, s.pe_se).c_str(),
                  sens.c_str(), spec.c_str());
    out << line;
  }
  return out.str();
}

SimSpec read_simspec_json(const std::string& path) {
  const json j = parse_json_file(path);
  static const std::vector<std::string> known = {
      "scenario",  "n_train",        "n_valid",      "n_test",
      "noise_sd",  "replicates",     "seed",         "methods",
      "path_grid_size", "lambda2_grid", "signal_length", "custom_beta",
      "threads"};
  for (auto it = j.begin(); it != j.end(); ++it) {
    if (std::find(known.begin(), known.end(), it.key()) == known.end()) {
      throw ParseError("unknown key '" + it.key() + "' in " + path);
    }
  }
  SimSpec spec;
  try {
    if (j.contains("scenario")) {
      spec.scenario = scenario_from_name(j["scenario"].get<std::string>());
    }
    if (j.contains("n_train")) spec.n_train = j["n_train"].get<int>();
    if (j.contains("n_valid")) spec.n_valid = j["n_valid"].get<int>();
    if (j.contains("n_test")) spec.n_test = j["n_test"].get<int>();
    if (j.contains("noise_sd") && !j["noise_sd"].is_null()) {
      spec.noise_sd = j["noise_sd"].get<double>();
    }
    if (j.contains("replicates")) spec.replicates = j["replicates"].get<int>();
    if (j.contains("seed")) spec.seed = j["seed"].get<std::uint64_t>();
    if (j.contains("methods")) {
      spec.methods.clear();
      for (const auto& m : j["methods"]) {
        spec.methods.push_back(method_from_name(m.get<std::string>()));
      }
    }
    if (j.contains("path_grid_size")) {
      spec.path_grid_size = j["path_grid_size"].get<int>();
    }
    if (j.contains("lambda2_grid")) {
      spec.lambda2_grid = j["lambda2_grid"].get<std::vector<double>>();
    }
    if (j.contains("signal_length")) {
      spec.signal_length = j["signal_length"].get<int>();
    }
    if (j.contains("custom_beta")) spec.custom_beta = vector_from_json(j["custom_beta"]);
    if (j.contains("threads")) spec.threads = j["threads"].get<int>();
  } catch (const json::exception& e) {
    throw ParseError("invalid benchmark configuration " + path + ": " + e.what());
  }
  return spec;
}

void atomic_write(const std::string& path, const std::string& content) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot open for writing: " + tmp);
    out << content;
    if (!out.good()) {
      out.close();
      std::remove(tmp.c_str());
      throw Error("write failed: " + tmp);
    }
  }
  if (std::rename(tmp.c_str(), path.c_str()) != 0) {
    std::remove(tmp.c_str());
    throw Error("cannot replace file: " + path);
  }
}

}  // namespace senet
