#include <cstdint>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "senet/adaptive.hpp"
#include "senet/diagnostics.hpp"
#include "senet/glm.hpp"
#include "senet/graph.hpp"
#include "senet/io.hpp"
#include "senet/rng.hpp"
#include "senet/simulate.hpp"
#include "senet/solver.hpp"

namespace {

using namespace senet;
using nlohmann::json;

// re-apply a stored standardization record so reloaded fits live on exactly
// the scale they were computed on
Dataset apply_record(const Dataset& raw, const Standardization& rec) {
  if (!rec.active) return raw;
  if (rec.center.size() != raw.p() || rec.scale.size() != raw.p()) {
    throw InvalidDimension("standardization record does not match the data");
  }
  Dataset out = raw;
  out.X = (raw.X.rowwise() - rec.center.transpose()).array().rowwise() /
          rec.scale.transpose().array();
  out.y = raw.y.array() - rec.y_center;
  out.record = rec;
  return out;
}

StructuredGraph build_graph(const std::string& spec, const Matrix& x) {
  const auto p = static_cast<int>(x.cols());
  if (spec == "path") return StructuredGraph::path(p);
  if (spec.rfind("grid:", 0) == 0) {
    const std::string dims = spec.substr(5);
    const auto sep = dims.find('x');
    if (sep == std::string::npos) {
      throw ParseError("grid spec must look like grid:ROWSxCOLS");
    }
    int rows = 0, cols = 0;
    try {
      rows = std::stoi(dims.substr(0, sep));
      cols = std::stoi(dims.substr(sep + 1));
    } catch (const std::exception&) {
      throw ParseError("grid spec must look like grid:ROWSxCOLS");
    }
    if (rows * cols != p) {
      throw InvalidDimension("grid " + dims + " has " + std::to_string(rows * cols) +
                             " vertices but the data has " + std::to_string(p) +
                             " features");
    }
    return StructuredGraph::grid(rows, cols);
  }
  if (spec.rfind("knn:", 0) == 0) {
    int k = 0;
    try {
      k = std::stoi(spec.substr(4));
    } catch (const std::exception&) {
      throw ParseError("knn spec must look like knn:K");
    }
    return StructuredGraph::knn(x.transpose(), k);
  }
  const StructuredGraph g = read_graph_json(spec);
  if (g.size() != p) {
    throw InvalidDimension("graph has " + std::to_string(g.size()) +
                           " vertices but the data has " + std::to_string(p) +
                           " features");
  }
  return g;
}

PenaltyMatrix build_penalty(const std::string& spec, const Matrix& x) {
  if (spec == "identity") return PenaltyMatrix::identity(static_cast<int>(x.cols()));
  return PenaltyMatrix::from_graph(build_graph(spec, x));
}

struct FitFlags {
  std::string data_path;
  std::string family = "gaussian";
  std::string graph = "identity";
  double lambda1 = 0.0;
  double lambda2 = 0.0;
  std::string weights_path;
  bool adaptive = false;
  double gamma = 1.0;
  double weight_cap = 1e8;
  std::string init = "ridge";
  double init_lambda2 = 1.0;
  bool no_standardize = false;
  bool no_intercept = false;
  double coord_tol = 1e-8;
  double kkt_tol = 1e-6;
  double kkt_tol_glm = 1e-5;
  int max_sweeps = 100000;
  int max_irls = 100;
  std::string out = "fit.json";
};

void add_solver_flags(CLI::App* sub, FitFlags& f) {
  sub->add_option("--data", f.data_path, "CSV with a response column named y")->required();
  sub->add_option("--family", f.family, "gaussian, binomial or poisson");
  sub->add_option("--graph", f.graph,
                  "identity, path, grid:RxC, knn:K, or a graph JSON file");
  sub->add_flag("--no-standardize", f.no_standardize,
                "fit on the raw scale (default standardizes the predictors)");
  sub->add_flag("--no-intercept", f.no_intercept, "omit the intercept");
  sub->add_option("--coord-tol", f.coord_tol, "coordinate sweep tolerance");
  sub->add_option("--kkt-tol", f.kkt_tol, "stationarity certificate bound");
  sub->add_option("--kkt-tol-glm", f.kkt_tol_glm, "certificate bound for binomial/poisson");
  sub->add_option("--max-sweeps", f.max_sweeps, "coordinate sweep cap");
  sub->add_option("--max-irls", f.max_irls, "reweighting iteration cap");
}

FitConfig to_config(const FitFlags& f) {
  FitConfig cfg;
  cfg.lambda1 = f.lambda1;
  cfg.lambda2 = f.lambda2;
  cfg.fit_intercept = !f.no_intercept;
  cfg.coord_tol = f.coord_tol;
  cfg.kkt_tol = f.kkt_tol;
  cfg.kkt_tol_glm = f.kkt_tol_glm;
  cfg.max_sweeps = f.max_sweeps;
  cfg.max_irls = f.max_irls;
  if (!f.weights_path.empty()) cfg.l1_weights = read_vector(f.weights_path);
  return cfg;
}

Dataset load_fit_data(const FitFlags& f, const GlmFamily& fam) {
  const Dataset raw = read_csv(f.data_path);
  if (f.no_standardize) return raw;
  return standardize(raw, fam.family == Family::gaussian);
}

int run_fit(const FitFlags& f) {
  const GlmFamily fam = family_from_name(f.family);
  const Dataset data = load_fit_data(f, fam);
  const PenaltyMatrix lam = build_penalty(f.graph, data.X);
  const FitConfig cfg = to_config(f);

  FitResult fit;
  if (f.adaptive) {
    AdaptiveConfig acfg;
    acfg.gamma = f.gamma;
    acfg.weight_cap = f.weight_cap;
    acfg.init_lambda2 = f.init_lambda2;
    if (f.init == "ridge") {
      acfg.init = AdaptiveConfig::Init::ridge;
    } else if (f.init == "ridge-structured") {
      acfg.init = AdaptiveConfig::Init::ridge_structured;
    } else if (f.init.rfind("file:", 0) == 0) {
      acfg.init = AdaptiveConfig::Init::user;
      acfg.user_init = read_vector(f.init.substr(5));
    } else {
      throw ParseError("--init must be ridge, ridge-structured or file:PATH");
    }
    fit = adaptive_fit(data, fam, lam, cfg, acfg);
  } else {
    fit = solve_glm(data, fam, lam, cfg);
  }

  write_fit_json(fit, data.record, f.out, f.data_path, f.graph);
  std::cout << (fit.converged ? "converged" : "NOT converged") << "; objective "
            << fit.objective << "; stationarity residual " << fit.kkt_residual
            << "; " << fit.active_set.size() << " of " << data.p()
            << " coefficients active; wrote " << f.out << "\n";
  return fit.converged ? 0 : 2;
}

int run_path(const FitFlags& f, int grid_size) {
  const GlmFamily fam = family_from_name(f.family);
  const Dataset data = load_fit_data(f, fam);
  const PenaltyMatrix lam = build_penalty(f.graph, data.X);
  FitConfig base = to_config(f);
  base.lambda1 = 0.0;

  const CoefPath path = solve_path(data, fam, lam, f.lambda2, grid_size, base);
  write_path_json(path, data.record, f.out, f.data_path, f.graph);
  bool all_converged = true;
  for (const FitResult& fit : path.fits) all_converged = all_converged && fit.converged;
  std::cout << path.fits.size() << " fits along lambda1 in ["
            << path.lambda1_grid[path.lambda1_grid.size() - 1] << ", "
            << path.lambda1_grid[0] << "] at lambda2 " << f.lambda2 << "; "
            << (all_converged ? "all converged" : "some fits NOT converged")
            << "; wrote " << f.out << "\n";
  return all_converged ? 0 : 2;
}

struct TuneFlags {
  int folds = 10;
  int grid_size = 50;
  std::vector<double> lambda2_grid = {0.01, 0.1, 1.0, 10.0, 100.0};
  std::uint64_t seed = 1;
  std::string criterion = "deviance";
};

int run_tune(const FitFlags& f, const TuneFlags& t) {
  const GlmFamily fam = family_from_name(f.family);
  if (t.criterion != "deviance" && t.criterion != "misclass") {
    throw ParseError("--criterion must be deviance or misclass");
  }
  if (t.criterion == "misclass" && fam.family != Family::binomial) {
    throw InvalidParameter("misclassification criterion needs the binomial family");
  }
  const Dataset raw = read_csv(f.data_path);
  const auto n = raw.n();
  if (t.folds < 2 || t.folds > n) {
    throw InvalidParameter("folds must lie in [2, n]");
  }
  if (t.grid_size < 1) throw InvalidParameter("grid size must be positive");
  if (t.lambda2_grid.empty()) throw InvalidParameter("lambda2 grid is empty");

  const bool center_y = fam.family == Family::gaussian;
  const Dataset full = f.no_standardize ? raw : standardize(raw, center_y);
  const PenaltyMatrix lam = build_penalty(f.graph, full.X);
  FitConfig base = to_config(f);

  // common lambda1 grid from the full data so folds share cells
  const double lmax = lambda1_max(full, fam, base.l1_weights, base.fit_intercept);
  if (!(lmax > 0.0)) {
    throw InvalidParameter("null model already fits the response; nothing to tune");
  }
  std::vector<double> l1_grid(static_cast<std::size_t>(t.grid_size));
  for (int k = 0; k < t.grid_size; ++k) {
    const double frac =
        t.grid_size == 1 ? 0.0 : static_cast<double>(k) / (t.grid_size - 1);
    l1_grid[static_cast<std::size_t>(k)] = lmax * std::pow(1e-3, frac);
  }

  // deterministic shuffled round-robin fold assignment
  std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
  for (Eigen::Index i = 0; i < n; ++i) order[static_cast<std::size_t>(i)] = i;
  Rng rng(t.seed);
  rng.shuffle(order);
  std::vector<int> fold_of(static_cast<std::size_t>(n));
  for (std::size_t i = 0; i < order.size(); ++i) {
    fold_of[static_cast<std::size_t>(order[i])] = static_cast<int>(i % static_cast<std::size_t>(t.folds));
  }

  const std::size_t cells =
      t.lambda2_grid.size() * static_cast<std::size_t>(t.grid_size);
  std::vector<double> cell_loss(cells, 0.0);

  for (int fold = 0; fold < t.folds; ++fold) {
    std::vector<Eigen::Index> train_rows, test_rows;
    for (Eigen::Index i = 0; i < n; ++i) {
      (fold_of[static_cast<std::size_t>(i)] == fold ? test_rows : train_rows).push_back(i);
    }
    Dataset train_raw;
    train_raw.X.resize(static_cast<Eigen::Index>(train_rows.size()), raw.p());
    train_raw.y.resize(static_cast<Eigen::Index>(train_rows.size()));
    for (std::size_t i = 0; i < train_rows.size(); ++i) {
      train_raw.X.row(static_cast<Eigen::Index>(i)) = raw.X.row(train_rows[i]);
      train_raw.y[static_cast<Eigen::Index>(i)] = raw.y[train_rows[i]];
    }
    const Dataset train =
        f.no_standardize ? train_raw : standardize(train_raw, center_y);

    for (std::size_t l2i = 0; l2i < t.lambda2_grid.size(); ++l2i) {
      WarmStart ws;
      bool have_warm = false;
      for (int k = 0; k < t.grid_size; ++k) {
        FitConfig cfg = base;
        cfg.lambda1 = l1_grid[static_cast<std::size_t>(k)];
        cfg.lambda2 = t.lambda2_grid[l2i];
        const FitResult fit =
            solve_glm(train, fam, lam, cfg, have_warm ? &ws : nullptr);
        ws.beta0 = fit.beta0;
        ws.beta = fit.beta;
        have_warm = true;

        double loss = 0.0;
        for (const Eigen::Index i : test_rows) {
          const double eta =
              fit.beta0_raw + raw.X.row(i).dot(fit.beta_raw);
          if (t.criterion == "deviance") {
            loss += fam.loss(raw.y[i], eta);
          } else {
            const double mu = fam.mean(eta);
            loss += (mu > 0.5) != (raw.y[i] > 0.5) ? 1.0 : 0.0;
          }
        }
        cell_loss[l2i * static_cast<std::size_t>(t.grid_size) +
                  static_cast<std::size_t>(k)] +=
            loss / static_cast<double>(test_rows.size());
      }
    }
  }

  double best_loss = 0.0, best_l1 = 0.0, best_l2 = 0.0;
  bool have_best = false;
  for (std::size_t l2i = 0; l2i < t.lambda2_grid.size(); ++l2i) {
    for (int k = 0; k < t.grid_size; ++k) {
      const double loss =
          cell_loss[l2i * static_cast<std::size_t>(t.grid_size) + static_cast<std::size_t>(k)] /
          t.folds;
      const double l1 = l1_grid[static_cast<std::size_t>(k)];
      const double l2 = t.lambda2_grid[l2i];
      bool takes = !have_best;
      if (have_best && loss != best_loss) takes = loss < best_loss;
      else if (have_best && l1 != best_l1) takes = l1 > best_l1;
      else if (have_best) takes = l2 > best_l2;
      if (takes) {
        have_best = true;
        best_loss = loss;
        best_l1 = l1;
        best_l2 = l2;
      }
    }
  }

  FitConfig cfg = base;
  cfg.lambda1 = best_l1;
  cfg.lambda2 = best_l2;
  const FitResult refit = solve_glm(full, fam, lam, cfg);

  json out;
  out["kind"] = "tune";
  out["criterion"] = t.criterion;
  out["folds"] = t.folds;
  out["seed"] = t.seed;
  out["lambda1"] = best_l1;
  out["lambda2"] = best_l2;
  out["mean_loss"] = best_loss;
  json table = json::array();
  for (std::size_t l2i = 0; l2i < t.lambda2_grid.size(); ++l2i) {
    for (int k = 0; k < t.grid_size; ++k) {
      json row;
      row["lambda1"] = l1_grid[static_cast<std::size_t>(k)];
      row["lambda2"] = t.lambda2_grid[l2i];
      row["mean_loss"] =
          cell_loss[l2i * static_cast<std::size_t>(t.grid_size) + static_cast<std::size_t>(k)] /
          t.folds;
      table.push_back(std::move(row));
    }
  }
  out["table"] = std::move(table);
  atomic_write(f.out, out.dump(2) + "\n");
  write_fit_json(refit, full.record, f.out + ".fit.json", f.data_path, f.graph);

  std::cout << "selected lambda1 " << best_l1 << ", lambda2 " << best_l2
            << " (mean " << t.criterion << " " << best_loss << "); wrote "
            << f.out << " and " << f.out << ".fit.json\n";
  return refit.converged ? 0 : 2;
}

struct SimulateFlags {
  std::string config;
  std::string scenario;
  int replicates = 0;
  std::uint64_t seed = 0;
  std::vector<std::string> methods;
  int grid_size = 0;
  double noise_sd = -1.0;
  int threads = -1;
  std::string out = "report.json";
  std::string coefs;
  bool table = false;
};

int run_simulate(const CLI::App* sub, const SimulateFlags& s) {
  SimSpec spec;
  if (!s.config.empty()) spec = read_simspec_json(s.config);
  if (sub->count("--scenario") > 0) spec.scenario = scenario_from_name(s.scenario);
  if (sub->count("--replicates") > 0) spec.replicates = s.replicates;
  if (sub->count("--seed") > 0) spec.seed = s.seed;
  if (sub->count("--methods") > 0) {
    spec.methods.clear();
    for (const std::string& m : s.methods) spec.methods.push_back(method_from_name(m));
  }
  if (sub->count("--grid-size") > 0) spec.path_grid_size = s.grid_size;
  if (sub->count("--noise-sd") > 0) spec.noise_sd = s.noise_sd;
  if (sub->count("--threads") > 0) spec.threads = s.threads;

  const BenchmarkReport report = run_benchmark(spec);
  write_report_json(report, s.out);
  if (!s.coefs.empty()) write_report_coefs_csv(report, s.coefs);
  if (s.table) std::cout << report_table(report);
  std::cout << "wrote " << s.out;
  if (!s.coefs.empty()) std::cout << " and " << s.coefs;
  std::cout << "\n";
  for (const std::string& w : report.warnings) std::cout << "warning: " << w << "\n";
  return 0;
}

Matrix load_design(const std::string& path) {
  try {
    return read_csv(path).X;
  } catch (const ParseError&) {
    return read_csv_matrix(path);
  }
}

struct GraphFlags {
  std::string spec;
  std::string data;
  std::string out = "graph.json";
  std::string penalty_out;
};

int run_graph(const GraphFlags& g) {
  std::optional<StructuredGraph> graph;
  if (g.spec.rfind("path:", 0) == 0) {
    graph = StructuredGraph::path(std::stoi(g.spec.substr(5)));
  } else if (g.spec.rfind("grid:", 0) == 0) {
    const std::string dims = g.spec.substr(5);
    const auto sep = dims.find('x');
    if (sep == std::string::npos) {
      throw ParseError("grid spec must look like grid:ROWSxCOLS");
    }
    graph = StructuredGraph::grid(std::stoi(dims.substr(0, sep)),
                                  std::stoi(dims.substr(sep + 1)));
  } else if (g.spec.rfind("knn:", 0) == 0) {
    if (g.data.empty()) throw ParseError("knn graphs need --data");
    const Matrix x = load_design(g.data);
    graph = StructuredGraph::knn(x.transpose(), std::stoi(g.spec.substr(4)));
  } else {
    throw ParseError("graph spec must be path:N, grid:RxC or knn:K");
  }
  write_graph_json(*graph, g.out);
  std::cout << "wrote " << g.out << " (" << graph->size() << " vertices, "
            << graph->edges().size() << " edges)\n";
  if (!g.penalty_out.empty()) {
    write_penalty_triplets(PenaltyMatrix::from_graph(*graph), g.penalty_out);
    std::cout << "wrote " << g.penalty_out << "\n";
  }
  return 0;
}

struct DiagnoseFlags {
  std::string fit_path;
  std::string data;
  std::string graph;
  std::vector<std::string> checks = {"kkt"};
  std::string c_matrix;
  std::string beta_star;
  double r_limit = 0.0;
  std::string out;
};

int run_diagnose(const DiagnoseFlags& d) {
  const StoredFit stored = read_fit_json(d.fit_path);
  const std::string data_path = d.data.empty() ? stored.data_path : d.data;
  const std::string graph_spec = d.graph.empty() ? stored.graph_spec : d.graph;
  if (data_path.empty()) throw ParseError("no data path stored in the fit; pass --data");
  if (graph_spec.empty()) throw ParseError("no graph spec stored in the fit; pass --graph");

  const Dataset raw = read_csv(data_path);
  const Dataset data = apply_record(raw, stored.record);
  const PenaltyMatrix lam = build_penalty(graph_spec, data.X);
  const GlmFamily fam{stored.fit.family, 1.0};

  std::vector<std::string> checks = d.checks;
  if (checks.size() == 1 && checks[0] == "all") {
    checks = {"kkt", "df", "grouping", "decorrelation", "irrepresentable"};
  }

  json out;
  out["kind"] = "diagnose";
  const bool strict = !(d.checks.size() == 1 && d.checks[0] == "all");

  for (const std::string& check : checks) {
    if (check == "kkt") {
      const double recomputed = kkt_residual(stored.fit, data, fam, lam);
      std::cout << "kkt: stored " << stored.fit.kkt_residual << ", recomputed "
                << recomputed << ", difference "
                << std::abs(recomputed - stored.fit.kkt_residual) << "\n";
      out["kkt"] = {{"stored", stored.fit.kkt_residual},
                    {"recomputed", recomputed}};
    } else if (check == "df") {
      try {
        const double df = df_heuristic(stored.fit, data, lam);
        std::cout << "df (heuristic): " << df << " with "
                  << stored.fit.active_set.size() << " active coefficients\n";
        out["df"] = df;
      } catch (const Error& e) {
        if (strict) throw;
        std::cout << "df: skipped (" << e.what() << ")\n";
      }
    } else if (check == "grouping") {
      try {
        if (data.p() != 2) throw InvalidDimension("grouping bound needs p = 2");
        const double rho = data.X.col(0).dot(data.X.col(1)) /
                           (data.X.col(0).norm() * data.X.col(1).norm());
        const int s = lam.matrix()(0, 1) > 0.0 ? 1 : -1;
        const GroupingBound gb = grouping_bound(stored.fit, lam, rho, s,
                                                stored.fit.lambda2, data.y.norm());
        std::cout << "grouping: |b1 + s b2| = " << gb.lhs << ", bound " << gb.bound
                  << ", applicable " << (gb.applicable ? "yes" : "no")
                  << ", satisfied " << (gb.satisfied ? "yes" : "no") << "\n";
        out["grouping"] = {{"lhs", gb.lhs},
                           {"bound", gb.bound},
                           {"applicable", gb.applicable},
                           {"satisfied", gb.satisfied}};
      } catch (const Error& e) {
        if (strict) throw;
        std::cout << "grouping: skipped (" << e.what() << ")\n";
      }
    } else if (check == "decorrelation") {
      const DecorrelatedMatrices dm =
          decorrelated_matrices(data, lam, stored.fit.lambda2);
      const Matrix sqrt_v = dm.v_diag.cwiseSqrt().asDiagonal();
      const double resid =
          (dm.c_tilde - sqrt_v * dm.r * sqrt_v).cwiseAbs().maxCoeff();
      double max_off = 0.0;
      for (Eigen::Index a = 0; a < dm.r.rows(); ++a) {
        for (Eigen::Index b = 0; b < dm.r.cols(); ++b) {
          if (a != b) max_off = std::max(max_off, std::abs(dm.r(a, b)));
        }
      }
      std::cout << "decorrelation: factorization residual " << resid
                << ", max off-diagonal correlation " << max_off << "\n";
      out["decorrelation"] = {{"factorization_residual", resid},
                              {"max_off_diagonal", max_off}};
    } else if (check == "irrepresentable") {
      if (d.beta_star.empty()) {
        if (strict) throw ParseError("irrepresentable check needs --beta-star");
        std::cout << "irrepresentable: skipped (needs --beta-star)\n";
        continue;
      }
      const Vector bstar = read_vector(d.beta_star);
      Matrix c;
      if (!d.c_matrix.empty()) {
        c = read_csv_matrix(d.c_matrix);
      } else {
        c = data.X.transpose() * data.X / static_cast<double>(data.n());
      }
      const IrrepresentableReport rep =
          irrepresentable_check(c, lam, bstar, d.r_limit);
      std::cout << "irrepresentable: satisfied " << (rep.satisfied ? "yes" : "no")
                << ", margin " << rep.margin;
      if (!rep.note.empty()) std::cout << " (" << rep.note << ")";
      std::cout << "\n";
      json lhs = json::array();
      for (Eigen::Index i = 0; i < rep.lhs.size(); ++i) lhs.push_back(rep.lhs[i]);
      out["irrepresentable"] = {{"satisfied", rep.satisfied},
                                {"margin", rep.margin},
                                {"lhs", std::move(lhs)},
                                {"note", rep.note}};
    } else {
      throw ParseError("unknown check: " + check);
    }
  }

  if (!d.out.empty()) atomic_write(d.out, out.dump(2) + "\n");
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"structured elastic net: l1 plus graph-coupled quadratic penalties for GLMs"};
  app.require_subcommand(1);

  FitFlags fit_flags;
  CLI::App* fit = app.add_subcommand("fit", "solve one penalized fit");
  add_solver_flags(fit, fit_flags);
  fit->add_option("--lambda1", fit_flags.lambda1, "l1 penalty level");
  fit->add_option("--lambda2", fit_flags.lambda2, "quadratic penalty level");
  fit->add_option("--weights", fit_flags.weights_path, "l1 weight vector file");
  fit->add_flag("--adaptive", fit_flags.adaptive, "two-step adaptive fit");
  fit->add_option("--gamma", fit_flags.gamma, "adaptive weight exponent");
  fit->add_option("--weight-cap", fit_flags.weight_cap, "adaptive weight cap");
  fit->add_option("--init", fit_flags.init, "ridge, ridge-structured or file:PATH");
  fit->add_option("--init-lambda2", fit_flags.init_lambda2,
                  "lambda2 for the ridge initial estimator");
  fit->add_option("--out", fit_flags.out, "output JSON path");

  FitFlags path_flags;
  int path_grid_size = 50;
  CLI::App* path = app.add_subcommand("path", "lambda1 path at fixed lambda2");
  add_solver_flags(path, path_flags);
  path->add_option("--lambda2", path_flags.lambda2, "quadratic penalty level");
  path->add_option("--grid-size", path_grid_size, "number of lambda1 grid points");
  path->add_option("--weights", path_flags.weights_path, "l1 weight vector file");
  path_flags.out = "path.json";
  path->add_option("--out", path_flags.out, "output JSON path");

  FitFlags tune_fit_flags;
  TuneFlags tune_flags;
  CLI::App* tune = app.add_subcommand("tune", "cross-validate (lambda1, lambda2)");
  add_solver_flags(tune, tune_fit_flags);
  tune->add_option("--folds", tune_flags.folds, "cross-validation folds");
  tune->add_option("--grid-size", tune_flags.grid_size, "lambda1 grid points");
  tune->add_option("--lambda2-grid", tune_flags.lambda2_grid, "lambda2 grid")
      ->delimiter(',');
  tune->add_option("--seed", tune_flags.seed, "fold shuffle seed");
  tune->add_option("--criterion", tune_flags.criterion, "deviance or misclass");
  tune->add_option("--weights", tune_fit_flags.weights_path, "l1 weight vector file");
  tune_fit_flags.out = "tune.json";
  tune->add_option("--out", tune_fit_flags.out, "output JSON path");

  SimulateFlags sim_flags;
  CLI::App* sim = app.add_subcommand("simulate", "benchmark harness");
  sim->add_option("--config", sim_flags.config, "benchmark configuration JSON");
  sim->add_option("--scenario", sim_flags.scenario, "bump, block, surface or custom");
  sim->add_option("--replicates", sim_flags.replicates, "number of replicates");
  sim->add_option("--seed", sim_flags.seed, "base seed");
  sim->add_option("--methods", sim_flags.methods,
                  "subset of ridge,gridge,lasso,enet,senet,ada_senet")
      ->delimiter(',');
  sim->add_option("--grid-size", sim_flags.grid_size, "lambda1 grid points");
  sim->add_option("--noise-sd", sim_flags.noise_sd, "noise standard deviation");
  sim->add_option("--threads", sim_flags.threads, "worker threads (0 = default)");
  sim->add_option("--out", sim_flags.out, "report JSON path");
  sim->add_option("--coefs", sim_flags.coefs, "also dump selected coefficients CSV");
  sim->add_flag("--table", sim_flags.table, "print the summary table");

  GraphFlags graph_flags;
  CLI::App* graph = app.add_subcommand("graph", "build a structure graph file");
  graph->add_option("spec", graph_flags.spec, "path:N, grid:RxC or knn:K")->required();
  graph->add_option("--data", graph_flags.data, "data CSV for knn graphs");
  graph->add_option("--out", graph_flags.out, "graph JSON path");
  graph->add_option("--penalty-out", graph_flags.penalty_out,
                    "also write penalty triplets");

  DiagnoseFlags diag_flags;
  CLI::App* diag = app.add_subcommand("diagnose", "checks on a stored fit");
  diag->add_option("--fit", diag_flags.fit_path, "fit JSON file")->required();
  diag->add_option("--data", diag_flags.data, "data CSV (default: stored path)");
  diag->add_option("--graph", diag_flags.graph, "graph spec (default: stored spec)");
  diag->add_option("--check", diag_flags.checks,
                   "kkt, df, grouping, decorrelation, irrepresentable or all")
      ->delimiter(',');
  diag->add_option("--c-matrix", diag_flags.c_matrix,
                   "cross-product CSV for the irrepresentable check");
  diag->add_option("--beta-star", diag_flags.beta_star,
                   "true coefficient file for the irrepresentable check");
  diag->add_option("--r-limit", diag_flags.r_limit, "limiting penalty ratio");
  diag->add_option("--out", diag_flags.out, "also write results as JSON");

  int rc = 0;
  fit->callback([&]() { rc = run_fit(fit_flags); });
  path->callback([&]() { rc = run_path(path_flags, path_grid_size); });
  tune->callback([&]() { rc = run_tune(tune_fit_flags, tune_flags); });
  sim->callback([&]() { rc = run_simulate(sim, sim_flags); });
  graph->callback([&]() { rc = run_graph(graph_flags); });
  diag->callback([&]() { rc = run_diagnose(diag_flags); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  } catch (const senet::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return rc;
}
