// End-to-end acceptance checks. Each criterion prints one PASS/FAIL line;
// the exit code is the number of failures. Budgets are wall-clock seconds
// measured per criterion and enforced as part of the pass condition.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "senet/adaptive.hpp"
#include "senet/diagnostics.hpp"
#include "senet/glm.hpp"
#include "senet/graph.hpp"
#include "senet/io.hpp"
#include "senet/rng.hpp"
#include "senet/simulate.hpp"
#include "senet/solver.hpp"

using namespace senet;

namespace {

struct Line {
  int id = 0;
  bool pass = false;
  std::string text;
};

std::vector<Line> lines;

void report(int id, bool pass, const std::string& text) {
  lines.push_back({id, pass, text});
  std::cerr << "criterion " << id << (pass ? " ok: " : " FAILED: ") << text << "\n";
}

double seconds_since(const std::chrono::steady_clock::time_point& t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
      .count();
}

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.4g", v);
  return buf;
}

// certificate registry for criterion 2: every converged fit produced directly
// by this binary is re-verified with the independent diagnostics routine
struct CertStats {
  double max_gaussian = 0.0;
  double max_glm = 0.0;
  int n_gaussian = 0;
  int n_glm = 0;
  int not_converged = 0;
};

CertStats certs;

void register_fit(const FitResult& fit, const Dataset& data, const GlmFamily& fam,
                  const PenaltyMatrix& lam) {
  if (!fit.converged) {
    ++certs.not_converged;
    return;
  }
  const double r = kkt_residual(fit, data, fam, lam);
  if (fam.family == Family::gaussian) {
    certs.max_gaussian = std::max(certs.max_gaussian, r);
    ++certs.n_gaussian;
  } else {
    certs.max_glm = std::max(certs.max_glm, r);
    ++certs.n_glm;
  }
}

Dataset random_centered(Rng& rng, int n, int p) {
  Dataset d;
  d.X.resize(n, p);
  d.y.resize(n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < p; ++j) d.X(i, j) = rng.normal();
    d.y[i] = rng.normal();
  }
  d.X.rowwise() -= d.X.colwise().mean();
  d.y.array() -= d.y.mean();
  return d;
}

PenaltyMatrix random_graph_penalty(Rng& rng, int p) {
  std::vector<GraphEdge> edges;
  for (int u = 0; u < p; ++u) {
    for (int v = u + 1; v < p; ++v) {
      if (rng.uniform() < 0.45) edges.push_back({u, v, rng.uniform(0.1, 2.0)});
    }
  }
  if (edges.empty()) edges.push_back({0, p > 1 ? 1 : 0, 1.0});
  if (p < 2) return PenaltyMatrix::identity(1);
  return PenaltyMatrix::from_graph(StructuredGraph(p, edges));
}

double objective_ref(const Dataset& d, const GlmFamily& fam,
                     const PenaltyMatrix& lam, double lambda1, double lambda2,
                     const Vector& omega, double beta0, const Vector& beta) {
  double j = total_loss(fam, d, beta0, beta);
  for (Eigen::Index k = 0; k < beta.size(); ++k) {
    j += lambda1 * omega[k] * std::abs(beta[k]);
  }
  j += lambda2 * beta.dot(lam.matrix() * beta);
  return j;
}

const MethodSummary& summary_for(const BenchmarkReport& r, Method m) {
  for (const MethodSummary& s : r.summaries) {
    if (s.method == m) return s;
  }
  throw Error("method missing from report");
}

// ---------------------------------------------------------------------------

void criterion1_oracle_equivalence() {
  const auto t0 = std::chrono::steady_clock::now();
  Rng rng(1001);
  int oracle_ok = 0, unique_cases = 0;
  double max_obj = 0.0, max_coef = 0.0;
  bool pass = true;

  for (int rep = 0; rep < 200; ++rep) {
    const int p = 2 + static_cast<int>(rng.uniform_int(5));   // 2..6
    const int n = 5 + static_cast<int>(rng.uniform_int(16));  // 5..20
    Dataset d = random_centered(rng, n, p);
    const PenaltyMatrix lam = random_graph_penalty(rng, p);

    FitConfig cfg;
    cfg.lambda1 = std::exp(rng.uniform(std::log(0.01), std::log(10.0)));
    cfg.lambda2 = std::exp(rng.uniform(std::log(0.01), std::log(10.0)));
    cfg.fit_intercept = rep % 2 == 0;

    const FitResult cd = solve_gaussian(d, lam, cfg);
    const FitResult oracle = brute_force_oracle(d, lam, cfg);
    register_fit(cd, d, GlmFamily::gaussian(), lam);

    const Vector omega = Vector::Ones(p);
    const double j_cd = objective_ref(d, GlmFamily::gaussian(), lam, cfg.lambda1,
                                      cfg.lambda2, omega, cd.beta0, cd.beta);
    const double j_or = objective_ref(d, GlmFamily::gaussian(), lam, cfg.lambda1,
                                      cfg.lambda2, omega, 0.0, oracle.beta);
    const double rel = std::abs(j_cd - j_or) / (1.0 + std::abs(j_or));
    max_obj = std::max(max_obj, rel);
    if (rel > 1e-7 || !cd.converged) pass = false;
    ++oracle_ok;

    const Matrix curvature =
        d.X.transpose() * d.X + 2.0 * cfg.lambda2 * lam.matrix();
    const Eigen::SelfAdjointEigenSolver<Matrix> es(curvature);
    if (es.eigenvalues().minCoeff() > 1e-6) {
      ++unique_cases;
      const double diff = (cd.beta - oracle.beta).cwiseAbs().maxCoeff();
      max_coef = std::max(max_coef, diff);
      if (diff > 1e-6) pass = false;
    }
  }

  const double secs = seconds_since(t0);
  if (secs >= 60.0) pass = false;
  report(1, pass,
         "oracle equivalence on 200 random instances: max relative objective gap " +
             fmt(max_obj) + " (bound 1e-7), max coefficient gap " + fmt(max_coef) +
             " over " + std::to_string(unique_cases) +
             " strongly convex cases (bound 1e-6), " + fmt(secs) + "s (budget 60s)");
}

void criterion3_grouping() {
  const auto t0 = std::chrono::steady_clock::now();
  Rng rng(3003);
  int applicable = 0, held = 0, collinear_checked = 0;
  double max_collinear_gap = 0.0;
  bool pass = true;

  for (int rep = 0; rep < 500; ++rep) {
    const int s = rep % 2 == 0 ? 1 : -1;
    const bool binomial = rep % 3 == 0;
    const bool exact = rep % 5 == 0;
    const int n = 30 + static_cast<int>(rng.uniform_int(21));

    Dataset d;
    d.X.resize(n, 2);
    d.y.resize(n);
    const double mix = rng.uniform(0.0, 0.9);
    for (int i = 0; i < n; ++i) {
      const double a = rng.normal();
      d.X(i, 0) = a;
      d.X(i, 1) = exact ? -s * a : -s * (mix * a + (1.0 - mix) * rng.normal());
    }
    Vector truth(2);
    truth << rng.uniform(0.5, 2.0), -s * rng.uniform(0.5, 2.0);
    const GlmFamily fam = binomial ? GlmFamily::binomial() : GlmFamily::gaussian();
    for (int i = 0; i < n; ++i) {
      const double f = d.X.row(i).dot(truth);
      d.y[i] = binomial ? (rng.uniform() < fam.mean(f) ? 1.0 : 0.0)
                        : f + rng.normal(0.0, 0.5);
    }
    if (!binomial) {
      d.X.rowwise() -= d.X.colwise().mean();
      d.y.array() -= d.y.mean();
    }

    Matrix coupling(2, 2);
    coupling << 0.5, 0.5 * s, 0.5 * s, 0.5;
    const PenaltyMatrix lam = PenaltyMatrix::from_matrix(coupling);

    FitConfig cfg;
    cfg.lambda1 = std::exp(rng.uniform(std::log(0.01), std::log(1.0)));
    cfg.lambda2 = std::exp(rng.uniform(std::log(0.1), std::log(5.0)));
    cfg.fit_intercept = false;
    if (exact) {
      cfg.coord_tol = 1e-12;
      cfg.irls_tol = 1e-10;
    }
    const FitResult fit = solve_glm(d, fam, lam, cfg);
    register_fit(fit, d, fam, lam);
    if (!fit.converged) {
      pass = false;
      continue;
    }

    if (exact) {
      ++collinear_checked;
      const double gap = std::abs(fit.beta[0] + s * fit.beta[1]);
      max_collinear_gap = std::max(max_collinear_gap, gap);
      if (gap > 1e-8) pass = false;
    }

    const double rho =
        d.X.col(0).dot(d.X.col(1)) / (d.X.col(0).norm() * d.X.col(1).norm());
    const GroupingBound gb =
        grouping_bound(fit, lam, rho, s, cfg.lambda2, d.y.norm());
    if (gb.applicable) {
      ++applicable;
      if (gb.satisfied) ++held;
      else pass = false;
    }
  }

  if (applicable == 0 || held != applicable) pass = false;
  const double secs = seconds_since(t0);
  if (secs >= 60.0) pass = false;
  report(3, pass,
         "grouping bound held in " + std::to_string(held) + "/" +
             std::to_string(applicable) +
             " applicable cases of 500 fits; max |b1 + s b2| on " +
             std::to_string(collinear_checked) + " exactly collinear designs " +
             fmt(max_collinear_gap) + " (bound 1e-8), " + fmt(secs) +
             "s (budget 60s)");
}

void criterion2_certificates() {
  // extra sweep so binomial and poisson certificates are exercised broadly
  Rng rng(2002);
  for (int rep = 0; rep < 60; ++rep) {
    const int p = 2 + static_cast<int>(rng.uniform_int(5));
    const int n = 30 + static_cast<int>(rng.uniform_int(51));
    const bool poisson = rep % 2 == 0;
    const GlmFamily fam = poisson ? GlmFamily::poisson() : GlmFamily::binomial();

    Dataset d;
    d.X.resize(n, p);
    d.y.resize(n);
    Vector truth(p);
    for (int j = 0; j < p; ++j) {
      truth[j] = rng.uniform() < 0.5 ? 0.0 : rng.uniform(-0.8, 0.8);
    }
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < p; ++j) d.X(i, j) = rng.uniform(-1.0, 1.0);
      const double f = d.X.row(i).dot(truth);
      if (poisson) {
        const double mu = fam.mean(f);
        double u = rng.uniform(), c = std::exp(-mu), acc = c;
        int k = 0;
        while (u > acc && k < 60) {
          ++k;
          c *= mu / k;
          acc += c;
        }
        d.y[i] = k;
      } else {
        d.y[i] = rng.uniform() < fam.mean(f) ? 1.0 : 0.0;
      }
    }

    const PenaltyMatrix lam = random_graph_penalty(rng, p);
    FitConfig cfg;
    cfg.lambda1 = std::exp(rng.uniform(std::log(0.01), std::log(2.0)));
    cfg.lambda2 = std::exp(rng.uniform(std::log(0.01), std::log(5.0)));
    const FitResult fit = solve_glm(d, fam, lam, cfg);
    register_fit(fit, d, fam, lam);
  }

  const bool pass = certs.max_gaussian <= 1e-6 && certs.max_glm <= 1e-5 &&
                    certs.n_gaussian > 0 && certs.n_glm > 0;
  report(2, pass,
         "stationarity certificates recomputed independently: max " +
             fmt(certs.max_gaussian) + " over " + std::to_string(certs.n_gaussian) +
             " gaussian fits (bound 1e-6), max " + fmt(certs.max_glm) + " over " +
             std::to_string(certs.n_glm) + " binomial/poisson fits (bound 1e-5), " +
             std::to_string(certs.not_converged) + " non-converged fits excluded");
}

void criterion4_bump() {
  const auto t0 = std::chrono::steady_clock::now();
  SimSpec spec;
  spec.scenario = Scenario::bump;
  spec.replicates = 10;
  spec.methods = {Method::ridge, Method::gridge, Method::lasso,
                  Method::enet, Method::senet, Method::ada_senet};
  const BenchmarkReport r = run_benchmark(spec);

  const MethodSummary& lasso = summary_for(r, Method::lasso);
  const MethodSummary& senet = summary_for(r, Method::senet);
  const MethodSummary& ada = summary_for(r, Method::ada_senet);

  bool pass = r.warnings.empty();
  const bool ordering = ada.l1_mean <= senet.l1_mean && senet.l1_mean < lasso.l1_mean;
  const bool spec_gap = ada.spec_mean && senet.spec_mean &&
                        *ada.spec_mean >= *senet.spec_mean + 0.1;
  const bool window = ada.l1_mean >= 0.232 * 0.7 && ada.l1_mean <= 0.232 * 1.3;
  pass = pass && ordering && spec_gap && window;

  const double secs = seconds_since(t0);
  if (secs >= 600.0) pass = false;
  report(4, pass,
         "bumpy chain, 10 replicates: mean relative l1 ada " + fmt(ada.l1_mean) +
             " <= senet " + fmt(senet.l1_mean) + " < lasso " + fmt(lasso.l1_mean) +
             (ordering ? " (ordering holds)" : " (ORDERING VIOLATED)") +
             "; specificity ada " + fmt(ada.spec_mean.value_or(-1)) +
             " vs senet " + fmt(senet.spec_mean.value_or(-1)) +
             " (gap >= 0.1 " + (spec_gap ? "holds" : "VIOLATED") +
             "); ada l1 in [0.162, 0.302] " + (window ? "holds" : "VIOLATED") +
             ", " + fmt(secs) + "s (budget 600s)");
}

void criterion5_block() {
  const auto t0 = std::chrono::steady_clock::now();
  SimSpec spec;
  spec.scenario = Scenario::block;
  spec.replicates = 10;
  spec.methods = {Method::ridge, Method::gridge, Method::lasso,
                  Method::enet, Method::senet, Method::ada_senet};
  const BenchmarkReport r = run_benchmark(spec);

  const MethodSummary& lasso = summary_for(r, Method::lasso);
  const MethodSummary& ada = summary_for(r, Method::ada_senet);

  bool pass = r.warnings.empty();
  const bool halved = ada.l1_mean < 0.5 * lasso.l1_mean;
  const bool sens = ada.sens_mean && *ada.sens_mean >= 0.9;
  pass = pass && halved && sens;

  const double secs = seconds_since(t0);
  if (secs >= 600.0) pass = false;
  report(5, pass,
         "blocky chain, 10 replicates: mean relative l1 ada " + fmt(ada.l1_mean) +
             " vs lasso " + fmt(lasso.l1_mean) + " (ada < half of lasso " +
             (halved ? "holds" : "VIOLATED") + "); ada sensitivity " +
             fmt(ada.sens_mean.value_or(-1)) + " (>= 0.9 " +
             (sens ? "holds" : "VIOLATED") + "), " + fmt(secs) +
             "s (budget 600s)");
}

void criterion6_surface() {
  const auto t0 = std::chrono::steady_clock::now();
  SimSpec spec;
  spec.scenario = Scenario::surface;
  spec.replicates = 10;
  spec.methods = {Method::ridge, Method::lasso, Method::ada_senet};
  const BenchmarkReport r = run_benchmark(spec);

  const MethodSummary& ridge = summary_for(r, Method::ridge);
  const MethodSummary& lasso = summary_for(r, Method::lasso);
  const MethodSummary& ada = summary_for(r, Method::ada_senet);

  const double ridge_pe = 100.0 * ridge.pe_mean;
  const double lasso_pe = 100.0 * lasso.pe_mean;
  const double ada_pe = 100.0 * ada.pe_mean;

  bool pass = r.warnings.empty();
  const bool beats = ada_pe < lasso_pe && ada_pe < ridge_pe;
  const bool w_ada = ada_pe >= 0.56 * 0.65 && ada_pe <= 0.56 * 1.35;
  const bool w_lasso = lasso_pe >= 1.31 * 0.65 && lasso_pe <= 1.31 * 1.35;
  const bool w_ridge = ridge_pe >= 1.20 * 0.65 && ridge_pe <= 1.20 * 1.35;
  pass = pass && beats && w_ada && w_lasso && w_ridge;

  const double secs = seconds_since(t0);
  if (secs >= 300.0) pass = false;
  report(6, pass,
         "surface, 10 replicates, pe x 100: ada " + fmt(ada_pe) + " (window [" +
             fmt(0.56 * 0.65) + ", " + fmt(0.56 * 1.35) + "] " +
             (w_ada ? "holds" : "VIOLATED") + "), lasso " + fmt(lasso_pe) +
             " (window " + (w_lasso ? "holds" : "VIOLATED") + "), ridge " +
             fmt(ridge_pe) + " (window " + (w_ridge ? "holds" : "VIOLATED") +
             "), ada beats both " + (beats ? "holds" : "VIOLATED") + ", " +
             fmt(secs) + "s (budget 300s)");
}

void criterion7_selection_trend() {
  const auto t0 = std::chrono::steady_clock::now();
  Vector beta = Vector::Zero(8);
  beta[0] = beta[1] = beta[2] = 1.0;  // constant on a connected chain segment
  const PenaltyMatrix lam = PenaltyMatrix::from_graph(StructuredGraph::path(8));

  ConsistencySpec ada;
  ada.beta_star = beta;
  ada.c_target = Matrix::Identity(8, 8);
  ada.n_grid = {100, 2000};
  ada.replicates = 200;
  ada.adaptive = true;
  ada.gamma = 1.0;
  ada.init_lambda2 = 1.0;
  ada.l1_rate = RateRule{0.06, 0.7};  // lambda1 grows faster than sqrt(n)
  ada.l2_rate = RateRule{0.2, 0.5};
  ada.seed = 11;
  const ConsistencyReport ra = verify_consistency(ada, lam);

  ConsistencySpec plain = ada;
  plain.adaptive = false;
  plain.l1_rate = RateRule{1.0, 0.5};  // lambda1 proportional to sqrt(n)
  const ConsistencyReport rp = verify_consistency(plain, lam);

  const double a_small = ra.points[0].false_selection_rate;
  const double a_large = ra.points[1].false_selection_rate;
  const double p_small = rp.points[0].false_selection_rate;
  const double p_large = rp.points[1].false_selection_rate;

  bool pass = true;
  const bool baseline = a_small >= 0.2;  // the trend must be observable
  const bool halving = a_large <= 0.5 * a_small;
  const bool no_halving = p_large > 0.5 * p_small;
  pass = baseline && halving && no_halving;

  const double secs = seconds_since(t0);
  if (secs >= 300.0) pass = false;
  report(7, pass,
         "selection trend over 200 replicates: adaptive false selection " +
             fmt(a_small) + " at n=100 vs " + fmt(a_large) +
             " at n=2000 (halving " + (halving && baseline ? "holds" : "VIOLATED") +
             "); sqrt(n)-rate non-adaptive " + fmt(p_small) + " vs " + fmt(p_large) +
             " (no halving " + (no_halving ? "holds" : "VIOLATED") + "), " +
             fmt(secs) + "s (budget 300s)");
}

void criterion8_sign_condition() {
  bool pass = true;
  std::string note;

  // hand-built violated instance
  Matrix c(3, 3);
  c << 1.0, 0.9, 0.12, 0.9, 1.0, 0.0, 0.12, 0.0, 1.0;
  Vector truth(3);
  truth << 1.0, -1.0, 0.0;
  const IrrepresentableReport bad =
      irrepresentable_check(c, PenaltyMatrix::identity(3), truth, 0.0);
  if (bad.satisfied || std::abs(bad.lhs[0] - 1.2) > 1e-12) pass = false;

  // hand-built satisfied instance
  Matrix cg(3, 3);
  cg << 1.0, 0.3, 0.1, 0.3, 1.0, 0.0, 0.1, 0.0, 1.0;
  const IrrepresentableReport good =
      irrepresentable_check(cg, PenaltyMatrix::identity(3), truth, 0.0);
  if (!good.satisfied) pass = false;

  // general instance with a penalty ratio, against a dense reference
  Rng rng(8008);
  double max_gap = 0.0;
  for (int rep = 0; rep < 25; ++rep) {
    const int p = 4 + static_cast<int>(rng.uniform_int(3));
    Matrix base(p + 4, p);
    for (int i = 0; i < p + 4; ++i)
      for (int j = 0; j < p; ++j) base(i, j) = rng.normal();
    const Matrix cc = base.transpose() * base / (p + 4.0);
    const PenaltyMatrix lam = random_graph_penalty(rng, p);
    Vector bs = Vector::Zero(p);
    int na = 0;
    for (int j = 0; j < p; ++j) {
      if (rng.uniform() < 0.5) {
        bs[j] = rng.uniform(-2.0, 2.0);
        if (bs[j] != 0.0) ++na;
      }
    }
    if (na == 0 || na == p) continue;
    const double r_limit = rng.uniform(0.0, 1.5);
    const IrrepresentableReport rep_out = irrepresentable_check(cc, lam, bs, r_limit);

    std::vector<int> a, ac;
    for (int j = 0; j < p; ++j) (bs[j] != 0.0 ? a : ac).push_back(j);
    const auto nA = static_cast<Eigen::Index>(a.size());
    const auto nC = static_cast<Eigen::Index>(ac.size());
    Matrix ca(nA, nA), cac(nC, nA), la(nA, nA), lac(nC, nA);
    Vector sa(nA), ba(nA);
    for (Eigen::Index i = 0; i < nA; ++i) {
      sa[i] = bs[a[i]] > 0 ? 1.0 : -1.0;
      ba[i] = bs[a[i]];
      for (Eigen::Index j = 0; j < nA; ++j) {
        ca(i, j) = cc(a[i], a[j]);
        la(i, j) = lam.matrix()(a[i], a[j]);
      }
    }
    for (Eigen::Index i = 0; i < nC; ++i) {
      for (Eigen::Index j = 0; j < nA; ++j) {
        cac(i, j) = cc(ac[i], a[j]);
        lac(i, j) = lam.matrix()(ac[i], a[j]);
      }
    }
    const Vector inner = sa + 2.0 * r_limit * la * ba;
    const Vector expect =
        (-cac * ca.fullPivLu().solve(inner) + 2.0 * r_limit * lac * ba)
            .cwiseAbs();
    const double gap = (rep_out.lhs - expect).cwiseAbs().maxCoeff();
    max_gap = std::max(max_gap, gap);
    if (gap > 1e-12) pass = false;

    // a zero penalty reduces the condition to the plain lasso form
    const PenaltyMatrix zero = PenaltyMatrix::from_matrix(Matrix::Zero(p, p));
    const IrrepresentableReport r0 = irrepresentable_check(cc, zero, bs, 0.0);
    const IrrepresentableReport r5 = irrepresentable_check(cc, zero, bs, r_limit);
    if ((r0.lhs - r5.lhs).cwiseAbs().maxCoeff() > 1e-14) pass = false;
  }

  report(8, pass,
         "sign-recovery checker: violated hand instance lhs 1.2 and satisfied"
         " instance classified correctly; margins match dense evaluation to " +
             fmt(max_gap) + " (bound 1e-12); zero-penalty reduction exact");
}

void criterion9_structural_identities() {
  Rng rng(9009);
  double worst_aug = 0.0, worst_energy = 0.0, worst_decor = 0.0, worst_grad = 0.0;
  bool pass = true;

  for (int rep = 0; rep < 50; ++rep) {
    const int p = 2 + static_cast<int>(rng.uniform_int(7));
    const int n = p + 2 + static_cast<int>(rng.uniform_int(20));
    Dataset d = random_centered(rng, n, p);
    const PenaltyMatrix lam = random_graph_penalty(rng, p);
    const double lambda2 = std::exp(rng.uniform(std::log(0.01), std::log(10.0)));
    Vector beta(p);
    for (int j = 0; j < p; ++j) beta[j] = rng.uniform(-2.0, 2.0);

    // synthetic-observation identity for the quadratic penalty
    const Dataset aug = augment_data(d, lam, 2.0 * lambda2);
    const double lhs = total_loss(GlmFamily::gaussian(), aug, 0.0, beta);
    const double rhs = total_loss(GlmFamily::gaussian(), d, 0.0, beta) +
                       lambda2 * beta.dot(lam.matrix() * beta);
    const double aug_gap = std::abs(lhs - rhs) / (1.0 + std::abs(rhs));
    worst_aug = std::max(worst_aug, aug_gap);
    if (aug_gap > 1e-10) pass = false;
  }

  for (int rep = 0; rep < 50; ++rep) {
    const int p = 2 + static_cast<int>(rng.uniform_int(7));
    std::vector<GraphEdge> edges;
    for (int u = 0; u < p; ++u)
      for (int v = u + 1; v < p; ++v)
        if (rng.uniform() < 0.5) edges.push_back({u, v, rng.uniform(0.05, 3.0)});
    if (edges.empty()) edges.push_back({0, 1, 1.0});
    const StructuredGraph g(p, edges);
    const PenaltyMatrix lam = PenaltyMatrix::from_graph(g);
    Vector beta(p);
    for (int j = 0; j < p; ++j) beta[j] = rng.uniform(-2.0, 2.0);

    double edge_sum = 0.0;
    for (const GraphEdge& e : g.edges()) {
      edge_sum += e.weight * (beta[e.u] - beta[e.v]) * (beta[e.u] - beta[e.v]);
    }
    const double quad = beta.dot(lam.matrix() * beta);
    const double gap1 = std::abs(g.edge_energy(beta) - quad);
    const double gap2 = std::abs(edge_sum - quad);
    worst_energy = std::max({worst_energy, gap1, gap2});
    if (gap1 > 1e-10 || gap2 > 1e-10) pass = false;
  }

  for (int rep = 0; rep < 50; ++rep) {
    const int p = 2 + static_cast<int>(rng.uniform_int(7));
    Dataset d = random_centered(rng, p + 5, p);
    const PenaltyMatrix lam = random_graph_penalty(rng, p);
    const double lambda2 = std::exp(rng.uniform(std::log(0.01), std::log(10.0)));
    const DecorrelatedMatrices dm = decorrelated_matrices(d, lam, lambda2);
    const Matrix v_half = dm.v_diag.cwiseSqrt().asDiagonal();
    const double gap = (v_half * dm.r * v_half - dm.c_tilde).cwiseAbs().maxCoeff();
    worst_decor = std::max(worst_decor, gap);
    if (gap > 1e-10) pass = false;
  }

  for (int rep = 0; rep < 50; ++rep) {
    const int fam_pick = static_cast<int>(rng.uniform_int(3));
    const GlmFamily fam = fam_pick == 0   ? GlmFamily::gaussian()
                          : fam_pick == 1 ? GlmFamily::binomial()
                                          : GlmFamily::poisson();
    const int n = 8, p = 3;
    Dataset d;
    d.X.resize(n, p);
    d.y.resize(n);
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < p; ++j) d.X(i, j) = rng.uniform(-1.0, 1.0);
      switch (fam.family) {
        case Family::gaussian: d.y[i] = rng.normal(); break;
        case Family::binomial: d.y[i] = rng.uniform() < 0.5 ? 0.0 : 1.0; break;
        case Family::poisson: d.y[i] = rng.uniform_int(5); break;
      }
    }
    Vector beta(p);
    for (int j = 0; j < p; ++j) beta[j] = rng.uniform(-0.5, 0.5);
    const double beta0 = rng.uniform(-0.5, 0.5);

    Vector mu(n);
    for (int i = 0; i < n; ++i) mu[i] = fam.mean(beta0 + d.X.row(i).dot(beta));
    const Vector grad = -d.X.transpose() * (d.y - mu) / fam.dispersion;
    const double h = 1e-6;
    for (int j = 0; j < p; ++j) {
      Vector bp = beta, bm = beta;
      bp[j] += h;
      bm[j] -= h;
      const double fd =
          (total_loss(fam, d, beta0, bp) - total_loss(fam, d, beta0, bm)) /
          (2.0 * h);
      const double gap = std::abs(fd - grad[j]) / (1.0 + std::abs(grad[j]));
      worst_grad = std::max(worst_grad, gap);
      if (gap > 1e-6) pass = false;
    }
  }

  report(9, pass,
         "structural identities over 50 cases each: augmentation " + fmt(worst_aug) +
             ", edge-sum energy " + fmt(worst_energy) + ", decorrelation " +
             fmt(worst_decor) + " (bounds 1e-10); loss gradient vs finite"
             " differences " + fmt(worst_grad) + " (bound 1e-6)");
}

void criterion10_reporting() {
  bool pass = true;
  Rng rng(1010);

  // degrees-of-freedom limits on a full-rank design
  const int n = 40, p = 6;
  Dataset d = random_centered(rng, n, p);
  const PenaltyMatrix lam = PenaltyMatrix::from_graph(StructuredGraph::path(p));
  FitConfig free_cfg;
  free_cfg.fit_intercept = false;
  const FitResult free_fit = solve_gaussian(d, lam, free_cfg);
  register_fit(free_fit, d, GlmFamily::gaussian(), lam);
  const double df_full = df_heuristic(free_fit, d, lam);
  if (std::abs(df_full - p) > 1e-6) pass = false;

  FitConfig heavy;
  heavy.fit_intercept = false;
  heavy.lambda2 = 1e8;
  const FitResult heavy_fit = solve_gaussian(d, lam, heavy);
  const double df_heavy = df_heuristic(heavy_fit, d, lam);
  // the chain penalty leaves the constant direction unpenalized, so one
  // degree of freedom survives arbitrarily heavy smoothing
  if (df_heavy > 1.01) pass = false;

  FitConfig null_cfg;
  null_cfg.fit_intercept = false;
  null_cfg.lambda1 = 2.0 * lambda1_max(d, GlmFamily::gaussian(), Vector(), false);
  const FitResult null_fit = solve_gaussian(d, lam, null_cfg);
  if (df_heuristic(null_fit, d, lam) != 0.0) pass = false;

  const double df_identity_heavy = df_heuristic(
      solve_gaussian(d, PenaltyMatrix::identity(p), heavy),
      d, PenaltyMatrix::identity(p));
  if (df_identity_heavy > 1e-4) pass = false;

  // penalty share reporting and its round trip through the fit file
  const Matrix signals = gen_signals(60, 20, 77);
  const Vector truth = [&] {
    Vector b = Vector::Zero(20);
    b.segment(5, 6) << 0.4, 0.8, 1.0, 1.0, 0.8, 0.4;
    return b;
  }();
  Dataset raw;
  raw.X = signals;
  raw.y = gen_response(signals, truth, std::sqrt(5.0), 78);
  const Dataset data = standardize(raw, true);
  const PenaltyMatrix chain = PenaltyMatrix::from_graph(StructuredGraph::path(20));
  FitConfig cfg;
  cfg.lambda1 = 0.4;
  cfg.lambda2 = 1.0;
  cfg.fit_intercept = false;
  const FitResult fit = solve_gaussian(data, chain, cfg);
  register_fit(fit, data, GlmFamily::gaussian(), chain);
  if (!fit.converged) pass = false;
  if (std::abs(fit.t1 - fit.beta.cwiseAbs().sum()) > 1e-12) pass = false;
  if (std::abs(fit.t2 - fit.beta.dot(chain.matrix() * fit.beta)) > 1e-12) {
    pass = false;
  }

  const std::string tmp =
      (std::filesystem::temp_directory_path() / "senet_acceptance_fit.json")
          .string();
  write_fit_json(fit, data.record, tmp);
  const StoredFit back = read_fit_json(tmp);
  if (back.fit.t1 != fit.t1 || back.fit.t2 != fit.t2) pass = false;
  if ((back.fit.beta - fit.beta).cwiseAbs().maxCoeff() != 0.0) pass = false;
  std::filesystem::remove(tmp);

  report(10, pass,
         "substituted application checks: df heuristic reaches " + fmt(df_full) +
             " of " + std::to_string(p) + " unpenalized, falls to " + fmt(df_heavy) +
             " under heavy chain smoothing (constant direction survives), 0 on"
             " the null fit, " + fmt(df_identity_heavy) +
             " under a heavy identity penalty; penalty shares t1/t2 match"
             " recomputation and survive the file round trip exactly");
}

}  // namespace

int main() {
  try {
    criterion1_oracle_equivalence();
    criterion3_grouping();
    criterion4_bump();
    criterion5_block();
    criterion6_surface();
    criterion7_selection_trend();
    criterion8_sign_condition();
    criterion9_structural_identities();
    criterion10_reporting();
    criterion2_certificates();  // aggregates fits registered by the others
  } catch (const std::exception& e) {
    std::cout << "acceptance run aborted: " << e.what() << "\n";
    return 99;
  }

  std::sort(lines.begin(), lines.end(),
            [](const Line& a, const Line& b) { return a.id < b.id; });
  int failures = 0;
  for (const Line& line : lines) {
    std::cout << "criterion " << line.id << ": "
              << (line.pass ? "PASS" : "FAIL") << " - " << line.text << "\n";
    if (!line.pass) ++failures;
  }
  std::cout << (failures == 0 ? "all acceptance criteria passed"
                              : std::to_string(failures) + " criteria failed")
            << "\n";
  return failures == 0 ? 0 : 1;
}
