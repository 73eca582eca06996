#pragma once

#include <string>
#include <vector>

#include "senet/glm.hpp"
#include "senet/graph.hpp"

namespace senet {

// The penalized objective solved throughout:
//
//   J(b0, beta) = sum_i (b(f_i) - y_i f_i)/dispersion
//               + lambda1 * sum_j w_j |beta_j|
//               + lambda2 * beta' L beta
//
// with f_i = b0 + x_i' beta.  For the gaussian family the loss term equals
// ||y - f||^2 / 2 up to a constant, so the subgradient conditions read
//
//   active j : -X_j'(y - mu) + 2 lambda2 (L beta)_j + lambda1 w_j sign(beta_j) = 0
//   zero j   : |-X_j'(y - mu) + 2 lambda2 (L beta)_j| <= lambda1 w_j
//
// and a coordinate update soft-thresholds at lambda1 * w_j with denominator
// X_j'X_j + 2 lambda2 L_jj.

struct FitConfig {
  double lambda1 = 0.0;
  double lambda2 = 0.0;
  Vector l1_weights;  // empty = unweighted; else strictly positive, length p
  bool fit_intercept = true;

  int max_sweeps = 100000;
  double coord_tol = 1e-8;  // max absolute coefficient change per sweep
  int max_irls = 100;
  double irls_tol = 1e-8;   // relative deviance change between iterations

  double kkt_tol = 1e-6;      // stationarity certificate, exact quadratic case
  double kkt_tol_glm = 1e-5;  // certificate at the final IRLS iterate
};

struct FitResult {
  Family family = Family::gaussian;
  std::string method;  // "cd", "irls", "ridge", "oracle"
  double lambda1 = 0.0;
  double lambda2 = 0.0;
  Vector l1_weights;  // as used, always length p
  bool intercept = true;

  // solver scale (standardized when the input dataset was)
  double beta0 = 0.0;
  Vector beta;
  // raw scale via the dataset's standardization record
  double beta0_raw = 0.0;
  Vector beta_raw;

  std::vector<int> active_set;  // |beta_j| > 1e-10 on the solver scale
  double objective = 0.0;       // J at the returned coefficients
  double kkt_residual = 0.0;
  int sweeps = 0;
  int irls_iterations = 0;
  bool converged = false;
  double t1 = 0.0;  // ||beta||_1, solver scale
  double t2 = 0.0;  // beta' L beta, solver scale
  std::vector<std::string> log;
};

struct CoefPath {
  double lambda2 = 0.0;
  Vector lambda1_grid;  // descending
  std::vector<FitResult> fits;
  std::vector<int> warm_from;  // grid index each fit was warm-started from, -1 = cold
};

struct WarmStart {
  double beta0 = 0.0;
  Vector beta;
};

// Synthetic least-squares embedding of the quadratic penalty: stacks
// sqrt(lambda2) * Q under X and zeros under y, so that
// ||y~ - X~ b||^2 = ||y - X b||^2 + lambda2 * b' L b.
Dataset augment_data(const Dataset& data, const PenaltyMatrix& lam, double lambda2);

// Smallest lambda1 for which the all-zero coefficient vector is stationary:
// max_j w_j^-1 |X_j'(y - mu0)| / dispersion, with mu0 the null-model mean
// (the mean response under the canonical link when an intercept is fit).
double lambda1_max(const Dataset& data, const GlmFamily& fam,
                   const Vector& l1_weights = Vector(), bool fit_intercept = true);

// Max violation of the subgradient stationarity conditions at (beta0, beta);
// the quantity certified by FitResult::kkt_residual for "cd"/"irls" fits.
double stationarity_residual(const Dataset& data, const GlmFamily& fam,
                             const PenaltyMatrix& lam, double lambda1,
                             double lambda2, const Vector& l1_weights,
                             bool intercept, double beta0, const Vector& beta);

// Cyclic coordinate descent with active-set iteration on the augmented
// problem.  Converged means the sweep criterion was met and the stationarity
// residual is at or below kkt_tol (the tolerance is tightened and descent
// resumed when the first pass lands above it).
FitResult solve_gaussian(const Dataset& data, const PenaltyMatrix& lam,
                         const FitConfig& cfg, const WarmStart* warm = nullptr);

// Penalized iteratively-reweighted least squares: linearize, solve the
// weighted augmented lasso, accept with step-halving whenever the objective
// would rise.  Gaussian family delegates to solve_gaussian.
FitResult solve_glm(const Dataset& data, const GlmFamily& fam,
                    const PenaltyMatrix& lam, const FitConfig& cfg,
                    const WarmStart* warm = nullptr);

// Descending log-spaced lambda1 grid from lambda1_max down three decades,
// each fit warm-started from the previous one.
CoefPath solve_path(const Dataset& data, const GlmFamily& fam,
                    const PenaltyMatrix& lam, double lambda2, int grid_size,
                    const FitConfig& base);

// Classical generalized ridge via the normal equations
// (X'X + lambda2 L) beta = X'y; kkt_residual stores the normal-equation
// residual max-norm.  Note the quadratic term here follows the textbook
// ||y - Xb||^2 + lambda2 b'Lb convention, which matches J at lambda2/2.
FitResult solve_ridge(const Dataset& data, const PenaltyMatrix& lam,
                      double lambda2);

// Exhaustive sign-pattern search for the gaussian objective: enumerates all
// 3^p sign vectors, solves the stationarity system on each support, keeps
// candidates whose signs and zero-coordinate subgradients are consistent, and
// returns the feasible candidate with the smallest objective.  Deliberately
// independent of the coordinate-descent path; p is capped at 8.  Requires
// centered data when cfg.fit_intercept is set (the intercept is then 0).
FitResult brute_force_oracle(const Dataset& data, const PenaltyMatrix& lam,
                             const FitConfig& cfg);

}  // namespace senet
