#pragma once

#include <optional>
#include <string>

#include "senet/solver.hpp"

namespace senet {

// Selection quality of an estimate against a known truth. Degenerate
// denominators (no true actives, or no true zeros) leave the corresponding
// rate unset rather than forcing 0.
struct SelectionReport {
  std::optional<double> sensitivity;  // |est ∩ true| / |true|
  std::optional<double> specificity;  // |est^c ∩ true^c| / |true^c|
  double l1_error = 0.0;              // ||beta_hat - beta_star||_1
  // mean_j (beta_hat_j - beta_star_j)^2; equals the prediction error per
  // coordinate when the design is orthonormal
  double prediction_error = 0.0;
  int true_active = 0;
  int estimated_active = 0;
};

SelectionReport selection_metrics(const Vector& beta_hat,
                                  const Vector& beta_star, double tol = 1e-10);

// Independent recomputation of the solver's certificate. Ridge fits report
// the normal-equation residual; penalized fits report the max violation of
// the stationarity equalities (active coordinates) and subgradient bounds
// (zero coordinates). cfg supplies fallback l1 weights for fits that lack
// them (for example fits reloaded from disk).
double kkt_residual(const FitResult& fit, const Dataset& data,
                    const GlmFamily& fam, const PenaltyMatrix& lam,
                    const FitConfig& cfg = FitConfig{});

// Bound on |beta_1 + s beta_2| for p=2 fits whose quadratic penalty is the
// normalized two-vertex coupling 0.5 [[1, s], [s, 1]]:
//   |beta_1 + s beta_2| <= (2 lambda2)^(-1) sqrt(2 (1 + s rho)) ||y||.
// Applies only when -s beta_1 beta_2 > 0; `satisfied` compares against the
// bound plus a slack of 1e-9 + kkt_residual / lambda2 to absorb solver
// tolerance.
struct GroupingBound {
  double bound = 0.0;
  double lhs = 0.0;
  bool applicable = false;
  bool satisfied = false;
};

GroupingBound grouping_bound(const FitResult& fit, const PenaltyMatrix& lam,
                             double rho, int s, double lambda2, double y_norm);

// Penalized cross-product decomposition: c_tilde = X'X + lambda2 L,
// v_diag_j = 1 + lambda2 sum_k |l_jk| (whole row, diagonal included), and
// r = V^(-1/2) c_tilde V^(-1/2), so c_tilde = V^(1/2) R V^(1/2) exactly.
struct DecorrelatedMatrices {
  Matrix c_tilde;
  Vector v_diag;
  Matrix r;
};

DecorrelatedMatrices decorrelated_matrices(const Dataset& data,
                                           const PenaltyMatrix& lam,
                                           double lambda2);

// Sign-recovery condition on the population cross-product C: with A the
// support of beta_star, s_A its signs, and r_limit the limiting penalty
// ratio, every component of
//   | -C_{A^c A} C_A^{-1} (s_A + 2 r_limit L_A beta*_A)
//     + 2 r_limit L_{A^c A} beta*_A |
// must be <= 1. Empty A or empty A^c is trivially satisfied with a note.
struct IrrepresentableReport {
  Vector lhs;       // one entry per coordinate outside the support
  bool satisfied = false;
  double margin = 0.0;  // 1 - max lhs (1 when lhs is empty)
  std::string note;
};

IrrepresentableReport irrepresentable_check(const Matrix& c,
                                            const PenaltyMatrix& lam,
                                            const Vector& beta_star,
                                            double r_limit);

// Weighted-ridge rewrite of the fitted degrees of freedom, restricted to the
// active set:
//   df = trace(X_A (X_A'X_A + (lambda1/2) diag(omega_j / |beta_j|)
//                 + lambda2 L_A)^(-1) X_A') [+ 1 for an intercept].
// A heuristic report, not a model selection criterion.
double df_heuristic(const FitResult& fit, const Dataset& data,
                    const PenaltyMatrix& lam, const FitConfig& cfg = FitConfig{});

}  // namespace senet
