#pragma once

#include <string>

#include "senet/solver.hpp"

namespace senet {

// Two-step estimator: fit an initial estimator, turn its coefficients into
// l1 weights omega_j = |beta_j^init|^(-gamma), then solve the weighted
// problem. Zero initial coefficients receive the cap so the weighted problem
// stays well posed; at practical lambda1 the cap excludes those coordinates.

struct AdaptiveConfig {
  enum class Init { ridge, ridge_structured, user };

  double gamma = 1.0;
  double weight_cap = 1e8;
  Init init = Init::ridge;
  // lambda2 level for the ridge-type initial estimators; callers that tune it
  // on a validation set pass the selected value here
  double init_lambda2 = 1.0;
  Vector user_init;  // consulted only when init == Init::user
};

// Details of the first step, filled by adaptive_fit on request.
struct AdaptiveInfo {
  std::string init_kind;
  double init_lambda2 = 0.0;
  Vector init_beta;
  Vector weights;
};

// omega_j = min(|beta_j|^(-gamma), cap); exactly zero entries get the cap
Vector compute_weights(const Vector& beta_init, double gamma = 1.0,
                       double cap = 1e8);

// Step 1 fits the initial estimator (plain ridge by default, structured ridge
// or a user vector on request), step 2 reruns the solver with the derived l1
// weights. The returned fit is tagged "adaptive-" and logs the initial
// estimator; a failing first step throws AdaptiveInitError.
FitResult adaptive_fit(const Dataset& data, const GlmFamily& fam,
                       const PenaltyMatrix& lam, const FitConfig& cfg,
                       const AdaptiveConfig& acfg, AdaptiveInfo* info = nullptr);

}  // namespace senet
