#include "senet/adaptive.hpp"

#include <cmath>

namespace senet {

Vector compute_weights(const Vector& beta_init, double gamma, double cap) {
  if (!(gamma > 0.0) || !std::isfinite(gamma)) {
    throw InvalidParameter("adaptive gamma must be positive and finite");
  }
  if (!(cap >= 1.0) || !std::isfinite(cap)) {
    throw InvalidParameter("adaptive weight cap must be at least 1 and finite");
  }
  Vector w(beta_init.size());
  for (Eigen::Index j = 0; j < beta_init.size(); ++j) {
    const double a = std::abs(beta_init[j]);
    if (!std::isfinite(a)) {
      throw InvalidParameter("initial coefficients must be finite");
    }
    w[j] = a == 0.0 ? cap : std::min(std::pow(a, -gamma), cap);
  }
  return w;
}

FitResult adaptive_fit(const Dataset& data, const GlmFamily& fam,
                       const PenaltyMatrix& lam, const FitConfig& cfg,
                       const AdaptiveConfig& acfg, AdaptiveInfo* info) {
  Vector init;
  std::string kind;
  if (acfg.init == AdaptiveConfig::Init::user) {
    if (acfg.user_init.size() != data.p()) {
      throw InvalidDimension("user initial estimator length does not match feature count");
    }
    init = acfg.user_init;
    kind = "user";
  } else {
    const bool structured = acfg.init == AdaptiveConfig::Init::ridge_structured;
    kind = structured ? "ridge-structured" : "ridge";
    if (!(acfg.init_lambda2 >= 0.0) || !std::isfinite(acfg.init_lambda2)) {
      throw InvalidParameter("initial estimator lambda2 must be nonnegative and finite");
    }
    FitConfig init_cfg = cfg;
    init_cfg.lambda1 = 0.0;
    init_cfg.lambda2 = acfg.init_lambda2;
    init_cfg.l1_weights.resize(0);
    try {
      const PenaltyMatrix ident = PenaltyMatrix::identity(data.p());
      const FitResult first =
          solve_glm(data, fam, structured ? lam : ident, init_cfg);
      if (!first.converged) {
        throw Error("initial estimator did not converge");
      }
      init = first.beta;
    } catch (const std::exception& e) {
      throw AdaptiveInitError(std::string("adaptive initial estimator failed: ") +
                              e.what());
    }
  }

  const Vector weights = compute_weights(init, acfg.gamma, acfg.weight_cap);
  FitConfig final_cfg = cfg;
  final_cfg.l1_weights = weights;
  FitResult fit = solve_glm(data, fam, lam, final_cfg);
  fit.method = "adaptive-" + fit.method;
  fit.log.push_back("adaptive weights from " + kind +
                    " initial estimator, gamma=" + std::to_string(acfg.gamma));
  if (info) {
    info->init_kind = kind;
    info->init_lambda2 =
        acfg.init == AdaptiveConfig::Init::user ? 0.0 : acfg.init_lambda2;
    info->init_beta = init;
    info->weights = weights;
  }
  return fit;
}

}  // namespace senet
