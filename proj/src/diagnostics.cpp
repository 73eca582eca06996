#include "senet/diagnostics.hpp"

#include <algorithm>
#include <cmath>

namespace senet {

namespace {

Vector fit_weights(const FitResult& fit, const FitConfig& cfg, Eigen::Index p) {
  if (fit.l1_weights.size() == p) return fit.l1_weights;
  if (cfg.l1_weights.size() == p) return cfg.l1_weights;
  return Vector::Ones(p);
}

}  // namespace

SelectionReport selection_metrics(const Vector& beta_hat,
                                  const Vector& beta_star, double tol) {
  if (beta_hat.size() != beta_star.size()) {
    throw InvalidDimension("estimate and truth have different lengths");
  }
  if (!(tol >= 0.0)) throw InvalidParameter("selection tolerance must be nonnegative");

  SelectionReport rep;
  int true_pos = 0, true_neg = 0, n_active = 0, n_zero = 0;
  for (Eigen::Index j = 0; j < beta_hat.size(); ++j) {
    const bool est = std::abs(beta_hat[j]) > tol;
    const bool truth = std::abs(beta_star[j]) > tol;
    if (truth) {
      ++n_active;
      if (est) ++true_pos;
    } else {
      ++n_zero;
      if (!est) ++true_neg;
    }
    if (est) ++rep.estimated_active;
  }
  rep.true_active = n_active;
  if (n_active > 0) rep.sensitivity = static_cast<double>(true_pos) / n_active;
  if (n_zero > 0) rep.specificity = static_cast<double>(true_neg) / n_zero;
  rep.l1_error = (beta_hat - beta_star).lpNorm<1>();
  rep.prediction_error =
      (beta_hat - beta_star).squaredNorm() / static_cast<double>(beta_hat.size());
  return rep;
}

double kkt_residual(const FitResult& fit, const Dataset& data,
                    const GlmFamily& fam, const PenaltyMatrix& lam,
                    const FitConfig& cfg) {
  data.validate();
  if (fit.beta.size() != data.p() || lam.dim() != data.p()) {
    throw InvalidDimension("fit or penalty dimension does not match the data");
  }
  if (fit.method == "ridge") {
    const Matrix m = data.X.transpose() * data.X + fit.lambda2 * lam.matrix();
    const Vector rhs = data.X.transpose() * data.y;
    return (m * fit.beta - rhs).lpNorm<Eigen::Infinity>();
  }
  const Vector omega = fit_weights(fit, cfg, data.p());
  return stationarity_residual(data, fam, lam, fit.lambda1, fit.lambda2, omega,
                               fit.intercept, fit.beta0, fit.beta);
}

GroupingBound grouping_bound(const FitResult& fit, const PenaltyMatrix& lam,
                             double rho, int s, double lambda2, double y_norm) {
  if (fit.beta.size() != 2) {
    throw InvalidDimension("grouping bound is defined for p = 2 fits");
  }
  if (s != 1 && s != -1) throw InvalidParameter("s must be +1 or -1");
  if (!(lambda2 > 0.0) || !std::isfinite(lambda2)) {
    throw InvalidParameter("grouping bound requires lambda2 > 0");
  }
  if (std::abs(rho) > 1.0 + 1e-12) {
    throw InvalidParameter("correlation must lie in [-1, 1]");
  }
  if (!(y_norm >= 0.0)) throw InvalidParameter("response norm must be nonnegative");
  if (lam.dim() != 2 || std::abs(lam.matrix()(0, 0) - 0.5) > 1e-10 ||
      std::abs(lam.matrix()(1, 1) - 0.5) > 1e-10 ||
      std::abs(lam.matrix()(0, 1) - 0.5 * s) > 1e-10) {
    throw InvalidPenalty("penalty is not the normalized two-vertex coupling 0.5 [[1, s], [s, 1]]");
  }

  GroupingBound out;
  const double b1 = fit.beta[0], b2 = fit.beta[1];
  out.applicable = -static_cast<double>(s) * b1 * b2 > 0.0;
  out.lhs = std::abs(b1 + s * b2);
  out.bound = std::sqrt(2.0 * std::max(0.0, 1.0 + s * rho)) * y_norm /
              (2.0 * lambda2);
  const double slack = 1e-9 + fit.kkt_residual / lambda2;
  out.satisfied = out.lhs <= out.bound + slack;
  return out;
}

DecorrelatedMatrices decorrelated_matrices(const Dataset& data,
                                           const PenaltyMatrix& lam,
                                           double lambda2) {
  data.validate();
  if (lam.dim() != data.p()) {
    throw InvalidDimension("penalty dimension does not match feature count");
  }
  if (!(lambda2 >= 0.0) || !std::isfinite(lambda2)) {
    throw InvalidParameter("lambda2 must be nonnegative and finite");
  }
  DecorrelatedMatrices out;
  const Matrix& l = lam.matrix();
  out.c_tilde = data.X.transpose() * data.X + lambda2 * l;
  out.v_diag = Vector::Ones(data.p()) +
               lambda2 * l.cwiseAbs().rowwise().sum();
  const Vector inv_sqrt = out.v_diag.cwiseSqrt().cwiseInverse();
  out.r = inv_sqrt.asDiagonal() * out.c_tilde * inv_sqrt.asDiagonal();
  return out;
}

IrrepresentableReport irrepresentable_check(const Matrix& c,
                                            const PenaltyMatrix& lam,
                                            const Vector& beta_star,
                                            double r_limit) {
  const Eigen::Index p = beta_star.size();
  if (c.rows() != p || c.cols() != p || lam.dim() != p) {
    throw InvalidDimension("cross-product, penalty and coefficient dimensions disagree");
  }
  if (!(r_limit >= 0.0) || !std::isfinite(r_limit)) {
    throw InvalidParameter("penalty ratio limit must be nonnegative and finite");
  }

  std::vector<Eigen::Index> active, inactive;
  for (Eigen::Index j = 0; j < p; ++j) {
    (beta_star[j] != 0.0 ? active : inactive).push_back(j);
  }

  IrrepresentableReport out;
  if (active.empty() || inactive.empty()) {
    out.lhs.resize(0);
    out.satisfied = true;
    out.margin = 1.0;
    out.note = active.empty() ? "no active coordinates; condition holds trivially"
                              : "no inactive coordinates; condition holds trivially";
    return out;
  }

  const auto na = static_cast<Eigen::Index>(active.size());
  const auto nc = static_cast<Eigen::Index>(inactive.size());
  Matrix c_aa(na, na), c_ca(nc, na), l_aa(na, na), l_ca(nc, na);
  Vector s_a(na), b_a(na);
  const Matrix& l = lam.matrix();
  for (Eigen::Index a = 0; a < na; ++a) {
    const Eigen::Index ja = active[static_cast<std::size_t>(a)];
    s_a[a] = beta_star[ja] > 0.0 ? 1.0 : -1.0;
    b_a[a] = beta_star[ja];
    for (Eigen::Index b = 0; b < na; ++b) {
      const Eigen::Index jb = active[static_cast<std::size_t>(b)];
      c_aa(a, b) = c(ja, jb);
      l_aa(a, b) = l(ja, jb);
    }
  }
  for (Eigen::Index i = 0; i < nc; ++i) {
    const Eigen::Index ji = inactive[static_cast<std::size_t>(i)];
    for (Eigen::Index b = 0; b < na; ++b) {
      const Eigen::Index jb = active[static_cast<std::size_t>(b)];
      c_ca(i, b) = c(ji, jb);
      l_ca(i, b) = l(ji, jb);
    }
  }

  const Eigen::FullPivLU<Matrix> lu(c_aa);
  if (!lu.isInvertible()) {
    throw SingularSystem("active block of the cross-product matrix is singular");
  }
  const Vector z = lu.solve(s_a + 2.0 * r_limit * (l_aa * b_a));
  out.lhs = (-(c_ca * z) + 2.0 * r_limit * (l_ca * b_a)).cwiseAbs();
  const double max_lhs = out.lhs.maxCoeff();
  out.satisfied = max_lhs <= 1.0;
  out.margin = 1.0 - max_lhs;
  return out;
}

double df_heuristic(const FitResult& fit, const Dataset& data,
                    const PenaltyMatrix& lam, const FitConfig& cfg) {
  data.validate();
  if (fit.beta.size() != data.p() || lam.dim() != data.p()) {
    throw InvalidDimension("fit or penalty dimension does not match the data");
  }
  if (fit.family != Family::gaussian) {
    throw InvalidParameter("degrees-of-freedom heuristic is defined for gaussian fits");
  }

  const double base = fit.intercept ? 1.0 : 0.0;
  if (fit.active_set.empty()) return base;

  const Vector omega = fit_weights(fit, cfg, data.p());
  const auto na = static_cast<Eigen::Index>(fit.active_set.size());
  Matrix xa(data.n(), na);
  for (Eigen::Index a = 0; a < na; ++a) {
    xa.col(a) = data.X.col(fit.active_set[static_cast<std::size_t>(a)]);
  }
  Matrix m = xa.transpose() * xa;
  const Matrix& l = lam.matrix();
  for (Eigen::Index a = 0; a < na; ++a) {
    const int ja = fit.active_set[static_cast<std::size_t>(a)];
    m(a, a) += fit.lambda1 / 2.0 * omega[ja] / std::abs(fit.beta[ja]);
    for (Eigen::Index b = 0; b < na; ++b) {
      m(a, b) += fit.lambda2 * l(ja, fit.active_set[static_cast<std::size_t>(b)]);
    }
  }
  const Eigen::FullPivLU<Matrix> lu(m);
  if (!lu.isInvertible()) {
    throw SingularSystem("weighted-ridge system for the degrees of freedom is singular");
  }
  return (lu.solve(xa.transpose() * xa)).trace() + base;
}

}  // namespace senet
