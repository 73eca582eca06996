#include "senet/solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <utility>

namespace senet {

namespace {

constexpr double kActiveTol = 1e-10;

double soft_threshold(double c, double t) {
  if (c > t) return c - t;
  if (c < -t) return c + t;
  return 0.0;
}

Vector effective_weights(const FitConfig& cfg, Eigen::Index p) {
  if (cfg.l1_weights.size() == 0) return Vector::Ones(p);
  if (cfg.l1_weights.size() != p) {
    throw InvalidDimension("l1 weight vector length does not match feature count");
  }
  for (Eigen::Index j = 0; j < p; ++j) {
    const double w = cfg.l1_weights[j];
    if (!(w > 0.0) || !std::isfinite(w)) {
      throw InvalidParameter("l1 weights must be positive and finite");
    }
  }
  return cfg.l1_weights;
}

void validate_common(const Dataset& data, const PenaltyMatrix& lam,
                     const FitConfig& cfg) {
  data.validate();
  if (lam.dim() != data.p()) {
    throw InvalidDimension("penalty dimension does not match feature count");
  }
  if (!(cfg.lambda1 >= 0.0) || !std::isfinite(cfg.lambda1) ||
      !(cfg.lambda2 >= 0.0) || !std::isfinite(cfg.lambda2)) {
    throw InvalidParameter("penalty levels must be nonnegative and finite");
  }
  if (!(cfg.coord_tol > 0.0) || cfg.max_sweeps < 1 || cfg.max_irls < 1 ||
      !(cfg.irls_tol > 0.0)) {
    throw InvalidParameter("solver tolerances and iteration caps must be positive");
  }
}

double penalized_objective(const Dataset& data, const GlmFamily& fam,
                           const PenaltyMatrix& lam, double lambda1,
                           double lambda2, const Vector& omega, double beta0,
                           const Vector& beta) {
  return total_loss(fam, data, beta0, beta) +
         lambda1 * omega.dot(beta.cwiseAbs()) + lambda2 * lam.energy(beta);
}

// Cyclic coordinate descent for
//   0.5 ||b - iota*beta0 - A beta||^2 + 0.5 qscale^2 ||Q beta||^2
//     + lambda1 sum_j omega_j |beta_j|
// where iota is the (row-scaled) intercept column, optional like Q.
struct CdWork {
  const Matrix& A;
  const Vector& b;
  const Vector* iota;
  const Matrix* Q;
  double qscale;
  const Vector& omega;
  double lambda1;

  Vector denom;
  double iota_sq = 0.0;
  Vector u;  // data residual b - iota*beta0 - A*beta
  Vector v;  // penalty residual -qscale * Q * beta
  double beta0 = 0.0;
  Vector beta;

  CdWork(const Matrix& a, const Vector& b_, const Vector* iota_,
         const Matrix* q, double qscale_, const Vector& omega_, double lambda1_)
      : A(a), b(b_), iota(iota_), Q(q), qscale(qscale_), omega(omega_),
        lambda1(lambda1_) {
    const Eigen::Index p = A.cols();
    denom.resize(p);
    for (Eigen::Index j = 0; j < p; ++j) {
      double d = A.col(j).squaredNorm();
      if (Q) d += qscale * qscale * Q->col(j).squaredNorm();
      denom[j] = d;
    }
    if (iota) iota_sq = iota->squaredNorm();
  }

  void init(double beta0_start, const Vector& beta_start) {
    beta0 = iota ? beta0_start : 0.0;
    beta = beta_start;
    u = b - A * beta;
    if (iota) u -= beta0 * (*iota);
    if (Q) {
      v = -qscale * (*Q * beta);
    } else {
      v.resize(0);
    }
  }

  double update_intercept() {
    if (!iota || iota_sq <= 0.0) return 0.0;
    const double delta = iota->dot(u) / iota_sq;
    if (delta == 0.0) return 0.0;
    beta0 += delta;
    u -= delta * (*iota);
    return std::abs(delta);
  }

  double update_coord(Eigen::Index j) {
    const double a = denom[j];
    double c = A.col(j).dot(u) + a * beta[j];
    if (Q) c += qscale * Q->col(j).dot(v);
    double next = soft_threshold(c, lambda1 * omega[j]);
    next = a > 0.0 ? next / a : 0.0;
    const double delta = next - beta[j];
    if (delta == 0.0) return 0.0;
    beta[j] = next;
    u -= delta * A.col(j);
    if (Q) v -= (qscale * delta) * Q->col(j);
    return std::abs(delta);
  }

  double sweep(const std::vector<Eigen::Index>& coords) {
    double change = update_intercept();
    for (const Eigen::Index j : coords) change = std::max(change, update_coord(j));
    return change;
  }

  // Full sweep, then sweeps restricted to the active set until stable, then a
  // full verification sweep; done when a full sweep moves nothing beyond tol.
  int run(double tol, int max_sweeps, bool& converged) {
    const Eigen::Index p = A.cols();
    std::vector<Eigen::Index> all(static_cast<std::size_t>(p));
    for (Eigen::Index j = 0; j < p; ++j) all[static_cast<std::size_t>(j)] = j;
    std::vector<Eigen::Index> active;

    int used = 0;
    double change = sweep(all);
    ++used;
    if (change <= tol) {
      converged = true;
      return used;
    }
    while (used < max_sweeps) {
      active.clear();
      for (Eigen::Index j = 0; j < p; ++j) {
        if (beta[j] != 0.0) active.push_back(j);
      }
      while (!active.empty() && used < max_sweeps) {
        change = sweep(active);
        ++used;
        if (change <= tol) break;
      }
      if (used >= max_sweeps) break;
      change = sweep(all);
      ++used;
      if (change <= tol) {
        converged = true;
        return used;
      }
    }
    converged = false;
    return used;
  }
};

void finalize_fit(FitResult& r, const Dataset& data, const GlmFamily& fam,
                  const PenaltyMatrix& lam) {
  r.t1 = r.beta.template lpNorm<1>();
  r.t2 = lam.energy(r.beta);
  r.objective = total_loss(fam, data, r.beta0, r.beta) +
                r.lambda1 * r.l1_weights.dot(r.beta.cwiseAbs()) +
                r.lambda2 * r.t2;
  r.active_set.clear();
  for (Eigen::Index j = 0; j < r.beta.size(); ++j) {
    if (std::abs(r.beta[j]) > kActiveTol) r.active_set.push_back(static_cast<int>(j));
  }
  const RawCoefs raw = to_raw_scale(data.record, r.beta0, r.beta);
  r.beta0_raw = raw.beta0;
  r.beta_raw = raw.beta;
}

}  // namespace

Dataset augment_data(const Dataset& data, const PenaltyMatrix& lam,
                     double lambda2) {
  data.validate();
  if (lam.dim() != data.p()) {
    throw InvalidDimension("penalty dimension does not match feature count");
  }
  if (!(lambda2 >= 0.0) || !std::isfinite(lambda2)) {
    throw InvalidParameter("lambda2 must be nonnegative and finite");
  }
  const Eigen::Index n = data.n(), p = data.p();
  const Eigen::Index r = lam.factor().rows();
  Dataset out;
  out.X.resize(n + r, p);
  out.X.topRows(n) = data.X;
  out.X.bottomRows(r) = std::sqrt(lambda2) * lam.factor();
  out.y = Vector::Zero(n + r);
  out.y.head(n) = data.y;
  out.feature_names = data.feature_names;
  return out;
}

double lambda1_max(const Dataset& data, const GlmFamily& fam,
                   const Vector& l1_weights, bool fit_intercept) {
  data.validate();
  fam.validate_response(data.y);
  FitConfig tmp;
  tmp.l1_weights = l1_weights;
  const Vector omega = effective_weights(tmp, data.p());
  const double f0 = fit_intercept ? fam.null_intercept(data.y) : 0.0;
  const Vector resid = data.y.array() - fam.mean(f0);
  const Vector grad = data.X.transpose() * resid / fam.dispersion;
  double lmax = 0.0;
  for (Eigen::Index j = 0; j < grad.size(); ++j) {
    lmax = std::max(lmax, std::abs(grad[j]) / omega[j]);
  }
  return lmax;
}

double stationarity_residual(const Dataset& data, const GlmFamily& fam,
                             const PenaltyMatrix& lam, double lambda1,
                             double lambda2, const Vector& l1_weights,
                             bool intercept, double beta0, const Vector& beta) {
  if (beta.size() != data.p() || lam.dim() != data.p()) {
    throw InvalidDimension("coefficient or penalty dimension mismatch");
  }
  FitConfig tmp;
  tmp.l1_weights = l1_weights;
  const Vector omega = effective_weights(tmp, data.p());

  const Vector f = (data.X * beta).array() + beta0;
  Vector mu(f.size());
  for (Eigen::Index i = 0; i < f.size(); ++i) mu[i] = fam.mean(f[i]);
  const Vector g = -(data.X.transpose() * (data.y - mu)) / fam.dispersion +
                   2.0 * lambda2 * (lam.matrix() * beta);

  double r = 0.0;
  for (Eigen::Index j = 0; j < beta.size(); ++j) {
    const double t = lambda1 * omega[j];
    if (beta[j] != 0.0) {
      r = std::max(r, std::abs(g[j] + t * (beta[j] > 0.0 ? 1.0 : -1.0)));
    } else {
      r = std::max(r, std::max(0.0, std::abs(g[j]) - t));
    }
  }
  if (intercept) {
    r = std::max(r, std::abs((data.y - mu).sum()) / fam.dispersion);
  }
  return r;
}

FitResult solve_gaussian(const Dataset& data, const PenaltyMatrix& lam,
                         const FitConfig& cfg, const WarmStart* warm) {
  validate_common(data, lam, cfg);
  const Eigen::Index n = data.n(), p = data.p();
  const Vector omega = effective_weights(cfg, p);
  const GlmFamily fam = GlmFamily::gaussian();

  if (cfg.lambda1 == 0.0 && cfg.lambda2 == 0.0) {
    const Eigen::ColPivHouseholderQR<Matrix> qr(data.X);
    if (qr.rank() < p) {
      throw NonUniqueSolution(
          "unpenalized least squares is not unique: design rank " +
          std::to_string(qr.rank()) + " < " + std::to_string(p));
    }
  }

  const Vector ones = Vector::Ones(n);
  const bool use_q = cfg.lambda2 > 0.0;
  CdWork work(data.X, data.y, cfg.fit_intercept ? &ones : nullptr,
              use_q ? &lam.factor() : nullptr, std::sqrt(2.0 * cfg.lambda2),
              omega, cfg.lambda1);

  FitResult r;
  r.family = Family::gaussian;
  r.method = "cd";
  r.lambda1 = cfg.lambda1;
  r.lambda2 = cfg.lambda2;
  r.l1_weights = omega;
  r.intercept = cfg.fit_intercept;

  if (warm && warm->beta.size() != p) {
    throw InvalidDimension("warm start length does not match feature count");
  }
  work.init(warm ? warm->beta0 : 0.0, warm ? warm->beta : Vector::Zero(p));

  double tol = cfg.coord_tol;
  bool cd_converged = false;
  double kkt = std::numeric_limits<double>::infinity();
  for (int attempt = 0; attempt < 4; ++attempt) {
    bool conv = false;
    r.sweeps += work.run(tol, cfg.max_sweeps - r.sweeps, conv);
    cd_converged = conv;
    kkt = stationarity_residual(data, fam, lam, cfg.lambda1, cfg.lambda2, omega,
                                cfg.fit_intercept, work.beta0, work.beta);
    if (!cd_converged || kkt <= cfg.kkt_tol || r.sweeps >= cfg.max_sweeps) break;
    tol = std::max(tol / 100.0, 1e-15);
    r.log.push_back("stationarity residual above certificate, tightened sweep tolerance");
  }

  r.beta0 = work.beta0;
  r.beta = work.beta;
  r.kkt_residual = kkt;
  r.converged = cd_converged && kkt <= cfg.kkt_tol;
  finalize_fit(r, data, fam, lam);
  return r;
}

FitResult solve_glm(const Dataset& data, const GlmFamily& fam,
                    const PenaltyMatrix& lam, const FitConfig& cfg,
                    const WarmStart* warm) {
  validate_common(data, lam, cfg);
  fam.validate_response(data.y);
  if (fam.dispersion != 1.0) {
    throw InvalidParameter("penalized solves require unit dispersion");
  }
  if (fam.family == Family::gaussian) {
    return solve_gaussian(data, lam, cfg, warm);
  }

  const Eigen::Index p = data.p();
  const Vector omega = effective_weights(cfg, p);

  FitResult r;
  r.family = fam.family;
  r.method = "irls";
  r.lambda1 = cfg.lambda1;
  r.lambda2 = cfg.lambda2;
  r.l1_weights = omega;
  r.intercept = cfg.fit_intercept;

  if (warm && warm->beta.size() != p) {
    throw InvalidDimension("warm start length does not match feature count");
  }
  Vector beta = warm ? warm->beta : Vector::Zero(p);
  double beta0 = warm ? warm->beta0
                      : (cfg.fit_intercept ? fam.null_intercept(data.y) : 0.0);

  double obj = penalized_objective(data, fam, lam, cfg.lambda1, cfg.lambda2,
                                   omega, beta0, beta);
  double dev = 2.0 * total_loss(fam, data, beta0, beta);
  const bool use_q = cfg.lambda2 > 0.0;
  const double qscale = std::sqrt(2.0 * cfg.lambda2);

  bool irls_converged = false;
  bool logged_clamp = false;

  // one linearization step: weighted augmented lasso from the current iterate
  const auto irls_step = [&](double coord_tol, double& new_beta0,
                             Vector& new_beta) {
    const IrlsQuantities q = irls_working_quantities(fam, beta0, beta, data);
    if (q.clamped > 0 && !logged_clamp) {
      r.log.push_back("variance weights clamped at 1e-10 for " +
                      std::to_string(q.clamped) + " observations");
      logged_clamp = true;
    }
    const Vector sqw = q.weights.cwiseSqrt();
    const Matrix a = sqw.asDiagonal() * data.X;
    const Vector b = sqw.cwiseProduct(q.working_response);
    CdWork work(a, b, cfg.fit_intercept ? &sqw : nullptr,
                use_q ? &lam.factor() : nullptr, qscale, omega, cfg.lambda1);
    work.init(beta0, beta);
    bool conv = false;
    r.sweeps += work.run(coord_tol, cfg.max_sweeps, conv);
    new_beta0 = work.beta0;
    new_beta = work.beta;
    return conv;
  };

  for (int it = 1; it <= cfg.max_irls; ++it) {
    r.irls_iterations = it;
    double cand_beta0 = beta0;
    Vector cand_beta;
    irls_step(cfg.coord_tol, cand_beta0, cand_beta);

    double cand_obj = penalized_objective(data, fam, lam, cfg.lambda1,
                                          cfg.lambda2, omega, cand_beta0, cand_beta);
    if (cand_obj > obj + 1e-12 * (1.0 + std::abs(obj))) {
      // overshoot: halve the step toward the previous iterate
      bool rescued = false;
      for (int h = 0; h < 10; ++h) {
        cand_beta0 = 0.5 * (cand_beta0 + beta0);
        cand_beta = 0.5 * (cand_beta + beta);
        cand_obj = penalized_objective(data, fam, lam, cfg.lambda1, cfg.lambda2,
                                       omega, cand_beta0, cand_beta);
        if (cand_obj <= obj + 1e-12 * (1.0 + std::abs(obj))) {
          rescued = true;
          break;
        }
      }
      if (rescued) {
        r.log.push_back("objective rose at iteration " + std::to_string(it) +
                        ", step halved");
      } else {
        r.log.push_back("objective could not be decreased at iteration " +
                        std::to_string(it) + ", keeping previous iterate");
        irls_converged = false;
        break;
      }
    }

    beta0 = cand_beta0;
    beta = cand_beta;
    obj = cand_obj;

    if (beta.lpNorm<Eigen::Infinity>() > 1e6) {
      r.log.push_back("coefficient norm exceeded 1e6, possible separation");
      irls_converged = false;
      break;
    }

    const double dev_new = 2.0 * total_loss(fam, data, beta0, beta);
    if (std::abs(dev_new - dev) <= cfg.irls_tol * (std::abs(dev_new) + 1.0)) {
      irls_converged = true;
      dev = dev_new;
      break;
    }
    dev = dev_new;
  }

  double kkt = stationarity_residual(data, fam, lam, cfg.lambda1, cfg.lambda2,
                                     omega, cfg.fit_intercept, beta0, beta);
  for (int extra = 0; extra < 3 && irls_converged && kkt > cfg.kkt_tol_glm;
       ++extra) {
    double cand_beta0 = beta0;
    Vector cand_beta;
    irls_step(cfg.coord_tol / 100.0, cand_beta0, cand_beta);
    const double cand_obj =
        penalized_objective(data, fam, lam, cfg.lambda1, cfg.lambda2, omega,
                            cand_beta0, cand_beta);
    if (cand_obj > obj + 1e-12 * (1.0 + std::abs(obj))) break;
    beta0 = cand_beta0;
    beta = cand_beta;
    obj = cand_obj;
    ++r.irls_iterations;
    kkt = stationarity_residual(data, fam, lam, cfg.lambda1, cfg.lambda2,
                                omega, cfg.fit_intercept, beta0, beta);
  }

  r.beta0 = beta0;
  r.beta = beta;
  r.kkt_residual = kkt;
  r.converged = irls_converged && kkt <= cfg.kkt_tol_glm;
  finalize_fit(r, data, fam, lam);
  return r;
}

CoefPath solve_path(const Dataset& data, const GlmFamily& fam,
                    const PenaltyMatrix& lam, double lambda2, int grid_size,
                    const FitConfig& base) {
  if (grid_size < 1) throw InvalidParameter("path grid size must be at least 1");
  FitConfig probe = base;
  probe.lambda1 = 0.0;
  probe.lambda2 = lambda2;
  validate_common(data, lam, probe);
  const Vector omega = effective_weights(base, data.p());

  const double lmax = lambda1_max(data, fam, omega, base.fit_intercept);
  if (!(lmax > 0.0)) {
    throw InvalidParameter(
        "null model already fits the response; lambda1 grid is degenerate");
  }

  CoefPath path;
  path.lambda2 = lambda2;
  path.lambda1_grid.resize(grid_size);
  for (int k = 0; k < grid_size; ++k) {
    const double frac = grid_size == 1
                            ? 0.0
                            : static_cast<double>(k) / (grid_size - 1);
    path.lambda1_grid[k] = lmax * std::pow(1e-3, frac);
  }

  WarmStart ws;
  bool have_warm = false;
  for (int k = 0; k < grid_size; ++k) {
    FitConfig cfg = base;
    cfg.lambda1 = path.lambda1_grid[k];
    cfg.lambda2 = lambda2;
    FitResult fit = solve_glm(data, fam, lam, cfg, have_warm ? &ws : nullptr);
    ws.beta0 = fit.beta0;
    ws.beta = fit.beta;
    have_warm = true;
    path.warm_from.push_back(k == 0 ? -1 : k - 1);
    path.fits.push_back(std::move(fit));
  }
  return path;
}

FitResult solve_ridge(const Dataset& data, const PenaltyMatrix& lam,
                      double lambda2) {
  data.validate();
  if (lam.dim() != data.p()) {
    throw InvalidDimension("penalty dimension does not match feature count");
  }
  if (!(lambda2 >= 0.0) || !std::isfinite(lambda2)) {
    throw InvalidParameter("lambda2 must be nonnegative and finite");
  }

  const Matrix m = data.X.transpose() * data.X + lambda2 * lam.matrix();
  const Vector rhs = data.X.transpose() * data.y;
  const Eigen::LDLT<Matrix> ldlt(m);
  if (ldlt.info() != Eigen::Success) {
    throw SingularSystem("ridge normal equations could not be factorized");
  }
  const Vector beta = ldlt.solve(rhs);
  const double scale = std::max(1.0, rhs.lpNorm<Eigen::Infinity>());
  const double resid = (m * beta - rhs).lpNorm<Eigen::Infinity>();
  if (!beta.allFinite() || resid > 1e-6 * scale) {
    throw SingularSystem("ridge normal equations are singular");
  }

  FitResult r;
  r.family = Family::gaussian;
  r.method = "ridge";
  r.lambda1 = 0.0;
  r.lambda2 = lambda2;
  r.l1_weights = Vector::Ones(data.p());
  r.intercept = false;
  r.beta0 = 0.0;
  r.beta = beta;
  r.kkt_residual = resid;
  r.converged = true;
  finalize_fit(r, data, GlmFamily::gaussian(), lam);
  return r;
}

FitResult brute_force_oracle(const Dataset& data, const PenaltyMatrix& lam,
                             const FitConfig& cfg) {
  validate_common(data, lam, cfg);
  const Eigen::Index p = data.p();
  if (p > 8) {
    throw SizeLimit("sign-pattern search is limited to p <= 8, got p = " +
                    std::to_string(p));
  }
  const Vector omega = effective_weights(cfg, p);
  if (cfg.fit_intercept) {
    // with centered data the optimal intercept is exactly zero, which is the
    // only intercept this search handles
    if (std::abs(data.y.mean()) > 1e-8 ||
        data.X.colwise().mean().cwiseAbs().maxCoeff() > 1e-8) {
      throw InvalidParameter("sign-pattern search with an intercept requires centered data");
    }
  }
  const GlmFamily fam = GlmFamily::gaussian();

  const Matrix xtx = data.X.transpose() * data.X;
  const Vector xty = data.X.transpose() * data.y;
  const Matrix m2 = xtx + 2.0 * cfg.lambda2 * lam.matrix();

  long total = 1;
  for (Eigen::Index j = 0; j < p; ++j) total *= 3;

  bool have_best = false;
  double best_obj = std::numeric_limits<double>::infinity();
  Vector best_beta;

  std::vector<int> sign(static_cast<std::size_t>(p));
  std::vector<Eigen::Index> active;
  for (long t = 0; t < total; ++t) {
    long x = t;
    active.clear();
    for (Eigen::Index j = 0; j < p; ++j) {
      sign[static_cast<std::size_t>(j)] = static_cast<int>(x % 3) - 1;
      x /= 3;
      if (sign[static_cast<std::size_t>(j)] != 0) active.push_back(j);
    }

    Vector beta = Vector::Zero(p);
    if (!active.empty()) {
      const auto na = static_cast<Eigen::Index>(active.size());
      Matrix ma(na, na);
      Vector rhs(na);
      for (Eigen::Index a = 0; a < na; ++a) {
        const Eigen::Index ja = active[static_cast<std::size_t>(a)];
        rhs[a] = xty[ja] -
                 cfg.lambda1 * omega[ja] * sign[static_cast<std::size_t>(ja)];
        for (Eigen::Index c = 0; c < na; ++c) {
          ma(a, c) = m2(ja, active[static_cast<std::size_t>(c)]);
        }
      }
      const Eigen::FullPivLU<Matrix> lu(ma);
      if (!lu.isInvertible()) continue;
      const Vector ba = lu.solve(rhs);
      bool sign_ok = true;
      for (Eigen::Index a = 0; a < na; ++a) {
        const Eigen::Index ja = active[static_cast<std::size_t>(a)];
        if (ba[a] * sign[static_cast<std::size_t>(ja)] <= 0.0) {
          sign_ok = false;
          break;
        }
        beta[ja] = ba[a];
      }
      if (!sign_ok) continue;
    }

    // zero coordinates must satisfy the subgradient bound
    const Vector g = m2 * beta - xty;
    bool zeros_ok = true;
    for (Eigen::Index j = 0; j < p; ++j) {
      if (sign[static_cast<std::size_t>(j)] != 0) continue;
      const double bound = cfg.lambda1 * omega[j];
      if (std::abs(g[j]) > bound + 1e-9 * (1.0 + bound)) {
        zeros_ok = false;
        break;
      }
    }
    if (!zeros_ok) continue;

    const double obj = penalized_objective(data, fam, lam, cfg.lambda1,
                                           cfg.lambda2, omega, 0.0, beta);
    if (!have_best || obj < best_obj) {
      have_best = true;
      best_obj = obj;
      best_beta = beta;
    }
  }

  if (!have_best) {
    throw Error("no stationary sign pattern found; problem may be degenerate");
  }

  FitResult r;
  r.family = Family::gaussian;
  r.method = "oracle";
  r.lambda1 = cfg.lambda1;
  r.lambda2 = cfg.lambda2;
  r.l1_weights = omega;
  r.intercept = cfg.fit_intercept;
  r.beta0 = 0.0;
  r.beta = best_beta;
  r.kkt_residual =
      stationarity_residual(data, fam, lam, cfg.lambda1, cfg.lambda2, omega,
                            cfg.fit_intercept, 0.0, best_beta);
  r.converged = true;
  finalize_fit(r, data, fam, lam);
  return r;
}

}  // namespace senet
