#include "senet/glm.hpp"

#include <algorithm>
#include <cmath>

namespace senet {

namespace {

// keeps exp() finite; beyond this the fit has diverged anyway
constexpr double kMaxExpArg = 700.0;

double safe_exp(double f) { return std::exp(std::min(f, kMaxExpArg)); }

}  // namespace

GlmFamily GlmFamily::gaussian(double dispersion) {
  if (!(dispersion > 0.0) || !std::isfinite(dispersion)) {
    throw InvalidParameter("dispersion must be positive and finite");
  }
  return {Family::gaussian, dispersion};
}

GlmFamily GlmFamily::binomial() { return {Family::binomial, 1.0}; }

GlmFamily GlmFamily::poisson() { return {Family::poisson, 1.0}; }

const char* GlmFamily::name() const {
  switch (family) {
    case Family::gaussian: return "gaussian";
    case Family::binomial: return "binomial";
    case Family::poisson: return "poisson";
  }
  return "unknown";
}

double GlmFamily::cumulant(double f) const {
  switch (family) {
    case Family::gaussian:
      return 0.5 * f * f;
    case Family::binomial:
      // log(1 + e^f) without overflow
      return f > 0.0 ? f + std::log1p(std::exp(-f)) : std::log1p(safe_exp(f));
    case Family::poisson:
      return safe_exp(f);
  }
  return 0.0;
}

double GlmFamily::mean(double f) const {
  switch (family) {
    case Family::gaussian:
      return f;
    case Family::binomial:
      return f > 0.0 ? 1.0 / (1.0 + std::exp(-f)) : safe_exp(f) / (1.0 + safe_exp(f));
    case Family::poisson:
      return safe_exp(f);
  }
  return 0.0;
}

double GlmFamily::variance(double f) const {
  switch (family) {
    case Family::gaussian:
      return 1.0;
    case Family::binomial: {
      const double mu = mean(f);
      return mu * (1.0 - mu);
    }
    case Family::poisson:
      return safe_exp(f);
  }
  return 0.0;
}

double GlmFamily::loss(double y, double f) const {
  return (cumulant(f) - y * f) / dispersion;
}

void GlmFamily::validate_response(const Vector& y) const {
  for (Eigen::Index i = 0; i < y.size(); ++i) {
    const double v = y[i];
    if (!std::isfinite(v)) {
      throw InvalidResponse("response " + std::to_string(i) + " is not finite");
    }
    if (family == Family::binomial && v != 0.0 && v != 1.0) {
      throw InvalidResponse("binomial response must be 0 or 1, got " +
                            std::to_string(v) + " at row " + std::to_string(i));
    }
    if (family == Family::poisson &&
        (v < 0.0 || std::abs(v - std::round(v)) > 1e-9)) {
      throw InvalidResponse("poisson response must be a nonnegative integer, got " +
                            std::to_string(v) + " at row " + std::to_string(i));
    }
  }
}

double GlmFamily::null_intercept(const Vector& y) const {
  const double ybar = y.mean();
  switch (family) {
    case Family::gaussian:
      return ybar;
    case Family::binomial: {
      const double q = std::clamp(ybar, 1e-6, 1.0 - 1e-6);
      return std::log(q / (1.0 - q));
    }
    case Family::poisson:
      return std::log(std::max(ybar, 1e-10));
  }
  return 0.0;
}

GlmFamily family_from_name(const std::string& name) {
  if (name == "gaussian") return GlmFamily::gaussian();
  if (name == "binomial") return GlmFamily::binomial();
  if (name == "poisson") return GlmFamily::poisson();
  throw InvalidParameter("unknown family: " + name);
}

void Dataset::validate() const {
  if (X.rows() != y.size()) {
    throw InvalidDimension("row count of X does not match length of y");
  }
  if (X.rows() < 1 || X.cols() < 1) {
    throw InvalidDimension("dataset must have at least one row and one column");
  }
  if (!X.allFinite()) throw InvalidParameter("design matrix has non-finite entries");
  if (!y.allFinite()) throw InvalidResponse("response has non-finite entries");
}

Dataset standardize(const Dataset& raw, bool center_response) {
  raw.validate();
  Dataset out = raw;
  const Eigen::Index n = raw.n(), p = raw.p();
  out.record.center = Vector::Zero(p);
  out.record.scale = Vector::Ones(p);
  out.record.active = true;

  for (Eigen::Index j = 0; j < p; ++j) {
    const double c = raw.X.col(j).mean();
    out.X.col(j).array() -= c;
    const double s = out.X.col(j).norm();
    if (s <= 1e-12 * std::sqrt(static_cast<double>(n))) {
      const std::string name = j < static_cast<Eigen::Index>(raw.feature_names.size())
                                   ? raw.feature_names[static_cast<std::size_t>(j)]
                                   : "column " + std::to_string(j);
      throw DegenerateFeature("constant feature cannot be standardized: " + name);
    }
    out.X.col(j) /= s;
    out.record.center[j] = c;
    out.record.scale[j] = s;
  }
  if (center_response) {
    out.record.y_center = raw.y.mean();
    out.y.array() -= out.record.y_center;
  }
  return out;
}

RawCoefs to_raw_scale(const Standardization& s, double beta0, const Vector& beta) {
  if (!s.active) return {beta0, beta};
  if (s.scale.size() != beta.size()) {
    throw InvalidDimension("standardization record does not match coefficient length");
  }
  RawCoefs raw;
  raw.beta = beta.cwiseQuotient(s.scale);
  raw.beta0 = beta0 + s.y_center - s.center.dot(raw.beta);
  return raw;
}

double total_loss(const GlmFamily& fam, const Dataset& data, double beta0,
                  const Vector& beta) {
  if (beta.size() != data.p()) {
    throw InvalidDimension("coefficient vector does not match feature count");
  }
  const Vector f = (data.X * beta).array() + beta0;
  double sum = 0.0;
  for (Eigen::Index i = 0; i < f.size(); ++i) sum += fam.loss(data.y[i], f[i]);
  return sum;
}

IrlsQuantities irls_working_quantities(const GlmFamily& fam, double beta0,
                                       const Vector& beta, const Dataset& data) {
  const Vector f = (data.X * beta).array() + beta0;
  IrlsQuantities q;
  q.weights.resize(f.size());
  q.working_response.resize(f.size());
  for (Eigen::Index i = 0; i < f.size(); ++i) {
    double w = fam.variance(f[i]) / fam.dispersion;
    if (w < 1e-10) {
      w = 1e-10;
      ++q.clamped;
    }
    q.weights[i] = w;
    q.working_response[i] = f[i] + (data.y[i] - fam.mean(f[i])) / w;
  }
  return q;
}

Matrix fisher_info(const GlmFamily& fam, const Vector& beta, const Dataset& data) {
  if (beta.size() != data.p()) {
    throw InvalidDimension("coefficient vector does not match feature count");
  }
  const Vector f = data.X * beta;
  Vector w(f.size());
  for (Eigen::Index i = 0; i < f.size(); ++i) {
    w[i] = fam.variance(f[i]) / fam.dispersion;
  }
  return data.X.transpose() * w.asDiagonal() * data.X /
         static_cast<double>(data.n());
}

}  // namespace senet
