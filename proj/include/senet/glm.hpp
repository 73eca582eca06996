#pragma once

#include <string>
#include <vector>

#include "senet/types.hpp"

namespace senet {

enum class Family { gaussian, binomial, poisson };

// Exponential-family description through the cumulant b(f) of the canonical
// link: gaussian b(f) = f^2/2, binomial b(f) = log(1 + e^f),
// poisson b(f) = e^f.  The per-observation loss is (b(f) - y*f)/dispersion,
// which drops the y-only normalizing term of the log-likelihood.
struct GlmFamily {
  Family family = Family::gaussian;
  double dispersion = 1.0;  // fixed to 1 for binomial and poisson

  static GlmFamily gaussian(double dispersion = 1.0);
  static GlmFamily binomial();
  static GlmFamily poisson();

  const char* name() const;

  double cumulant(double f) const;  // b(f)
  double mean(double f) const;      // b'(f)
  double variance(double f) const;  // b''(f)
  double loss(double y, double f) const;

  // Checks response support: binomial needs y in {0, 1}, poisson needs
  // nonnegative integers; throws InvalidResponse otherwise.
  void validate_response(const Vector& y) const;

  // Intercept of the covariate-free model under the canonical link
  // (mean response mapped through the inverse link, clamped away from the
  // boundary for binomial and poisson).
  double null_intercept(const Vector& y) const;
};

GlmFamily family_from_name(const std::string& name);

// Per-column centering and scaling to unit Euclidean norm, recorded so that
// coefficients can be mapped back to the raw scale.
struct Standardization {
  Vector center;
  Vector scale;
  double y_center = 0.0;
  bool active = false;
};

struct Dataset {
  Matrix X;
  Vector y;
  std::vector<std::string> feature_names;  // may be empty
  Standardization record;

  Eigen::Index n() const { return X.rows(); }
  Eigen::Index p() const { return X.cols(); }
  void validate() const;
};

// Center each column, scale it to unit Euclidean norm, and optionally center
// the response (gaussian case).  A column that is constant (zero after
// centering) raises DegenerateFeature naming the column.  Standardizing
// already-standardized data is a no-op up to roundoff.
Dataset standardize(const Dataset& raw, bool center_response);

struct RawCoefs {
  double beta0 = 0.0;
  Vector beta;
};

// Map coefficients from the standardized scale back to the raw scale so that
// predictions agree on both scales.
RawCoefs to_raw_scale(const Standardization& s, double beta0, const Vector& beta);

double total_loss(const GlmFamily& fam, const Dataset& data, double beta0,
                  const Vector& beta);

// One iteratively-reweighted-least-squares linearization at (beta0, beta):
// weights w_i = b''(f_i)/dispersion and working response
// z_i = f_i + (y_i - mu_i)/w_i.  Weights are floored at 1e-10; `clamped`
// counts how many observations hit the floor.
struct IrlsQuantities {
  Vector weights;
  Vector working_response;
  int clamped = 0;
};

IrlsQuantities irls_working_quantities(const GlmFamily& fam, double beta0,
                                       const Vector& beta, const Dataset& data);

// Empirical Fisher information n^-1 sum_i b''(x_i'beta)/dispersion x_i x_i'.
Matrix fisher_info(const GlmFamily& fam, const Vector& beta, const Dataset& data);

}  // namespace senet
