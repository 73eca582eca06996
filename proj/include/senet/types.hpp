#pragma once

#include <Eigen/Dense>
#include <stdexcept>

namespace senet {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

// Every precondition failure throws a subclass of Error so callers (and the
// command line tool) can map any library failure to a clean diagnostic.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct InvalidDimension : Error { using Error::Error; };
struct InvalidParameter : Error { using Error::Error; };
struct InvalidPenalty : Error { using Error::Error; };
struct InvalidResponse : Error { using Error::Error; };
struct DegenerateFeature : Error { using Error::Error; };
struct SingularSystem : Error { using Error::Error; };
struct NonUniqueSolution : Error { using Error::Error; };
struct SizeLimit : Error { using Error::Error; };
struct ParseError : Error { using Error::Error; };
struct AdaptiveInitError : Error { using Error::Error; };

}  // namespace senet
