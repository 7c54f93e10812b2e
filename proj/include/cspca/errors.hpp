#pragma once

#include <stdexcept>
#include <string>

namespace cspca {

// Base class for every error the toolkit raises on purpose. Callers that
// want blanket handling catch this; tests catch the concrete types.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// linalg
struct NotSymmetric : Error {
  using Error::Error;
};
struct BadRank : Error {
  using Error::Error;
};
struct ConvergenceFailure : Error {
  using Error::Error;
};
struct NotPositiveDefinite : Error {
  using Error::Error;
};
struct NonFiniteData : Error {
  using Error::Error;
};

// model fitting
struct DimensionMismatch : Error {
  using Error::Error;
};
struct NonBinaryLabels : Error {
  using Error::Error;
};
struct RankDeficient : Error {
  using Error::Error;
};
struct TooFewFeatures : Error {
  using Error::Error;
};
struct SingularScatter : Error {
  using Error::Error;
};

// metrics
struct OneClassOnly : Error {
  using Error::Error;
};
struct ZeroData : Error {
  using Error::Error;
};
struct ZeroCrossCovariance : Error {
  using Error::Error;
};

// io
struct ParseError : Error {
  using Error::Error;
};
struct MissingValue : Error {
  using Error::Error;
};
struct AmbiguousLabels : Error {
  using Error::Error;
};
struct VersionMismatch : Error {
  using Error::Error;
};
struct CorruptModel : Error {
  using Error::Error;
};

}  // namespace cspca
