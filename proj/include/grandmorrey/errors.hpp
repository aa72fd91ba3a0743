#pragma once

#include <stdexcept>
#include <string>

namespace grandmorrey {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// space construction / estimation
struct ZeroDistanceDistinctPair : Error { using Error::Error; };
struct NegativeDistance : Error { using Error::Error; };
struct NonZeroDiagonal : Error { using Error::Error; };
struct NonPositiveWeight : Error { using Error::Error; };
struct InvalidSpec : Error { using Error::Error; };
struct DegenerateScale : Error { using Error::Error; };

// parameter domains (norms, constants, theorem setups)
struct AdmissibilityError : Error { using Error::Error; };
struct DomainError : AdmissibilityError { using AdmissibilityError::AdmissibilityError; };
struct InadmissibleParams : AdmissibilityError { using AdmissibilityError::AdmissibilityError; };
struct UnknownConstant : Error { using Error::Error; };

// checks
struct GridTooCoarse : Error { using Error::Error; };
struct EmptyGate : Error { using Error::Error; };
struct ZeroFunction : Error { using Error::Error; };
struct EmptyFamily : Error { using Error::Error; };

// cli / io
struct ConfigParseError : Error { using Error::Error; };
struct IoError : Error { using Error::Error; };
struct UnsupportedFormat : Error { using Error::Error; };

}  // namespace grandmorrey
