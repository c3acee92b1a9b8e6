#pragma once

#include <stdexcept>
#include <string>

namespace polyhelm {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// geometry
struct TooFewVertices : Error { using Error::Error; };
struct ClockwiseOrder : Error { using Error::Error; };
struct NonConvex : Error { using Error::Error; };
struct DegenerateSide : Error { using Error::Error; };
struct GeometryViolation : Error { using Error::Error; };

// boundary data / spectral
struct InsufficientDerivativeOrder : Error { using Error::Error; };
struct ZeroLambda : Error { using Error::Error; };
struct ZeroMu : Error { using Error::Error; };
struct QuadratureNonConvergence : Error { using Error::Error; };

// global relation solve
struct RankDeficient : Error { using Error::Error; };
struct NonConvergence : Error { using Error::Error; };

// evaluation
struct PointNotInterior : Error { using Error::Error; };
struct TruncationFailure : Error { using Error::Error; };
struct PointOnBoundary : Error { using Error::Error; };

// corner analysis
struct AngleOutOfRange : Error { using Error::Error; };
struct DomainError : Error { using Error::Error; };
struct NonConvergentQuadrature : Error { using Error::Error; };
struct ConstraintViolation : Error { using Error::Error; };

// regularity
struct GaugeViolation : Error { using Error::Error; };
struct FitFailure : Error { using Error::Error; };

}  // namespace polyhelm
