#pragma once

#include <complex>
#include <stdexcept>
#include <string>

namespace csmap {

using cplx = std::complex<double>;

inline constexpr double pi = 3.14159265358979323846;

/// Base class of all library errors.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// geometry
class GapError : public Error { using Error::Error; };
class DegenerateSegment : public Error { using Error::Error; };
class FilletTooLarge : public Error { using Error::Error; };

// numerics
class SingularMatrix : public Error { using Error::Error; };
class AliasWarning : public Error { using Error::Error; };

// mappings
class NormalizationPointOutside : public Error { using Error::Error; };
class EvalAtCharge : public Error { using Error::Error; };
class EvalAtSingularity : public Error { using Error::Error; };
class PoleHit : public Error { using Error::Error; };
class OrientationError : public Error { using Error::Error; };
class RangeOutsideDomain : public Error { using Error::Error; };

// elasticity
class UpperHalfPlane : public Error { using Error::Error; };
class JumpVerificationFailed : public Error { using Error::Error; };
class K0Mismatch : public Error { using Error::Error; };
class NonConvergence : public Error { using Error::Error; };
class IllConditionedLS : public Error { using Error::Error; };
class OutsideDomain : public Error { using Error::Error; };
class NotConverged : public Error { using Error::Error; };

// io
class ParseError : public Error { using Error::Error; };

}  // namespace csmap
