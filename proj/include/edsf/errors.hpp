#pragma once

#include <gmpxx.h>

#include <stdexcept>
#include <string>
#include <utility>

namespace edsf {

struct Error : std::runtime_error {
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

struct SingularCurve : Error {
  using Error::Error;
};

struct PointNotOnCurve : Error {
  using Error::Error;
};

struct PreconditionFailed : Error {
  using Error::Error;
};

// [n]P is the identity; the point is torsion (or was the identity to begin
// with), so no denominator sequence term exists at this index.
struct TorsionOrIdentity : Error {
  using Error::Error;
};

// x-denominator of a point on an integral model is a perfect square; seeing a
// non-square means the caller fed coordinates that do not come from one.
struct NonSquareDenominator : Error {
  using Error::Error;
};

// Base point must be integral (D_1 = 1); we refuse to renormalize silently.
struct NonNormalized : Error {
  using Error::Error;
};

struct NonExactQuotient : Error {
  using Error::Error;
};

struct ParityUnsupported : Error {
  using Error::Error;
};

struct TheoremViolation : Error {
  using Error::Error;
};

struct BadReduction : Error {
  using Error::Error;
};

struct NonInvertibleDenominator : Error {
  NonInvertibleDenominator(const std::string& what, mpz_class g)
      : Error(what), witness(std::move(g)) {}
  mpz_class witness;  // nontrivial gcd with the modulus
};

// Slope denominator shares a factor with a composite modulus. The witness is
// a nontrivial divisor of N, so the failure doubles as a factor found.
struct NonInvertibleSlope : Error {
  NonInvertibleSlope(const std::string& what, mpz_class g)
      : Error(what), witness(std::move(g)) {}
  mpz_class witness;
};

struct OracleScaleExceeded : Error {
  using Error::Error;
};

struct IdentityHasNoHeight : Error {
  using Error::Error;
};

struct TorsionPoint : Error {
  using Error::Error;
};

struct ParseError : Error {
  explicit ParseError(const std::string& what, int line = 0)
      : Error(line > 0 ? "line " + std::to_string(line) + ": " + what : what),
        line_no(line) {}
  int line_no;
};

struct ValidationError : Error {
  using Error::Error;
};

}  // namespace edsf
