#ifndef GMEB_ERRORS_HPP
#define GMEB_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace gmeb {

// Base class for everything thrown by this library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A matrix handed to orthonormalize() has numerical rank below its column count.
struct RankDeficient : Error {
  using Error::Error;
};

// Two operands live in different ambient spaces (or a weight vector has the wrong length).
struct DimensionMismatch : Error {
  using Error::Error;
};

// closest_point() padding produced linearly dependent columns.
struct DegenerateCompletion : Error {
  using Error::Error;
};

// An orthogonal complement was requested for a basis that already spans all of R^n.
struct FullSpace : Error {
  using Error::Error;
};

// simplex_normalize() received a vector with no positive mass.
struct ZeroVector : Error {
  using Error::Error;
};

// A cost became NaN or infinite during a solve.
struct NonFiniteCost : Error {
  using Error::Error;
};

// Ball sampling cannot reach the requested squared-chordal radius.
struct RadiusTooLarge : Error {
  using Error::Error;
};

// The nested-ball radii/dimensions admit no valid inner-ball placement.
struct InfeasiblePlacement : Error {
  using Error::Error;
};

// A shared orthogonal direction pool ran out of unused directions.
struct PoolExhausted : Error {
  using Error::Error;
};

// The scree is too short for a two-segment line fit.
struct TooFewValues : Error {
  using Error::Error;
};

// Text input could not be parsed; carries a 1-based line number.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, int line)
      : Error(what + " (line " + std::to_string(line) + ")"), line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

// JSON input parsed but does not match the expected shape.
struct SchemaError : Error {
  using Error::Error;
};

}  // namespace gmeb

#endif  // GMEB_ERRORS_HPP
