#pragma once

#include <stdexcept>
#include <string>

namespace lw {

struct Error : std::runtime_error {
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

struct NotExpansive : Error {
  using Error::Error;
};
struct SingularOrUnimodular : Error {
  using Error::Error;
};
struct SingularMatrix : Error {
  using Error::Error;
};
struct ZeroVector : Error {
  using Error::Error;
};
struct DimensionCap : Error {
  using Error::Error;
};
struct DimensionMismatch : Error {
  using Error::Error;
};
struct OriginInClosure : Error {
  using Error::Error;
};
struct SearchExhausted : Error {
  using Error::Error;
};
struct NoProgress : Error {
  using Error::Error;
};
struct MaxIterations : Error {
  using Error::Error;
};
struct OverlapDetected : Error {
  using Error::Error;
};
struct NotAWavelet : Error {
  using Error::Error;
};
struct ParseError : Error {
  using Error::Error;
};

}  // namespace lw
