#pragma once

#include <stdexcept>
#include <string>

namespace gpdcalc {

// Broad failure classes, mapped to CLI exit codes: usage/parse errors -> 2,
// type/frame/degree errors -> 3.
enum class ErrorKind {
  Syntax,
  UnknownCoordinate,
  ChartMismatch,
  FrameMismatch,
  DegreeError,
  NotRhoCompatible,
  InvalidAlgebroid,
  ValidationFailure,
  NotRightInverse,
  InconsistentTheta,
  NotMultiplicative,
  NotVertical,
  NotInImage,
  InvalidBialgebra,
  ModelFile,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, std::string msg) : std::runtime_error(std::move(msg)), kind_(kind) {}
  ErrorKind kind() const { return kind_; }

  static bool is_usage(ErrorKind k) {
    return k == ErrorKind::Syntax || k == ErrorKind::UnknownCoordinate ||
           k == ErrorKind::ModelFile || k == ErrorKind::InvalidBialgebra ||
           k == ErrorKind::InvalidAlgebroid;
  }

 private:
  ErrorKind kind_;
};

class SyntaxError : public Error {
 public:
  SyntaxError(std::size_t position, const std::string& expected, const std::string& found)
      : Error(ErrorKind::Syntax, "syntax error at position " + std::to_string(position) +
                                     ": expected " + expected + ", found " + found),
        position_(position) {}
  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

inline Error unknown_coordinate(const std::string& name) {
  return Error(ErrorKind::UnknownCoordinate, "unknown coordinate '" + name + "'");
}

}  // namespace gpdcalc
