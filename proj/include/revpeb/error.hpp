#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace revpeb {

enum class ErrorKind {
  // graph construction
  CycleDetected,
  UnknownVertex,
  DuplicateVertex,
  NotASink,
  NotASinkVertex,
  NoDesignatedSink,
  ParamOutOfRange,
  NotPowerOfTwo,
  // pebble games
  IllegalPlacement,
  IllegalRemoval,
  IllegalMoveAt,
  SinkNeverPebbled,
  BadFinalConfig,
  PrefixIllegal,
  SinkNotReached,
  // search
  SpaceInfeasible,
  InstanceTooLarge,
  // algebra
  FieldMismatch,
  UnknownAxiom,
  NotMultilinear,
  StrategyIllegal,
  CertificateInvalid,
  ResultInvalid,
  NoPathToSink,
  // I/O
  ParseError,
  IoError,
  Internal,
};

inline std::string_view to_string(ErrorKind k) {
  switch (k) {
    case ErrorKind::CycleDetected: return "CycleDetected";
    case ErrorKind::UnknownVertex: return "UnknownVertex";
    case ErrorKind::DuplicateVertex: return "DuplicateVertex";
    case ErrorKind::NotASink: return "NotASink";
    case ErrorKind::NotASinkVertex: return "NotASinkVertex";
    case ErrorKind::NoDesignatedSink: return "NoDesignatedSink";
    case ErrorKind::ParamOutOfRange: return "ParamOutOfRange";
    case ErrorKind::NotPowerOfTwo: return "NotPowerOfTwo";
    case ErrorKind::IllegalPlacement: return "IllegalPlacement";
    case ErrorKind::IllegalRemoval: return "IllegalRemoval";
    case ErrorKind::IllegalMoveAt: return "IllegalMoveAt";
    case ErrorKind::SinkNeverPebbled: return "SinkNeverPebbled";
    case ErrorKind::BadFinalConfig: return "BadFinalConfig";
    case ErrorKind::PrefixIllegal: return "PrefixIllegal";
    case ErrorKind::SinkNotReached: return "SinkNotReached";
    case ErrorKind::SpaceInfeasible: return "SpaceInfeasible";
    case ErrorKind::InstanceTooLarge: return "InstanceTooLarge";
    case ErrorKind::FieldMismatch: return "FieldMismatch";
    case ErrorKind::UnknownAxiom: return "UnknownAxiom";
    case ErrorKind::NotMultilinear: return "NotMultilinear";
    case ErrorKind::StrategyIllegal: return "StrategyIllegal";
    case ErrorKind::CertificateInvalid: return "CertificateInvalid";
    case ErrorKind::ResultInvalid: return "ResultInvalid";
    case ErrorKind::NoPathToSink: return "NoPathToSink";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::IoError: return "IoError";
    case ErrorKind::Internal: return "Internal";
  }
  return "Unknown";
}

// All failures surface as this exception; `kind` is what callers dispatch on.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind) {}

  Error(ErrorKind kind, const std::string& message, std::size_t step, ErrorKind cause)
      : std::runtime_error(std::string(to_string(kind)) + "(" + std::to_string(step) + ", " +
                           std::string(to_string(cause)) + "): " + message),
        kind_(kind),
        step_(step),
        cause_(cause) {}

  ErrorKind kind() const noexcept { return kind_; }
  // 1-based move index for IllegalMoveAt.
  std::optional<std::size_t> step() const noexcept { return step_; }
  std::optional<ErrorKind> cause() const noexcept { return cause_; }

 private:
  ErrorKind kind_;
  std::optional<std::size_t> step_;
  std::optional<ErrorKind> cause_;
};

}  // namespace revpeb
