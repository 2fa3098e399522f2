#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace schmidt {

/// Failure categories raised by the engine. Rule violations of a single move
/// are reported as values (see game.hpp); these are for broken contracts.
enum class ErrorKind {
  InvalidParams,
  InvalidArgument,
  ParseError,
  IllegalStrategyMove,
  AlphaTooLarge,
  ChainLemmaViolation,
  NoFreeSlot,
  SeedMismatch,
  DepthExceeded,
  PreconditionViolated,
  OracleIllegalMove,
};

inline std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidParams: return "invalid-params";
    case ErrorKind::InvalidArgument: return "invalid-argument";
    case ErrorKind::ParseError: return "parse-error";
    case ErrorKind::IllegalStrategyMove: return "illegal-strategy-move";
    case ErrorKind::AlphaTooLarge: return "alpha-too-large";
    case ErrorKind::ChainLemmaViolation: return "chain-lemma-violation";
    case ErrorKind::NoFreeSlot: return "no-free-slot";
    case ErrorKind::SeedMismatch: return "seed-mismatch";
    case ErrorKind::DepthExceeded: return "depth-exceeded";
    case ErrorKind::PreconditionViolated: return "precondition-violated";
    case ErrorKind::OracleIllegalMove: return "oracle-illegal-move";
  }
  return "unknown";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace schmidt
