#pragma once

#include <stdexcept>
#include <string>

namespace bousfield {

enum class ErrorKind {
  kNonInvertibleDenominator,
  kSpecMismatch,
  kInvalidComplex,
  kInvalidChainMap,
  kNonPLocalInput,
  kUnroutablePair,
  kInconclusiveNullity,
  kMissingJoinWitness,
  kAxiomViolation,
  kInvalidIdeal,
  kNotUnital,
  kNotComplementedPair,
  kGenerationFailure,
  kEvaluationError,
  kConfigError,
  kParseError,
  kInvalidArgument,
};

const char* error_kind_name(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(error_kind_name(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace bousfield
