#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace ratioci {

enum class ErrorCode {
  InvalidArgument,
  DomainError,
  TooFewObservations,
  NonFiniteInput,
  ZeroMean,
  ZeroDenominator,
  ZeroNumerator,
  ZeroIndividualDenominator,
  DegenerateVariance,
  NonFiniteResult,
  TooFewAfterTrim,
  TooFewReplicates,
  AllResamplesDegenerate,
  SingularCovariance,
  RankDeficient,
  NonPositiveData,
  ParseError,
};

std::string_view to_string(ErrorCode code) noexcept;

// Every failure raised by the library carries one of the codes above so the
// C layer can translate it without string matching.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}
  Error(ErrorCode code, const std::string& what, std::vector<std::size_t> indices)
      : std::runtime_error(what), code_(code), indices_(std::move(indices)) {}

  ErrorCode code() const noexcept { return code_; }

  // Offending observation indices (ZeroIndividualDenominator only).
  const std::vector<std::size_t>& indices() const noexcept { return indices_; }

 private:
  ErrorCode code_;
  std::vector<std::size_t> indices_;
};

}  // namespace ratioci
