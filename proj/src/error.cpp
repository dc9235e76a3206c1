#include "ratioci/error.hpp"

namespace ratioci {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::DomainError: return "DomainError";
    case ErrorCode::TooFewObservations: return "TooFewObservations";
    case ErrorCode::NonFiniteInput: return "NonFiniteInput";
    case ErrorCode::ZeroMean: return "ZeroMean";
    case ErrorCode::ZeroDenominator: return "ZeroDenominator";
    case ErrorCode::ZeroNumerator: return "ZeroNumerator";
    case ErrorCode::ZeroIndividualDenominator: return "ZeroIndividualDenominator";
    case ErrorCode::DegenerateVariance: return "DegenerateVariance";
    case ErrorCode::NonFiniteResult: return "NonFiniteResult";
    case ErrorCode::TooFewAfterTrim: return "TooFewAfterTrim";
    case ErrorCode::TooFewReplicates: return "TooFewReplicates";
    case ErrorCode::AllResamplesDegenerate: return "AllResamplesDegenerate";
    case ErrorCode::SingularCovariance: return "SingularCovariance";
    case ErrorCode::RankDeficient: return "RankDeficient";
    case ErrorCode::NonPositiveData: return "NonPositiveData";
    case ErrorCode::ParseError: return "ParseError";
  }
  return "Unknown";
}

}  // namespace ratioci
