#include "ratioci/confidence_set.hpp"

namespace ratioci {

std::string_view to_string(SetCase c) noexcept {
  switch (c) {
    case SetCase::Bounded: return "bounded";
    case SetCase::UnboundedExclusive: return "unbounded-exclusive";
    case SetCase::WholeLine: return "whole-line";
    case SetCase::IntervalUnion: return "interval-union";
  }
  return "unknown";
}

std::optional<SetCase> set_case_from_string(std::string_view s) noexcept {
  for (SetCase c : {SetCase::Bounded, SetCase::UnboundedExclusive, SetCase::WholeLine,
                    SetCase::IntervalUnion}) {
    if (to_string(c) == s) return c;
  }
  return std::nullopt;
}

bool ConfidenceSet::contains(double rho) const noexcept {
  switch (kind()) {
    case SetCase::Bounded: {
      const auto& b = std::get<Bounded>(value_);
      return rho >= b.lower && rho <= b.upper;
    }
    case SetCase::UnboundedExclusive: {
      const auto& u = std::get<UnboundedExclusive>(value_);
      return !(rho > u.excluded_lower && rho < u.excluded_upper);
    }
    case SetCase::WholeLine:
      return true;
    case SetCase::IntervalUnion:
      for (const auto& [lo, hi] : std::get<IntervalUnion>(value_).pieces) {
        if (rho >= lo && rho <= hi) return true;
      }
      return false;
  }
  return false;
}

std::string_view to_string(Method m) noexcept {
  switch (m) {
    case Method::Fieller: return "fieller";
    case Method::Taylor: return "taylor";
    case Method::Index: return "index";
    case Method::TrimmedIndex: return "trimmed-index";
    case Method::ZeroVariance: return "zero-variance";
    case Method::BootstrapPercentile: return "bootstrap-percentile";
    case Method::BootstrapBCa: return "bootstrap-bca";
    case Method::HwangBootstrap: return "hwang";
  }
  return "unknown";
}

std::optional<Method> method_from_string(std::string_view s) noexcept {
  for (Method m : kAllMethods) {
    if (to_string(m) == s) return m;
  }
  return std::nullopt;
}

bool is_bootstrap(Method m) noexcept {
  return m == Method::BootstrapPercentile || m == Method::BootstrapBCa ||
         m == Method::HwangBootstrap;
}

}  // namespace ratioci
