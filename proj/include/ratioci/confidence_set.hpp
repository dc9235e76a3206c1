#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

namespace ratioci {

struct Bounded {
  double lower = 0.0;
  double upper = 0.0;
  bool operator==(const Bounded&) const = default;
};

// The real line minus the open interval (excluded_lower, excluded_upper).
struct UnboundedExclusive {
  double excluded_lower = 0.0;
  double excluded_upper = 0.0;
  bool operator==(const UnboundedExclusive&) const = default;
};

struct WholeLine {
  bool operator==(const WholeLine&) const = default;
};

// Union of closed intervals (endpoints may be infinite). Only produced when
// inverting the pivot at asymmetric bootstrap quantiles yields a shape that is
// none of the three classical cases, e.g. a half-line, or empty.
struct IntervalUnion {
  std::vector<std::pair<double, double>> pieces;
  bool operator==(const IntervalUnion&) const = default;
};

enum class SetCase { Bounded, UnboundedExclusive, WholeLine, IntervalUnion };

std::string_view to_string(SetCase c) noexcept;
std::optional<SetCase> set_case_from_string(std::string_view s) noexcept;

class ConfidenceSet {
 public:
  using Variant = std::variant<Bounded, UnboundedExclusive, WholeLine, IntervalUnion>;

  ConfidenceSet() : value_(WholeLine{}) {}
  ConfidenceSet(Bounded b) : value_(b) {}
  ConfidenceSet(UnboundedExclusive u) : value_(u) {}
  ConfidenceSet(WholeLine w) : value_(w) {}
  ConfidenceSet(IntervalUnion u) : value_(std::move(u)) {}

  SetCase kind() const noexcept { return static_cast<SetCase>(value_.index()); }
  bool contains(double rho) const noexcept;
  bool is_bounded() const noexcept { return kind() == SetCase::Bounded; }

  const Variant& value() const noexcept { return value_; }
  const Bounded& bounded() const { return std::get<Bounded>(value_); }
  const UnboundedExclusive& exclusive() const { return std::get<UnboundedExclusive>(value_); }

  bool operator==(const ConfidenceSet&) const = default;

 private:
  Variant value_;
};

enum class Method {
  Fieller,
  Taylor,
  Index,
  TrimmedIndex,
  ZeroVariance,
  BootstrapPercentile,
  BootstrapBCa,
  HwangBootstrap,
};

inline constexpr Method kAllMethods[] = {
    Method::Fieller,      Method::Taylor,          Method::Index,
    Method::TrimmedIndex, Method::ZeroVariance,    Method::BootstrapPercentile,
    Method::BootstrapBCa, Method::HwangBootstrap,
};

inline constexpr Method kClosedFormMethods[] = {
    Method::Fieller, Method::Taylor, Method::Index, Method::TrimmedIndex, Method::ZeroVariance,
};

std::string_view to_string(Method m) noexcept;
std::optional<Method> method_from_string(std::string_view s) noexcept;
bool is_bootstrap(Method m) noexcept;

struct FiellerDiagnostics {
  double denom_t_squared = 0.0;      // mean_x^2 / var_mean_x
  double t_unbounded_squared = 0.0;  // discriminant for the two unbounded cases
  SetCase set_case = SetCase::Bounded;
  bool operator==(const FiellerDiagnostics&) const = default;
};

struct MethodResult {
  Method method = Method::Fieller;
  double estimate = 0.0;
  ConfidenceSet set;
  std::optional<FiellerDiagnostics> diagnostics;
  std::vector<std::string> warnings;
};

}  // namespace ratioci
