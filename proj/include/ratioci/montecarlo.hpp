#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "ratioci/bootstrap.hpp"
#include "ratioci/confidence_set.hpp"
#include "ratioci/stats_core.hpp"

namespace ratioci {

// One simulation configuration. cv_x and cv_y are individual-level CVs
// (sd/mean); with the default unit means they equal the SDs and rho = 1.
struct SimCell {
  double cv_x = 0.1;
  double cv_y = 0.1;
  std::size_t n = 20;
  double corr = 0.0;
  double mean_x = 1.0;
  double mean_y = 1.0;

  double true_rho() const { return mean_y / mean_x; }
  BivariateNormalParams params() const;
  void validate() const;
};

// Named cells used in the error-bar experiments: A (0.15, 0.10),
// B (0.75, 0.10), C (3.0, 0.10), D (3.0, 1.5). Case-insensitive.
std::optional<SimCell> reference_point(std::string_view name, std::size_t n = 500);

struct SimulationOptions {
  double level = 0.95;
  double trim = 0.25;
  BootstrapConfig bootstrap;  // seed is replaced per run
};

struct MethodCoverage {
  Method method = Method::Fieller;
  std::size_t runs = 0;
  std::size_t covered = 0;
  std::size_t unbounded_sets = 0;  // non-bounded sets; those covering count as covered
  std::size_t failures = 0;        // runs where the method raised an error (not covered)
  double coverage = 0.0;
  // Point-estimate behaviour across the runs that produced an estimate.
  double estimate_mean = 0.0;
  double estimate_variance = 0.0;
  double estimate_median = 0.0;
};

struct CoverageResult {
  SimCell cell;
  std::uint64_t seed = 0;
  std::size_t redraws = 0;
  std::vector<MethodCoverage> methods;

  const MethodCoverage& of(Method m) const;
};

// Draws `runs` samples from the cell and records how often each method's set
// contains the true ratio. Run r uses substream derive_seed(seed, {r, attempt}).
CoverageResult run_cell(const SimCell& cell, std::span<const Method> methods, std::size_t runs,
                        std::uint64_t seed, const SimulationOptions& options = {});

struct GridSpec {
  std::vector<double> cv_x;
  std::vector<double> cv_y;
  std::size_t n = 20;
  double corr = 0.0;

  static std::vector<double> log_axis(double lo, double hi, std::size_t steps);
};

// cv_x at which the CV of the mean is 0.5, i.e. where the denominator is
// typically just significant: 0.5 * sqrt(n).
double reference_cv_x(std::size_t n);

struct CoverageGrid {
  GridSpec spec;
  std::size_t runs = 0;
  std::uint64_t master_seed = 0;
  double reference_cv_x = 0.0;
  std::vector<CoverageResult> cells;  // row-major: cv_x outer, cv_y inner
};

CoverageGrid run_grid(const GridSpec& spec, std::span<const Method> methods, std::size_t runs,
                      std::uint64_t master_seed, const SimulationOptions& options = {});

struct ErrorBarRow {
  std::size_t run = 0;
  Method method = Method::Fieller;
  double estimate = 0.0;
  ConfidenceSet set;
  bool covers_true = true;
};

struct ErrorBarExperiment {
  SimCell cell;
  std::vector<ErrorBarRow> fieller;  // each ordered by estimate
  std::vector<ErrorBarRow> index;

  std::size_t significant_fieller() const;
  std::size_t significant_index() const;
};

ErrorBarExperiment error_bar_experiment(const SimCell& cell, std::size_t runs = 40,
                                        std::uint64_t seed = 0, double level = 0.95);

}  // namespace ratioci
