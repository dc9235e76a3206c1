#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ratioci/confidence_set.hpp"
#include "ratioci/geometry.hpp"
#include "ratioci/linear_models.hpp"
#include "ratioci/montecarlo.hpp"
#include "ratioci/stats_core.hpp"

namespace ratioci {

// Comma-separated text with a required header row. Cells are kept as text;
// numeric access validates on demand.
class CsvTable {
 public:
  static CsvTable parse(std::string_view text);

  const std::vector<std::string>& header() const noexcept { return header_; }
  std::size_t rows() const noexcept { return rows_.size(); }
  bool has_column(std::string_view name) const noexcept;
  std::vector<std::string> text_column(std::string_view name) const;
  std::vector<double> numeric_column(std::string_view name) const;

 private:
  std::size_t index_of(std::string_view name) const;

  std::vector<std::string> header_;
  std::vector<std::vector<std::string>> rows_;
};

PairedSample sample_from_csv(std::string_view text, std::string_view x_column = "x",
                             std::string_view y_column = "y");

// One-row table of per-observation summaries:
// n, mean_x, mean_y, sd_x, sd_y and optionally corr (default 0).
SummaryStats stats_from_csv(std::string_view text);

// Shortest representation that parses back to the same double.
std::string format_number(double v);

enum class OutputFormat { Csv, Json, Text, Svg };

std::string results_csv(std::span<const MethodResult> results);
std::string results_json(std::span<const MethodResult> results);
std::vector<MethodResult> parse_results_json(std::string_view text);

std::string grid_csv(const CoverageGrid& grid);
std::string grid_json(const CoverageGrid& grid);

std::string errorbars_csv(const ErrorBarExperiment& exp);
std::string errorbars_json(const ErrorBarExperiment& exp);

std::string ellipse_csv(const EllipseConstruction& e, std::size_t points);
std::string ellipse_json(const EllipseConstruction& e, std::size_t points);
std::string ellipse_svg(const EllipseConstruction& e, std::size_t points);

std::string regression_text(const RegressionFit& fit, std::string_view title);
std::string regression_json(const RegressionFit& fit);
std::string comparison_text(const ModelComparison& cmp, std::string_view title);
std::string comparison_json(const ModelComparison& cmp);

std::string spurious_text(const SpuriousDemo& demo);
std::string spurious_json(const SpuriousDemo& demo);

}  // namespace ratioci
