#include "ratioci/report.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <limits>
#include "json.hpp"

#include "ratioci/error.hpp"
#include "ratioci/ratio_ci.hpp"

namespace ratioci {

using nlohmann::json;

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

std::vector<std::string> split_row(std::string_view line) {
  std::vector<std::string> cells;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = line.find(',', start);
    std::string_view cell = trim(line.substr(start, comma == std::string_view::npos ? line.npos : comma - start));
    if (cell.size() >= 2 && cell.front() == '"' && cell.back() == '"') {
      cell = cell.substr(1, cell.size() - 2);
    }
    cells.emplace_back(cell);
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return cells;
}

double parse_double(std::string_view s, std::string_view what) {
  s = trim(s);
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc() || ptr != s.data() + s.size()) {
    throw Error(ErrorCode::ParseError, "not a number in " + std::string(what) + ": '" + std::string(s) + "'");
  }
  return v;
}

std::string fixed(double v, int decimals = 4) {
  if (!std::isfinite(v)) return v > 0 ? "inf" : (v < 0 ? "-inf" : "nan");
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", decimals, v);
  return buf;
}

std::string padded(std::string_view s, std::size_t width, bool right = true) {
  std::string out(s);
  if (out.size() >= width) return out;
  return right ? std::string(width - out.size(), ' ') + out : out + std::string(width - out.size(), ' ');
}

// JSON has no infinities; encode them as strings.
json json_number(double v) {
  if (std::isnan(v)) return nullptr;
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  return v;
}

double number_from_json(const json& j) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) {
    const std::string s = j.get<std::string>();
    if (s == "inf") return std::numeric_limits<double>::infinity();
    if (s == "-inf") return -std::numeric_limits<double>::infinity();
  }
  if (j.is_null()) return std::numeric_limits<double>::quiet_NaN();
  throw Error(ErrorCode::ParseError, "expected a number, got " + j.dump());
}

// Lower/upper columns for CSV: only bounded sets carry finite limits.
struct Limits {
  std::string lower, upper, excluded_lower, excluded_upper, pieces;
};

Limits limits_of(const ConfidenceSet& set) {
  Limits l;
  switch (set.kind()) {
    case SetCase::Bounded:
      l.lower = format_number(set.bounded().lower);
      l.upper = format_number(set.bounded().upper);
      break;
    case SetCase::UnboundedExclusive:
      l.excluded_lower = format_number(set.exclusive().excluded_lower);
      l.excluded_upper = format_number(set.exclusive().excluded_upper);
      break;
    case SetCase::WholeLine:
      break;
    case SetCase::IntervalUnion: {
      const auto& pieces = std::get<IntervalUnion>(set.value()).pieces;
      for (std::size_t i = 0; i < pieces.size(); ++i) {
        if (i) l.pieces += ';';
        l.pieces += format_number(pieces[i].first) + ':' + format_number(pieces[i].second);
      }
      break;
    }
  }
  return l;
}

std::string csv_escape(std::string_view s) {
  if (s.find_first_of(",\"\n") == std::string_view::npos) return std::string(s);
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + '"';
}

json set_json(const ConfidenceSet& set, json& j) {
  j["case"] = std::string(to_string(set.kind()));
  j["lower"] = nullptr;
  j["upper"] = nullptr;
  j["excluded_lower"] = nullptr;
  j["excluded_upper"] = nullptr;
  switch (set.kind()) {
    case SetCase::Bounded:
      j["lower"] = json_number(set.bounded().lower);
      j["upper"] = json_number(set.bounded().upper);
      break;
    case SetCase::UnboundedExclusive:
      j["excluded_lower"] = json_number(set.exclusive().excluded_lower);
      j["excluded_upper"] = json_number(set.exclusive().excluded_upper);
      break;
    case SetCase::WholeLine:
      break;
    case SetCase::IntervalUnion: {
      json pieces = json::array();
      for (const auto& [lo, hi] : std::get<IntervalUnion>(set.value()).pieces) {
        pieces.push_back(json::array({json_number(lo), json_number(hi)}));
      }
      j["pieces"] = pieces;
      break;
    }
  }
  return j;
}

ConfidenceSet set_from_json(const json& j) {
  const auto kind = set_case_from_string(j.at("case").get<std::string>());
  if (!kind) throw Error(ErrorCode::ParseError, "unknown set case " + j.at("case").dump());
  switch (*kind) {
    case SetCase::Bounded:
      return Bounded{number_from_json(j.at("lower")), number_from_json(j.at("upper"))};
    case SetCase::UnboundedExclusive:
      return UnboundedExclusive{number_from_json(j.at("excluded_lower")),
                                number_from_json(j.at("excluded_upper"))};
    case SetCase::WholeLine:
      return WholeLine{};
    case SetCase::IntervalUnion: {
      IntervalUnion u;
      for (const auto& p : j.at("pieces")) {
        u.pieces.emplace_back(number_from_json(p.at(0)), number_from_json(p.at(1)));
      }
      return u;
    }
  }
  throw Error(ErrorCode::ParseError, "unreachable set case");
}

json result_json(const MethodResult& r) {
  json j;
  j["method"] = std::string(to_string(r.method));
  j["estimate"] = json_number(r.estimate);
  set_json(r.set, j);
  if (r.diagnostics) {
    j["diagnostics"] = {{"denom_t_squared", json_number(r.diagnostics->denom_t_squared)},
                        {"t_unbounded_squared", json_number(r.diagnostics->t_unbounded_squared)},
                        {"set_case", std::string(to_string(r.diagnostics->set_case))}};
  } else {
    j["diagnostics"] = nullptr;
  }
  j["warnings"] = r.warnings;
  return j;
}

json coefficient_json(const Coefficient& c) {
  return {{"name", c.name},
          {"estimate", json_number(c.estimate)},
          {"standard_error", json_number(c.standard_error)},
          {"t_value", json_number(c.t_value)},
          {"p_value", json_number(c.p_value)}};
}

json fit_json(const RegressionFit& fit) {
  json coefs = json::array();
  for (const auto& c : fit.coefficients) coefs.push_back(coefficient_json(c));
  return {{"coefficients", coefs},
          {"n", fit.n},
          {"df", fit.df},
          {"rss", json_number(fit.rss)},
          {"residual_variance", json_number(fit.residual_variance)},
          {"r_squared", json_number(fit.r_squared)}};
}

json comparison_json_value(const ModelComparison& cmp) {
  return {{"restricted", fit_json(cmp.restricted)},
          {"full", fit_json(cmp.full)},
          {"f_statistic", json_number(cmp.f_statistic)},
          {"df_numerator", cmp.df_numerator},
          {"df_denominator", cmp.df_denominator},
          {"p_value", json_number(cmp.p_value)}};
}

}  // namespace

CsvTable CsvTable::parse(std::string_view text) {
  if (text.size() >= 3 && text.substr(0, 3) == "\xEF\xBB\xBF") text.remove_prefix(3);
  CsvTable t;
  std::size_t pos = 0;
  std::size_t line_no = 0;
  while (pos <= text.size()) {
    const std::size_t nl = text.find('\n', pos);
    std::string_view line = text.substr(pos, nl == std::string_view::npos ? text.npos : nl - pos);
    pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    ++line_no;
    if (trim(line).empty()) continue;
    auto cells = split_row(line);
    if (t.header_.empty()) {
      for (const auto& h : cells) {
        if (h.empty()) throw Error(ErrorCode::ParseError, "empty column name in header");
      }
      t.header_ = std::move(cells);
      continue;
    }
    if (cells.size() != t.header_.size()) {
      throw Error(ErrorCode::ParseError, "line " + std::to_string(line_no) + " has " +
                                             std::to_string(cells.size()) + " fields, expected " +
                                             std::to_string(t.header_.size()));
    }
    t.rows_.push_back(std::move(cells));
  }
  if (t.header_.empty()) throw Error(ErrorCode::ParseError, "input is empty (a header row is required)");
  return t;
}

bool CsvTable::has_column(std::string_view name) const noexcept {
  return std::find(header_.begin(), header_.end(), name) != header_.end();
}

std::size_t CsvTable::index_of(std::string_view name) const {
  const auto it = std::find(header_.begin(), header_.end(), name);
  if (it == header_.end()) throw Error(ErrorCode::ParseError, "missing column '" + std::string(name) + "'");
  return static_cast<std::size_t>(it - header_.begin());
}

std::vector<std::string> CsvTable::text_column(std::string_view name) const {
  const std::size_t k = index_of(name);
  std::vector<std::string> out;
  out.reserve(rows_.size());
  for (const auto& r : rows_) out.push_back(r[k]);
  return out;
}

std::vector<double> CsvTable::numeric_column(std::string_view name) const {
  const std::size_t k = index_of(name);
  std::vector<double> out;
  out.reserve(rows_.size());
  for (const auto& r : rows_) out.push_back(parse_double(r[k], "column '" + std::string(name) + "'"));
  return out;
}

PairedSample sample_from_csv(std::string_view text, std::string_view x_column,
                             std::string_view y_column) {
  const CsvTable t = CsvTable::parse(text);
  if (t.rows() < 2) throw Error(ErrorCode::ParseError, "need at least two data rows");
  return PairedSample(t.numeric_column(x_column), t.numeric_column(y_column));
}

SummaryStats stats_from_csv(std::string_view text) {
  const CsvTable t = CsvTable::parse(text);
  if (t.rows() != 1) throw Error(ErrorCode::ParseError, "summary input must have exactly one data row");
  const double n = t.numeric_column("n")[0];
  const double sd_x = t.numeric_column("sd_x")[0];
  const double sd_y = t.numeric_column("sd_y")[0];
  const double corr = t.has_column("corr") ? t.numeric_column("corr")[0] : 0.0;
  if (!(n >= 2.0) || n != std::floor(n)) throw Error(ErrorCode::ParseError, "n must be an integer >= 2");
  if (!(sd_x >= 0.0) || !(sd_y >= 0.0)) throw Error(ErrorCode::ParseError, "standard deviations must be >= 0");
  if (!(corr >= -1.0 && corr <= 1.0)) throw Error(ErrorCode::ParseError, "corr must lie in [-1, 1]");
  SummaryStats s;
  s.n = static_cast<std::size_t>(n);
  s.df = s.n - 1;
  s.mean_x = t.numeric_column("mean_x")[0];
  s.mean_y = t.numeric_column("mean_y")[0];
  s.var_mean_x = sd_x * sd_x / n;
  s.var_mean_y = sd_y * sd_y / n;
  s.cov_mean_xy = corr * sd_x * sd_y / n;
  if (!std::isfinite(s.mean_x) || !std::isfinite(s.mean_y)) {
    throw Error(ErrorCode::NonFiniteInput, "means must be finite");
  }
  return s;
}

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

std::string results_csv(std::span<const MethodResult> results) {
  std::string out =
      "method,estimate,case,lower,upper,excluded_lower,excluded_upper,pieces,denom_t_squared,"
      "t_unbounded_squared,warnings\n";
  for (const auto& r : results) {
    const Limits l = limits_of(r.set);
    std::string warnings;
    for (std::size_t i = 0; i < r.warnings.size(); ++i) warnings += (i ? "; " : "") + r.warnings[i];
    out += std::string(to_string(r.method)) + ',' + format_number(r.estimate) + ',' +
           std::string(to_string(r.set.kind())) + ',' + l.lower + ',' + l.upper + ',' +
           l.excluded_lower + ',' + l.excluded_upper + ',' + l.pieces + ',' +
           (r.diagnostics ? format_number(r.diagnostics->denom_t_squared) : "") + ',' +
           (r.diagnostics ? format_number(r.diagnostics->t_unbounded_squared) : "") + ',' +
           csv_escape(warnings) + '\n';
  }
  return out;
}

std::string results_json(std::span<const MethodResult> results) {
  json arr = json::array();
  for (const auto& r : results) arr.push_back(result_json(r));
  return arr.dump(2) + '\n';
}

std::vector<MethodResult> parse_results_json(std::string_view text) {
  json arr;
  try {
    arr = json::parse(text);
  } catch (const json::exception& e) {
    throw Error(ErrorCode::ParseError, std::string("invalid JSON: ") + e.what());
  }
  if (!arr.is_array()) throw Error(ErrorCode::ParseError, "expected a JSON array of results");
  std::vector<MethodResult> out;
  try {
    for (const auto& j : arr) {
      MethodResult r;
      const auto m = method_from_string(j.at("method").get<std::string>());
      if (!m) throw Error(ErrorCode::ParseError, "unknown method " + j.at("method").dump());
      r.method = *m;
      r.estimate = number_from_json(j.at("estimate"));
      r.set = set_from_json(j);
      if (j.contains("diagnostics") && !j.at("diagnostics").is_null()) {
        const auto& d = j.at("diagnostics");
        FiellerDiagnostics diag;
        diag.denom_t_squared = number_from_json(d.at("denom_t_squared"));
        diag.t_unbounded_squared = number_from_json(d.at("t_unbounded_squared"));
        const auto c = set_case_from_string(d.at("set_case").get<std::string>());
        if (!c) throw Error(ErrorCode::ParseError, "unknown diagnostics set_case");
        diag.set_case = *c;
        r.diagnostics = diag;
      }
      if (j.contains("warnings")) r.warnings = j.at("warnings").get<std::vector<std::string>>();
      out.push_back(std::move(r));
    }
  } catch (const json::exception& e) {
    throw Error(ErrorCode::ParseError, std::string("malformed result: ") + e.what());
  }
  return out;
}

std::string grid_csv(const CoverageGrid& grid) {
  std::string out =
      "cv_x,cv_y,n,corr,method,runs,covered,coverage,unbounded_sets,redraws,failures,"
      "estimate_mean,estimate_variance,estimate_median\n";
  for (const auto& cell : grid.cells) {
    for (const auto& m : cell.methods) {
      out += format_number(cell.cell.cv_x) + ',' + format_number(cell.cell.cv_y) + ',' +
             std::to_string(cell.cell.n) + ',' + format_number(cell.cell.corr) + ',' +
             std::string(to_string(m.method)) + ',' + std::to_string(m.runs) + ',' +
             std::to_string(m.covered) + ',' + format_number(m.coverage) + ',' +
             std::to_string(m.unbounded_sets) + ',' + std::to_string(cell.redraws) + ',' +
             std::to_string(m.failures) + ',' + format_number(m.estimate_mean) + ',' +
             format_number(m.estimate_variance) + ',' + format_number(m.estimate_median) + '\n';
    }
  }
  return out;
}

std::string grid_json(const CoverageGrid& grid) {
  json cells = json::array();
  for (const auto& cell : grid.cells) {
    json methods = json::array();
    for (const auto& m : cell.methods) {
      methods.push_back({{"method", std::string(to_string(m.method))},
                         {"runs", m.runs},
                         {"covered", m.covered},
                         {"coverage", json_number(m.coverage)},
                         {"unbounded_sets", m.unbounded_sets},
                         {"failures", m.failures},
                         {"estimate_mean", json_number(m.estimate_mean)},
                         {"estimate_variance", json_number(m.estimate_variance)},
                         {"estimate_median", json_number(m.estimate_median)}});
    }
    cells.push_back({{"cv_x", json_number(cell.cell.cv_x)},
                     {"cv_y", json_number(cell.cell.cv_y)},
                     {"seed", cell.seed},
                     {"redraws", cell.redraws},
                     {"methods", methods}});
  }
  json j = {{"n", grid.spec.n},
            {"corr", json_number(grid.spec.corr)},
            {"runs", grid.runs},
            {"master_seed", grid.master_seed},
            {"reference_cv_x", json_number(grid.reference_cv_x)},
            {"cv_x", grid.spec.cv_x},
            {"cv_y", grid.spec.cv_y},
            {"cells", cells}};
  return j.dump(2) + '\n';
}

std::string errorbars_csv(const ErrorBarExperiment& exp) {
  std::string out = "method,run,estimate,lower,upper,case,covers_true,excluded_lower,excluded_upper\n";
  for (const auto* rows : {&exp.fieller, &exp.index}) {
    for (const auto& r : *rows) {
      const Limits l = limits_of(r.set);
      out += std::string(to_string(r.method)) + ',' + std::to_string(r.run) + ',' +
             format_number(r.estimate) + ',' + l.lower + ',' + l.upper + ',' +
             std::string(to_string(r.set.kind())) + ',' + (r.covers_true ? "true" : "false") + ',' +
             l.excluded_lower + ',' + l.excluded_upper + '\n';
    }
  }
  return out;
}

std::string errorbars_json(const ErrorBarExperiment& exp) {
  auto rows_json = [](const std::vector<ErrorBarRow>& rows) {
    json arr = json::array();
    for (const auto& r : rows) {
      json j = {{"run", r.run}, {"estimate", json_number(r.estimate)}, {"covers_true", r.covers_true}};
      set_json(r.set, j);
      arr.push_back(j);
    }
    return arr;
  };
  json j = {{"cv_x", json_number(exp.cell.cv_x)},
            {"cv_y", json_number(exp.cell.cv_y)},
            {"n", exp.cell.n},
            {"corr", json_number(exp.cell.corr)},
            {"true_rho", json_number(exp.cell.true_rho())},
            {"significant_fieller", exp.significant_fieller()},
            {"significant_index", exp.significant_index()},
            {"fieller", rows_json(exp.fieller)},
            {"index", rows_json(exp.index)}};
  return j.dump(2) + '\n';
}

namespace {

// Far end of a tangent line drawn from the origin past the ellipse.
double tangent_reach(const EllipseConstruction& e) {
  const double far = e.center.first >= 0 ? e.center.first + e.half_axis_x
                                         : e.center.first - e.half_axis_x;
  return 1.15 * far;
}

}  // namespace

std::string ellipse_csv(const EllipseConstruction& e, std::size_t points) {
  std::string out = "element,x,y\n";
  auto row = [&](std::string_view element, double x, double y) {
    out += std::string(element) + ',' + format_number(x) + ',' + format_number(y) + '\n';
  };
  row("center", e.center.first, e.center.second);
  for (const auto& [x, y] : ellipse_boundary_points(e, points)) row("boundary", x, y);
  const double reach = tangent_reach(e);
  for (std::size_t k = 0; k < e.tangent_slopes.size(); ++k) {
    const std::string name = e.tangent_slopes.size() == 2 ? (k == 0 ? "tangent_lower" : "tangent_upper")
                                                         : "tangent";
    row(name, 0.0, 0.0);
    row(name, reach, e.tangent_slopes[k] * reach);
  }
  row("marginal_x", e.center.first - e.half_axis_x, 0.0);
  row("marginal_x", e.center.first + e.half_axis_x, 0.0);
  row("marginal_y", 0.0, e.center.second - e.half_axis_y);
  row("marginal_y", 0.0, e.center.second + e.half_axis_y);
  return out;
}

std::string ellipse_json(const EllipseConstruction& e, std::size_t points) {
  json boundary = json::array();
  for (const auto& [x, y] : ellipse_boundary_points(e, points)) {
    boundary.push_back(json::array({json_number(x), json_number(y)}));
  }
  json slopes = json::array();
  for (double s : e.tangent_slopes) slopes.push_back(json_number(s));
  json j = {{"center", json::array({json_number(e.center.first), json_number(e.center.second)})},
            {"half_axis_x", json_number(e.half_axis_x)},
            {"half_axis_y", json_number(e.half_axis_y)},
            {"covariance_of_means", json_number(e.covariance_of_means)},
            {"quantile", json_number(e.quantile)},
            {"tangent_slopes", slopes},
            {"touches_y_axis", e.touches_y_axis},
            {"boundary", boundary}};
  return j.dump(2) + '\n';
}

std::string ellipse_svg(const EllipseConstruction& e, std::size_t points) {
  const auto boundary = ellipse_boundary_points(e, points);
  const double reach = tangent_reach(e);

  double xmin = std::min(0.0, 1.0), xmax = 1.0, ymin = 0.0, ymax = 0.0;
  auto include = [&](double x, double y) {
    xmin = std::min(xmin, x);
    xmax = std::max(xmax, x);
    ymin = std::min(ymin, y);
    ymax = std::max(ymax, y);
  };
  for (const auto& [x, y] : boundary) include(x, y);
  for (double s : e.tangent_slopes) {
    include(reach, s * reach);
    include(1.0, s);
  }
  double w = xmax - xmin, h = ymax - ymin;
  if (!(w > 0)) w = 1.0;
  if (!(h > 0)) h = 1.0;
  xmin -= 0.08 * w;
  xmax += 0.08 * w;
  ymin -= 0.08 * h;
  ymax += 0.08 * h;

  constexpr double kSize = 600.0;
  auto px = [&](double x) { return fixed((x - xmin) / (xmax - xmin) * kSize, 2); };
  auto py = [&](double y) { return fixed((ymax - y) / (ymax - ymin) * kSize, 2); };
  auto line = [&](std::string_view cls, double x1, double y1, double x2, double y2,
                  std::string_view style) {
    return "  <line class=\"" + std::string(cls) + "\" x1=\"" + px(x1) + "\" y1=\"" + py(y1) +
           "\" x2=\"" + px(x2) + "\" y2=\"" + py(y2) + "\" " + std::string(style) + "/>\n";
  };

  std::string out =
      "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"600\" height=\"600\" viewBox=\"0 0 600 600\">\n";
  out += "  <rect width=\"600\" height=\"600\" fill=\"white\"/>\n";
  out += line("axis", xmin, 0.0, xmax, 0.0, "stroke=\"gray\" stroke-width=\"1\"");
  out += line("axis", 0.0, ymin, 0.0, ymax, "stroke=\"gray\" stroke-width=\"1\"");
  out += line("unit-x", 1.0, ymin, 1.0, ymax, "stroke=\"gray\" stroke-dasharray=\"4 4\"");

  out += "  <path id=\"ellipse\" d=\"";
  for (std::size_t i = 0; i < boundary.size(); ++i) {
    out += (i == 0 ? "M " : " L ") + px(boundary[i].first) + ' ' + py(boundary[i].second);
  }
  out += " Z\" fill=\"none\" stroke=\"black\" stroke-width=\"1.5\"/>\n";

  for (double s : e.tangent_slopes) {
    out += line("tangent", 0.0, 0.0, reach, s * reach, "stroke=\"steelblue\" stroke-width=\"1.5\"");
  }
  const std::string mark = "stroke=\"firebrick\" stroke-width=\"3\"";
  out += line("interval-mark", e.center.first - e.half_axis_x, 0.0, e.center.first + e.half_axis_x,
              0.0, mark);
  out += line("interval-mark", 0.0, e.center.second - e.half_axis_y, 0.0,
              e.center.second + e.half_axis_y, mark);
  if (e.tangent_slopes.size() == 2) {
    out += line("interval-mark", 1.0, e.tangent_slopes[0], 1.0, e.tangent_slopes[1], mark);
  }
  out += "  <circle class=\"center\" cx=\"" + px(e.center.first) + "\" cy=\"" +
         py(e.center.second) + "\" r=\"3\" fill=\"black\"/>\n";
  out += "</svg>\n";
  return out;
}

std::string regression_text(const RegressionFit& fit, std::string_view title) {
  std::string out = std::string(title) + "  (n = " + std::to_string(fit.n) +
                    ", df = " + std::to_string(fit.df) + ")\n";
  out += padded("coefficient", 14, false) + padded("estimate", 14) + padded("std_error", 14) +
         padded("t_value", 12) + padded("p_value", 12) + '\n';
  for (const auto& c : fit.coefficients) {
    out += padded(c.name, 14, false) + padded(fixed(c.estimate), 14) +
           padded(fixed(c.standard_error), 14) + padded(fixed(c.t_value, 3), 12) +
           padded(fixed(c.p_value), 12) + '\n';
  }
  out += "residual_variance = " + fixed(fit.residual_variance, 6) + ", rss = " + fixed(fit.rss, 6) +
         ", r_squared = " + fixed(fit.r_squared) + '\n';
  return out;
}

std::string regression_json(const RegressionFit& fit) { return fit_json(fit).dump(2) + '\n'; }

std::string comparison_text(const ModelComparison& cmp, std::string_view title) {
  std::string out = std::string(title) + '\n';
  out += regression_text(cmp.restricted, "  restricted model");
  out += regression_text(cmp.full, "  full model");
  out += "  F(" + std::to_string(cmp.df_numerator) + ", " + std::to_string(cmp.df_denominator) +
         ") = " + fixed(cmp.f_statistic) + ", p = " + fixed(cmp.p_value) + '\n';
  return out;
}

std::string comparison_json(const ModelComparison& cmp) {
  return comparison_json_value(cmp).dump(2) + '\n';
}

std::string spurious_text(const SpuriousDemo& demo) {
  std::string out = "Spurious correlation demonstration (illustrative; n = " +
                    std::to_string(demo.x.size()) + ", p-values are fragile)\n\n";
  out += padded("county", 8, false) + padded("women", 10) + padded("babies", 10) +
         padded("storks", 10) + padded("birth_rate", 12) + padded("stork_rate", 12) + '\n';
  for (std::size_t i = 0; i < demo.x.size(); ++i) {
    out += padded(std::to_string(i + 1), 8, false) + padded(fixed(demo.x[i], 2), 10) +
           padded(fixed(demo.y[i], 2), 10) + padded(fixed(demo.z[i], 2), 10) +
           padded(fixed(demo.y[i] / demo.x[i], 2), 12) + padded(fixed(demo.z[i] / demo.x[i], 2), 12) +
           '\n';
  }
  auto verdict = [](const ModelComparison& c) {
    const Coefficient& g = c.full.coef("gamma");
    return "  gamma = " + fixed(g.estimate) + " (se " + fixed(g.standard_error) + "), F = " +
           fixed(c.f_statistic) + ", p = " + fixed(c.p_value) + " -> " +
           (c.p_value < 0.05 ? "significant" : "not significant") + " at 0.05\n";
  };
  out += "\n(a) partial regression: y ~ 1 + x  vs  y ~ 1 + x + z\n";
  out += verdict(demo.partial);
  out += "(b) rate-based regression: y/x ~ 1  vs  y/x ~ 1 + z/x\n";
  out += verdict(demo.rate_based);
  out += "\n";
  out += comparison_text(demo.partial, "Details (a)");
  out += comparison_text(demo.rate_based, "Details (b)");
  return out;
}

std::string spurious_json(const SpuriousDemo& demo) {
  json table = json::array();
  for (std::size_t i = 0; i < demo.x.size(); ++i) {
    table.push_back({{"women", demo.x[i]},
                     {"babies", demo.y[i]},
                     {"storks", demo.z[i]},
                     {"birth_rate", json_number(demo.y[i] / demo.x[i])},
                     {"stork_rate", json_number(demo.z[i] / demo.x[i])}});
  }
  json j = {{"table", table},
            {"partial_regression", comparison_json_value(demo.partial)},
            {"rate_based", comparison_json_value(demo.rate_based)}};
  return j.dump(2) + '\n';
}

}  // namespace ratioci
