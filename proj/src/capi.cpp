#include "ratioci/ratioci.h"

#include <cmath>
#include <cstdio>
#include <limits>
#include <map>
#include <new>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "ratioci/bootstrap.hpp"
#include "ratioci/error.hpp"
#include "ratioci/geometry.hpp"
#include "ratioci/linear_models.hpp"
#include "ratioci/montecarlo.hpp"
#include "ratioci/parallel.hpp"
#include "ratioci/ratio_ci.hpp"
#include "ratioci/report.hpp"

struct ratioci_sample {
  ratioci::PairedSample value;
};

struct ratioci_text {
  std::string value;
};

namespace {

thread_local std::string g_last_error;

ratioci_status status_of(ratioci::ErrorCode code) {
  using ratioci::ErrorCode;
  switch (code) {
    case ErrorCode::InvalidArgument: return RATIOCI_ERR_INVALID_ARGUMENT;
    case ErrorCode::DomainError: return RATIOCI_ERR_DOMAIN;
    case ErrorCode::TooFewObservations: return RATIOCI_ERR_TOO_FEW_OBSERVATIONS;
    case ErrorCode::NonFiniteInput: return RATIOCI_ERR_NON_FINITE_INPUT;
    case ErrorCode::ZeroMean: return RATIOCI_ERR_ZERO_MEAN;
    case ErrorCode::ZeroDenominator: return RATIOCI_ERR_ZERO_DENOMINATOR;
    case ErrorCode::ZeroNumerator: return RATIOCI_ERR_ZERO_NUMERATOR;
    case ErrorCode::ZeroIndividualDenominator: return RATIOCI_ERR_ZERO_INDIVIDUAL_DENOMINATOR;
    case ErrorCode::DegenerateVariance: return RATIOCI_ERR_DEGENERATE_VARIANCE;
    case ErrorCode::NonFiniteResult: return RATIOCI_ERR_NON_FINITE_RESULT;
    case ErrorCode::TooFewAfterTrim: return RATIOCI_ERR_TOO_FEW_AFTER_TRIM;
    case ErrorCode::TooFewReplicates: return RATIOCI_ERR_TOO_FEW_REPLICATES;
    case ErrorCode::AllResamplesDegenerate: return RATIOCI_ERR_ALL_RESAMPLES_DEGENERATE;
    case ErrorCode::SingularCovariance: return RATIOCI_ERR_SINGULAR_COVARIANCE;
    case ErrorCode::RankDeficient: return RATIOCI_ERR_RANK_DEFICIENT;
    case ErrorCode::NonPositiveData: return RATIOCI_ERR_NON_POSITIVE_DATA;
    case ErrorCode::ParseError: return RATIOCI_ERR_PARSE;
  }
  return RATIOCI_ERR_INTERNAL;
}

ratioci_status fail(ratioci_status status, std::string message) {
  g_last_error = std::move(message);
  return status;
}

template <class F>
ratioci_status guarded(F&& body) {
  try {
    g_last_error.clear();
    body();
    return RATIOCI_OK;
  } catch (const ratioci::Error& e) {
    return fail(status_of(e.code()), e.what());
  } catch (const std::bad_alloc&) {
    return fail(RATIOCI_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(RATIOCI_ERR_INTERNAL, e.what());
  }
}

void require(bool ok, const char* what) {
  if (!ok) throw ratioci::Error(ratioci::ErrorCode::InvalidArgument, what);
}

std::string_view view(const char* text, std::size_t size) {
  return text == nullptr ? std::string_view() : std::string_view(text, size);
}

ratioci_text* make_text(std::string s) { return new ratioci_text{std::move(s)}; }

ratioci::Method to_method(ratioci_method m) {
  require(m >= RATIOCI_METHOD_FIELLER && m <= RATIOCI_METHOD_HWANG, "unknown method");
  return static_cast<ratioci::Method>(m);
}

ratioci_summary to_c(const ratioci::SummaryStats& s) {
  return {s.n, s.mean_x, s.mean_y, s.var_mean_x, s.var_mean_y, s.cov_mean_xy, s.df};
}

ratioci::SummaryStats from_c(const ratioci_summary& s) {
  ratioci::SummaryStats out;
  out.n = s.n;
  out.mean_x = s.mean_x;
  out.mean_y = s.mean_y;
  out.var_mean_x = s.var_mean_x;
  out.var_mean_y = s.var_mean_y;
  out.cov_mean_xy = s.cov_mean_xy;
  out.df = s.df;
  for (double v : {s.mean_x, s.mean_y, s.var_mean_x, s.var_mean_y, s.cov_mean_xy}) {
    if (!std::isfinite(v)) throw ratioci::Error(ratioci::ErrorCode::NonFiniteInput, "summary has non-finite values");
  }
  if (s.var_mean_x < 0 || s.var_mean_y < 0) {
    throw ratioci::Error(ratioci::ErrorCode::InvalidArgument, "variances must be >= 0");
  }
  if (s.df < 1) throw ratioci::Error(ratioci::ErrorCode::DomainError, "df must be >= 1");
  return out;
}

ratioci_interval to_c(const ratioci::MethodResult& r) {
  ratioci_interval out{};
  const double nan = std::numeric_limits<double>::quiet_NaN();
  out.method = static_cast<ratioci_method>(r.method);
  out.estimate = r.estimate;
  out.set_case = static_cast<ratioci_set_case>(r.set.kind());
  out.lower = nan;
  out.upper = nan;
  if (r.set.kind() == ratioci::SetCase::Bounded) {
    out.lower = r.set.bounded().lower;
    out.upper = r.set.bounded().upper;
  } else if (r.set.kind() == ratioci::SetCase::UnboundedExclusive) {
    out.lower = r.set.exclusive().excluded_lower;
    out.upper = r.set.exclusive().excluded_upper;
  }
  out.has_diagnostics = r.diagnostics.has_value();
  out.denom_t_squared = r.diagnostics ? r.diagnostics->denom_t_squared : nan;
  out.t_unbounded_squared = r.diagnostics ? r.diagnostics->t_unbounded_squared : nan;
  return out;
}

ratioci_ci_options options_or_default(const ratioci_ci_options* options) {
  ratioci_ci_options o;
  ratioci_ci_options_init(&o);
  if (options) o = *options;
  return o;
}

ratioci::MethodResult compute(const ratioci::PairedSample& sample, ratioci::Method method,
                              const ratioci_ci_options& o) {
  const ratioci::ConfidenceSpec spec =
      ratioci::ConfidenceSpec::make(o.level, static_cast<double>(sample.size() - 1));
  ratioci::BootstrapConfig boot;
  boot.replications = o.replications;
  boot.seed = o.seed;
  using ratioci::Method;
  switch (method) {
    case Method::Fieller: return ratioci::fieller_set(ratioci::summarize(sample), spec);
    case Method::Taylor: return ratioci::taylor_limits(ratioci::summarize(sample), spec);
    case Method::Index: return ratioci::index_limits(sample, spec);
    case Method::TrimmedIndex: return ratioci::trimmed_index_limits(sample, spec, o.trim);
    case Method::ZeroVariance: return ratioci::zero_variance_limits(sample, spec);
    case Method::BootstrapPercentile:
      boot.method = ratioci::BootstrapInterval::Percentile;
      return ratioci::bootstrap_ratio(sample, boot, o.level);
    case Method::BootstrapBCa:
      boot.method = ratioci::BootstrapInterval::BCa;
      return ratioci::bootstrap_ratio(sample, boot, o.level);
    case Method::HwangBootstrap: return ratioci::hwang_set(sample, boot, spec);
  }
  throw ratioci::Error(ratioci::ErrorCode::InvalidArgument, "unknown method");
}

std::vector<ratioci::Method> methods_of(const ratioci_method* methods, std::size_t count) {
  require(methods != nullptr || count == 0, "methods must not be NULL");
  std::vector<ratioci::Method> out;
  for (std::size_t i = 0; i < count; ++i) out.push_back(to_method(methods[i]));
  require(!out.empty(), "at least one method is required");
  return out;
}

std::string fixed(double v, int decimals) {
  if (!std::isfinite(v)) return v > 0 ? "inf" : (v < 0 ? "-inf" : "nan");
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", decimals, v);
  return buf;
}

std::string set_text(const ratioci::ConfidenceSet& set) {
  using ratioci::SetCase;
  switch (set.kind()) {
    case SetCase::Bounded:
      return "[" + fixed(set.bounded().lower, 4) + ", " + fixed(set.bounded().upper, 4) + "]";
    case SetCase::UnboundedExclusive:
      return "(-inf, " + fixed(set.exclusive().excluded_lower, 4) + "] U [" +
             fixed(set.exclusive().excluded_upper, 4) + ", inf)";
    case SetCase::WholeLine:
      return "(-inf, inf)";
    case SetCase::IntervalUnion: {
      std::string s;
      for (const auto& [lo, hi] : std::get<ratioci::IntervalUnion>(set.value()).pieces) {
        if (!s.empty()) s += " U ";
        s += "[" + fixed(lo, 4) + ", " + fixed(hi, 4) + "]";
      }
      return s.empty() ? "empty" : s;
    }
  }
  return "";
}

std::string results_text(const std::vector<ratioci::MethodResult>& results) {
  std::string out;
  char line[256];
  std::snprintf(line, sizeof line, "%-22s %12s %12s %12s  %s\n", "method", "lower", "estimate", "upper", "case");
  out += line;
  for (const auto& r : results) {
    double lo = std::numeric_limits<double>::quiet_NaN(), hi = lo;
    if (r.set.is_bounded()) {
      lo = r.set.bounded().lower;
      hi = r.set.bounded().upper;
    }
    std::snprintf(line, sizeof line, "%-22s %12s %12s %12s  %s\n",
                  std::string(ratioci::to_string(r.method)).c_str(),
                  r.set.is_bounded() ? fixed(lo, 4).c_str() : "",
                  fixed(r.estimate, 4).c_str(), r.set.is_bounded() ? fixed(hi, 4).c_str() : "",
                  r.set.is_bounded() ? "bounded" : set_text(r.set).c_str());
    out += line;
    for (const auto& w : r.warnings) out += "    warning: " + w + "\n";
  }
  return out;
}

std::string render_results(const std::vector<ratioci::MethodResult>& results, ratioci_format format) {
  switch (format) {
    case RATIOCI_FORMAT_CSV: return ratioci::results_csv(results);
    case RATIOCI_FORMAT_JSON: return ratioci::results_json(results);
    case RATIOCI_FORMAT_TEXT: return results_text(results);
    default: break;
  }
  throw ratioci::Error(ratioci::ErrorCode::InvalidArgument, "format not available for interval reports");
}

std::vector<ratioci::Regressor> columns(const ratioci::CsvTable& table, const ratioci_regress_options& o) {
  std::vector<ratioci::Regressor> out;
  if (o.regressor_count == 0 || o.regressors == nullptr) {
    out.push_back({"x", table.numeric_column("x")});
    return out;
  }
  for (std::size_t i = 0; i < o.regressor_count; ++i) {
    require(o.regressors[i] != nullptr, "regressor name must not be NULL");
    out.push_back({o.regressors[i], table.numeric_column(o.regressors[i])});
  }
  return out;
}

std::string regress(std::string_view text, const ratioci_regress_options& o, ratioci_format format) {
  using nlohmann::json;
  require(format == RATIOCI_FORMAT_TEXT || format == RATIOCI_FORMAT_JSON,
          "regression reports are text or json");
  const bool as_json = format == RATIOCI_FORMAT_JSON;
  const ratioci::CsvTable table = ratioci::CsvTable::parse(text);
  const std::string response = o.response ? o.response : "y";
  const std::vector<double> y = table.numeric_column(response);
  auto regs = columns(table, o);

  switch (o.model) {
    case RATIOCI_MODEL_OLS: {
      const ratioci::RegressionFit fit = ratioci::ols_fit(y, regs, o.intercept != 0);
      std::string title = "OLS: " + response + " ~ " + (o.intercept ? "1" : "0");
      for (const auto& r : regs) title += " + " + r.name;
      std::optional<ratioci::MethodResult> fieller;
      if (!o.intercept && regs.size() == 1) {
        const ratioci::PairedSample sample(regs[0].values, y);
        const auto stats = ratioci::summarize(sample);
        fieller = ratioci::fieller_set(
            stats, ratioci::ConfidenceSpec::make(o.level, static_cast<double>(stats.df)));
      }
      if (as_json) {
        json j = json::parse(ratioci::regression_json(fit));
        j["model"] = "ols";
        if (fieller) j["fieller"] = json::parse(ratioci::results_json({&*fieller, 1}))[0];
        return j.dump(2) + "\n";
      }
      std::string out = ratioci::regression_text(fit, title);
      if (fieller) {
        out += "note: with measurement error in both variables the zero-intercept slope is a ratio of\n"
               "      means; the appropriate interval is Fieller's: " +
               set_text(fieller->set) + " (estimate " + fixed(fieller->estimate, 4) + ", level " +
               fixed(o.level, 3) + ")\n";
      }
      return out;
    }
    case RATIOCI_MODEL_DEFLATED: {
      require(regs.size() == 1, "the deflated model takes exactly one regressor");
      const ratioci::RegressionFit fit =
          ratioci::deflated_fit(ratioci::PairedSample(regs[0].values, y));
      if (as_json) {
        json j = json::parse(ratioci::regression_json(fit));
        j["model"] = "deflated";
        return j.dump(2) + "\n";
      }
      return ratioci::regression_text(fit, "Deflated: " + response + "/" + regs[0].name +
                                               " = alpha (1/" + regs[0].name + ") + beta");
    }
    case RATIOCI_MODEL_ALLOMETRIC: {
      const ratioci::AllometricFit fit = ratioci::allometric_fit(y, regs);
      if (as_json) {
        json j = json::parse(ratioci::regression_json(fit.log_fit));
        j["model"] = "allometric";
        j["beta"] = fit.beta;
        j["log_beta"] = fit.log_beta;
        j["exponents"] = fit.exponents;
        return j.dump(2) + "\n";
      }
      return ratioci::regression_text(fit.log_fit, "Allometric: log " + response + " = log beta + sum gamma log x") +
             "beta = exp(log_beta) = " + fixed(fit.beta, 6) + "\n";
    }
    case RATIOCI_MODEL_ANCOVA: {
      require(regs.size() == 1, "the ANCOVA ratio comparison takes exactly one regressor");
      const std::string group_col = o.group ? o.group : "group";
      const auto labels = table.text_column(group_col);
      std::vector<std::string> order;
      std::map<std::string, std::pair<std::vector<double>, std::vector<double>>> data;
      for (std::size_t i = 0; i < labels.size(); ++i) {
        if (!data.count(labels[i])) order.push_back(labels[i]);
        data[labels[i]].first.push_back(regs[0].values[i]);
        data[labels[i]].second.push_back(y[i]);
      }
      std::vector<ratioci::PairedSample> groups;
      for (const auto& g : order) groups.emplace_back(data[g].first, data[g].second);
      const ratioci::ModelComparison cmp = ratioci::ancova_ratio_compare(groups);
      if (as_json) {
        json j = json::parse(ratioci::comparison_json(cmp));
        j["model"] = "ancova";
        j["groups"] = order;
        return j.dump(2) + "\n";
      }
      std::string title = "ANCOVA ratio comparison (groups:";
      for (std::size_t g = 0; g < order.size(); ++g) title += " beta_" + std::to_string(g + 1) + "=" + order[g];
      return ratioci::comparison_text(cmp, title + ")");
    }
  }
  throw ratioci::Error(ratioci::ErrorCode::InvalidArgument, "unknown model");
}

std::string pang_demo(ratioci_format format) {
  const ratioci::PairedSample sample({6.34, 4.02, 2.88}, {4.87, 8.30, 11.66});
  const auto stats = ratioci::summarize(sample);
  const auto spec = ratioci::ConfidenceSpec::make(0.95, static_cast<double>(stats.df));
  const std::vector<ratioci::MethodResult> rows = {
      ratioci::fieller_set(stats, spec), ratioci::taylor_limits(stats, spec),
      ratioci::index_limits(sample, spec), ratioci::zero_variance_limits(sample, spec)};
  if (format == RATIOCI_FORMAT_JSON) return ratioci::results_json(rows);
  require(format == RATIOCI_FORMAT_TEXT, "demo output is text or json");
  std::string out = "Example P1: x = (6.34, 4.02, 2.88), y = (4.87, 8.30, 11.66), 95% limits, t_q(df=2) = " +
                    fixed(spec.quantile, 4) + "\n\n";
  return out + results_text(rows);
}

}  // namespace

extern "C" {

const char* ratioci_last_error(void) { return g_last_error.c_str(); }

const char* ratioci_status_name(ratioci_status status) {
  switch (status) {
    case RATIOCI_OK: return "ok";
    case RATIOCI_ERR_INTERNAL: return "internal error";
    default: break;
  }
  if (status >= RATIOCI_ERR_INVALID_ARGUMENT && status <= RATIOCI_ERR_PARSE) {
    static const ratioci::ErrorCode codes[] = {
        ratioci::ErrorCode::InvalidArgument,       ratioci::ErrorCode::DomainError,
        ratioci::ErrorCode::TooFewObservations,    ratioci::ErrorCode::NonFiniteInput,
        ratioci::ErrorCode::ZeroMean,              ratioci::ErrorCode::ZeroDenominator,
        ratioci::ErrorCode::ZeroNumerator,         ratioci::ErrorCode::ZeroIndividualDenominator,
        ratioci::ErrorCode::DegenerateVariance,    ratioci::ErrorCode::NonFiniteResult,
        ratioci::ErrorCode::TooFewAfterTrim,       ratioci::ErrorCode::TooFewReplicates,
        ratioci::ErrorCode::AllResamplesDegenerate, ratioci::ErrorCode::SingularCovariance,
        ratioci::ErrorCode::RankDeficient,         ratioci::ErrorCode::NonPositiveData,
        ratioci::ErrorCode::ParseError};
    return ratioci::to_string(codes[status - 1]).data();
  }
  return "unknown status";
}

int ratioci_status_is_input_error(ratioci_status status) {
  switch (status) {
    case RATIOCI_ERR_INVALID_ARGUMENT:
    case RATIOCI_ERR_DOMAIN:
    case RATIOCI_ERR_TOO_FEW_OBSERVATIONS:
    case RATIOCI_ERR_NON_FINITE_INPUT:
    case RATIOCI_ERR_PARSE:
      return 1;
    default:
      return 0;
  }
}

const char* ratioci_method_name(ratioci_method method) {
  if (method < RATIOCI_METHOD_FIELLER || method > RATIOCI_METHOD_HWANG) return "";
  return ratioci::to_string(static_cast<ratioci::Method>(method)).data();
}

ratioci_status ratioci_method_from_name(const char* name, ratioci_method* out) {
  return guarded([&] {
    require(name != nullptr && out != nullptr, "arguments must not be NULL");
    const auto m = ratioci::method_from_string(name);
    if (!m) throw ratioci::Error(ratioci::ErrorCode::InvalidArgument, std::string("unknown method '") + name + "'");
    *out = static_cast<ratioci_method>(*m);
  });
}

const char* ratioci_text_data(const ratioci_text* text) { return text ? text->value.c_str() : ""; }
size_t ratioci_text_size(const ratioci_text* text) { return text ? text->value.size() : 0; }
void ratioci_text_destroy(ratioci_text* text) { delete text; }

ratioci_status ratioci_sample_create(const double* xs, const double* ys, size_t n, ratioci_sample** out) {
  return guarded([&] {
    require(out != nullptr, "out must not be NULL");
    require((xs && ys) || n == 0, "data pointers must not be NULL");
    std::vector<double> x(xs, xs + n), y(ys, ys + n);
    *out = new ratioci_sample{ratioci::PairedSample(std::move(x), std::move(y))};
  });
}

ratioci_status ratioci_sample_from_csv(const char* text, size_t size, const char* x_column,
                                       const char* y_column, ratioci_sample** out) {
  return guarded([&] {
    require(out != nullptr, "out must not be NULL");
    *out = new ratioci_sample{ratioci::sample_from_csv(view(text, size), x_column ? x_column : "x",
                                                       y_column ? y_column : "y")};
  });
}

void ratioci_sample_destroy(ratioci_sample* sample) { delete sample; }
size_t ratioci_sample_size(const ratioci_sample* sample) { return sample ? sample->value.size() : 0; }

ratioci_status ratioci_summarize(const ratioci_sample* sample, ratioci_summary* out) {
  return guarded([&] {
    require(sample && out, "arguments must not be NULL");
    *out = to_c(ratioci::summarize(sample->value));
  });
}

ratioci_status ratioci_summary_from_csv(const char* text, size_t size, ratioci_summary* out) {
  return guarded([&] {
    require(out != nullptr, "out must not be NULL");
    *out = to_c(ratioci::stats_from_csv(view(text, size)));
  });
}

void ratioci_ci_options_init(ratioci_ci_options* options) {
  if (options) *options = {0.95, 2000, 0, 0.25};
}

ratioci_status ratioci_compute(const ratioci_sample* sample, ratioci_method method,
                               const ratioci_ci_options* options, ratioci_interval* out) {
  return guarded([&] {
    require(sample && out, "arguments must not be NULL");
    *out = to_c(compute(sample->value, to_method(method), options_or_default(options)));
  });
}

ratioci_status ratioci_fieller_from_summary(const ratioci_summary* summary, double level,
                                            ratioci_interval* out) {
  return guarded([&] {
    require(summary && out, "arguments must not be NULL");
    const auto stats = from_c(*summary);
    *out = to_c(ratioci::fieller_set(stats, ratioci::ConfidenceSpec::make(level, static_cast<double>(stats.df))));
  });
}

ratioci_status ratioci_ci_report(const ratioci_sample* sample, const ratioci_method* methods,
                                 size_t method_count, const ratioci_ci_options* options,
                                 ratioci_format format, ratioci_text** out) {
  return guarded([&] {
    require(sample && out, "arguments must not be NULL");
    const auto o = options_or_default(options);
    std::vector<ratioci::MethodResult> results;
    for (ratioci::Method m : methods_of(methods, method_count)) {
      try {
        results.push_back(compute(sample->value, m, o));
      } catch (const ratioci::Error& e) {
        throw ratioci::Error(e.code(), "method '" + std::string(ratioci::to_string(m)) + "': " + e.what());
      }
    }
    *out = make_text(render_results(results, format));
  });
}

ratioci_status ratioci_t_quantile(double p, double df, double* out) {
  return guarded([&] {
    require(out != nullptr, "out must not be NULL");
    *out = ratioci::t_quantile(p, df);
  });
}

void ratioci_set_max_threads(size_t threads) { ratioci::set_max_threads(threads); }

void ratioci_grid_options_init(ratioci_grid_options* o) {
  if (o) *o = {20, 0.0, 0.01, 10.0, 7, 0.01, 10.0, 7, 500, 0, 0.95, 0.25, 2000};
}

ratioci_status ratioci_simulate_grid(const ratioci_grid_options* options, const ratioci_method* methods,
                                     size_t method_count, ratioci_format format, ratioci_text** out) {
  return guarded([&] {
    require(options && out, "arguments must not be NULL");
    require(format == RATIOCI_FORMAT_CSV || format == RATIOCI_FORMAT_JSON, "grid output is csv or json");
    const auto ms = methods_of(methods, method_count);
    ratioci::GridSpec spec;
    spec.n = options->n;
    spec.corr = options->corr;
    spec.cv_x = ratioci::GridSpec::log_axis(options->cv_x_min, options->cv_x_max, options->cv_x_steps);
    spec.cv_y = ratioci::GridSpec::log_axis(options->cv_y_min, options->cv_y_max, options->cv_y_steps);
    ratioci::SimulationOptions sim;
    sim.level = options->level;
    sim.trim = options->trim;
    sim.bootstrap.replications = options->replications;
    const auto grid = ratioci::run_grid(spec, ms, options->runs, options->seed, sim);
    *out = make_text(format == RATIOCI_FORMAT_CSV ? ratioci::grid_csv(grid) : ratioci::grid_json(grid));
  });
}

void ratioci_errorbar_options_init(ratioci_errorbar_options* o) {
  if (o) *o = {0.15, 0.10, 0.0, 500, 40, 0, 0.95};
}

ratioci_status ratioci_reference_point(const char* name, double* cv_x, double* cv_y) {
  return guarded([&] {
    require(name && cv_x && cv_y, "arguments must not be NULL");
    const auto cell = ratioci::reference_point(name);
    if (!cell) throw ratioci::Error(ratioci::ErrorCode::InvalidArgument, std::string("unknown point '") + name + "'");
    *cv_x = cell->cv_x;
    *cv_y = cell->cv_y;
  });
}

ratioci_status ratioci_errorbars(const ratioci_errorbar_options* options, ratioci_format format,
                                 ratioci_text** out) {
  return guarded([&] {
    require(options && out, "arguments must not be NULL");
    require(format == RATIOCI_FORMAT_CSV || format == RATIOCI_FORMAT_JSON, "error-bar output is csv or json");
    ratioci::SimCell cell;
    cell.cv_x = options->cv_x;
    cell.cv_y = options->cv_y;
    cell.corr = options->corr;
    cell.n = options->n;
    const auto exp = ratioci::error_bar_experiment(cell, options->runs, options->seed, options->level);
    *out = make_text(format == RATIOCI_FORMAT_CSV ? ratioci::errorbars_csv(exp) : ratioci::errorbars_json(exp));
  });
}

ratioci_status ratioci_ellipse(const ratioci_summary* summary, double level, size_t points,
                               ratioci_format format, ratioci_text** out) {
  return guarded([&] {
    require(summary && out, "arguments must not be NULL");
    const auto stats = from_c(*summary);
    const auto e = ratioci::construct_wedge(
        stats, ratioci::ConfidenceSpec::make(level, static_cast<double>(stats.df)));
    switch (format) {
      case RATIOCI_FORMAT_CSV: *out = make_text(ratioci::ellipse_csv(e, points)); break;
      case RATIOCI_FORMAT_JSON: *out = make_text(ratioci::ellipse_json(e, points)); break;
      case RATIOCI_FORMAT_SVG: *out = make_text(ratioci::ellipse_svg(e, points)); break;
      default: require(false, "ellipse output is csv, json or svg");
    }
  });
}

void ratioci_regress_options_init(ratioci_regress_options* o) {
  if (o) *o = {RATIOCI_MODEL_OLS, "y", nullptr, 0, 1, "group", 0.95};
}

ratioci_status ratioci_regress_csv(const char* text, size_t size, const ratioci_regress_options* options,
                                   ratioci_format format, ratioci_text** out) {
  return guarded([&] {
    require(out != nullptr, "out must not be NULL");
    ratioci_regress_options o;
    ratioci_regress_options_init(&o);
    if (options) o = *options;
    *out = make_text(regress(view(text, size), o, format));
  });
}

ratioci_status ratioci_demo(const char* name, ratioci_format format, ratioci_text** out) {
  return guarded([&] {
    require(name && out, "arguments must not be NULL");
    const std::string which = name;
    if (which == "stork") {
      const auto& t = ratioci::stork_table();
      const auto demo = ratioci::spurious_demo(t.women, t.babies, t.storks);
      require(format == RATIOCI_FORMAT_TEXT || format == RATIOCI_FORMAT_JSON, "demo output is text or json");
      *out = make_text(format == RATIOCI_FORMAT_JSON ? ratioci::spurious_json(demo) : ratioci::spurious_text(demo));
    } else if (which == "pang") {
      *out = make_text(pang_demo(format));
    } else {
      throw ratioci::Error(ratioci::ErrorCode::InvalidArgument, "unknown demo '" + which + "' (stork, pang)");
    }
  });
}

}  // extern "C"
