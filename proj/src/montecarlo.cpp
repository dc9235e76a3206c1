#include "ratioci/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <string>

#include "ratioci/error.hpp"
#include "ratioci/parallel.hpp"
#include "ratioci/ratio_ci.hpp"
#include "ratioci/rng.hpp"

namespace ratioci {

BivariateNormalParams SimCell::params() const {
  return {mean_x, mean_y, std::abs(cv_x * mean_x), std::abs(cv_y * mean_y), corr};
}

void SimCell::validate() const {
  if (!(cv_x > 0.0) || !(cv_y > 0.0)) {
    throw Error(ErrorCode::InvalidArgument, "simulation CVs must be positive");
  }
  if (n < 2) throw Error(ErrorCode::TooFewObservations, "simulation needs n >= 2");
  if (mean_x == 0.0 || !std::isfinite(true_rho())) {
    throw Error(ErrorCode::InvalidArgument, "true ratio must be finite");
  }
  params().validate();
}

std::optional<SimCell> reference_point(std::string_view name, std::size_t n) {
  if (name.size() != 1) return std::nullopt;
  SimCell cell;
  cell.n = n;
  switch (name[0]) {
    case 'A': case 'a': cell.cv_x = 0.15; cell.cv_y = 0.10; break;
    case 'B': case 'b': cell.cv_x = 0.75; cell.cv_y = 0.10; break;
    case 'C': case 'c': cell.cv_x = 3.0; cell.cv_y = 0.10; break;
    case 'D': case 'd': cell.cv_x = 3.0; cell.cv_y = 1.5; break;
    default: return std::nullopt;
  }
  return cell;
}

const MethodCoverage& CoverageResult::of(Method m) const {
  for (const auto& mc : methods) {
    if (mc.method == m) return mc;
  }
  throw Error(ErrorCode::InvalidArgument, "method not simulated: " + std::string(to_string(m)));
}

namespace {

constexpr std::uint64_t kBootstrapStream = 0xB0075;

struct RunOutcome {
  bool covered = false;
  bool unbounded = false;
  bool failed = false;
  double estimate = std::numeric_limits<double>::quiet_NaN();
};

struct DrawnSample {
  PairedSample sample;
  std::uint64_t attempt;
};

// A draw with an exactly-zero x makes the per-subject ratios undefined; such
// draws are replaced by the next substream and counted.
DrawnSample draw(const SimCell& cell, std::uint64_t seed, std::size_t run) {
  const BivariateNormalParams params = cell.params();
  for (std::uint64_t attempt = 0;; ++attempt) {
    Rng rng(derive_seed(seed, {run, attempt}));
    PairedSample s = sample_bivariate_normal(params, cell.n, rng);
    const auto xs = s.xs();
    if (std::none_of(xs.begin(), xs.end(), [](double v) { return v == 0.0; })) {
      return {std::move(s), attempt};
    }
  }
}

RunOutcome outcome_of(const MethodResult& r, double truth) {
  RunOutcome o;
  o.covered = r.set.contains(truth);
  o.unbounded = !r.set.is_bounded();
  o.estimate = r.estimate;
  return o;
}

std::vector<RunOutcome> evaluate_run(const PairedSample& sample, std::span<const Method> methods,
                                     const ConfidenceSpec& spec, const SimulationOptions& opt,
                                     std::uint64_t boot_seed, double truth) {
  const SummaryStats stats = summarize(sample);
  BootstrapConfig boot = opt.bootstrap;
  boot.seed = boot_seed;

  std::optional<RatioBootstrap> standard;
  std::vector<RunOutcome> out(methods.size());
  for (std::size_t k = 0; k < methods.size(); ++k) {
    try {
      switch (methods[k]) {
        case Method::Fieller:
          out[k] = outcome_of(fieller_set(stats, spec), truth);
          break;
        case Method::Taylor:
          out[k] = outcome_of(taylor_limits(stats, spec), truth);
          break;
        case Method::Index:
          out[k] = outcome_of(index_limits(sample, spec), truth);
          break;
        case Method::TrimmedIndex:
          out[k] = outcome_of(trimmed_index_limits(sample, spec, opt.trim), truth);
          break;
        case Method::ZeroVariance:
          out[k] = outcome_of(zero_variance_limits(sample, spec), truth);
          break;
        case Method::BootstrapPercentile:
        case Method::BootstrapBCa:
          if (!standard) standard = bootstrap_ratio_both(sample, boot, spec.level);
          out[k] = outcome_of(methods[k] == Method::BootstrapBCa ? standard->bca
                                                                 : standard->percentile,
                              truth);
          break;
        case Method::HwangBootstrap:
          out[k] = outcome_of(hwang_set(sample, boot, spec), truth);
          break;
      }
    } catch (const Error&) {
      out[k] = RunOutcome{};
      out[k].failed = true;
    }
  }
  return out;
}

}  // namespace

CoverageResult run_cell(const SimCell& cell, std::span<const Method> methods, std::size_t runs,
                        std::uint64_t seed, const SimulationOptions& options) {
  cell.validate();
  if (runs < 100) throw Error(ErrorCode::InvalidArgument, "a coverage cell needs >= 100 runs");
  const ConfidenceSpec spec = ConfidenceSpec::make(options.level, static_cast<double>(cell.n - 1));
  const double truth = cell.true_rho();

  std::vector<std::vector<RunOutcome>> per_run(runs);
  std::vector<std::uint64_t> attempts(runs, 0);
  parallel_for(runs, [&](std::size_t r) {
    DrawnSample d = draw(cell, seed, r);
    attempts[r] = d.attempt;
    per_run[r] = evaluate_run(d.sample, methods, spec, options,
                              derive_seed(seed, {r, d.attempt, kBootstrapStream}), truth);
  });

  CoverageResult res;
  res.cell = cell;
  res.seed = seed;
  for (std::uint64_t a : attempts) res.redraws += a;
  for (std::size_t k = 0; k < methods.size(); ++k) {
    MethodCoverage mc;
    mc.method = methods[k];
    mc.runs = runs;
    std::vector<double> estimates;
    estimates.reserve(runs);
    for (std::size_t r = 0; r < runs; ++r) {
      const RunOutcome& o = per_run[r][k];
      mc.covered += o.covered ? 1 : 0;
      mc.unbounded_sets += o.unbounded ? 1 : 0;
      mc.failures += o.failed ? 1 : 0;
      if (std::isfinite(o.estimate)) estimates.push_back(o.estimate);
    }
    mc.coverage = static_cast<double>(mc.covered) / static_cast<double>(runs);
    if (!estimates.empty()) {
      double mean = 0.0;
      for (double e : estimates) mean += e;
      mean /= static_cast<double>(estimates.size());
      double ss = 0.0;
      for (double e : estimates) ss += (e - mean) * (e - mean);
      mc.estimate_mean = mean;
      mc.estimate_variance =
          estimates.size() > 1 ? ss / static_cast<double>(estimates.size() - 1) : 0.0;
      std::sort(estimates.begin(), estimates.end());
      const std::size_t m = estimates.size();
      mc.estimate_median =
          m % 2 ? estimates[m / 2] : 0.5 * (estimates[m / 2 - 1] + estimates[m / 2]);
    }
    res.methods.push_back(mc);
  }
  return res;
}

std::vector<double> GridSpec::log_axis(double lo, double hi, std::size_t steps) {
  if (!(lo > 0.0) || !(hi >= lo) || steps == 0) {
    throw Error(ErrorCode::InvalidArgument, "log axis needs 0 < lo <= hi and steps >= 1");
  }
  if (steps == 1) return {lo};
  std::vector<double> axis(steps);
  const double step = std::log(hi / lo) / static_cast<double>(steps - 1);
  for (std::size_t i = 0; i < steps; ++i) axis[i] = lo * std::exp(step * static_cast<double>(i));
  axis.back() = hi;
  return axis;
}

double reference_cv_x(std::size_t n) { return 0.5 * std::sqrt(static_cast<double>(n)); }

CoverageGrid run_grid(const GridSpec& spec, std::span<const Method> methods, std::size_t runs,
                      std::uint64_t master_seed, const SimulationOptions& options) {
  if (spec.cv_x.empty() || spec.cv_y.empty()) {
    throw Error(ErrorCode::InvalidArgument, "grid axes must not be empty");
  }
  CoverageGrid grid;
  grid.spec = spec;
  grid.runs = runs;
  grid.master_seed = master_seed;
  grid.reference_cv_x = reference_cv_x(spec.n);
  std::size_t index = 0;
  for (double cx : spec.cv_x) {
    for (double cy : spec.cv_y) {
      SimCell cell;
      cell.cv_x = cx;
      cell.cv_y = cy;
      cell.n = spec.n;
      cell.corr = spec.corr;
      grid.cells.push_back(run_cell(cell, methods, runs, derive_seed(master_seed, {index}), options));
      ++index;
    }
  }
  return grid;
}

std::size_t ErrorBarExperiment::significant_fieller() const {
  return static_cast<std::size_t>(std::count_if(
      fieller.begin(), fieller.end(), [](const ErrorBarRow& r) { return !r.covers_true; }));
}

std::size_t ErrorBarExperiment::significant_index() const {
  return static_cast<std::size_t>(std::count_if(
      index.begin(), index.end(), [](const ErrorBarRow& r) { return !r.covers_true; }));
}

ErrorBarExperiment error_bar_experiment(const SimCell& cell, std::size_t runs, std::uint64_t seed,
                                        double level) {
  cell.validate();
  if (runs == 0) throw Error(ErrorCode::InvalidArgument, "need at least one run");
  const ConfidenceSpec spec = ConfidenceSpec::make(level, static_cast<double>(cell.n - 1));
  const double truth = cell.true_rho();

  ErrorBarExperiment exp;
  exp.cell = cell;
  exp.fieller.resize(runs);
  exp.index.resize(runs);
  parallel_for(runs, [&](std::size_t r) {
    const DrawnSample d = draw(cell, seed, r);
    const MethodResult f = fieller_set(summarize(d.sample), spec);
    const MethodResult ix = index_limits(d.sample, spec);
    exp.fieller[r] = {r, Method::Fieller, f.estimate, f.set, f.set.contains(truth)};
    exp.index[r] = {r, Method::Index, ix.estimate, ix.set, ix.set.contains(truth)};
  });
  auto by_estimate = [](const ErrorBarRow& a, const ErrorBarRow& b) {
    return a.estimate < b.estimate || (a.estimate == b.estimate && a.run < b.run);
  };
  std::sort(exp.fieller.begin(), exp.fieller.end(), by_estimate);
  std::sort(exp.index.begin(), exp.index.end(), by_estimate);
  return exp;
}

}  // namespace ratioci
