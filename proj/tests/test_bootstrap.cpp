#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "doctest.h"
#include "oracles.hpp"
#include "random_stats.hpp"
#include "ratioci/bootstrap.hpp"
#include "ratioci/error.hpp"
#include "ratioci/ratio_ci.hpp"

using namespace ratioci;

namespace {

template <class F>
ErrorCode code_of(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected ratioci::Error");
  return ErrorCode::InvalidArgument;
}

double mean_x(const PairedSample& p) {
  return std::accumulate(p.xs().begin(), p.xs().end(), 0.0) / p.size();
}
double mean_y(const PairedSample& p) {
  return std::accumulate(p.ys().begin(), p.ys().end(), 0.0) / p.size();
}
double ratio(const PairedSample& p) { return mean_y(p) / mean_x(p); }

// Five pairs with the moments of the P2 condition (n=5, means 3.228 and
// 8.162, SDs 0.623 and 2.31).
PairedSample p2_like() {
  std::vector<double> zx{-1.2, -0.4, 0.1, 0.5, 1.0}, zy{0.3, -1.1, 1.2, -0.6, 0.2};
  auto standardize = [](std::vector<double> z, double m, double sd) {
    const double zm = std::accumulate(z.begin(), z.end(), 0.0) / z.size();
    double ss = 0;
    for (double v : z) ss += (v - zm) * (v - zm);
    const double zs = std::sqrt(ss / (z.size() - 1));
    for (double& v : z) v = m + sd * (v - zm) / zs;
    return z;
  };
  return PairedSample(standardize(zx, 3.228, 0.623), standardize(zy, 8.162, 2.31));
}

}  // namespace

TEST_CASE("resample_pairs basics") {
  const PairedSample constant({2, 2, 2, 2}, {3, 3, 3, 3});
  BootstrapConfig cfg{500, 1, BootstrapInterval::Percentile};
  const auto d = resample_pairs(constant, cfg, ratio);
  CHECK(d.count() == 500);
  CHECK(d.dropped == 0);
  CHECK(d.values.front() == d.values.back());

  Rng rng(4);
  std::vector<double> xs(30), ys(30);
  for (int i = 0; i < 30; ++i) {
    xs[i] = 5 + 2 * rng.normal();
    ys[i] = rng.normal();
  }
  const PairedSample p(xs, ys);
  cfg.replications = 20000;
  const auto dm = resample_pairs(p, cfg, mean_x);
  double m = 0, ss = 0;
  for (double v : dm.values) m += v;
  m /= dm.count();
  for (double v : dm.values) ss += (v - m) * (v - m);
  const double boot_sd = std::sqrt(ss / (dm.count() - 1));
  const double expected = std::sqrt(summarize(p).var_mean_x * 29.0 / 30.0);
  CHECK(std::abs(boot_sd - expected) < 0.1 * expected);

  const auto again = resample_pairs(p, cfg, mean_x);
  CHECK(again.values == dm.values);
  CHECK(std::is_sorted(dm.values.begin(), dm.values.end()));

  cfg.replications = 99;
  CHECK(code_of([&] { resample_pairs(p, cfg, mean_x); }) == ErrorCode::TooFewReplicates);
  cfg.replications = 200;
  CHECK(code_of([&] { resample_pairs(p, cfg, [](const PairedSample&) { return NAN; }); }) ==
        ErrorCode::AllResamplesDegenerate);
}

TEST_CASE("empirical quantile and percentile interval") {
  EmpiricalDistribution d;
  for (int i = 1; i <= 1000; ++i) d.values.push_back(i);
  const auto set = percentile_ci(d, 0.95);
  CHECK(std::abs(set.bounded().lower - 25.5) < 0.5);
  CHECK(std::abs(set.bounded().upper - 975.5) < 0.5);
  CHECK(set.bounded().lower == doctest::Approx(oracle::quantile_type7(d.values, 0.025)));
  CHECK(set.bounded().upper == doctest::Approx(oracle::quantile_type7(d.values, 0.975)));
  CHECK(empirical_quantile(d.values, 0.0) == 1.0);
  CHECK(empirical_quantile(d.values, 1.0) == 1000.0);

  EmpiricalDistribution c;
  c.values.assign(200, 4.25);
  CHECK(percentile_ci(c, 0.9).bounded() == Bounded{4.25, 4.25});
  CHECK(code_of([&] { percentile_ci(d, 0.0); }) == ErrorCode::DomainError);
  CHECK(code_of([&] { percentile_ci(d, 1.0); }) == ErrorCode::DomainError);
}

TEST_CASE("BCa reduces to percentile for a centred symmetric distribution") {
  EmpiricalDistribution d;
  for (int i = 1; i <= 1000; ++i) d.values.push_back(i);
  const std::vector<double> loo{-1.0, 0.0, 1.0};
  const auto out = bca_from_distribution(d, 500.5, loo, 0.95);
  CHECK(out.z0 == doctest::Approx(0.0));
  CHECK(out.acceleration == doctest::Approx(0.0));
  const auto pct = percentile_ci(d, 0.95);
  CHECK(out.set.bounded().lower == doctest::Approx(pct.bounded().lower));
  CHECK(out.set.bounded().upper == doctest::Approx(pct.bounded().upper));

  const auto [lo, hi] = bca_levels(0.0, 0.0, 0.9);
  CHECK(lo == doctest::Approx(0.05));
  CHECK(hi == doctest::Approx(0.95));
}

TEST_CASE("BCa z0 stays finite when every replicate lies on one side") {
  EmpiricalDistribution d;
  for (int i = 1; i <= 400; ++i) d.values.push_back(i);
  CHECK(std::isfinite(bca_bias_correction(d, 0.0)));
  CHECK(std::isfinite(bca_bias_correction(d, 1e9)));
  CHECK(bca_bias_correction(d, 0.0) < -2.5);
}

TEST_CASE("BCa ratio interval stays inside the replicate range") {
  const auto p = p2_like();
  const auto s = summarize(p);
  CHECK(s.mean_x == doctest::Approx(3.228));
  CHECK(std::sqrt(s.var_mean_y * 5) == doctest::Approx(2.31));
  const BootstrapConfig cfg{2000, 9, BootstrapInterval::BCa};
  const auto set = bca_ci(p, ratio, cfg, 0.95);
  const auto d = resample_pairs(p, cfg, ratio);
  CHECK(set.bounded().lower >= d.values.front());
  CHECK(set.bounded().upper <= d.values.back());
  CHECK(set.bounded().lower <= set.bounded().upper);
}

TEST_CASE("BCa on a linear statistic matches the textbook formulas") {
  Rng rng(21);
  std::vector<double> xs(25), ys(25);
  for (int i = 0; i < 25; ++i) {
    xs[i] = 1 + rng.uniform();
    ys[i] = std::exp(rng.normal());
  }
  const PairedSample p(xs, ys);
  const BootstrapConfig cfg{4000, 5, BootstrapInterval::BCa};
  const auto set = bca_ci(p, mean_y, cfg, 0.9);
  const auto reps = resample_pairs(p, cfg, mean_y).values;
  std::vector<double> jack;
  for (int skip = 0; skip < 25; ++skip) {
    double sum = 0;
    for (int i = 0; i < 25; ++i) sum += i == skip ? 0 : ys[i];
    jack.push_back(sum / 24);
  }
  const auto o = oracle::bca(reps, mean_y(p), jack, 0.9);
  const double width = o.upper - o.lower;
  CHECK(std::abs(set.bounded().lower - o.lower) < 0.1 * width);
  CHECK(std::abs(set.bounded().upper - o.upper) < 0.1 * width);
  CHECK(o.a > 0.0);
  CHECK(jackknife_acceleration(jack) == doctest::Approx(o.a).epsilon(1e-10));
}

TEST_CASE("ratio bootstrap fast path equals generic resampling") {
  Rng rng(22);
  std::vector<double> xs(15), ys(15);
  for (int i = 0; i < 15; ++i) {
    xs[i] = 4 + rng.normal();
    ys[i] = 2 + rng.normal();
  }
  const PairedSample p(xs, ys);
  const BootstrapConfig cfg{1000, 3, BootstrapInterval::Percentile};
  const auto fast = bootstrap_ratio(p, cfg, 0.95);
  const auto slow = percentile_ci(resample_pairs(p, cfg, ratio), 0.95);
  CHECK(fast.method == Method::BootstrapPercentile);
  CHECK(fast.set.bounded().lower == doctest::Approx(slow.bounded().lower).epsilon(1e-12));
  CHECK(fast.set.bounded().upper == doctest::Approx(slow.bounded().upper).epsilon(1e-12));

  BootstrapConfig bcfg = cfg;
  bcfg.method = BootstrapInterval::BCa;
  const auto both = bootstrap_ratio_both(p, bcfg, 0.95);
  CHECK(both.percentile.set == fast.set);
  const auto generic = bca_ci(p, ratio, bcfg, 0.95);
  CHECK(both.bca.set.bounded().lower == doctest::Approx(generic.bounded().lower).epsilon(1e-12));
  CHECK(both.bca.set.bounded().upper == doctest::Approx(generic.bounded().upper).epsilon(1e-12));
  CHECK(bootstrap_ratio(p, bcfg, 0.95).set == both.bca.set);

  BootstrapConfig small = bcfg;
  small.replications = 500;
  CHECK_FALSE(bootstrap_ratio(p, small, 0.95).warnings.empty());
}

TEST_CASE("Hwang pivot bootstrap") {
  const auto p = sample_bivariate_normal({1, 1, 0.3 * std::sqrt(20.0), 0.3, 0}, 20, 40);
  const auto s = summarize(p);
  const auto spec = ConfidenceSpec::make(0.95, 19);

  SUBCASE("symmetric limits give the Fieller set") {
    CHECK(invert_t0(s, -spec.quantile, spec.quantile) == fieller_set(s, spec).set);
  }

  SUBCASE("membership matches the pivot band") {
    for (auto kind : {BootstrapInterval::Percentile, BootstrapInterval::BCa}) {
      const BootstrapConfig cfg{2000, 6, kind};
      const auto q = hwang_quantiles(p, cfg, 0.95);
      CHECK(q.t_lo < 0.0);
      CHECK(q.t_hi > 0.0);
      const auto res = hwang_set(p, cfg, spec);
      CHECK(res.method == Method::HwangBootstrap);
      REQUIRE(res.diagnostics.has_value());
      for (int i = 0; i < 4000; ++i) {
        const double rho = -100 + 200.0 * i / 3999;
        const bool want = oracle::in_pivot_band(s.mean_x, s.mean_y, s.var_mean_x, s.var_mean_y,
                                                s.cov_mean_xy, q.t_lo, q.t_hi, rho);
        if (want != res.set.contains(rho)) CHECK(testing_support::near_boundary(res.set, rho));
      }
    }
  }

  SUBCASE("deterministic for a fixed seed") {
    const BootstrapConfig cfg{1000, 77, BootstrapInterval::BCa};
    CHECK(hwang_set(p, cfg, spec).set == hwang_set(p, cfg, spec).set);
  }
}

TEST_CASE("Hwang close to Fieller for large samples") {
  const auto p = sample_bivariate_normal({1, 1, 0.3, 0.3, 0}, 500, 41);
  const auto spec = ConfidenceSpec::make(0.95, 499);
  const auto f = fieller_set(summarize(p), spec).set.bounded();
  const auto h = hwang_set(p, {2000, 8, BootstrapInterval::BCa}, spec);
  REQUIRE(h.set.is_bounded());
  CHECK(std::abs(h.set.bounded().lower - f.lower) < 0.05 * std::abs(f.lower));
  CHECK(std::abs(h.set.bounded().upper - f.upper) < 0.05 * std::abs(f.upper));
}

TEST_CASE("bootstrap preconditions") {
  const PairedSample two({1, 2}, {1, 2});
  CHECK(code_of([&] { bootstrap_ratio(two, {}, 0.95); }) == ErrorCode::TooFewObservations);
  CHECK(code_of([&] { hwang_set(two, {}, ConfidenceSpec::make(0.95, 1)); }) ==
        ErrorCode::TooFewObservations);
  const PairedSample zero({-1, 1, 0}, {1, 2, 3});
  CHECK(code_of([&] { bootstrap_ratio(zero, {}, 0.95); }) == ErrorCode::ZeroDenominator);
}
