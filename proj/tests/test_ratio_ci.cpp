#include <algorithm>
#include <cmath>
#include <vector>

#include "doctest.h"
#include "oracles.hpp"
#include "random_stats.hpp"
#include "ratioci/error.hpp"
#include "ratioci/ratio_ci.hpp"

using namespace ratioci;
using testing_support::near_boundary;
using testing_support::random_stats;

namespace {

PairedSample pang_p1() { return PairedSample({6.34, 4.02, 2.88}, {4.87, 8.30, 11.66}); }

ConfidenceSpec spec_for(const SummaryStats& s, double level = 0.95) {
  return ConfidenceSpec::make(level, static_cast<double>(s.df));
}

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

std::size_t grid_disagreements(const ConfidenceSet& set, const SummaryStats& s, double t_lo,
                               double t_hi, int points = 10000) {
  std::size_t bad = 0;
  for (int i = 0; i < points; ++i) {
    const double rho = -100.0 + 200.0 * i / (points - 1);
    const bool want = oracle::in_pivot_band(s.mean_x, s.mean_y, s.var_mean_x, s.var_mean_y,
                                            s.cov_mean_xy, t_lo, t_hi, rho);
    if (want != set.contains(rho) && !near_boundary(set, rho)) ++bad;
  }
  return bad;
}

}  // namespace

TEST_CASE("point estimate") {
  const auto s = summarize(pang_p1());
  CHECK(point_estimate(s) == doctest::Approx(8.2767 / 4.413).epsilon(1e-4));
  SummaryStats z = s;
  z.mean_y = 0;
  CHECK(point_estimate(z) == 0.0);
  z.mean_y = z.mean_x;
  CHECK(point_estimate(z) == 1.0);
  z.mean_x = 0;
  CHECK(code_of([&] { point_estimate(z); }) == ErrorCode::ZeroDenominator);
}

TEST_CASE("t0 statistic") {
  const auto s = summarize(pang_p1());
  CHECK(t0_statistic(s, point_estimate(s)) == doctest::Approx(0.0));
  CHECK(t0_statistic(s, 0.0) == doctest::Approx(8.2767 / 1.9601).epsilon(1e-3));
  const double asym = s.mean_x / std::sqrt(s.var_mean_x);
  CHECK(std::abs(t0_statistic(s, 1e8) + asym) < 1e-4);
  CHECK(std::abs(t0_statistic(s, -1e8) - asym) < 1e-4);
  SummaryStats d;
  d.mean_x = 1;
  d.mean_y = 1;
  CHECK(code_of([&] { t0_statistic(d, 0.5); }) == ErrorCode::DegenerateVariance);
}

TEST_CASE("Pang P1 closed-form methods") {
  const auto sample = pang_p1();
  const auto s = summarize(sample);
  const auto spec = spec_for(s);

  const auto f = fieller_set(s, spec);
  REQUIRE(f.set.kind() == SetCase::Bounded);
  CHECK(std::abs(f.estimate - 1.88) < 0.01);
  CHECK(std::abs(f.set.bounded().lower - (-0.02)) < 0.01);
  CHECK(f.set.bounded().upper >= 490);
  CHECK(f.set.bounded().upper <= 510);
  REQUIRE(f.diagnostics.has_value());
  CHECK(f.diagnostics->set_case == SetCase::Bounded);
  CHECK(f.diagnostics->denom_t_squared > spec.quantile * spec.quantile);

  const auto t = taylor_limits(s, spec);
  CHECK(std::abs(t.set.bounded().lower - (-1.88)) < 0.02);
  CHECK(std::abs(t.set.bounded().upper - 5.64) < 0.02);

  const auto i = index_limits(sample, spec);
  CHECK(std::abs(i.estimate - 2.29) < 0.02);
  CHECK(std::abs(i.set.bounded().lower - (-1.81)) < 0.02);
  CHECK(std::abs(i.set.bounded().upper - 6.39) < 0.02);

  const auto z = zero_variance_limits(sample, spec);
  CHECK(std::abs(z.set.bounded().lower - (-0.03)) < 0.02);
  CHECK(std::abs(z.set.bounded().upper - 3.79) < 0.02);
}

TEST_CASE("Fieller with exact denominator") {
  SummaryStats s;
  s.n = 10;
  s.df = 9;
  s.mean_x = 2.0;
  s.mean_y = 3.0;
  s.var_mean_y = 0.25;
  const auto spec = spec_for(s);
  const auto f = fieller_set(s, spec);
  REQUIRE(f.set.is_bounded());
  CHECK(f.set.bounded().lower == doctest::Approx((3.0 - spec.quantile * 0.5) / 2.0));
  CHECK(f.set.bounded().upper == doctest::Approx((3.0 + spec.quantile * 0.5) / 2.0));
}

TEST_CASE("degenerate data collapse to the point estimate") {
  const auto sample = PairedSample({2, 2, 2}, {5, 5, 5});
  const auto s = summarize(sample);
  const auto spec = spec_for(s);
  for (const auto& r : {fieller_set(s, spec), taylor_limits(s, spec), index_limits(sample, spec),
                        zero_variance_limits(sample, spec)}) {
    REQUIRE(r.set.is_bounded());
    CHECK(r.set.bounded().lower == doctest::Approx(2.5));
    CHECK(r.set.bounded().upper == doctest::Approx(2.5));
  }
}

TEST_CASE("Fieller trichotomy and grid-scan oracle") {
  Rng rng(2024);
  int counts[3] = {0, 0, 0};
  for (int trial = 0; trial < 300; ++trial) {
    const auto s = random_stats(rng);
    const auto spec = spec_for(s);
    const auto f = fieller_set(s, spec);
    REQUIRE(f.diagnostics.has_value());
    const auto kind = f.set.kind();
    REQUIRE(kind != SetCase::IntervalUnion);
    ++counts[static_cast<int>(kind)];
    const double t2 = spec.quantile * spec.quantile;
    CHECK((kind == SetCase::Bounded) == (f.diagnostics->denom_t_squared > t2));
    if (kind != SetCase::Bounded) {
      CHECK((kind == SetCase::UnboundedExclusive) == (f.diagnostics->t_unbounded_squared > t2));
    }
    CHECK(f.diagnostics->set_case == kind);
    CHECK(grid_disagreements(f.set, s, -spec.quantile, spec.quantile, 2000) == 0);
  }
  CHECK(counts[0] > 0);
  CHECK(counts[1] > 0);
  CHECK(counts[2] > 0);
}

TEST_CASE("general inversion agrees with the closed form on symmetric limits") {
  Rng rng(77);
  for (int trial = 0; trial < 300; ++trial) {
    const auto s = random_stats(rng);
    const double t = spec_for(s).quantile;
    const auto closed = invert_t0(s, -t, t);
    const auto general = detail::invert_t0_general(s, -t, t);
    CHECK(closed.kind() == general.kind());
    const auto a = testing_support::set_boundaries(closed);
    const auto b = testing_support::set_boundaries(general);
    REQUIRE(a.size() == b.size());
    for (std::size_t k = 0; k < a.size(); ++k) {
      if (std::isfinite(a[k])) CHECK(b[k] == doctest::Approx(a[k]).epsilon(1e-7));
    }
  }
}

TEST_CASE("asymmetric inversion matches the pivot band") {
  Rng rng(78);
  int unions = 0;
  for (int trial = 0; trial < 300; ++trial) {
    const auto s = random_stats(rng);
    const double t_lo = -0.5 - 4.0 * rng.uniform();
    const double t_hi = -1.0 + 5.0 * rng.uniform();
    if (t_hi < t_lo) continue;
    const auto set = invert_t0(s, t_lo, t_hi);
    unions += set.kind() == SetCase::IntervalUnion;
    CHECK(grid_disagreements(set, s, t_lo, t_hi, 2000) == 0);
  }
  CHECK(unions > 0);
  CHECK(code_of([] {
          SummaryStats s;
          s.mean_x = 1;
          s.var_mean_x = 1;
          invert_t0(s, 2.0, 1.0);
        }) == ErrorCode::DomainError);
}

TEST_CASE("scale equivariance") {
  const std::vector<double> xs{4.1, 5.3, 3.8, 6.0, 5.5, 4.9}, ys{2.0, 2.9, 1.7, 3.3, 2.6, 2.4};
  const auto base = PairedSample(xs, ys);
  const auto bs = summarize(base);
  const auto spec = spec_for(bs);
  for (double c : {0.01, 3.0, 250.0}) {
    std::vector<double> ys_c, xs_c;
    for (double v : ys) ys_c.push_back(c * v);
    for (double v : xs) xs_c.push_back(c * v);
    const auto scaled_y = PairedSample(xs, ys_c);
    const auto scaled_x = PairedSample(xs_c, ys);
    auto check = [&](auto method, double factor, const PairedSample& sample) {
      const auto r0 = method(base);
      const auto r1 = method(sample);
      CHECK(r1.estimate == doctest::Approx(r0.estimate * factor).epsilon(1e-10));
      CHECK(r1.set.kind() == r0.set.kind());
      if (r0.set.is_bounded()) {
        CHECK(r1.set.bounded().lower == doctest::Approx(r0.set.bounded().lower * factor).epsilon(1e-9));
        CHECK(r1.set.bounded().upper == doctest::Approx(r0.set.bounded().upper * factor).epsilon(1e-9));
      }
    };
    auto fieller = [&](const PairedSample& p) { return fieller_set(summarize(p), spec); };
    auto taylor = [&](const PairedSample& p) { return taylor_limits(summarize(p), spec); };
    auto index = [&](const PairedSample& p) { return index_limits(p, spec); };
    auto trimmed = [&](const PairedSample& p) { return trimmed_index_limits(p, spec, 0.2); };
    auto zv = [&](const PairedSample& p) { return zero_variance_limits(p, spec); };
    for (int which = 0; which < 2; ++which) {
      const auto& sample = which == 0 ? scaled_y : scaled_x;
      const double factor = which == 0 ? c : 1.0 / c;
      check(fieller, factor, sample);
      check(taylor, factor, sample);
      check(index, factor, sample);
      check(trimmed, factor, sample);
      check(zv, factor, sample);
    }
  }
}

TEST_CASE("Taylor approximates Fieller when the denominator CV is small") {
  Rng rng(31);
  int checked = 0;
  while (checked < 1000) {
    SummaryStats s;
    s.n = 50;
    s.df = 49;
    s.mean_x = 1.0 + 9.0 * rng.uniform();
    s.mean_y = (1.0 + 9.0 * rng.uniform()) * (rng.uniform() < 0.5 ? -1 : 1);
    const double cvx = 0.02 * rng.uniform();
    const double cvy = 0.1 * rng.uniform();
    s.var_mean_x = std::pow(cvx * s.mean_x, 2);
    s.var_mean_y = std::pow(cvy * s.mean_y, 2);
    s.cov_mean_xy = (-0.9 + 1.8 * rng.uniform()) * std::sqrt(s.var_mean_x * s.var_mean_y);
    const auto spec = spec_for(s);
    const auto f = fieller_set(s, spec).set.bounded();
    const auto t = taylor_limits(s, spec);
    CHECK(t.set.bounded().lower + t.set.bounded().upper == doctest::Approx(2 * t.estimate));
    const double width = f.upper - f.lower;
    CHECK(std::abs(f.lower - t.set.bounded().lower) <= 0.05 * width);
    CHECK(std::abs(f.upper - t.set.bounded().upper) <= 0.05 * width);
    ++checked;
  }
}

TEST_CASE("Taylor midpoint is the estimate") {
  Rng rng(32);
  for (int i = 0; i < 1000; ++i) {
    auto s = random_stats(rng);
    if (s.mean_x == 0 || s.mean_y == 0) continue;
    const auto t = taylor_limits(s, spec_for(s));
    const double mid = 0.5 * (t.set.bounded().lower + t.set.bounded().upper);
    CHECK(mid == doctest::Approx(t.estimate).epsilon(1e-12).scale(1.0));
  }
  SummaryStats z;
  z.mean_x = 1;
  z.var_mean_x = 1;
  CHECK(code_of([&] { taylor_limits(z, ConfidenceSpec::make(0.95, 5)); }) == ErrorCode::ZeroNumerator);
}

TEST_CASE("zero-variance never wider than Taylor without covariance") {
  const auto sample = PairedSample({1, 2, 3, 4}, {1, 2, 2, 1});
  const auto s = summarize(sample);
  REQUIRE(std::abs(s.cov_mean_xy) < 1e-15);
  const auto spec = spec_for(s);
  const auto z = zero_variance_limits(sample, spec).set.bounded();
  const auto t = taylor_limits(s, spec).set.bounded();
  CHECK(z.upper - z.lower <= t.upper - t.lower);
}

TEST_CASE("zero-variance width formula") {
  Rng rng(8);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<double> xs(8), ys(8);
    for (int i = 0; i < 8; ++i) {
      xs[i] = 5 + rng.normal();
      ys[i] = 2 + rng.normal();
    }
    const PairedSample p(xs, ys);
    const auto s = summarize(p);
    const auto spec = spec_for(s);
    const auto z = zero_variance_limits(p, spec).set.bounded();
    const auto o = oracle::two_pass(xs, ys);
    CHECK(z.upper - z.lower ==
          doctest::Approx(2 * spec.quantile * std::sqrt((double)o.var_mean_y) / std::abs((double)o.mean_x))
              .epsilon(1e-12));
  }
  CHECK(code_of([] {
          zero_variance_limits(PairedSample({-1, 1}, {1, 2}), ConfidenceSpec::make(0.95, 1));
        }) == ErrorCode::ZeroDenominator);
}

TEST_CASE("index method") {
  const auto exact = PairedSample({1, 2, 3, 4}, {2, 4, 6, 8});
  const auto r = index_limits(exact, ConfidenceSpec::make(0.95, 3));
  CHECK(r.method == Method::Index);
  CHECK(r.estimate == doctest::Approx(2.0));
  CHECK(r.set.bounded().lower == doctest::Approx(2.0));
  CHECK(r.set.bounded().upper == doctest::Approx(2.0));

  Rng rng(12);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<double> xs(9), ys(9);
    long double sum = 0;
    for (int i = 0; i < 9; ++i) {
      xs[i] = 3 + rng.normal();
      ys[i] = rng.normal();
      sum += (long double)ys[i] / xs[i];
    }
    CHECK(index_limits(PairedSample(xs, ys), ConfidenceSpec::make(0.95, 8)).estimate ==
          doctest::Approx((double)(sum / 9)).epsilon(1e-12));
  }

  try {
    index_limits(PairedSample({1, 0, 2, 0}, {1, 1, 1, 1}), ConfidenceSpec::make(0.95, 3));
    FAIL("expected error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::ZeroIndividualDenominator);
    CHECK(e.indices() == std::vector<std::size_t>{1, 3});
  }
}

TEST_CASE("trimmed index method") {
  Rng rng(13);
  std::vector<double> xs(20), ys(20);
  for (int i = 0; i < 20; ++i) {
    xs[i] = 2 + 0.5 * rng.normal();
    ys[i] = 1 + 0.5 * rng.normal();
  }
  const PairedSample p(xs, ys);
  const auto spec = ConfidenceSpec::make(0.95, 19);

  const auto t0 = trimmed_index_limits(p, spec, 0.0);
  const auto i0 = index_limits(p, spec);
  CHECK(t0.estimate == i0.estimate);
  CHECK(t0.set.bounded() == i0.set.bounded());

  std::vector<double> r;
  for (int i = 0; i < 20; ++i) r.push_back(ys[i] / xs[i]);
  const auto tr = trimmed_index_limits(p, spec, 0.25);
  CHECK(tr.method == Method::TrimmedIndex);
  CHECK(tr.estimate == doctest::Approx(oracle::trimmed_mean(r, 0.25)).epsilon(1e-12));
  const double se = oracle::winsorized_sd(r, 0.25) / ((1 - 2 * 5 / 20.0) * std::sqrt(20.0));
  const double q = oracle::t_quantile(0.975, 20 - 10 - 1);
  CHECK(tr.set.bounded().upper - tr.set.bounded().lower == doctest::Approx(2 * q * se).epsilon(1e-8));

  std::vector<double> ones(20, 1.0), outlier(20, 1.0);
  outlier[4] = 100.0;
  const auto robust = trimmed_index_limits(PairedSample(ones, outlier), spec, 0.25);
  CHECK(robust.estimate == 1.0);

  CHECK(code_of([] {
          trimmed_index_limits(PairedSample({1, 2, 3}, {1, 2, 3}), ConfidenceSpec::make(0.95, 2),
                               0.4);
        }) == ErrorCode::TooFewAfterTrim);
  CHECK(code_of([&] { trimmed_index_limits(p, spec, 0.5); }) == ErrorCode::DomainError);
}
