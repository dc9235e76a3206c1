#include "ratioci/linear_models.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <boost/math/distributions/fisher_f.hpp>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "ratioci/error.hpp"

namespace ratioci {

const Coefficient& RegressionFit::coef(std::string_view name) const {
  for (const auto& c : coefficients) {
    if (c.name == name) return c;
  }
  throw Error(ErrorCode::InvalidArgument, "no coefficient named " + std::string(name));
}

namespace {

void check_finite(std::span<const double> v, const std::string& what) {
  for (double d : v) {
    if (!std::isfinite(d)) throw Error(ErrorCode::NonFiniteInput, what + " contains non-finite values");
  }
}

double two_sided_t_p(double t, double df) {
  if (std::isnan(t)) return 1.0;
  if (std::isinf(t)) return 0.0;
  return std::clamp(2.0 * (1.0 - t_cdf(std::abs(t), df)), 0.0, 1.0);
}

}  // namespace

RegressionFit ols_fit(std::span<const double> y, const std::vector<Regressor>& regressors,
                      bool intercept) {
  const std::size_t n = y.size();
  const std::size_t p = regressors.size() + (intercept ? 1 : 0);
  if (p == 0) throw Error(ErrorCode::InvalidArgument, "model has no coefficients");
  check_finite(y, "response");
  for (const auto& r : regressors) {
    if (r.values.size() != n) {
      throw Error(ErrorCode::InvalidArgument, "regressor '" + r.name + "' has wrong length");
    }
    check_finite(r.values, "regressor '" + r.name + "'");
  }
  if (n <= p) {
    throw Error(ErrorCode::TooFewObservations,
                "need more observations (" + std::to_string(n) + ") than coefficients (" +
                    std::to_string(p) + ")");
  }

  Eigen::MatrixXd X(n, p);
  std::vector<std::string> names;
  std::size_t col = 0;
  if (intercept) {
    X.col(col++).setOnes();
    names.emplace_back(kInterceptName);
  }
  for (const auto& r : regressors) {
    X.col(col++) = Eigen::Map<const Eigen::VectorXd>(r.values.data(), static_cast<Eigen::Index>(n));
    names.push_back(r.name);
  }
  const Eigen::Map<const Eigen::VectorXd> Y(y.data(), static_cast<Eigen::Index>(n));

  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(X);
  if (qr.rank() < static_cast<Eigen::Index>(p)) {
    throw Error(ErrorCode::RankDeficient, "design matrix is rank deficient");
  }
  const Eigen::VectorXd beta = qr.solve(Y);
  const Eigen::VectorXd resid = Y - X * beta;

  RegressionFit fit;
  fit.n = n;
  fit.df = n - p;
  fit.rss = resid.squaredNorm();
  fit.residual_variance = fit.rss / static_cast<double>(fit.df);
  fit.residuals.assign(resid.data(), resid.data() + n);

  double tss;
  if (intercept) {
    tss = (Y.array() - Y.mean()).matrix().squaredNorm();
  } else {
    tss = Y.squaredNorm();
  }
  fit.r_squared = tss > 0.0 ? 1.0 - fit.rss / tss : 1.0;

  // (X'X)^{-1} = P R^{-1} R^{-T} P'
  const auto R = qr.matrixR().topLeftCorner(p, p).template triangularView<Eigen::Upper>();
  Eigen::MatrixXd Rinv = R.solve(Eigen::MatrixXd::Identity(static_cast<Eigen::Index>(p),
                                                           static_cast<Eigen::Index>(p)));
  const Eigen::MatrixXd cov_perm = Rinv * Rinv.transpose();
  const auto& perm = qr.colsPermutation().indices();
  Eigen::VectorXd diag(p);
  for (std::size_t k = 0; k < p; ++k) diag(perm(static_cast<Eigen::Index>(k))) = cov_perm(k, k);

  const double df = static_cast<double>(fit.df);
  for (std::size_t k = 0; k < p; ++k) {
    Coefficient c;
    c.name = names[k];
    c.estimate = beta(static_cast<Eigen::Index>(k));
    c.standard_error = std::sqrt(std::max(0.0, diag(static_cast<Eigen::Index>(k)) * fit.residual_variance));
    if (c.standard_error > 0.0) {
      c.t_value = c.estimate / c.standard_error;
    } else {
      c.t_value = c.estimate == 0.0 ? 0.0 : std::copysign(std::numeric_limits<double>::infinity(), c.estimate);
    }
    c.p_value = two_sided_t_p(c.t_value, df);
    fit.coefficients.push_back(std::move(c));
  }
  return fit;
}

namespace {

ModelComparison compare(RegressionFit restricted, RegressionFit full) {
  const std::size_t k = full.coefficients.size();
  const std::size_t q = restricted.coefficients.size();
  if (k <= q) throw Error(ErrorCode::InvalidArgument, "full model must have more coefficients");

  ModelComparison cmp;
  cmp.df_numerator = k - q;
  cmp.df_denominator = full.df;
  double gain = restricted.rss - full.rss;
  // Differences at rounding level are treated as no improvement.
  if (gain <= 64.0 * std::numeric_limits<double>::epsilon() * restricted.rss) gain = 0.0;
  const double d1 = static_cast<double>(cmp.df_numerator);
  const double d2 = static_cast<double>(cmp.df_denominator);
  if (gain == 0.0) {
    cmp.f_statistic = 0.0;
    cmp.p_value = 1.0;
  } else if (full.rss <= 0.0) {
    cmp.f_statistic = std::numeric_limits<double>::infinity();
    cmp.p_value = 0.0;
  } else {
    cmp.f_statistic = (gain / d1) / (full.rss / d2);
    boost::math::fisher_f_distribution<double> dist(d1, d2);
    cmp.p_value = std::clamp(boost::math::cdf(boost::math::complement(dist, cmp.f_statistic)), 0.0, 1.0);
  }
  cmp.restricted = std::move(restricted);
  cmp.full = std::move(full);
  return cmp;
}

}  // namespace

ModelComparison compare_nested(std::span<const double> y, const std::vector<Regressor>& restricted,
                               const std::vector<Regressor>& full, bool intercept) {
  for (const auto& r : restricted) {
    const bool present = std::any_of(full.begin(), full.end(), [&](const Regressor& f) {
      return f.name == r.name && f.values == r.values;
    });
    if (!present) {
      throw Error(ErrorCode::InvalidArgument,
                  "restricted regressor '" + r.name + "' is not part of the full model");
    }
  }
  return compare(ols_fit(y, restricted, intercept), ols_fit(y, full, intercept));
}

ModelComparison ancova_ratio_compare(const std::vector<PairedSample>& groups) {
  if (groups.size() < 2) throw Error(ErrorCode::InvalidArgument, "need at least two groups");
  std::vector<double> y;
  Regressor common{"beta", {}};
  for (const auto& g : groups) {
    y.insert(y.end(), g.ys().begin(), g.ys().end());
    common.values.insert(common.values.end(), g.xs().begin(), g.xs().end());
  }
  std::vector<Regressor> per_group;
  std::size_t offset = 0;
  for (std::size_t gi = 0; gi < groups.size(); ++gi) {
    Regressor r{"beta_" + std::to_string(gi + 1), std::vector<double>(y.size(), 0.0)};
    const auto xs = groups[gi].xs();
    std::copy(xs.begin(), xs.end(), r.values.begin() + static_cast<std::ptrdiff_t>(offset));
    offset += xs.size();
    per_group.push_back(std::move(r));
  }
  return compare(ols_fit(y, {common}, false), ols_fit(y, per_group, false));
}

RegressionFit deflated_fit(const PairedSample& sample) {
  const auto xs = sample.xs();
  const auto ys = sample.ys();
  std::vector<std::size_t> zeros;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (xs[i] == 0.0) zeros.push_back(i);
  }
  if (!zeros.empty()) {
    throw Error(ErrorCode::ZeroIndividualDenominator, "deflated regression needs every x_i != 0",
                std::move(zeros));
  }
  std::vector<double> ratio(xs.size());
  Regressor inv{"alpha", std::vector<double>(xs.size())};
  for (std::size_t i = 0; i < xs.size(); ++i) {
    ratio[i] = ys[i] / xs[i];
    inv.values[i] = 1.0 / xs[i];
  }
  RegressionFit fit = ols_fit(ratio, {inv}, true);
  // Column order is (intercept, 1/x); report alpha first.
  fit.coefficients[0].name = "beta";
  std::swap(fit.coefficients[0], fit.coefficients[1]);
  return fit;
}

AllometricFit allometric_fit(std::span<const double> y, const std::vector<Regressor>& regressors) {
  if (regressors.empty()) throw Error(ErrorCode::InvalidArgument, "need at least one regressor");
  auto logged = [](std::span<const double> v, const std::string& what) {
    std::vector<double> out(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (!(v[i] > 0.0)) {
        throw Error(ErrorCode::NonPositiveData,
                    what + " must be strictly positive (observation " + std::to_string(i) + ")");
      }
      out[i] = std::log(v[i]);
    }
    return out;
  };
  const std::vector<double> ly = logged(y, "response");
  std::vector<Regressor> lx;
  for (const auto& r : regressors) {
    lx.push_back({regressors.size() == 1 ? std::string("gamma") : "gamma_" + r.name,
                  logged(r.values, "regressor '" + r.name + "'")});
  }
  AllometricFit out;
  out.log_fit = ols_fit(ly, lx, true);
  out.log_fit.coefficients[0].name = "log_beta";
  out.log_beta = out.log_fit.coefficients[0].estimate;
  out.beta = std::exp(out.log_beta);
  for (std::size_t k = 1; k < out.log_fit.coefficients.size(); ++k) {
    out.exponents.push_back(out.log_fit.coefficients[k].estimate);
  }
  return out;
}

AllometricFit allometric_fit(const PairedSample& sample) {
  const auto xs = sample.xs();
  return allometric_fit(sample.ys(), {Regressor{"x", {xs.begin(), xs.end()}}});
}

SpuriousDemo spurious_demo(std::span<const double> x, std::span<const double> y,
                           std::span<const double> z) {
  const std::size_t n = x.size();
  if (y.size() != n || z.size() != n) {
    throw Error(ErrorCode::InvalidArgument, "x, y and z must have equal length");
  }
  if (n < 4) throw Error(ErrorCode::TooFewObservations, "the demonstration needs n >= 4");
  for (double v : x) {
    if (!(v > 0.0)) throw Error(ErrorCode::NonPositiveData, "x must be strictly positive");
  }

  SpuriousDemo demo;
  demo.x.assign(x.begin(), x.end());
  demo.y.assign(y.begin(), y.end());
  demo.z.assign(z.begin(), z.end());

  const Regressor rx{"x", demo.x};
  const Regressor rz{"gamma", demo.z};
  demo.partial = compare_nested(y, {rx}, {rx, rz}, true);

  std::vector<double> rate_y(n);
  Regressor rate_z{"gamma", std::vector<double>(n)};
  for (std::size_t i = 0; i < n; ++i) {
    rate_y[i] = y[i] / x[i];
    rate_z.values[i] = z[i] / x[i];
  }
  demo.rate_based = compare_nested(rate_y, {}, {rate_z}, true);
  return demo;
}

const StorkTable& stork_table() {
  static const StorkTable table{{1.0, 2.0, 3.0, 4.0}, {15.8, 20.2, 25.4, 30.1}, {3.2, 4.1, 5.6, 6.3}};
  return table;
}

}  // namespace ratioci
