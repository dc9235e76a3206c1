#pragma once

// Reference implementations used only by the tests. Each one is written
// independently of the library code it checks (different algorithm or
// precision), so agreement is evidence rather than tautology.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numeric>
#include <stdexcept>
#include <vector>

namespace oracle {

struct Summary {
  long double mean_x, mean_y, var_mean_x, var_mean_y, cov_mean_xy;
};

// Textbook two-pass formulas in extended precision.
inline Summary two_pass(const std::vector<double>& xs, const std::vector<double>& ys) {
  const auto n = static_cast<long double>(xs.size());
  long double sx = 0, sy = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sx += xs[i];
    sy += ys[i];
  }
  const long double mx = sx / n, my = sy / n;
  long double vx = 0, vy = 0, c = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    vx += (xs[i] - mx) * (xs[i] - mx);
    vy += (ys[i] - my) * (ys[i] - my);
    c += (xs[i] - mx) * (ys[i] - my);
  }
  const long double k = 1.0L / (n * (n - 1.0L));
  return {mx, my, vx * k, vy * k, c * k};
}

// Regularized incomplete beta I_x(a, b) by Lentz's continued fraction.
inline double incomplete_beta(double x, double a, double b) {
  if (x <= 0.0) return 0.0;
  if (x >= 1.0) return 1.0;
  if (x > (a + 1.0) / (a + b + 2.0)) return 1.0 - incomplete_beta(1.0 - x, b, a);
  const double log_front =
      std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) + a * std::log(x) + b * std::log1p(-x);
  constexpr double tiny = 1e-300;
  double f = 1.0, c = 1.0, d = 0.0;
  for (int i = 0; i <= 400; ++i) {
    const int m = i / 2;
    double num;
    if (i == 0) {
      num = 1.0;
    } else if (i % 2 == 0) {
      num = (m * (b - m) * x) / ((a + 2.0 * m - 1.0) * (a + 2.0 * m));
    } else {
      num = -((a + m) * (a + b + m) * x) / ((a + 2.0 * m) * (a + 2.0 * m + 1.0));
    }
    d = 1.0 + num * d;
    if (std::abs(d) < tiny) d = tiny;
    d = 1.0 / d;
    c = 1.0 + num / c;
    if (std::abs(c) < tiny) c = tiny;
    const double cd = c * d;
    f *= cd;
    if (std::abs(1.0 - cd) < 1e-15) break;
  }
  return std::exp(log_front) * (f - 1.0) / a;
}

inline double t_cdf(double t, double df) {
  if (std::isinf(df)) return 0.5 * std::erfc(-t / std::sqrt(2.0));
  const double tail = 0.5 * incomplete_beta(df / (df + t * t), df / 2.0, 0.5);
  return t >= 0 ? 1.0 - tail : tail;
}

inline double t_quantile(double p, double df) {
  double lo = -1e4, hi = 1e4;
  for (int i = 0; i < 300; ++i) {
    const double mid = 0.5 * (lo + hi);
    (t_cdf(mid, df) < p ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

inline double normal_cdf(double z) { return 0.5 * std::erfc(-z / std::sqrt(2.0)); }
inline double normal_quantile(double p) { return t_quantile(p, INFINITY); }

// |T0(rho)| <= t evaluated directly from the definition; false where the
// quadratic form is not positive.
inline bool in_fieller_set(double mx, double my, double vx, double vy, double c, double t,
                           double rho) {
  const long double q = (long double)vy - 2.0L * rho * c + (long double)rho * rho * vx;
  if (!(q > 0)) return false;
  const long double t0 = ((long double)my - (long double)rho * mx) / std::sqrt(q);
  return std::fabs((double)t0) <= t;
}

inline bool in_pivot_band(double mx, double my, double vx, double vy, double c, double t_lo,
                          double t_hi, double rho) {
  const long double q = (long double)vy - 2.0L * rho * c + (long double)rho * rho * vx;
  if (!(q > 0)) return false;
  const double t0 = (double)(((long double)my - (long double)rho * mx) / std::sqrt(q));
  return t0 >= t_lo && t0 <= t_hi;
}

// Tukey-McLaughlin pieces by explicit order statistics.
inline double trimmed_mean(std::vector<double> r, double trim) {
  std::sort(r.begin(), r.end());
  const std::size_t g = static_cast<std::size_t>(std::floor(trim * r.size() + 1e-9));
  long double s = 0;
  for (std::size_t i = g; i < r.size() - g; ++i) s += r[i];
  return (double)(s / (r.size() - 2 * g));
}

inline double winsorized_sd(std::vector<double> r, double trim) {
  std::sort(r.begin(), r.end());
  const std::size_t n = r.size();
  const std::size_t g = static_cast<std::size_t>(std::floor(trim * n + 1e-9));
  std::vector<long double> w(n);
  for (std::size_t i = 0; i < n; ++i) w[i] = r[std::clamp(i, g, n - g - 1)];
  long double m = 0;
  for (auto v : w) m += v;
  m /= n;
  long double ss = 0;
  for (auto v : w) ss += (v - m) * (v - m);
  return (double)std::sqrt(ss / (n - 1));
}

// Least squares through the normal equations with Gauss-Jordan elimination in
// long double. `cols` are the design columns.
inline std::vector<double> normal_equations(const std::vector<std::vector<double>>& cols,
                                            const std::vector<double>& y) {
  const std::size_t p = cols.size();
  std::vector<std::vector<long double>> a(p, std::vector<long double>(p + 1, 0));
  for (std::size_t i = 0; i < p; ++i) {
    for (std::size_t j = 0; j < p; ++j) {
      for (std::size_t k = 0; k < y.size(); ++k) a[i][j] += (long double)cols[i][k] * cols[j][k];
    }
    for (std::size_t k = 0; k < y.size(); ++k) a[i][p] += (long double)cols[i][k] * y[k];
  }
  for (std::size_t i = 0; i < p; ++i) {
    std::size_t piv = i;
    for (std::size_t r = i + 1; r < p; ++r) {
      if (std::fabs(a[r][i]) > std::fabs(a[piv][i])) piv = r;
    }
    std::swap(a[i], a[piv]);
    if (a[i][i] == 0) throw std::runtime_error("singular normal equations");
    for (std::size_t r = 0; r < p; ++r) {
      if (r == i) continue;
      const long double f = a[r][i] / a[i][i];
      for (std::size_t c = i; c <= p; ++c) a[r][c] -= f * a[i][c];
    }
  }
  std::vector<double> beta(p);
  for (std::size_t i = 0; i < p; ++i) beta[i] = (double)(a[i][p] / a[i][i]);
  return beta;
}

// Textbook BCa (Efron & Tibshirani ch. 14) on an unsorted replicate vector.
struct Bca {
  double lower, upper, z0, a;
};

inline double quantile_type7(std::vector<double> v, double p) {
  std::sort(v.begin(), v.end());
  const double h = (v.size() - 1) * p;
  const std::size_t k = static_cast<std::size_t>(h);
  if (k + 1 >= v.size()) return v.back();
  return v[k] + (h - k) * (v[k + 1] - v[k]);
}

inline Bca bca(const std::vector<double>& reps, double theta_hat, const std::vector<double>& jack,
               double level) {
  std::size_t below = 0;
  for (double v : reps) below += v < theta_hat;
  const double z0 = normal_quantile(static_cast<double>(below) / reps.size());
  const double jbar = std::accumulate(jack.begin(), jack.end(), 0.0) / jack.size();
  double num = 0, den = 0;
  for (double j : jack) {
    num += std::pow(jbar - j, 3);
    den += std::pow(jbar - j, 2);
  }
  const double a = num / (6.0 * std::pow(den, 1.5));
  const double za = normal_quantile((1 - level) / 2);
  const double a1 = normal_cdf(z0 + (z0 + za) / (1 - a * (z0 + za)));
  const double a2 = normal_cdf(z0 + (z0 - za) / (1 - a * (z0 - za)));
  return {quantile_type7(reps, a1), quantile_type7(reps, a2), z0, a};
}

}  // namespace oracle
