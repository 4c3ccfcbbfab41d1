#include "dplr/stats.hpp"

#include <algorithm>
#include <cmath>

#include "dplr/error.hpp"

namespace dplr {

double mean(std::span<const double> x) {
  require(!x.empty(), ErrorCode::InvalidInput, "mean of empty sample");
  double s = 0.0;
  for (double v : x) s += v;
  return s / static_cast<double>(x.size());
}

double variance(std::span<const double> x) {
  require(x.size() >= 2, ErrorCode::InvalidInput, "variance needs two samples");
  const double m = mean(x);
  double s = 0.0;
  for (double v : x) s += (v - m) * (v - m);
  return s / static_cast<double>(x.size() - 1);
}

double skewness(std::span<const double> x) {
  require(x.size() >= 3, ErrorCode::InvalidInput, "skewness needs three samples");
  const double m = mean(x);
  double m2 = 0.0, m3 = 0.0;
  for (double v : x) {
    const double c = v - m;
    m2 += c * c;
    m3 += c * c * c;
  }
  const double n = static_cast<double>(x.size());
  m2 /= n;
  m3 /= n;
  return m2 > 0.0 ? m3 / std::pow(m2, 1.5) : 0.0;
}

double root_mean_square(std::span<const double> x) {
  require(!x.empty(), ErrorCode::InvalidInput, "rms of empty sample");
  double s = 0.0;
  for (double v : x) s += v * v;
  return std::sqrt(s / static_cast<double>(x.size()));
}

double quantile(std::vector<double> x, double q) {
  require(!x.empty(), ErrorCode::InvalidInput, "quantile of empty sample");
  require(q >= 0.0 && q <= 1.0, ErrorCode::InvalidInput, "quantile level out of [0,1]");
  std::sort(x.begin(), x.end());
  const double pos = q * static_cast<double>(x.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const std::size_t hi = std::min(lo + 1, x.size() - 1);
  const double frac = pos - static_cast<double>(lo);
  return x[lo] + frac * (x[hi] - x[lo]);
}

double ks_statistic(std::vector<double> a, std::vector<double> b) {
  require(!a.empty() && !b.empty(), ErrorCode::InvalidInput, "KS needs non-empty samples");
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  const double na = static_cast<double>(a.size());
  const double nb = static_cast<double>(b.size());
  std::size_t i = 0, j = 0;
  double d = 0.0;
  while (i < a.size() && j < b.size()) {
    const double x = std::min(a[i], b[j]);
    while (i < a.size() && a[i] <= x) ++i;
    while (j < b.size() && b[j] <= x) ++j;
    d = std::max(d, std::abs(static_cast<double>(i) / na - static_cast<double>(j) / nb));
  }
  return d;
}

double ks_critical_value(std::size_t n, std::size_t m, double alpha) {
  require(n > 0 && m > 0 && alpha > 0.0 && alpha < 1.0, ErrorCode::InvalidInput,
          "invalid KS critical value arguments");
  const double c = std::sqrt(-0.5 * std::log(alpha / 2.0));
  const double dn = static_cast<double>(n);
  const double dm = static_cast<double>(m);
  return c * std::sqrt((dn + dm) / (dn * dm));
}

LinearFit ordinary_least_squares(std::span<const double> x, std::span<const double> y) {
  require(x.size() == y.size() && x.size() >= 3, ErrorCode::InvalidInput,
          "least squares needs >= 3 paired points");
  const double mx = mean(x);
  const double my = mean(y);
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  require(sxx > 0.0, ErrorCode::InvalidInput, "least squares needs distinct abscissae");
  LinearFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  double rss = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double r = y[i] - fit.intercept - fit.slope * x[i];
    rss += r * r;
  }
  fit.points = x.size();
  fit.slope_stderr = std::sqrt(rss / static_cast<double>(x.size() - 2) / sxx);
  return fit;
}

}  // namespace dplr
