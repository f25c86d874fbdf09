#include "symaut/discretize.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "symaut/errors.hpp"

namespace symaut {

void SaxConfig::validate() const {
  if (alphabet_size < 2) throw ConfigError("SAX alphabet size must be at least 2");
  if (alphabet_size > kMaxSymbols) throw ConfigError("SAX alphabet size exceeds 255");
  if (paa_window < 1) throw ConfigError("PAA window must be at least 1");
}

double inverse_normal_cdf(double p) {
  if (!(p > 0.0 && p < 1.0)) throw std::domain_error("inverse_normal_cdf: p must lie in (0, 1)");
  // Acklam's rational approximation, then one Halley step against erfc.
  static constexpr double a[] = {-3.969683028665376e+01, 2.209460984245205e+02, -2.759285104469687e+02,
                                 1.383577518672690e+02,  -3.066479806614716e+01, 2.506628277459239e+00};
  static constexpr double b[] = {-5.447609879822406e+01, 1.615858368580409e+02, -1.556989798598866e+02,
                                 6.680131188771972e+01,  -1.328068155288572e+01};
  static constexpr double c[] = {-7.784894002430293e-03, -3.223964580411365e-01, -2.400758277161838e+00,
                                 -2.549732539343734e+00, 4.374664141464968e+00,  2.938163982698783e+00};
  static constexpr double d[] = {7.784695709041462e-03, 3.224671290700398e-01, 2.445134137142996e+00,
                                 3.754408661907416e+00};
  constexpr double p_low = 0.02425;

  double x;
  if (p < p_low) {
    const double q = std::sqrt(-2 * std::log(p));
    x = (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
        ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1);
  } else if (p <= 1 - p_low) {
    const double q = p - 0.5;
    const double r = q * q;
    x = (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
        (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1);
  } else {
    const double q = std::sqrt(-2 * std::log1p(-p));
    x = -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
        ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1);
  }
  const double e = 0.5 * std::erfc(-x / std::sqrt(2.0)) - p;
  const double u = e * std::sqrt(2 * M_PI) * std::exp(x * x / 2);
  return x - u / (1 + x * u / 2);
}

std::vector<double> gaussian_breakpoints(std::size_t k) {
  if (k < 2) throw ConfigError("gaussian breakpoints need at least 2 bins");
  std::vector<double> out(k - 1);
  for (std::size_t i = 1; i < k; ++i) {
    const std::size_t mirror = k - i;
    if (2 * i == k) {
      out[i - 1] = 0.0;
    } else if (i < mirror) {
      out[i - 1] = inverse_normal_cdf(static_cast<double>(i) / static_cast<double>(k));
    } else {
      out[i - 1] = -out[mirror - 1];
    }
  }
  return out;
}

namespace {

void zscore(std::vector<double>& xs) {
  const double n = static_cast<double>(xs.size());
  const double mean = std::accumulate(xs.begin(), xs.end(), 0.0) / n;
  double ss = 0.0;
  for (double x : xs) ss += (x - mean) * (x - mean);
  const double sd = std::sqrt(ss / n);
  if (sd < 1e-12 * std::max(1.0, std::abs(mean))) {
    std::fill(xs.begin(), xs.end(), 0.0);
    return;
  }
  for (double& x : xs) x = (x - mean) / sd;
}

std::vector<double> paa(const std::vector<double>& xs, std::size_t window) {
  if (window == 1) return xs;
  std::vector<double> out(xs.size() / window);
  for (std::size_t i = 0; i < out.size(); ++i) {
    double s = 0.0;
    for (std::size_t j = 0; j < window; ++j) s += xs[i * window + j];
    out[i] = s / static_cast<double>(window);
  }
  return out;
}

std::vector<double> uniform_breakpoints(const std::vector<double>& xs, std::size_t k) {
  const auto [lo_it, hi_it] = std::minmax_element(xs.begin(), xs.end());
  const double lo = *lo_it;
  const double hi = *hi_it;
  std::vector<double> out(k - 1);
  if (hi <= lo) {
    // Flat input lands in bin k/2, the bin that holds 0 under gaussian breakpoints.
    const std::size_t middle = k / 2;
    for (std::size_t i = 0; i < k - 1; ++i)
      out[i] = i < middle ? lo - static_cast<double>(middle - i) : hi + 1.0 + static_cast<double>(i);
    return out;
  }
  for (std::size_t i = 1; i < k; ++i) out[i - 1] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(k);
  return out;
}

}  // namespace

Mvs discretize(const RawSeries& series, const SaxConfig& cfg, const AlphabetSpec& alphabet, simd::Backend backend) {
  cfg.validate();
  if (alphabet.size() != cfg.alphabet_size)
    throw ConfigError("alphabet has " + std::to_string(alphabet.size()) + " symbols but SAX expects " +
                      std::to_string(cfg.alphabet_size));
  if (series.num_attributes == 0 || series.length == 0)
    throw ValidationError("series '" + series.id + "' is empty");
  if (series.values.size() != series.num_attributes * series.length)
    throw ValidationError("series '" + series.id + "' is not rectangular");
  for (double v : series.values)
    if (!std::isfinite(v)) throw ValidationError("series '" + series.id + "' contains a non-finite value");

  const std::size_t out_len = series.length / cfg.paa_window;
  if (out_len == 0)
    throw ConfigError("PAA window " + std::to_string(cfg.paa_window) + " exceeds length of series '" + series.id + "'");

  const std::vector<double> gaussian = cfg.breakpoint_mode == BreakpointMode::gaussian_equiprobable
                                           ? gaussian_breakpoints(cfg.alphabet_size)
                                           : std::vector<double>{};
  std::vector<Symbol> codes(series.num_attributes * out_len);
  std::vector<double> column(series.length);
  std::vector<std::uint8_t> bins(out_len);
  for (std::size_t a = 0; a < series.num_attributes; ++a) {
    for (std::size_t t = 0; t < series.length; ++t) column[t] = series.values[t * series.num_attributes + a];
    if (cfg.normalize == Normalization::per_sequence_per_attribute_zscore) zscore(column);
    const std::vector<double> reduced = paa(column, cfg.paa_window);
    const std::vector<double> breakpoints = cfg.breakpoint_mode == BreakpointMode::gaussian_equiprobable
                                                ? gaussian
                                                : uniform_breakpoints(reduced, cfg.alphabet_size);
    simd::assign_bins(reduced, breakpoints, bins, backend);
    for (std::size_t t = 0; t < out_len; ++t) codes[t * series.num_attributes + a] = bins[t];
  }
  return Mvs(series.id, series.num_attributes, out_len, std::move(codes));
}

std::string_view breakpoint_mode_name(BreakpointMode mode) {
  return mode == BreakpointMode::gaussian_equiprobable ? "gaussian" : "uniform";
}

std::string_view normalization_name(Normalization mode) {
  return mode == Normalization::per_sequence_per_attribute_zscore ? "zscore" : "none";
}

}  // namespace symaut
