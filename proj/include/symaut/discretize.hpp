#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "symaut/model.hpp"
#include "symaut/simd/kernels.hpp"

namespace symaut {

/// Real-valued multivariate series, time-major like Mvs.
struct RawSeries {
  std::string id;
  std::size_t num_attributes = 0;
  std::size_t length = 0;
  std::vector<double> values;

  double at(std::size_t attribute, std::size_t t) const { return values.at((t - 1) * num_attributes + attribute); }
};

enum class BreakpointMode { gaussian_equiprobable, uniform_range };
enum class Normalization { per_sequence_per_attribute_zscore, none };

struct SaxConfig {
  std::size_t alphabet_size = 10;
  BreakpointMode breakpoint_mode = BreakpointMode::gaussian_equiprobable;
  std::size_t paa_window = 1;
  Normalization normalize = Normalization::per_sequence_per_attribute_zscore;

  void validate() const;
};

/// Quantiles of the standard normal at i/k, i = 1..k-1. Exactly antisymmetric
/// about zero; k even yields an exact 0.0 in the middle.
std::vector<double> gaussian_breakpoints(std::size_t k);

/// Inverse of the standard normal CDF, for p in (0, 1).
double inverse_normal_cdf(double p);

/// SAX symbolization of every attribute. Bins are half-open [b_{k-1}, b_k);
/// the lowest bin maps to the first alphabet symbol. Trailing partial PAA
/// windows are dropped. A flat series normalizes to all zeros.
Mvs discretize(const RawSeries& series, const SaxConfig& cfg, const AlphabetSpec& alphabet,
               simd::Backend backend = simd::active_backend());

std::string_view breakpoint_mode_name(BreakpointMode mode);
std::string_view normalization_name(Normalization mode);

}  // namespace symaut
