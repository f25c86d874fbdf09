#include <cstdlib>
#include <stdexcept>
#include <string>

#include "symaut/simd/kernels.hpp"

namespace symaut::simd {
namespace {

bool cpu_supports(Backend backend) {
  switch (backend) {
    case Backend::scalar: return true;
    case Backend::avx2:
#if defined(SYMAUT_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
      return __builtin_cpu_supports("avx2");
#else
      return false;
#endif
    case Backend::neon:
#if defined(SYMAUT_HAVE_NEON)
      return true;
#else
      return false;
#endif
  }
  return false;
}

Backend detect() {
  if (const char* forced = std::getenv("SYMAUT_SIMD")) {
    const std::string name(forced);
    for (Backend b : {Backend::scalar, Backend::avx2, Backend::neon})
      if (name == backend_name(b) && cpu_supports(b)) return b;
  }
  if (cpu_supports(Backend::avx2)) return Backend::avx2;
  if (cpu_supports(Backend::neon)) return Backend::neon;
  return Backend::scalar;
}

}  // namespace

std::string_view backend_name(Backend backend) {
  switch (backend) {
    case Backend::scalar: return "scalar";
    case Backend::avx2: return "avx2";
    case Backend::neon: return "neon";
  }
  return "unknown";
}

std::vector<Backend> available_backends() {
  std::vector<Backend> out;
  for (Backend b : {Backend::scalar, Backend::avx2, Backend::neon})
    if (cpu_supports(b)) out.push_back(b);
  return out;
}

Backend active_backend() {
  static const Backend backend = detect();
  return backend;
}

const KernelTable& kernels(Backend backend) {
  if (!cpu_supports(backend))
    throw std::invalid_argument("SIMD backend '" + std::string(backend_name(backend)) + "' is not available");
  switch (backend) {
#if defined(SYMAUT_HAVE_AVX2)
    case Backend::avx2: return detail::avx2_table();
#endif
#if defined(SYMAUT_HAVE_NEON)
    case Backend::neon: return detail::neon_table();
#endif
    default: return detail::scalar_table();
  }
}

void compare_value(CompareOp op, std::span<const std::uint8_t> column, std::uint8_t value,
                   std::span<std::uint64_t> out, Backend backend) {
  if (out.size() < words_for_bits(column.size())) throw std::invalid_argument("compare_value: output too small");
  kernels(backend).compare_value(op, column.data(), column.size(), value, out.data());
}

void compare_columns(CompareOp op, std::span<const std::uint8_t> lhs, std::span<const std::uint8_t> rhs,
                     std::span<std::uint64_t> out, Backend backend) {
  if (lhs.size() != rhs.size()) throw std::invalid_argument("compare_columns: length mismatch");
  if (out.size() < words_for_bits(lhs.size())) throw std::invalid_argument("compare_columns: output too small");
  kernels(backend).compare_columns(op, lhs.data(), rhs.data(), lhs.size(), out.data());
}

void assign_bins(std::span<const double> values, std::span<const double> breakpoints, std::span<std::uint8_t> out,
                 Backend backend) {
  if (out.size() < values.size()) throw std::invalid_argument("assign_bins: output too small");
  if (breakpoints.size() > 254) throw std::invalid_argument("assign_bins: too many breakpoints");
  kernels(backend).assign_bins(values.data(), values.size(), breakpoints.data(), breakpoints.size(), out.data());
}

}  // namespace symaut::simd
