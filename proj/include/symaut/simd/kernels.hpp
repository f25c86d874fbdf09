#pragma once

// Data-parallel inner loops shared by guard grounding and SAX binning.
//
// Every kernel has a scalar reference implementation. Vectorized variants
// (AVX2 on x86-64, NEON on aarch64) are compiled when the target supports
// them and selected at runtime; they must produce bit-identical output to
// the scalar reference.

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

namespace symaut::simd {

enum class Backend : std::uint8_t { scalar, avx2, neon };

/// Element-wise comparison of unsigned byte codes.
enum class CompareOp : std::uint8_t { eq, ne, ge, le, lt };

struct KernelTable {
  /// out bit i = op(column[i], value). Bits past n in the last word are zero.
  void (*compare_value)(CompareOp op, const std::uint8_t* column, std::size_t n, std::uint8_t value,
                        std::uint64_t* out);
  /// out bit i = op(lhs[i], rhs[i]).
  void (*compare_columns)(CompareOp op, const std::uint8_t* lhs, const std::uint8_t* rhs, std::size_t n,
                          std::uint64_t* out);
  /// out[i] = number of breakpoints <= values[i]; breakpoints sorted ascending.
  void (*assign_bins)(const double* values, std::size_t n, const double* breakpoints, std::size_t num_breakpoints,
                      std::uint8_t* out);
};

std::string_view backend_name(Backend backend);

/// Backends compiled into this build and supported by the running CPU.
std::vector<Backend> available_backends();

/// Best available backend, unless SYMAUT_SIMD=scalar|avx2|neon forces one.
Backend active_backend();

/// Throws std::invalid_argument for a backend that is not available.
const KernelTable& kernels(Backend backend);

inline std::size_t words_for_bits(std::size_t n) { return (n + 63) / 64; }

void compare_value(CompareOp op, std::span<const std::uint8_t> column, std::uint8_t value,
                   std::span<std::uint64_t> out, Backend backend = active_backend());
void compare_columns(CompareOp op, std::span<const std::uint8_t> lhs, std::span<const std::uint8_t> rhs,
                     std::span<std::uint64_t> out, Backend backend = active_backend());
void assign_bins(std::span<const double> values, std::span<const double> breakpoints, std::span<std::uint8_t> out,
                 Backend backend = active_backend());

namespace detail {
const KernelTable& scalar_table();
#if defined(SYMAUT_HAVE_AVX2)
const KernelTable& avx2_table();
#endif
#if defined(SYMAUT_HAVE_NEON)
const KernelTable& neon_table();
#endif
}  // namespace detail

}  // namespace symaut::simd
