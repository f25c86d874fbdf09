#include <algorithm>
#include <cstring>

#include "symaut/simd/kernels.hpp"

namespace symaut::simd::detail {
namespace {

inline bool apply(CompareOp op, std::uint8_t a, std::uint8_t b) {
  switch (op) {
    case CompareOp::eq: return a == b;
    case CompareOp::ne: return a != b;
    case CompareOp::ge: return a >= b;
    case CompareOp::le: return a <= b;
    case CompareOp::lt: return a < b;
  }
  return false;
}

void compare_value(CompareOp op, const std::uint8_t* column, std::size_t n, std::uint8_t value,
                   std::uint64_t* out) {
  std::memset(out, 0, words_for_bits(n) * sizeof(std::uint64_t));
  for (std::size_t i = 0; i < n; ++i)
    if (apply(op, column[i], value)) out[i >> 6] |= std::uint64_t{1} << (i & 63);
}

void compare_columns(CompareOp op, const std::uint8_t* lhs, const std::uint8_t* rhs, std::size_t n,
                     std::uint64_t* out) {
  std::memset(out, 0, words_for_bits(n) * sizeof(std::uint64_t));
  for (std::size_t i = 0; i < n; ++i)
    if (apply(op, lhs[i], rhs[i])) out[i >> 6] |= std::uint64_t{1} << (i & 63);
}

void assign_bins(const double* values, std::size_t n, const double* breakpoints, std::size_t num_breakpoints,
                 std::uint8_t* out) {
  for (std::size_t i = 0; i < n; ++i)
    out[i] = static_cast<std::uint8_t>(std::upper_bound(breakpoints, breakpoints + num_breakpoints, values[i]) -
                                       breakpoints);
}

}  // namespace

const KernelTable& scalar_table() {
  static const KernelTable table{compare_value, compare_columns, assign_bins};
  return table;
}

}  // namespace symaut::simd::detail
