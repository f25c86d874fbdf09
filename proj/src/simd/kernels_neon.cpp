// aarch64 only; NEON is part of the base ISA there.
#include <arm_neon.h>

#include "symaut/simd/kernels.hpp"

namespace symaut::simd::detail {
namespace {

inline uint8x16_t cmp(CompareOp op, uint8x16_t a, uint8x16_t b) {
  switch (op) {
    case CompareOp::eq: return vceqq_u8(a, b);
    case CompareOp::ne: return vmvnq_u8(vceqq_u8(a, b));
    case CompareOp::ge: return vcgeq_u8(a, b);
    case CompareOp::le: return vcleq_u8(a, b);
    case CompareOp::lt: return vcltq_u8(a, b);
  }
  return vdupq_n_u8(0);
}

inline bool cmp_scalar(CompareOp op, std::uint8_t a, std::uint8_t b) {
  switch (op) {
    case CompareOp::eq: return a == b;
    case CompareOp::ne: return a != b;
    case CompareOp::ge: return a >= b;
    case CompareOp::le: return a <= b;
    case CompareOp::lt: return a < b;
  }
  return false;
}

// 16 lane masks -> 16 bits. Lane weights are distinct powers of two, so the
// horizontal add is an OR.
inline std::uint64_t movemask16(uint8x16_t m) {
  static const std::uint8_t kWeights[16] = {1, 2, 4, 8, 16, 32, 64, 128, 1, 2, 4, 8, 16, 32, 64, 128};
  const uint8x16_t bits = vandq_u8(m, vld1q_u8(kWeights));
  return static_cast<std::uint64_t>(vaddv_u8(vget_low_u8(bits))) |
         (static_cast<std::uint64_t>(vaddv_u8(vget_high_u8(bits))) << 8);
}

void compare_value(CompareOp op, const std::uint8_t* column, std::size_t n, std::uint8_t value,
                   std::uint64_t* out) {
  const uint8x16_t v = vdupq_n_u8(value);
  std::size_t i = 0;
  for (; i + 64 <= n; i += 64) {
    std::uint64_t word = 0;
    for (int k = 0; k < 4; ++k) word |= movemask16(cmp(op, vld1q_u8(column + i + 16 * k), v)) << (16 * k);
    out[i >> 6] = word;
  }
  if (i < n) {
    std::uint64_t word = 0;
    for (std::size_t j = i; j < n; ++j)
      if (cmp_scalar(op, column[j], value)) word |= std::uint64_t{1} << (j - i);
    out[i >> 6] = word;
  }
}

void compare_columns(CompareOp op, const std::uint8_t* lhs, const std::uint8_t* rhs, std::size_t n,
                     std::uint64_t* out) {
  std::size_t i = 0;
  for (; i + 64 <= n; i += 64) {
    std::uint64_t word = 0;
    for (int k = 0; k < 4; ++k)
      word |= movemask16(cmp(op, vld1q_u8(lhs + i + 16 * k), vld1q_u8(rhs + i + 16 * k))) << (16 * k);
    out[i >> 6] = word;
  }
  if (i < n) {
    std::uint64_t word = 0;
    for (std::size_t j = i; j < n; ++j)
      if (cmp_scalar(op, lhs[j], rhs[j])) word |= std::uint64_t{1} << (j - i);
    out[i >> 6] = word;
  }
}

void assign_bins(const double* values, std::size_t n, const double* breakpoints, std::size_t num_breakpoints,
                 std::uint8_t* out) {
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const float64x2_t x = vld1q_f64(values + i);
    uint64x2_t count = vdupq_n_u64(0);
    for (std::size_t b = 0; b < num_breakpoints; ++b)
      count = vsubq_u64(count, vcgeq_f64(x, vdupq_n_f64(breakpoints[b])));
    out[i] = static_cast<std::uint8_t>(vgetq_lane_u64(count, 0));
    out[i + 1] = static_cast<std::uint8_t>(vgetq_lane_u64(count, 1));
  }
  for (; i < n; ++i) {
    std::size_t c = 0;
    while (c < num_breakpoints && breakpoints[c] <= values[i]) ++c;
    out[i] = static_cast<std::uint8_t>(c);
  }
}

}  // namespace

const KernelTable& neon_table() {
  static const KernelTable table{compare_value, compare_columns, assign_bins};
  return table;
}

}  // namespace symaut::simd::detail
