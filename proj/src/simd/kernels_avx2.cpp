// Compiled with -mavx2; only reached after a runtime CPU check.
#include <immintrin.h>

#include <cstring>

#include "symaut/simd/kernels.hpp"

namespace symaut::simd::detail {
namespace {

// Unsigned byte comparisons via min/max: a >= b <=> max(a,b) == a.
inline __m256i cmp(CompareOp op, __m256i a, __m256i b) {
  switch (op) {
    case CompareOp::eq: return _mm256_cmpeq_epi8(a, b);
    case CompareOp::ne: return _mm256_xor_si256(_mm256_cmpeq_epi8(a, b), _mm256_set1_epi8(-1));
    case CompareOp::ge: return _mm256_cmpeq_epi8(_mm256_max_epu8(a, b), a);
    case CompareOp::le: return _mm256_cmpeq_epi8(_mm256_min_epu8(a, b), a);
    case CompareOp::lt: return _mm256_xor_si256(_mm256_cmpeq_epi8(_mm256_max_epu8(a, b), a), _mm256_set1_epi8(-1));
  }
  return _mm256_setzero_si256();
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

inline std::uint64_t movemask64(__m256i lo, __m256i hi) {
  return static_cast<std::uint32_t>(_mm256_movemask_epi8(lo)) |
         (static_cast<std::uint64_t>(static_cast<std::uint32_t>(_mm256_movemask_epi8(hi))) << 32);
}

void compare_value(CompareOp op, const std::uint8_t* column, std::size_t n, std::uint8_t value,
                   std::uint64_t* out) {
  const __m256i v = _mm256_set1_epi8(static_cast<char>(value));
  std::size_t i = 0;
  for (; i + 64 <= n; i += 64) {
    const __m256i a0 = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(column + i));
    const __m256i a1 = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(column + i + 32));
    out[i >> 6] = movemask64(cmp(op, a0, v), cmp(op, a1, v));
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
    const __m256i a0 = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(lhs + i));
    const __m256i a1 = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(lhs + i + 32));
    const __m256i b0 = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(rhs + i));
    const __m256i b1 = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(rhs + i + 32));
    out[i >> 6] = movemask64(cmp(op, a0, b0), cmp(op, a1, b1));
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
  for (; i + 4 <= n; i += 4) {
    const __m256d x = _mm256_loadu_pd(values + i);
    __m256i count = _mm256_setzero_si256();
    for (std::size_t b = 0; b < num_breakpoints; ++b) {
      // all-ones lanes are -1, so subtracting counts breakpoints <= x
      const __m256d ge = _mm256_cmp_pd(x, _mm256_set1_pd(breakpoints[b]), _CMP_GE_OQ);
      count = _mm256_sub_epi64(count, _mm256_castpd_si256(ge));
    }
    alignas(32) std::int64_t lanes[4];
    _mm256_store_si256(reinterpret_cast<__m256i*>(lanes), count);
    for (int k = 0; k < 4; ++k) out[i + k] = static_cast<std::uint8_t>(lanes[k]);
  }
  for (; i < n; ++i) {
    std::size_t c = 0;
    while (c < num_breakpoints && breakpoints[c] <= values[i]) ++c;
    out[i] = static_cast<std::uint8_t>(c);
  }
}

}  // namespace

const KernelTable& avx2_table() {
  static const KernelTable table{compare_value, compare_columns, assign_bins};
  return table;
}

}  // namespace symaut::simd::detail
