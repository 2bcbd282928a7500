#pragma once

#include <cmath>
#include <cstdint>
#include <numeric>

namespace pythag {

// Exact integer square root: floor(sqrt(x)). The double estimate can be off
// by one ulp for large x, so adjust with integer arithmetic.
inline std::uint64_t exact_isqrt(std::uint64_t x) {
  auto r = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(x)));
  while (r > 0 && r * r > x) --r;
  while ((r + 1) * (r + 1) <= x) ++r;
  return r;
}

inline bool is_perfect_square(std::uint64_t x, std::uint64_t& root) {
  root = exact_isqrt(x);
  return root * root == x;
}

inline int gcd3(int a, int b, int c) { return std::gcd(a, std::gcd(b, c)); }

}  // namespace pythag
