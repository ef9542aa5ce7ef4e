#pragma once

#include <cstdint>
#include <span>
#include <vector>

// Number-theoretic transform over the prime 2^64 - 2^32 + 1, whose
// multiplicative group has a 2^32-torsion subgroup. Exact integer
// convolution for nonnegative inputs whose output entries stay below the
// prime.
namespace sglab::ntt {

inline constexpr std::uint64_t kPrime = 0xffffffff00000001ull;
inline constexpr std::uint64_t kGenerator = 7;
inline constexpr int kMaxLog2 = 32;

std::uint64_t reduce(unsigned __int128 x);
inline std::uint64_t mul(std::uint64_t a, std::uint64_t b) {
  return reduce(static_cast<unsigned __int128>(a) * b);
}
inline std::uint64_t add(std::uint64_t a, std::uint64_t b) {
  const std::uint64_t s = a + b;
  // Wraparound past 2^64 is 2^32 - 1 mod kPrime.
  std::uint64_t r = s < a ? s + 0xffffffffull : s;
  return r >= kPrime ? r - kPrime : r;
}
inline std::uint64_t sub(std::uint64_t a, std::uint64_t b) {
  return a >= b ? a - b : a + (kPrime - b);
}
std::uint64_t power(std::uint64_t base, std::uint64_t exp);

// In-place transform; a.size() must be a power of two no larger than 2^32.
// The inverse includes the 1/n scaling.
void transform(std::span<std::uint64_t> a, bool inverse);

// Largest possible output entry of the linear convolution of u and v,
// saturated at 2^127.
unsigned __int128 convolution_bound(std::span<const std::uint64_t> u,
                                    std::span<const std::uint64_t> v);

// Full linear convolution (length |u| + |v| - 1). Throws OverflowRisk when
// the output could reach kPrime.
std::vector<std::uint64_t> linear_convolution(std::span<const std::uint64_t> u,
                                              std::span<const std::uint64_t> v);

}  // namespace sglab::ntt
