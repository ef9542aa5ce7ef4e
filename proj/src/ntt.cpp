#include "subgroup_lab/ntt.hpp"

#include <algorithm>
#include <bit>
#include <string>

#include "subgroup_lab/errors.hpp"

namespace sglab::ntt {

namespace {
constexpr std::uint64_t kEpsilon = 0xffffffffull;  // 2^64 mod kPrime
}

std::uint64_t reduce(unsigned __int128 x) {
  const auto lo = static_cast<std::uint64_t>(x);
  const auto hi = static_cast<std::uint64_t>(x >> 64);
  const std::uint64_t hi_hi = hi >> 32;
  const std::uint64_t hi_lo = hi & kEpsilon;
  // x = lo + hi_lo 2^64 + hi_hi 2^96, with 2^96 = -1 and 2^64 = 2^32 - 1.
  std::uint64_t t0;
  if (__builtin_sub_overflow(lo, hi_hi, &t0)) t0 -= kEpsilon;
  const std::uint64_t t1 = hi_lo * kEpsilon;
  std::uint64_t r;
  if (__builtin_add_overflow(t0, t1, &r)) r += kEpsilon;
  return r >= kPrime ? r - kPrime : r;
}

std::uint64_t power(std::uint64_t base, std::uint64_t exp) {
  std::uint64_t r = 1;
  while (exp) {
    if (exp & 1) r = mul(r, base);
    base = mul(base, base);
    exp >>= 1;
  }
  return r;
}

void transform(std::span<std::uint64_t> a, bool inverse) {
  const std::size_t n = a.size();
  if (n <= 1) return;
  if (!std::has_single_bit(n) || std::countr_zero(n) > kMaxLog2) {
    throw InvalidArgument("NTT length must be a power of two <= 2^32");
  }
  for (std::size_t i = 1, j = 0; i < n; ++i) {
    std::size_t bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(a[i], a[j]);
  }
  std::vector<std::uint64_t> twiddles(n / 2);
  for (std::size_t len = 2; len <= n; len <<= 1) {
    std::uint64_t w = power(kGenerator, (kPrime - 1) / len);
    if (inverse) w = power(w, kPrime - 2);
    const std::size_t half = len / 2;
    twiddles[0] = 1;
    for (std::size_t k = 1; k < half; ++k) twiddles[k] = mul(twiddles[k - 1], w);
    for (std::size_t i = 0; i < n; i += len) {
      for (std::size_t k = 0; k < half; ++k) {
        const std::uint64_t x = a[i + k];
        const std::uint64_t y = mul(a[i + k + half], twiddles[k]);
        a[i + k] = add(x, y);
        a[i + k + half] = sub(x, y);
      }
    }
  }
  if (inverse) {
    const std::uint64_t n_inv = power(n % kPrime, kPrime - 2);
    for (auto& x : a) x = mul(x, n_inv);
  }
}

unsigned __int128 convolution_bound(std::span<const std::uint64_t> u,
                                    std::span<const std::uint64_t> v) {
  constexpr unsigned __int128 kSaturated = static_cast<unsigned __int128>(1) << 127;
  auto stats = [](std::span<const std::uint64_t> x) {
    unsigned __int128 sum = 0;
    std::uint64_t mx = 0;
    for (std::uint64_t e : x) {
      sum += e;
      mx = std::max(mx, e);
    }
    return std::pair{sum, mx};
  };
  auto product = [&](unsigned __int128 s, std::uint64_t m) -> unsigned __int128 {
    if (m != 0 && s > kSaturated / m) return kSaturated;
    return s * m;
  };
  const auto [su, mu] = stats(u);
  const auto [sv, mv] = stats(v);
  return std::min(product(su, mv), product(sv, mu));
}

std::vector<std::uint64_t> linear_convolution(std::span<const std::uint64_t> u,
                                              std::span<const std::uint64_t> v) {
  if (u.empty() || v.empty()) return {};
  if (convolution_bound(u, v) >= kPrime) {
    throw OverflowRisk("convolution output may exceed the NTT modulus");
  }
  const std::size_t out_len = u.size() + v.size() - 1;
  const std::size_t n = std::bit_ceil(out_len);
  std::vector<std::uint64_t> fu(n, 0), fv(n, 0);
  std::copy(u.begin(), u.end(), fu.begin());
  std::copy(v.begin(), v.end(), fv.begin());
  transform(fu, false);
  transform(fv, false);
  for (std::size_t i = 0; i < n; ++i) fu[i] = mul(fu[i], fv[i]);
  transform(fu, true);
  fu.resize(out_len);
  return fu;
}

}  // namespace sglab::ntt
