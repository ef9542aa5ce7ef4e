#include "subgroup_lab/numtheory.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <numeric>
#include <string>

#include "subgroup_lab/errors.hpp"

namespace sglab {

std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

std::uint64_t pow_mod(std::uint64_t base, std::uint64_t exp, std::uint64_t m) {
  if (m == 1) return 0;
  std::uint64_t result = 1;
  base %= m;
  while (exp > 0) {
    if (exp & 1) result = mul_mod(result, base, m);
    base = mul_mod(base, base, m);
    exp >>= 1;
  }
  return result;
}

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t q : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    if (n % q == 0) return n == q;
  }
  if (n < 37 * 37) return true;

  // Jaeschke/Sinclair base set, deterministic below 2^64.
  static constexpr std::array<std::uint64_t, 7> kBases = {
      2, 325, 9375, 28178, 450775, 9780504, 1795265022};
  const std::uint64_t n1 = n - 1;
  const int s = std::countr_zero(n1);
  const std::uint64_t odd = n1 >> s;
  for (std::uint64_t base : kBases) {
    const std::uint64_t a = base % n;
    if (a == 0) continue;
    std::uint64_t x = pow_mod(a, odd, n);
    if (x == 1 || x == n1) continue;
    bool composite = true;
    for (int i = 1; i < s; ++i) {
      x = mul_mod(x, x, n);
      if (x == n1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

namespace {

constexpr std::uint64_t kTrialLimit = 1'000'000;

// Brent's variant of Pollard rho; n must be odd and composite.
std::uint64_t pollard_brent(std::uint64_t n) {
  for (std::uint64_t c = 1;; ++c) {
    auto f = [&](std::uint64_t x) { return (mul_mod(x, x, n) + c) % n; };
    std::uint64_t y = 2, x = 2, g = 1, q = 1, ys = 2;
    constexpr std::uint64_t kBatch = 128;
    for (std::uint64_t r = 1; g == 1; r <<= 1) {
      x = y;
      for (std::uint64_t i = 0; i < r; ++i) y = f(y);
      for (std::uint64_t k = 0; k < r && g == 1; k += kBatch) {
        ys = y;
        for (std::uint64_t i = 0; i < std::min(kBatch, r - k); ++i) {
          y = f(y);
          q = mul_mod(q, x > y ? x - y : y - x, n);
        }
        g = std::gcd(q, n);
      }
    }
    if (g == n) {
      do {
        ys = f(ys);
        g = std::gcd(x > ys ? x - ys : ys - x, n);
      } while (g == 1);
    }
    if (g != n) return g;
  }
}

void factor_large(std::uint64_t n, std::vector<std::uint64_t>& out) {
  if (n == 1) return;
  if (is_prime(n)) {
    out.push_back(n);
    return;
  }
  const std::uint64_t f = pollard_brent(n);
  factor_large(f, out);
  factor_large(n / f, out);
}

}  // namespace

std::vector<std::uint64_t> factorize(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  if (n <= 1) return out;
  while ((n & 1) == 0) {
    out.push_back(2);
    n >>= 1;
  }
  for (std::uint64_t q = 3; q <= kTrialLimit && q * q <= n; q += 2) {
    while (n % q == 0) {
      out.push_back(q);
      n /= q;
    }
  }
  if (n > 1) factor_large(n, out);
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<std::uint64_t> prime_divisors(std::uint64_t n) {
  auto f = factorize(n);
  f.erase(std::unique(f.begin(), f.end()), f.end());
  return f;
}

std::vector<std::uint64_t> divisors(std::uint64_t n) {
  std::vector<std::uint64_t> out{1};
  if (n == 0) return {};
  const auto f = factorize(n);
  for (std::size_t i = 0; i < f.size();) {
    std::size_t j = i;
    while (j < f.size() && f[j] == f[i]) ++j;
    const std::size_t base = out.size();
    std::uint64_t pk = 1;
    for (std::size_t e = i; e < j; ++e) {
      pk *= f[i];
      for (std::size_t t = 0; t < base; ++t) out.push_back(out[t] * pk);
    }
    i = j;
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<std::uint32_t> primes_in_range(std::uint64_t lo, std::uint64_t hi) {
  std::vector<std::uint32_t> out;
  hi = std::min(hi, kMaxModulus);
  for (std::uint64_t n = std::max<std::uint64_t>(lo, 3); n <= hi; ++n) {
    if (is_prime(n)) out.push_back(static_cast<std::uint32_t>(n));
  }
  return out;
}

Modulus::Modulus(std::uint64_t p) {
  if (p < 3 || p > kMaxModulus || !is_prime(p)) {
    throw InvalidArgument("modulus must be an odd prime in [3, 2^26], got " +
                          std::to_string(p));
  }
  p_ = static_cast<std::uint32_t>(p);
}

std::uint32_t primitive_root(Modulus p) {
  const std::uint64_t n = p.value();
  const auto qs = prime_divisors(n - 1);
  for (std::uint64_t g = 2; g < n; ++g) {
    bool generator = true;
    for (std::uint64_t q : qs) {
      if (pow_mod(g, (n - 1) / q, n) == 1) {
        generator = false;
        break;
      }
    }
    if (generator) return static_cast<std::uint32_t>(g);
  }
  // p = 3 is caught by the loop (g = 2); unreachable for real primes.
  throw InvalidArgument("no primitive root found");
}

std::uint64_t multiplicative_order(std::uint64_t x, Modulus p) {
  const std::uint64_t n = p.value();
  x %= n;
  if (x == 0) throw InvalidArgument("0 has no multiplicative order");
  std::uint64_t order = n - 1;
  for (std::uint64_t q : prime_divisors(n - 1)) {
    while (order % q == 0 && pow_mod(x, order / q, n) == 1) order /= q;
  }
  return order;
}

bool Subgroup::contains(std::uint32_t x) const {
  return std::binary_search(elements_.begin(), elements_.end(), x);
}

Subgroup subgroup(Modulus p, std::uint64_t d) {
  const std::uint32_t n = p.value();
  if (d == 0 || (n - 1) % d != 0) {
    throw InvalidOrder("order " + std::to_string(d) + " does not divide p-1 = " +
                       std::to_string(n - 1));
  }
  const std::uint32_t gen = static_cast<std::uint32_t>(
      pow_mod(primitive_root(p), (n - 1) / d, n));
  std::vector<std::uint32_t> elems;
  elems.reserve(d);
  std::uint64_t x = 1;
  for (std::uint64_t j = 0; j < d; ++j) {
    elems.push_back(static_cast<std::uint32_t>(x));
    x = x * gen % n;
  }
  std::sort(elems.begin(), elems.end());
  return Subgroup(p, static_cast<std::uint32_t>(d), gen, std::move(elems));
}

CosetDecomposition coset_reps(const Subgroup& A) {
  CosetDecomposition out(A);
  const std::uint32_t n = A.p();
  out.coset_of_.assign(n, CosetDecomposition::kNoCoset);
  out.reps_.reserve((n - 1) / A.order());
  for (std::uint32_t r = 1; r < n; ++r) {
    if (out.coset_of_[r] != CosetDecomposition::kNoCoset) continue;
    const auto idx = static_cast<std::uint32_t>(out.reps_.size());
    out.reps_.push_back(r);
    for (std::uint32_t a : A.elements()) {
      out.coset_of_[static_cast<std::uint64_t>(r) * a % n] = idx;
    }
  }
  return out;
}

}  // namespace sglab
