#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace sglab {

// Largest modulus accepted by the set and spectral machinery.
inline constexpr std::uint64_t kMaxModulus = std::uint64_t{1} << 26;

std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t m);
std::uint64_t pow_mod(std::uint64_t base, std::uint64_t exp, std::uint64_t m);

// Deterministic Miller-Rabin, exact for every 64-bit n.
bool is_prime(std::uint64_t n);

// Prime factors of n with multiplicity, ascending. factorize(1) is empty.
std::vector<std::uint64_t> factorize(std::uint64_t n);

// Distinct prime factors, ascending.
std::vector<std::uint64_t> prime_divisors(std::uint64_t n);

// All positive divisors of n, ascending.
std::vector<std::uint64_t> divisors(std::uint64_t n);

// Odd primes in [lo, hi], ascending.
std::vector<std::uint32_t> primes_in_range(std::uint64_t lo, std::uint64_t hi);

// An odd prime p with 3 <= p <= kMaxModulus.
class Modulus {
 public:
  explicit Modulus(std::uint64_t p);

  std::uint32_t value() const { return p_; }
  operator std::uint32_t() const { return p_; }

  friend bool operator==(Modulus, Modulus) = default;

 private:
  std::uint32_t p_;
};

// Smallest generator of Z_p^*.
std::uint32_t primitive_root(Modulus p);

// Multiplicative order of x modulo p (x must be a unit).
std::uint64_t multiplicative_order(std::uint64_t x, Modulus p);

// The unique subgroup of Z_p^* of order d. Immutable once built.
class Subgroup {
 public:
  Modulus modulus() const { return p_; }
  std::uint32_t p() const { return p_.value(); }
  std::uint32_t order() const { return d_; }
  std::uint32_t generator() const { return gen_; }
  std::span<const std::uint32_t> elements() const { return elements_; }
  std::size_t size() const { return elements_.size(); }

  bool contains(std::uint32_t x) const;

  friend bool operator==(const Subgroup& a, const Subgroup& b) {
    return a.p_ == b.p_ && a.d_ == b.d_;
  }

 private:
  friend Subgroup subgroup(Modulus p, std::uint64_t d);
  Subgroup(Modulus p, std::uint32_t d, std::uint32_t gen,
           std::vector<std::uint32_t> elements)
      : p_(p), d_(d), gen_(gen), elements_(std::move(elements)) {}

  Modulus p_;
  std::uint32_t d_;
  std::uint32_t gen_;
  std::vector<std::uint32_t> elements_;  // sorted ascending
};

// {g^(j(p-1)/d) : 0 <= j < d} for the smallest primitive root g.
// Throws InvalidOrder unless d divides p - 1.
Subgroup subgroup(Modulus p, std::uint64_t d);

// Partition of Z_p^* into the cosets rA.
class CosetDecomposition {
 public:
  static constexpr std::uint32_t kNoCoset = 0xffffffffu;

  const Subgroup& subgroup() const { return subgroup_; }
  // Minimal residue of each coset, ascending.
  std::span<const std::uint32_t> reps() const { return reps_; }
  std::size_t count() const { return reps_.size(); }

  // Index into reps() of the coset holding z, or kNoCoset for z = 0.
  std::uint32_t coset_of(std::uint32_t z) const { return coset_of_[z]; }
  std::uint32_t rep_of(std::uint32_t z) const {
    return z == 0 ? 0 : reps_[coset_of_[z]];
  }

 private:
  friend CosetDecomposition coset_reps(const Subgroup& A);
  explicit CosetDecomposition(Subgroup A) : subgroup_(std::move(A)) {}

  Subgroup subgroup_;
  std::vector<std::uint32_t> reps_;
  std::vector<std::uint32_t> coset_of_;
};

CosetDecomposition coset_reps(const Subgroup& A);

}  // namespace sglab
