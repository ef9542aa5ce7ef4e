#include "subgroup_lab/verify.hpp"

#include <cmath>
#include <numbers>
#include <ostream>
#include <random>
#include <sstream>

#include "subgroup_lab/energetics.hpp"
#include "subgroup_lab/oracle.hpp"
#include "subgroup_lab/spectral.hpp"
#include "subgroup_lab/verifier.hpp"

namespace sglab {

namespace {

// Brute-force and O(p^2) paths get too slow past these.
constexpr std::uint32_t kQuadrupleLimit = 101;
constexpr std::uint32_t kIdentityLimit = 101;
constexpr std::uint32_t kSolutionLimit = 400;

struct Violation {
  std::string text;
};

[[noreturn]] void fail(std::uint32_t p, std::uint32_t d, const std::string& what) {
  std::ostringstream os;
  os << "(p=" << p << ", d=" << d << ") " << what;
  throw Violation{os.str()};
}

void check_subgroup(const Subgroup& A, const VerifyOptions& opt, std::mt19937_64& rng) {
  const std::uint32_t p = A.p();
  const std::uint32_t d = A.order();
  const SubgroupData data = analyze(A);
  const ZpSet& set = data.set;

  // Exact convolution against pair enumeration.
  CountProfile conv = convolve_counts(set, set);
  if (opt.inject_fault) conv.counts[1 % p] += 1;
  const auto naive = oracle::pair_counts(set, set);
  for (std::uint32_t z = 0; z < p; ++z) {
    if (conv.counts[z] != naive[z]) {
      fail(p, d, "convolution mismatch at z=" + std::to_string(z) + ": " +
                     std::to_string(conv.counts[z]) + " vs " + std::to_string(naive[z]));
    }
  }
  {
    std::bernoulli_distribution coin(0.5);
    std::vector<std::uint64_t> u(p), v(p);
    for (auto& x : u) x = coin(rng);
    for (auto& x : v) x = coin(rng);
    if (cyclic_convolution_exact(u, v, A.modulus()) != oracle::cyclic_convolution(u, v)) {
      fail(p, d, "cyclic_convolution_exact disagrees with the naive loop");
    }
  }

  // Energy in every formulation.
  const std::uint64_t e = additive_energy(set, set);
  if (e != energy_from_profile(data.profile)) fail(p, d, "coset-profile energy mismatch");
  if (e != oracle::energy_difference_form(set, set)) fail(p, d, "difference-form energy mismatch");
  if (p <= kQuadrupleLimit && e != oracle::energy_quadruples(set, set)) {
    fail(p, d, "quadruple-count energy mismatch");
  }
  const Spectrum spec = dft_magnitudes(set);
  double spectral = 0.0;
  for (double m : spec.mags) spectral += m * m * m * m;
  spectral /= p;
  if (!spectral_close(spectral, static_cast<double>(e))) {
    fail(p, d, "spectral energy " + std::to_string(spectral) + " vs " + std::to_string(e));
  }
  if (energy_moment(set, 1.0) != static_cast<double>(d) * d) fail(p, d, "E_1 != |A|^2");
  if (energy_moment(set, 2.0) != static_cast<double>(e)) fail(p, d, "E_2 != E");

  // |A_z| constant on cosets, symmetric, and A + A_s ⊆ (2A)_s.
  const ZpSet two = fold_sumset(set, 2);
  if (!(two == data.two_fold.base())) fail(p, d, "invariant 2A differs from iterated sumset");
  for (std::uint32_t s = 0; s < p; ++s) {
    const ZpSet as = shift_intersect(set, s);
    if (s != 0) {
      const std::uint32_t rep = data.cosets.rep_of(s);
      if (as.size() != oracle::shift_count(set, rep)) {
        fail(p, d, "|A_z| not constant on the coset of z=" + std::to_string(s));
      }
    }
    if (as.size() != shift_intersect(set, (p - s) % p).size()) {
      fail(p, d, "|A_s| != |A_-s| at s=" + std::to_string(s));
    }
    if (!sumset(set, as).is_subset_of(shift_intersect(two, s))) {
      fail(p, d, "A + A_s not contained in (2A)_s at s=" + std::to_string(s));
    }
  }

  // Phi via one frequency per coset.
  const PhiResult ph = phi_subgroup(data.cosets);
  if (std::abs(ph.phi - spec.phi) > 1e-9 * std::max(1.0, spec.phi)) {
    fail(p, d, "phi_subgroup " + std::to_string(ph.phi) + " vs full DFT " +
                   std::to_string(spec.phi));
  }

  // |A| |A^(l)|^2 = sum_s |A_s| Re(sum_y e_p(l y s)).
  if (p <= kIdentityLimit) {
    const auto mags = oracle::dft_magnitudes(set);
    std::vector<std::uint64_t> prof(p);
    for (std::uint32_t s = 0; s < p; ++s) prof[s] = oracle::shift_count(set, s);
    for (std::uint32_t l = 0; l < p; ++l) {
      double rhs = 0.0;
      for (std::uint32_t s = 0; s < p; ++s) {
        if (prof[s] == 0) continue;
        double re = 0.0;
        for (std::uint32_t y : A.elements()) {
          const std::uint64_t k = static_cast<std::uint64_t>(l) * y % p * s % p;
          re += std::cos(2.0 * std::numbers::pi * static_cast<double>(k) / p);
        }
        rhs += static_cast<double>(prof[s]) * re;
      }
      const double lhs = static_cast<double>(d) * mags[l] * mags[l];
      if (!spectral_close(lhs, rhs)) fail(p, d, "exponential-sum identity at l=" + std::to_string(l));
    }
  }

  // Coverage and the solution-count chain.
  const auto k6 = covering_index(data.cosets, 6);
  if (k6.has_value() != check_six_fold(data.cosets)) fail(p, d, "covering_index/check_six_fold disagree");
  if (p <= kSolutionLimit && positivity_condition(A)) {
    const SolutionCounter counter(A);
    const ZpSet six = fold_sumset(set, 6);
    for (std::uint32_t a = 1; a < p; ++a) {
      if (counter.count(a) == 0) fail(p, d, "positivity holds but N(a)=0 at a=" + std::to_string(a));
      if (!six.contains(a)) fail(p, d, "positivity holds but a=" + std::to_string(a) + " not in 6A");
    }
  }
}

}  // namespace

VerifyResult verify_all(const VerifyOptions& options) {
  VerifyResult result;
  std::mt19937_64 rng(0x5eed);
  for (std::uint32_t p : primes_in_range(3, options.p_max)) {
    for (std::uint64_t d : divisors(p - 1)) {
      const Subgroup A = subgroup(Modulus(p), d);
      ++result.cases;
      try {
        check_subgroup(A, options, rng);
      } catch (const Violation& v) {
        result.ok = false;
        result.counterexample = v.text;
        if (options.log) *options.log << "violation: " << v.text << "\n";
        return result;
      }
    }
    if (options.log) *options.log << "p=" << p << " ok\n";
  }
  return result;
}

}  // namespace sglab
