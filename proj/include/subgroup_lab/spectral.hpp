#pragma once

#include <complex>
#include <cstdint>
#include <span>
#include <vector>

#include "subgroup_lab/numtheory.hpp"
#include "subgroup_lab/zpset.hpp"

namespace sglab {

// counts[z] = (X * Y)(z) = #{(x, y) in X x Y : x + y = z}.
struct CountProfile {
  std::uint32_t p = 0;
  std::vector<std::uint64_t> counts;
  std::uint64_t total = 0;
};

// w[z] = sum_{x + y = z mod p} u[x] v[y], exactly. Both inputs have length p.
// Throws OverflowRisk if an entry could exceed the transform modulus.
std::vector<std::uint64_t> cyclic_convolution_exact(std::span<const std::uint64_t> u,
                                                    std::span<const std::uint64_t> v,
                                                    Modulus p);

CountProfile convolve_counts(const ZpSet& x, const ZpSet& y);

// Relative tolerance used when comparing spectral against integer quantities.
inline constexpr double kSpectralRelTol = 1e-6;
inline constexpr double kSpectralAbsFloor = 1e-9;

inline bool spectral_close(double a, double b, double rel = kSpectralRelTol,
                           double abs_floor = kSpectralAbsFloor) {
  const double diff = a > b ? a - b : b - a;
  const double scale = std::max(a < 0 ? -a : a, b < 0 ? -b : b);
  return diff <= std::max(rel * scale, abs_floor);
}

// mags[l] = |sum_{x in S} e_p(l x)|, phi the maximum over l != 0 and argmax
// its first (smallest) position.
struct Spectrum {
  std::uint32_t p = 0;
  std::vector<double> mags;
  double phi = 0.0;
  std::uint32_t argmax = 0;
};

// Length-p DFT with kernel e^{+2 pi i k n / p}, computed by the chirp-z
// reduction to power-of-two FFTs.
std::vector<std::complex<double>> dft_prime(std::span<const std::complex<double>> x);

// In-place radix-2 FFT. Forward uses e^{-2 pi i jk/n}; the inverse uses
// e^{+2 pi i jk/n} and is unscaled.
void fft_pow2(std::span<std::complex<double>> a, bool inverse);

Spectrum dft_magnitudes(const ZpSet& s);

struct PhiResult {
  double phi = 0.0;
  std::uint32_t argmax = 0;
};

// Phi_A using one frequency per coset lambda A.
PhiResult phi_subgroup(const Subgroup& A);
PhiResult phi_subgroup(const CosetDecomposition& cosets);

}  // namespace sglab
