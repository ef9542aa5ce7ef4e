#include "subgroup_lab/spectral.hpp"

#include <bit>
#include <cmath>
#include <numbers>

#include "subgroup_lab/errors.hpp"
#include "subgroup_lab/ntt.hpp"

namespace sglab {

std::vector<std::uint64_t> cyclic_convolution_exact(std::span<const std::uint64_t> u,
                                                    std::span<const std::uint64_t> v,
                                                    Modulus p) {
  const std::size_t n = p.value();
  if (u.size() != n || v.size() != n) {
    throw InvalidArgument("cyclic convolution inputs must have length p");
  }
  const auto lin = ntt::linear_convolution(u, v);
  std::vector<std::uint64_t> w(n, 0);
  for (std::size_t z = 0; z < lin.size(); ++z) w[z % n] += lin[z];
  return w;
}

CountProfile convolve_counts(const ZpSet& x, const ZpSet& y) {
  if (x.p() != y.p()) throw ModulusMismatch("convolve_counts: moduli differ");
  const std::uint32_t p = x.p();
  std::vector<std::uint64_t> u(p, 0), v(p, 0);
  for (std::uint32_t e : x.elements()) u[e] = 1;
  for (std::uint32_t e : y.elements()) v[e] = 1;
  CountProfile out;
  out.p = p;
  out.counts = cyclic_convolution_exact(u, v, x.modulus());
  out.total = static_cast<std::uint64_t>(x.size()) * y.size();
  return out;
}

void fft_pow2(std::span<std::complex<double>> a, bool inverse) {
  const std::size_t n = a.size();
  if (n <= 1) return;
  if (!std::has_single_bit(n)) throw InvalidArgument("FFT length must be a power of two");
  for (std::size_t i = 1, j = 0; i < n; ++i) {
    std::size_t bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(a[i], a[j]);
  }
  const double sign = inverse ? 1.0 : -1.0;
  std::vector<std::complex<double>> tw(n / 2);
  for (std::size_t k = 0; k < n / 2; ++k) {
    const double ang = sign * 2.0 * std::numbers::pi * static_cast<double>(k) /
                       static_cast<double>(n);
    tw[k] = {std::cos(ang), std::sin(ang)};
  }
  for (std::size_t len = 2; len <= n; len <<= 1) {
    const std::size_t half = len / 2;
    const std::size_t step = n / len;
    for (std::size_t i = 0; i < n; i += len) {
      for (std::size_t k = 0; k < half; ++k) {
        const auto x = a[i + k];
        const auto y = a[i + k + half] * tw[k * step];
        a[i + k] = x + y;
        a[i + k + half] = x - y;
      }
    }
  }
}

std::vector<std::complex<double>> dft_prime(std::span<const std::complex<double>> x) {
  const std::size_t n = x.size();
  if (n == 0) return {};
  if (n == 1) return {x[0]};
  // e^{2 pi i k m / n} = w_k w_m conj(w_{k-m}) with w_m = e^{i pi m^2 / n}.
  std::vector<std::complex<double>> chirp(n);
  for (std::size_t m = 0; m < n; ++m) {
    const std::uint64_t sq = static_cast<std::uint64_t>(m) * m % (2 * n);
    const double ang = std::numbers::pi * static_cast<double>(sq) / static_cast<double>(n);
    chirp[m] = {std::cos(ang), std::sin(ang)};
  }
  const std::size_t len = std::bit_ceil(2 * n - 1);
  std::vector<std::complex<double>> a(len), b(len);
  for (std::size_t m = 0; m < n; ++m) a[m] = x[m] * chirp[m];
  b[0] = std::conj(chirp[0]);
  for (std::size_t m = 1; m < n; ++m) b[m] = b[len - m] = std::conj(chirp[m]);
  fft_pow2(a, false);
  fft_pow2(b, false);
  for (std::size_t i = 0; i < len; ++i) a[i] *= b[i];
  fft_pow2(a, true);
  const double scale = 1.0 / static_cast<double>(len);
  std::vector<std::complex<double>> out(n);
  for (std::size_t k = 0; k < n; ++k) out[k] = a[k] * scale * chirp[k];
  return out;
}

Spectrum dft_magnitudes(const ZpSet& s) {
  const std::uint32_t p = s.p();
  std::vector<std::complex<double>> ind(p, 0.0);
  for (std::uint32_t e : s.elements()) ind[e] = 1.0;
  const auto f = dft_prime(ind);
  Spectrum out;
  out.p = p;
  out.mags.resize(p);
  for (std::uint32_t l = 0; l < p; ++l) out.mags[l] = std::abs(f[l]);
  out.mags[0] = static_cast<double>(s.size());
  out.argmax = 1;
  out.phi = out.mags[1];
  for (std::uint32_t l = 2; l < p; ++l) {
    if (out.mags[l] > out.phi) {
      out.phi = out.mags[l];
      out.argmax = l;
    }
  }
  return out;
}

PhiResult phi_subgroup(const CosetDecomposition& cosets) {
  const Subgroup& A = cosets.subgroup();
  const std::uint64_t p = A.p();
  std::vector<double> cos_t(p), sin_t(p);
  for (std::uint64_t k = 0; k < p; ++k) {
    const double ang = 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(p);
    cos_t[k] = std::cos(ang);
    sin_t[k] = std::sin(ang);
  }
  PhiResult best{-1.0, 0};
  for (std::uint32_t lambda : cosets.reps()) {
    double re = 0.0, im = 0.0;
    for (std::uint32_t x : A.elements()) {
      const std::uint64_t k = lambda * static_cast<std::uint64_t>(x) % p;
      re += cos_t[k];
      im += sin_t[k];
    }
    const double mag = std::hypot(re, im);
    if (mag > best.phi) best = {mag, lambda};
  }
  return best;
}

PhiResult phi_subgroup(const Subgroup& A) { return phi_subgroup(coset_reps(A)); }

}  // namespace sglab
