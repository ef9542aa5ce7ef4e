#include "subgroup_lab/oracle.hpp"

#include <cmath>
#include <numbers>

#include "subgroup_lab/errors.hpp"

namespace sglab::oracle {

std::vector<std::uint64_t> cyclic_convolution(std::span<const std::uint64_t> u,
                                              std::span<const std::uint64_t> v) {
  const std::size_t n = u.size();
  if (v.size() != n) throw InvalidArgument("oracle convolution: length mismatch");
  std::vector<std::uint64_t> w(n, 0);
  for (std::size_t x = 0; x < n; ++x) {
    if (u[x] == 0) continue;
    for (std::size_t y = 0; y < n; ++y) w[(x + y) % n] += u[x] * v[y];
  }
  return w;
}

std::vector<std::uint64_t> pair_counts(const ZpSet& x, const ZpSet& y) {
  const std::uint32_t p = x.p();
  std::vector<std::uint64_t> c(p, 0);
  for (std::uint32_t a = 0; a < p; ++a) {
    if (!x.contains(a)) continue;
    for (std::uint32_t b = 0; b < p; ++b) {
      if (y.contains(b)) ++c[(a + b) % p];
    }
  }
  return c;
}

std::vector<bool> sumset(const ZpSet& x, const ZpSet& y) {
  const auto c = pair_counts(x, y);
  std::vector<bool> out(c.size());
  for (std::size_t z = 0; z < c.size(); ++z) out[z] = c[z] > 0;
  return out;
}

std::uint64_t shift_count(const ZpSet& c, std::uint32_t z) {
  const std::uint32_t p = c.p();
  std::uint64_t n = 0;
  for (std::uint32_t x = 0; x < p; ++x) {
    if (c.contains(x) && c.contains((x + p - z % p) % p)) ++n;
  }
  return n;
}

std::uint64_t energy_quadruples(const ZpSet& a, const ZpSet& b) {
  const std::uint32_t p = a.p();
  const auto ae = a.elements();
  const auto be = b.elements();
  std::uint64_t n = 0;
  for (std::uint32_t x : ae) {
    for (std::uint32_t y : be) {
      for (std::uint32_t z : ae) {
        // w = x + y - z must lie in B
        const std::uint64_t w = (static_cast<std::uint64_t>(x) + y + p - z) % p;
        n += b.contains(static_cast<std::uint32_t>(w));
      }
    }
  }
  return n;
}

std::uint64_t energy_difference_form(const ZpSet& a, const ZpSet& b) {
  const std::uint32_t p = a.p();
  std::uint64_t n = 0;
  for (std::uint32_t z = 0; z < p; ++z) n += shift_count(a, z) * shift_count(b, z);
  return n;
}

std::vector<double> dft_magnitudes(const ZpSet& s) {
  const std::uint64_t p = s.p();
  const auto elems = s.elements();
  std::vector<double> mags(p);
  for (std::uint64_t l = 0; l < p; ++l) {
    double re = 0, im = 0;
    for (std::uint32_t x : elems) {
      const double ang = 2.0 * std::numbers::pi * static_cast<double>(l * x % p) /
                         static_cast<double>(p);
      re += std::cos(ang);
      im += std::sin(ang);
    }
    mags[l] = std::hypot(re, im);
  }
  return mags;
}

}  // namespace sglab::oracle
