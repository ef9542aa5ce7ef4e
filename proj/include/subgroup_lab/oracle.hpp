#pragma once

// Direct-from-definition reference implementations. They share no code path
// with the transforms and coset shortcuts, and exist to cross-check them.

#include <cstdint>
#include <span>
#include <vector>

#include "subgroup_lab/zpset.hpp"

namespace sglab::oracle {

// O(p^2) double loop.
std::vector<std::uint64_t> cyclic_convolution(std::span<const std::uint64_t> u,
                                              std::span<const std::uint64_t> v);

// (X * Y)(z) by pair enumeration.
std::vector<std::uint64_t> pair_counts(const ZpSet& x, const ZpSet& y);

// {x + y} by pair enumeration.
std::vector<bool> sumset(const ZpSet& x, const ZpSet& y);

// |C ∩ (C + z)| by membership tests.
std::uint64_t shift_count(const ZpSet& c, std::uint32_t z);

// |{(x, y, z, w) in A x B x A x B : x + y = z + w}|.
std::uint64_t energy_quadruples(const ZpSet& a, const ZpSet& b);

// sum_z (A * -A)(z) (B * -B)(z)
std::uint64_t energy_difference_form(const ZpSet& a, const ZpSet& b);

// |sum_{x in S} e_p(l x)| by direct summation, all l.
std::vector<double> dft_magnitudes(const ZpSet& s);

}  // namespace sglab::oracle
