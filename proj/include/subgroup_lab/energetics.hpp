#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "subgroup_lab/numtheory.hpp"
#include "subgroup_lab/spectral.hpp"
#include "subgroup_lab/zpset.hpp"

namespace sglab {

// Above this p, sumset_ratio_sum needs an explicit opt-in.
inline constexpr std::uint32_t kHeavyModulusLimit = 4096;

struct EnergyReport {
  std::uint32_t p = 0;
  std::uint32_t d = 0;
  std::uint64_t E = 0;
  std::uint64_t E3 = 0;
  double E32 = 0.0;
  double ssc_ratio = 0.0;                // sum_s |A_s|^2 / |(2A)_s|
  std::optional<double> sumset_ratio;    // sum_s |A_s|^2 / |A + A_s|
  std::uint64_t twoA_size = 0;
};

// One nonzero coset rA together with l = |A_r|.
struct CosetLevel {
  std::uint32_t rep = 0;
  std::uint64_t l = 0;
};

// l values over the nonzero cosets, largest first (ties: smaller rep first).
struct CosetProfile {
  std::uint32_t p = 0;
  std::uint32_t d = 0;
  std::vector<CosetLevel> pairs;
};

// |{(x, y, z, w) in A x B x A x B : x + y = z + w}| = sum_z (A * B)(z)^2.
std::uint64_t additive_energy(const ZpSet& a, const ZpSet& b);

// E_r(A) = sum over all s (including 0) of |A_s|^r, r >= 1.
double energy_moment(const ZpSet& a, double r);

double ssc_ratio_sum(const Subgroup& A);
double sumset_ratio_sum(const Subgroup& A, bool allow_heavy = false);

CosetProfile coset_profile(const Subgroup& A);
CosetProfile coset_profile(const CosetDecomposition& cosets);

// sum_{z in M} counts[z]^r
double restricted_moment(const CountProfile& profile, const InvariantSet& m, double r);

// sum_{z in S3} (S1 * S2)(z), exact. All three sets must share the subgroup.
std::uint64_t invariant_convolution_sum(const InvariantSet& s1, const InvariantSet& s2,
                                        const InvariantSet& s3);

// (S1 * S2) for invariant sets, evaluated once per coset.
CountProfile invariant_counts(const InvariantSet& s1, const InvariantSet& s2,
                              const CosetDecomposition& cosets);

// Largest invariant subset of {z : counts[z] >= k}. Zero is left out unless
// include_zero is set. Throws InvarianceViolation if the profile is not
// constant on cosets.
InvariantSet threshold_invariant_set(const CountProfile& profile, const Subgroup& A,
                                     double k, bool include_zero = false);
InvariantSet threshold_invariant_set(const CountProfile& profile,
                                     const CosetDecomposition& cosets, double k,
                                     bool include_zero = false);

// Shared per-subgroup state reused by the report, verifier and sweep.
struct SubgroupData {
  CosetDecomposition cosets;
  ZpSet set;
  CosetProfile profile;
  InvariantSet two_fold;

  const Subgroup& subgroup() const { return cosets.subgroup(); }
};

SubgroupData analyze(const Subgroup& A);

// E and E_3 from the coset profile; throws OverflowRisk past 64 bits.
std::uint64_t energy_from_profile(const CosetProfile& profile);
std::uint64_t energy3_from_profile(const CosetProfile& profile);
double energy_moment_from_profile(const CosetProfile& profile, double r);

EnergyReport energy_report(const SubgroupData& data, bool with_sumset_ratio,
                           bool allow_heavy = false);
EnergyReport energy_report(const Subgroup& A, bool with_sumset_ratio,
                           bool allow_heavy = false);

}  // namespace sglab
