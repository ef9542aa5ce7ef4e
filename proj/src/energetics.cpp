#include "subgroup_lab/energetics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "subgroup_lab/errors.hpp"

namespace sglab {

namespace {

using u128 = unsigned __int128;

std::uint64_t checked_u64(u128 v, const char* what) {
  if (v > std::numeric_limits<std::uint64_t>::max()) {
    throw OverflowRisk(std::string(what) + " exceeds 64 bits");
  }
  return static_cast<std::uint64_t>(v);
}

// |A ∩ (A + r)| = #{a in A : a - r in A}.
std::uint64_t shift_count(const ZpSet& set, std::span<const std::uint32_t> elems,
                          std::uint32_t r) {
  const std::uint32_t p = set.p();
  std::uint64_t l = 0;
  for (std::uint32_t a : elems) l += set.contains(a >= r ? a - r : a + p - r);
  return l;
}

// (S1 * S2)(z) = #{x in S1 : z - x in S2}, looping over the smaller set.
std::uint64_t pair_count(std::span<const std::uint32_t> loop_elems, const ZpSet& probe,
                         std::uint32_t z) {
  const std::uint32_t p = probe.p();
  std::uint64_t c = 0;
  for (std::uint32_t x : loop_elems) c += probe.contains(z >= x ? z - x : z + p - x);
  return c;
}

void require_same_subgroup(const Subgroup& a, const Subgroup& b) {
  if (!(a == b)) {
    throw InvalidArgument("subgroup mismatch: order " + std::to_string(a.order()) +
                          " mod " + std::to_string(a.p()) + " vs order " +
                          std::to_string(b.order()) + " mod " + std::to_string(b.p()));
  }
}

double ssc_ratio_from(const SubgroupData& data) {
  const double d = data.subgroup().order();
  const ZpSet& two = data.two_fold.base();
  double sum = d * d / static_cast<double>(two.size());
  std::vector<CosetLevel> by_rep = data.profile.pairs;
  std::sort(by_rep.begin(), by_rep.end(),
            [](const CosetLevel& a, const CosetLevel& b) { return a.rep < b.rep; });
  for (const auto& [rep, l] : by_rep) {
    if (l == 0) continue;
    const auto denom = intersection_count_translated(two, two, rep);
    sum += d * static_cast<double>(l) * static_cast<double>(l) / static_cast<double>(denom);
  }
  return sum;
}

void require_heavy_allowed(std::uint32_t p, bool allow_heavy) {
  if (p > kHeavyModulusLimit && !allow_heavy) {
    throw HeavyOperationDisabled("sumset_ratio_sum above p = " +
                                 std::to_string(kHeavyModulusLimit) +
                                 " requires the heavy flag");
  }
}

double sumset_ratio_from(const SubgroupData& data, bool allow_heavy) {
  require_heavy_allowed(data.subgroup().p(), allow_heavy);
  const double d = data.subgroup().order();
  double sum = d * d / static_cast<double>(data.two_fold.size());
  std::vector<CosetLevel> by_rep = data.profile.pairs;
  std::sort(by_rep.begin(), by_rep.end(),
            [](const CosetLevel& a, const CosetLevel& b) { return a.rep < b.rep; });
  for (const auto& [rep, l] : by_rep) {
    if (l == 0) continue;
    const ZpSet shifted = shift_intersect(data.set, rep);
    const auto denom = sumset(data.set, shifted).size();
    sum += d * static_cast<double>(l) * static_cast<double>(l) / static_cast<double>(denom);
  }
  return sum;
}

}  // namespace

std::uint64_t additive_energy(const ZpSet& a, const ZpSet& b) {
  const CountProfile prof = convolve_counts(a, b);
  u128 sum = 0;
  for (std::uint64_t c : prof.counts) sum += static_cast<u128>(c) * c;
  return checked_u64(sum, "additive energy");
}

double energy_moment(const ZpSet& a, double r) {
  if (!(r >= 1.0)) throw InvalidArgument("energy_moment requires r >= 1");
  const CountProfile prof = convolve_counts(a, dilate(a, a.p() - 1));
  double sum = 0.0;
  for (std::uint64_t c : prof.counts) {
    if (c != 0) sum += std::pow(static_cast<double>(c), r);
  }
  return sum;
}

CosetProfile coset_profile(const CosetDecomposition& cosets) {
  const Subgroup& A = cosets.subgroup();
  const ZpSet set = to_zpset(A);
  CosetProfile out;
  out.p = A.p();
  out.d = A.order();
  out.pairs.reserve(cosets.count());
  for (std::uint32_t r : cosets.reps()) {
    out.pairs.push_back({r, shift_count(set, A.elements(), r)});
  }
  std::stable_sort(out.pairs.begin(), out.pairs.end(),
                   [](const CosetLevel& a, const CosetLevel& b) { return a.l > b.l; });
  return out;
}

CosetProfile coset_profile(const Subgroup& A) { return coset_profile(coset_reps(A)); }

std::uint64_t energy_from_profile(const CosetProfile& profile) {
  u128 sum = static_cast<u128>(profile.d) * profile.d;
  for (const auto& lv : profile.pairs) sum += static_cast<u128>(profile.d) * lv.l * lv.l;
  return checked_u64(sum, "additive energy");
}

std::uint64_t energy3_from_profile(const CosetProfile& profile) {
  u128 sum = static_cast<u128>(profile.d) * profile.d * profile.d;
  for (const auto& lv : profile.pairs) {
    sum += static_cast<u128>(profile.d) * lv.l * lv.l * lv.l;
  }
  return checked_u64(sum, "E_3");
}

double energy_moment_from_profile(const CosetProfile& profile, double r) {
  const double d = profile.d;
  double sum = std::pow(d, r);
  std::vector<CosetLevel> by_rep = profile.pairs;
  std::sort(by_rep.begin(), by_rep.end(),
            [](const CosetLevel& a, const CosetLevel& b) { return a.rep < b.rep; });
  for (const auto& lv : by_rep) {
    if (lv.l != 0) sum += d * std::pow(static_cast<double>(lv.l), r);
  }
  return sum;
}

double restricted_moment(const CountProfile& profile, const InvariantSet& m, double r) {
  if (profile.p != m.base().p()) throw ModulusMismatch("restricted_moment: moduli differ");
  double sum = 0.0;
  for (std::uint32_t z : m.base().elements()) {
    const std::uint64_t c = profile.counts[z];
    if (c != 0) sum += std::pow(static_cast<double>(c), r);
  }
  return sum;
}

CountProfile invariant_counts(const InvariantSet& s1, const InvariantSet& s2,
                              const CosetDecomposition& cosets) {
  require_same_subgroup(s1.subgroup(), s2.subgroup());
  require_same_subgroup(s1.subgroup(), cosets.subgroup());
  const bool first_small = s1.size() <= s2.size();
  const ZpSet& loop = first_small ? s1.base() : s2.base();
  const ZpSet& probe = first_small ? s2.base() : s1.base();
  const auto elems = loop.elements();
  const std::uint32_t p = loop.p();

  std::vector<std::uint64_t> per_coset(cosets.count());
  for (std::size_t i = 0; i < cosets.count(); ++i) {
    per_coset[i] = pair_count(elems, probe, cosets.reps()[i]);
  }
  CountProfile out;
  out.p = p;
  out.counts.resize(p);
  out.counts[0] = pair_count(elems, probe, 0);
  for (std::uint32_t z = 1; z < p; ++z) out.counts[z] = per_coset[cosets.coset_of(z)];
  out.total = static_cast<std::uint64_t>(s1.size()) * s2.size();
  return out;
}

std::uint64_t invariant_convolution_sum(const InvariantSet& s1, const InvariantSet& s2,
                                        const InvariantSet& s3) {
  require_same_subgroup(s1.subgroup(), s2.subgroup());
  require_same_subgroup(s1.subgroup(), s3.subgroup());
  const bool first_small = s1.size() <= s2.size();
  const ZpSet& loop = first_small ? s1.base() : s2.base();
  const ZpSet& probe = first_small ? s2.base() : s1.base();
  const auto elems = loop.elements();
  const u128 d = s1.subgroup().order();
  u128 sum = 0;
  for (std::uint32_t r : s3.reps()) sum += d * pair_count(elems, probe, r);
  if (s3.includes_zero()) sum += pair_count(elems, probe, 0);
  return checked_u64(sum, "invariant convolution sum");
}

InvariantSet threshold_invariant_set(const CountProfile& profile,
                                     const CosetDecomposition& cosets, double k,
                                     bool include_zero) {
  const Subgroup& A = cosets.subgroup();
  if (profile.p != A.p()) throw ModulusMismatch("threshold_invariant_set: moduli differ");
  for (std::uint32_t z = 1; z < profile.p; ++z) {
    const std::uint32_t rep = cosets.rep_of(z);
    if (profile.counts[z] != profile.counts[rep]) {
      throw InvarianceViolation("profile differs at z = " + std::to_string(z) +
                                " from its coset representative " + std::to_string(rep));
    }
  }
  std::vector<std::uint32_t> reps;
  for (std::uint32_t r : cosets.reps()) {
    if (static_cast<double>(profile.counts[r]) >= k) reps.push_back(r);
  }
  const bool zero = include_zero && static_cast<double>(profile.counts[0]) >= k;
  return invariant_set_unchecked(A, std::move(reps), zero);
}

InvariantSet threshold_invariant_set(const CountProfile& profile, const Subgroup& A,
                                     double k, bool include_zero) {
  return threshold_invariant_set(profile, coset_reps(A), k, include_zero);
}

SubgroupData analyze(const Subgroup& A) {
  CosetDecomposition cosets = coset_reps(A);
  ZpSet set = to_zpset(A);
  CosetProfile profile = coset_profile(cosets);
  InvariantSet two = invariant_fold(cosets, 2);
  return SubgroupData{std::move(cosets), std::move(set), std::move(profile), std::move(two)};
}

double ssc_ratio_sum(const Subgroup& A) { return ssc_ratio_from(analyze(A)); }

double sumset_ratio_sum(const Subgroup& A, bool allow_heavy) {
  require_heavy_allowed(A.p(), allow_heavy);
  return sumset_ratio_from(analyze(A), allow_heavy);
}

EnergyReport energy_report(const SubgroupData& data, bool with_sumset_ratio,
                           bool allow_heavy) {
  EnergyReport r;
  r.p = data.subgroup().p();
  r.d = data.subgroup().order();
  r.E = energy_from_profile(data.profile);
  r.E3 = energy3_from_profile(data.profile);
  r.E32 = energy_moment_from_profile(data.profile, 1.5);
  r.ssc_ratio = ssc_ratio_from(data);
  r.twoA_size = data.two_fold.size();
  if (with_sumset_ratio) r.sumset_ratio = sumset_ratio_from(data, allow_heavy);
  return r;
}

EnergyReport energy_report(const Subgroup& A, bool with_sumset_ratio, bool allow_heavy) {
  return energy_report(analyze(A), with_sumset_ratio, allow_heavy);
}

}  // namespace sglab
