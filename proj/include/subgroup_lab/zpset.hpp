#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "subgroup_lab/numtheory.hpp"

namespace sglab {

// A subset of Z_p stored as a dense p-bit vector. Bits at positions >= p are
// always zero.
class ZpSet {
 public:
  explicit ZpSet(Modulus p);

  static ZpSet from_elements(Modulus p, std::span<const std::uint32_t> elems);
  static ZpSet from_elements(Modulus p, std::initializer_list<std::uint32_t> elems);
  static ZpSet from_words(Modulus p, std::vector<std::uint64_t> words);
  static ZpSet full(Modulus p);
  static ZpSet units(Modulus p);  // Z_p^*

  Modulus modulus() const { return p_; }
  std::uint32_t p() const { return p_.value(); }
  std::size_t size() const { return card_; }
  bool empty() const { return card_ == 0; }
  bool contains(std::uint32_t x) const {
    return (words_[x >> 6] >> (x & 63)) & 1;
  }

  std::vector<std::uint32_t> elements() const;
  std::span<const std::uint64_t> words() const { return words_; }

  // C + z (cyclic translate).
  ZpSet translated(std::uint32_t z) const;

  bool is_subset_of(const ZpSet& other) const;

  // "p:{e1,e2,...}" with elements ascending.
  std::string to_string() const;
  static ZpSet parse(std::string_view text);

  friend bool operator==(const ZpSet& a, const ZpSet& b) {
    return a.p_ == b.p_ && a.words_ == b.words_;
  }

 private:
  ZpSet(Modulus p, std::vector<std::uint64_t> words);
  void recount();

  Modulus p_;
  std::vector<std::uint64_t> words_;
  std::size_t card_ = 0;
};

ZpSet set_union(const ZpSet& x, const ZpSet& y);
ZpSet set_intersection(const ZpSet& x, const ZpSet& y);

// |x ∩ (y + z)| without materialising the translate.
std::size_t intersection_count_translated(const ZpSet& x, const ZpSet& y,
                                          std::uint32_t z);

// Above this min(|X|, |Y|) sumset() switches from shifted ORs to an exact
// convolution.
inline constexpr std::size_t kSumsetShiftOrLimit = 512;

// X + Y; auto-selects the algorithm.
ZpSet sumset(const ZpSet& x, const ZpSet& y);
// The two engines behind sumset(), exposed so they can be cross-checked.
ZpSet sumset_shift_or(const ZpSet& x, const ZpSet& y);
ZpSet sumset_convolution(const ZpSet& x, const ZpSet& y);

// kA by iterated sumset; k >= 1.
ZpSet fold_sumset(const ZpSet& a, int k);

// C ∩ (C + z).
ZpSet shift_intersect(const ZpSet& c, std::uint32_t z);

// {a x : x in X}; a must be nonzero mod p.
ZpSet dilate(const ZpSet& x, std::uint32_t a);

ZpSet to_zpset(const Subgroup& A);

// A union of cosets rA, optionally with 0 adjoined.
class InvariantSet {
 public:
  const ZpSet& base() const { return base_; }
  const Subgroup& subgroup() const { return subgroup_; }
  std::span<const std::uint32_t> reps() const { return reps_; }
  bool includes_zero() const { return includes_zero_; }
  std::size_t size() const { return base_.size(); }
  // |S \ {0}|
  std::size_t nonzero_size() const { return base_.size() - (includes_zero_ ? 1 : 0); }

 private:
  friend InvariantSet invariant_set(const Subgroup&, std::span<const std::uint32_t>,
                                    bool);
  friend InvariantSet invariant_set_unchecked(const Subgroup&,
                                              std::vector<std::uint32_t>, bool);
  friend InvariantSet as_invariant(const ZpSet&, const CosetDecomposition&);
  InvariantSet(ZpSet base, Subgroup A, std::vector<std::uint32_t> reps, bool zero)
      : base_(std::move(base)),
        subgroup_(std::move(A)),
        reps_(std::move(reps)),
        includes_zero_(zero) {}

  ZpSet base_;
  Subgroup subgroup_;
  std::vector<std::uint32_t> reps_;  // as supplied, sorted ascending
  bool includes_zero_;
};

// Throws InvalidArgument on a zero rep or two reps from the same coset.
InvariantSet invariant_set(const Subgroup& A, std::span<const std::uint32_t> reps,
                           bool includes_zero);

// For reps already known to be distinct minimal coset representatives.
InvariantSet invariant_set_unchecked(const Subgroup& A,
                                     std::vector<std::uint32_t> reps,
                                     bool includes_zero);

// The set S ∩ Z_p^* is closed under multiplication by A.
bool is_invariant(const ZpSet& s, const Subgroup& A);

// Views an invariant ZpSet as an InvariantSet; throws InvarianceViolation.
InvariantSet as_invariant(const ZpSet& s, const CosetDecomposition& cosets);

// X + Y for A-invariant X and Y, testing one representative per coset.
// Costs O(#cosets * min(|X|, |Y|)).
InvariantSet invariant_sumset(const InvariantSet& x, const InvariantSet& y,
                              const CosetDecomposition& cosets);

// kA via invariant_sumset.
InvariantSet invariant_fold(const CosetDecomposition& cosets, int k);

}  // namespace sglab
